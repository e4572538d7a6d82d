#pragma once

#include <cstdint>
#include <cmath>

namespace saddletip {

// Counter-based generator: the splitmix64 finalizer applied to a per-stream
// key and a running counter. Output for a given (seed, stream, counter)
// triple is independent of call order, so parallel ensembles are
// reproducible with one stream per path.
class CounterRng {
 public:
  static constexpr const char* kAlgorithm = "splitmix64-counter/box-muller";

  CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ULL))) {}

  double uniform() {  // in (0, 1]
    const std::uint64_t r = next();
    return (static_cast<double>(r >> 11) + 1.0) * 0x1.0p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.28318530717958647692 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t next() { return mix(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace saddletip
