#include "saddletip/tipping.hpp"

#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "saddletip/errors.hpp"

namespace saddletip {

namespace {

template <std::size_t N>
std::optional<TippingEvent> from_crossing(const Trajectory<N>& traj,
                                          int component, double level,
                                          int direction, std::size_t begin) {
  const auto c = find_threshold_crossing(traj, component, level, direction, begin);
  if (!c) return std::nullopt;
  return TippingEvent{c->t, c->drift_param, level, c->index};
}

}  // namespace

std::optional<TippingEvent> detect_tipping_canonical(const Trajectory<1>& traj) {
  return from_crossing(traj, 0, kCanonicalTipLevel, -1, 1);
}

std::optional<TippingEvent> detect_tipping_ml(const Trajectory<2>& traj,
                                              double v_c) {
  return from_crossing(traj, 0, std::abs(v_c), +1, 1);
}

std::optional<TippingEvent> detect_tipping_seaice(const Trajectory<1>& traj,
                                                  double x_floor,
                                                  double arm_level) {
  std::size_t armed_at = 0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    if (traj.states[i][0] > arm_level) {
      armed_at = i;
      break;
    }
    if (i + 1 == traj.times.size()) return std::nullopt;
  }
  return from_crossing(traj, 0, x_floor, -1, armed_at + 1);
}

EscapeEstimate escape_probability(const CanonicalParams& p, double eps,
                                  std::pair<double, double> a_window,
                                  int n_paths, std::uint64_t seed, double dt) {
  if (eps < 0.0)
    throw PreconditionError("escape_probability: eps must be >= 0");
  if (n_paths < 100)
    throw PreconditionError("escape_probability: needs at least 100 paths");
  const double a_lo = a_window.first, a_hi = a_window.second;
  if (!(a_lo < a_hi) || a_hi >= p.a0)
    throw PreconditionError("escape_probability: bad a window");
  if (dt <= 0.0) dt = default_dt(p.mu, p.Omega);
  // The occupation state below the unstable branch is sampled at the
  // window midpoint; its probability ranges across the window, so the
  // midpoint estimate sits centrally in that band.
  const double a_mid = 0.5 * (a_lo + a_hi);
  const double t_end = (p.a0 - a_mid) / p.mu;
  const std::int64_t n_steps = static_cast<std::int64_t>(std::ceil(t_end / dt));

  auto run_path = [&](int path) {
    CounterRng rng(seed, static_cast<std::uint64_t>(path));
    const double sq = std::sqrt(dt);
    double x = p.x0;
    double a = p.a0;
    double t = 0.0;
    for (std::int64_t n = 0; n < n_steps; ++n) {
      const double drift = a - x * x + p.A * std::sin(p.Omega * t);
      x += dt * drift + eps * sq * rng.normal();
      a -= dt * p.mu;
      t += dt;
      if (x < -5.0) return true;  // deep collapse cannot reverse at these scales
      if (a <= a_mid) break;
    }
    return x < -std::sqrt(std::max(a, 0.0));
  };

  // One stream per path keyed by (seed, path); escape counts are integers,
  // so the total is independent of scheduling.
  std::atomic<int> escaped{0};
  std::atomic<int> next{0};
  const unsigned workers = std::min<unsigned>(
      std::max(1u, std::thread::hardware_concurrency()),
      static_cast<unsigned>(n_paths));
  auto worker = [&] {
    int local = 0;
    for (;;) {
      const int path = next.fetch_add(1);
      if (path >= n_paths) break;
      if (run_path(path)) ++local;
    }
    escaped.fetch_add(local);
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Wilson 95% interval.
  const int n_escaped = escaped.load();
  const double n = static_cast<double>(n_paths);
  const double phat = n_escaped / n;
  const double z = 1.959963984540054;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (phat + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  return {phat, centre - half, centre + half, n_paths, n_escaped};
}

}  // namespace saddletip
