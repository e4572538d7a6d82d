#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "saddletip/canonical.hpp"
#include "saddletip/integrate.hpp"

namespace saddletip {

struct TippingEvent {
  double t_tip;
  double param_at_tip;   // drift parameter interpolated at the crossing
  double threshold_used;
  std::size_t index;     // sample just after the crossing
};

// Canonical model: first downward crossing of x = -10.
constexpr double kCanonicalTipLevel = -10.0;
std::optional<TippingEvent> detect_tipping_canonical(const Trajectory<1>& traj);

// Morris-Lecar: first upward crossing of v = |v_c|.
std::optional<TippingEvent> detect_tipping_ml(const Trajectory<2>& traj,
                                              double v_c);

// Sea ice (normalized x trajectories): first downward crossing of x_floor
// after the trajectory has visited x > arm_level.
std::optional<TippingEvent> detect_tipping_seaice(const Trajectory<1>& traj,
                                                  double x_floor = -0.5,
                                                  double arm_level = 0.0);

struct EscapeEstimate {
  double p_hat;
  double ci_lo;   // Wilson 95% interval
  double ci_hi;
  int n_paths;
  int n_escaped;
};

// Fraction of Euler-Maruyama paths of dx = (a - x^2) dt + eps dW sitting
// below the instantaneous unstable branch x = -sqrt(a) while a traverses
// [a_lo, a_hi] (state sampled at the window midpoint; the occupation
// probability ranges across the window).
EscapeEstimate escape_probability(const CanonicalParams& p, double eps,
                                  std::pair<double, double> a_window,
                                  int n_paths, std::uint64_t seed,
                                  double dt = 0.0);

}  // namespace saddletip
