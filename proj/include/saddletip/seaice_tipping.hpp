#pragma once

#include <utility>

#include "saddletip/prediction.hpp"
#include "saddletip/sea_ice.hpp"

namespace saddletip {

// Period averages of H and its derivatives along the seasonal oscillation
// about x*, by composite Simpson with a halving check.
struct SeaIceAverages {
  double b_star = 0.0;
  double x_star = 0.0;
  double H0_bar = 0.0;
  double H1_bar = 0.0;
  double H2_bar = 0.0;  // average of H''/2
  double quadrature_error = 0.0;
};

// Location where the oscillating upper-branch solution first touches the
// middle (unstable) branch: solves
//   H_plus^{-1}(-b) + min_t P(t) = H_mid^{-1}(-b),  P' = q, mean(P) = 0.
// Throws HysteresisLossError when the branches cannot coexist (no solution
// in the bistable range).
std::pair<double, double> seaice_xstar(const SeaIceNormalized& n);

SeaIceAverages seaice_h_averages(const SeaIceNormalized& n, double b_star,
                                 double x_star);

// Forced tipping b_tip = |H2_bar|^(-1/3) a_d - b_Q,
// b_Q = H0_bar + H1_bar^2/(4 |H2_bar|), mapped back to dF0.
Prediction seaice_tipping(const SeaIceNormalized& n, double mu);

// Averaged-model tipping from the Taylor data of H at the fold.
Prediction seaice_tipping_averaged(const SeaIceNormalized& n, double mu);

// End of the oscillating lower branch: largest b where its seasonal
// maximum reaches the middle branch,
//   H_low^{-1}(-b) + max_t P(t) = H_mid^{-1}(-b).
std::pair<double, double> seaice_lower_touch(const SeaIceNormalized& n);

// True when the oscillating upper and lower branches coexist over a
// common b-range (b_star < b_low_star): false is the hysteresis-loss
// signal used in parameter sweeps.
bool seaice_bistable(const SeaIceNormalized& n);

// Parameter-variation helpers for the sweep axes.
SeaIceParams scale_ft(const SeaIceParams& p, double factor);       // whole signal
SeaIceParams shift_ft_mean(const SeaIceParams& p, double delta);
SeaIceParams scale_cml(const SeaIceParams& p, double factor);
SeaIceParams with_h_alpha(const SeaIceParams& p, double h_alpha);

}  // namespace saddletip
