#pragma once

#include <array>
#include <cmath>

#include "saddletip/errors.hpp"
#include "saddletip/forcing.hpp"
#include "saddletip/integrate.hpp"

namespace saddletip {

// Single-column energy balance model for Arctic sea ice. E is the stored
// energy per unit area (negative: latent heat in ice, positive: sensible
// heat in the mixed layer); time unit is one year.
//   dE/dt = [1 - alpha(E)] F_S(t) - F_0(t) + dF0 - F_T(t) E/(cml Hml) + F_B
//   d dF0/dt = -mu_tilde
struct SeaIceParams {
  double L_i = 9.4;       // W m^-3 yr
  double cml_Hml = 9.4;   // W m^-2 yr K^-1
  double alpha_i = 0.68;
  double alpha_ml = 0.2;
  double F_B = 2.0;       // W m^-2
  double h_alpha = 0.5;   // m
  PeriodicSeries F_0;     // outgoing longwave at freezing, W m^-2
  PeriodicSeries F_S;     // shortwave flux, W m^-2
  PeriodicSeries F_T;     // longwave sensitivity, W m^-2 K^-1
  double mu_tilde = 0.1;  // drift rate of dF0, W m^-2 per yr
  bool synthetic_forcing = true;

  double alpha(double E) const {
    return 0.5 * (alpha_ml + alpha_i) +
           0.5 * (alpha_ml - alpha_i) * std::tanh(E / (L_i * h_alpha));
  }

  // Whole-model defaults with synthetic seasonal profiles (monthly
  // midpoint samples, Fourier-fitted).
  static SeaIceParams defaults();
};

// Piecewise energy interpretation: ice thickness for E < 0, mixed layer
// temperature for E >= 0. Diagnostic only; dynamics run in E.
struct SeaIceState {
  double ice_thickness;  // m, 0 when ice free
  double T_ml;           // K above freezing, 0 under ice
};
inline SeaIceState seaice_interpret(double E, const SeaIceParams& p) {
  if (E < 0.0) return {-E / p.L_i, 0.0};
  return {0.0, E / p.cml_Hml};
}

inline void seaice_rhs_full(double t, const State<1>& y, double dF0,
                            State<1>& dy, double& ddF0,
                            const SeaIceParams& p) {
  const double E = y[0];
  dy[0] = (1.0 - p.alpha(E)) * eval(p.F_S, t) - eval(p.F_0, t) + dF0 -
          eval(p.F_T, t) * E / p.cml_Hml + p.F_B;
  ddF0 = -p.mu_tilde;
}

// Normalized model about the fold (dF0_c, E_c) of the seasonally averaged
// system: x = (E - E_c)/E_c, b = (dF0 - dF0_c)/E_c,
//   dx/dt = b + H(x) + q(t),  H(x) = G1 + G2 tanh(g3 (x+1)) + G4 x.
struct SeaIceNormalized {
  double E_c = 0.0;
  double dF0_c = 0.0;
  double g3 = 0.0;
  double G1 = 0.0, G2 = 0.0, G4 = 0.0;
  double Omega = 0.0;       // fundamental frequency of the seasonal cycle
  double mu = 0.0;          // mu_tilde / E_c
  PeriodicSeries q;         // zero-mean additive residual
  PeriodicSeries g1_t;      // time-dependent coefficients of the
  PeriodicSeries g2_t;      // intermediate model, for cross-validation
  PeriodicSeries g4_t;

  double H(double x) const {
    return G1 + G2 * std::tanh(g3 * (x + 1.0)) + G4 * x;
  }
  double H_d1(double x) const {
    const double c = std::cosh(g3 * (x + 1.0));
    return G2 * g3 / (c * c) + G4;
  }
  double H_d2(double x) const {
    const double u = g3 * (x + 1.0);
    const double c = std::cosh(u);
    return -2.0 * G2 * g3 * g3 * std::tanh(u) / (c * c);
  }

  double dF0_from_b(double b) const { return dF0_c + b * E_c; }
  double b_from_dF0(double dF0) const { return (dF0 - dF0_c) / E_c; }
  double x_from_E(double E) const { return (E - E_c) / E_c; }
  double E_from_x(double x) const { return E_c * (x + 1.0); }
};

// Fold of the averaged static curve by 1-D scan + bisection over E > 0.
// Throws HysteresisLossError when the averaged model has no fold.
SeaIceNormalized seaice_normalize(const SeaIceParams& p);

// dx/dt = b + H(x) + q(t) (the additive reduction).
inline void seaice_rhs_h(double t, const State<1>& y, double b, State<1>& dy,
                         double& db, const SeaIceNormalized& n) {
  dy[0] = b + n.H(y[0]) + eval(n.q, t);
  db = -n.mu;
}

// dx/dt = g1(t) + g2(t) tanh(g3 (x+1)) + g4(t) x + b (the intermediate
// model with multiplicative seasonality, for cross-validation).
inline void seaice_rhs_toy(double t, const State<1>& y, double b, State<1>& dy,
                           double& db, const SeaIceNormalized& n) {
  dy[0] = b + eval(n.g1_t, t) + eval(n.g2_t, t) * std::tanh(n.g3 * (y[0] + 1.0)) +
          eval(n.g4_t, t) * y[0];
  db = -n.mu;
}

enum class HBranch { Upper, Middle, Lower };

// x-intervals of the three monotone pieces of H, split at the critical
// points of H'. Throws HysteresisLossError when H is monotone (middle
// branch empty).
struct HBranchRanges {
  double x_upper_fold;   // ~0: joint of upper and middle branches
  double x_lower_fold;   // ~-2: joint of middle and lower branches
  double b_min_middle;   // = -H(x_upper_fold)
  double b_max_middle;   // = -H(x_lower_fold)
};
HBranchRanges h_branch_ranges(const SeaIceNormalized& n);

// x with H(x) = -b on the requested monotone piece, |H(x)+b| <= 1e-10.
double h_branch_inverse(const SeaIceNormalized& n, double b, HBranch branch);

}  // namespace saddletip
