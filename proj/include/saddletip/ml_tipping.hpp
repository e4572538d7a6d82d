#pragma once

#include <vector>

#include "saddletip/morris_lecar.hpp"
#include "saddletip/prediction.hpp"

namespace saddletip {

// Coefficients of the quadratic-in-z0 closure of the gating average under
// fast forcing; W0 ~ w_inf(0) + W00 + W01 z0 + W02 z0^2.
struct MLWCoefficients {
  double W00 = 0.0;
  double W01 = 0.0;
  double W02 = 0.0;
  double W0d = 0.0;
};

MLWCoefficients ml_w_coefficients(const MLNormalized& n, double A,
                                  double Omega);

// Unforced delayed tipping b_ml = |k2|^(-1/3) mu^(2/3) z1, with the
// I_bias mapping attached.
Prediction ml_unforced_tipping(const MLNormalized& n, double mu);

// High-frequency tipping b_hf = |h2|^(-1/3) a_d - b_s from the averaged
// local equation; reduces exactly to ml_unforced_tipping at A = 0.
Prediction ml_hf_tipping(const MLNormalized& n, double A, double Omega,
                         double mu);

// Low-frequency machinery: F(b) = b + A sin(C (b0 - b)) shares the
// canonical transcendental form, so the same root finder applies.
double ml_lf_broot(const MLNormalized& n, double A, double C, double b0);
Prediction ml_lf_tipping(const MLNormalized& n, double mu, double A, double C,
                         double b0);

// Critical amplitudes A_c = A_m + Omega A_m / sqrt(2 |k2| b_m), one per
// tangency pair 1 + C^2 b_m^2 = C^2 A_m^2.
std::vector<CriticalAmplitude> ml_lf_critical(const MLNormalized& n, double mu,
                                              double Omega, double b0,
                                              int k_max = 10);

}  // namespace saddletip
