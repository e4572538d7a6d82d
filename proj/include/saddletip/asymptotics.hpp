#pragma once

#include <vector>

#include "saddletip/prediction.hpp"

namespace saddletip {

inline double mu_two_thirds(double mu) {
  const double c = std::cbrt(mu);
  return c * c;
}

// Unforced delayed tipping a_d = mu^(2/3) z1.
Prediction delayed_tipping(double mu);

// Slowly varying equilibrium: three-term outer expansion for
// a >= 5 mu^(2/3), Airy-ratio local form below.
double slow_equilibrium(double a, double mu);

// Bifurcation point of the fast-forced static problem, a_p = A^2/(2 Omega^2).
inline double hf_bifurcation_point(double A, double Omega) {
  return A * A / (2.0 * Omega * Omega);
}

// High-frequency tipping a_hf = a_d + a_p. With mu = 0 returns the static
// bifurcation point a_p and flags that no attracting solution exists below.
Prediction hf_tipping(double mu, double A, double Omega);

// Attracting-solution approximations away from / near the fold.
double hf_attracting_outer(double a, double t, const CanonicalParams& p);
double hf_attracting_local(double a, double t, const CanonicalParams& p);

// Tipping of the generic quadratic saddle-node normal form
//   dx/dt = D a + k0 + k1 x + k2 x^2:
//   a_g = (D |k2|)^(-1/3) a_d - a_s/D,  a_s = k0 + k1^2/(4 |k2|).
Prediction quadratic_tipping(double D, double k0, double k1, double k2,
                             double mu);

// f(a) = a + A sin(c (a0 - a)) and its derivative.
inline double lf_f(double a, double A, double c, double a0) {
  return a + A * std::sin(c * (a0 - a));
}
inline double lf_f_prime(double a, double A, double c, double a0) {
  return 1.0 - c * A * std::cos(c * (a0 - a));
}

// Largest root a_r < scan_from with f(a_r) = 0 and f > 0 on
// (a_r, scan_from]. Descending scan (step <= 0.01/c) plus Newton-in-bracket
// polish. a0 stays the phase anchor of f; by default the scan starts there.
double lf_first_root(double A, double c, double a0, double scan_from);
inline double lf_first_root(double A, double c, double a0) {
  return lf_first_root(A, c, a0, a0);
}

// Low-frequency tipping a_lf = a_r + a_d / f'(a_r)^(1/3). Guarded by
// f'(a_r) > 0.1; below that the concavity analysis applies instead.
Prediction lf_tipping(double mu, double A, double c, double a0);

struct CriticalPair {
  int k;
  double a_m;
  double A_m;
};

// All tangency pairs f(a_m) = f'(a_m) = 0 (at A = A_m) with 0 < a_m < a0,
// one per phase branch k = 1..k_max; c^2 a_m^2 + 1 = c^2 A_m^2 holds.
std::vector<CriticalPair> lf_critical_pairs(double c, double a0,
                                            int k_max = 10);

// Critical amplitudes A_c = A_m + mu A1 for the c = Omega/mu = O(1) case,
// A1^2 = Omega c^2 A_m^2 / (2 mu sqrt(c^2 A_m^2 - 1)).
std::vector<CriticalAmplitude> lf_critical_amplitudes(double mu, double Omega,
                                                      double a0,
                                                      int k_max = 10);

// Local concavity threshold xi_c(eta) = c^2 A_m/(2 A1) eta - 1/(2 a_m).
inline double lf_concavity_line(double eta, double a_m, double A_m, double A1,
                                double c) {
  return c * c * A_m / (2.0 * A1) * eta - 1.0 / (2.0 * a_m);
}

// Critical pairs (a_min, A_c) for mu = o(Omega):
//   a_min = sqrt(A_c^2 - mu^2/Omega^2) - (Omega/sqrt(2)) (A_c^2 - mu^2/Omega^2)^(1/4)
//   a_min = a0 + (mu/Omega) (acos(mu/(A_c Omega)) - 2 k pi)
// solved per k by 1-D reduction; pairs outside (0, a0) are skipped.
std::vector<CriticalAmplitude> lf_nu_critical(double mu, double Omega,
                                              double a0, int k_max = 10);

}  // namespace saddletip
