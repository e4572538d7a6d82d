#include "saddletip/ml_tipping.hpp"

#include <cmath>

#include "saddletip/airy.hpp"
#include "saddletip/asymptotics.hpp"
#include "saddletip/errors.hpp"

namespace saddletip {

namespace {

void check_reduction(const MLNormalized& n) {
  if (std::abs(n.k0) > 1e-8 || std::abs(n.k1) > 1e-8)
    throw RegimeError("ml: normalization residual k0/k1 exceeds 1e-8");
}

}  // namespace

MLWCoefficients ml_w_coefficients(const MLNormalized& n, double A,
                                  double Omega) {
  if (Omega <= 0.0)
    throw PreconditionError("ml_w_coefficients: requires Omega > 0");
  MLWCoefficients w;
  if (A == 0.0) {
    w.W00 = 0.0;
    w.W01 = n.w_inf1;
    w.W02 = n.w_inf2 / 2.0;
    w.W0d = n.kappa0;
    return w;
  }
  const double r2 = A * A / (2.0 * Omega * Omega);
  w.W0d = n.kappa0 + n.kappa2 * r2 / 2.0;
  if (std::abs(w.W0d) < 1e-12)
    throw RegimeError("ml_w_coefficients: degenerate gating average");
  const double num0 = n.w_inf1 * n.kappa1 + n.w_inf2 * n.kappa0 / 2.0;
  w.W00 = num0 / w.W0d * r2;
  w.W01 = n.w_inf1 * n.kappa0 / w.W0d - n.kappa1 * w.W00 / w.W0d;
  // W00 * 2 Omega^2 / A^2 written in its finite form num0 / W0d.
  w.W02 = num0 / w.W0d -
          w.W00 * (n.kappa2 / (2.0 * w.W0d) -
                   2.0 * n.kappa1 * n.kappa1 / (w.W0d * w.W0d)) -
          n.w_inf1 * n.kappa1 * n.kappa0 / (w.W0d * w.W0d);
  return w;
}

Prediction ml_unforced_tipping(const MLNormalized& n, double mu) {
  if (!(mu > 0.0)) throw PreconditionError("ml_unforced_tipping: requires mu > 0");
  if (!(n.k2 < 0.0)) throw PreconditionError("ml_unforced_tipping: requires k2 < 0");
  Prediction p;
  p.delay_component =
      mu_two_thirds(mu) * airy_first_zero() / std::cbrt(std::abs(n.k2));
  p.shift_component = 0.0;
  p.value = p.delay_component;
  p.regime = Regime::Indeterminate;
  p.mapped_value = n.bias_from_b(p.value);
  return p;
}

Prediction ml_hf_tipping(const MLNormalized& n, double A, double Omega,
                         double mu) {
  check_reduction(n);
  if (A == 0.0) {
    Prediction p = ml_unforced_tipping(n, mu);
    p.regime = Regime::HighFrequency;
    return p;
  }
  const MLWCoefficients w = ml_w_coefficients(n, A, Omega);
  const double r2 = A * A / (2.0 * Omega * Omega);
  const double h0 = -n.g_k * n.D * w.W00 + n.h2 * r2;
  const double h1 = -n.g_k * (w.W00 + n.D * (w.W01 - n.w_inf1));
  const double h2 = n.h2 - n.g_k * (w.W01 + n.D * w.W02);
  if (!(h2 < 0.0))
    throw RegimeError("ml_hf_tipping: averaged quadratic coefficient not negative");
  const double b_s = h0 + h1 * h1 / (4.0 * std::abs(h2));
  Prediction p;
  p.regime = Regime::HighFrequency;
  p.delay_component =
      mu_two_thirds(mu) * airy_first_zero() / std::cbrt(std::abs(h2));
  p.shift_component = -b_s;
  p.value = p.delay_component + p.shift_component;
  p.mapped_value = n.bias_from_b(p.value);
  const double lambda = -std::log(Omega) / std::log(mu);
  if (!(lambda > 1.0 / 3.0) || !(A < Omega))
    p.notes.push_back("outside high-frequency validity (needs lambda > 1/3 and A = o(Omega))");
  return p;
}

double ml_lf_broot(const MLNormalized& n, double A, double C, double b0) {
  check_reduction(n);
  return lf_first_root(A, C, b0);
}

Prediction ml_lf_tipping(const MLNormalized& n, double mu, double A, double C,
                         double b0) {
  if (!(mu > 0.0)) throw PreconditionError("ml_lf_tipping: requires mu > 0");
  const double b_r = ml_lf_broot(n, A, C, b0);
  const double fp = lf_f_prime(b_r, A, C, b0);
  if (!(fp > 0.1))
    throw RegimeError("ml_lf_tipping: F'(b_r) too small; use ml_lf_critical");
  Prediction p;
  p.regime = Regime::LowFreqOrderMu;
  p.shift_component = b_r;
  p.delay_component = mu_two_thirds(mu) * airy_first_zero() /
                      std::cbrt(fp * std::abs(n.k2));
  p.value = p.shift_component + p.delay_component;
  p.mapped_value = n.bias_from_b(p.value);
  return p;
}

std::vector<CriticalAmplitude> ml_lf_critical(const MLNormalized& n, double mu,
                                              double Omega, double b0,
                                              int k_max) {
  check_reduction(n);
  if (!(mu > 0.0) || !(Omega > 0.0))
    throw PreconditionError("ml_lf_critical: requires mu > 0 and Omega > 0");
  const double C = Omega / mu;
  std::vector<CriticalAmplitude> out;
  for (const CriticalPair& pr : lf_critical_pairs(C, b0, k_max)) {
    CriticalAmplitude ca;
    ca.a_star = pr.a_m;  // b_m
    ca.A_m = pr.A_m;
    ca.A1 = C * pr.A_m / std::sqrt(2.0 * std::abs(n.k2) * pr.a_m);
    ca.A_c = pr.A_m + mu * ca.A1;
    ca.k = pr.k;
    out.push_back(ca);
  }
  return out;
}

}  // namespace saddletip
