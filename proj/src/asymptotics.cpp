#include "saddletip/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "saddletip/airy.hpp"
#include "saddletip/errors.hpp"
#include "saddletip/rootfind.hpp"

namespace saddletip {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;

void check_mu(double mu) {
  if (!(mu > 0.0))
    throw PreconditionError("tipping prediction: requires mu > 0");
}
}  // namespace

Prediction delayed_tipping(double mu) {
  check_mu(mu);
  Prediction p;
  p.delay_component = mu_two_thirds(mu) * airy_first_zero();
  p.shift_component = 0.0;
  p.value = p.delay_component;
  p.regime = Regime::Indeterminate;
  return p;
}

double slow_equilibrium(double a, double mu) {
  check_mu(mu);
  const double m23 = mu_two_thirds(mu);
  if (a >= 5.0 * m23) {
    const double r = std::sqrt(a);
    return r + mu / (4.0 * a) - (5.0 / 32.0) * mu * mu / (a * a * r);
  }
  const double arg = a / m23;
  if (arg <= airy_first_zero() + 1e-8)
    throw PoleError("slow_equilibrium: a at or below the tipping singularity",
                    m23 * airy_first_zero());
  return std::cbrt(mu) * airy_log_ratio(arg);
}

Prediction hf_tipping(double mu, double A, double Omega) {
  if (mu < 0.0) throw PreconditionError("hf_tipping: requires mu >= 0");
  if (Omega <= 0.0) throw PreconditionError("hf_tipping: requires Omega > 0");
  Prediction p;
  p.regime = Regime::HighFrequency;
  p.shift_component = hf_bifurcation_point(A, Omega);
  if (mu == 0.0) {
    p.delay_component = 0.0;
    p.value = p.shift_component;
    p.notes.push_back(
        "mu = 0: static bifurcation point; no attracting solutions for a below it");
    return p;
  }
  p.delay_component = mu_two_thirds(mu) * airy_first_zero();
  p.value = p.delay_component + p.shift_component;
  const RegimeClassification rc =
      classify_regime({mu, A, Omega, 1.0, 1.0});
  if (rc.regime != Regime::HighFrequency) {
    p.notes.push_back("outside high-frequency validity (needs lambda > 1/3 and A = o(Omega))");
  }
  return p;
}

double hf_attracting_outer(double a, double t, const CanonicalParams& p) {
  if (a <= 0.0)
    throw PreconditionError("hf_attracting_outer: requires a > 0");
  return std::sqrt(a) + p.mu / (4.0 * a) -
         (p.A / p.Omega) * std::cos(p.Omega * t);
}

double hf_attracting_local(double a, double t, const CanonicalParams& p) {
  const double arg = (a - hf_bifurcation_point(p.A, p.Omega)) / mu_two_thirds(p.mu);
  return -(p.A / p.Omega) * std::cos(p.Omega * t) +
         std::cbrt(p.mu) * airy_log_ratio(arg);
}

Prediction quadratic_tipping(double D, double k0, double k1, double k2,
                             double mu) {
  check_mu(mu);
  if (!(k2 < 0.0)) throw PreconditionError("quadratic_tipping: requires k2 < 0");
  if (!(D > 0.0)) throw PreconditionError("quadratic_tipping: requires D > 0");
  Prediction p;
  const double a_s = k0 + k1 * k1 / (4.0 * std::abs(k2));
  p.delay_component =
      mu_two_thirds(mu) * airy_first_zero() / std::cbrt(D * std::abs(k2));
  p.shift_component = -a_s / D;
  p.value = p.delay_component + p.shift_component;
  p.regime = Regime::Indeterminate;
  return p;
}

double lf_first_root(double A, double c, double a0, double scan_from) {
  if (c <= 0.0) throw PreconditionError("lf_first_root: requires c > 0");
  auto f = [&](double a) { return lf_f(a, A, c, a0); };
  if (!(f(scan_from) > 0.0))
    throw PreconditionError("lf_first_root: f must be positive at the scan start");
  if (A == 0.0) return 0.0;  // f(a) = a
  const double step = std::min(0.05, 0.01 / c);
  const double floor = -2.0 * std::abs(A) - 1.0;
  const auto br = descend_to_sign_change(f, scan_from, floor, step);
  if (!br)
    throw RegimeError("lf_first_root: no sign change above the scan floor");
  return newton_in_bracket(
      f, [&](double a) { return lf_f_prime(a, A, c, a0); }, br->lo, br->hi,
      1e-14, 80);
}

Prediction lf_tipping(double mu, double A, double c, double a0) {
  check_mu(mu);
  const double a_r = lf_first_root(A, c, a0);
  const double fp = lf_f_prime(a_r, A, c, a0);
  if (!(fp > 0.1))
    throw RegimeError(
        "lf_tipping: f'(a_r) too small; near a tangency, use the critical-amplitude analysis");
  Prediction p;
  p.regime = Regime::LowFreqOrderMu;
  p.shift_component = a_r;
  p.delay_component = mu_two_thirds(mu) * airy_first_zero() / std::cbrt(fp);
  p.value = p.shift_component + p.delay_component;
  return p;
}

std::vector<CriticalPair> lf_critical_pairs(double c, double a0, int k_max) {
  if (c <= 0.0) throw PreconditionError("lf_critical_pairs: requires c > 0");
  std::vector<CriticalPair> out;
  // Tangency phases satisfy c a0 = u - atan(u) + 2 pi k with u = c a_m > 0.
  auto g = [](double u) { return u - std::atan(u); };
  for (int k = 1; k <= k_max; ++k) {
    const double target = c * a0 - kTwoPi * k;
    if (target <= 0.0) break;
    auto fn = [&](double u) { return g(u) - target; };
    double hi = target + 1.6;
    const double u = newton_in_bracket(
        fn, [](double u) { return u * u / (1.0 + u * u); },
        std::max(1e-12, target * 0.5), hi + 0.1, 1e-13, 100);
    const double a_m = u / c;
    if (a_m <= 0.0 || a_m >= a0) continue;
    const double A_m = std::sqrt(a_m * a_m + 1.0 / (c * c));
    out.push_back({k, a_m, A_m});
  }
  return out;
}

std::vector<CriticalAmplitude> lf_critical_amplitudes(double mu, double Omega,
                                                      double a0, int k_max) {
  check_mu(mu);
  const double c = Omega / mu;
  std::vector<CriticalAmplitude> out;
  for (const CriticalPair& pr : lf_critical_pairs(c, a0, k_max)) {
    const double cA2 = c * c * pr.A_m * pr.A_m;
    const double A1 = std::sqrt(Omega * cA2 / (2.0 * mu * std::sqrt(cA2 - 1.0)));
    CriticalAmplitude ca;
    ca.a_star = pr.a_m;
    ca.A_m = pr.A_m;
    ca.A1 = A1;
    ca.A_c = pr.A_m + mu * A1;
    ca.k = pr.k;
    out.push_back(ca);
  }
  return out;
}

std::vector<CriticalAmplitude> lf_nu_critical(double mu, double Omega,
                                              double a0, int k_max) {
  check_mu(mu);
  if (Omega <= 0.0) throw PreconditionError("lf_nu_critical: requires Omega > 0");
  const double r = mu / Omega;  // = 1/c
  std::vector<CriticalAmplitude> out;
  for (int k = 1; k <= k_max; ++k) {
    auto G = [&](double A) {
      const double s = A * A - r * r;
      const double a43 = std::sqrt(s) - (Omega / std::sqrt(2.0)) * std::pow(s, 0.25);
      const double a44 = a0 + r * (std::acos(r / A) - kTwoPi * k);
      return a43 - a44;
    };
    const double A_lo = r * (1.0 + 1e-9);
    if (G(A_lo) >= 0.0) continue;  // no bracket for this k
    double A_hi = std::max(2.0 * r, a0 + kTwoPi * k * r + Omega + 1.0);
    if (G(A_hi) <= 0.0) continue;
    const double A_c = bisect(G, A_lo, A_hi, 1e-12, 300);
    const double a_min = a0 + r * (std::acos(r / A_c) - kTwoPi * k);
    if (a_min <= 0.0 || a_min >= a0) continue;
    CriticalAmplitude ca;
    ca.a_star = a_min;
    ca.A_m = A_c;
    ca.A1 = 0.0;
    ca.A_c = A_c;
    ca.k = k;
    out.push_back(ca);
  }
  return out;
}

}  // namespace saddletip
