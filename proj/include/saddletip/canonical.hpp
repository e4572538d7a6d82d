#pragma once

#include <cmath>
#include <string>

#include "saddletip/errors.hpp"
#include "saddletip/integrate.hpp"

namespace saddletip {

// dx/dt = a - x^2 + A sin(Omega t), da/dt = -mu.
struct CanonicalParams {
  double mu = 0.0025;
  double A = 0.0;
  double Omega = 1.0;
  double a0 = 1.0;
  double x0 = 1.0;

  static CanonicalParams make(double mu, double A, double Omega, double a0) {
    return {mu, A, Omega, a0, std::sqrt(a0)};
  }

  // Exponent views: Omega = mu^-lambda = mu^nu, c = Omega/mu.
  double lambda() const { return -std::log(Omega) / std::log(mu); }
  double nu() const { return std::log(Omega) / std::log(mu); }
  double c_ratio() const { return Omega / mu; }
};

inline void canonical_rhs(double t, const State<1>& y, double a, State<1>& dy,
                          double& da, const CanonicalParams& p) {
  dy[0] = a - y[0] * y[0] + p.A * std::sin(p.Omega * t);
  da = -p.mu;
}

inline Trajectory<1> simulate_canonical(const CanonicalParams& p,
                                        const StopSpec& stop, double dt) {
  auto rhs = [&p](double t, const State<1>& y, double a, State<1>& dy,
                  double& da) { canonical_rhs(t, y, a, dy, da, p); };
  return rk2_integrate<1>(rhs, {p.x0}, p.a0, 0.0, stop, dt);
}

// x = sqrt(A) z, t = S / sqrt(A): unit-amplitude forcing.
struct RescaledParams {
  double omega;  // Omega / sqrt(A)
  double M;      // A^(-3/2) mu
  double h0;     // a0 / A
  double z0;     // x0 / sqrt(A)
};

inline RescaledParams rescale_large_amplitude(const CanonicalParams& p) {
  if (p.A <= 0.0)
    throw PreconditionError("rescale_large_amplitude: requires A > 0");
  const double rA = std::sqrt(p.A);
  return {p.Omega / rA, p.mu / (p.A * rA), p.a0 / p.A, p.x0 / rA};
}

inline CanonicalParams map_back(const RescaledParams& r, double A) {
  if (A <= 0.0) throw PreconditionError("map_back: requires A > 0");
  const double rA = std::sqrt(A);
  return {r.M * A * rA, A, r.omega * rA, r.h0 * A, r.z0 * rA};
}

// zeta = (P-2)/(3P + 2/lambda), for A = Omega^P and Omega = mu^-lambda.
inline double regime_exponent_zeta(double P, double lambda) {
  if (lambda <= 0.0)
    throw PreconditionError("regime_exponent_zeta: requires lambda > 0");
  return (P - 2.0) / (3.0 * P + 2.0 / lambda);
}

enum class Regime {
  HighFrequency,
  LowFreqOrderMu,
  LowFreqNu,
  RescaledLowFrequency,
  Indeterminate,
};

std::string to_string(Regime r);

struct RegimeClassification {
  Regime regime = Regime::Indeterminate;
  double lambda = 0.0;
  double nu = 0.0;
  double c = 0.0;
  double P = 0.0;     // log A / log Omega where defined, else 0
  double zeta = 0.0;  // rescaled exponent where defined, else 0
  // Thresholds the call was judged against.
  double lambda_min_hf = 1.0 / 3.0;
  double c_max_order_one = 3.0;
  double omega_max_lf = 1.0;
};

RegimeClassification classify_regime(const CanonicalParams& p);

}  // namespace saddletip
