#include "saddletip/airy.hpp"

#include <cmath>
#include <limits>

namespace saddletip {

namespace {

// Ai(0) = 3^(-2/3)/Gamma(2/3), -Ai'(0) = 3^(-1/3)/Gamma(1/3).
constexpr double kAi0 = 0.35502805388781723926;
constexpr double kAip0 = 0.25881940379280679841;
constexpr double kSeriesLo = -7.5;
constexpr double kSeriesHi = 6.0;
constexpr double kInvSqrtPi = 0.56418958354775628695;

struct Kahan {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// f = sum 3^k (1/3)_k x^(3k)/(3k)!,  g = sum 3^k (2/3)_k x^(3k+1)/(3k+1)!
// via term recurrences; derivatives summed alongside.
AiryEval series(double x) {
  const double x3 = x * x * x;
  Kahan f, g, fp, gp;
  double t = 1.0;  // f term, k = 0
  double s = x;    // g term, k = 0
  f.add(t);
  g.add(s);
  gp.add(1.0);
  for (int k = 1; k <= 220; ++k) {
    const double dk = static_cast<double>(k);
    t *= x3 / ((3.0 * dk - 1.0) * (3.0 * dk));
    s *= x3 / ((3.0 * dk) * (3.0 * dk + 1.0));
    f.add(t);
    g.add(s);
    if (x != 0.0) {
      fp.add(3.0 * dk * t / x);
      gp.add((3.0 * dk + 1.0) * s / x);
    }
    if (std::abs(t) < 1e-30 && std::abs(s) < 1e-30) break;
  }
  return {kAi0 * f.sum - kAip0 * g.sum, kAi0 * fp.sum - kAip0 * gp.sum};
}

// Poincare coefficients u_k, v_k of the large-|x| expansions.
// u_0 = v_0 = 1, u_k = u_{k-1} (6k-5)(6k-3)(6k-1)/(216 k (2k-1)),
// v_k = u_k (6k+1)/(1-6k).
struct UV {
  double u;
  double v;
};

UV uv_step(const UV& prev, int k, double* u_prev) {
  const double dk = static_cast<double>(k);
  const double u =
      *u_prev * (6.0 * dk - 5.0) * (6.0 * dk - 3.0) * (6.0 * dk - 1.0) /
      (216.0 * dk * (2.0 * dk - 1.0));
  *u_prev = u;
  (void)prev;
  return {u, u * (6.0 * dk + 1.0) / (1.0 - 6.0 * dk)};
}

// x >= kSeriesHi: decaying expansion.
AiryEval asymptotic_pos(double x) {
  const double zeta = (2.0 / 3.0) * x * std::sqrt(x);
  const double x4 = std::pow(x, 0.25);
  double su = 1.0, sv = 1.0;
  double u = 1.0;
  double sign = -1.0;
  double pw = 1.0;
  double last = 1.0;
  for (int k = 1; k <= 40; ++k) {
    const UV c = uv_step({}, k, &u);
    pw /= zeta;
    const double tu = sign * c.u * pw;
    if (std::abs(tu) > std::abs(last)) break;  // divergent tail reached
    su += tu;
    sv += sign * c.v * pw;
    last = tu;
    sign = -sign;
    if (std::abs(tu) < 1e-20) break;
  }
  const double e = std::exp(-zeta);
  const double ai = 0.5 * kInvSqrtPi * e / x4 * su;
  const double aip = -0.5 * kInvSqrtPi * e * x4 * sv;
  return {ai, aip};
}

// x <= kSeriesLo: oscillatory expansion.
AiryEval asymptotic_neg(double x) {
  const double z = -x;
  const double zeta = (2.0 / 3.0) * z * std::sqrt(z);
  const double z4 = std::pow(z, 0.25);
  // Even/odd splits of the u and v tails.
  double ue = 1.0, uo = 0.0, ve = 1.0, vo = 0.0;
  double u = 1.0;
  double pw = 1.0;
  double last = 1.0;
  for (int k = 1; k <= 40; ++k) {
    const UV c = uv_step({}, k, &u);
    pw /= zeta;
    const double tu = c.u * pw;
    if (std::abs(tu) > std::abs(last)) break;
    const double sgn = ((k / 2) % 2 == 0) ? 1.0 : -1.0;  // (-1)^floor(k/2)
    if (k % 2 == 0) {
      ue += sgn * tu;
      ve += sgn * c.v * pw;
    } else {
      uo += sgn * tu;
      vo += sgn * c.v * pw;
    }
    last = tu;
    if (std::abs(tu) < 1e-20) break;
  }
  const double ph = zeta - 0.78539816339744830962;
  const double c = std::cos(ph), s = std::sin(ph);
  const double ai = kInvSqrtPi / z4 * (c * ue + s * uo);
  const double aip = kInvSqrtPi * z4 * (s * ve - c * vo);
  return {ai, aip};
}

}  // namespace

AiryEval airy_eval(double x) {
  if (!std::isfinite(x)) throw PreconditionError("airy: non-finite argument");
  if (x < kSeriesLo) return asymptotic_neg(x);
  if (x > kSeriesHi) return asymptotic_pos(x);
  return series(x);
}

double airy_ai(double x) { return airy_eval(x).ai; }
double airy_ai_prime(double x) { return airy_eval(x).ai_prime; }

double airy_first_zero() {
  static const double z1 = [] {
    double z = -2.338;
    for (int i = 0; i < 12; ++i) {
      const AiryEval e = series(z);
      const double step = e.ai / e.ai_prime;
      z -= step;
      if (std::abs(step) < 1e-13) break;
    }
    return z;
  }();
  return z1;
}

double airy_log_ratio(double x) {
  const double z1 = airy_first_zero();
  if (std::abs(x - z1) < 1e-8)
    throw PoleError("airy_log_ratio: argument at the first Ai zero", z1);
  const AiryEval e = airy_eval(x);
  if (std::abs(e.ai) < 1e-13 * std::max(1.0, std::abs(e.ai_prime))) {
    const double est = x - e.ai / e.ai_prime;
    throw PoleError("airy_log_ratio: argument too close to an Ai zero", est);
  }
  return -e.ai_prime / e.ai;
}

}  // namespace saddletip
