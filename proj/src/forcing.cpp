#include "saddletip/forcing.hpp"

#include <cmath>
#include <limits>

#include "saddletip/errors.hpp"

namespace saddletip {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

double PeriodicSeries::period() const {
  if (fundamental_frequency <= 0.0) return 0.0;
  return kTwoPi / fundamental_frequency;
}

double eval(const PeriodicSeries& s, double t) {
  double v = s.mean;
  for (std::size_t k = 0; k < s.cos_coeffs.size(); ++k) {
    const double w = (k + 1) * s.fundamental_frequency * t;
    v += s.cos_coeffs[k] * std::cos(w) + s.sin_coeffs[k] * std::sin(w);
  }
  return v;
}

double eval_derivative(const PeriodicSeries& s, double t) {
  double v = 0.0;
  for (std::size_t k = 0; k < s.cos_coeffs.size(); ++k) {
    const double kw = (k + 1) * s.fundamental_frequency;
    const double w = kw * t;
    v += -s.cos_coeffs[k] * kw * std::sin(w) + s.sin_coeffs[k] * kw * std::cos(w);
  }
  return v;
}

PeriodicSeries antiderivative_zero_mean(const PeriodicSeries& q) {
  if (std::abs(q.mean) > 1e-10)
    throw PreconditionError("antiderivative_zero_mean: signal has nonzero mean");
  PeriodicSeries out;
  out.fundamental_frequency = q.fundamental_frequency;
  out.mean = 0.0;
  out.cos_coeffs.resize(q.cos_coeffs.size());
  out.sin_coeffs.resize(q.sin_coeffs.size());
  for (std::size_t k = 0; k < q.cos_coeffs.size(); ++k) {
    const double kw = (k + 1) * q.fundamental_frequency;
    out.cos_coeffs[k] = -q.sin_coeffs[k] / kw;
    out.sin_coeffs[k] = q.cos_coeffs[k] / kw;
  }
  return out;
}

namespace {

std::pair<double, double> extremum(const PeriodicSeries& s, double sign) {
  if (s.harmonics() == 0 || s.fundamental_frequency <= 0.0)
    return {0.0, s.mean};
  const double T = s.period();
  const int n = 4096;
  int best = 0;
  double best_v = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double v = sign * eval(s, T * i / n);
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  // Interior minimum of a smooth band-limited signal: the derivative
  // changes sign across it. Bracket over the two neighbouring cells.
  double lo = T * (best - 1) / n;
  double hi = T * (best + 1) / n;
  double dlo = sign * eval_derivative(s, lo);
  for (int i = 0; i < 20; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double dm = sign * eval_derivative(s, mid);
    if ((dm > 0.0) == (dlo > 0.0)) {
      lo = mid;
      dlo = dm;
    } else {
      hi = mid;
    }
  }
  double t = 0.5 * (lo + hi);
  double v = sign * eval(s, t);
  // Derivative bracketing can slide off a flat-ish cell; keep the sample
  // minimum if it is better.
  if (best_v < v) {
    t = T * best / n;
    v = best_v;
  }
  if (t < 0.0) t += T;
  return {t, sign * v};
}

}  // namespace

std::pair<double, double> min_over_period(const PeriodicSeries& s) {
  return extremum(s, +1.0);
}

std::pair<double, double> max_over_period(const PeriodicSeries& s) {
  auto [t, v] = extremum(s, -1.0);
  return {t, v};
}

PeriodicSeries fit_from_monthly(const std::array<double, 12>& samples,
                                double period) {
  for (double v : samples)
    if (!std::isfinite(v))
      throw PreconditionError("fit_from_monthly: non-finite sample");
  if (period <= 0.0) throw PreconditionError("fit_from_monthly: period <= 0");
  PeriodicSeries out;
  out.fundamental_frequency = kTwoPi / period;
  double mean = 0.0;
  for (double v : samples) mean += v;
  out.mean = mean / 12.0;
  out.cos_coeffs.assign(5, 0.0);
  out.sin_coeffs.assign(5, 0.0);
  for (std::size_t k = 1; k <= 5; ++k) {
    double c = 0.0, sn = 0.0;
    for (int m = 0; m < 12; ++m) {
      const double ang = kTwoPi * static_cast<double>(k) * (m + 0.5) / 12.0;
      c += samples[m] * std::cos(ang);
      sn += samples[m] * std::sin(ang);
    }
    out.cos_coeffs[k - 1] = c / 6.0;
    out.sin_coeffs[k - 1] = sn / 6.0;
  }
  // Drop numerically null harmonics so constant inputs give a bare mean.
  while (!out.cos_coeffs.empty() &&
         std::abs(out.cos_coeffs.back()) < 1e-12 &&
         std::abs(out.sin_coeffs.back()) < 1e-12) {
    out.cos_coeffs.pop_back();
    out.sin_coeffs.pop_back();
  }
  return out;
}

PeriodicSeries combine_oscillations(
    const std::vector<std::pair<double, const PeriodicSeries*>>& terms) {
  PeriodicSeries out;
  out.mean = 0.0;
  for (const auto& [scale, s] : terms) {
    if (s->harmonics() == 0) continue;
    if (out.fundamental_frequency == 0.0)
      out.fundamental_frequency = s->fundamental_frequency;
    else if (std::abs(out.fundamental_frequency - s->fundamental_frequency) >
             1e-12 * out.fundamental_frequency)
      throw PreconditionError("combine_oscillations: mismatched periods");
    if (s->harmonics() > out.harmonics()) {
      out.cos_coeffs.resize(s->harmonics(), 0.0);
      out.sin_coeffs.resize(s->harmonics(), 0.0);
    }
    for (std::size_t k = 0; k < s->harmonics(); ++k) {
      out.cos_coeffs[k] += scale * s->cos_coeffs[k];
      out.sin_coeffs[k] += scale * s->sin_coeffs[k];
    }
  }
  return out;
}

}  // namespace saddletip
