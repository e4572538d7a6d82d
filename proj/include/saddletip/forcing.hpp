#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

namespace saddletip {

// Truncated Fourier representation of a periodic signal:
//   s(t) = mean + sum_k cos_coeffs[k-1] cos(k w0 t) + sin_coeffs[k-1] sin(k w0 t)
struct PeriodicSeries {
  double mean = 0.0;
  std::vector<double> cos_coeffs;
  std::vector<double> sin_coeffs;
  double fundamental_frequency = 0.0;  // rad per unit time

  double period() const;
  std::size_t harmonics() const { return cos_coeffs.size(); }
};

double eval(const PeriodicSeries& s, double t);
double eval_derivative(const PeriodicSeries& s, double t);

// Q with Q' = q and zero mean. Precondition: q.mean == 0.
PeriodicSeries antiderivative_zero_mean(const PeriodicSeries& q);

// Global minimum over one period: 4096 samples, then 20 bisection
// refinements on the derivative around the best cell.
std::pair<double, double> min_over_period(const PeriodicSeries& s);
std::pair<double, double> max_over_period(const PeriodicSeries& s);

// DFT fit of 12 monthly midpoint samples with <= 5 harmonics; reproduces
// the sample mean exactly.
PeriodicSeries fit_from_monthly(const std::array<double, 12>& samples,
                                double period);

// Linear combination helper: out = sum_i scale[i] * (s[i] - mean(s[i])).
// All inputs must share the fundamental frequency. Result has zero mean.
PeriodicSeries combine_oscillations(
    const std::vector<std::pair<double, const PeriodicSeries*>>& terms);

}  // namespace saddletip
