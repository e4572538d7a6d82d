#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace saddletip {

struct Bracket {
  double lo;
  double hi;
};

// Bisection on a bracketing interval; f(lo) and f(hi) must have opposite
// signs. Returns the midpoint once the interval shrinks below xtol.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double xtol = 1e-12, int max_iter = 200);

// Newton with bisection fallback inside a bracket.
double newton_in_bracket(const std::function<double(double)>& f,
                         const std::function<double(double)>& df, double lo,
                         double hi, double xtol = 1e-13, int max_iter = 60);

// Scan [lo, hi] with n uniform intervals and return every sign-change
// bracket of f, in order.
std::vector<Bracket> scan_brackets(const std::function<double(double)>& f,
                                   double lo, double hi, int n);

// Descending scan from `start` toward `floor` with the given step; returns
// the first bracket where f changes sign (largest root below start).
std::optional<Bracket> descend_to_sign_change(
    const std::function<double(double)>& f, double start, double floor,
    double step);

}  // namespace saddletip
