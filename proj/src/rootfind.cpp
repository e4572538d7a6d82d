#include "saddletip/rootfind.hpp"

#include <cmath>
#include <stdexcept>

namespace saddletip {

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double xtol, int max_iter) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::invalid_argument("bisect: endpoints do not bracket a root");
  for (int i = 0; i < max_iter && (hi - lo) > xtol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double newton_in_bracket(const std::function<double(double)>& f,
                         const std::function<double(double)>& df, double lo,
                         double hi, double xtol, int max_iter) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  const double fhi = f(hi);
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    // degenerate bracket: accept an endpoint sitting on the root
    if (std::abs(flo) < 1e-9 || std::abs(fhi) < 1e-9)
      return std::abs(flo) <= std::abs(fhi) ? lo : hi;
    throw std::invalid_argument("newton_in_bracket: endpoints do not bracket a root");
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < max_iter; ++i) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx > 0.0) == (flo > 0.0))
      lo = x;
    else
      hi = x;
    const double d = df(x);
    double xn = (d != 0.0) ? x - fx / d : 0.5 * (lo + hi);
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    if (std::abs(xn - x) < xtol) return xn;
    x = xn;
  }
  return x;
}

std::vector<Bracket> scan_brackets(const std::function<double(double)>& f,
                                   double lo, double hi, int n) {
  std::vector<Bracket> out;
  double xp = lo;
  double fp = f(xp);
  for (int i = 1; i <= n; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / n;
    const double fx = f(x);
    if (fp == 0.0 || (fp > 0.0) != (fx > 0.0)) out.push_back({xp, x});
    xp = x;
    fp = fx;
  }
  return out;
}

std::optional<Bracket> descend_to_sign_change(
    const std::function<double(double)>& f, double start, double floor,
    double step) {
  double xp = start;
  double fp = f(xp);
  while (xp > floor) {
    const double x = std::max(floor, xp - step);
    const double fx = f(x);
    if ((fp > 0.0) != (fx > 0.0) || fx == 0.0) return Bracket{x, xp};
    xp = x;
    fp = fx;
    if (x == floor) break;
  }
  return std::nullopt;
}

}  // namespace saddletip
