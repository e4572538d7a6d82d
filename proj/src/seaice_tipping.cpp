#include "saddletip/seaice_tipping.hpp"

#include <cmath>
#include <functional>

#include "saddletip/airy.hpp"
#include "saddletip/asymptotics.hpp"
#include "saddletip/rootfind.hpp"

namespace saddletip {

namespace {

// Composite Simpson over one period (n panels, n even).
double simpson_period(const std::function<double(double)>& f, double T, int n) {
  double s = f(0.0) + f(T);
  for (int i = 1; i < n; ++i) {
    const double w = (i % 2 == 1) ? 4.0 : 2.0;
    s += w * f(T * i / n);
  }
  return s / (3.0 * n);  // (h/3) sum / T = period average
}

}  // namespace

std::pair<double, double> seaice_xstar(const SeaIceNormalized& n) {
  const HBranchRanges r = h_branch_ranges(n);
  const PeriodicSeries P = antiderivative_zero_mean(n.q);
  const double dip = min_over_period(P).second;  // = Omega^{-1} min Q, <= 0
  if (dip > -1e-12) {
    // Vanishing forcing: the touching point degenerates to the fold.
    return {r.b_min_middle, r.x_upper_fold};
  }
  auto gap = [&](double b) {
    return h_branch_inverse(n, b, HBranch::Upper) + dip -
           h_branch_inverse(n, b, HBranch::Middle);
  };
  const double span = r.b_max_middle - r.b_min_middle;
  const double lo = r.b_min_middle + 1e-9 * span;
  const double hi = r.b_max_middle - 1e-9 * span;
  if (gap(hi) < 0.0)
    throw HysteresisLossError(
        "seaice_xstar: oscillating upper branch dips below the unstable branch "
        "over the whole bistable range");
  if (gap(lo) > 0.0)
    throw HysteresisLossError(
        "seaice_xstar: no interior touching point above the fold");
  const double b_star = bisect(gap, lo, hi, 1e-12, 200);
  return {b_star, h_branch_inverse(n, b_star, HBranch::Upper)};
}

SeaIceAverages seaice_h_averages(const SeaIceNormalized& n, double b_star,
                                 double x_star) {
  SeaIceAverages av;
  av.b_star = b_star;
  av.x_star = x_star;
  const PeriodicSeries P = antiderivative_zero_mean(n.q);
  const double T = P.period();
  auto h0 = [&](double t) { return n.H(x_star + eval(P, t)); };
  auto h1 = [&](double t) { return n.H_d1(x_star + eval(P, t)); };
  auto h2 = [&](double t) { return 0.5 * n.H_d2(x_star + eval(P, t)); };
  av.H0_bar = simpson_period(h0, T, 4096);
  av.H1_bar = simpson_period(h1, T, 4096);
  av.H2_bar = simpson_period(h2, T, 4096);
  const double e0 = std::abs(av.H0_bar - simpson_period(h0, T, 2048));
  const double e1 = std::abs(av.H1_bar - simpson_period(h1, T, 2048));
  const double e2 = std::abs(av.H2_bar - simpson_period(h2, T, 2048));
  av.quadrature_error = std::max({e0, e1, e2});
  if (av.quadrature_error > 1e-7)
    throw RegimeError("seaice_h_averages: quadrature failed to converge");
  return av;
}

Prediction seaice_tipping(const SeaIceNormalized& n, double mu) {
  if (!(mu > 0.0)) throw PreconditionError("seaice_tipping: requires mu > 0");
  const auto [b_star, x_star] = seaice_xstar(n);
  const SeaIceAverages av = seaice_h_averages(n, b_star, x_star);
  if (!(av.H2_bar < 0.0))
    throw RegimeError("seaice_tipping: averaged quadratic coefficient not negative");
  const double b_q = av.H0_bar + av.H1_bar * av.H1_bar / (4.0 * std::abs(av.H2_bar));
  Prediction p;
  p.regime = Regime::Indeterminate;
  p.delay_component =
      mu_two_thirds(mu) * airy_first_zero() / std::cbrt(std::abs(av.H2_bar));
  p.shift_component = -b_q;
  p.value = p.delay_component + p.shift_component;
  p.mapped_value = n.dF0_from_b(p.value);
  return p;
}

Prediction seaice_tipping_averaged(const SeaIceNormalized& n, double mu) {
  Prediction p =
      quadratic_tipping(1.0, n.H(0.0), n.H_d1(0.0), 0.5 * n.H_d2(0.0), mu);
  p.mapped_value = n.dF0_from_b(p.value);
  return p;
}

std::pair<double, double> seaice_lower_touch(const SeaIceNormalized& n) {
  const HBranchRanges r = h_branch_ranges(n);
  const PeriodicSeries P = antiderivative_zero_mean(n.q);
  const double rise = max_over_period(P).second;  // >= 0
  if (rise < 1e-12) return {r.b_max_middle, r.x_lower_fold};
  auto margin = [&](double b) {
    return h_branch_inverse(n, b, HBranch::Middle) -
           (h_branch_inverse(n, b, HBranch::Lower) + rise);
  };
  const double span = r.b_max_middle - r.b_min_middle;
  const double lo = r.b_min_middle + 1e-9 * span;
  const double hi = r.b_max_middle - 1e-9 * span;
  if (margin(lo) < 0.0)
    throw HysteresisLossError(
        "seaice_lower_touch: oscillating lower branch reaches the unstable "
        "branch over the whole bistable range");
  if (margin(hi) > 0.0) return {r.b_max_middle, r.x_lower_fold};
  const double b_low = bisect(margin, lo, hi, 1e-12, 200);
  return {b_low, h_branch_inverse(n, b_low, HBranch::Lower)};
}

bool seaice_bistable(const SeaIceNormalized& n) {
  try {
    const double b_hi_end = seaice_xstar(n).first;
    const double b_lo_end = seaice_lower_touch(n).first;
    return b_hi_end < b_lo_end;
  } catch (const HysteresisLossError&) {
    return false;
  }
}

SeaIceParams scale_ft(const SeaIceParams& p, double factor) {
  SeaIceParams out = p;
  out.F_T.mean *= factor;
  for (double& c : out.F_T.cos_coeffs) c *= factor;
  for (double& c : out.F_T.sin_coeffs) c *= factor;
  return out;
}

SeaIceParams shift_ft_mean(const SeaIceParams& p, double delta) {
  SeaIceParams out = p;
  out.F_T.mean += delta;
  return out;
}

SeaIceParams scale_cml(const SeaIceParams& p, double factor) {
  SeaIceParams out = p;
  out.cml_Hml *= factor;
  return out;
}

SeaIceParams with_h_alpha(const SeaIceParams& p, double h_alpha) {
  SeaIceParams out = p;
  out.h_alpha = h_alpha;
  return out;
}

}  // namespace saddletip
