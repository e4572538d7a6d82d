#include "saddletip/sea_ice.hpp"

#include <algorithm>

#include "saddletip/rootfind.hpp"

namespace saddletip {

SeaIceParams SeaIceParams::defaults() {
  SeaIceParams p;
  // Synthetic seasonal profiles (monthly midpoints, January first).
  // Shapes follow the polar cycle: shortwave peaking in early summer and
  // vanishing through the dark months, longwave terms peaking in winter.
  const std::array<double, 12> fs = {0.0,   0.0,   10.0, 80.0, 215.0, 300.0,
                                     285.0, 170.0, 50.0, 0.0,  0.0,   0.0};
  const std::array<double, 12> f0 = {130.0, 128.0, 112.0, 80.0, 58.0,  54.0,
                                     54.0,  54.0,  56.0,  68.0, 102.0, 126.0};
  const std::array<double, 12> ft = {3.3, 3.25, 3.1, 2.9, 2.65, 2.52,
                                     2.5, 2.52, 2.65, 2.9, 3.1, 3.25};
  p.F_S = fit_from_monthly(fs, 1.0);
  p.F_0 = fit_from_monthly(f0, 1.0);
  p.F_T = fit_from_monthly(ft, 1.0);
  p.synthetic_forcing = true;
  return p;
}

SeaIceNormalized seaice_normalize(const SeaIceParams& p) {
  const double FS_mean = p.F_S.mean;
  const double F0_mean = p.F_0.mean;
  const double FT_mean = p.F_T.mean;
  const double La = p.L_i * p.h_alpha;
  const double half_sum = 0.5 * (p.alpha_ml + p.alpha_i);
  const double half_diff = 0.5 * (p.alpha_ml - p.alpha_i);  // negative

  // Averaged static balance Psi(E) = dE/dt - dF0 and its derivative.
  auto psi = [&](double E) {
    return (1.0 - half_sum - half_diff * std::tanh(E / La)) * FS_mean -
           F0_mean + p.F_B - FT_mean * E / p.cml_Hml;
  };
  auto dpsi = [&](double E) {
    const double c = std::cosh(E / La);
    return -half_diff * FS_mean / (La * c * c) - FT_mean / p.cml_Hml;
  };

  // Fold on E > 0 terminating the warm branch.
  const double E_hi = 40.0 * La;
  const auto brackets = scan_brackets(dpsi, 1e-6, E_hi, 2000);
  if (brackets.empty())
    throw HysteresisLossError(
        "seaice_normalize: averaged model has no fold for E > 0");
  auto d2psi = [&](double E) {
    const double u = E / La;
    const double c = std::cosh(u);
    return 2.0 * half_diff * FS_mean * std::tanh(u) / (La * La * c * c);
  };
  const double E_c =
      newton_in_bracket(dpsi, d2psi, brackets.back().lo, brackets.back().hi);

  SeaIceNormalized n;
  n.E_c = E_c;
  n.dF0_c = -psi(E_c);
  n.g3 = E_c / La;
  n.Omega = p.F_S.fundamental_frequency;
  n.mu = p.mu_tilde / E_c;

  // g1 gathers additive terms; g2 scales the albedo tanh; g4 scales x.
  n.G2 = -half_diff * FS_mean / E_c;
  n.G4 = -FT_mean / p.cml_Hml;
  n.G1 = ((1.0 - half_sum) * FS_mean - F0_mean + p.F_B + n.dF0_c) / E_c + n.G4;

  // Oscillating parts. g4 keeps its seasonal variation only in the
  // cross-validation model; in H it is replaced by its average.
  n.g4_t = combine_oscillations({{-1.0 / p.cml_Hml, &p.F_T}});
  n.g4_t.mean = n.G4;
  n.g4_t.fundamental_frequency = n.Omega;
  n.g1_t = combine_oscillations({{(1.0 - half_sum) / E_c, &p.F_S},
                                 {-1.0 / E_c, &p.F_0},
                                 {-1.0 / p.cml_Hml, &p.F_T}});
  n.g1_t.mean = n.G1;
  n.g1_t.fundamental_frequency = n.Omega;
  n.g2_t = combine_oscillations({{-half_diff / E_c, &p.F_S}});
  n.g2_t.mean = n.G2;
  n.g2_t.fundamental_frequency = n.Omega;

  // q = (g1 - G1) + (g2 - G2): zero mean by construction.
  n.q = combine_oscillations({{(1.0 - half_sum - half_diff) / E_c, &p.F_S},
                              {-1.0 / E_c, &p.F_0},
                              {-1.0 / p.cml_Hml, &p.F_T}});
  n.q.fundamental_frequency = n.Omega;
  return n;
}

HBranchRanges h_branch_ranges(const SeaIceNormalized& n) {
  // H'(x) = G2 g3 sech^2(g3(x+1)) + G4 = 0.
  if (n.G2 <= 0.0 || n.G4 >= 0.0 || n.G2 * n.g3 <= -n.G4)
    throw HysteresisLossError("h_branch_ranges: H is monotone, middle branch empty");
  const double s = std::sqrt(-n.G4 / (n.G2 * n.g3));  // sech of the critical point
  const double u = std::acosh(1.0 / s);
  HBranchRanges r;
  r.x_upper_fold = u / n.g3 - 1.0;
  r.x_lower_fold = -u / n.g3 - 1.0;
  r.b_min_middle = -n.H(r.x_upper_fold);
  r.b_max_middle = -n.H(r.x_lower_fold);
  return r;
}

double h_branch_inverse(const SeaIceNormalized& n, double b, HBranch branch) {
  const HBranchRanges r = h_branch_ranges(n);
  const double span = r.b_max_middle - r.b_min_middle;
  auto f = [&](double x) { return n.H(x) + b; };
  auto df = [&](double x) { return n.H_d1(x); };
  double lo = 0.0, hi = 0.0;
  switch (branch) {
    case HBranch::Upper: {
      if (b < r.b_min_middle - 1e-12)
        throw RegimeError("h_branch_inverse: b below the upper branch range");
      if (b - r.b_min_middle <= 1e-11 * span) return r.x_upper_fold;
      lo = r.x_upper_fold;
      hi = lo + 1.0;
      while (f(hi) > 0.0 && hi < 1e6) hi = lo + 2.0 * (hi - lo);  // H decreasing
      break;
    }
    case HBranch::Middle: {
      if (b <= r.b_min_middle - 1e-12 || b >= r.b_max_middle + 1e-12)
        throw RegimeError("h_branch_inverse: b outside the middle branch range");
      lo = r.x_lower_fold;
      hi = r.x_upper_fold;
      break;
    }
    case HBranch::Lower: {
      if (b > r.b_max_middle + 1e-12)
        throw RegimeError("h_branch_inverse: b above the lower branch range");
      if (r.b_max_middle - b <= 1e-11 * span) return r.x_lower_fold;
      hi = r.x_lower_fold;
      lo = hi - 1.0;
      while (f(lo) < 0.0 && lo > -1e6) lo = hi - 2.0 * (hi - lo);  // H increasing
      break;
    }
  }
  double x = newton_in_bracket(f, df, lo, hi, 1e-14, 80);
  return x;
}

}  // namespace saddletip
