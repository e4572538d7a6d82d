#include "saddletip/morris_lecar.hpp"

#include "saddletip/rootfind.hpp"

namespace saddletip {

namespace {
constexpr double kScanLo = -60.0;
constexpr double kScanHi = -10.0;
}  // namespace

State<2> ml_rest_state(const MLParams& p, double I) {
  // The resting branch is the lowest-v solution of static_current(v) = I.
  auto f = [&](double v) { return p.static_current(v) - I; };
  const auto brackets = scan_brackets(f, -80.0, kScanHi, 2000);
  if (brackets.empty())
    throw RegimeError("ml_rest_state: no equilibrium at this bias current");
  const double v = bisect(f, brackets.front().lo, brackets.front().hi, 1e-12);
  return {v, p.w_inf(v)};
}

MLNormalized ml_normalize(const MLParams& p) {
  auto dI = [&](double v) { return p.static_current_d1(v); };
  // The fold terminating the rest branch is the lowest-v sign change of
  // dI/dv in the scan window.
  const auto brackets = scan_brackets(dI, kScanLo, kScanHi, 2000);
  if (brackets.empty())
    throw RegimeError("ml_normalize: no fold of the static current curve in scan window");
  double v_c = newton_in_bracket(dI, [&](double v) { return p.static_current_d2(v); },
                                 brackets.front().lo, brackets.front().hi);

  MLNormalized n;
  n.v_c = v_c;
  n.I_c = p.static_current(v_c);
  n.gamma = p.gamma;
  n.g_k = p.g_k;
  n.D = 1.0 - p.v_k / v_c;

  // h(x) collects the Ca and leak pieces of the normalized voltage
  // equation; x-derivatives follow from d/dx = v_c d/dv.
  const double vc2 = v_c * v_c;
  const double h_v0 = -p.g_ca * p.m_inf(v_c) * (v_c - p.v_ca) -
                      p.g_l * (v_c - p.v_l) + n.I_c;
  const double h_v1 =
      -p.g_ca * (p.m_inf_d1(v_c) * (v_c - p.v_ca) + p.m_inf(v_c)) - p.g_l;
  const double h_v2 =
      -p.g_ca * (p.m_inf_d2(v_c) * (v_c - p.v_ca) + 2.0 * p.m_inf_d1(v_c));
  n.h0 = h_v0 / v_c;
  n.h1 = h_v1;            // (v_c/v_c) * dh/dv
  n.h2 = h_v2 * v_c / 2.0;  // Taylor coefficient of x^2

  n.w_inf0 = p.w_inf(v_c);
  n.w_inf1 = v_c * p.w_inf_d1(v_c);
  n.w_inf2 = vc2 * p.w_inf_d2(v_c);
  n.kappa0 = p.gamma * p.kappa(v_c);
  n.kappa1 = p.gamma * v_c * p.kappa_d1(v_c);
  n.kappa2 = p.gamma * vc2 * p.kappa_d2(v_c);

  n.k0 = n.h0 - n.g_k * n.D * n.w_inf0;
  n.k1 = n.h1 - n.g_k * (n.w_inf0 + n.D * n.w_inf1);
  n.k2 = n.h2 - n.g_k * (n.w_inf1 + n.D * n.w_inf2 / 2.0);
  return n;
}

}  // namespace saddletip
