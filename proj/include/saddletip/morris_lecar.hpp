#pragma once

#include <cmath>

#include "saddletip/errors.hpp"
#include "saddletip/integrate.hpp"

namespace saddletip {

// Two-dimensional Morris-Lecar membrane model with a slowly ramped bias
// current and an additive periodic input current.
//   gamma dv/dt = -gCa m_inf(v)(v-vCa) - gK (v-vK) w - gL (v-vL)
//                 + I_bias + A_hat sin(Omega_hat t)
//   dw/dt       = kappa(v) (w_inf(v) - w)
//   dI_bias/dt  = mu_hat
struct MLParams {
  double g_ca = 4.4;    // mS/cm^2
  double g_k = 8.0;
  double g_l = 2.0;
  double v_ca = 120.0;  // mV
  double v_k = -84.0;
  double v_l = -60.0;
  double v1 = 1.2;      // mV, gating midpoint/width constants
  double v2 = 18.0;
  double v3 = 12.0;
  double v4 = 17.4;
  double phi = 1.0 / 15.0;  // 1/ms
  double gamma = 20.0;      // uF/cm^2
  double mu_hat = 0.0;      // uA/cm^2 per ms
  double A_hat = 0.0;       // uA/cm^2
  double Omega_hat = 1.0;   // rad/ms
  double I0 = 30.0;         // initial bias current

  double m_inf(double v) const { return 0.5 * (1.0 + std::tanh((v - v1) / v2)); }
  double w_inf(double v) const { return 0.5 * (1.0 + std::tanh((v - v3) / v4)); }
  double kappa(double v) const { return phi * std::cosh((v - v3) / (2.0 * v4)); }

  double m_inf_d1(double v) const {
    const double c = std::cosh((v - v1) / v2);
    return 1.0 / (2.0 * v2 * c * c);
  }
  double m_inf_d2(double v) const {
    const double u = (v - v1) / v2;
    const double c = std::cosh(u);
    return -std::tanh(u) / (v2 * v2 * c * c);
  }
  double w_inf_d1(double v) const {
    const double c = std::cosh((v - v3) / v4);
    return 1.0 / (2.0 * v4 * c * c);
  }
  double w_inf_d2(double v) const {
    const double u = (v - v3) / v4;
    const double c = std::cosh(u);
    return -std::tanh(u) / (v4 * v4 * c * c);
  }
  double kappa_d1(double v) const {
    return phi * std::sinh((v - v3) / (2.0 * v4)) / (2.0 * v4);
  }
  double kappa_d2(double v) const {
    return phi * std::cosh((v - v3) / (2.0 * v4)) / (4.0 * v4 * v4);
  }

  // Static current balance along w = w_inf(v).
  double static_current(double v) const {
    return g_ca * m_inf(v) * (v - v_ca) + g_k * w_inf(v) * (v - v_k) +
           g_l * (v - v_l);
  }
  double static_current_d1(double v) const {
    return g_ca * (m_inf_d1(v) * (v - v_ca) + m_inf(v)) +
           g_k * (w_inf_d1(v) * (v - v_k) + w_inf(v)) + g_l;
  }
  double static_current_d2(double v) const {
    return g_ca * (m_inf_d2(v) * (v - v_ca) + 2.0 * m_inf_d1(v)) +
           g_k * (w_inf_d2(v) * (v - v_k) + 2.0 * w_inf_d1(v));
  }
};

// State layout: y[0] = v, y[1] = w; drift parameter = I_bias.
inline void ml_rhs(double t, const State<2>& y, double I_bias, State<2>& dy,
                   double& dI, const MLParams& p) {
  const double v = y[0], w = y[1];
  const double I_ext = p.A_hat * std::sin(p.Omega_hat * t);
  dy[0] = (-p.g_ca * p.m_inf(v) * (v - p.v_ca) - p.g_k * (v - p.v_k) * w -
           p.g_l * (v - p.v_l) + I_bias + I_ext) /
          p.gamma;
  dy[1] = p.kappa(v) * (p.w_inf(v) - w);
  dI = p.mu_hat;
}

// Resting equilibrium (v, w_inf(v)) with static_current(v) = I, on the
// branch below the fold.
State<2> ml_rest_state(const MLParams& p, double I);

inline Trajectory<2> simulate_ml(const MLParams& p, const StopSpec& stop,
                                 double dt) {
  // Start on the resting branch at I0.
  auto rhs = [&p](double t, const State<2>& y, double I, State<2>& dy,
                  double& dI) { ml_rhs(t, y, I, dy, dI, p); };
  return rk4_integrate<2>(rhs, ml_rest_state(p, p.I0), p.I0, 0.0, stop, dt);
}

// Normalization of the model about its fold (v_c, I_c):
//   x = (v - v_c)/v_c, b = (I_bias - I_c)/v_c, t = t_hat/gamma,
//   Omega = gamma Omega_hat, A = A_hat/v_c, mu = gamma mu_hat / |v_c|.
struct MLNormalized {
  double v_c = 0.0;
  double I_c = 0.0;
  double gamma = 20.0;
  double D = 0.0;  // 1 - vK/vc, coefficient of w in the normalized voltage eq

  // Taylor data at x = 0 of the normalized pieces.
  double h0 = 0.0, h1 = 0.0, h2 = 0.0;
  double w_inf0 = 0.0, w_inf1 = 0.0, w_inf2 = 0.0;  // value, d/dx, d2/dx2
  double kappa0 = 0.0, kappa1 = 0.0, kappa2 = 0.0;
  double g_k = 8.0;

  // Quadratic reduction of the static balance; k0 and k1 vanish because
  // the fold is mapped to the origin.
  double k0 = 0.0, k1 = 0.0, k2 = 0.0;

  double mu_from_hat(double mu_hat) const { return gamma * mu_hat / std::abs(v_c); }
  double mu_to_hat(double mu) const { return mu * std::abs(v_c) / gamma; }
  double amp_from_hat(double A_hat) const { return A_hat / v_c; }
  double amp_to_hat(double A) const { return A * v_c; }
  double omega_from_hat(double Omega_hat) const { return gamma * Omega_hat; }
  double omega_to_hat(double Omega) const { return Omega / gamma; }
  double bias_from_b(double b) const { return I_c + b * v_c; }
  double b_from_bias(double I) const { return (I - I_c) / v_c; }
};

// Locates the fold of the static current curve (dI/dv = 0 scan + bisection
// over [-60, -10] mV, Newton polish) and assembles the normalized Taylor
// data. Throws RegimeError if no fold is found in the window.
MLNormalized ml_normalize(const MLParams& p);

}  // namespace saddletip
