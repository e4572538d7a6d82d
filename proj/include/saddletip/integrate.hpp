#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "saddletip/errors.hpp"
#include "saddletip/rng.hpp"

namespace saddletip {

template <std::size_t N>
using State = std::array<double, N>;

struct ThresholdEvent {
  int component;   // index into the state vector
  double level;
  int direction;   // +1 crossing upward, -1 crossing downward
};

struct StopSpec {
  double t_max = 0.0;
  double state_floor = -1e6;    // divergence guards, applied per component
  double state_ceiling = 1e6;
  std::vector<ThresholdEvent> events;  // integration halts on first hit
  int record_stride = 1;        // sample every k-th step
};

enum class StopReason { TimeLimit, Event, Guard };

template <std::size_t N>
struct Trajectory {
  std::vector<double> times;
  std::vector<State<N>> states;
  std::vector<double> drift;   // the slowly varying parameter, sampled alongside
  StopReason reason = StopReason::TimeLimit;
  int event_index = -1;
  double dt = 0.0;
};

// Step-size rule resolving both the forcing period and the mu^(1/3) layer.
inline double default_dt(double mu, double omega) {
  double dt = 0.01;
  if (omega > 0.0) dt = std::min(dt, 0.01 * 6.28318530717958647692 / omega);
  if (mu > 0.0) dt = std::min(dt, 0.01 / std::cbrt(mu));
  return dt;
}

namespace detail {

template <std::size_t N>
bool finite(const State<N>& y, double p) {
  for (double v : y)
    if (!std::isfinite(v)) return false;
  return std::isfinite(p);
}

template <std::size_t N>
bool guarded(const State<N>& y, const StopSpec& stop) {
  for (double v : y)
    if (v <= stop.state_floor || v >= stop.state_ceiling) return true;
  return false;
}

template <std::size_t N>
int event_hit(const State<N>& prev, const State<N>& cur,
              const StopSpec& stop) {
  for (std::size_t i = 0; i < stop.events.size(); ++i) {
    const ThresholdEvent& e = stop.events[i];
    const double a = prev[e.component], b = cur[e.component];
    if (e.direction >= 0 && a < e.level && b >= e.level) return static_cast<int>(i);
    if (e.direction <= 0 && a > e.level && b <= e.level) return static_cast<int>(i);
  }
  return -1;
}

// Shared stepping loop; `step` advances (y, p) over one dt.
template <std::size_t N, typename StepFn>
Trajectory<N> run(StepFn step, State<N> y, double p, double t0,
                  const StopSpec& stop, double dt) {
  if (dt <= 0.0) throw PreconditionError("integrate: dt must be positive");
  if (stop.t_max <= 0.0) throw PreconditionError("integrate: t_max must be positive");
  Trajectory<N> traj;
  traj.dt = dt;
  const std::int64_t n_steps =
      static_cast<std::int64_t>(std::ceil(stop.t_max / dt - 1e-9));
  const int stride = std::max(1, stop.record_stride);
  traj.times.reserve(static_cast<std::size_t>(n_steps / stride) + 2);
  traj.states.reserve(traj.times.capacity());
  traj.drift.reserve(traj.times.capacity());
  auto record = [&](double t, const State<N>& s, double d) {
    traj.times.push_back(t);
    traj.states.push_back(s);
    traj.drift.push_back(d);
  };
  record(t0, y, p);
  for (std::int64_t n = 1; n <= n_steps; ++n) {
    const State<N> y_prev = y;
    const double p_prev = p;
    const double t_prev = t0 + (n - 1) * dt;
    step(t_prev, y, p);
    const double t = t0 + n * dt;
    if (!finite(y, p))
      throw DivergenceError("integrate: non-finite state", t_prev, p_prev);
    const int ev = event_hit(y_prev, y, stop);
    const bool guard = guarded(y, stop);
    if (ev >= 0 || guard || n == n_steps || n % stride == 0) {
      if (traj.times.back() != t_prev && (ev >= 0 || guard))
        record(t_prev, y_prev, p_prev);  // keep the bracketing sample
      record(t, y, p);
    }
    if (ev >= 0) {
      traj.reason = StopReason::Event;
      traj.event_index = ev;
      return traj;
    }
    if (guard) {
      traj.reason = StopReason::Guard;
      return traj;
    }
  }
  traj.reason = StopReason::TimeLimit;
  return traj;
}

}  // namespace detail

// Explicit midpoint method. Rhs: (t, state, drift, dstate&, ddrift&).
template <std::size_t N, typename Rhs>
Trajectory<N> rk2_integrate(Rhs rhs, State<N> y0, double p0, double t0,
                            const StopSpec& stop, double dt) {
  auto step = [&rhs, dt](double t, State<N>& y, double& p) {
    State<N> k1{}, k2{}, ym{};
    double q1 = 0.0, q2 = 0.0;
    rhs(t, y, p, k1, q1);
    for (std::size_t i = 0; i < N; ++i) ym[i] = y[i] + 0.5 * dt * k1[i];
    const double pm = p + 0.5 * dt * q1;
    rhs(t + 0.5 * dt, ym, pm, k2, q2);
    for (std::size_t i = 0; i < N; ++i) y[i] += dt * k2[i];
    p += dt * q2;
  };
  return detail::run<N>(step, y0, p0, t0, stop, dt);
}

// Classical fourth-order Runge-Kutta.
template <std::size_t N, typename Rhs>
Trajectory<N> rk4_integrate(Rhs rhs, State<N> y0, double p0, double t0,
                            const StopSpec& stop, double dt) {
  auto step = [&rhs, dt](double t, State<N>& y, double& p) {
    State<N> k1{}, k2{}, k3{}, k4{}, tmp{};
    double q1 = 0.0, q2 = 0.0, q3 = 0.0, q4 = 0.0;
    rhs(t, y, p, k1, q1);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
    rhs(t + 0.5 * dt, tmp, p + 0.5 * dt * q1, k2, q2);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
    rhs(t + 0.5 * dt, tmp, p + 0.5 * dt * q2, k3, q3);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + dt * k3[i];
    rhs(t + dt, tmp, p + dt * q3, k4, q4);
    for (std::size_t i = 0; i < N; ++i)
      y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    p += dt / 6.0 * (q1 + 2.0 * q2 + 2.0 * q3 + q4);
  };
  return detail::run<N>(step, y0, p0, t0, stop, dt);
}

// Euler-Maruyama with additive noise eps dW on state component 0.
// One stream per (seed, stream): sample paths are reproducible and
// independent of scheduling.
template <std::size_t N, typename Rhs>
Trajectory<N> euler_maruyama(Rhs rhs, double eps, State<N> y0, double p0,
                             double t0, const StopSpec& stop, double dt,
                             std::uint64_t seed, std::uint64_t stream = 0) {
  if (eps < 0.0) throw PreconditionError("euler_maruyama: eps must be >= 0");
  CounterRng rng(seed, stream);
  const double sq = std::sqrt(dt);
  auto step = [&rhs, &rng, eps, sq, dt](double t, State<N>& y, double& p) {
    State<N> k{};
    double q = 0.0;
    rhs(t, y, p, k, q);
    for (std::size_t i = 0; i < N; ++i) y[i] += dt * k[i];
    if (eps > 0.0) y[0] += eps * sq * rng.normal();
    p += dt * q;
  };
  return detail::run<N>(step, y0, p0, t0, stop, dt);
}

struct Crossing {
  double t;            // interpolated crossing time
  double drift_param;  // drift parameter interpolated at the crossing
  std::size_t index;   // index of the sample just after the crossing
};

// First crossing of `level` on `component`, located by linear interpolation
// between the bracketing samples.
template <std::size_t N>
std::optional<Crossing> find_threshold_crossing(const Trajectory<N>& traj,
                                                int component, double level,
                                                int direction,
                                                std::size_t begin = 1) {
  for (std::size_t i = std::max<std::size_t>(begin, 1); i < traj.times.size();
       ++i) {
    const double a = traj.states[i - 1][component];
    const double b = traj.states[i][component];
    const bool up = direction >= 0 && a < level && b >= level;
    const bool down = direction <= 0 && a > level && b <= level;
    if (!up && !down) continue;
    const double f = (b == a) ? 0.0 : (level - a) / (b - a);
    const double t = traj.times[i - 1] + f * (traj.times[i] - traj.times[i - 1]);
    const double d =
        traj.drift[i - 1] + f * (traj.drift[i] - traj.drift[i - 1]);
    return Crossing{t, d, i};
  }
  return std::nullopt;
}

}  // namespace saddletip
