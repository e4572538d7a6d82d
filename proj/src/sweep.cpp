#include "saddletip/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "saddletip/airy.hpp"
#include "saddletip/asymptotics.hpp"
#include "saddletip/version.hpp"

namespace saddletip {

namespace {

constexpr double kPi = 3.14159265358979323846;

Prediction fallback_delayed(double mu, const char* note) {
  Prediction p = delayed_tipping(mu);
  p.notes.push_back(note);
  return p;
}

// Low-frequency composite: descend through the dips of f, skipping every
// tangency window whose critical amplitude exceeds A (the trajectory stays
// concave up there and survives one more forcing period).
Prediction lf_composite(double mu, double A, double c, double a0) {
  if (A == 0.0) {
    Prediction p = delayed_tipping(mu);
    p.regime = Regime::LowFreqOrderMu;
    return p;
  }
  const double Omega = c * mu;
  const auto criticals = lf_critical_amplitudes(mu, Omega, a0, 40);
  double a_top = a0;
  const double skip = kPi / (2.0 * c);
  for (int hop = 0; hop < static_cast<int>(criticals.size()) + 2; ++hop) {
    double a_r;
    try {
      a_r = lf_first_root(A, c, a0, a_top);
    } catch (const PreconditionError&) {
      return fallback_delayed(mu, "no admissible starting level; delayed law used");
    } catch (const RegimeError&) {
      return fallback_delayed(mu, "no forcing root; delayed law used");
    }
    // Tangency window governing this dip, if any.
    const CriticalAmplitude* gov = nullptr;
    for (const auto& ca : criticals) {
      if (ca.a_star <= a_r + 1e-9 && a_r - ca.a_star < skip) {
        gov = &ca;
        break;
      }
    }
    if (gov != nullptr && A < gov->A_c) {
      const double next_top = gov->a_star - skip;
      if (next_top <= -2.0 * std::abs(A))
        return fallback_delayed(mu, "all dips survived; delayed law used");
      a_top = next_top;
      continue;
    }
    const double fp = lf_f_prime(a_r, A, c, a0);
    Prediction p;
    p.regime = Regime::LowFreqOrderMu;
    p.shift_component = a_r;
    if (fp > 0.1) {
      p.delay_component = mu_two_thirds(mu) * airy_first_zero() / std::cbrt(fp);
    } else {
      p.delay_component = 0.0;
      p.notes.push_back("f'(a_r) marginal at the tipping root; delay term dropped");
    }
    p.value = p.shift_component + p.delay_component;
    return p;
  }
  return fallback_delayed(mu, "dip walk exhausted; delayed law used");
}

// mu << Omega: pick the first concavity pair (largest a_min) whose
// critical amplitude is exceeded, and place the tipping at the matching
// local minimum of f for this amplitude.
Prediction nu_composite(double mu, double A, double Omega, double a0) {
  const auto pairs = lf_nu_critical(mu, Omega, a0, 120);
  const double r = mu / Omega;
  for (const auto& ca : pairs) {
    if (A >= ca.A_c && A > r) {
      Prediction p;
      p.regime = Regime::LowFreqNu;
      p.shift_component =
          a0 + r * (std::acos(r / A) - 2.0 * kPi * ca.k.value_or(0));
      p.delay_component = 0.0;
      p.value = p.shift_component;
      p.notes.push_back("concavity-pair location; jump at A_c = " +
                        std::to_string(ca.A_c));
      return p;
    }
  }
  // Below every critical amplitude: fall back to the slope-root law.
  try {
    Prediction p = lf_tipping(mu, A, Omega / mu, a0);
    p.regime = Regime::LowFreqNu;
    return p;
  } catch (const std::exception&) {
    Prediction p = fallback_delayed(mu, "below all critical amplitudes; delayed law used");
    p.regime = Regime::LowFreqNu;
    return p;
  }
}

}  // namespace

Prediction predict_canonical(const CanonicalParams& p) {
  const RegimeClassification rc = classify_regime(p);
  switch (rc.regime) {
    case Regime::HighFrequency:
      return hf_tipping(p.mu, p.A, p.Omega);
    case Regime::LowFreqOrderMu:
      return lf_composite(p.mu, p.A, rc.c, p.a0);
    case Regime::LowFreqNu:
      return nu_composite(p.mu, p.A, p.Omega, p.a0);
    case Regime::RescaledLowFrequency: {
      const RescaledParams r = rescale_large_amplitude(p);
      Prediction q = nu_composite(r.M, 1.0, r.omega, r.h0);
      q.value *= p.A;
      q.delay_component *= p.A;
      q.shift_component *= p.A;
      q.regime = Regime::RescaledLowFrequency;
      q.notes.push_back("computed in the unit-amplitude rescaled system");
      return q;
    }
    case Regime::Indeterminate:
    default: {
      // Best effort: O(1) frequencies are handled by the concavity pairs,
      // genuinely fast forcing by the high-frequency law.
      if (p.Omega <= 2.0) {
        Prediction q = (rc.c <= rc.c_max_order_one)
                           ? lf_composite(p.mu, p.A, rc.c, p.a0)
                           : nu_composite(p.mu, p.A, p.Omega, p.a0);
        q.notes.push_back("regime indeterminate; low-frequency analysis applied");
        return q;
      }
      Prediction q = hf_tipping(p.mu, p.A, p.Omega);
      q.notes.push_back("regime indeterminate; high-frequency law applied");
      return q;
    }
  }
}

Prediction predict_ml(const MLNormalized& n, double mu, double A, double Omega,
                      double b0) {
  if (Omega > 1.0) return ml_hf_tipping(n, A, Omega, mu);
  // Low frequency: same dip walk as the canonical composite, with the
  // |k2| factor in the delay term.
  const double C = Omega / mu;
  if (A == 0.0) return ml_unforced_tipping(n, mu);
  std::vector<std::string> regime_notes;
  if (C < 0.05 || C > 3.0)
    regime_notes.push_back(
        "c = Omega/mu far from O(1); the critical-amplitude analysis may not apply");
  const auto criticals = ml_lf_critical(n, mu, Omega, b0, 40);
  const double skip = kPi / (2.0 * C);
  double b_top = b0;
  for (int hop = 0; hop < static_cast<int>(criticals.size()) + 2; ++hop) {
    double b_r;
    try {
      b_r = lf_first_root(A, C, b0, b_top);
    } catch (const std::exception&) {
      Prediction p = ml_unforced_tipping(n, mu);
      p.notes.push_back("no forcing root; unforced delayed law used");
      return p;
    }
    const CriticalAmplitude* gov = nullptr;
    for (const auto& ca : criticals) {
      if (ca.a_star <= b_r + 1e-9 && b_r - ca.a_star < skip) {
        gov = &ca;
        break;
      }
    }
    if (gov != nullptr && A < gov->A_c) {
      b_top = gov->a_star - skip;
      if (b_top <= -2.0 * std::abs(A)) break;
      continue;
    }
    const double fp = lf_f_prime(b_r, A, C, b0);
    Prediction p;
    p.regime = Regime::LowFreqOrderMu;
    p.notes = regime_notes;
    p.shift_component = b_r;
    p.delay_component = (fp > 0.1)
                            ? mu_two_thirds(mu) * airy_first_zero() /
                                  std::cbrt(fp * std::abs(n.k2))
                            : 0.0;
    if (fp <= 0.1)
      p.notes.push_back("F'(b_r) marginal at the tipping root; delay term dropped");
    p.value = p.shift_component + p.delay_component;
    p.mapped_value = n.bias_from_b(p.value);
    return p;
  }
  Prediction p = ml_unforced_tipping(n, mu);
  p.notes.push_back("dip walk exhausted; unforced delayed law used");
  return p;
}

std::optional<TippingEvent> simulate_canonical_tipping(const CanonicalParams& p,
                                                       double dt,
                                                       double a_stop) {
  if (dt <= 0.0) dt = default_dt(p.mu, p.Omega);
  if (a_stop == 0.0)
    a_stop = -std::max(1.0, 8.0 * 2.34 * mu_two_thirds(p.mu)) - p.A / std::max(1.0, p.Omega);
  StopSpec stop;
  stop.t_max = (p.a0 - a_stop) / p.mu;
  stop.events = {{0, kCanonicalTipLevel, -1}};
  stop.record_stride = 1024;
  const Trajectory<1> traj = simulate_canonical(p, stop, dt);
  return detect_tipping_canonical(traj);
}

std::optional<TippingEvent> simulate_ml_tipping(const MLParams& phys,
                                                const MLNormalized& n,
                                                double mu, double A,
                                                double Omega, double b0,
                                                double dt_hat, double b_stop) {
  MLParams p = phys;
  p.mu_hat = n.mu_to_hat(mu);
  p.A_hat = n.amp_to_hat(A);
  p.Omega_hat = n.omega_to_hat(Omega);
  p.I0 = n.bias_from_b(b0);
  if (dt_hat <= 0.0) {
    dt_hat = std::min(0.05, 0.01 * 2.0 * kPi / std::max(p.Omega_hat, 1e-9));
    dt_hat = std::min(dt_hat, 0.05 / std::max(p.kappa(n.v_c), 1e-9));
  }
  if (b_stop == 0.0) b_stop = -std::max(0.3, 8.0 * 2.34 * mu_two_thirds(mu));
  StopSpec stop;
  stop.t_max = n.gamma * (b0 - b_stop) / mu;
  stop.events = {{0, std::abs(n.v_c), +1}};
  stop.state_floor = -200.0;  // membrane voltages live well inside this
  stop.state_ceiling = 200.0;
  stop.record_stride = 1024;
  const Trajectory<2> traj = simulate_ml(p, stop, dt_hat);
  return detect_tipping_ml(traj, n.v_c);
}

std::optional<TippingEvent> simulate_seaice_tipping(const SeaIceParams& p,
                                                    const SeaIceNormalized& n,
                                                    double b0, double x_floor,
                                                    double dt) {
  if (dt <= 0.0) dt = default_dt(n.mu, n.Omega);
  const double x0 = h_branch_inverse(n, b0, HBranch::Upper);
  StopSpec stop;
  stop.t_max = (b0 + 1.0) / n.mu;
  stop.events = {{0, n.E_from_x(x_floor), -1}};
  stop.state_floor = -1e4;
  stop.state_ceiling = 1e4;
  stop.record_stride = 16;
  auto rhs = [&p](double t, const State<1>& y, double dF0, State<1>& dy,
                  double& dd) { seaice_rhs_full(t, y, dF0, dy, dd, p); };
  const Trajectory<1> traj =
      rk2_integrate<1>(rhs, {n.E_from_x(x0)}, n.dF0_from_b(b0), 0.0, stop, dt);
  auto ev = find_threshold_crossing(traj, 0, n.E_from_x(x_floor), -1);
  if (!ev) return std::nullopt;
  return TippingEvent{ev->t, ev->drift_param, n.E_from_x(x_floor), ev->index};
}

std::optional<TippingEvent> simulate_seaice_normalized(
    const SeaIceNormalized& n, SeaIceVariant variant, double b0,
    double x_floor, double dt) {
  if (dt <= 0.0) dt = default_dt(n.mu, n.Omega);
  const double x0 = h_branch_inverse(n, b0, HBranch::Upper);
  StopSpec stop;
  stop.t_max = (b0 + 1.0) / n.mu;
  stop.events = {{0, x_floor, -1}};
  stop.state_floor = -1e4;
  stop.state_ceiling = 1e4;
  stop.record_stride = 16;
  auto rhs = [&n, variant](double t, const State<1>& y, double b, State<1>& dy,
                           double& db) {
    switch (variant) {
      case SeaIceVariant::Additive:
        seaice_rhs_h(t, y, b, dy, db, n);
        break;
      case SeaIceVariant::Multiplicative:
        seaice_rhs_toy(t, y, b, dy, db, n);
        break;
      case SeaIceVariant::Averaged:
        dy[0] = b + n.H(y[0]);
        db = -n.mu;
        break;
    }
  };
  const Trajectory<1> traj = rk2_integrate<1>(rhs, {x0}, b0, 0.0, stop, dt);
  return detect_tipping_seaice(traj, x_floor, -0.5);
}

namespace {

ComparisonRow sweep_row(const SweepSpec& spec, double value) {
  ComparisonRow row;
  row.swept_value = value;
  try {
    std::optional<Prediction> pred;
    std::optional<double> sim;
    if (spec.model == "canonical") {
      CanonicalParams p = spec.canonical;
      if (spec.parameter == "A") {
        p.A = value;
      } else if (spec.parameter == "lambda") {
        p.Omega = std::pow(p.mu, -value);
      } else if (spec.parameter == "mu") {
        p.mu = value;
      } else if (spec.parameter == "Omega") {
        p.Omega = value;
      } else {
        throw PreconditionError("unknown canonical sweep parameter: " + spec.parameter);
      }
      p.x0 = std::sqrt(p.a0);
      if (spec.predict) pred = predict_canonical(p);
      if (spec.simulate) {
        auto ev = simulate_canonical_tipping(p, spec.dt);
        if (ev) sim = ev->param_at_tip;
      }
    } else if (spec.model == "ml") {
      const MLNormalized n = ml_normalize(spec.ml);
      double mu = n.mu_from_hat(spec.ml.mu_hat);
      double A = spec.ml_A;
      double Omega = spec.ml_Omega;
      if (spec.parameter == "lambda") {
        Omega = std::pow(mu, -value);
      } else if (spec.parameter == "A_hat") {
        A = n.amp_from_hat(value);
      } else if (spec.parameter == "mu_hat") {
        mu = n.mu_from_hat(value);
      } else {
        throw PreconditionError("unknown ml sweep parameter: " + spec.parameter);
      }
      if (spec.predict) {
        Prediction q = predict_ml(n, mu, A, Omega, spec.ml_b0);
        q.value = q.mapped_value.value_or(q.value);  // report rows in I_bias
        pred = q;
      }
      if (spec.simulate) {
        auto ev = simulate_ml_tipping(spec.ml, n, mu, A, Omega, spec.ml_b0, spec.dt);
        if (ev) sim = ev->param_at_tip;
      }
    } else if (spec.model == "seaice") {
      SeaIceParams p = spec.seaice;
      if (spec.parameter == "ft_amplitude_factor") {
        p = scale_ft(p, value);
      } else if (spec.parameter == "ft_mean_shift") {
        p = shift_ft_mean(p, value);
      } else if (spec.parameter == "cml_factor") {
        p = scale_cml(p, value);
      } else if (spec.parameter == "h_alpha") {
        p = with_h_alpha(p, value);
      } else if (spec.parameter == "mu_tilde") {
        p.mu_tilde = value;
      } else {
        throw PreconditionError("unknown seaice sweep parameter: " + spec.parameter);
      }
      const SeaIceNormalized n = seaice_normalize(p);
      if (spec.predict) {
        if (!seaice_bistable(n)) {
          row.warnings.push_back(
              "hysteresis-loss: oscillating branches no longer overlap; "
              "analytic tipping withheld");
        } else {
          try {
            Prediction q = seaice_tipping(n, n.mu);
            q.value = q.mapped_value.value_or(q.value);  // rows in dF0
            pred = q;
          } catch (const HysteresisLossError& e) {
            row.warnings.push_back(std::string("hysteresis-loss: ") + e.what());
          }
        }
      }
      if (spec.simulate) {
        auto ev = simulate_seaice_tipping(p, n, spec.seaice_b0,
                                          spec.seaice_x_floor, spec.dt);
        if (ev) sim = ev->param_at_tip;
      }
    } else {
      throw PreconditionError("unknown sweep model: " + spec.model);
    }
    if (pred) {
      row.predicted = pred->value;
      row.delay_component = pred->delay_component;
      row.shift_component = pred->shift_component;
      row.regime = to_string(pred->regime);
      for (const auto& w : pred->notes) row.warnings.push_back(w);
    }
    row.simulated = sim;
    if (row.predicted && row.simulated) {
      row.abs_error = std::abs(*row.predicted - *row.simulated);
      const double scale = std::abs(*row.simulated);
      if (scale > 0.0) row.rel_error = *row.abs_error / scale;
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

std::vector<JumpLocation> detect_jumps(const std::vector<ComparisonRow>& rows) {
  std::vector<double> gaps;
  std::vector<std::pair<std::size_t, double>> adjacent;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!rows[i - 1].simulated || !rows[i].simulated) continue;
    const double g = std::abs(*rows[i].simulated - *rows[i - 1].simulated);
    adjacent.push_back({i, g});
    gaps.push_back(g);
  }
  if (gaps.size() < 4) return {};
  std::vector<double> sorted = gaps;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[sorted.size() / 2];
  std::vector<JumpLocation> jumps;
  for (const auto& [i, g] : adjacent) {
    if (g > 5.0 * median && g > 1e-12)
      jumps.push_back({rows[i - 1].swept_value, rows[i].swept_value, g});
  }
  return jumps;
}

void run_rows(const SweepSpec& spec, const std::vector<double>& values,
              std::vector<ComparisonRow>& out) {
  out.resize(values.size());
  unsigned workers = spec.max_workers > 0
                         ? static_cast<unsigned>(spec.max_workers)
                         : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(values.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < values.size(); ++i)
      out[i] = sweep_row(spec, values[i]);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= values.size()) return;
      out[i] = sweep_row(spec, values[i]);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string spec_fingerprint(const SweepSpec& spec) {
  std::ostringstream os;
  os.precision(17);
  os << spec.model << '|' << spec.parameter << '|' << spec.seed << '|'
     << spec.predict << spec.simulate << '|' << spec.dt << '|' << spec.ml_b0
     << '|' << spec.ml_A << '|' << spec.ml_Omega << '|' << spec.seaice_b0
     << '|' << spec.canonical.mu << ',' << spec.canonical.A << ','
     << spec.canonical.Omega << ',' << spec.canonical.a0;
  for (double g : spec.grid) os << ';' << g;
  std::ostringstream hex;
  hex << std::hex << fnv1a(os.str());
  return hex.str();
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
  if (spec.grid.empty())
    throw PreconditionError("run_sweep: empty grid");
  for (std::size_t i = 1; i < spec.grid.size(); ++i)
    if (!(spec.grid[i] > spec.grid[i - 1]))
      throw PreconditionError("run_sweep: grid must be strictly increasing");

  SweepResult result;
  result.spec = spec;
  result.config_hash = spec_fingerprint(spec);
  result.rng_algorithm = CounterRng::kAlgorithm;
  result.version = kVersion;
  run_rows(spec, spec.grid, result.rows);

  // One recursive bisection level per detected jump localizes the
  // critical value without rerunning the whole grid.
  for (int level = 0; level < spec.refine_levels; ++level) {
    const auto jumps = detect_jumps(result.rows);
    std::vector<double> mids;
    for (const auto& j : jumps) mids.push_back(0.5 * (j.left + j.right));
    if (mids.empty()) break;
    std::vector<ComparisonRow> extra;
    run_rows(spec, mids, extra);
    for (auto& row : extra) {
      row.refined = true;
      auto at = std::upper_bound(
          result.rows.begin(), result.rows.end(), row.swept_value,
          [](double v, const ComparisonRow& r) { return v < r.swept_value; });
      result.rows.insert(at, row);
    }
  }
  return result;
}

CompareReport compare_report(const std::vector<ComparisonRow>& rows) {
  if (rows.empty()) throw PreconditionError("compare_report: empty table");
  CompareReport rep;
  std::vector<std::pair<std::string, double>> errs;
  for (const auto& row : rows) {
    rep.warning_count += static_cast<int>(row.warnings.size());
    if (!row.error.empty()) ++rep.rows_with_error;
    if (row.rel_error) errs.push_back({row.regime, *row.rel_error});
  }
  std::vector<std::string> regimes;
  for (const auto& [r, e] : errs)
    if (std::find(regimes.begin(), regimes.end(), r) == regimes.end())
      regimes.push_back(r);
  for (const auto& r : regimes) {
    std::vector<double> v;
    for (const auto& [rr, e] : errs)
      if (rr == r) v.push_back(e);
    std::sort(v.begin(), v.end());
    RegimeStats st;
    st.regime = r;
    st.count = static_cast<int>(v.size());
    st.max_rel_error = v.back();
    st.median_rel_error = v[v.size() / 2];
    rep.per_regime.push_back(st);
  }
  rep.jumps = detect_jumps(rows);
  return rep;
}

std::string sweep_to_csv(const SweepResult& result) {
  std::ostringstream os;
  os.precision(12);
  os << "# model: " << result.spec.model << "\n";
  os << "# parameter: " << result.spec.parameter << "\n";
  os << "# seed: " << result.spec.seed << "\n";
  os << "# config_hash: " << result.config_hash << "\n";
  os << "# rng: " << result.rng_algorithm << "\n";
  os << "# version: " << result.version << "\n";
  os << "swept_value,simulated,predicted,delay_component,shift_component,"
        "abs_error,rel_error,regime,refined,warnings,error\n";
  auto opt = [](const std::optional<double>& v) {
    if (!v) return std::string();
    std::ostringstream o;
    o.precision(12);
    o << *v;
    return o.str();
  };
  for (const auto& row : result.rows) {
    std::string warn;
    for (const auto& w : row.warnings) {
      if (!warn.empty()) warn += "; ";
      warn += w;
    }
    for (auto& c : warn)
      if (c == ',') c = ';';
    std::string err = row.error;
    for (auto& c : err)
      if (c == ',') c = ';';
    os << row.swept_value << ',' << opt(row.simulated) << ','
       << opt(row.predicted) << ',' << row.delay_component << ','
       << row.shift_component << ',' << opt(row.abs_error) << ','
       << opt(row.rel_error) << ',' << row.regime << ','
       << (row.refined ? 1 : 0) << ',' << '"' << warn << '"' << ',' << '"'
       << err << '"' << "\n";
  }
  return os.str();
}

std::string report_to_json(const CompareReport& report) {
  std::ostringstream os;
  os.precision(12);
  os << "{\n  \"per_regime\": [";
  for (std::size_t i = 0; i < report.per_regime.size(); ++i) {
    const auto& st = report.per_regime[i];
    os << (i ? ",\n    " : "\n    ") << "{\"regime\": \"" << st.regime
       << "\", \"count\": " << st.count
       << ", \"max_rel_error\": " << st.max_rel_error
       << ", \"median_rel_error\": " << st.median_rel_error << "}";
  }
  os << "\n  ],\n  \"warning_count\": " << report.warning_count
     << ",\n  \"rows_with_error\": " << report.rows_with_error
     << ",\n  \"jumps\": [";
  for (std::size_t i = 0; i < report.jumps.size(); ++i) {
    const auto& j = report.jumps[i];
    os << (i ? ",\n    " : "\n    ") << "{\"left\": " << j.left
       << ", \"right\": " << j.right << ", \"gap\": " << j.gap << "}";
  }
  os << "\n  ]\n}\n";
  return os.str();
}

}  // namespace saddletip
