// Command line front end: simulate, predict, sweep, escape-prob,
// seaice-tip, compare. One JSON config per run; CSV tables and JSON
// summaries out. Exit codes: 0 ok, 1 config error, 2 per-row failures.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "saddletip/asymptotics.hpp"
#include "saddletip/sweep.hpp"
#include "saddletip/version.hpp"

using nlohmann::json;
using namespace saddletip;

namespace {

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open config file: " + path);
  json j;
  in >> j;
  return j;
}

CanonicalParams canonical_from_json(const json& j) {
  CanonicalParams p;
  p.mu = j.value("mu", p.mu);
  p.A = j.value("A", p.A);
  if (j.contains("lambda"))
    p.Omega = std::pow(p.mu, -j["lambda"].get<double>());
  p.Omega = j.value("Omega", p.Omega);
  p.a0 = j.value("a0", p.a0);
  p.x0 = j.value("x0", std::sqrt(p.a0));
  return p;
}

MLParams ml_from_json(const json& j) {
  MLParams p;
  p.g_ca = j.value("g_ca", p.g_ca);
  p.g_k = j.value("g_k", p.g_k);
  p.g_l = j.value("g_l", p.g_l);
  p.v_ca = j.value("v_ca", p.v_ca);
  p.v_k = j.value("v_k", p.v_k);
  p.v_l = j.value("v_l", p.v_l);
  p.v1 = j.value("v1", p.v1);
  p.v2 = j.value("v2", p.v2);
  p.v3 = j.value("v3", p.v3);
  p.v4 = j.value("v4", p.v4);
  p.phi = j.value("phi", p.phi);
  p.gamma = j.value("gamma", p.gamma);
  p.mu_hat = j.value("mu_hat", p.mu_hat);
  p.A_hat = j.value("A_hat", p.A_hat);
  p.Omega_hat = j.value("Omega_hat", p.Omega_hat);
  p.I0 = j.value("I0", p.I0);
  return p;
}

PeriodicSeries series_from_json(const json& j) {
  if (j.contains("samples")) {
    const auto v = j["samples"].get<std::vector<double>>();
    if (v.size() != 12)
      throw PreconditionError("signal samples must have 12 monthly values");
    std::array<double, 12> samples;
    std::copy(v.begin(), v.end(), samples.begin());
    return fit_from_monthly(samples, j.value("period", 1.0));
  }
  PeriodicSeries s;
  s.mean = j.value("mean", 0.0);
  s.cos_coeffs = j.value("cos_coeffs", std::vector<double>{});
  s.sin_coeffs = j.value("sin_coeffs", std::vector<double>{});
  if (s.sin_coeffs.size() != s.cos_coeffs.size())
    s.sin_coeffs.resize(s.cos_coeffs.size(), 0.0);
  const double period = j.value("period", 1.0);
  s.fundamental_frequency = 2.0 * 3.14159265358979323846 / period;
  return s;
}

SeaIceParams seaice_from_json(const json& j) {
  SeaIceParams p = SeaIceParams::defaults();
  p.L_i = j.value("L_i", p.L_i);
  p.cml_Hml = j.value("cml_Hml", p.cml_Hml);
  p.alpha_i = j.value("alpha_i", p.alpha_i);
  p.alpha_ml = j.value("alpha_ml", p.alpha_ml);
  p.F_B = j.value("F_B", p.F_B);
  p.h_alpha = j.value("h_alpha", p.h_alpha);
  p.mu_tilde = j.value("mu_tilde", p.mu_tilde);
  if (j.contains("F_0")) p.F_0 = series_from_json(j["F_0"]);
  if (j.contains("F_S")) p.F_S = series_from_json(j["F_S"]);
  if (j.contains("F_T")) p.F_T = series_from_json(j["F_T"]);
  if (j.contains("F_0") || j.contains("F_S") || j.contains("F_T"))
    p.synthetic_forcing = j.value("synthetic", true);
  return p;
}

json prediction_to_json(const Prediction& p) {
  json j;
  j["value"] = p.value;
  j["delay_component"] = p.delay_component;
  j["shift_component"] = p.shift_component;
  j["regime"] = to_string(p.regime);
  j["warnings"] = p.notes;
  if (p.mapped_value) j["mapped_value"] = *p.mapped_value;
  return j;
}

int cmd_predict(const json& cfg) {
  const std::string model = cfg.value("model", "canonical");
  json out;
  if (model == "canonical") {
    const CanonicalParams p = canonical_from_json(cfg.value("params", json::object()));
    out = prediction_to_json(predict_canonical(p));
    out["model"] = "canonical";
  } else if (model == "ml") {
    const json jp = cfg.value("params", json::object());
    const MLParams p = ml_from_json(jp);
    const MLNormalized n = ml_normalize(p);
    const double mu = n.mu_from_hat(p.mu_hat);
    const double A = n.amp_from_hat(p.A_hat);
    const double Omega = n.omega_from_hat(p.Omega_hat);
    const double b0 = jp.contains("b0") ? jp["b0"].get<double>()
                                        : n.b_from_bias(p.I0);
    out = prediction_to_json(predict_ml(n, mu, A, Omega, b0));
    out["model"] = "ml";
    out["normalization"] = {{"v_c", n.v_c}, {"I_c", n.I_c}, {"k2", n.k2},
                            {"mu", mu},     {"A", A},       {"Omega", Omega}};
  } else if (model == "seaice") {
    const SeaIceParams p = seaice_from_json(cfg.value("params", json::object()));
    const SeaIceNormalized n = seaice_normalize(p);
    out = prediction_to_json(seaice_tipping(n, n.mu));
    out["model"] = "seaice";
    out["normalization"] = {{"E_c", n.E_c}, {"dF0_c", n.dF0_c}, {"Omega", n.Omega},
                            {"mu", n.mu},   {"synthetic_forcing", p.synthetic_forcing}};
  } else {
    throw PreconditionError("predict: unknown model " + model);
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

template <std::size_t N>
void write_trajectory(const Trajectory<N>& traj,
                      const std::vector<std::string>& names,
                      const std::string& out_path, const json& meta) {
  std::ofstream os(out_path);
  if (!os) throw PreconditionError("cannot open output file: " + out_path);
  os.precision(12);
  os << "t";
  for (const auto& n : names) os << ',' << n;
  os << ",drift_param\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    os << traj.times[i];
    for (std::size_t c = 0; c < N; ++c) os << ',' << traj.states[i][c];
    os << ',' << traj.drift[i] << "\n";
  }
  std::ofstream ms(out_path + ".meta.json");
  ms << meta.dump(2) << "\n";
}

int cmd_simulate(const json& cfg, const std::string& out_path) {
  const std::string model = cfg.value("model", "canonical");
  const json jp = cfg.value("params", json::object());
  const json ji = cfg.value("integrate", json::object());
  json meta;
  meta["model"] = model;
  meta["rng"] = CounterRng::kAlgorithm;
  meta["version"] = kVersion;
  meta["method"] = (model == "ml") ? "rk4" : "rk2";
  meta["seed"] = nullptr;  // deterministic integrators take no seed
  json out;
  if (model == "canonical") {
    const CanonicalParams p = canonical_from_json(jp);
    const double dt = ji.value("dt", default_dt(p.mu, p.Omega));
    StopSpec stop;
    stop.t_max = ji.value("t_max", (p.a0 + 1.0) / p.mu);
    stop.record_stride = ji.value("record_stride", 16);
    if (ji.value("stop_at_tipping", true))
      stop.events = {{0, kCanonicalTipLevel, -1}};
    const auto traj = simulate_canonical(p, stop, dt);
    meta["dt"] = dt;
    if (!out_path.empty()) write_trajectory(traj, {"x"}, out_path, meta);
    const auto tip = detect_tipping_canonical(traj);
    out["samples"] = traj.times.size();
    if (tip) {
      out["tipping"] = {{"t", tip->t_tip}, {"a", tip->param_at_tip},
                        {"threshold", tip->threshold_used}};
    }
  } else if (model == "ml") {
    const MLParams p = ml_from_json(jp);
    const MLNormalized n = ml_normalize(p);
    const double dt = ji.value("dt", 0.02);
    StopSpec stop;
    stop.t_max = ji.value("t_max", 5000.0);
    stop.record_stride = ji.value("record_stride", 16);
    stop.state_floor = -200.0;
    stop.state_ceiling = 200.0;
    if (ji.value("stop_at_tipping", true))
      stop.events = {{0, std::abs(n.v_c), +1}};
    const auto traj = simulate_ml(p, stop, dt);
    meta["dt"] = dt;
    if (!out_path.empty()) write_trajectory(traj, {"v", "w"}, out_path, meta);
    const auto tip = detect_tipping_ml(traj, n.v_c);
    out["samples"] = traj.times.size();
    if (tip)
      out["tipping"] = {{"t", tip->t_tip}, {"I_bias", tip->param_at_tip}};
  } else if (model == "seaice") {
    const SeaIceParams p = seaice_from_json(jp);
    const SeaIceNormalized n = seaice_normalize(p);
    const double b0 = ji.value("b0", 1.5);
    const double dt = ji.value("dt", default_dt(n.mu, n.Omega));
    meta["dt"] = dt;
    const double x_floor = ji.value("x_floor", -0.5);
    StopSpec stop;
    stop.t_max = ji.value("t_max", (b0 + 1.0) / n.mu);
    stop.record_stride = ji.value("record_stride", 4);
    stop.state_floor = -1e4;
    stop.state_ceiling = 1e4;
    if (ji.value("stop_at_tipping", true))
      stop.events = {{0, n.E_from_x(x_floor), -1}};
    auto rhs = [&p](double t, const State<1>& y, double dF0, State<1>& dy,
                    double& dd) { seaice_rhs_full(t, y, dF0, dy, dd, p); };
    const double E0 = n.E_from_x(h_branch_inverse(n, b0, HBranch::Upper));
    const auto traj =
        rk2_integrate<1>(rhs, {E0}, n.dF0_from_b(b0), 0.0, stop, dt);
    if (!out_path.empty()) write_trajectory(traj, {"E"}, out_path, meta);
    auto ev = find_threshold_crossing(traj, 0, n.E_from_x(x_floor), -1);
    out["samples"] = traj.times.size();
    if (ev) out["tipping"] = {{"t", ev->t}, {"dF0", ev->drift_param}};
  } else {
    throw PreconditionError("simulate: unknown model " + model);
  }
  out["meta"] = meta;
  std::cout << out.dump(2) << "\n";
  return 0;
}

SweepSpec sweep_from_json(const json& cfg) {
  SweepSpec spec;
  spec.model = cfg.value("model", "canonical");
  spec.parameter = cfg.value("parameter", "A");
  if (cfg.contains("grid")) {
    const json g = cfg["grid"];
    if (g.is_array()) {
      spec.grid = g.get<std::vector<double>>();
    } else {
      const double lo = g.at("min").get<double>();
      const double hi = g.at("max").get<double>();
      const int count = g.at("count").get<int>();
      for (int i = 0; i < count; ++i)
        spec.grid.push_back(lo + (hi - lo) * i / std::max(1, count - 1));
    }
  }
  spec.predict = cfg.value("predict", true);
  spec.simulate = cfg.value("simulate", true);
  spec.seed = cfg.value("seed", 0);
  spec.refine_levels = cfg.value("refine_levels", 1);
  spec.max_workers = cfg.value("max_workers", 0);
  spec.dt = cfg.value("dt", 0.0);
  if (cfg.contains("canonical")) spec.canonical = canonical_from_json(cfg["canonical"]);
  if (cfg.contains("ml")) {
    spec.ml = ml_from_json(cfg["ml"]);
    spec.ml_b0 = cfg["ml"].value("b0", spec.ml_b0);
    spec.ml_A = cfg["ml"].value("A", spec.ml_A);
    spec.ml_Omega = cfg["ml"].value("Omega", spec.ml_Omega);
  }
  if (cfg.contains("seaice")) {
    spec.seaice = seaice_from_json(cfg["seaice"]);
    spec.seaice_b0 = cfg["seaice"].value("b0", spec.seaice_b0);
    spec.seaice_x_floor = cfg["seaice"].value("x_floor", spec.seaice_x_floor);
  }
  return spec;
}

int cmd_sweep(const json& cfg, const std::string& out_path,
              const std::string& summary_path) {
  const SweepSpec spec = sweep_from_json(cfg);
  const SweepResult result = run_sweep(spec);
  const std::string csv = sweep_to_csv(result);
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    std::ofstream os(out_path);
    os << csv;
  }
  const CompareReport rep = compare_report(result.rows);
  if (!summary_path.empty()) {
    std::ofstream os(summary_path);
    os << report_to_json(rep);
  }
  int failures = 0;
  for (const auto& row : result.rows)
    if (!row.error.empty()) ++failures;
  return failures > 0 ? 2 : 0;
}

int cmd_escape_prob(const json& cfg) {
  const json jp = cfg.value("params", json::object());
  CanonicalParams p = canonical_from_json(jp);
  const double eps = cfg.value("eps", 0.2);
  const double a_lo = cfg.value("a_lo", 0.025);
  const double a_hi = cfg.value("a_hi", 0.05);
  const int n_paths = cfg.value("n_paths", 10000);
  const std::uint64_t seed = cfg.value("seed", 1);
  const double dt = cfg.value("dt", 0.0);
  const EscapeEstimate est =
      escape_probability(p, eps, {a_lo, a_hi}, n_paths, seed, dt);
  json out;
  out["p_hat"] = est.p_hat;
  out["ci95"] = {est.ci_lo, est.ci_hi};
  out["n_paths"] = est.n_paths;
  out["n_escaped"] = est.n_escaped;
  out["seed"] = seed;
  out["rng"] = CounterRng::kAlgorithm;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_seaice_tip(const json& cfg) {
  const SeaIceParams base = seaice_from_json(cfg.value("params", json::object()));
  json out;
  out["synthetic_forcing"] = base.synthetic_forcing;
  auto tip_entry = [&](const SeaIceParams& p) {
    json e;
    try {
      const SeaIceNormalized n = seaice_normalize(p);
      e["E_c"] = n.E_c;
      e["dF0_c"] = n.dF0_c;
      if (!seaice_bistable(n)) {
        e["hysteresis"] = false;
        e["note"] = "oscillating branches no longer overlap; analytic tipping withheld";
      } else {
        const Prediction pr = seaice_tipping(n, n.mu);
        e["dF0_tip"] = *pr.mapped_value;
        e["b_tip"] = pr.value;
        e["hysteresis"] = true;
        const Prediction av = seaice_tipping_averaged(n, n.mu);
        e["dF0_tip_averaged"] = *av.mapped_value;
      }
    } catch (const HysteresisLossError& ex) {
      e["hysteresis"] = false;
      e["note"] = ex.what();
    }
    return e;
  };
  if (cfg.contains("vary")) {
    const std::string axis = cfg["vary"].value("parameter", "ft_amplitude_factor");
    const auto values = cfg["vary"].value("values", std::vector<double>{});
    json rows = json::array();
    for (double v : values) {
      SeaIceParams p = base;
      if (axis == "ft_amplitude_factor") p = scale_ft(base, v);
      else if (axis == "ft_mean_shift") p = shift_ft_mean(base, v);
      else if (axis == "cml_factor") p = scale_cml(base, v);
      else if (axis == "h_alpha") p = with_h_alpha(base, v);
      else throw PreconditionError("seaice-tip: unknown vary parameter " + axis);
      json e = tip_entry(p);
      e[axis] = v;
      rows.push_back(e);
    }
    out["vary"] = axis;
    out["rows"] = rows;
  } else {
    out.update(tip_entry(base));
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_compare(const std::string& table_path) {
  std::ifstream in(table_path);
  if (!in) throw PreconditionError("cannot open table: " + table_path);
  std::vector<ComparisonRow> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::istringstream ls(line);
    std::string field;
    ComparisonRow row;
    auto next = [&]() {
      std::getline(ls, field, ',');
      return field;
    };
    row.swept_value = std::stod(next());
    const std::string sim = next();
    if (!sim.empty()) row.simulated = std::stod(sim);
    const std::string pred = next();
    if (!pred.empty()) row.predicted = std::stod(pred);
    row.delay_component = std::stod(next());
    row.shift_component = std::stod(next());
    const std::string ab = next();
    if (!ab.empty()) row.abs_error = std::stod(ab);
    const std::string rel = next();
    if (!rel.empty()) row.rel_error = std::stod(rel);
    row.regime = next();
    rows.push_back(row);
  }
  std::cout << report_to_json(compare_report(rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tipping points of slowly drifted saddle-node systems under periodic forcing"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string config_path, out_path, summary_path, table_path;

  auto* sim = app.add_subcommand("simulate", "Integrate a model and report its tipping event");
  sim->add_option("--config", config_path, "JSON config")->required();
  sim->add_option("--out", out_path, "Trajectory CSV path");

  auto* pred = app.add_subcommand("predict", "Closed-form tipping prediction as JSON");
  pred->add_option("--config", config_path, "JSON config")->required();

  auto* sweep = app.add_subcommand("sweep", "Prediction-vs-simulation sweep table");
  sweep->add_option("--config", config_path, "JSON config")->required();
  sweep->add_option("--out", out_path, "CSV output path (stdout if omitted)");
  sweep->add_option("--summary", summary_path, "JSON summary path");

  auto* esc = app.add_subcommand("escape-prob", "Monte Carlo early-escape probability");
  esc->add_option("--config", config_path, "JSON config")->required();

  auto* sit = app.add_subcommand("seaice-tip", "Sea-ice tipping with optional parameter variation");
  sit->add_option("--config", config_path, "JSON config")->required();

  auto* cmp = app.add_subcommand("compare", "Summarize a sweep CSV table");
  cmp->add_option("--table", table_path, "Sweep CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(load_config(config_path), out_path);
    if (pred->parsed()) return cmd_predict(load_config(config_path));
    if (sweep->parsed()) return cmd_sweep(load_config(config_path), out_path, summary_path);
    if (esc->parsed()) return cmd_escape_prob(load_config(config_path));
    if (sit->parsed()) return cmd_seaice_tip(load_config(config_path));
    if (cmp->parsed()) return cmd_compare(table_path);
  } catch (const PreconditionError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
