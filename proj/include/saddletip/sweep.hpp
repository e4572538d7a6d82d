#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "saddletip/canonical.hpp"
#include "saddletip/ml_tipping.hpp"
#include "saddletip/prediction.hpp"
#include "saddletip/seaice_tipping.hpp"
#include "saddletip/tipping.hpp"

namespace saddletip {

// Regime-dispatching tipping predictors. The low-frequency canonical
// predictor walks the forcing dips from a0 downward, skipping every
// tangency window whose critical amplitude exceeds A.
Prediction predict_canonical(const CanonicalParams& p);
Prediction predict_ml(const MLNormalized& n, double mu, double A, double Omega,
                      double b0);

// Simulation drivers used by the sweeps; empty when no tipping occurs
// within the horizon.
std::optional<TippingEvent> simulate_canonical_tipping(const CanonicalParams& p,
                                                       double dt = 0.0,
                                                       double a_stop = 0.0);
std::optional<TippingEvent> simulate_ml_tipping(const MLParams& phys,
                                                const MLNormalized& n,
                                                double mu, double A,
                                                double Omega, double b0,
                                                double dt_hat = 0.0,
                                                double b_stop = 0.0);
// Sea ice simulated in the full energy model; returns the event in dF0.
std::optional<TippingEvent> simulate_seaice_tipping(const SeaIceParams& p,
                                                    const SeaIceNormalized& n,
                                                    double b0, double x_floor,
                                                    double dt = 0.0);
// Reduced sea-ice models (additive or multiplicative seasonality, or the
// averaged system with q = 0); returns the event in b.
enum class SeaIceVariant { Additive, Multiplicative, Averaged };
std::optional<TippingEvent> simulate_seaice_normalized(
    const SeaIceNormalized& n, SeaIceVariant variant, double b0,
    double x_floor, double dt = 0.0);

struct SweepSpec {
  std::string model = "canonical";  // canonical | ml | seaice
  std::string parameter = "A";
  std::vector<double> grid;
  bool predict = true;
  bool simulate = true;
  std::uint64_t seed = 0;
  int refine_levels = 1;  // recursive midpoint insertion at detected jumps
  int max_workers = 0;    // 0 = hardware concurrency

  CanonicalParams canonical;
  MLParams ml;
  SeaIceParams seaice = SeaIceParams::defaults();
  double ml_b0 = 1.0;
  double ml_A = 0.0;      // normalized amplitude for ml lambda-sweeps
  double ml_Omega = 1.0;  // normalized frequency for ml amplitude-sweeps
  double seaice_b0 = 1.5;
  double seaice_x_floor = -0.5;
  double dt = 0.0;
};

struct ComparisonRow {
  double swept_value = 0.0;
  std::optional<double> simulated;
  std::optional<double> predicted;
  double delay_component = 0.0;
  double shift_component = 0.0;
  std::optional<double> abs_error;
  std::optional<double> rel_error;
  std::string regime;
  std::vector<std::string> warnings;
  std::string error;
  bool refined = false;  // inserted by jump refinement
};

struct SweepResult {
  SweepSpec spec;
  std::vector<ComparisonRow> rows;
  std::string config_hash;
  std::string rng_algorithm;
  std::string version;
};

SweepResult run_sweep(const SweepSpec& spec);

struct JumpLocation {
  double left;
  double right;
  double gap;  // |sim(right) - sim(left)|
};

struct RegimeStats {
  std::string regime;
  int count = 0;
  double max_rel_error = 0.0;
  double median_rel_error = 0.0;
};

struct CompareReport {
  std::vector<RegimeStats> per_regime;
  int warning_count = 0;
  int rows_with_error = 0;
  std::vector<JumpLocation> jumps;
};

// Deterministic summary of a sweep table: per-regime error stats and
// jump locations in the simulated column (gap > 5x median adjacent gap).
CompareReport compare_report(const std::vector<ComparisonRow>& rows);

std::string sweep_to_csv(const SweepResult& result);
std::string report_to_json(const CompareReport& report);

}  // namespace saddletip
