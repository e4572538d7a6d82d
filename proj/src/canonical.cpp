#include "saddletip/canonical.hpp"

namespace saddletip {

std::string to_string(Regime r) {
  switch (r) {
    case Regime::HighFrequency: return "high_frequency";
    case Regime::LowFreqOrderMu: return "low_frequency_order_mu";
    case Regime::LowFreqNu: return "low_frequency_nu";
    case Regime::RescaledLowFrequency: return "rescaled_low_frequency";
    case Regime::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

RegimeClassification classify_regime(const CanonicalParams& p) {
  RegimeClassification rc;
  if (p.mu <= 0.0 || p.mu >= 1.0 || p.Omega <= 0.0) return rc;
  rc.lambda = p.lambda();
  rc.nu = p.nu();
  rc.c = p.c_ratio();
  if (p.Omega > 1.0 && p.A > 1.0) {
    rc.P = std::log(p.A) / std::log(p.Omega);
    if (rc.lambda > 0.0) rc.zeta = regime_exponent_zeta(rc.P, rc.lambda);
  }
  if (p.Omega > 1.0) {
    if (rc.P > 2.0 && rc.lambda > 0.0) {
      // Large amplitude: the unit-amplitude rescaling is low-frequency.
      rc.regime = Regime::RescaledLowFrequency;
    } else if (rc.lambda > rc.lambda_min_hf && p.A < p.Omega) {
      rc.regime = Regime::HighFrequency;
    } else {
      rc.regime = Regime::Indeterminate;
    }
    return rc;
  }
  // Omega <= 1: low-frequency territory.
  if (rc.c <= rc.c_max_order_one) {
    rc.regime = Regime::LowFreqOrderMu;
  } else if (p.Omega < rc.omega_max_lf) {
    rc.regime = Regime::LowFreqNu;
  } else {
    rc.regime = Regime::Indeterminate;
  }
  return rc;
}

}  // namespace saddletip
