#pragma once

#include <optional>
#include <string>
#include <vector>

#include "saddletip/canonical.hpp"

namespace saddletip {

// A closed-form tipping location in the drifting parameter, split into the
// slow-drift delay part and the forcing-induced shift part;
// value = delay_component + shift_component.
struct Prediction {
  double value = 0.0;
  double delay_component = 0.0;
  double shift_component = 0.0;
  Regime regime = Regime::Indeterminate;
  std::vector<std::string> notes;
  // For the application models: the tipping location mapped back to the
  // physical drift parameter (I_bias or dF0).
  std::optional<double> mapped_value;
};

// Location of a jump in tipping position vs forcing amplitude. a_star is
// the tangency/minimum location (a_m, b_m, or a_min depending on context).
struct CriticalAmplitude {
  double a_star = 0.0;
  double A_m = 0.0;
  double A1 = 0.0;
  double A_c = 0.0;
  std::optional<int> k;
};

}  // namespace saddletip
