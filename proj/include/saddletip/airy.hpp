#pragma once

#include "saddletip/errors.hpp"

namespace saddletip {

struct AiryEval {
  double ai;
  double ai_prime;
};

// Ai and Ai' together. Maclaurin series with compensated summation on
// [-7.5, 6], large-|x| asymptotic expansions outside; both branches reach
// 1e-10 absolute accuracy at the switch points.
AiryEval airy_eval(double x);

double airy_ai(double x);
double airy_ai_prime(double x);

// First (largest) zero of Ai, approx -2.338107410459767. Newton on the
// series from seed -2.338, tolerance 1e-13; cached after the first call.
double airy_first_zero();

// -Ai'(x)/Ai(x). Throws PoleError near a zero of Ai, carrying a Newton
// estimate of the offending zero.
double airy_log_ratio(double x);

}  // namespace saddletip
