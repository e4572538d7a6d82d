#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "saddletip/airy.hpp"

using namespace saddletip;

namespace {

// Independent long-double Maclaurin oracle, usable on [-10, 6.5] where the
// largest intermediate term stays ~1e4 and long-double roundoff keeps the
// absolute error near 1e-15.
struct AirySeriesOracle {
  long double ai;
  long double ai_prime;
};

AirySeriesOracle oracle(long double x) {
  const long double c1 = 0.35502805388781723926L;
  const long double c2 = 0.25881940379280679841L;
  const long double x3 = x * x * x;
  long double f = 1.0L, g = x, fp = 0.0L, gp = 1.0L;
  long double t = 1.0L, s = x;
  for (int k = 1; k <= 260; ++k) {
    t *= x3 / ((3.0L * k - 1.0L) * (3.0L * k));
    s *= x3 / ((3.0L * k) * (3.0L * k + 1.0L));
    f += t;
    g += s;
    if (x != 0.0L) {
      fp += 3.0L * k * t / x;
      gp += (3.0L * k + 1.0L) * s / x;
    }
    if (std::abs((double)t) < 1e-26 && std::abs((double)s) < 1e-26) break;
  }
  return {c1 * f - c2 * g, c1 * fp - c2 * gp};
}

}  // namespace

TEST_CASE("airy matches the series oracle to 1e-10 on [-10, 6]") {
  for (int i = 0; i <= 320; ++i) {
    const double x = -10.0 + 0.05 * i;
    const AiryEval e = airy_eval(x);
    CHECK(std::abs(e.ai - (double)oracle(x).ai) <= 1e-10);
    CHECK(std::abs(e.ai_prime - (double)oracle(x).ai_prime) <= 1e-10);
  }
}

TEST_CASE("frozen point values") {
  CHECK(airy_ai(0.0) == doctest::Approx(0.3550280538878172).epsilon(1e-12));
  CHECK(airy_ai_prime(0.0) == doctest::Approx(-0.2588194037928068).epsilon(1e-12));
  CHECK(airy_ai(1.0) == doctest::Approx(0.1352924163128814).epsilon(1e-12));
  CHECK(std::abs(airy_ai(-2.338107410459767)) <= 1e-9);
  CHECK(airy_ai_prime(-2.338107410459767) ==
        doctest::Approx(0.7012108227206906).epsilon(1e-9));
  // decaying tail: |Ai'| shrinking, value from the asymptotic-oracle regime
  CHECK(std::abs(airy_ai_prime(5.0)) < std::abs(airy_ai_prime(4.0)));
  CHECK(airy_ai_prime(5.0) == doctest::Approx((double)oracle(5.0L).ai_prime).epsilon(1e-8));
  CHECK(airy_ai_prime(5.0) == doctest::Approx(-2.474e-4).epsilon(2e-4));
}

TEST_CASE("first zero") {
  const double z1 = airy_first_zero();
  CHECK(z1 == doctest::Approx(-2.338107410459767).epsilon(1e-13));
  CHECK(std::abs(airy_ai(z1)) <= 1e-9);
  // Newton from the seed -2.338 converges in at most 6 iterations.
  double z = -2.338;
  int iters = 0;
  for (; iters < 20; ++iters) {
    const AiryEval e = airy_eval(z);
    const double step = e.ai / e.ai_prime;
    z -= step;
    if (std::abs(step) < 1e-13) break;
  }
  CHECK(iters <= 6);
  CHECK(z == doctest::Approx(z1).epsilon(1e-13));
}

TEST_CASE("log ratio") {
  CHECK(airy_log_ratio(0.0) == doctest::Approx(0.7290111329).epsilon(1e-8));
  const double r0 = (double)(-oracle(0.0L).ai_prime / oracle(0.0L).ai);
  CHECK(airy_log_ratio(0.0) == doctest::Approx(r0).epsilon(1e-12));
  CHECK(airy_log_ratio(9.0) == doctest::Approx(3.0).epsilon(0.02));
  // pole side: magnitude grows approaching the first zero from above
  CHECK(std::abs(airy_log_ratio(-2.3)) > 20.0);
  CHECK(std::abs(airy_log_ratio(-2.33)) > std::abs(airy_log_ratio(-2.3)));
  CHECK_THROWS_AS((void)airy_log_ratio(-2.33810741), PoleError);
  try {
    (void)airy_log_ratio(-2.338107411);
  } catch (const PoleError& e) {
    CHECK(e.nearest_zero == doctest::Approx(-2.3381074105).epsilon(1e-6));
  }
  CHECK_THROWS_AS((void)airy_ai(std::nan("")), PreconditionError);
}

TEST_CASE("ODE residual by high-order central differences, step-halving consistent") {
  // fourth-order five-point stencil; grid offset keeps stencils clear of
  // the two branch seams, where the evaluation has a ~4e-12 kink
  for (double h : {1e-2, 5e-3}) {
    double worst = 0.0;
    for (double x = -9.995; x <= 8.0; x += 0.25) {
      const double d2 = (-airy_ai(x + 2 * h) + 16.0 * airy_ai(x + h) -
                         30.0 * airy_ai(x) + 16.0 * airy_ai(x - h) -
                         airy_ai(x - 2 * h)) /
                        (12.0 * h * h);
      worst = std::max(worst, std::abs(d2 - x * airy_ai(x)));
    }
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("sign pattern") {
  for (double x = -2.33; x <= 10.0; x += 0.07) CHECK(airy_ai(x) > 0.0);
  double prev = airy_ai(0.0);
  for (double x = 0.1; x <= 10.0; x += 0.1) {
    const double v = airy_ai(x);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("branch switchover continuity") {
  // Both branches agree with the oracle at the switch points.
  for (double x : {6.0 - 1e-9, 6.0 + 1e-9, -7.5 - 1e-9, -7.5 + 1e-9}) {
    CHECK(std::abs(airy_ai(x) - (double)oracle((long double)x).ai) <= 1e-10);
    CHECK(std::abs(airy_ai_prime(x) - (double)oracle((long double)x).ai_prime) <= 1e-10);
  }
}
