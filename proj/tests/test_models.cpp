#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "saddletip/canonical.hpp"
#include "saddletip/morris_lecar.hpp"
#include "saddletip/sea_ice.hpp"
#include "saddletip/sweep.hpp"

using namespace saddletip;

TEST_CASE("canonical right-hand side") {
  CanonicalParams p = CanonicalParams::make(0.0025, 0.0, 1.0, 1.0);
  State<1> dy;
  double da;
  canonical_rhs(0.0, {1.0}, 1.0, dy, da, p);
  CHECK(dy[0] == 0.0);
  CHECK(da == -0.0025);

  p.A = 2.0;
  p.Omega = 3.0;
  canonical_rhs(3.14159265358979323846 / (2.0 * p.Omega), {0.0}, 0.0, dy, da, p);
  CHECK(dy[0] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("large-amplitude rescaling") {
  SUBCASE("A = 1 is the identity on (Omega, mu, a0)") {
    const CanonicalParams p{0.003, 1.0, 2.5, 1.7, std::sqrt(1.7)};
    const RescaledParams r = rescale_large_amplitude(p);
    CHECK(r.omega == 2.5);
    CHECK(r.M == 0.003);
    CHECK(r.h0 == 1.7);
  }
  SUBCASE("A=4, Omega=2, mu=0.008") {
    const CanonicalParams p{0.008, 4.0, 2.0, 1.0, 1.0};
    const RescaledParams r = rescale_large_amplitude(p);
    CHECK(r.omega == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.M == doctest::Approx(0.001).epsilon(1e-15));
  }
  SUBCASE("round trip to 1e-14") {
    const CanonicalParams p{0.0123, 7.3, 4.2, 19.0, std::sqrt(19.0)};
    const CanonicalParams q = map_back(rescale_large_amplitude(p), p.A);
    CHECK(q.mu == doctest::Approx(p.mu).epsilon(1e-14));
    CHECK(q.Omega == doctest::Approx(p.Omega).epsilon(1e-14));
    CHECK(q.a0 == doctest::Approx(p.a0).epsilon(1e-14));
    CHECK(q.x0 == doctest::Approx(p.x0).epsilon(1e-14));
  }
  SUBCASE("A <= 0 rejected") {
    CHECK_THROWS_AS((void)rescale_large_amplitude({0.01, 0.0, 1.0, 1.0, 1.0}),
                    PreconditionError);
  }
}

TEST_CASE("rescale equivariance: the rescaled trajectory maps back pointwise") {
  const CanonicalParams p{0.01, 4.0, 2.0, 2.0, std::sqrt(2.0)};
  const RescaledParams r = rescale_large_amplitude(p);
  const double dt = 0.005;
  StopSpec stop;
  stop.t_max = 3.0;
  const auto orig = simulate_canonical(p, stop, dt);

  const double rA = std::sqrt(p.A);
  auto rhs = [&r](double S, const State<1>& z, double h, State<1>& dz, double& dh) {
    dz[0] = h - z[0] * z[0] + std::sin(r.omega * S);
    dh = -r.M;
  };
  StopSpec stop_s;
  stop_s.t_max = stop.t_max * rA;
  const auto resc = rk2_integrate<1>(rhs, {r.z0}, r.h0, 0.0, stop_s, dt * rA);
  REQUIRE(orig.states.size() == resc.states.size());
  for (std::size_t i = 0; i < orig.states.size(); ++i) {
    CHECK(std::abs(orig.states[i][0] - rA * resc.states[i][0]) <= 1e-10);
    CHECK(std::abs(orig.drift[i] - p.A * resc.drift[i]) <= 1e-10);
  }
}

TEST_CASE("regime exponent zeta") {
  CHECK(regime_exponent_zeta(2.0, 0.7) == 0.0);
  CHECK(regime_exponent_zeta(3.0, 1.0) == doctest::Approx(1.0 / 11.0).epsilon(1e-15));
  double prev = regime_exponent_zeta(2.5, 1.0);
  for (double P : {4.0, 8.0, 32.0, 1024.0}) {
    const double z = regime_exponent_zeta(P, 1.0);
    CHECK(z > prev);
    prev = z;
  }
  CHECK(prev < 1.0 / 3.0);
  CHECK(regime_exponent_zeta(65536.0, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-3));
  CHECK_THROWS_AS((void)regime_exponent_zeta(3.0, 0.0), PreconditionError);
}

TEST_CASE("regime classification") {
  const double mu1 = 0.005;
  CHECK(classify_regime({mu1, 1.0, std::pow(mu1, -0.8), 1.0, 1.0}).regime ==
        Regime::HighFrequency);
  const RegimeClassification lf = classify_regime({0.01, 5.0, 0.01, 20.0, 4.47});
  CHECK(lf.regime == Regime::LowFreqOrderMu);
  CHECK(lf.c == doctest::Approx(1.0));
  const double Om = std::pow(0.01, -1.0);
  CHECK(classify_regime({0.01, Om * Om * Om, Om, 20.0, 4.47}).regime ==
        Regime::RescaledLowFrequency);
  CHECK(classify_regime({0.1, 5.0, 0.5, 20.0, 4.47}).regime == Regime::LowFreqNu);
}

TEST_CASE("ML right-hand side") {
  MLParams p;
  p.mu_hat = 0.0321;
  State<2> dy;
  double dI;
  ml_rhs(0.0, {-20.0, p.w_inf(-20.0)}, 40.0, dy, dI, p);
  CHECK(dy[1] == 0.0);
  CHECK(dI == 0.0321);

  const State<2> rest = ml_rest_state(p, 40.0);
  ml_rhs(0.0, rest, 40.0, dy, dI, p);
  CHECK(std::abs(dy[0]) <= 1e-9);
  CHECK(std::abs(dy[1]) <= 1e-9);
}

TEST_CASE("ML normalization") {
  MLParams p;
  const MLNormalized n = ml_normalize(p);
  CHECK(std::abs(n.v_c + 27.14) <= 0.2);
  CHECK(std::abs(n.I_c - 44.09) <= 0.2);
  CHECK(std::abs(n.k0) <= 1e-8);
  CHECK(std::abs(n.k1) <= 1e-8);
  CHECK(n.k2 < 0.0);
  CHECK(n.omega_from_hat(1.0) == doctest::Approx(20.0));
  CHECK(n.mu_from_hat(0.0014) == doctest::Approx(20.0 * 0.0014 / std::abs(n.v_c)));
  CHECK(n.amp_from_hat(-54.275) == doctest::Approx(2.0).epsilon(1e-4));

  SUBCASE("static equilibria of the normalized system map back to the original") {
    auto F = [&](double x) {
      const double hx = (-p.g_ca * p.m_inf(n.v_c * (x + 1.0)) *
                             (n.v_c * (x + 1.0) - p.v_ca) -
                         p.g_l * (n.v_c * (x + 1.0) - p.v_l) + n.I_c) /
                        n.v_c;
      const double w = p.w_inf(n.v_c * (x + 1.0));
      return hx - n.g_k * (x + n.D) * w;
    };
    for (double b : {0.1, 0.3, 0.6}) {
      // stable-branch solution of F(x) = -b (x > 0 side)
      double lo = 0.0, hi = 2.0;
      REQUIRE((F(lo) + b) * (F(hi) + b) < 0.0);
      for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        (((F(mid) + b) > 0.0) == ((F(lo) + b) > 0.0) ? lo : hi) = mid;
      }
      const double x_eq = 0.5 * (lo + hi);
      const double v = n.v_c * (x_eq + 1.0);
      const double I = n.bias_from_b(b);
      CHECK(p.static_current(v) == doctest::Approx(I).epsilon(1e-7));
    }
  }
  SUBCASE("no fold in the scan window is a regime error") {
    MLParams flat = p;
    flat.g_ca = 0.0;  // removes the N-shape entirely
    CHECK_THROWS_AS((void)ml_normalize(flat), RegimeError);
  }
}

TEST_CASE("sea-ice normalization") {
  const SeaIceParams p = SeaIceParams::defaults();
  CHECK(p.synthetic_forcing);
  const SeaIceNormalized n = seaice_normalize(p);
  CHECK(n.E_c > 0.0);
  CHECK(std::abs(n.q.mean) <= 1e-10);
  CHECK(n.Omega == doctest::Approx(6.28).epsilon(0.002));
  CHECK(std::abs(n.H(0.0)) <= 1e-9);
  CHECK(std::abs(n.H_d1(0.0)) <= 1e-9);

  SUBCASE("piecewise energy map is monotone") {
    double prev_h = 1e300, prev_T = -1e300;
    for (double E = -30.0; E <= 30.0; E += 0.5) {
      const SeaIceState s = seaice_interpret(E, p);
      CHECK(s.ice_thickness <= prev_h + 1e-12);
      CHECK(s.T_ml >= prev_T - 1e-12);
      prev_h = s.ice_thickness;
      prev_T = s.T_ml;
    }
  }
  SUBCASE("constant forcing equilibrium has dE = 0") {
    SeaIceParams avg = p;
    avg.F_S = PeriodicSeries{p.F_S.mean, {}, {}, n.Omega};
    avg.F_0 = PeriodicSeries{p.F_0.mean, {}, {}, n.Omega};
    avg.F_T = PeriodicSeries{p.F_T.mean, {}, {}, n.Omega};
    avg.mu_tilde = 0.0;
    const double x_up = h_branch_inverse(n, 1.0, HBranch::Upper);
    State<1> dy;
    double dd;
    seaice_rhs_full(0.3, {n.E_from_x(x_up)}, n.dF0_from_b(1.0), dy, dd, avg);
    CHECK(std::abs(dy[0]) <= 1e-7);
    CHECK(dd == 0.0);
  }
  SUBCASE("q = 0 reduces the additive model to the averaged one") {
    SeaIceNormalized nz = n;
    nz.q.cos_coeffs.clear();
    nz.q.sin_coeffs.clear();
    State<1> d1, d2;
    double dbl, db2;
    seaice_rhs_h(0.37, {1.3}, 0.5, d1, dbl, nz);
    d2[0] = 0.5 + nz.H(1.3);
    CHECK(d1[0] == doctest::Approx(d2[0]).epsilon(1e-14));
    (void)db2;
  }
}

TEST_CASE("sea-ice branch inverses") {
  const SeaIceParams p = SeaIceParams::defaults();
  const SeaIceNormalized n = seaice_normalize(p);
  const HBranchRanges r = h_branch_ranges(n);
  CHECK(std::abs(r.x_upper_fold) <= 1e-8);
  CHECK(r.x_lower_fold == doctest::Approx(-2.0).epsilon(1e-8));

  SUBCASE("fold maps to the origin; round trips to 1e-10") {
    CHECK(std::abs(h_branch_inverse(n, r.b_min_middle, HBranch::Upper)) <= 1e-6);
    for (double b : {0.2, 1.0, 2.5}) {
      for (HBranch br : {HBranch::Upper, HBranch::Middle, HBranch::Lower}) {
        if (br != HBranch::Upper && (b <= r.b_min_middle || b >= r.b_max_middle))
          continue;
        const double x = h_branch_inverse(n, b, br);
        CHECK(std::abs(n.H(x) + b) <= 1e-10);
      }
    }
  }
  SUBCASE("branch range errors") {
    CHECK_THROWS_AS((void)h_branch_inverse(n, r.b_min_middle - 0.5, HBranch::Upper),
                    RegimeError);
    CHECK_THROWS_AS((void)h_branch_inverse(n, r.b_max_middle + 0.5, HBranch::Middle),
                    RegimeError);
  }
  SUBCASE("middle branch empties when the averaged fold is destroyed") {
    // critical-point count oracle on H'
    SeaIceParams strong = p;
    strong.F_T.mean *= 20.0;
    CHECK_THROWS_AS((void)seaice_normalize(strong), HysteresisLossError);
    SeaIceNormalized fake = n;
    fake.G4 *= 20.0;
    int sign_changes = 0;
    double prev = fake.H_d1(-4.0);
    for (double x = -4.0; x <= 2.0; x += 1e-3) {
      const double cur = fake.H_d1(x);
      if ((cur > 0.0) != (prev > 0.0)) ++sign_changes;
      prev = cur;
    }
    CHECK(sign_changes == 0);
    CHECK_THROWS_AS((void)h_branch_ranges(fake), HysteresisLossError);
  }
}

TEST_CASE("additive reduction tracks the multiplicative model over ten drift-years") {
  const SeaIceParams p = SeaIceParams::defaults();
  const SeaIceNormalized n = seaice_normalize(p);
  const double b0 = 1.5;
  const double x0 = h_branch_inverse(n, b0, HBranch::Upper);
  StopSpec stop;
  stop.t_max = 10.0;
  stop.record_stride = 1;
  stop.state_floor = -1e4;
  stop.state_ceiling = 1e4;
  auto rhs_add = [&n](double t, const State<1>& y, double b, State<1>& dy,
                      double& db) { seaice_rhs_h(t, y, b, dy, db, n); };
  auto rhs_mul = [&n](double t, const State<1>& y, double b, State<1>& dy,
                      double& db) { seaice_rhs_toy(t, y, b, dy, db, n); };
  const auto ta = rk2_integrate<1>(rhs_add, {x0}, b0, 0.0, stop, 0.002);
  const auto tm = rk2_integrate<1>(rhs_mul, {x0}, b0, 0.0, stop, 0.002);
  REQUIRE(ta.states.size() == tm.states.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < ta.states.size(); ++i)
    worst = std::max(worst, std::abs(ta.states[i][0] - tm.states[i][0]));
  // The seasonal descent of the two models differs by a few days of
  // timing, which shows up as ~0.09 E_c at the steep winter flank.
  CHECK(worst <= 0.10);

  // the full energy model is the multiplicative model exactly
  SeaIceParams pf = p;
  pf.mu_tilde = n.mu * n.E_c;
  auto rhs_full = [&pf](double t, const State<1>& y, double f, State<1>& dy,
                        double& df) { seaice_rhs_full(t, y, f, dy, df, pf); };
  const auto tf =
      rk2_integrate<1>(rhs_full, {n.E_from_x(x0)}, n.dF0_from_b(b0), 0.0, stop, 0.002);
  double worst_full = 0.0;
  for (std::size_t i = 0; i < tf.states.size(); ++i)
    worst_full = std::max(
        worst_full, std::abs(n.x_from_E(tf.states[i][0]) - tm.states[i][0]));
  CHECK(worst_full <= 1e-9);
}
