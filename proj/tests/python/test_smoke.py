import math

import pytest

import saddletip as st


def test_airy_values():
    assert st.airy_ai(0.0) == pytest.approx(0.3550280538878172, abs=1e-12)
    assert st.airy_first_zero() == pytest.approx(-2.338107410459767, abs=1e-12)
    assert st.airy_log_ratio(0.0) == pytest.approx(0.7290111329, abs=1e-8)
    with pytest.raises(st.PoleError):
        st.airy_log_ratio(st.airy_first_zero())


def test_canonical_predictions():
    d = st.delayed_tipping(0.0025)
    assert d.value == pytest.approx(-0.0430683, abs=1e-6)
    h = st.hf_tipping(0.001, 1.0, 0.001 ** -0.5)
    assert h.value == pytest.approx(-0.0228811, abs=1e-6)
    assert h.value == h.delay_component + h.shift_component

    crits = st.lf_critical_amplitudes(0.01, 0.01, 20.0)
    assert any(abs(c.A_c - 8.9697) < 1e-3 for c in crits)

    p = st.CanonicalParams(mu=0.01, A=5.0, Omega=0.01, a0=20.0)
    pred = st.predict_canonical(p)
    assert pred.value == pytest.approx(3.4475, abs=1e-3)
    assert pred.regime == "low_frequency_order_mu"


def test_canonical_simulation_round_trip():
    p = st.CanonicalParams(mu=0.0025, A=0.0, Omega=1.0, a0=0.5)
    ev = st.simulate_canonical_tipping(p)
    assert ev is not None
    assert ev["param"] == pytest.approx(-0.0430683, rel=0.15)


def test_escape_probability():
    p = st.CanonicalParams(mu=0.005, A=0.0, Omega=1.0, a0=0.5)
    est = st.escape_probability(p, 0.2, 0.025, 0.05, n_paths=500, seed=3)
    assert 0.2 < est["p_hat"] < 0.5
    again = st.escape_probability(p, 0.2, 0.025, 0.05, n_paths=500, seed=3)
    assert est["n_escaped"] == again["n_escaped"]


def test_morris_lecar():
    n = st.ml_normalize(st.MLParams())
    assert n.v_c == pytest.approx(-27.14, abs=0.2)
    assert n.I_c == pytest.approx(44.09, abs=0.2)
    assert abs(n.k0) <= 1e-8 and abs(n.k1) <= 1e-8
    unforced = st.ml_unforced_tipping(n, n.mu_from_hat(0.0014))
    assert unforced.mapped_value == pytest.approx(44.58, rel=0.01)
    hf = st.ml_hf_tipping(n, 2.0, 0.001 ** -0.5, 0.001)
    assert hf.mapped_value < unforced.mapped_value


def test_sea_ice_pipeline():
    p = st.SeaIceParams.defaults()
    assert p.synthetic_forcing
    n = st.seaice_normalize(p)
    b_star, x_star = st.seaice_xstar(n)
    assert x_star == pytest.approx(2.2, abs=0.1)
    forced = st.seaice_tipping(n, n.mu)
    averaged = st.seaice_tipping_averaged(n, n.mu)
    assert forced.value > averaged.value
    assert st.seaice_bistable(n)
    assert not st.seaice_bistable(st.seaice_normalize(st.scale_ft(p, 3.5)))


def test_math_consistency():
    z1 = st.airy_first_zero()
    mu = 0.004
    assert st.delayed_tipping(mu).value == pytest.approx(mu ** (2.0 / 3.0) * z1)
    assert math.isfinite(st.slow_equilibrium(1.0, 0.0025))
