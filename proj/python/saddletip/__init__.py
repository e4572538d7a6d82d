"""Tipping points of slowly drifted saddle-node systems under periodic forcing."""

from saddletip._core import (  # noqa: F401
    __version__,
    CanonicalParams,
    CriticalAmplitude,
    HysteresisLossError,
    MLNormalized,
    MLParams,
    PoleError,
    PreconditionError,
    Prediction,
    RegimeError,
    SeaIceNormalized,
    SeaIceParams,
    airy_ai,
    airy_ai_prime,
    airy_first_zero,
    airy_log_ratio,
    delayed_tipping,
    escape_probability,
    hf_tipping,
    lf_critical_amplitudes,
    lf_first_root,
    lf_nu_critical,
    lf_tipping,
    ml_hf_tipping,
    ml_lf_critical,
    ml_lf_tipping,
    ml_normalize,
    ml_unforced_tipping,
    predict_canonical,
    predict_ml,
    quadratic_tipping,
    scale_cml,
    scale_ft,
    seaice_bistable,
    seaice_normalize,
    seaice_tipping,
    seaice_tipping_averaged,
    seaice_xstar,
    shift_ft_mean,
    simulate_canonical_tipping,
    simulate_ml_tipping,
    simulate_seaice_tipping,
    slow_equilibrium,
    with_h_alpha,
)
