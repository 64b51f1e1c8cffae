import json

import numpy as np
import pytest

from icnof import (
    ChannelParams,
    CoefficientSet,
    InputError,
    InterferenceTooWeak,
    Scenario,
    SymmetricSpec,
    classify,
    db_to_linear,
    derive_params,
    from_symmetric,
    params_from_dict,
)
from icnof.gaps import sample_channel


def test_derive_params_example():
    coeffs = CoefficientSet(h_fwd_11=2, h_fwd_22=3, h_12=2, h_21=2, h_fb_11=1, h_fb_22=1)
    p = derive_params(coeffs)
    assert p.snr_1 == 4
    assert p.snr_2 == 9
    assert p.inr_12 == 4
    assert p.inr_21 == 4
    assert p.snr_fb_1 == 17
    assert p.snr_fb_2 == 26


def test_derive_params_weak_interference_rejected():
    coeffs = CoefficientSet(2, 3, 0.5, 2, 1, 1)
    with pytest.raises(InterferenceTooWeak):
        derive_params(coeffs)


def test_derive_params_zero_feedback_accepted():
    coeffs = CoefficientSet(2, 3, 2, 2, 0, 1)
    p = derive_params(coeffs)
    assert p.snr_fb_1 == 0


def test_negative_coefficient_rejected():
    with pytest.raises(ValueError):
        CoefficientSet(-1, 3, 2, 2, 1, 1)


def test_feedback_snr_at_least_gain_squared():
    rng = np.random.default_rng(3)
    for _ in range(200):
        h = rng.uniform(0.0, 5.0, size=6)
        h[2] = rng.uniform(1.1, 5.0)
        h[3] = rng.uniform(1.1, 5.0)
        p = derive_params(CoefficientSet(*h))
        assert p.snr_fb_1 >= h[4] ** 2 - 1e-12
        assert p.snr_fb_2 >= h[5] ** 2 - 1e-12


@pytest.mark.parametrize(
    "snr1,snr2,inr12,inr21,expect",
    [
        (100, 10, 20, 30, (Scenario.S1, Scenario.S4)),
        (1000, 10, 20, 30, (Scenario.S1, Scenario.S5)),
        (50, 25, 30, 20, (Scenario.S2, Scenario.S4)),
    ],
)
def test_classify_examples(snr1, snr2, inr12, inr21, expect):
    pair = classify(ChannelParams(snr1, snr2, inr12, inr21, 1.0, 1.0))
    assert (pair.s1, pair.s2) == expect


def test_classify_exhaustive_and_exclusive():
    # classify() asserts internally that exactly one event matches per side.
    rng = np.random.default_rng(11)
    pairs = set()
    for _ in range(10000):
        p = sample_channel(rng, (0.5, 70.0), (0.2, 70.0), (0.5, 70.0))
        sp = classify(p)
        pairs.add((sp.s1, sp.s2))
        assert (sp.s1, sp.s2) != (Scenario.S2, Scenario.S2)
        assert (sp.s1, sp.s2) != (Scenario.S3, Scenario.S3)
    # all 23 feasible combinations show up at these ranges
    assert len(pairs) == 23


def test_classify_swap_symmetry():
    rng = np.random.default_rng(5)
    for _ in range(500):
        p = sample_channel(rng, (0.5, 60.0), (0.2, 60.0))
        sp = classify(p)
        sw = classify(p.swapped())
        assert (sw.s1, sw.s2) == (sp.s2, sp.s1)


def test_from_symmetric_example():
    p = from_symmetric(SymmetricSpec(snr=100, alpha=0.5, beta=1.0))
    assert p.snr_1 == p.snr_2 == 100
    assert p.inr_12 == p.inr_21 == pytest.approx(10.0)
    assert p.snr_fb_1 == p.snr_fb_2 == pytest.approx(100.0)


def test_from_symmetric_weak_interference():
    with pytest.raises(InterferenceTooWeak):
        from_symmetric(SymmetricSpec(snr=100, alpha=0.0, beta=1.0))


def test_from_symmetric_large_exponents():
    p = from_symmetric(SymmetricSpec(snr=1e6, alpha=1.05, beta=1.2))
    assert p.inr_12 == pytest.approx(10 ** 6.3)
    assert p.snr_fb_1 == pytest.approx(10 ** 7.2)


def test_channel_params_validation():
    with pytest.raises(InterferenceTooWeak):
        ChannelParams(10, 10, 0.9, 5, 1, 1)
    with pytest.raises(ValueError):
        ChannelParams(0, 10, 5, 5, 1, 1)
    with pytest.raises(ValueError):
        ChannelParams(10, 10, 5, 5, -1, 1)


def test_params_from_dict_linear_and_db():
    linear = {"snr1": 100.0, "snr2": 50.0, "inr12": 10.0, "inr21": 20.0, "snr_fb1": 5.0, "snr_fb2": 0.0}
    p = params_from_dict(linear)
    assert p.snr_1 == 100.0 and p.snr_fb_2 == 0.0
    db = {k + "_db": 10 for k in linear}
    q = params_from_dict(db)
    assert q.snr_1 == pytest.approx(10.0)
    assert q.inr_21 == pytest.approx(10.0)


def test_params_from_dict_rejects_mixed_and_unknown():
    base = {"snr1": 1.0, "snr2": 1.0, "inr12": 2.0, "inr21": 2.0, "snr_fb1": 0.0, "snr_fb2": 0.0}
    mixed = dict(base)
    mixed.pop("snr1")
    mixed["snr1_db"] = 0.0
    with pytest.raises(InputError):
        params_from_dict(mixed)
    unknown = dict(base, bogus=1.0)
    with pytest.raises(InputError):
        params_from_dict(unknown)
    missing = dict(base)
    missing.pop("inr12")
    with pytest.raises(InputError):
        params_from_dict(missing)
    bad_type = dict(base, snr1="one hundred")
    with pytest.raises(InputError):
        params_from_dict(bad_type)


def test_db_conversion_roundtrip():
    assert db_to_linear(20.0) == pytest.approx(100.0)
    assert db_to_linear(0.0) == 1.0
