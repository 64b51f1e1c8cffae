"""Outer (converse) rate region for a fixed channel.

At each correlation rho in [0, 1] the region is a five-bound polytope whose
caps come from the kappa functions; two of those (the sum cap and the
weighted caps) dispatch on the interference scenario of each pair.  The
full outer region is the union of the per-rho polytopes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelParams, Scenario, ScenarioPair, classify
from .errors import DomainError
from .geometry import BoundSet, Region

__all__ = [
    "ConverseAuxTerms",
    "ConverseEvaluation",
    "converse_aux",
    "converse_bounds",
    "converse_union",
    "LOG2_2PIE",
]

LOG2_2PIE = math.log2(2.0 * math.pi * math.e)

# Scenario groups driving the dispatch of the sum and weighted caps.
_GROUP_A = (Scenario.S1, Scenario.S2, Scenario.S5)


@dataclass(frozen=True, slots=True)
class ConverseAuxTerms:
    """Constants b3_i and the rho-dependent b4/b5/b6 terms."""

    b3_1: float
    b3_2: float
    b4_1: float
    b4_2: float
    b5_1: float
    b5_2: float
    b6_1: float
    b6_2: float


@dataclass(frozen=True, slots=True)
class ConverseEvaluation:
    """All kappa values at one rho, plus the scenario pair used for dispatch."""

    rho: float
    k1_1: float
    k1_2: float
    k2_1: float
    k2_2: float
    k3_1: float
    k3_2: float
    k4: float
    k5: float
    k6: float
    k7_1: float
    k7_2: float
    scenarios: ScenarioPair

    def bound_set(self) -> BoundSet:
        return BoundSet(
            c_r1=min(self.k1_1, self.k2_1, self.k3_1),
            c_r2=min(self.k1_2, self.k2_2, self.k3_2),
            c_sum=min(self.k4, self.k5, self.k6),
            c_2r1_r2=self.k7_1,
            c_r1_2r2=self.k7_2,
        )


def _check_rho(rho: float) -> None:
    if not (0.0 <= rho <= 1.0):
        raise DomainError(f"rho must be in [0, 1], got {rho!r}")


def _b3(snr, inr_ji):
    return snr - 2.0 * np.sqrt(snr * inr_ji) + inr_ji


def _b6(snr, inr_ij, inr_ji, rho):
    return (
        snr
        + inr_ij
        + 2.0 * rho * np.sqrt(inr_ij) * (np.sqrt(snr) - np.sqrt(inr_ji))
        + (inr_ij * np.sqrt(inr_ji) / snr) * (np.sqrt(inr_ji) - 2.0 * np.sqrt(snr))
    )


def converse_aux(params: ChannelParams, rho: float) -> ConverseAuxTerms:
    _check_rho(rho)
    one_m = 1.0 - rho * rho
    return ConverseAuxTerms(
        b3_1=float(_b3(params.snr_1, params.inr_21)),
        b3_2=float(_b3(params.snr_2, params.inr_12)),
        b4_1=float(one_m * params.snr_1),
        b4_2=float(one_m * params.snr_2),
        b5_1=float(one_m * params.inr_12),
        b5_2=float(one_m * params.inr_21),
        b6_1=float(_b6(params.snr_1, params.inr_12, params.inr_21, rho)),
        b6_2=float(_b6(params.snr_2, params.inr_21, params.inr_12, rho)),
    )


def _kappa_arrays(params: ChannelParams, rho, scenarios: ScenarioPair):
    """All kappa curves over a rho array, with the scenario-fixed dispatch."""
    s1, s2 = params.snr_1, params.snr_2
    i12, i21 = params.inr_12, params.inr_21
    f1, f2 = params.snr_fb_1, params.snr_fb_2

    rho = np.asarray(rho, dtype=float)
    one_m = 1.0 - rho * rho
    b1_1 = s1 + 2.0 * rho * np.sqrt(s1 * i12) + i12
    b1_2 = s2 + 2.0 * rho * np.sqrt(s2 * i21) + i21
    b1_1f = s1 + 2.0 * np.sqrt(s1 * i12) + i12
    b1_2f = s2 + 2.0 * np.sqrt(s2 * i21) + i21
    b3_1 = _b3(s1, i21)
    b3_2 = _b3(s2, i12)
    b4_1 = one_m * s1
    b4_2 = one_m * s2
    b5_1 = one_m * i12
    b5_2 = one_m * i21
    b6_1 = _b6(s1, i12, i21, rho)
    b6_2 = _b6(s2, i21, i12, rho)

    half = 0.5

    k1_1 = half * np.log2(b1_1 + 1.0)
    k1_2 = half * np.log2(b1_2 + 1.0)
    k2_1 = half * np.log2(1.0 + b5_2) + half * np.log2(1.0 + b4_1 / (1.0 + b5_2))
    k2_2 = half * np.log2(1.0 + b5_1) + half * np.log2(1.0 + b4_2 / (1.0 + b5_1))
    k3_1 = half * np.log2(
        (b4_1 + b5_2 + 1.0) * f2 / ((b1_2f + 1.0) * (b4_1 + 1.0)) + 1.0
    ) + half * np.log2(b4_1 + 1.0)
    k3_2 = half * np.log2(
        (b4_2 + b5_1 + 1.0) * f1 / ((b1_1f + 1.0) * (b4_2 + 1.0)) + 1.0
    ) + half * np.log2(b4_2 + 1.0)
    k4 = half * np.log2(1.0 + b4_1 / (1.0 + b5_2)) + half * np.log2(b1_2 + 1.0)
    k5 = half * np.log2(1.0 + b4_2 / (1.0 + b5_1)) + half * np.log2(b1_1 + 1.0)

    # Feedback leakage terms reused by several sum-cap variants.
    fb1 = half * np.log2(1.0 + b5_1 * f1 / (b1_1f + 1.0))
    fb2 = half * np.log2(1.0 + b5_2 * f2 / (b1_2f + 1.0))

    pair1_high = scenarios.s1 in _GROUP_A
    pair2_high = scenarios.s2 in _GROUP_A

    if pair2_high and pair1_high:
        k6 = (
            half * np.log2(b1_1 + b5_1 * i21)
            - half * np.log2(1.0 + i12)
            + fb2
            + half * np.log2(b1_2 + b5_1 * i21)
            - half * np.log2(1.0 + i21)
            + fb1
            + LOG2_2PIE
        )
    elif pair2_high and not pair1_high:
        k6 = (
            half * np.log2(b6_2 + (b5_1 * i21 / s2) * (s2 + b3_2))
            - half * np.log2(1.0 + i12)
            + fb1
            + half * np.log2(b1_1 + b5_1 * i21)
            - half * np.log2(1.0 + i21)
            + half * np.log2(1.0 + (b5_2 / s2) * (i12 + b3_2 * f2 / (b1_2f + 1.0)))
            - half * np.log2(1.0 + b5_1 * i21 / s2)
            + LOG2_2PIE
        )
    elif not pair2_high and pair1_high:
        k6 = (
            half * np.log2(b6_1 + (b5_1 * i21 / s1) * (s1 + b3_1))
            - half * np.log2(1.0 + i12)
            + fb2
            + half * np.log2(b1_2 + b5_1 * i21)
            - half * np.log2(1.0 + i21)
            + half * np.log2(1.0 + (b5_1 / s1) * (i21 + b3_1 * f1 / (b1_1f + 1.0)))
            - half * np.log2(1.0 + b5_1 * i21 / s1)
            + LOG2_2PIE
        )
    else:
        k6 = (
            half * np.log2(b6_1 + (b5_1 * i21 / s1) * (s1 + b3_1))
            - half * np.log2(1.0 + i12)
            - half * np.log2(1.0 + i21)
            + half * np.log2(1.0 + (b5_2 / s2) * (i12 + b3_2 * f2 / (b1_2f + 1.0)))
            - half * np.log2(1.0 + b5_1 * i21 / s2)
            - half * np.log2(1.0 + b5_1 * i21 / s1)
            + half * np.log2(b6_2 + (b5_1 * i21 / s2) * (s2 + b3_2))
            + half * np.log2(1.0 + (b5_1 / s1) * (i21 + b3_1 * f1 / (b1_1f + 1.0)))
            + LOG2_2PIE
        )

    if pair1_high:
        k7_1 = (
            half * np.log2(b1_1 + 1.0)
            - half * np.log2(1.0 + i12)
            + fb2
            + half * np.log2(b1_2 + b5_1 * i21)
            + half * np.log2(1.0 + b4_1 + b5_2)
            - half * np.log2(1.0 + b5_2)
            + 2.0 * LOG2_2PIE
        )
    else:
        k7_1 = (
            half * np.log2(b1_1 + 1.0)
            - half * np.log2(1.0 + i12)
            - half * np.log2(1.0 + b5_2)
            + half * np.log2(1.0 + b4_1 + b5_2)
            + half * np.log2(1.0 + one_m * (i21 / s2) * (i12 + b3_2 * f2 / (b1_2f + 1.0)))
            - half * np.log2(1.0 + b5_1 * i21 / s2)
            + half * np.log2(b6_2 + (b5_1 * i21 / s2) * (s2 + b3_2))
            + 2.0 * LOG2_2PIE
        )

    if pair2_high:
        k7_2 = (
            half * np.log2(b1_2 + 1.0)
            - half * np.log2(1.0 + i21)
            + fb1
            + half * np.log2(b1_1 + b5_2 * i12)
            + half * np.log2(1.0 + b4_2 + b5_1)
            - half * np.log2(1.0 + b5_1)
            + 2.0 * LOG2_2PIE
        )
    else:
        k7_2 = (
            half * np.log2(b1_2 + 1.0)
            - half * np.log2(1.0 + i21)
            - half * np.log2(1.0 + b5_1)
            + half * np.log2(1.0 + b4_2 + b5_1)
            + half * np.log2(1.0 + one_m * (i12 / s1) * (i21 + b3_1 * f1 / (b1_1f + 1.0)))
            - half * np.log2(1.0 + b5_2 * i12 / s1)
            + half * np.log2(b6_1 + (b5_2 * i12 / s1) * (s1 + b3_1))
            + 2.0 * LOG2_2PIE
        )

    ks = {
        "k1_1": k1_1,
        "k1_2": k1_2,
        "k2_1": k2_1,
        "k2_2": k2_2,
        "k3_1": k3_1,
        "k3_2": k3_2,
        "k4": k4,
        "k5": k5,
        "k6": k6,
        "k7_1": k7_1,
        "k7_2": k7_2,
    }
    return {k: np.maximum(v, 0.0) for k, v in ks.items()}


def converse_bounds(params: ChannelParams, rho: float) -> ConverseEvaluation:
    """All kappa values at one correlation, clamped at zero."""
    _check_rho(rho)
    scenarios = classify(params)
    ks = _kappa_arrays(params, rho, scenarios)
    return ConverseEvaluation(
        rho=rho,
        scenarios=scenarios,
        **{k: float(v) for k, v in ks.items()},
    )


def _cap_matrix(params: ChannelParams, rho: np.ndarray) -> np.ndarray:
    scenarios = classify(params)
    ks = _kappa_arrays(params, rho, scenarios)
    c_r1 = np.minimum(ks["k1_1"], np.minimum(ks["k2_1"], ks["k3_1"]))
    c_r2 = np.minimum(ks["k1_2"], np.minimum(ks["k2_2"], ks["k3_2"]))
    c_sum = np.minimum(ks["k4"], np.minimum(ks["k5"], ks["k6"]))
    return np.stack(
        [
            np.broadcast_to(c_r1, rho.shape),
            np.broadcast_to(c_r2, rho.shape),
            np.broadcast_to(c_sum, rho.shape),
            np.broadcast_to(ks["k7_1"], rho.shape),
            np.broadcast_to(ks["k7_2"], rho.shape),
        ],
        axis=1,
    )


def converse_union(params: ChannelParams, rho_steps: int = 257) -> Region:
    """Union over the rho grid of the per-rho five-bound polytopes.

    The outer bound must hold for the (unknown) encoder-chosen correlation,
    so the containing set is the union over rho in [0, 1].
    """
    if rho_steps < 2:
        raise ValueError("rho_steps must be >= 2")
    rho = np.linspace(0.0, 1.0, rho_steps)
    return Region.from_matrix(_cap_matrix(params, rho))


def family_suprema(params: ChannelParams, rho_steps: int = 257) -> np.ndarray:
    """Exact suprema of R1, R2, R1+R2, 2R1+R2 and R1+2R2 over the outer union.

    Each linear functional attains its maximum at a vertex of some per-rho
    polytope, so the suprema are read off the collected vertices.  Raw
    weighted caps can sit far above the region (their bookkeeping constants
    rarely bind); the suprema are what the gap ledger compares against.
    """
    if rho_steps < 2:
        raise ValueError("rho_steps must be >= 2")
    from .geometry import functional_suprema

    rho = np.linspace(0.0, 1.0, rho_steps)
    return functional_suprema(_cap_matrix(params, rho))
