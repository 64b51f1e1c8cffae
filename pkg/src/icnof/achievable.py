"""Inner (achievable) rate region for a fixed channel.

For a coding scheme (rho, mu1, mu2) the region is a polytope described by
five family caps: R1, R2, R1+R2, 2R1+R2 and R1+2R2.  The full achievable
region is the union of these polytopes over a grid of schemes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import ChannelParams
from .errors import DomainError
from .geometry import BoundSet, Region

__all__ = [
    "CodingScheme",
    "AuxTerms",
    "AchievableTerms",
    "GridSpec",
    "rho_max",
    "aux_terms",
    "a_terms",
    "achievable_bounds",
    "achievable_union",
]


@dataclass(frozen=True, slots=True)
class CodingScheme:
    """Common-message correlation rho and the two splitting fractions.

    rho additionally has to satisfy rho <= rho_max(params) for the channel
    it is used with; that pairing is validated at the evaluation sites.
    """

    rho: float
    mu1: float
    mu2: float

    def __post_init__(self):
        if not (0.0 <= self.rho <= 1.0):
            raise DomainError(f"rho must be in [0, 1], got {self.rho!r}")
        if not (0.0 <= self.mu1 <= 1.0 and 0.0 <= self.mu2 <= 1.0):
            raise DomainError(f"mu fractions must be in [0, 1], got ({self.mu1!r}, {self.mu2!r})")


@dataclass(frozen=True, slots=True)
class AuxTerms:
    """The two quadratic receive-power terms per pair, at a given rho.

    ``b1_i_at1`` is the rho = 1 value, which enters the feedback-decoding
    term regardless of the scheme's rho.
    """

    b1_1: float
    b1_2: float
    b2_1: float
    b2_2: float
    b1_1_at1: float
    b1_2_at1: float


@dataclass(frozen=True, slots=True)
class AchievableTerms:
    """The seven per-pair rate terms evaluated at one coding scheme (bits)."""

    a1_1: float
    a1_2: float
    a2_1: float
    a2_2: float
    a3_1: float
    a3_2: float
    a4_1: float
    a4_2: float
    a5_1: float
    a5_2: float
    a6_1: float
    a6_2: float
    a7_1: float
    a7_2: float


@dataclass(frozen=True, slots=True)
class GridSpec:
    """Grid resolutions and tolerances used by the region/gap machinery."""

    rho_steps: int = 33
    mu_steps: int = 17
    conv_rho_steps: int = 257
    frontier_samples: int = 512
    tol: float = 1e-6

    def __post_init__(self):
        if self.rho_steps < 2 or self.mu_steps < 2 or self.conv_rho_steps < 2:
            raise ValueError("grid resolutions must be >= 2 per axis")
        if self.frontier_samples < 3:
            raise ValueError("frontier_samples must be >= 3")
        if not self.tol > 0.0:
            raise ValueError("tol must be > 0")


def rho_max(params: ChannelParams) -> float:
    """Largest admissible common-message correlation for this channel."""
    return max(0.0, 1.0 - max(1.0 / params.inr_12, 1.0 / params.inr_21))


def _b1(snr, inr, rho):
    return snr + 2.0 * rho * np.sqrt(snr * inr) + inr


def _b2(inr, rho):
    return (1.0 - rho) * inr - 1.0


def _check_rho(params: ChannelParams, rho: float) -> None:
    limit = rho_max(params)
    if not (0.0 <= rho <= limit):
        raise DomainError(f"rho={rho!r} outside [0, {limit!r}] for this channel")


def aux_terms(params: ChannelParams, rho: float) -> AuxTerms:
    _check_rho(params, rho)
    return AuxTerms(
        b1_1=float(_b1(params.snr_1, params.inr_12, rho)),
        b1_2=float(_b1(params.snr_2, params.inr_21, rho)),
        b2_1=float(_b2(params.inr_12, rho)),
        b2_2=float(_b2(params.inr_21, rho)),
        b1_1_at1=float(_b1(params.snr_1, params.inr_12, 1.0)),
        b1_2_at1=float(_b1(params.snr_2, params.inr_21, 1.0)),
    )


def _a_arrays(params: ChannelParams, rho, mu1, mu2):
    """All fourteen rate terms over broadcastable scheme arrays.

    ``a3_i``/``a4_i``/``a5_i`` are evaluated at the other pair's splitting
    fraction and ``a6_i`` at its own, matching how they enter the region.
    Every term is clamped at zero.
    """
    s1, s2 = params.snr_1, params.snr_2
    i12, i21 = params.inr_12, params.inr_21
    f1, f2 = params.snr_fb_1, params.snr_fb_2

    rho = np.asarray(rho, dtype=float)
    mu1 = np.asarray(mu1, dtype=float)
    mu2 = np.asarray(mu2, dtype=float)

    b1_1 = _b1(s1, i12, rho)
    b1_2 = _b1(s2, i21, rho)
    b2_1 = _b2(i12, rho)
    b2_2 = _b2(i21, rho)
    b1_1f = _b1(s1, i12, 1.0)
    b1_2f = _b1(s2, i21, 1.0)

    r1 = s1 / i21
    r2 = s2 / i12

    rem_1 = (1.0 - mu2) * b2_1  # non-common interference power seen at rx 1
    rem_2 = (1.0 - mu1) * b2_2

    a = {
        "a1_1": 0.5 * np.log2(2.0 + r1) - 0.5 + 0.0 * rho,
        "a1_2": 0.5 * np.log2(2.0 + r2) - 0.5 + 0.0 * rho,
        "a2_1": 0.5 * np.log2(b1_1 + 1.0) - 0.5,
        "a2_2": 0.5 * np.log2(b1_2 + 1.0) - 0.5,
        "a3_1": 0.5 * np.log2((f1 * (b2_1 + 2.0) + b1_1f + 1.0) / (f1 * (rem_1 + 2.0) + b1_1f + 1.0)),
        "a3_2": 0.5 * np.log2((f2 * (b2_2 + 2.0) + b1_2f + 1.0) / (f2 * (rem_2 + 2.0) + b1_2f + 1.0)),
        "a4_1": 0.5 * np.log2(rem_1 + 2.0) - 0.5,
        "a4_2": 0.5 * np.log2(rem_2 + 2.0) - 0.5,
        "a5_1": 0.5 * np.log2(2.0 + r1 + rem_1) - 0.5,
        "a5_2": 0.5 * np.log2(2.0 + r2 + rem_2) - 0.5,
        "a6_1": 0.5 * np.log2(r1 * ((1.0 - mu1) * b2_2 + 1.0) + 2.0) - 0.5,
        "a6_2": 0.5 * np.log2(r2 * ((1.0 - mu2) * b2_1 + 1.0) + 2.0) - 0.5,
        "a7_1": 0.5 * np.log2(r1 * ((1.0 - mu1) * b2_2 + 1.0) + rem_1 + 2.0) - 0.5,
        "a7_2": 0.5 * np.log2(r2 * ((1.0 - mu2) * b2_1 + 1.0) + rem_2 + 2.0) - 0.5,
    }
    return {k: np.maximum(v, 0.0) for k, v in a.items()}


def _family_caps(a):
    """Five family caps from the term arrays; clamped at zero."""
    c_r1 = np.minimum(
        a["a2_1"],
        np.minimum(a["a6_1"] + a["a3_2"], a["a1_1"] + a["a3_2"] + a["a4_2"]),
    )
    c_r2 = np.minimum(
        a["a2_2"],
        np.minimum(a["a3_1"] + a["a6_2"], a["a3_1"] + a["a4_1"] + a["a1_2"]),
    )
    sum_terms = [
        a["a2_1"] + a["a1_2"],
        a["a1_1"] + a["a2_2"],
        a["a3_1"] + a["a1_1"] + a["a3_2"] + a["a7_2"],
        a["a3_1"] + a["a5_1"] + a["a3_2"] + a["a5_2"],
        a["a3_1"] + a["a7_1"] + a["a3_2"] + a["a1_2"],
    ]
    c_sum = sum_terms[0]
    for t in sum_terms[1:]:
        c_sum = np.minimum(c_sum, t)
    c_21 = np.minimum(
        a["a2_1"] + a["a1_1"] + a["a3_2"] + a["a7_2"],
        np.minimum(
            a["a3_1"] + a["a1_1"] + a["a7_1"] + 2.0 * a["a3_2"] + a["a5_2"],
            a["a2_1"] + a["a1_1"] + a["a3_2"] + a["a5_2"],
        ),
    )
    c_12 = np.minimum(
        a["a3_1"] + a["a5_1"] + a["a2_2"] + a["a1_2"],
        np.minimum(
            a["a3_1"] + a["a7_1"] + a["a2_2"] + a["a1_2"],
            2.0 * a["a3_1"] + a["a5_1"] + a["a3_2"] + a["a1_2"] + a["a7_2"],
        ),
    )
    caps = (c_r1, c_r2, c_sum, c_21, c_12)
    return tuple(np.maximum(c, 0.0) for c in caps)


def a_terms(params: ChannelParams, scheme: CodingScheme) -> AchievableTerms:
    """Evaluate the fourteen rate terms for one scheme."""
    _check_rho(params, scheme.rho)
    a = _a_arrays(params, scheme.rho, scheme.mu1, scheme.mu2)
    return AchievableTerms(**{k: float(v) for k, v in a.items()})


def achievable_bounds(params: ChannelParams, scheme: CodingScheme) -> BoundSet:
    """Five-bound polytope achieved by one coding scheme."""
    _check_rho(params, scheme.rho)
    a = _a_arrays(params, scheme.rho, scheme.mu1, scheme.mu2)
    c_r1, c_r2, c_sum, c_21, c_12 = (float(c) for c in _family_caps(a))
    return BoundSet(c_r1, c_r2, c_sum, c_21, c_12)


def achievable_union(params: ChannelParams, grid: GridSpec = GridSpec()) -> Region:
    """Union of the per-scheme polytopes over the scheme grid.

    One BoundSet per grid point of (rho, mu1, mu2), rho uniform on
    [0, rho_max], mu uniform on [0, 1].  Membership in the region is
    membership in at least one BoundSet.
    """
    rho = np.linspace(0.0, rho_max(params), grid.rho_steps)
    mu = np.linspace(0.0, 1.0, grid.mu_steps)
    a = _a_arrays(
        params,
        rho[:, None, None],
        mu[None, :, None],
        mu[None, None, :],
    )
    caps = _family_caps(a)
    matrix = np.stack([np.broadcast_to(c, caps[2].shape).ravel() for c in caps], axis=1)
    return Region.from_matrix(matrix)
