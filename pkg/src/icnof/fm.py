"""Independent check of the projected rate region.

The split-rate system constrains six nonnegative per-message rates through
fourteen inequalities; projecting onto (R1, R2) is claimed to give the same
five-bound polytope the inner region uses.  This module evaluates both
sides: ``fm_bounds`` computes the projected caps directly from the theta
terms, and ``split_feasible`` searches for an explicit split on a grid.
``equivalence_check`` plays them against each other over a rate grid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .achievable import CodingScheme, a_terms
from .channel import ChannelParams
from .errors import EquivalenceFailure
from .geometry import BoundSet, RatePair

__all__ = [
    "ThetaVector",
    "RateSplit",
    "theta_from_scheme",
    "fm_bounds",
    "split_feasible",
    "equivalence_check",
]


@dataclass(frozen=True, slots=True)
class ThetaVector:
    """Right-hand sides of the fourteen split-rate constraints (bits)."""

    t1_1: float
    t1_2: float
    t2_1: float
    t2_2: float
    t3_1: float
    t3_2: float
    t4_1: float
    t4_2: float
    t5_1: float
    t5_2: float
    t6_1: float
    t6_2: float
    t7_1: float
    t7_2: float

    def __post_init__(self):
        for name in self.__dataclass_fields__:
            value = getattr(self, name)
            if not (value >= 0.0 and np.isfinite(value)):
                raise ValueError(f"{name} must be a finite nonnegative real, got {value!r}")


@dataclass(frozen=True, slots=True)
class RateSplit:
    """One split of (R1, R2) into common-1, common-2 and private parts."""

    r_c1_1: float
    r_c2_1: float
    r_p_1: float
    r_c1_2: float
    r_c2_2: float
    r_p_2: float


def theta_from_scheme(params: ChannelParams, scheme: CodingScheme) -> ThetaVector:
    """Theta terms realized by a Gaussian input with the given scheme."""
    a = a_terms(params, scheme)
    return ThetaVector(
        t1_1=a.a3_1,
        t1_2=a.a3_2,
        t2_1=a.a2_1,
        t2_2=a.a2_2,
        t3_1=a.a4_1,
        t3_2=a.a4_2,
        t4_1=a.a1_1,
        t4_2=a.a1_2,
        t5_1=a.a5_1,
        t5_2=a.a5_2,
        t6_1=a.a6_1,
        t6_2=a.a6_2,
        t7_1=a.a7_1,
        t7_2=a.a7_2,
    )


def adversarial_theta(rng) -> ThetaVector:
    """Stress vector: realized terms with the decoder caps shrunk.

    Keeps the ordering structure the projection relies on while forcing the
    sum constraints to bind (t2 far below t4's usual dominance pattern).
    """
    from dataclasses import replace

    from .achievable import rho_max
    from .gaps import sample_channel

    params = sample_channel(rng)
    scheme = CodingScheme(
        rho=float(rng.uniform(0.0, rho_max(params))),
        mu1=float(rng.uniform()),
        mu2=float(rng.uniform()),
    )
    t = theta_from_scheme(params, scheme)
    f1 = float(rng.uniform(0.02, 0.5))
    f2 = float(rng.uniform(0.02, 0.5))
    return replace(
        t,
        t2_1=min(t.t2_1 * f1, t.t4_1 * 0.8),
        t2_2=min(t.t2_2 * f2, t.t4_2 * 0.8),
    )


def fm_bounds(theta: ThetaVector) -> BoundSet:
    """Five family caps of the projection onto (R1, R2)."""
    t = theta
    c_r1 = min(t.t2_1, t.t6_1 + t.t1_2, t.t4_1 + t.t1_2 + t.t3_2)
    c_r2 = min(t.t2_2, t.t1_1 + t.t6_2, t.t1_1 + t.t3_1 + t.t4_2)
    c_sum = min(
        t.t2_1 + t.t4_2,
        t.t2_1 + t.t6_2,
        t.t4_1 + t.t2_2,
        t.t6_1 + t.t2_2,
        t.t1_1 + t.t3_1 + t.t4_1 + t.t1_2 + t.t5_2,
        t.t1_1 + t.t7_1 + t.t1_2 + t.t5_2,
        t.t1_1 + t.t4_1 + t.t1_2 + t.t7_2,
        t.t1_1 + t.t5_1 + t.t1_2 + t.t3_2 + t.t4_2,
        t.t1_1 + t.t5_1 + t.t1_2 + t.t5_2,
        t.t1_1 + t.t7_1 + t.t1_2 + t.t4_2,
    )
    c_21 = min(
        t.t2_1 + t.t4_1 + t.t1_2 + t.t7_2,
        t.t1_1 + t.t4_1 + t.t7_1 + 2.0 * t.t1_2 + t.t5_2,
        t.t2_1 + t.t4_1 + t.t1_2 + t.t5_2,
    )
    c_12 = min(
        t.t1_1 + t.t5_1 + t.t2_2 + t.t4_2,
        t.t1_1 + t.t7_1 + t.t2_2 + t.t4_2,
        2.0 * t.t1_1 + t.t5_1 + t.t1_2 + t.t4_2 + t.t7_2,
    )
    return BoundSet(c_r1, c_r2, c_sum, c_21, c_12)


def _grid_value(k: int, step: float, last: int, endpoint: float) -> float:
    # Uniform grid over [0, endpoint] mimicking linspace: exact endpoints.
    if k <= 0:
        return 0.0
    if k >= last:
        return endpoint
    return k * step


def _floor_grid(x: float, step: float, last: int, endpoint: float) -> int:
    """Largest grid index whose value is <= x (up to ulp-scale slack), or -1.

    The slack only widens candidate selection; final witnesses are verified
    against the exact constraints, so it cannot create false positives.
    """
    tol = 1e-9 * step
    if x < -tol:
        return -1
    if x >= endpoint - tol:
        return last
    if step <= 0.0:
        return 0
    k = min(int(x / step) + 2, last)
    while k > 0 and _grid_value(k, step, last, endpoint) > x + tol:
        k -= 1
    return k


def _ceil_grid(x: float, step: float, last: int, endpoint: float) -> int:
    """Smallest grid index whose value is >= x (up to ulp-scale slack)."""
    tol = 1e-9 * step
    if x <= tol:
        return 0
    if x > endpoint + tol:
        return last + 1
    if step <= 0.0:
        return last + 1
    k = max(int(x / step) - 2, 0)
    while k <= last and _grid_value(k, step, last, endpoint) < x - tol:
        k += 1
    return k


def _verify_split(theta: ThetaVector, R1: float, R2: float, split: RateSplit) -> bool:
    t = theta
    s = split
    parts = (s.r_c1_1, s.r_c2_1, s.r_p_1, s.r_c1_2, s.r_c2_2, s.r_p_2)
    if any(x < 0.0 for x in parts):
        return False
    return (
        s.r_c1_2 <= t.t1_1
        and R1 + s.r_c1_2 + s.r_c2_2 <= t.t2_1
        and s.r_c2_2 <= t.t3_1
        and s.r_p_1 <= t.t4_1
        and s.r_p_1 + s.r_c2_2 <= t.t5_1
        and s.r_c2_1 + s.r_p_1 <= t.t6_1
        and s.r_c2_1 + s.r_p_1 + s.r_c2_2 <= t.t7_1
        and s.r_c1_1 <= t.t1_2
        and R2 + s.r_c1_1 + s.r_c2_1 <= t.t2_2
        and s.r_c2_1 <= t.t3_2
        and s.r_p_2 <= t.t4_2
        and s.r_p_2 + s.r_c2_1 <= t.t5_2
        and s.r_c2_2 + s.r_p_2 <= t.t6_2
        and s.r_c2_2 + s.r_p_2 + s.r_c2_1 <= t.t7_2
    )


def _find_split(theta: ThetaVector, R1: float, R2: float, resolution: int):
    """Search the split grid for a verified feasible split, or None.

    The grid runs over the four free components (the two private rates are
    pinned by the sum equalities).  For fixed common-2 components the
    remaining two dimensions decouple into independent index intervals, so
    the search is exhaustive without enumerating the full 4-d product.
    """
    t = theta
    last1 = resolution - 1 if R1 > 0.0 else 0
    last2 = resolution - 1 if R2 > 0.0 else 0
    step1 = R1 / last1 if last1 else 0.0
    step2 = R2 / last2 if last2 else 0.0

    # Admissible p2-range and the u-grid interval, per z1 index.
    z_entries = []
    for kz in range(last1 + 1):
        z1 = _grid_value(kz, step1, last1, R1)
        if z1 > t.t3_2:
            break
        gu = min(R1 - z1, t.t1_2, t.t2_2 - R2 - z1)
        ku = _floor_grid(gu, step1, last1, R1)
        if ku < 0:
            continue
        gu_star = _grid_value(ku, step1, last1, R1)
        eu = max(0.0, R1 - z1 - t.t4_1, R1 - t.t6_1)
        if eu > gu_star:
            continue
        fu = max(R1 - z1 - t.t5_1, R1 - t.t7_1)
        z_entries.append((kz, z1, gu_star - fu))
    if not z_entries:
        return None

    p_entries = []
    for kp in range(last2 + 1):
        p2 = _grid_value(kp, step2, last2, R2)
        if p2 > t.t3_1:
            break
        gv = min(R2 - p2, t.t1_1, t.t2_1 - R1 - p2)
        kv = _floor_grid(gv, step2, last2, R2)
        if kv < 0:
            continue
        gv_star = _grid_value(kv, step2, last2, R2)
        ev = max(0.0, R2 - p2 - t.t4_2, R2 - t.t6_2)
        if ev > gv_star:
            continue
        fv = max(R2 - p2 - t.t5_2, R2 - t.t7_2)
        p_entries.append((kp, p2, gv_star - fv))
    if not p_entries:
        return None

    for kz, z1, p2_cap in z_entries:
        for kp, p2, z1_cap in p_entries:
            if p2 > p2_cap or z1 > z1_cap:
                continue
            lu = max(0.0, R1 - z1 - t.t4_1, R1 - z1 + p2 - t.t5_1, R1 - t.t6_1, R1 + p2 - t.t7_1)
            lv = max(0.0, R2 - p2 - t.t4_2, R2 - p2 + z1 - t.t5_2, R2 - t.t6_2, R2 + z1 - t.t7_2)
            ku = _ceil_grid(lu, step1, last1, R1)
            kv = _ceil_grid(lv, step2, last2, R2)
            # A couple of upward nudges absorb rounding at the interval ends.
            for du in range(3):
                if ku + du > last1:
                    break
                u = _grid_value(ku + du, step1, last1, R1)
                for dv in range(3):
                    if kv + dv > last2:
                        break
                    v = _grid_value(kv + dv, step2, last2, R2)
                    rp1 = R1 - u - z1
                    rp2 = R2 - v - p2
                    if -1e-12 * max(1.0, R1) < rp1 < 0.0:
                        rp1 = 0.0
                    if -1e-12 * max(1.0, R2) < rp2 < 0.0:
                        rp2 = 0.0
                    split = RateSplit(u, z1, rp1, v, p2, rp2)
                    if _verify_split(theta, R1, R2, split):
                        return split
    return None


def split_feasible(theta: ThetaVector, p: RatePair, resolution: int = 64) -> bool:
    """True iff a feasible split exists on the uniform grid."""
    if resolution < 8:
        raise ValueError("resolution must be >= 8")
    return _find_split(theta, p.r1, p.r2, resolution) is not None


def equivalence_check(theta: ThetaVector, rate_grid: int = 64, resolution: int = 64) -> dict:
    """Cross-validate the projected caps against grid split feasibility.

    Soundness is exact: any split-feasible point must satisfy every family
    cap.  Completeness holds at margin 2 * max-cap / resolution: any point
    inside all caps by that margin must admit a grid split.  Raises
    EquivalenceFailure with witnesses when either direction fails.
    """
    if rate_grid < 16:
        raise ValueError("rate_grid must be >= 16")
    if resolution < 8:
        raise ValueError("resolution must be >= 8")
    bs = fm_bounds(theta)
    caps = np.array(bs.as_row())
    max_bound = float(caps.max())
    margin = 2.0 * max_bound / resolution

    xs = np.linspace(0.0, bs.c_r1, rate_grid)
    ys = np.linspace(0.0, bs.c_r2, rate_grid)
    violations = []
    checked = 0
    for x in xs:
        for y in ys:
            checked += 1
            lhs = np.array([x, y, x + y, 2.0 * x + y, x + 2.0 * y])
            slack = float((caps - lhs).min())
            feasible = _find_split(theta, float(x), float(y), resolution) is not None
            if feasible and slack < 0.0:
                violations.append(
                    {"kind": "soundness", "point": [float(x), float(y)], "slack": slack}
                )
            elif not feasible and slack >= margin:
                violations.append(
                    {"kind": "completeness", "point": [float(x), float(y)], "slack": slack}
                )
    report = {
        "checked": checked,
        "rate_grid": rate_grid,
        "resolution": resolution,
        "margin": margin,
        "violations": violations,
    }
    if violations:
        raise EquivalenceFailure(
            f"{len(violations)} violation(s) on a {rate_grid}x{rate_grid} rate grid",
            report=report,
        )
    return report
