"""Rate-region geometry: unions of five-bound polytopes in the (R1, R2) plane.

A BoundSet is the polytope {R >= 0 : R1 <= c_r1, R2 <= c_r2,
R1+R2 <= c_sum, 2R1+R2 <= c_2r1_r2, R1+2R2 <= c_r1_2r2}; a Region is a
union of BoundSets.  All regions here are downward closed, which is what
makes the Pareto frontier sufficient for membership and gap queries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "RatePair",
    "BoundSet",
    "Region",
    "GapResult",
    "contains",
    "frontier",
    "gap_xi",
]

_INF = math.inf


@dataclass(frozen=True, slots=True)
class RatePair:
    r1: float
    r2: float

    def __post_init__(self):
        if not (self.r1 >= 0.0 and self.r2 >= 0.0):
            raise ValueError(f"rates must be >= 0, got ({self.r1!r}, {self.r2!r})")


@dataclass(frozen=True, slots=True)
class BoundSet:
    """Caps on R1, R2, R1+R2, 2R1+R2 and R1+2R2 (bits; +inf allowed)."""

    c_r1: float
    c_r2: float
    c_sum: float
    c_2r1_r2: float
    c_r1_2r2: float

    def __post_init__(self):
        for name in self.__dataclass_fields__:
            value = getattr(self, name)
            if math.isnan(value) or value < 0.0:
                raise ValueError(f"{name} must be a nonnegative real or +inf, got {value!r}")

    def as_row(self):
        return (self.c_r1, self.c_r2, self.c_sum, self.c_2r1_r2, self.c_r1_2r2)


def _prune_dominated(matrix: np.ndarray) -> np.ndarray:
    """Drop BoundSets whose polytope is covered by a single other BoundSet.

    Membership, frontier and gap queries are unchanged: a set dominated
    componentwise contributes nothing to the union.
    """
    if matrix.shape[0] <= 1:
        return matrix
    # Visit in decreasing cap-sum order so dominators are seen first.
    key = np.where(np.isinf(matrix), 1e300, matrix).sum(axis=1)
    order = np.argsort(-key, kind="stable")
    kept = np.empty_like(matrix)
    n_kept = 0
    for idx in order:
        row = matrix[idx]
        if n_kept and bool(np.any(np.all(kept[:n_kept] >= row, axis=1))):
            continue
        kept[n_kept] = row
        n_kept += 1
    return kept[:n_kept].copy()


class Region:
    """Immutable union of BoundSets with vectorized query support."""

    def __init__(self, bound_sets):
        sets = tuple(bound_sets)
        if not sets:
            raise ValueError("a Region needs at least one BoundSet")
        self._bound_sets = sets
        self._matrix = np.array([b.as_row() for b in sets], dtype=float)
        self._pruned = None

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "Region":
        matrix = np.asarray(matrix, dtype=float)
        if matrix.ndim != 2 or matrix.shape[1] != 5 or matrix.shape[0] == 0:
            raise ValueError("matrix must have shape (n, 5) with n >= 1")
        if np.any(np.isnan(matrix)) or np.any(matrix < 0.0):
            raise ValueError("bound matrix entries must be nonnegative (or +inf)")
        region = cls.__new__(cls)
        region._bound_sets = None
        region._matrix = matrix.copy()
        region._pruned = None
        return region

    @property
    def bound_sets(self) -> tuple:
        if self._bound_sets is None:
            self._bound_sets = tuple(BoundSet(*map(float, row)) for row in self._matrix)
        return self._bound_sets

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    def pruned_matrix(self) -> np.ndarray:
        if self._pruned is None:
            self._pruned = _prune_dominated(self._matrix)
        return self._pruned

    def __len__(self):
        return self._matrix.shape[0]


def _contains_points(matrix: np.ndarray, pts: np.ndarray, eps: float) -> np.ndarray:
    """Vectorized membership of pts (q, 2) against a bound matrix (n, 5)."""
    r1 = pts[:, 0:1]
    r2 = pts[:, 1:2]
    ok = (
        (r1 <= matrix[None, :, 0] + eps)
        & (r2 <= matrix[None, :, 1] + eps)
        & (r1 + r2 <= matrix[None, :, 2] + eps)
        & (2.0 * r1 + r2 <= matrix[None, :, 3] + eps)
        & (r1 + 2.0 * r2 <= matrix[None, :, 4] + eps)
    )
    return ok.any(axis=1)


def contains(region: Region, p: RatePair, eps: float = 0.0) -> bool:
    """True iff some BoundSet satisfies all five constraints with slack >= -eps."""
    if eps < 0.0:
        raise ValueError("eps must be >= 0")
    pts = np.array([[p.r1, p.r2]], dtype=float)
    return bool(_contains_points(region.pruned_matrix(), pts, eps)[0])


def _sup_r1_per_set(matrix: np.ndarray) -> np.ndarray:
    return np.minimum(
        np.minimum(matrix[:, 0], matrix[:, 2]),
        np.minimum(matrix[:, 3] / 2.0, matrix[:, 4]),
    )


def _sup_r2_per_set(matrix: np.ndarray) -> np.ndarray:
    return np.minimum(
        np.minimum(matrix[:, 1], matrix[:, 2]),
        np.minimum(matrix[:, 3], matrix[:, 4] / 2.0),
    )


def _max_r2_at(matrix: np.ndarray, xs: np.ndarray) -> np.ndarray:
    """Largest feasible R2 at each R1 in xs; -inf where no set reaches."""
    x = xs[:, None]
    feasible = x <= _sup_r1_per_set(matrix)[None, :]
    r2 = np.minimum(
        np.minimum(matrix[None, :, 1], matrix[None, :, 2] - x),
        np.minimum(matrix[None, :, 3] - 2.0 * x, (matrix[None, :, 4] - x) / 2.0),
    )
    r2 = np.where(feasible, r2, -np.inf)
    return r2.max(axis=1)


def _max_r1_at(matrix: np.ndarray, ys: np.ndarray) -> np.ndarray:
    y = ys[:, None]
    feasible = y <= _sup_r2_per_set(matrix)[None, :]
    r1 = np.minimum(
        np.minimum(matrix[None, :, 0], matrix[None, :, 2] - y),
        np.minimum((matrix[None, :, 3] - y) / 2.0, matrix[None, :, 4] - 2.0 * y),
    )
    r1 = np.where(feasible, r1, -np.inf)
    return r1.max(axis=1)


def _corner_points(matrix: np.ndarray) -> np.ndarray:
    """Pairwise intersections of the five cap lines, per BoundSet.

    Axis intersections are omitted: the sweep grids already cover R1 = 0
    and R2 = 0 exactly.  Returns an (m, 2) array of points that satisfy
    their own BoundSet's constraints.
    """
    A = matrix[:, 0]
    B = matrix[:, 1]
    C = matrix[:, 2]
    D = matrix[:, 3]
    E = matrix[:, 4]
    with np.errstate(invalid="ignore"):  # inf caps: inf - inf candidates drop below
        pairs = [
            (A, B),
            (A, C - A),
            (A, D - 2.0 * A),
            (A, (E - A) / 2.0),
            (C - B, B),
            ((D - B) / 2.0, B),
            (E - 2.0 * B, B),
            (D - C, 2.0 * C - D),
            (2.0 * C - E, E - C),
            ((2.0 * D - E) / 3.0, (2.0 * E - D) / 3.0),
        ]
        xs = np.concatenate([np.broadcast_to(p[0], A.shape) for p in pairs])
        ys = np.concatenate([np.broadcast_to(p[1], A.shape) for p in pairs])
    caps = np.concatenate([matrix] * len(pairs), axis=0)
    finite = np.isfinite(xs) & np.isfinite(ys)
    xs, ys, caps = xs[finite], ys[finite], caps[finite]
    tol = 1e-9
    ok = (
        (xs >= -tol)
        & (ys >= -tol)
        & (xs <= caps[:, 0] + tol)
        & (ys <= caps[:, 1] + tol)
        & (xs + ys <= caps[:, 2] + tol)
        & (2.0 * xs + ys <= caps[:, 3] + tol)
        & (xs + 2.0 * ys <= caps[:, 4] + tol)
    )
    pts = np.stack([np.clip(xs[ok], 0.0, None), np.clip(ys[ok], 0.0, None)], axis=1)
    return pts


def functional_suprema(matrix: np.ndarray) -> np.ndarray:
    """Exact suprema of R1, R2, R1+R2, 2R1+R2, R1+2R2 over a union of rows.

    Each linear functional peaks at a vertex of some row's polytope (or on
    an axis), so the suprema are read off the collected candidate points.
    """
    matrix = np.asarray(matrix, dtype=float)
    corners = _corner_points(matrix)
    sup1 = _sup_r1_per_set(matrix)
    sup2 = _sup_r2_per_set(matrix)
    axis_pts = np.concatenate(
        [
            np.stack([sup1, np.zeros_like(sup1)], axis=1),
            np.stack([np.zeros_like(sup2), sup2], axis=1),
        ]
    )
    pts = np.concatenate([corners, axis_pts], axis=0) if corners.size else axis_pts
    x = pts[:, 0]
    y = pts[:, 1]
    return np.array(
        [
            float(x.max()),
            float(y.max()),
            float((x + y).max()),
            float((2.0 * x + y).max()),
            float((x + 2.0 * y).max()),
        ]
    )


def frontier(region: Region, samples: int = 512) -> list[RatePair]:
    """Pareto-frontier samples of the union.

    Sweeps R1 and R2 grids (``samples`` points each) against the exact
    per-set closed forms, and adds every polytope corner that lies on the
    union boundary.  Output is deduplicated and sorted by (r1, -r2).
    """
    if samples < 3:
        raise ValueError("samples must be >= 3")
    matrix = region.pruned_matrix()
    sup1 = float(_sup_r1_per_set(matrix).max())
    sup2 = float(_sup_r2_per_set(matrix).max())
    if not (math.isfinite(sup1) and math.isfinite(sup2)):
        raise ValueError("frontier undefined: region is unbounded in some direction")

    xs = np.linspace(0.0, sup1, samples)
    ys = np.linspace(0.0, sup2, samples)
    pts = [
        np.stack([xs, np.maximum(_max_r2_at(matrix, xs), 0.0)], axis=1),
        np.stack([np.maximum(_max_r1_at(matrix, ys), 0.0), ys], axis=1),
    ]
    corners = _corner_points(matrix)
    if corners.shape[0]:
        # Keep only corners on the union boundary; interior ones would be
        # dominated by sweep samples.
        boundary = _max_r2_at(matrix, corners[:, 0])
        scale = 1e-9 * (1.0 + np.abs(boundary))
        on_frontier = corners[:, 1] >= boundary - scale
        pts.append(corners[on_frontier])
    allpts = np.concatenate(pts, axis=0)
    allpts = np.unique(np.round(allpts, 12), axis=0)
    order = np.lexsort((-allpts[:, 1], allpts[:, 0]))
    return [RatePair(float(x), float(y)) for x, y in allpts[order]]


@dataclass(frozen=True, slots=True)
class GapResult:
    """Worst-case uniform shift (bits) and the outer point attaining it."""

    xi: float
    witness: RatePair


def _min_shifts(inner_matrix: np.ndarray, pts: np.ndarray, tol: float) -> np.ndarray:
    """Minimal per-point shift xi with ((t1-xi)+, (t2-xi)+) inside, by bisection."""
    lo = np.zeros(pts.shape[0])
    hi = np.maximum(pts[:, 0], pts[:, 1])

    def inside(shift):
        shifted = np.clip(pts - shift[:, None], 0.0, None)
        return _contains_points(inner_matrix, shifted, 0.0)

    done = inside(lo)
    hi = np.where(done, 0.0, hi)
    # Containment is monotone in the shift, so plain bisection applies.
    active = ~done
    if np.any(active):
        span = float(hi[active].max())
        iters = max(1, math.ceil(math.log2(max(span / tol, 2.0))))
        for _ in range(iters):
            mid = 0.5 * (lo + hi)
            ok = inside(mid)
            hi = np.where(active & ok, mid, hi)
            lo = np.where(active & ~ok, mid, lo)
            if float((hi - lo)[active].max()) <= tol:
                break
    return hi


def gap_xi(outer: Region, inner: Region, tol: float = 1e-6, samples: int = 512) -> GapResult:
    """Worst-case shift taking the outer frontier into the inner region.

    Both regions are downward closed, so the maximum over the outer region
    is attained on its Pareto frontier; each frontier sample is bisected
    independently to tolerance ``tol``.
    """
    if not tol > 0.0:
        raise ValueError("tol must be > 0")
    front = frontier(outer, samples)
    pts = np.array([[p.r1, p.r2] for p in front], dtype=float)
    shifts = _min_shifts(inner.pruned_matrix(), pts, tol)
    k = int(np.argmax(shifts))
    return GapResult(xi=float(shifts[k]), witness=front[k])
