"""Rendering of the gap surface and region-frontier comparison figures."""

from __future__ import annotations

import csv
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


class SchemaError(ValueError):
    """Input CSV does not match the documented schema."""


@dataclass(frozen=True)
class SurfaceTable:
    """Parsed gap-surface rows: (alpha, beta, xi_bits or None)."""

    rows: tuple

    @classmethod
    def from_csv(cls, path: str) -> "SurfaceTable":
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise SchemaError(f"{path}: empty file") from None
            if header != ["alpha", "beta", "xi_bits"]:
                raise SchemaError(f"{path}: expected header alpha,beta,xi_bits, got {header}")
            rows = []
            seen = set()
            for k, rec in enumerate(reader, start=2):
                if len(rec) != 3:
                    raise SchemaError(f"{path}:{k}: expected 3 fields, got {len(rec)}")
                try:
                    alpha, beta = float(rec[0]), float(rec[1])
                except ValueError:
                    raise SchemaError(f"{path}:{k}: non-numeric alpha/beta {rec[:2]}") from None
                if rec[2].strip() == "":
                    xi = None
                else:
                    try:
                        xi = float(rec[2])
                    except ValueError:
                        raise SchemaError(f"{path}:{k}: non-numeric xi_bits {rec[2]!r}") from None
                    if xi < 0.0 or not np.isfinite(xi):
                        raise SchemaError(f"{path}:{k}: xi_bits must be >= 0, got {xi}")
                key = (alpha, beta)
                if key in seen:
                    raise SchemaError(f"{path}:{k}: duplicate cell {key}")
                seen.add(key)
                rows.append((alpha, beta, xi))
        if not rows:
            raise SchemaError(f"{path}: no data rows")
        return cls(rows=tuple(rows))

    def grid(self):
        alphas = sorted({r[0] for r in self.rows})
        betas = sorted({r[1] for r in self.rows})
        a_idx = {a: i for i, a in enumerate(alphas)}
        b_idx = {b: i for i, b in enumerate(betas)}
        z = np.full((len(betas), len(alphas)), np.nan)
        for alpha, beta, xi in self.rows:
            if xi is not None:
                z[b_idx[beta], a_idx[alpha]] = xi
        return np.array(alphas), np.array(betas), z

    def maximum(self):
        """Cell with the largest gap, or None if every cell is empty."""
        best = None
        for alpha, beta, xi in self.rows:
            if xi is not None and (best is None or xi > best[2]):
                best = (alpha, beta, xi)
        return best


def render_surface(csv_path: str, out_image_path: str) -> dict:
    """Heatmap of the gap surface; annotates the grid maximum.

    Returns a summary with the annotated maximum so callers can
    cross-check it against the CSV.
    """
    table = SurfaceTable.from_csv(csv_path)
    alphas, betas, z = table.grid()
    best = table.maximum()

    fig, ax = plt.subplots(figsize=(7.0, 5.2))
    finite = z[np.isfinite(z)]
    vmin = float(finite.min()) if finite.size else 0.0
    vmax = float(finite.max()) if finite.size else 1.0
    if vmax <= vmin:
        vmax = vmin + 1e-9
    mesh = ax.pcolormesh(
        alphas, betas, np.ma.masked_invalid(z), shading="nearest",
        cmap="viridis", vmin=vmin, vmax=vmax,
    )
    fig.colorbar(mesh, ax=ax, label="gap (bits)")
    ax.set_xlabel(r"$\alpha = \log \mathrm{INR} / \log \mathrm{SNR}$")
    ax.set_ylabel(r"$\beta = \log \mathrm{SNR_{fb}} / \log \mathrm{SNR}$")
    ax.set_title("Gap between converse and achievable regions")
    if best is not None:
        alpha, beta, xi = best
        ax.plot([alpha], [beta], marker="x", color="red", markersize=9, mew=2)
        ax.annotate(
            f"max {xi:.9g} bits\n({alpha:.9g}, {beta:.9g})",
            xy=(alpha, beta),
            xytext=(6, 6),
            textcoords="offset points",
            color="red",
            fontsize=9,
        )
    fig.tight_layout()
    fig.savefig(out_image_path, dpi=150, metadata={"Software": None})
    plt.close(fig)
    return {
        "cells": len(table.rows),
        "empty_cells": sum(1 for r in table.rows if r[2] is None),
        "max": None if best is None else {"alpha": best[0], "beta": best[1], "xi_bits": best[2]},
    }


def _read_frontier(path: str) -> np.ndarray:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file") from None
        if header != ["r1", "r2"]:
            raise SchemaError(f"{path}: expected header r1,r2, got {header}")
        pts = []
        for k, rec in enumerate(reader, start=2):
            if len(rec) != 2:
                raise SchemaError(f"{path}:{k}: expected 2 fields, got {len(rec)}")
            try:
                pts.append((float(rec[0]), float(rec[1])))
            except ValueError:
                raise SchemaError(f"{path}:{k}: non-numeric rate pair {rec}") from None
    if not pts:
        raise SchemaError(f"{path}: no data rows")
    arr = np.array(pts)
    if np.any(arr < 0.0) or not np.all(np.isfinite(arr)):
        raise SchemaError(f"{path}: rates must be finite and >= 0")
    return arr


def _boundary_curve(points: np.ndarray) -> np.ndarray:
    """Collapse frontier samples to one (r1, max r2) polyline, r1 ascending."""
    best = {}
    for r1, r2 in points:
        if r1 not in best or r2 > best[r1]:
            best[r1] = r2
    xs = sorted(best)
    return np.array([(x, best[x]) for x in xs])


def render_regions(achievable_csv: str, converse_csv: str, out_image_path: str) -> dict:
    """Overlay the two region frontiers, shading the achievable region."""
    inner = _boundary_curve(_read_frontier(achievable_csv))
    outer = _boundary_curve(_read_frontier(converse_csv))

    fig, ax = plt.subplots(figsize=(6.4, 5.6))
    ax.fill_between(
        inner[:, 0], 0.0, inner[:, 1], step="post", alpha=0.25,
        color="tab:blue", linewidth=0,
    )
    ax.plot(inner[:, 0], inner[:, 1], color="tab:blue", label="achievable (inner)")
    ax.plot(outer[:, 0], outer[:, 1], color="tab:red", label="converse (outer)")
    ax.set_xlabel("$R_1$ (bits per channel use)")
    ax.set_ylabel("$R_2$ (bits per channel use)")
    ax.set_title("Rate-region bounds")
    ax.set_xlim(left=0.0)
    ax.set_ylim(bottom=0.0)
    ax.legend(loc="upper right")
    fig.tight_layout()
    fig.savefig(out_image_path, dpi=150, metadata={"Software": None})
    plt.close(fig)
    return {
        "inner_points": inner.tolist(),
        "outer_points": outer.tolist(),
    }
