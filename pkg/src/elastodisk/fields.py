"""Displacement fields on point grids and radial amplitude profiles.

Works with any object exposing `displacement(x) -> (2,) complex` and
`region(x) -> str` (solved transmission fields, single basis waves, raw
layer potentials).  Grids are caller-specified; points falling inside a
small tube around an interface are skipped and tagged rather than
evaluated.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

INTERFACE_TAG = "interface"


@dataclass(frozen=True)
class FieldGrid:
    """Evaluated displacements with a region tag per point."""

    points: np.ndarray  # (N, 2) float
    values: np.ndarray  # (N, 2) complex; rows of skipped points are nan
    regions: tuple[str, ...]

    def amplitudes(self) -> np.ndarray:
        return np.linalg.norm(self.values, axis=1)


def eval_total_field(
    field,
    points: Iterable,
    interfaces: Sequence[float] = (),
    eps_tube: float | None = None,
) -> FieldGrid:
    """Evaluate a piecewise field on points, skipping interface tubes.

    `interfaces` lists circle radii; a point whose radius lies within
    eps_tube (default 1e-6 times the largest interface radius) of one of
    them is tagged INTERFACE_TAG and left nan.
    """
    pts = np.asarray(list(points), dtype=float).reshape(-1, 2)
    radii = np.hypot(pts[:, 0], pts[:, 1])
    if eps_tube is None:
        eps_tube = 1e-6 * max(interfaces, default=1.0)
    values = np.full((len(pts), 2), np.nan, dtype=complex)
    regions = []
    for i, (pt, r) in enumerate(zip(pts, radii)):
        if any(abs(r - s) <= eps_tube for s in interfaces):
            regions.append(INTERFACE_TAG)
            continue
        values[i] = field.displacement(pt)
        regions.append(field.region(pt))
    return FieldGrid(points=pts, values=values, regions=tuple(regions))


def polar_grid(radii: Sequence[float], thetas: Sequence[float]) -> np.ndarray:
    """Cartesian points of the tensor polar grid, radius-major order."""
    out = []
    for r in radii:
        for th in thetas:
            out.append((r * math.cos(th), r * math.sin(th)))
    return np.asarray(out, dtype=float)


def radial_profile(
    field,
    radii: Sequence[float],
    thetas: Sequence[float] | int = 32,
) -> list[tuple[float, float]]:
    """Max-over-theta displacement amplitude at each radius."""
    if isinstance(thetas, int):
        thetas = [2.0 * math.pi * k / thetas for k in range(thetas)]
    out = []
    for r in radii:
        best = 0.0
        for th in thetas:
            u = field.displacement((r * math.cos(th), r * math.sin(th)))
            best = max(best, float(np.linalg.norm(u)))
        out.append((float(r), best))
    return out


@dataclass(frozen=True)
class CallableField:
    """Adapter giving plain callables the field interface."""

    fn: Callable
    region_fn: Callable | None = None

    def displacement(self, x) -> np.ndarray:
        return np.asarray(self.fn(x), dtype=complex)

    def region(self, x) -> str:
        return self.region_fn(x) if self.region_fn is not None else "exterior"
