"""Built-in invariant suite: cylinder-function identities and quadrature
agreement, runnable from the command line without the test harness.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .media import LameParams
from .potentials import scalar_slp_mode, vector_slp_eval
from .quadrature import scalar_slp_quadrature, vector_slp_quadrature
from .specfun import cyl_pair


@dataclass(frozen=True)
class CheckResult:
    name: str
    worst: float
    bound: float

    @property
    def passed(self) -> bool:
        return self.worst < self.bound


def wronskian_check(
    orders=range(0, 61, 4),
    radii=None,
    args=(0.0, 0.7, 1.2),
    bound: float = 1e-10,
) -> CheckResult:
    """Scaled Wronskian residual over the physical argument sector.

    Negative-argument rays are excluded here: for Im z < 0 both J and H
    grow like exp|Im z| and the identity is not representable in doubles
    (see the package notes); the library self-check covers the sector
    actually reached by physical wavenumbers.
    """
    if radii is None:
        radii = np.logspace(-2, 2, 13)
    worst = 0.0
    for n in orders:
        for r in radii:
            for a in args:
                z = complex(r * math.cos(a), r * math.sin(a))
                p = cyl_pair(n, z)
                w = (p.j * p.hp - p.jp * p.h - 2j / (math.pi * z)) * (
                    math.pi * z / 2.0
                )
                worst = max(worst, abs(w))
    return CheckResult("wronskian", worst, bound)


def recurrence_check(
    orders=range(1, 61, 4),
    radii=None,
    args=(-1.2, 0.0, 0.7, 1.2),
    bound: float = 1e-9,
) -> CheckResult:
    """Relative three-term recurrence residual for J and H."""
    if radii is None:
        radii = np.logspace(-2, 2, 13)
    worst = 0.0
    for n in orders:
        for r in radii:
            for a in args:
                z = complex(r * math.cos(a), r * math.sin(a))
                pm, p0, pp = cyl_pair(n - 1, z), cyl_pair(n, z), cyl_pair(n + 1, z)
                for f0, f1, f2 in ((pm.j, p0.j, pp.j), (pm.h, p0.h, pp.h)):
                    den = max(abs(f0), abs(f2))
                    if den == 0 or not math.isfinite(den):
                        continue
                    res = abs(f0 + f2 - (2.0 * n / z) * f1) / den
                    worst = max(worst, res)
    return CheckResult("recurrence", worst, bound)


def scalar_quadrature_check(trials: int = 6, seed: int = 11, bound: float = 1e-8):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(-4, 7))
        k = complex(rng.uniform(0.5, 3.0), rng.uniform(0.0, 0.3))
        R = float(rng.uniform(0.5, 1.5))
        r = float(rng.uniform(1.2, 2.0)) * R if rng.random() < 0.5 else float(
            rng.uniform(0.2, 0.8)
        ) * R
        th = float(rng.uniform(0, 2 * math.pi))
        x = (r * math.cos(th), r * math.sin(th))
        a = scalar_slp_mode(k, R, n, x)
        b = scalar_slp_quadrature(k, R, n, x)
        worst = max(worst, abs(a - b))
    return CheckResult("scalar_slp_quadrature", worst, bound)


def vector_quadrature_check(trials: int = 4, seed: int = 12, bound: float = 1e-6):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        p = LameParams(rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0))
        omega = float(rng.uniform(0.5, 2.0))
        n = int(rng.integers(0, 7))
        R = float(rng.uniform(0.7, 1.3))
        r = float(rng.uniform(1.3, 1.9)) * R if rng.random() < 0.5 else float(
            rng.uniform(0.25, 0.75)
        ) * R
        th = float(rng.uniform(0, 2 * math.pi))
        x = (r * math.cos(th), r * math.sin(th))
        dens = "nu" if rng.random() < 0.5 else "t"
        a = vector_slp_eval(p, omega, R, n, dens, x)
        b = vector_slp_quadrature(p, omega, R, n, dens, x)
        worst = max(worst, float(np.max(np.abs(a - b))))
    return CheckResult("vector_slp_quadrature", worst, bound)


def run_all() -> list[CheckResult]:
    return [
        wronskian_check(),
        recurrence_check(),
        scalar_quadrature_check(),
        vector_quadrature_check(),
    ]
