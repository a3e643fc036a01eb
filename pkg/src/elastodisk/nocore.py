"""Transmission problem for a metamaterial disk (no core) driven by a
mode-expanded incident potential.

Per angular mode n the two transmission conditions on the circle reduce to a
4x4 complex system for the interior/exterior layer densities.  The numeric
block solve is the authoritative path; a hand-derived closed-form
solution of the same system rides along purely as a cross-check (see
`closed_form_coeffs`), kept verbatim although its denominator expression
does not reduce to the block determinant.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .media import LameParams, wavenumbers
from .potentials import (
    WaveKind,
    mode_matrix_boundary,
    polar_to_cartesian,
    slp_trace,
    traction_matrix,
    wave_coeffs,
    wave_traction_coeffs,
)

_I2 = np.eye(2, dtype=complex)

CONDITION_NEAR_SINGULAR = 1e14


class NormalizationSingularError(ValueError):
    """J_n(k R) = 0 for a wavenumber used in the source normalization."""


@dataclass(frozen=True)
class SourceTerm:
    """One angular mode of the incident potential.

    kappa1 weights the normalized shear (Q) basis field, kappa2 the
    normalized pressure (P) one; the normalization divides by n, so n = 0
    is excluded.
    """

    n: int
    kappa1: complex = 0.0
    kappa2: complex = 0.0

    def __post_init__(self):
        if self.n == 0:
            raise ValueError("source terms with n = 0 are not representable")


@dataclass(frozen=True)
class SourceModes:
    terms: tuple[SourceTerm, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        seen = set()
        for t in self.terms:
            if t.n in seen:
                raise ValueError(f"duplicate source mode n={t.n}")
            seen.add(t.n)

    @staticmethod
    def single(n: int, kappa1: complex = 1.0, kappa2: complex = 0.0) -> "SourceModes":
        return SourceModes((SourceTerm(n, kappa1, kappa2),))


def _norm_constants(term: SourceTerm, p: LameParams, omega: float, R: float):
    """kappa-weighted normalizations kappa_j * k R / (n J_n(k R)).

    Wave families with a zero kappa never touch their normalization, so a
    vanishing J_n for the unused family cannot poison the term.
    """
    from .specfun import bessel_j

    wn = wavenumbers(p, omega)
    out = []
    for kap, k in ((term.kappa1, wn.ks), (term.kappa2, wn.kp)):
        if kap == 0:
            out.append(0j)
            continue
        jn = bessel_j(term.n, k * R)
        cval = kap * k * R / (term.n * jn) if jn != 0 else complex("inf")
        if not (math.isfinite(cval.real) and math.isfinite(cval.imag)):
            # exact/denormal zeros of J_n(kR) blow the normalization up
            raise NormalizationSingularError(
                f"J_{term.n}(kR) = {jn} in the source normalization (kR = {k * R})"
            )
        out.append(cval)
    return out[0], out[1], wn


@dataclass(frozen=True)
class NewtonianPotential:
    """Incident field defined by its interior wave-basis expansion.

    Entire in the disk of analyticity of the true potential; with finitely
    many modes it is entire everywhere, which is what the solvers and the
    exterior sampling rely on.
    """

    source: SourceModes
    params: LameParams
    omega: float
    radius: float

    def displacement(self, x) -> np.ndarray:
        r = math.hypot(float(x[0]), float(x[1]))
        u = np.zeros(2, dtype=complex)
        for term in self.source.terms:
            cs, cp, wn = _norm_constants(term, self.params, self.omega, self.radius)
            c = cs * wave_coeffs(WaveKind.Q_INTERIOR, term.n, wn.ks, r)
            c = c + cp * wave_coeffs(WaveKind.P_INTERIOR, term.n, wn.kp, r)
            u += polar_to_cartesian(c, term.n, x)
        return u

    def boundary_coeffs(self, term: SourceTerm) -> tuple[np.ndarray, np.ndarray]:
        """(f_n, ftilde_n): trace and traction coefficient pairs on the circle."""
        cs, cp, wn = _norm_constants(term, self.params, self.omega, self.radius)
        R = self.radius
        f = cs * wave_coeffs(WaveKind.Q_INTERIOR, term.n, wn.ks, R)
        f = f + cp * wave_coeffs(WaveKind.P_INTERIOR, term.n, wn.kp, R)
        ft = cs * wave_traction_coeffs(WaveKind.Q_INTERIOR, term.n, wn.ks, R, self.params)
        ft = ft + cp * wave_traction_coeffs(
            WaveKind.P_INTERIOR, term.n, wn.kp, R, self.params
        )
        return f, ft


def source_boundary_data(
    src: SourceModes, p_matrix: LameParams, omega: float, R: float
) -> dict[int, tuple[np.ndarray, np.ndarray]]:
    """Per-mode (f_n, ftilde_n) boundary data of the incident potential."""
    pot = NewtonianPotential(src, p_matrix, omega, R)
    return {term.n: pot.boundary_coeffs(term) for term in src.terms}


def assemble_mode_system(
    p_in: LameParams, p_out: LameParams, omega: float, R: float, n: int
) -> np.ndarray:
    """[[That1, -T1], [That2, -T2]] acting on (psi1, psi2)."""
    that1 = mode_matrix_boundary(p_in, omega, R, n)
    t1 = mode_matrix_boundary(p_out, omega, R, n)
    that2 = traction_matrix(p_in, omega, R, n, side="interior_limit")
    t2 = traction_matrix(p_out, omega, R, n, side="exterior_limit")
    top = np.hstack([that1, -t1])
    bot = np.hstack([that2, -t2])
    return np.vstack([top, bot])


@dataclass(frozen=True)
class ModeSolution:
    """Densities of one solved mode plus solve diagnostics."""

    n: int
    psi1: np.ndarray
    psi2: np.ndarray
    residual: float
    condition: float
    near_singular: bool
    closed_form_psi11: complex


def solve_mode(
    system: np.ndarray, rhs: np.ndarray, n: int = 0, closed_form_psi11: complex = 0j
) -> ModeSolution:
    """Dense partial-pivoting solve with residual and condition diagnostics.

    A condition estimate beyond 1e14 sets the near-singular flag: that is
    the resonance signal, not a failure.
    """
    sol = np.linalg.solve(system, rhs)
    res = np.linalg.norm(system @ sol - rhs)
    scale = np.linalg.norm(system) * np.linalg.norm(sol) + np.linalg.norm(rhs)
    cond = float(np.linalg.cond(system))
    return ModeSolution(
        n=n,
        psi1=sol[:2],
        psi2=sol[2:],
        residual=float(res / scale) if scale > 0 else float(res),
        condition=cond,
        near_singular=cond > CONDITION_NEAR_SINGULAR,
        closed_form_psi11=closed_form_psi11,
    )


def solve_modes(
    p_in: LameParams,
    p_out: LameParams,
    omega: float,
    R: float,
    src: SourceModes,
) -> list[ModeSolution]:
    """Solve every source mode; closed-form cross-check value attached."""
    data = source_boundary_data(src, p_out, omega, R)
    out = []
    for term in src.terms:
        f, ft = data[term.n]
        system = assemble_mode_system(p_in, p_out, omega, R, term.n)
        rhs = np.concatenate([f, ft])
        c1, _, d = closed_form_coeffs(p_in, p_out, omega, R, term.n, f, ft)
        cf = c1 / d if d != 0 else complex("nan")
        out.append(solve_mode(system, rhs, n=term.n, closed_form_psi11=cf))
    return out


def closed_form_coeffs(
    p_in: LameParams,
    p_out: LameParams,
    omega: float,
    R: float,
    n: int,
    f: np.ndarray,
    ft: np.ndarray,
) -> tuple[complex, complex, complex]:
    """(c1, c2, d): the hand-derived closed form of the mode system, verbatim.

    Kept solely as a cross-check of the numeric solve.  The numerators are
    exact; the denominator expression repeats one cofactor pairing and
    closes with a product where a difference of products belongs, so c/d
    only reproduces the solve up to those defects (the test suite carries
    the corrected six-term expansion and quantifies the gap).
    """
    ah = mode_matrix_boundary(p_in, omega, R, n)
    a = mode_matrix_boundary(p_out, omega, R, n)
    gh = traction_matrix(p_in, omega, R, n, side="exterior_limit")
    g = traction_matrix(p_out, omega, R, n, side="exterior_limit")
    a1, a3, a2, a4 = a[0, 0], a[0, 1], a[1, 0], a[1, 1]
    ah1, ah3, ah2, ah4 = ah[0, 0], ah[0, 1], ah[1, 0], ah[1, 1]
    g1, g3, g2, g4 = g[0, 0], g[0, 1], g[1, 0], g[1, 1]
    gh1, gh3, gh2, gh4 = gh[0, 0], gh[0, 1], gh[1, 0], gh[1, 1]
    f1, f2 = f[0], f[1]
    ft1, ft2 = ft[0], ft[1]

    c1 = (
        (f2 * ah3 - f1 * ah4) * (g3 * g2 - g1 * g4)
        + (f2 * (gh4 - 1) - ft2 * ah4) * (g1 * a3 - g3 * a1)
        + (f2 * gh3 - ft1 * ah4) * (g4 * a1 - g2 * a3)
        + (f1 * (gh4 - 1) - ft2 * ah3) * (g3 * a2 - g1 * a4)
        + (f1 * gh3 - ft1 * ah3) * (g2 * a4 - g4 * a2)
        + (ft1 * (gh4 - 1) - ft2 * gh3) * (a1 * a4 - a3 * a2)
    )
    c2 = (
        (f2 * ah1 - f1 * ah2) * (g1 * g4 - g3 * g2)
        + (ft2 * (gh1 - 1) - ft1 * gh2) * (a1 * a4 - a3 * a2)
        + (f1 * gh2 - ft2 * ah1) * (g1 * a4 - g3 * a2)
        + (f2 * (gh1 - 1) - ft1 * ah2) * (g2 * a3 - g4 * a1)
        + (f2 * gh2 - ft2 * ah2) * (g3 * a1 - g1 * a3)
        + (f1 * (gh1 - 1) - ft1 * ah1) * (g4 * a2 - g2 * a4)
    )
    d = (
        (ah1 * ah4 - ah3 * ah2) * (g1 * g4 - g3 * g2)
        + (gh3 * ah2 - ah4 * (gh1 - 1)) * (g4 * a1 - g2 * a3)
        + (gh3 * ah2 - ah4 * (gh1 - 1)) * (a1 * g4 - g2 * a3)
        + (ah3 * gh2 - ah1 * (gh4 - 1)) * (g1 * a4 - g3 * a2)
        + (ah1 * gh3 - ah3 * (gh1 - 1)) * (g2 * a4 - g4 * a2)
        + (gh2 * gh3 * (gh4 - 1) * (gh1 - 1)) * (a3 * a2 - a1 * a4)
    )
    return complex(c1), complex(c2), complex(d)


def dissipation_energy(
    solutions: Iterable[ModeSolution],
    p_shell: LameParams,
    omega: float,
    R: float,
) -> float:
    """Im of the interior boundary form, summed over modes.

    Mode orthogonality makes the circle integral exact: each mode
    contributes 2 pi R Im <traction, conj(trace)> with both factors taken
    from the interior representation.
    """
    that1 = {}
    that2 = {}
    total = 0.0
    for sol in solutions:
        n = sol.n
        if n not in that1:
            that1[n] = mode_matrix_boundary(p_shell, omega, R, n)
            that2[n] = traction_matrix(p_shell, omega, R, n, side="interior_limit")
        trace = that1[n] @ sol.psi1
        trac = that2[n] @ sol.psi1
        total += 2.0 * math.pi * R * float(np.imag(np.vdot(trace, trac)))
    return total


@dataclass(frozen=True)
class SweepPoint:
    value: float
    c: complex
    abs_psi11: float
    energy: float
    condition: float
    residual: float
    error: str = ""


@dataclass(frozen=True)
class SweepResult:
    axis: str
    points: list[SweepPoint] = field(default_factory=list)

    @property
    def peak(self) -> SweepPoint:
        ok = [p for p in self.points if not p.error]
        if not ok:
            raise RuntimeError("sweep produced no valid points")
        return max(ok, key=lambda p: p.abs_psi11)


def _axis_values(start: float, stop: float, steps: int, scale: str) -> np.ndarray:
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if steps == 1:
        return np.array([start], dtype=float)
    if scale == "log":
        if start <= 0 or stop <= 0:
            raise ValueError("log-scaled sweeps need positive endpoints")
        return np.logspace(math.log10(start), math.log10(stop), steps)
    if scale == "linear":
        return np.linspace(start, stop, steps)
    raise ValueError(f"unknown scale {scale!r}")


def sweep(
    axis: str,
    start: float,
    stop: float,
    steps: int,
    *,
    matrix: LameParams,
    omega: float,
    R: float,
    source: SourceModes,
    c_other: float,
    scale: str = "linear",
    threads: int = 1,
) -> SweepResult:
    """Contrast sweep: shell parameters are c * (lam, mu) of the matrix.

    axis "re_c" sweeps Re c with Im c = c_other; axis "im_c" sweeps Im c
    (usually log-scaled) with Re c = c_other.  Points are independent and
    evaluated in parallel when threads > 1 with deterministic row order;
    per-point failures are recorded in-row and the sweep continues.
    """
    if axis not in ("re_c", "im_c"):
        raise ValueError(f"axis must be 're_c' or 'im_c', got {axis!r}")
    values = _axis_values(float(start), float(stop), int(steps), scale)

    def run_one(v: float) -> SweepPoint:
        c = complex(v, c_other) if axis == "re_c" else complex(c_other, v)
        try:
            sols = solve_modes(matrix.scaled(c), matrix, omega, R, source)
            energy = dissipation_energy(sols, matrix.scaled(c), omega, R)
            apsi = max(abs(s.psi1[0]) for s in sols)
            cond = max(s.condition for s in sols)
            resid = max(s.residual for s in sols)
            return SweepPoint(float(v), c, apsi, energy, cond, resid)
        except Exception as exc:  # recorded per-row, sweep continues
            return SweepPoint(
                float(v), c, math.nan, math.nan, math.nan, math.nan, repr(exc)
            )

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            points = list(pool.map(run_one, values))
    else:
        points = [run_one(v) for v in values]
    return SweepResult(axis=axis, points=points)


@dataclass(frozen=True)
class NoCoreField:
    """Piecewise displacement field of a solved no-core configuration."""

    p_in: LameParams
    p_out: LameParams
    omega: float
    R: float
    solutions: tuple[ModeSolution, ...]
    source: SourceModes

    def region(self, x) -> str:
        r = math.hypot(float(x[0]), float(x[1]))
        return "shell" if r < self.R else "exterior"

    def displacement(self, x) -> np.ndarray:
        r = math.hypot(float(x[0]), float(x[1]))
        interior = r < self.R
        u = np.zeros(2, dtype=complex)
        for sol in self.solutions:
            if interior:
                m = slp_trace(self.p_in, self.omega, self.R, sol.n, r, exterior=False)
                u += polar_to_cartesian(m @ sol.psi1, sol.n, x)
            else:
                m = slp_trace(self.p_out, self.omega, self.R, sol.n, r, exterior=True)
                u += polar_to_cartesian(m @ sol.psi2, sol.n, x)
        if not interior:
            u += NewtonianPotential(
                self.source, self.p_out, self.omega, self.R
            ).displacement(x)
        return u


def solve_nocore(
    p_in: LameParams,
    p_out: LameParams,
    omega: float,
    R: float,
    src: SourceModes,
) -> NoCoreField:
    sols = solve_modes(p_in, p_out, omega, R, src)
    return NoCoreField(p_in, p_out, omega, R, tuple(sols), src)
