"""Trapezoid-rule boundary quadrature of the layer-potential kernels.

The integrands are smooth and periodic for evaluation points off the
boundary, so the uniform trapezoid rule converges spectrally; panel counts
double until two successive refinements agree.  This path exists as an
independent cross-check of the closed-form mode formulas (library
self-check); production evaluation never integrates.
"""
from __future__ import annotations

import math

import numpy as np

from .media import LameParams, wavenumbers
from .specfun import cyl_pair


class QuadratureError(RuntimeError):
    """Panel doubling hit its cap before two refinements agreed."""


def helmholtz_kernel(k: complex, d: np.ndarray) -> complex:
    """-(i/4) H_0(k |d|): fundamental solution of Helmholtz in 2D."""
    r = math.hypot(float(d[0]), float(d[1]))
    return -0.25j * cyl_pair(0, k * r).h


def elastic_kernel(p: LameParams, omega: float, d) -> np.ndarray:
    """2x2 fundamental solution of the elastodynamic operator at offset d.

    Gamma_ij = -(i/(4 mu)) delta_ij H_0(ks r)
               + (i/(4 omega^2)) d_i d_j [H_0(kp r) - H_0(ks r)],
    with the Hessian of H_0(k r) evaluated in closed form:
    -k^2 H_0(kr) e e^T + (k H_1(kr)/r) (2 e e^T - I), e = d/r.
    """
    wn = wavenumbers(p, omega)
    d = np.asarray(d, dtype=float)
    r = math.hypot(d[0], d[1])
    if r == 0.0:
        raise ValueError("kernel is singular at zero offset")
    e = d / r
    eet = np.outer(e, e)
    eye = np.eye(2)

    def hess_h0(k: complex) -> np.ndarray:
        pair = cyl_pair(0, k * r)
        h0 = pair.h
        h1 = -pair.hp  # H_0' = -H_1
        return -k * k * h0 * eet + (k * h1 / r) * (2.0 * eet - eye)

    om2 = float(omega) ** 2
    ks_part = cyl_pair(0, wn.ks * r).h
    return (-0.25j / p.mu) * ks_part * eye + (0.25j / om2) * (
        hess_h0(wn.kp) - hess_h0(wn.ks)
    )


def _doubling(sample_sum, start: int, max_panels: int, tol: float):
    """Drive trapezoid panel doubling until successive values agree."""
    m = start
    prev = sample_sum(m)
    while m < max_panels:
        m *= 2
        cur = sample_sum(m)
        if np.max(np.abs(cur - prev)) <= tol * max(1.0, float(np.max(np.abs(cur)))):
            return cur
        prev = cur
    raise QuadratureError(f"no convergence below {max_panels} panels")


def scalar_slp_quadrature(
    k: complex,
    R: float,
    n: int,
    x,
    tol: float = 1e-12,
    start: int = 64,
    max_panels: int = 1 << 14,
) -> complex:
    """Trapezoid evaluation of the acoustic SLP of e^{in theta} at x off the circle."""
    x = np.asarray(x, dtype=float)

    def total(m: int) -> complex:
        thetas = 2.0 * math.pi * np.arange(m) / m
        acc = 0.0 + 0j
        for th in thetas:
            y = R * np.array([math.cos(th), math.sin(th)])
            acc += helmholtz_kernel(k, x - y) * complex(
                math.cos(n * th), math.sin(n * th)
            )
        return acc * (2.0 * math.pi * R / m)

    return _doubling(total, start, max_panels, tol)


def vector_slp_quadrature(
    p: LameParams,
    omega: float,
    R: float,
    n: int,
    density: str,
    x,
    tol: float = 1e-12,
    start: int = 64,
    max_panels: int = 1 << 14,
) -> np.ndarray:
    """Trapezoid evaluation of the elastic SLP of e^{in theta} nu or t at x."""
    if density not in ("nu", "t"):
        raise ValueError(f"density must be 'nu' or 't', got {density!r}")
    x = np.asarray(x, dtype=float)

    def total(m: int) -> np.ndarray:
        thetas = 2.0 * math.pi * np.arange(m) / m
        acc = np.zeros(2, dtype=complex)
        for th in thetas:
            ct, st = math.cos(th), math.sin(th)
            y = R * np.array([ct, st])
            vec = np.array([ct, st]) if density == "nu" else np.array([-st, ct])
            phase = complex(math.cos(n * th), math.sin(n * th))
            acc += elastic_kernel(p, omega, x - y) @ (phase * vec)
        return acc * (2.0 * math.pi * R / m)

    return _doubling(total, start, max_panels, tol)
