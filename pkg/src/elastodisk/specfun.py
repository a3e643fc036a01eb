"""Integer-order Bessel J_n and first-kind Hankel H_n for complex arguments.

Scalar, pure double precision.  The evaluation region is split so that every
path stays below ~1e-12 relative error on the validated envelope
|n| <= 200 (values permitting), |z| in [1e-2, 1e2], arg z in (-pi/2, pi/2]:

* Im z < 0 is mapped to the upper half plane through
  J_n(z) = conj(J_n(conj z)) and H_n(z) = 2 J_n(z) - conj(H_n(conj z));
  both are additions of like-sized quantities there.
* |z| <= 8:   ascending series for J_n; H_n = J_n + i Y_n with the Y_0/Y_1
  log series and upward recurrence while Im z <= 4 (the J + iY subtraction
  loses a factor exp(2 Im z), harmless in that strip), else H_0 through the
  continued fraction for H_0'/H_0 closed with the Wronskian.
* 8 < |z| < 17: Miller backward recurrence for the J array.  The
  normalising value is the Jacobi-Anger sum J_0 + 2 sum J_2k = 1 when
  Im z <= 5 and the (cancellation-free there) J_0 series otherwise.  H_0
  again from the continued fraction plus Wronskian closure.
* |z| >= 17:  H_0, H_1 from the outgoing asymptotic series (truncation error
  below exp(-2|z|)); the Miller J array is normalised against them through
  the cross Wronskian J_1 H_0 - J_0 H_1 = 2i/(pi z), which never cancels.

Derivatives always come from the three-term ladder f_n' = f_{n-1} - n f_n/z,
never from finite differences.  Orders so large that the true value
over/underflows double precision propagate inf/0 in the IEEE way.

All functions are pure and safe to call from any number of threads.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

EULER_GAMMA = 0.5772156649015328606

_SERIES_RADIUS = 8.0
_ASYMP_RADIUS = 17.0
_JIY_IM_LIMIT = 4.0
_JA_IM_LIMIT = 5.0
_RESCALE_LIMIT = 1e250
_MAX_CF_ITER = 5000


@dataclass(frozen=True)
class CylPair:
    """J_n, H_n and their derivatives at a common complex argument."""

    j: complex
    jp: complex
    h: complex
    hp: complex
    order: int
    arg: complex


def _checked(z) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite argument z={z!r}")
    return z


def _j_series(n: int, z: complex) -> complex:
    """Ascending series for J_n, n >= 0.  Reliable for |z| <~ 10."""
    if z == 0:
        return 1.0 + 0j if n == 0 else 0.0 + 0j
    # (z/2)^n / n! via exp/lgamma so large n neither overflows nor loses
    # the phase; principal log is fine in our argument sector.
    pref = cmath.exp(n * cmath.log(0.5 * z) - math.lgamma(n + 1))
    q = -0.25 * z * z
    term = 1.0 + 0j
    total = term
    for k in range(1, 80):
        term *= q / (k * (n + k))
        total += term
        if abs(term) <= 1e-18 * abs(total):
            break
    return pref * total


def _y01_series(z: complex, j0: complex, j1: complex) -> tuple[complex, complex]:
    """Y_0 and Y_1 from their log expansions; companion to _j_series."""
    lg = cmath.log(0.5 * z) + EULER_GAMMA
    mq = -0.25 * z * z  # (-z^2/4)
    # Y0 = (2/pi) (lg*J0 - sum_{k>=1} h_k (-z^2/4)^k / (k!)^2)
    s = 0.0 + 0j
    t = 1.0 + 0j
    h = 0.0
    for k in range(1, 80):
        t *= mq / (k * k)
        h += 1.0 / k
        s += h * t
        if abs(t) <= 1e-18 * max(1.0, abs(s)):
            break
    y0 = (2.0 / math.pi) * (lg * j0 - s)
    # Y1 = (2/pi) lg*J1 - 2/(pi z)
    #      - (1/pi) sum_{k>=0} (h_k + h_{k+1}) (z/2)(-z^2/4)^k / (k! (k+1)!)
    r = 0.5 * z
    h_k = 0.0
    h_k1 = 1.0
    s1 = r * (h_k + h_k1)
    for k in range(1, 80):
        r *= mq / (k * (k + 1))
        h_k += 1.0 / k
        h_k1 += 1.0 / (k + 1)
        s1 += (h_k + h_k1) * r
        if abs(r) <= 1e-18 * max(1.0, abs(s1)):
            break
    y1 = (2.0 / math.pi) * lg * j1 - 2.0 / (math.pi * z) - s1 / math.pi
    return y0, y1


def _h01_asymptotic(z: complex) -> tuple[complex, complex]:
    """H_0 and H_1 from the outgoing large-|z| expansion, |z| >= 17."""
    out = []
    for nu in (0, 1):
        fournu2 = 4.0 * nu * nu
        term = 1.0 + 0j
        total = term
        prev = abs(term)
        for k in range(1, 40):
            term *= 1j * (fournu2 - (2 * k - 1) ** 2) / (8.0 * k * z)
            mag = abs(term)
            if mag >= prev:  # past the optimal truncation point
                break
            total += term
            prev = mag
            if mag <= 1e-18 * abs(total):
                break
        phase = cmath.exp(1j * (z - 0.5 * nu * math.pi - 0.25 * math.pi))
        out.append(cmath.sqrt(2.0 / (math.pi * z)) * phase * total)
    return out[0], out[1]


def _cf2_direct(z: complex) -> complex:
    """H_0'(z)/H_0(z): -1/(2z) + i + (i/z) * K_{k>=1} a_k / b_k.

    a_k = (k - 1/2)^2, b_k = 2(z + k i); modified Lentz.  Converges for
    |z| >~ 2 with Im z >= 0 (the only regime it is called in).
    """
    tiny = 1e-290
    # modified Lentz for K = a1/(b1 + a2/(b2 + ...))
    f = tiny
    c = f
    d = 0.0 + 0j
    for k in range(1, _MAX_CF_ITER + 1):
        a = (k - 0.5) ** 2
        b = 2.0 * (z + k * 1j)
        d = b + a * d
        if d == 0:
            d = tiny
        c = b + a / c
        if c == 0:
            c = tiny
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return -0.5 / z + 1j + (1j / z) * f


def _miller_down(nmax: int, z: complex) -> tuple[list[complex], complex]:
    """Unnormalised J ladder f[0..nmax] plus the Jacobi-Anger sum of f."""
    absz = abs(z)
    top = max(nmax, int(absz))
    start = top + 24 + int(1.6 * math.sqrt(top + 1.0))
    f = [0j] * (nmax + 1)
    fp1 = 0.0 + 0j  # f_{m+1}
    fc = 1e-290 + 0j  # f_m
    ja = 0.0 + 0j
    m = start
    while m > 0:
        fm1 = (2.0 * m / z) * fc - fp1  # f_{m-1}
        fp1 = fc
        fc = fm1
        m -= 1
        if m <= nmax:
            f[m] = fc
        if m >= 2 and m % 2 == 0:
            ja += 2.0 * fc
        if abs(fc.real) > _RESCALE_LIMIT or abs(fc.imag) > _RESCALE_LIMIT:
            scale = 1e-250
            fc *= scale
            fp1 *= scale
            ja *= scale
            for i in range(m, min(nmax, start) + 1):
                f[i] *= scale
    ja += f[0]
    return f, ja


def _upward(nmax: int, z: complex, f0: complex, f1: complex) -> list[complex]:
    """Upward three-term recurrence (stable for the dominant solution)."""
    f = [0j] * (nmax + 1)
    f[0] = f0
    if nmax >= 1:
        f[1] = f1
    for m in range(1, nmax):
        f[m + 1] = (2.0 * m / z) * f[m] - f[m - 1]
    return f


def _jh_arrays(nmax: int, z: complex) -> tuple[list[complex], list[complex]]:
    """J and H arrays for orders 0..nmax at z with Im z >= 0, z != 0."""
    absz = abs(z)
    if absz <= _SERIES_RADIUS:
        j = [_j_series(m, z) for m in range(nmax + 1)]
        if z.imag <= _JIY_IM_LIMIT:
            y0, y1 = _y01_series(z, j[0], j[1])
            y = _upward(nmax, z, y0, y1)
            h = [j[m] + 1j * y[m] for m in range(nmax + 1)]
        else:
            r2 = _cf2_direct(z)
            h0 = (2j / (math.pi * z)) / (j[0] * r2 + j[1])  # J0' = -J1
            h = _upward(nmax, z, h0, -r2 * h0)
        return j, h

    f, ja = _miller_down(nmax, z)
    f1 = f[1]  # callers guarantee nmax >= 1
    if absz >= _ASYMP_RADIUS:
        h0, h1 = _h01_asymptotic(z)
        scale = (2j / (math.pi * z)) / (f1 * h0 - f[0] * h1)
    else:
        if z.imag <= _JA_IM_LIMIT:
            scale = 1.0 / ja
        else:
            scale = _j_series(0, z) / f[0]
        j0 = scale * f[0]
        j1 = scale * f1
        r2 = _cf2_direct(z)
        h0 = (2j / (math.pi * z)) / (j0 * r2 + j1)
        h1 = -r2 * h0
    j = [scale * fm for fm in f]
    h = _upward(nmax, z, h0, h1)
    return j, h


@lru_cache(maxsize=1 << 14)
def _pair_upper(n: int, z: complex) -> tuple[complex, complex, complex, complex]:
    """(J_n, J_n', H_n, H_n') for n >= 0, Im z >= 0, z != 0."""
    nmax = max(n, 1)
    j, h = _jh_arrays(nmax, z)
    if n == 0:
        return j[0], -j[1], h[0], -h[1]
    jp = j[n - 1] - (n / z) * j[n]
    hp = h[n - 1] - (n / z) * h[n]
    return j[n], jp, h[n], hp


def cyl_pair(n: int, z) -> CylPair:
    """J_n(z), H_n(z) and derivatives; negative orders via (-1)^n symmetry."""
    z = _checked(z)
    if z == 0:
        raise ValueError("Hankel functions are singular at z = 0")
    m = abs(int(n))
    if z.imag >= 0.0:
        jv, jd, hv, hd = _pair_upper(m, z)
    else:
        cj, cjp, ch, chp = _pair_upper(m, z.conjugate())
        jv = cj.conjugate()
        jd = cjp.conjugate()
        hv = 2.0 * jv - ch.conjugate()
        hd = 2.0 * jd - chp.conjugate()
    if n < 0 and m % 2 == 1:
        jv, jd, hv, hd = -jv, -jd, -hv, -hd
    return CylPair(j=jv, jp=jd, h=hv, hp=hd, order=int(n), arg=z)


def bessel_j(n: int, z) -> complex:
    """J_n(z) for integer n and finite complex z."""
    z = _checked(z)
    m = abs(int(n))
    if z == 0:
        val = 1.0 + 0j if m == 0 else 0.0 + 0j
    elif abs(z) <= _SERIES_RADIUS:
        w = z if z.imag >= 0.0 else z.conjugate()
        val = _j_series(m, w)
        if z.imag < 0.0:
            val = val.conjugate()
    else:
        val = cyl_pair(m, z).j
    if n < 0 and m % 2 == 1:
        val = -val
    return val


def hankel1(n: int, z) -> complex:
    """H_n(z) = J_n(z) + i Y_n(z), first kind; z = 0 is rejected."""
    return cyl_pair(n, z).h
