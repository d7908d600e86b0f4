"""Arithmetic and analytic special functions.

Exact rational sawtooth and Dedekind sums, the Dedekind eta function on the
upper half-plane, the Barnes G function on the positive reals, and the
eigenvalue-counting limit function for arcs of the unit circle built from it.

Dedekind sums are kept as exact ``fractions.Fraction`` values throughout;
callers convert to float only when aggregating ensembles.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np
from scipy.special import zeta as _hurwitz_zeta

__all__ = [
    "sawtooth",
    "dedekind_sum_naive",
    "dedekind_sum_fast",
    "dedekind_eta",
    "log_barnes_g",
    "barnes_g",
    "wieand_limit",
]

_EULER_GAMMA = 0.57721566490153286060651209008240243


def sawtooth(x: Fraction) -> Fraction:
    """((x)): zero at integers, x - floor(x) - 1/2 otherwise."""
    x = Fraction(x)
    if x.denominator == 1:
        return Fraction(0)
    return x - math.floor(x) - Fraction(1, 2)


def _check_pair(d: int, c: int) -> None:
    if not 1 <= d < c:
        raise ValueError(f"need 1 <= d < c, got (d, c) = ({d}, {c})")
    if math.gcd(c, d) != 1:
        raise ValueError(f"need gcd(c, d) = 1, got gcd({c}, {d}) = {math.gcd(c, d)}")


def dedekind_sum_naive(d: int, c: int) -> Fraction:
    """s(d, c) = sum_{h=1}^{c-1} ((h d / c)) ((h / c)), exact, O(c).

    Slow reference implementation; kept as the oracle for the Euclidean
    version below.
    """
    _check_pair(d, c)
    # one pass over precomputed sawtooth values ((r/c)) indexed by r mod c
    saw = [sawtooth(Fraction(r, c)) for r in range(c)]
    total = Fraction(0)
    for h in range(1, c):
        total += saw[h * d % c] * saw[h]
    return total


def dedekind_sum_fast(d: int, c: int) -> Fraction:
    """s(d, c) via the reciprocity law, O(log c) Euclidean steps.

    Uses s(d, c) + s(c, d) = -1/4 + (d/c + c/d + 1/(cd))/12 together with
    periodicity of the first argument mod the second.  The alternating
    reciprocity terms are accumulated on a raw integer numerator/denominator
    pair and reduced once at the end.
    """
    _check_pair(d, c)
    num, den = 0, 1
    sign = 1
    a, b = c, d
    while b > 0:
        # term for s(b, a): (a^2 + b^2 + 1)/(12ab) - 1/4
        t_den = 12 * a * b
        num = num * 4 * t_den + sign * (4 * (a * a + b * b + 1) - t_den) * den
        den = den * 4 * t_den
        sign = -sign
        a, b = b, a % b
    return Fraction(num, den)


# --- Dedekind eta -----------------------------------------------------------

def _euler_product(q: complex, tol: float = 1e-18) -> complex:
    """prod_{n>=1} (1 - q^n) by the pentagonal-number series."""
    total = 1.0 + 0.0j
    k = 1
    while True:
        e1 = k * (3 * k - 1) // 2
        qe1 = q**e1
        total += (-1) ** k * (qe1 + qe1 * q**k)  # exponents k(3k-1)/2 and k(3k+1)/2
        if abs(qe1) < tol:
            return total
        k += 1


def dedekind_eta(z: complex) -> complex:
    """eta(z) = e^{i pi z/12} prod_{n>=1}(1 - e^{2 i pi n z}) for Im z > 0.

    The argument is first reduced into |Re z| <= 1/2, |z| >= 1 using
    eta(z + 1) = e^{i pi/12} eta(z) and eta(z) = eta(-1/z) / sqrt(z/i), so the
    q-series always runs at |q| <= e^{-pi sqrt(3)}.
    """
    z = complex(z)
    if not z.imag > 0:
        raise ValueError(f"need Im z > 0, got {z}")
    pref = 1.0 + 0.0j
    for _ in range(256):
        n = round(z.real)
        if n:
            z -= n
            pref *= cmath.exp(1j * math.pi * n / 12.0)
        if abs(z) >= 1.0:
            break
        pref /= cmath.sqrt(z / 1j)
        z = -1.0 / z
    else:  # pragma: no cover - reduction always terminates
        raise RuntimeError("modular reduction did not terminate")
    q = cmath.exp(2j * math.pi * z)
    return pref * cmath.exp(1j * math.pi * z / 12.0) * _euler_product(q)


# --- Barnes G ---------------------------------------------------------------

def log_barnes_g(z: float) -> float:
    """log G(z) for real z > 0.

    Classical convergent series for log G(1+w),
        (w/2) log 2pi - w(w+1)/2 - gamma w^2/2
            + sum_{n>=1} [w^2/(2n) - w + n log(1 + w/n)],
    with the n > M remainder summed exactly as a Hurwitz-zeta power series in
    w (tail below 1e-14 on the domain used here).
    """
    if z <= 0.0:
        raise ValueError(f"need z > 0, got {z}")
    w = z - 1.0
    if w == 0.0:
        return 0.0
    m = 64
    n = np.arange(1.0, m + 1.0)
    head = float(np.sum(w * w / (2.0 * n) - w + n * np.log1p(w / n)))
    # sum_{n>m} [w^2/(2n) - w + n log(1+w/n)] = sum_{j>=3} (-1)^{j-1} (w^j/j) zeta(j-1, m+1)
    tail = 0.0
    wj = w**3
    for j in range(3, 300):
        term = (-1) ** (j - 1) * wj / j * float(_hurwitz_zeta(j - 1, m + 1))
        tail += term
        wj *= w
        if abs(term) < 1e-18:
            break
    return (
        0.5 * w * math.log(2.0 * math.pi)
        - 0.5 * w * (w + 1.0)
        - 0.5 * _EULER_GAMMA * w * w
        + head
        + tail
    )


def barnes_g(z: float) -> float:
    """Barnes G(z) for real z > 0; G(1) = G(2) = 1, G(z+1) = Gamma(z) G(z)."""
    return math.exp(log_barnes_g(z))


def wieand_limit(t: float, gamma_arc: float) -> float:
    """Limit of the renormalized arc eigenvalue-count characteristic function.

    Value (2 - 2 cos 4 pi gamma)^{t^2/(4 pi^2)} G(1 - t/2pi) G(1 + t/2pi) on
    the restricted window |t| < pi; the underlying count has a 2pi-periodic
    characteristic function, so the window cannot be enlarged.
    """
    if abs(t) >= math.pi:
        raise ValueError("outside restricted window: need |t| < pi")
    if not 0.0 < gamma_arc < 0.5:
        raise ValueError(f"need gamma_arc in (0, 1/2), got {gamma_arc}")
    u = abs(t) / (2.0 * math.pi)
    base = 2.0 - 2.0 * math.cos(4.0 * math.pi * gamma_arc)
    return base ** (t * t / (4.0 * math.pi**2)) * barnes_g(1.0 - u) * barnes_g(1.0 + u)
