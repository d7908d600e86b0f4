"""The Dedekind-sum renormalized-Cauchy experiment.

F_N is the set of coprime pairs (c, d) with 1 <= d < c < N under counting
measure; D_N the random variable (d, c) -> s(d, c).  The experiment tracks
exp(gamma_N |t|) E_N(e^{i t D_N}) as N grows (the four-panel figure
pipeline), estimates the limiting function

    Phi(t) = (1 - |t|/4pi)^{-1} ( (3/pi) int_F (y |eta(z)|^4)^{t/2pi} dx dy/y^2 )^{-1}

by exact sampling of the hyperbolic probability measure on the fundamental
domain F = {|x| <= 1/2, |z| >= 1}, and measures the Kolmogorov-Smirnov
distance of s(d,c)/((log c)/2pi) to the standard Cauchy law.

Dedekind sums are computed exactly and cached per modulus c as correctly
rounded doubles; all trigonometry happens at aggregation time.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .charfn import WeightedEnsemble, cauchy_law_distance, chunk_slices
from .specialfn import dedekind_sum_fast

__all__ = [
    "FareySet",
    "FigureTrace",
    "enumerate_farey",
    "vardi_gamma",
    "trace_window",
    "figure_trace",
    "vardi_phi",
    "vardi_phi_quadrature",
    "vardi_law_check",
    "s_values_for_modulus",
]

TWO_PI = 2.0 * math.pi
CONVERGENT_WINDOW = 4.0 * math.pi / 3.0   # renormalized trace has a limit
THEOREM_WINDOW = 2.0 * math.pi            # uniform expansion window


@dataclass(frozen=True)
class FareySet:
    """All coprime (c, d) with 1 <= d < c < n, ascending in c then d."""

    n: int
    pairs: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.pairs)


def enumerate_farey(n: int) -> FareySet:
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    pairs = [(c, d) for c in range(2, n) for d in range(1, c) if math.gcd(c, d) == 1]
    return FareySet(n, tuple(pairs))


def vardi_gamma(n: float) -> float:
    """gamma_N = log(N/4)/(2 pi), so that exp(-|t| gamma_N) = (N/4)^{-t/2pi}."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return math.log(n / 4.0) / TWO_PI


_S_CACHE: dict[int, np.ndarray] = {}


def s_values_for_modulus(c: int) -> np.ndarray:
    """s(d, c) for d = 1..c-1 coprime to c, ascending d, as exact-rounded doubles.

    Only d < c/2 is computed; the rest follows from s(c-d, c) = -s(d, c).
    """
    cached = _S_CACHE.get(c)
    if cached is not None:
        return cached
    ds = [d for d in range(1, c) if math.gcd(c, d) == 1]
    half = [float(dedekind_sum_fast(d, c)) for d in ds if 2 * d < c]
    if c == 2:
        vals = np.array([0.0])
    else:
        vals = np.empty(len(ds))
        m = len(half)
        vals[:m] = half
        vals[m:] = -np.array(half[::-1])
    _S_CACHE[c] = vals
    return vals


@dataclass
class FigureTrace:
    """Rows (N, exp(gamma_N |t|) Re E_N(e^{i t D_N})) for one t."""

    t: float
    rows: list[tuple[int, float]]
    window: str
    imag_max: float  # largest |Im E_N| seen over the reported N


def trace_window(t: float) -> str:
    """Window bookkeeping for a trace at frequency t.

    "convergent": |t| < 4pi/3, the renormalized expectation has a limit;
    "theorem-only": |t| < 2pi, the expansion holds but the error term may
    dominate the renormalized trace; "exploratory" beyond.
    """
    if abs(t) < CONVERGENT_WINDOW:
        return "convergent"
    if abs(t) < THEOREM_WINDOW:
        return "theorem-only"
    return "exploratory"


def figure_trace(t: float, n_max: int, stride: int = 1) -> FigureTrace:
    """Incremental sweep of the renormalized trace over N = 2, 2+stride, ...

    The running sum over e^{i t s(d,c)} grows with c; the full ensemble is
    never rebuilt per N.  F_2 is empty, so a leading N = 2 row carries NaN.
    Aggregation order is fixed (ascending c, ascending d within c), making
    reruns bit-identical.
    """
    if t == 0.0:
        raise ValueError("need t != 0")
    if n_max < 2:
        raise ValueError(f"need n_max >= 2, got {n_max}")
    if stride < 1:
        raise ValueError(f"need stride >= 1, got {stride}")
    rows: list[tuple[int, float]] = []
    re_sum = 0.0
    im_sum = 0.0
    count = 0
    imag_max = 0.0
    c = 2
    for n in range(2, n_max + 1, stride):
        while c < n:
            sv = s_values_for_modulus(c)
            ts = t * sv
            re_sum += float(np.sum(np.cos(ts)))
            im_sum += float(np.sum(np.sin(ts)))
            count += sv.size
            c += 1
        if count == 0:
            rows.append((n, math.nan))
            continue
        imag_max = max(imag_max, abs(im_sum / count))
        rows.append((n, math.exp(vardi_gamma(n) * abs(t)) * re_sum / count))
    return FigureTrace(t, rows, trace_window(t), imag_max)


# --- the limiting function Phi ----------------------------------------------

# Normalization of the invariant inside the limiting integral.  The constant
# pairs the integral with the log(N/4)/(2 pi) renormalization used by the
# figure traces: empirically (checked to four digits at t in {pi/4, pi/2,
# 3pi/4, pi}, N up to 8000) the renormalized trace converges to
# (1 - |t|/4pi)^{-1} <(ETA_NORM y|eta|^4)^{t/2pi}>^{-1}.  Under the
# equivalent renormalization log(2N)/(2 pi) the constant would be 1.
ETA_NORM = 8.0

_PENTAGONAL = [(k * (3 * k - 1) // 2, k * (3 * k + 1) // 2, (-1) ** k)
               for k in range(1, 9)]


def _eta_abs4(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """|eta(x + iy)|^4 for points inside the fundamental domain (y >= 1/2).

    Direct q-series; |q| <= e^{-pi} there, so eight pentagonal terms reach
    full double precision.
    """
    q = np.exp(2j * math.pi * (x + 1j * y))
    p = np.ones_like(q)
    for e1, e2, sgn in _PENTAGONAL:
        p += sgn * (q**e1 + q**e2)
    return np.exp(-math.pi * y / 3.0) * np.abs(p) ** 4


def _phi_from_moments(t: float, mean: float, se_mean: float) -> tuple[float, float]:
    pole = 1.0 / (1.0 - abs(t) / (4.0 * math.pi))
    value = pole / mean
    return value, value * se_mean / mean


def vardi_phi(t: float, samples: int, seed: int, chunks: int = 1) -> tuple[float, float]:
    """Monte-Carlo estimate of Phi(t) with its standard error.

    Estimates (1 - |t|/4pi)^{-1} E[(ETA_NORM y|eta(z)|^4)^{|t|/2pi}]^{-1}.
    The hyperbolic probability measure (3/pi) dx dy / y^2 on the fundamental
    domain is sampled exactly: theta uniform on (-pi/6, pi/6), x = sin theta,
    u uniform on (0, 1), y = sqrt(1 - x^2)/u.  Streams are Philox
    counter-based generators keyed by (seed, chunk), so the result depends
    only on (t, samples, seed, chunks), never on scheduling.  Even in t by
    construction.  Pole of the leading factor at |t| = 4pi.
    """
    if abs(t) >= 4.0 * math.pi:
        raise ValueError("at or beyond pole: need |t| < 4 pi")
    if samples < 2:
        raise ValueError("need samples >= 2")
    s_exp = abs(t) / TWO_PI
    n = 0
    s1 = 0.0
    s2 = 0.0
    for j, sl in enumerate(chunk_slices(samples, chunks)):
        m = sl.stop - sl.start
        if m == 0:
            continue
        rng = np.random.Generator(np.random.Philox(key=np.array([seed, j], dtype=np.uint64)))
        theta = rng.uniform(-math.pi / 6.0, math.pi / 6.0, m)
        u = np.maximum(rng.random(m), 2.0**-60)
        x = np.sin(theta)
        y = np.sqrt(1.0 - x * x) / u
        v = (ETA_NORM * y * _eta_abs4(x, y)) ** s_exp
        s1 += float(np.sum(v))
        s2 += float(np.sum(v * v))
        n += m
    mean = s1 / n
    var = max(s2 - s1 * s1 / n, 0.0) / (n - 1)
    return _phi_from_moments(t, mean, math.sqrt(var / n))


def vardi_phi_quadrature(t: float, n_theta: int = 256, n_u: int = 256) -> float:
    """Deterministic alternative: tensor Gauss-Legendre over (theta, u)."""
    if abs(t) >= 4.0 * math.pi:
        raise ValueError("at or beyond pole: need |t| < 4 pi")
    s_exp = abs(t) / TWO_PI
    tn, tw = np.polynomial.legendre.leggauss(n_theta)
    un, uw = np.polynomial.legendre.leggauss(n_u)
    theta = (math.pi / 6.0) * tn           # maps [-1,1] to (-pi/6, pi/6)
    u = 0.5 * (un + 1.0)                   # maps to (0, 1)
    x = np.sin(theta)
    y = np.sqrt(1.0 - x * x)[:, None] / u[None, :]
    vals = (ETA_NORM * y * _eta_abs4(np.broadcast_to(x[:, None], y.shape), y)) ** s_exp
    # weights: uniform densities absorb the interval lengths
    mean = float(np.sum((tw / 2.0)[:, None] * (uw / 2.0)[None, :] * vals))
    return _phi_from_moments(t, mean, 0.0)[0]


def vardi_law_check(n: int) -> float:
    """KS distance of s(d,c)/((log c)/2pi) over F_n to the standard Cauchy law."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    blocks = []
    for c in range(2, n):
        blocks.append(s_values_for_modulus(c) * (TWO_PI / math.log(c)))
    values = np.concatenate(blocks)
    return cauchy_law_distance(WeightedEnsemble(values), 1.0)
