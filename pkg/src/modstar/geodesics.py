"""Primitive hyperbolic conjugacy classes of the modular group.

Classes are enumerated as cyclic words R^{a1} L^{b1} ... R^{ak} L^{bk} in the
generators R = [[1,1],[0,1]], L = [[1,0],[1,1]] (every primitive hyperbolic
class has a unique such necklace up to rotation of its block pairs).  Each
class carries its trace, norm N = ((tr + sqrt(tr^2-4))/2)^2, geodesic length
log N, and winding number psi, computed from the word (count of R minus
count of L) and cross-checkable through the classical Dedekind-sum formula
on the matrix.

The ell-weighted ensemble over norm <= x feeds the renormalized-Cauchy trace
exp(gamma_x |t|) E_x(e^{i t psi}) with gamma_x = (3/pi) log x, compared on
|t| <= pi/12 against 1/(1 - 3|t|/pi); the weight normalization
sum ell(g) ~ x is the prime-geodesic-theorem check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .specialfn import dedekind_sum_fast

__all__ = [
    "GeodesicClass",
    "GeodesicEnsembleX",
    "norm_of_trace",
    "trace_cutoff",
    "enumerate_classes",
    "psi_word",
    "psi_matrix",
    "sarnak_gamma",
    "phi1",
    "sarnak_trace",
    "sarnak_trace_on",
    "selberg_check",
    "parse_word",
]

SARNAK_WINDOW = math.pi / 12.0


def norm_of_trace(t: int) -> float:
    """N = ((t + sqrt(t^2 - 4))/2)^2 for integer trace t >= 3."""
    if t < 3:
        raise ValueError(f"not hyperbolic: need trace >= 3, got {t}")
    half = (t + math.sqrt(t * t - 4.0)) / 2.0
    return half * half


def trace_cutoff(x: float) -> int:
    """Largest integer trace t >= 3 with N(t) <= x, or 2 if there is none.

    N(t) <= x is equivalent to t^2 x <= (x + 1)^2; the comparison runs in
    exact rational arithmetic so boundary ties never depend on rounding.
    """
    if x < 0 or not math.isfinite(x):
        raise ValueError(f"need finite x >= 0, got {x}")
    xf = Fraction(x)
    bound = (xf + 1) ** 2
    t = max(2, int(math.sqrt(x)) + 2)
    while t * t * xf > bound:
        t -= 1
    return max(t, 2)


@dataclass(frozen=True)
class GeodesicClass:
    """One primitive hyperbolic conjugacy class."""

    runlengths: tuple[int, ...]          # (a1, b1, ..., ak, bk), canonical rotation
    matrix: tuple[int, int, int, int]    # product of the blocks, (a, b, c, d)
    trace: int
    norm: float
    length: float
    psi: int

    @property
    def word(self) -> str:
        out = []
        for i in range(0, len(self.runlengths), 2):
            out.append("R" * self.runlengths[i])
            out.append("L" * self.runlengths[i + 1])
        return "".join(out)


@dataclass
class GeodesicEnsembleX:
    """All classes with norm <= x, sorted by (trace, runlengths)."""

    x: float
    classes: list[GeodesicClass]
    total_length: float

    @property
    def size(self) -> int:
        return len(self.classes)


def psi_word(runlengths) -> int:
    """Winding number from the word: (number of R) - (number of L)."""
    rl = tuple(runlengths)
    if not rl or len(rl) % 2 or any(v < 1 for v in rl):
        raise ValueError(f"invalid run-length word {rl!r}")
    return sum(rl[0::2]) - sum(rl[1::2])


def psi_matrix(a: int, b: int, c: int, d: int) -> int:
    """Winding number from the matrix via the classical Dedekind-sum formula.

    psi = (a + d)/c - 12 sign(c) s(d mod |c|, |c|) - 3 sign(c (a + d)) for
    c != 0; the first two terms combine to an integer.  Well defined on the
    sign quotient: negating the matrix does not change the value.
    """
    if a * d - b * c != 1:
        raise ValueError("matrix must have determinant 1")
    if c == 0:
        raise ValueError("parabolic/upper-triangular not needed")
    sign_c = 1 if c > 0 else -1
    ac = abs(c)
    d0 = d % ac
    s_val = Fraction(0) if ac == 1 else dedekind_sum_fast(d0, ac)
    rademacher = Fraction(a + d, c) - 12 * sign_c * s_val
    if rademacher.denominator != 1:
        raise ValueError("Dedekind-sum combination is not an integer")  # pragma: no cover
    sign_cad = 1 if c * (a + d) > 0 else -1
    return int(rademacher) - 3 * sign_cad


def parse_word(word: str) -> tuple[int, ...]:
    """Run lengths of an R-leading letter word (cyclically rotated if needed)."""
    if not word or set(word) - {"R", "L"}:
        raise ValueError(f"word must be a nonempty string over R, L, got {word!r}")
    if "R" not in word or "L" not in word:
        raise ValueError("word must contain both letters")
    # rotate so the word starts with R right after an L
    k = 0
    while not (word[k] == "R" and word[k - 1] == "L"):
        k += 1
    word = word[k:] + word[:k]
    runs = []
    cur, count = word[0], 1
    for ch in word[1:]:
        if ch == cur:
            count += 1
        else:
            runs.append(count)
            cur, count = ch, 1
    runs.append(count)
    return tuple(runs)


def _rotations(rl: tuple[int, ...]) -> list[tuple[int, ...]]:
    return [rl[i:] + rl[:i] for i in range(0, len(rl), 2)]


def _block_matrix(m, a: int, b: int):
    """Multiply m by R^a L^b = [[1+ab, a], [b, 1]] on the right."""
    m00, m01, m10, m11 = m
    e = 1 + a * b
    return (m00 * e + m01 * b, m00 * a + m01,
            m10 * e + m11 * b, m10 * a + m11)


def enumerate_classes(x: float) -> GeodesicEnsembleX:
    """All primitive hyperbolic classes with norm at most x.

    Depth-first search over block sequences (a1, b1, ..., ak, bk); the trace
    of the closed word is nondecreasing in every exponent and under
    extension, which prunes the tree exactly at the trace cutoff.  Each
    cyclic class is kept when the tuple equals the least of its rotations;
    tuples with a repeated rotation are proper powers and are dropped.
    """
    t_max = trace_cutoff(x)
    found: list[GeodesicClass] = []
    if t_max >= 3:
        _search((1, 0, 0, 1), (), t_max, found)
    found.sort(key=lambda g: (g.trace, g.runlengths))
    total = float(np.sum(np.array([g.length for g in found]))) if found else 0.0
    return GeodesicEnsembleX(x, found, total)


def _search(m, prefix, t_max, out):
    a = 1
    while True:
        first = _block_matrix(m, a, 1)
        if first[0] + first[3] > t_max:
            return
        b = 1
        cur = first
        while cur[0] + cur[3] <= t_max:
            rl = prefix + (a, b)
            rots = _rotations(rl)
            if rl == min(rots) and len(set(rots)) == len(rots):
                trace = cur[0] + cur[3]
                norm = norm_of_trace(trace)
                out.append(GeodesicClass(rl, cur, trace, norm, math.log(norm),
                                         psi_word(rl)))
            _search(cur, rl, t_max, out)
            b += 1
            # append one more L: multiply by [[1,0],[1,1]]
            cur = (cur[0] + cur[1], cur[1], cur[2] + cur[3], cur[3])
        a += 1


def sarnak_gamma(x: float) -> float:
    """gamma_x = (3/pi) log x."""
    if not x > 1.0:
        raise ValueError(f"need x > 1, got {x}")
    return 3.0 * math.log(x) / math.pi


def phi1(t: float) -> float:
    """The linking-number limiting function 1/(1 - 3|t|/pi) on |t| <= pi/12."""
    if abs(t) > SARNAK_WINDOW:
        raise ValueError("outside Sarnak window: need |t| <= pi/12")
    return 1.0 / (1.0 - 3.0 * abs(t) / math.pi)


def sarnak_trace_on(ens: GeodesicEnsembleX, t: float) -> float:
    """exp(gamma_x |t|) times the ell-weighted mean of e^{i t psi} over the ensemble.

    The imaginary part vanishes by the R<->L mirror symmetry of the class
    set; it is asserted small rather than silently dropped.
    """
    if not ens.classes:
        raise ValueError(f"no classes with norm <= {ens.x}")
    ell = np.array([g.length for g in ens.classes])
    psi = np.array([g.psi for g in ens.classes], dtype=float)
    re = float(np.sum(ell * np.cos(t * psi)))
    im = float(np.sum(ell * np.sin(t * psi)))
    total = float(np.sum(ell))
    if abs(im) / total > 1e-9:
        raise RuntimeError("imaginary part of the weighted trace did not cancel")
    return math.exp(sarnak_gamma(ens.x) * abs(t)) * re / total


_ENSEMBLE_CACHE: dict[float, GeodesicEnsembleX] = {}


def _cached_ensemble(x: float) -> GeodesicEnsembleX:
    if x not in _ENSEMBLE_CACHE:
        if len(_ENSEMBLE_CACHE) > 6:
            _ENSEMBLE_CACHE.clear()
        _ENSEMBLE_CACHE[x] = enumerate_classes(x)
    return _ENSEMBLE_CACHE[x]


def sarnak_trace(t: float, x: float, exploratory: bool = False) -> float:
    """Renormalized linking-number trace at frequency t, norm cutoff x.

    |t| <= pi/12 is the proven window; beyond it only exploratory evaluation
    is offered and no convergence is claimed.
    """
    if abs(t) > SARNAK_WINDOW and not exploratory:
        raise ValueError("outside Sarnak window: need |t| <= pi/12 "
                         "(pass exploratory=True to evaluate anyway)")
    return sarnak_trace_on(_cached_ensemble(x), t)


def selberg_check(x: float) -> float:
    """(sum of lengths of classes with norm <= x) / x; tends to 1."""
    return _cached_ensemble(x).total_length / x
