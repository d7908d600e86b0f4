"""Empirical characteristic functions and mod-* renormalization.

Laws are finite lists of weighted atoms.  A renormalizer divides out a
reference characteristic function (Gaussian / Poisson / Cauchy / Dirac); the
renormalized trace on a lambda grid is the numerical stand-in for a limiting
function.  Also here: the Kolmogorov-Smirnov diagnostic against the standard
Cauchy law, inverse Fourier transforms of exponential-monomial limit
functions, and the two measures whose Fourier transforms agree on [-1/2, 1/2]
but not beyond.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

__all__ = [
    "WeightedEnsemble",
    "Renormalizer",
    "LambdaGrid",
    "CharTrace",
    "empirical_cf",
    "renormalizer_multiplier",
    "mod_star_value",
    "cauchy_law_distance",
    "inverse_fourier_limit",
    "counterexample_fourier",
    "counterexample_fourier_grid",
]


def chunk_slices(n: int, chunks: int) -> list[slice]:
    """Deterministic partition of range(n) into `chunks` contiguous blocks.

    Blocks differ in size by at most one; the layout depends only on
    (n, chunks), which pins the floating reduction order.
    """
    if chunks < 1:
        raise ValueError(f"need chunks >= 1, got {chunks}")
    chunks = min(chunks, n) if n else 1
    base, extra = divmod(n, chunks)
    out, start = [], 0
    for i in range(chunks):
        size = base + (1 if i < extra else 0)
        out.append(slice(start, start + size))
        start += size
    return out


@dataclass
class WeightedEnsemble:
    """A probability law given by finitely many weighted atoms."""

    values: np.ndarray
    weights: np.ndarray | None = None
    total_weight: float = field(init=False)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float).ravel()
        if self.values.size == 0:
            raise ValueError("empty ensemble")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("atom values must be finite")
        if self.weights is None:
            self.weights = np.ones_like(self.values)
        else:
            self.weights = np.asarray(self.weights, dtype=float).ravel()
        if self.weights.shape != self.values.shape:
            raise ValueError("values and weights must have the same length")
        if np.any(self.weights < 0.0) or not np.all(np.isfinite(self.weights)):
            raise ValueError("weights must be finite and nonnegative")
        self.total_weight = float(np.sum(self.weights))
        if not self.total_weight > 0.0:
            raise ValueError("total weight must be positive")

    def scaled(self, s: float) -> "WeightedEnsemble":
        return WeightedEnsemble(self.values * s, self.weights.copy())

    @property
    def size(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class Renormalizer:
    """Reference law whose characteristic function is divided out.

    kind is one of "gaussian" (mean, var), "poisson" (gamma),
    "cauchy" (gamma), "dirac".  The multiplier at lambda is the reciprocal
    of the reference characteristic function, so it equals 1 at lambda = 0
    for every kind.
    """

    kind: str
    mean: float = 0.0
    var: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        if self.kind not in ("gaussian", "poisson", "cauchy", "dirac"):
            raise ValueError(f"unknown renormalizer kind {self.kind!r}")
        if self.kind == "gaussian" and self.var < 0.0:
            raise ValueError("gaussian variance must be >= 0")
        if self.kind in ("poisson", "cauchy") and self.gamma < 0.0:
            raise ValueError("gamma must be >= 0")

    @classmethod
    def gaussian(cls, mean: float, var: float) -> "Renormalizer":
        return cls("gaussian", mean=mean, var=var)

    @classmethod
    def poisson(cls, gamma: float) -> "Renormalizer":
        return cls("poisson", gamma=gamma)

    @classmethod
    def cauchy(cls, gamma: float) -> "Renormalizer":
        return cls("cauchy", gamma=gamma)

    @classmethod
    def dirac(cls) -> "Renormalizer":
        return cls("dirac")

    def multiplier(self, lam: float) -> complex:
        if self.kind == "gaussian":
            return cmath.exp(-1j * self.mean * lam + 0.5 * self.var * lam * lam)
        if self.kind == "poisson":
            return cmath.exp(-self.gamma * (cmath.exp(1j * lam) - 1.0))
        if self.kind == "cauchy":
            return complex(math.exp(self.gamma * abs(lam)))
        return 1.0 + 0.0j

    def multipliers(self, lams: np.ndarray) -> np.ndarray:
        return np.array([self.multiplier(l) for l in np.asarray(lams, dtype=float)])


def renormalizer_multiplier(r: Renormalizer, lam: float) -> complex:
    """exp(-i m lam + var lam^2/2), exp(-gamma(e^{i lam}-1)), exp(gamma|lam|), or 1."""
    return r.multiplier(lam)


@dataclass(frozen=True)
class LambdaGrid:
    """Strictly increasing evaluation points inside a window (-a, a)."""

    points: np.ndarray
    window_a: float = math.inf

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float).ravel()
        object.__setattr__(self, "points", pts)
        if pts.size == 0:
            raise ValueError("empty grid")
        if np.any(np.diff(pts) <= 0.0):
            raise ValueError("grid points must be strictly increasing")
        if not self.window_a > 0.0:
            raise ValueError("window half-width must be positive")
        if np.any(np.abs(pts) >= self.window_a):
            raise ValueError("all grid points must satisfy |lambda| < window_a")

    @classmethod
    def linspace(cls, lo: float, hi: float, n: int, window_a: float = math.inf) -> "LambdaGrid":
        return cls(np.linspace(lo, hi, n), window_a)

    @property
    def size(self) -> int:
        return int(self.points.size)


@dataclass
class CharTrace:
    """Complex values of a (renormalized) characteristic function on a grid."""

    grid: LambdaGrid
    values: np.ndarray
    label: str = ""

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex).ravel()
        if self.values.shape != self.grid.points.shape:
            raise ValueError("values must match the grid length")

    def value_at(self, lam: float) -> complex:
        idx = np.nonzero(self.grid.points == lam)[0]
        if idx.size == 0:
            raise ValueError(f"lambda = {lam} not on the grid")
        return complex(self.values[idx[0]])

    def hermitian_defect(self) -> float:
        """max |value(-lam) - conj(value(lam))| over grid points with both signs present."""
        pts = self.grid.points
        pos = {p: i for i, p in enumerate(pts)}
        worst = 0.0
        for i, p in enumerate(pts):
            j = pos.get(-p)
            if j is not None:
                worst = max(worst, abs(self.values[j] - np.conj(self.values[i])))
        return worst

    def to_csv(self, fh) -> None:
        """CSV schema: lambda,re,im,label with 17 significant digits."""
        fh.write("lambda,re,im,label\n")
        for lam, v in zip(self.grid.points, self.values):
            fh.write(f"{lam:.17g},{v.real:.17g},{v.imag:.17g},{self.label}\n")


def empirical_cf(ens: WeightedEnsemble, grid: LambdaGrid, chunks: int = 1,
                 label: str = "empirical") -> CharTrace:
    """(sum_j w_j e^{i lam x_j}) / (sum_j w_j) on the grid.

    Atom reduction runs per contiguous chunk with numpy's pairwise summation,
    then folds the chunk partials in index order: results are bit-stable for
    a given chunk count.  The normalizing weight sum uses the same reduction,
    which makes the value at lambda = 0 exactly 1.
    """
    slices = chunk_slices(ens.size, chunks)
    out = np.empty(grid.size, dtype=complex)
    for i, lam in enumerate(grid.points):
        re = im = den = 0.0
        for sl in slices:
            w = ens.weights[sl]
            phase = lam * ens.values[sl]
            re += float(np.sum(w * np.cos(phase)))
            im += float(np.sum(w * np.sin(phase)))
            den += float(np.sum(w))
        # at lam = 0 the cosine block is bitwise the weight block, so re == den
        out[i] = complex(re / den, im / den)
    return CharTrace(grid, out, label)


def mod_star_value(ens: WeightedEnsemble, r: Renormalizer, grid: LambdaGrid,
                   chunks: int = 1, label: str | None = None) -> CharTrace:
    """Pointwise product of the empirical cf with the renormalizer multiplier."""
    trace = empirical_cf(ens, grid, chunks=chunks)
    if label is None:
        label = f"mod-{r.kind}"
    if r.kind == "dirac":
        return CharTrace(grid, trace.values, label)
    return CharTrace(grid, trace.values * r.multipliers(grid.points), label)


def cauchy_law_distance(ens: WeightedEnsemble, scale: float) -> float:
    """Exact Kolmogorov-Smirnov distance of the law of value/scale to standard Cauchy.

    The supremum of |F_emp - F| over the real line is attained at an atom,
    approached from the left or from the right; both one-sided limits are
    used at every atom, so the step-vs-continuous distance is exact up to
    float rounding.
    """
    if not scale > 0.0:
        raise ValueError(f"scale must be positive, got {scale}")
    x = ens.values / scale
    order = np.argsort(x, kind="stable")
    x = x[order]
    w = ens.weights[order]
    cum = np.cumsum(w)
    total = cum[-1]
    # group equal positions: jump of the empirical CDF is the grouped weight
    last_of_group = np.nonzero(np.append(np.diff(x) > 0.0, True))[0]
    xs = x[last_of_group]
    after = cum[last_of_group] / total
    before = np.concatenate(([0.0], after[:-1]))
    cdf = 0.5 + np.arctan(xs) / math.pi
    return float(max(np.max(after - cdf), np.max(cdf - before)))


def inverse_fourier_limit(k: int, c: float, xs) -> np.ndarray:
    """H(x) = (1/2pi) int e^{-i lam x} exp(c (i lam)^{k+1}/(k+1)!) d lam.

    Defined when k+1 is even and c has the sign that makes the integrand
    decay, i.e. c * (-1)^{(k+1)/2} < 0.  H is even in x, integrates to 1,
    and is generally not a probability density.
    """
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    if (k + 1) % 2 != 0 or c * (-1) ** ((k + 1) // 2) >= 0:
        raise ValueError("divergent inverse transform")
    fac = float(math.factorial(k + 1))
    beta = -c * (-1) ** ((k + 1) // 2)  # > 0; integrand is exp(-beta lam^{k+1}/fac)
    lam_max = (fac * 37.0 / beta) ** (1.0 / (k + 1))

    def envelope(lam):
        return math.exp(-beta * lam ** (k + 1) / fac)

    out = np.empty(len(np.atleast_1d(xs)), dtype=float)
    for i, x in enumerate(np.atleast_1d(np.asarray(xs, dtype=float))):
        val, _ = quad(envelope, 0.0, lam_max, weight="cos", wvar=abs(x),
                      epsabs=1e-12, epsrel=1e-12, limit=400)
        out[i] = val / math.pi
    return out


_CE_X_MAX = 20000.0   # truncation radius; dropped tail is below 2/(pi X)
_CE_STEP = 0.05


def _simpson_weights(n: int, h: float) -> np.ndarray:
    if n % 2 == 0:
        raise ValueError("need an odd number of nodes")
    w = np.ones(n)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w * (h / 3.0)


def counterexample_fourier_grid(which: str, lams, x_max: float = _CE_X_MAX,
                                step: float = _CE_STEP) -> np.ndarray:
    """Numeric Fourier transform of measure A or B at each lambda.

    A is (1 - cos x)/(pi x^2) dx; B is delta_0/2 + (1 - cos(x/2))/(pi x^2) dx.
    Their transforms have closed forms (1-|lam|)_+ and 1/2 + (1/2-|lam|)_+,
    which coincide on [-1/2, 1/2].  Evaluation is composite Simpson on
    [0, x_max] (the integrand is even), doubled; the dropped oscillatory tail
    is bounded by the 1/x^2 envelope, 2/(pi x_max) in total mass.
    """
    if which not in ("A", "B"):
        raise ValueError(f"measure must be 'A' or 'B', got {which!r}")
    n = 2 * int(round(x_max / (2 * step))) + 1
    x = np.linspace(0.0, x_max, n)
    h = x[1] - x[0]
    if which == "A":
        # (1 - cos x)/(pi x^2) = (1/2pi) (sin(x/2) / (x/2))^2
        rho = np.sinc(x / (2.0 * math.pi)) ** 2 / (2.0 * math.pi)
        atom = 0.0
    else:
        rho = np.sinc(x / (4.0 * math.pi)) ** 2 / (8.0 * math.pi)
        atom = 0.5
    wrho = _simpson_weights(n, h) * rho
    lams = np.atleast_1d(np.asarray(lams, dtype=float))
    out = np.empty(lams.size)
    for i, lam in enumerate(lams):
        out[i] = atom + 2.0 * float(np.sum(wrho * np.cos(lam * x)))
    return out


def counterexample_fourier(which: str, lam: float, x_max: float = _CE_X_MAX,
                           step: float = _CE_STEP) -> float:
    return float(counterexample_fourier_grid(which, [lam], x_max, step)[0])
