"""Moment/cumulant conversion and the i.i.d. renormalized-sum limit check.

For an atom law whose first k moments match the standard Gaussian moments,
the characteristic function of the scaled partial sum, divided by the
Gaussian reference, converges to exp(c_{k+1} (i lam)^{k+1} / (k+1)!).  Both
sides are computed deterministically here: the left-hand side from the exact
characteristic function of the base law in the log domain, the right-hand
side in closed form.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .charfn import CharTrace, LambdaGrid, WeightedEnsemble

__all__ = [
    "moments_to_cumulants",
    "cumulants_to_moments",
    "gaussian_moment",
    "BaseLaw",
    "cum1_lhs",
    "cum1_limit",
    "cum1_trace",
]


def moments_to_cumulants(mu):
    """Cumulants c_1..c_m from raw moments (1, mu_1, ..., mu_m).

    Standard recursion c_n = mu_n - sum_{j=1}^{n-1} C(n-1, j-1) c_j mu_{n-j};
    exact when fed Fractions, float otherwise.  The leading entry of the
    input must be the zeroth moment, 1.
    """
    mu = list(mu)
    if not mu or mu[0] != 1:
        raise ValueError("moment sequence must start with mu_0 = 1")
    c = [None]  # 1-indexed
    for n in range(1, len(mu)):
        acc = mu[n]
        for j in range(1, n):
            acc -= math.comb(n - 1, j - 1) * c[j] * mu[n - j]
        c.append(acc)
    return c[1:]


def cumulants_to_moments(c):
    """Raw moments (1, mu_1, ..., mu_m) from cumulants c_1..c_m (inverse recursion)."""
    c = [None] + list(c)
    mu = [1]
    for n in range(1, len(c)):
        acc = c[n]
        for j in range(1, n):
            acc += math.comb(n - 1, j - 1) * c[j] * mu[n - j]
        mu.append(acc)
    return mu


def gaussian_moment(j: int) -> int:
    """Raw moment of the standard Gaussian: 0 for odd j, (j-1)!! for even j."""
    if j < 0:
        raise ValueError("need j >= 0")
    if j % 2 == 1:
        return 0
    out = 1
    for i in range(j - 1, 0, -2):
        out *= i
    return out


@dataclass(frozen=True)
class BaseLaw:
    """Atom law with exact characteristic function and moments."""

    ensemble: WeightedEnsemble

    @classmethod
    def two_point(cls, a: float = 1.0) -> "BaseLaw":
        """The symmetric law on {-a, +a}; its cf is cos(a lam)."""
        return cls(WeightedEnsemble([a, -a]))

    def cf(self, lam: float) -> complex:
        e = self.ensemble
        return complex(np.sum(e.weights * np.exp(1j * lam * e.values))) / e.total_weight

    def moment(self, j: int) -> float:
        e = self.ensemble
        return float(np.sum(e.weights * e.values**j)) / e.total_weight

    def moments(self, m: int) -> list[float]:
        return [1.0] + [self.moment(j) for j in range(1, m + 1)]

    def cumulant(self, n: int) -> float:
        return moments_to_cumulants(self.moments(n))[n - 1]

    def scaled(self, a: float) -> "BaseLaw":
        return BaseLaw(self.ensemble.scaled(a))

    def check_gaussian_moments(self, k: int, tol: float = 1e-12) -> None:
        """The sharp precondition: moments 1..k equal the standard Gaussian's."""
        for j in range(1, k + 1):
            if abs(self.moment(j) - gaussian_moment(j)) > tol:
                raise ValueError(
                    f"moment {j} is {self.moment(j)!r}, expected the Gaussian "
                    f"value {gaussian_moment(j)}; first violated moment is {j}"
                )


def cum1_lhs(base: BaseLaw, k: int, n: int, lam: float) -> complex:
    """Renormalized cf of the scaled sum of n i.i.d. copies of the base law.

    Computes n log phi(lam n^{-1/(k+1)}) + lam^2 n^{(k-1)/(k+1)} / 2 with the
    principal log and exponentiates once; the power phi^n and the Gaussian
    compensator are never formed separately.
    """
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    base.check_gaussian_moments(k)
    phi = base.cf(lam * n ** (-1.0 / (k + 1)))
    if phi == 0:
        raise ValueError("principal log undefined: characteristic function vanishes")
    return cmath.exp(n * cmath.log(phi) + 0.5 * lam * lam * n ** ((k - 1) / (k + 1)))


def cum1_limit(k: int, c: float, lam: float) -> complex:
    """exp(c (i lam)^{k+1} / (k+1)!)."""
    return cmath.exp(c * (1j * lam) ** (k + 1) / math.factorial(k + 1))


def cum1_trace(base: BaseLaw, k: int, n: int, grid: LambdaGrid,
               label: str | None = None) -> CharTrace:
    """cum1_lhs along a grid, with principal-branch continuity tracking.

    The log is taken per point; a jump of the argument of phi by more than
    pi/2 between adjacent grid points is treated as a branch discontinuity
    and raised, never silently unwound.
    """
    scale = n ** (-1.0 / (k + 1))
    phis = np.array([base.cf(lam * scale) for lam in grid.points])
    if np.any(phis == 0):
        raise ValueError("principal log undefined: characteristic function vanishes")
    args = np.angle(phis)
    if np.any(np.abs(np.diff(args)) > 0.5 * math.pi):
        raise ValueError("branch discontinuity along grid")
    vals = np.exp(n * np.log(phis) + 0.5 * grid.points**2 * n ** ((k - 1) / (k + 1)))
    base.check_gaussian_moments(k)
    return CharTrace(grid, vals, label or f"renormalized-sum k={k} n={n}")
