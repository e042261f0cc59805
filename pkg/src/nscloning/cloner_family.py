"""The one-parameter family of universal symmetric 1-to-M qubit cloners.

A member is fixed by ``two_j = M`` and a mixing parameter ``t`` in [0, 1]
between the two solutions ``(j + m)/(j(2j+1))`` and ``(j - m)/(j(2j+1))``.
When ``t`` is an ``int`` or ``Fraction`` every quantity is computed in exact
rational arithmetic; a ``float`` ``t`` gives floating-point results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Literal, Sequence, Union

import numpy as np

from .errors import DomainError, FidelityOutOfRangeError
from .pseudospin import check_two_j

Number = Union[Fraction, float]
Kind = Literal["optimal", "worst", "uniform", "prime"]
KINDS: tuple[str, ...] = ("optimal", "worst", "uniform", "prime")


def _is_exact(x) -> bool:
    return isinstance(x, Rational) and not isinstance(x, bool)


def as_exact(x) -> Fraction:
    """Parse ``"3/4"``, ``0.25`` (exactly), ``Fraction`` or ``int`` into a Fraction."""
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


@dataclass(frozen=True)
class ClonerSpec:
    two_j: int
    t: Number

    def __post_init__(self):
        check_two_j(self.two_j)
        t = self.t
        if _is_exact(t):
            object.__setattr__(self, "t", Fraction(t))
        else:
            t = float(t)
            if not math.isfinite(t):
                raise DomainError("t must be finite")
            object.__setattr__(self, "t", t)
        if not 0 <= self.t <= 1:
            raise DomainError(f"t must lie in [0, 1], got {self.t}")

    @property
    def exact(self) -> bool:
        return isinstance(self.t, Fraction)

    @property
    def j(self) -> Fraction:
        return Fraction(self.two_j, 2)

    @property
    def copies(self) -> int:
        return self.two_j


@dataclass(frozen=True)
class ProbDist:
    """Coefficients ``p_{jm}`` indexed by ascending m = -j, ..., j."""

    two_j: int
    p: tuple

    def __post_init__(self):
        if len(self.p) != self.two_j + 1:
            raise DomainError(f"expected {self.two_j + 1} coefficients, got {len(self.p)}")
        object.__setattr__(self, "p", tuple(self.p))

    @classmethod
    def from_sequence(cls, values: Sequence, two_j: int | None = None) -> ProbDist:
        values = list(values)
        if two_j is None:
            two_j = len(values) - 1
        return cls(two_j, tuple(values))

    @property
    def exact(self) -> bool:
        return all(isinstance(x, Fraction) for x in self.p)

    @property
    def two_m(self) -> range:
        return range(-self.two_j, self.two_j + 1, 2)

    def __getitem__(self, two_m: int):
        return self.p[(two_m + self.two_j) // 2]

    def as_array(self) -> np.ndarray:
        return np.array([float(x) for x in self.p])

    def descending(self) -> np.ndarray:
        """Float coefficients in matrix order m = j, ..., -j."""
        return self.as_array()[::-1]


@dataclass(frozen=True)
class FidelityInterval:
    lo: Number
    hi: Number

    def __contains__(self, f) -> bool:
        return self.lo <= f <= self.hi

    @property
    def midpoint(self) -> Number:
        return (self.lo + self.hi) / 2


def prob_vector(spec: ClonerSpec) -> ProbDist:
    n = spec.two_j
    denom = n * (n + 1)
    t = spec.t
    if spec.exact:
        p = [(t * (n + tm) + (1 - t) * (n - tm)) / denom for tm in range(-n, n + 1, 2)]
    else:
        p = [(t * (n + tm) + (1.0 - t) * (n - tm)) / denom for tm in range(-n, n + 1, 2)]
    return ProbDist(n, tuple(p))


def fidelity_of(spec: ClonerSpec) -> Number:
    """Single-clone fidelity ``(2j - 1 + 2(j+1)t) / 6j``."""
    n = spec.two_j
    if spec.exact:
        return Fraction(n - 1, 3 * n) + Fraction(n + 2, 3 * n) * spec.t
    return (n - 1 + (n + 2) * spec.t) / (3 * n)


def fidelity_from_probs(p: ProbDist) -> Number:
    """``F = (1 + <J_z>/j) / 2`` from arbitrary coefficients."""
    n = p.two_j
    if p.exact:
        mean_2m = sum(tm * x for tm, x in zip(p.two_m, p.p))
        return Fraction(1, 2) * (1 + Fraction(mean_2m) / n)
    mean_2m = float(np.dot(np.arange(-n, n + 1, 2), p.as_array()))
    return 0.5 * (1.0 + mean_2m / n)


def allowed_interval(two_j: int, exact: bool = True) -> FidelityInterval:
    check_two_j(two_j)
    hi = Fraction(2 * two_j + 1, 3 * two_j)
    if exact:
        return FidelityInterval(1 - hi, hi)
    return FidelityInterval(float(1 - hi), float(hi))


def t_from_fidelity(two_j: int, fidelity) -> ClonerSpec:
    """Invert the fidelity map; out-of-interval requests raise, never clamp."""
    check_two_j(two_j)
    exact = _is_exact(fidelity)
    iv = allowed_interval(two_j, exact=exact)
    if not exact:
        fidelity = float(fidelity)
    if fidelity not in iv:
        raise FidelityOutOfRangeError(fidelity, iv.lo, iv.hi)
    t = (3 * two_j * fidelity - two_j + 1) / (two_j + 2)
    if not exact:
        # an in-range float fidelity can land an ulp outside [0, 1]
        if -4e-16 < t < 0.0:
            t = 0.0
        elif 1.0 < t < 1.0 + 4e-16:
            t = 1.0
    return ClonerSpec(two_j, t)


def prime_t(two_j: int) -> Fraction:
    """Mixing parameter ``(2j + 5) / 4(j + 1)`` of the prime cloner."""
    return Fraction(two_j + 5, 2 * (two_j + 2))


def prime_fidelity(two_j: int) -> Fraction:
    """``(2j + 1) / 4j``."""
    return Fraction(two_j + 1, 2 * two_j)


def make_named(kind: Kind, two_j: int) -> ClonerSpec:
    check_two_j(two_j)
    if kind == "optimal":
        t = Fraction(1)
    elif kind == "worst":
        t = Fraction(0)
    elif kind == "uniform":
        t = Fraction(1, 2)
    elif kind == "prime":
        t = prime_t(two_j)
    else:
        raise DomainError(f"unknown cloner kind {kind!r}; expected one of {KINDS}")
    return ClonerSpec(two_j, t)
