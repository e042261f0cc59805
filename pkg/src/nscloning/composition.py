"""Sequential cloning pipelines and the prime-cloner composition law."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable

from .channel import fidelity_at, single_clone
from .cloner_family import (
    ClonerSpec,
    fidelity_of,
    make_named,
    prime_fidelity,
)
from .errors import DomainError
from .pseudospin import BlochVector

# generic default input; results must not depend on it
DEFAULT_INPUT = BlochVector(1.234, 0.567)


def compose_predict(f1, f2):
    """Fidelity of feeding one clone of a first cloner into a second one."""
    for f in (f1, f2):
        if not 0 <= f <= 1:
            raise DomainError(f"fidelity {f} outside [0, 1]")
    return f1 * f2 + (1 - f1) * (1 - f2)


@dataclass(frozen=True)
class Pipeline:
    stages: tuple[ClonerSpec, ...]

    def __init__(self, stages: Iterable[ClonerSpec]):
        stages = tuple(stages)
        if not stages:
            raise DomainError("a pipeline needs at least one stage")
        for st in stages:
            if not isinstance(st, ClonerSpec):
                raise DomainError(f"pipeline stage {st!r} is not a ClonerSpec")
        object.__setattr__(self, "stages", stages)

    @property
    def copies(self) -> int:
        return math.prod(st.two_j for st in self.stages)


def predict_pipeline(pipe: Pipeline):
    """Left fold of ``compose_predict`` over the stage fidelities (exact when possible)."""
    return reduce(compose_predict, (fidelity_of(st) for st in pipe.stages))


def sequential_simulate(pipe: Pipeline, n: BlochVector = DEFAULT_INPUT) -> float:
    rho = n.projector()
    for stage in pipe.stages:
        rho = single_clone(stage, rho)
    return fidelity_at(rho, n)


def prime_multiplicativity_check(m: int, n: int, mode: str = "simulate",
                                 direction: BlochVector = DEFAULT_INPUT):
    """Residual of prime(M) then prime(N) against prime(MN).

    ``mode="predict"`` folds exact rationals and returns a Fraction;
    ``mode="simulate"`` runs the channel and returns a float.
    """
    if m < 2 or n < 2:
        raise DomainError(f"copy counts must be >= 2, got M={m}, N={n}")
    pipe = Pipeline([make_named("prime", m), make_named("prime", n)])
    target = prime_fidelity(m * n)
    if mode == "predict":
        return abs(predict_pipeline(pipe) - target)
    if mode == "simulate":
        return abs(sequential_simulate(pipe, direction) - float(target))
    raise DomainError(f"unknown mode {mode!r}")


def prime_limit_scan(two_j_max: int) -> list[tuple[int, Fraction]]:
    """``(two_j, F^P)`` for two_j = 2..two_j_max."""
    if two_j_max < 2:
        raise DomainError(f"two_j_max must be >= 2, got {two_j_max}")
    return [(tj, prime_fidelity(tj)) for tj in range(2, two_j_max + 1)]
