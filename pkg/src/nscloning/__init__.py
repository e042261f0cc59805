"""Universal symmetric 1-to-M qubit cloners constrained by no-signaling."""

__version__ = "0.1.0"

from .cloner_family import (
    ClonerSpec,
    FidelityInterval,
    ProbDist,
    allowed_interval,
    fidelity_from_probs,
    fidelity_of,
    make_named,
    prob_vector,
    t_from_fidelity,
)
from .channel import apply_mixed, apply_pure, brute_force_single_clone, schmidt_output, single_clone
from .composition import Pipeline, compose_predict, prime_multiplicativity_check, sequential_simulate
from .pseudospin import BlochVector, clone_overlap_weight, dicke_ket, embed_full_space, wigner_d

__all__ = [
    "BlochVector",
    "ClonerSpec",
    "FidelityInterval",
    "Pipeline",
    "ProbDist",
    "allowed_interval",
    "apply_mixed",
    "apply_pure",
    "brute_force_single_clone",
    "clone_overlap_weight",
    "compose_predict",
    "dicke_ket",
    "embed_full_space",
    "fidelity_from_probs",
    "fidelity_of",
    "make_named",
    "prime_multiplicativity_check",
    "prob_vector",
    "schmidt_output",
    "sequential_simulate",
    "single_clone",
    "t_from_fidelity",
    "wigner_d",
]
