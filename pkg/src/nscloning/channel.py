"""The cloning map on pure and mixed qubit inputs, plus full-space oracles."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cloner_family import ClonerSpec, prob_vector
from .errors import DensityValidationError, OracleSizeError
from .pseudospin import (
    BlochVector,
    DickeKet,
    Z_AXIS,
    clone_overlap_weight,
    dicke_ket,
    embed_full_space,
    rotation_matrix,
    spin_operators,
)

MAX_BRUTE_TWO_J = 8

_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def validate_density(rho, tol: float = 1e-12, dim: int | None = 2, name: str = "rho") -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DensityValidationError(f"{name} must be square, got shape {rho.shape}")
    if dim is not None and rho.shape[0] != dim:
        raise DensityValidationError(f"{name} must be {dim}x{dim}, got shape {rho.shape}")
    if np.abs(rho - rho.conj().T).max() > tol:
        raise DensityValidationError(f"{name} is not Hermitian")
    if abs(np.trace(rho) - 1.0) > tol:
        raise DensityValidationError(f"{name} has trace {np.trace(rho).real}, expected 1")
    if np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min() < -tol:
        raise DensityValidationError(f"{name} is not positive semidefinite")
    return rho


def bloch_of(rho: np.ndarray) -> np.ndarray:
    """Bloch vector ``(Tr rho sigma_x, Tr rho sigma_y, Tr rho sigma_z)`` in (up, down) order."""
    return np.array([np.trace(rho @ s).real for s in _PAULI])


def qubit_from_bloch(r) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    return 0.5 * (np.eye(2, dtype=complex) + sum(c * s for c, s in zip(r, _PAULI)))


def spectral_pair(rho: np.ndarray) -> tuple[float, BlochVector]:
    """Write ``rho = s|m><m| + (1-s)|-m><-m|`` with ``s >= 1/2``.

    The maximally mixed state has no preferred axis; z is used.
    """
    r = bloch_of(rho)
    length = float(np.linalg.norm(r))
    if length < 1e-14:
        return 0.5, Z_AXIS
    return 0.5 * (1.0 + length), BlochVector.from_vector(r)


def apply_pure(spec: ClonerSpec, n: BlochVector) -> np.ndarray:
    """``sum_m p_m |n; j m><n; j m|`` in the z Dicke basis."""
    rot = rotation_matrix(spec.two_j, n)
    p = prob_vector(spec).descending()
    return (rot * p) @ rot.conj().T


def apply_mixed(spec: ClonerSpec, rho) -> np.ndarray:
    rho = validate_density(rho)
    s, axis = spectral_pair(rho)
    out = s * apply_pure(spec, axis)
    if s < 1.0:
        out = out + (1.0 - s) * apply_pure(spec, axis.antipode())
    return out


def clone_fidelity(spec: ClonerSpec):
    """Single-clone overlap computed from the combinatorial weights."""
    p = prob_vector(spec)
    total = sum(clone_overlap_weight(spec.two_j, tm) * x for tm, x in zip(p.two_m, p.p))
    return total if p.exact else float(total)


def single_clone(spec: ClonerSpec, rho) -> np.ndarray:
    """Reduced state of one output clone, ``diag(F~, 1-F~)`` in the input eigenbasis."""
    rho = validate_density(rho)
    s, axis = spectral_pair(rho)
    f = float(clone_fidelity(spec))
    f_eff = s * f + (1.0 - s) * (1.0 - f)
    k_up, k_down = axis.ket(), axis.antiket()
    return f_eff * np.outer(k_up, k_up.conj()) + (1.0 - f_eff) * np.outer(k_down, k_down.conj())


def reduce_symmetric(spin_rho: np.ndarray) -> np.ndarray:
    """One-qubit marginal of a symmetric 2j-qubit state given in the spin-j basis.

    For permutation-symmetric states each qubit carries Bloch vector ``<J>/j``.
    """
    two_j = spin_rho.shape[0] - 1
    ops = spin_operators(two_j)
    r = np.array([np.trace(spin_rho @ op).real for op in ops]) * (2.0 / two_j)
    return qubit_from_bloch(r)


@dataclass(frozen=True)
class SchmidtOutput:
    """Pure clone-machine state ``sum_m a_m |n; j m> (x) |R_m(n)>``.

    Kets and amplitudes are listed by ascending m.
    """

    two_j: int
    amplitudes: np.ndarray
    clone_kets: tuple[DickeKet, ...] = field(repr=False)
    machine_kets: tuple[DickeKet, ...] = field(repr=False)

    def state(self) -> np.ndarray:
        """Joint vector, clone index major."""
        return sum(
            a * np.kron(c.coeffs, r.coeffs)
            for a, c, r in zip(self.amplitudes, self.clone_kets, self.machine_kets)
        )

    def machine_gram(self) -> np.ndarray:
        mk = np.array([r.coeffs for r in self.machine_kets])
        return mk.conj() @ mk.T

    def reduced_clones(self) -> np.ndarray:
        """Trace out the machine register."""
        d = self.two_j + 1
        psi = self.state().reshape(d, d)
        return psi @ psi.conj().T


def schmidt_output(spec: ClonerSpec, n: BlochVector) -> SchmidtOutput:
    p = prob_vector(spec).as_array()
    two_ms = range(-spec.two_j, spec.two_j + 1, 2)
    kets = tuple(dicke_ket(spec.two_j, tm, n) for tm in two_ms)
    # machine register: a second spin-j system in the same rotated Dicke basis
    return SchmidtOutput(spec.two_j, np.sqrt(p), kets, kets)


def partial_trace_keep_first(rho: np.ndarray, n_qubits: int) -> np.ndarray:
    """Trace out qubits 1..n-1 of a ``2**n`` density matrix."""
    rest = 2 ** (n_qubits - 1)
    return np.einsum("aibi->ab", rho.reshape(2, rest, 2, rest))


def brute_force_single_clone(spec: ClonerSpec, n: BlochVector) -> np.ndarray:
    """Single-clone state via the 2**M-dimensional output, in (up, down) order."""
    if spec.two_j > MAX_BRUTE_TWO_J:
        raise OracleSizeError(f"brute-force oracle limited to 2j <= {MAX_BRUTE_TWO_J}")
    p = prob_vector(spec)
    dim = 2**spec.two_j
    rho = np.zeros((dim, dim), dtype=complex)
    for tm, weight in zip(p.two_m, p.as_array()):
        if weight == 0.0:
            continue
        psi = embed_full_space(dicke_ket(spec.two_j, tm, n))
        rho += weight * np.outer(psi, psi.conj())
    first = partial_trace_keep_first(rho, spec.two_j)
    return first[::-1, ::-1]


def fidelity_at(rho_qubit: np.ndarray, n: BlochVector) -> float:
    k = n.ket()
    return float((k.conj() @ rho_qubit @ k).real)


__all__ = [
    "MAX_BRUTE_TWO_J",
    "SchmidtOutput",
    "apply_mixed",
    "apply_pure",
    "bloch_of",
    "brute_force_single_clone",
    "clone_fidelity",
    "fidelity_at",
    "qubit_from_bloch",
    "reduce_symmetric",
    "schmidt_output",
    "single_clone",
    "spectral_pair",
    "validate_density",
]
