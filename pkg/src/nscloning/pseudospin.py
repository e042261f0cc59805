"""Spin-j algebra in the symmetric subspace of M = 2j qubits.

All angular-momentum quantum numbers are carried doubled (``two_j = 2j``,
``two_m = 2m``) so half-integers stay exact.

Basis conventions
-----------------
* Spin-j matrices are written in the J_z eigenbasis ordered m = j, j-1, ..., -j.
* ``|n; j m> = R(phi, theta) |z; j m>`` with ``R = exp(-i phi J_z) exp(-i theta J_y)``.
* A single qubit is the j = 1/2 case, so 2x2 qubit matrices are ordered
  (up, down). In the full 2**M computational basis, ``|1>`` is spin up and
  ``|0>`` is spin down, with qubit 0 the most significant index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import DomainError, OracleSizeError

MAX_EMBED_TWO_J = 12


def check_two_j(two_j: int, minimum: int = 2) -> int:
    if isinstance(two_j, bool) or not isinstance(two_j, (int, np.integer)):
        raise DomainError(f"two_j must be an integer, got {two_j!r}")
    if two_j < minimum:
        raise DomainError(f"two_j must be >= {minimum}, got {two_j}")
    return int(two_j)


def check_two_m(two_j: int, two_m: int) -> int:
    if abs(two_m) > two_j or (two_j - two_m) % 2:
        raise DomainError(f"invalid m = {two_m}/2 for j = {two_j}/2")
    return int(two_m)


def m_values(two_j: int) -> np.ndarray:
    """m = j, j-1, ..., -j as floats (matrix ordering)."""
    return np.arange(two_j, -two_j - 1, -2) / 2.0


def m_index(two_j: int, two_m: int) -> int:
    """Row/column of ``m`` in the descending matrix ordering."""
    return (two_j - two_m) // 2


@dataclass(frozen=True)
class BlochVector:
    """Pure qubit direction by polar ``theta`` and azimuth ``phi`` (radians)."""

    theta: float
    phi: float = 0.0

    @classmethod
    def from_vector(cls, v) -> BlochVector:
        x, y, z = (float(c) for c in v)
        r = math.sqrt(x * x + y * y + z * z)
        if r == 0.0:
            raise DomainError("zero vector has no direction")
        theta = math.atan2(math.hypot(x, y), z)
        phi = math.atan2(y, x) % (2 * math.pi)
        return cls(theta, phi)

    @property
    def vector(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)])

    def antipode(self) -> BlochVector:
        return BlochVector(math.pi - self.theta, (self.phi + math.pi) % (2 * math.pi))

    def ket(self) -> np.ndarray:
        """``|n> = R(phi, theta)|up>`` in (up, down) order."""
        h = 0.5 * self.theta
        return np.array([
            np.exp(-0.5j * self.phi) * math.cos(h),
            np.exp(0.5j * self.phi) * math.sin(h),
        ])

    def antiket(self) -> np.ndarray:
        """``|-n> = R(phi, theta)|down>``; equals ``antipode().ket()`` up to phase."""
        h = 0.5 * self.theta
        return np.array([
            -np.exp(-0.5j * self.phi) * math.sin(h),
            np.exp(0.5j * self.phi) * math.cos(h),
        ])

    def projector(self) -> np.ndarray:
        k = self.ket()
        return np.outer(k, k.conj())


Z_AXIS = BlochVector(0.0, 0.0)


@dataclass(frozen=True)
class WignerD:
    two_j: int
    theta: float
    entries: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.two_j + 1


@dataclass(frozen=True)
class DickeKet:
    two_j: int
    two_m: int
    orientation: BlochVector
    coeffs: np.ndarray = field(repr=False)


def spin_operators(two_j: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(J_x, J_y, J_z) built from the ladder operator, in descending-m order."""
    j = two_j / 2.0
    m = m_values(two_j)
    n = two_j + 1
    jp = np.zeros((n, n))
    for a in range(1, n):
        jp[a - 1, a] = math.sqrt(j * (j + 1) - m[a] * (m[a] + 1))
    jx = 0.5 * (jp + jp.T)
    jy = -0.5j * (jp - jp.T)
    return jx.astype(complex), jy, np.diag(m).astype(complex)


def wigner_d(two_j: int, theta: float) -> WignerD:
    """Reduced rotation matrix ``d(theta) = exp(-i theta J_y)``."""
    if two_j < 1:
        raise DomainError(f"two_j must be >= 1, got {two_j}")
    if not math.isfinite(theta):
        raise DomainError("theta must be finite")
    return WignerD(int(two_j), float(theta), kernels.wigner_d_matrix(int(two_j), float(theta)))


def rotation_matrix(two_j: int, n: BlochVector) -> np.ndarray:
    """``R(phi, theta)``; column k is ``|n; j, j-k>`` in the z basis."""
    d = wigner_d(two_j, n.theta).entries
    phases = np.exp(-1j * n.phi * m_values(two_j))
    return phases[:, None] * d


def dicke_ket(two_j: int, two_m: int, n: BlochVector = Z_AXIS) -> DickeKet:
    if two_j < 1:
        raise DomainError(f"two_j must be >= 1, got {two_j}")
    check_two_m(two_j, two_m)
    coeffs = rotation_matrix(two_j, n)[:, m_index(two_j, two_m)]
    return DickeKet(int(two_j), int(two_m), n, coeffs)


def embed_full_space(ket: DickeKet) -> np.ndarray:
    """Expand ``ket`` as a symmetrized product state of M = 2j qubits.

    Built from the qubit states ``|n>`` and ``|-n>`` directly, without going
    through the spin-j rotation matrices.
    """
    if ket.two_j > MAX_EMBED_TWO_J:
        raise OracleSizeError(f"full-space embedding limited to 2j <= {MAX_EMBED_TWO_J}")
    n_up = (ket.two_j + ket.two_m) // 2
    # computational order (|0>, |1>) = (down, up)
    up = ket.orientation.ket()[::-1]
    down = ket.orientation.antiket()[::-1]
    return kernels.symmetrized_product(up, down, ket.two_j, n_up)


def clone_overlap_weight(two_j: int, two_m: int) -> Fraction:
    """Fraction of the 2j qubits of ``|z; j m>`` found spin up: C(2j-1, j-m)/C(2j, j-m)."""
    check_two_j(two_j, minimum=1)
    check_two_m(two_j, two_m)
    k = (two_j - two_m) // 2
    return Fraction(math.comb(two_j - 1, k), math.comb(two_j, k))
