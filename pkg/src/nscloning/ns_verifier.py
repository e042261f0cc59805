"""Numerical certification of the no-signaling constraints on the cloner family.

Two pure inputs at polar angles ``theta`` (azimuth 0) and ``theta_prime``
(azimuth pi) are mixed so the resulting qubit state is diagonal in z; requiring
both decompositions to have the same image yields a linear eigenproblem for
the coefficients ``p_{jm}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from numpy.polynomial import legendre

from .channel import apply_pure
from .cloner_family import ClonerSpec, ProbDist, prob_vector
from .errors import DegenerateGeometryError, DomainError, SpectralGapError
from .pseudospin import BlochVector, dicke_ket, m_values, wigner_d

# eigenvalues between gap_tol and AMBIGUITY_FACTOR * gap_tol of the target make a count ill-posed
AMBIGUITY_FACTOR = 100.0
SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class MixtureGeometry:
    theta: float
    theta_prime: float
    r: float
    s: float
    c_plus: float
    c_minus: float

    @property
    def eigenvalue(self) -> float:
        return math.sin(self.theta + self.theta_prime)

    @property
    def n(self) -> BlochVector:
        return BlochVector(self.theta, 0.0)

    @property
    def n_prime(self) -> BlochVector:
        return BlochVector(self.theta_prime, math.pi)


def mixture_geometry(theta: float, theta_prime: float) -> MixtureGeometry:
    for name, angle in (("theta", theta), ("theta_prime", theta_prime)):
        if not 0.0 <= angle <= math.pi:
            raise DomainError(f"{name} must lie in [0, pi], got {angle}")
    st, stp = math.sin(theta), math.sin(theta_prime)
    total = st + stp
    if total < 1e-12:
        raise DegenerateGeometryError(
            f"sin(theta) + sin(theta') = {total:.3g}; the mixture is a pure z state"
        )
    ssum = math.sin(theta + theta_prime)
    return MixtureGeometry(
        theta=theta,
        theta_prime=theta_prime,
        r=stp / total,
        s=0.5 * (1.0 + ssum / total),
        c_plus=0.5 * (total + ssum),
        c_minus=0.5 * (total - ssum),
    )


@dataclass(frozen=True)
class NsMatrix:
    two_j: int
    geometry: MixtureGeometry
    entries: np.ndarray = field(repr=False)

    @property
    def eigenvalue(self) -> float:
        return self.geometry.eigenvalue


def ns_matrix(two_j: int, geom: MixtureGeometry) -> NsMatrix:
    """``|d(theta)|^2 sin(theta') + |d(theta')|^2 sin(theta) - 2 c_- / (2j+1)``.

    The squared magnitudes are invariant under reversing both indices, so the
    matrix reads the same in ascending or descending m order.
    """
    d1 = wigner_d(two_j, geom.theta).entries
    d2 = wigner_d(two_j, geom.theta_prime).entries
    a = (
        d1**2 * math.sin(geom.theta_prime)
        + d2**2 * math.sin(geom.theta)
        - 2.0 * geom.c_minus / (two_j + 1)
    )
    return NsMatrix(two_j, geom, a)


def _as_vector(p) -> tuple[int, np.ndarray]:
    if isinstance(p, ProbDist):
        return p.two_j, p.as_array()
    arr = np.asarray(p, dtype=float)
    return arr.size - 1, arr


def eigen_residual(p, geom: MixtureGeometry) -> float:
    """``max |A p - sin(theta + theta') p|``."""
    two_j, vec = _as_vector(p)
    a = ns_matrix(two_j, geom).entries
    if a.shape[0] != vec.size:
        raise DomainError(f"dimension mismatch: matrix {a.shape[0]}, vector {vec.size}")
    return float(np.abs(a @ vec - geom.eigenvalue * vec).max())


def _spectrum(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if np.abs(a - a.T).max() < SYMMETRY_TOL:
        return np.linalg.eigh(0.5 * (a + a.T))
    w, v = np.linalg.eig(a)
    return w.real, v.real


def eigenspace(two_j: int, geom: MixtureGeometry, gap_tol: float = 1e-8) -> np.ndarray:
    """Orthonormal columns spanning the eigenvalue-``sin(theta + theta')`` subspace."""
    a = ns_matrix(two_j, geom).entries
    w, v = _spectrum(a)
    dist = np.abs(w - geom.eigenvalue)
    inside = dist <= gap_tol
    near = (dist > gap_tol) & (dist <= AMBIGUITY_FACTOR * gap_tol)
    if near.any():
        raise SpectralGapError(
            f"eigenvalue within {dist[near].min():.3g} of sin(theta+theta'); "
            f"dimension count inconclusive at gap_tol={gap_tol:g}"
        )
    q, _ = np.linalg.qr(v[:, inside])
    return q


def solution_space_dim(two_j: int, geom: MixtureGeometry, gap_tol: float = 1e-8) -> int:
    return eigenspace(two_j, geom, gap_tol).shape[1]


def span_defect(p, basis: np.ndarray) -> float:
    """Relative norm of ``p`` lost when projected onto ``span(basis)``."""
    _, vec = _as_vector(p)
    proj = basis @ (basis.T @ vec)
    return float(np.linalg.norm(vec - proj) / np.linalg.norm(vec))


def basis_solutions(two_j: int) -> tuple[np.ndarray, np.ndarray]:
    """``(j + m)/(j(2j+1))`` and ``(j - m)/(j(2j+1))``, ascending m."""
    two_m = np.arange(-two_j, two_j + 1, 2)
    denom = two_j * (two_j + 1)
    return (two_j + two_m) / denom, (two_j - two_m) / denom


def predicted_spectrum(two_j: int, geom: MixtureGeometry) -> np.ndarray:
    """Closed-form spectrum of the constraint matrix, indexed by tensor rank k = 0..2j.

    Rank-k multipoles are common eigenvectors of both squared rotation
    matrices with eigenvalue ``P_k(cos angle)``; the constant shift acts on
    k = 0 only, which lands on ``sin(theta + theta')`` together with k = 1.
    """
    st, stp = math.sin(geom.theta), math.sin(geom.theta_prime)
    ct, ctp = math.cos(geom.theta), math.cos(geom.theta_prime)
    out = np.empty(two_j + 1)
    out[0] = geom.eigenvalue
    for k in range(1, two_j + 1):
        coef = [0.0] * k + [1.0]
        out[k] = stp * legendre.legval(ct, coef) + st * legendre.legval(ctp, coef)
    return out


def analytic_gap(two_j: int, geom: MixtureGeometry) -> float:
    """Distance from ``sin(theta + theta')`` to the nearest rank >= 2 eigenvalue."""
    spec = predicted_spectrum(two_j, geom)
    if two_j < 2:
        return math.inf
    return float(np.abs(spec[2:] - geom.eigenvalue).min())


def linear_identity_check(two_j: int, theta: float, a: float, b: float) -> float:
    """``max_m |sum_m' |d_mm'|^2 (a m' + b) - (a m cos(theta) + b)|``."""
    d2 = wigner_d(two_j, theta).entries ** 2
    m = m_values(two_j)
    lhs = d2 @ (a * m + b)
    return float(np.abs(lhs - (a * m * math.cos(theta) + b)).max())


def parity_check(p):
    """``max_m |p_m + p_{-m} - 2/(2j+1)|``; a Fraction when ``p`` is exact."""
    if isinstance(p, ProbDist) and p.exact:
        target = Fraction(2, p.two_j + 1)
        vals = p.p
        return max(abs(x + y - target) for x, y in zip(vals, reversed(vals)))
    two_j, vec = _as_vector(p)
    return float(np.abs(vec + vec[::-1] - 2.0 / (two_j + 1)).max())


def convex_equality_check(spec: ClonerSpec, geom: MixtureGeometry, p=None) -> float:
    """Frobenius distance between the two images of the mixture, scaled by sin(theta)+sin(theta').

    ``p`` overrides the family coefficients (fault injection).
    """
    if p is None:
        vec = prob_vector(spec).as_array()
        rhs = (
            math.sin(geom.theta_prime) * apply_pure(spec, geom.n)
            + math.sin(geom.theta) * apply_pure(spec, geom.n_prime)
        )
    else:
        _, vec = _as_vector(p)
        rhs = sum(
            x * (math.sin(geom.theta_prime) * _projector(spec.two_j, tm, geom.n)
                 + math.sin(geom.theta) * _projector(spec.two_j, tm, geom.n_prime))
            for tm, x in zip(range(-spec.two_j, spec.two_j + 1, 2), vec)
        )
    lhs = np.diag((geom.c_plus * vec + geom.c_minus * vec[::-1])[::-1])
    return float(np.linalg.norm(lhs - rhs))


def _projector(two_j: int, two_m: int, n: BlochVector) -> np.ndarray:
    k = dicke_ket(two_j, two_m, n).coeffs
    return np.outer(k, k.conj())


def generic_geometries(two_j: int, count: int, seed: int, min_gap: float = 1e-6,
                       low: float = 0.1, high: float = math.pi - 0.1):
    """Seeded draws of ``(theta, theta')`` whose target eigenvalue is isolated.

    Returns ``(geometries, rejected)`` where ``rejected`` counts discarded draws.
    """
    rng = np.random.default_rng([seed, two_j])
    out: list[MixtureGeometry] = []
    rejected = 0
    while len(out) < count:
        th, thp = rng.uniform(low, high, size=2)
        geom = mixture_geometry(float(th), float(thp))
        if analytic_gap(two_j, geom) < min_gap:
            rejected += 1
            continue
        out.append(geom)
    return out, rejected
