"""The invariant suite behind ``nscloning --command verify``."""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import channel, cloner_family as cf, composition, ns_verifier as nsv
from .errors import SpectralGapError
from .pseudospin import BlochVector, clone_overlap_weight, wigner_d
from .report import CheckRecord, VerificationReport, fmt_float, make_record

log = logging.getLogger(__name__)

DEFAULT_T_GRID = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))

# fixed tolerances for invariants whose accuracy is not a user knob
TOL_LINEAR = 1e-11
TOL_UNIVERSAL = 1e-12
TOL_ORACLE = 1e-12
TOL_SPAN = 1e-9
TOL_ORTHO = 1e-12
TOL_ANTIPODAL = 1e-11
TOL_PRIME_SIM = 1e-12
TOL_ROUND_TRIP = 1e-14
BINOMIAL_MAX_TWO_J = 40
ORACLE_TWO_J = (2, 3, 4)
PRIME_MAX_M = 6
UNIVERSAL_MAX_TWO_J = 8


@dataclass
class SuiteConfig:
    two_j_values: Sequence[int] = tuple(range(2, 11))
    t_values: Sequence = DEFAULT_T_GRID
    geometries: int = 50
    samples: int = 100
    seed: int = 0
    tol: float = 1e-10
    gap_tol: float = 1e-8
    perturb: float = 0.0
    kind: str | None = None
    checks: Sequence[str] | None = field(default=None)

    def t_for(self, two_j: int) -> Sequence:
        """Mixing parameters checked at ``two_j``; a named kind overrides ``t_values``."""
        if self.kind is not None:
            return (cf.make_named(self.kind, two_j).t,)
        return self.t_values


def random_bloch(rng: np.random.Generator, count: int) -> list[BlochVector]:
    """Uniform directions on the sphere."""
    z = rng.uniform(-1.0, 1.0, size=count)
    phi = rng.uniform(0.0, 2 * math.pi, size=count)
    return [BlochVector(math.acos(float(zz)), float(pp)) for zz, pp in zip(z, phi)]


def random_qubit_state(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=3)
    v *= rng.uniform() ** (1 / 3) / np.linalg.norm(v)
    return channel.qubit_from_bloch(v)


def _perturbed(p: cf.ProbDist, eps: float):
    if not eps:
        return p
    vals = p.as_array()
    vals[-1] += eps
    return vals


def _geom_label(g: nsv.MixtureGeometry) -> str:
    return f"theta={fmt_float(g.theta)};theta_prime={fmt_float(g.theta_prime)}"


def _bloch_label(n: BlochVector) -> str:
    return f"theta={fmt_float(n.theta)};phi={fmt_float(n.phi)}"


def family_checks(cfg: SuiteConfig) -> list[CheckRecord]:
    out = []
    for tj in cfg.two_j_values:
        for t in cfg.t_for(tj):
            spec = cf.ClonerSpec(tj, t)
            p = cf.prob_vector(spec)
            pp = _perturbed(p, cfg.perturb)
            exact_tol = 0 if (spec.exact and not cfg.perturb) else cfg.tol
            out.append(make_record("parity", tj, t, 0, "", nsv.parity_check(pp), exact_tol))
            if isinstance(pp, cf.ProbDist):
                total = sum(pp.p)
                f_probs = cf.fidelity_from_probs(pp)
            else:
                total = float(pp.sum())
                f_probs = cf.fidelity_from_probs(cf.ProbDist(tj, tuple(pp)))
            out.append(make_record("normalization", tj, t, 0, "", abs(total - 1), exact_tol))
            out.append(make_record("fidelity_consistency", tj, t, 0, "",
                                   abs(f_probs - cf.fidelity_of(spec)), exact_tol))
            lowest = p.p[0]
            endpoint_ok = (lowest == 0) == (spec.t == 1) and min(p.p) >= 0
            out.append(make_record("endpoint_positivity", tj, t, 0, "",
                                   0 if endpoint_ok else 1, 0))
            if not spec.exact:
                continue
            ft = float(cf.fidelity_of(spec))
            back = cf.t_from_fidelity(tj, ft).t
            out.append(make_record("round_trip", tj, t, 0, "", abs(back - float(t)), TOL_ROUND_TRIP))
    return out


def ns_checks(cfg: SuiteConfig) -> list[CheckRecord]:
    out = []
    for tj in cfg.two_j_values:
        geoms, rejected = nsv.generic_geometries(tj, cfg.geometries, cfg.seed)
        if rejected:
            log.info("2j=%d: rejected %d geometries with spectral gap < 1e-6", tj, rejected)
        plus, minus = nsv.basis_solutions(tj)
        for k, g in enumerate(geoms):
            label = _geom_label(g)
            try:
                dim = nsv.solution_space_dim(tj, g, cfg.gap_tol)
                basis = nsv.eigenspace(tj, g, cfg.gap_tol)
                span = max(nsv.span_defect(plus, basis), nsv.span_defect(minus, basis))
            except SpectralGapError as exc:
                log.warning("2j=%d geometry %d inconclusive: %s", tj, k, exc)
                dim, span = math.inf, math.inf
            out.append(make_record("solution_space_dim", tj, None, k, label, abs(dim - 2), 0))
            out.append(make_record("eigenspace_span", tj, None, k, label, span, TOL_SPAN))
            for t in cfg.t_for(tj):
                spec = cf.ClonerSpec(tj, t)
                p = cf.prob_vector(spec)
                pp = _perturbed(p, cfg.perturb)
                out.append(make_record("eigen_residual", tj, t, k, label,
                                       nsv.eigen_residual(pp, g), cfg.tol))
                override = None if pp is p else pp
                out.append(make_record("convex_equality", tj, t, k, label,
                                       nsv.convex_equality_check(spec, g, p=override), cfg.tol))
    return out


def linear_identity_checks(cfg: SuiteConfig) -> list[CheckRecord]:
    rng = np.random.default_rng([cfg.seed, 13])
    out = []
    max_tj = max(cfg.two_j_values)
    for k in range(cfg.samples):
        tj = int(rng.integers(1, max_tj + 1))
        theta = float(rng.uniform(0.0, math.pi))
        a, b = (float(x) for x in rng.uniform(-5.0, 5.0, size=2))
        res = nsv.linear_identity_check(tj, theta, a, b)
        label = f"theta={fmt_float(theta)};a={fmt_float(a)};b={fmt_float(b)}"
        out.append(make_record("linear_identity", tj, None, k, label, res, TOL_LINEAR))
    return out


def channel_checks(cfg: SuiteConfig) -> list[CheckRecord]:
    out = []
    for tj in cfg.two_j_values:
        rng = np.random.default_rng([cfg.seed, 29, tj])
        dirs = random_bloch(rng, cfg.samples)
        for t in cfg.t_for(tj):
            spec = cf.ClonerSpec(tj, t)
            if tj <= UNIVERSAL_MAX_TWO_J:
                fids = [channel.fidelity_at(channel.reduce_symmetric(channel.apply_pure(spec, n)), n)
                        for n in dirs]
                out.append(make_record("universality", tj, t, 0, f"samples={len(dirs)}",
                                       max(fids) - min(fids), TOL_UNIVERSAL))
            n = dirs[0]
            both = channel.apply_pure(spec, n) + channel.apply_pure(spec, n.antipode())
            eig = np.linalg.eigvalsh(both)
            out.append(make_record("antipodal_sum", tj, t, 0, _bloch_label(n),
                                   float(np.abs(eig - 2.0 / (tj + 1)).max()), TOL_ANTIPODAL))
            rho1, rho2 = random_qubit_state(rng), random_qubit_state(rng)
            r = float(rng.uniform())
            lhs = channel.apply_mixed(spec, r * rho1 + (1 - r) * rho2)
            rhs = r * channel.apply_mixed(spec, rho1) + (1 - r) * channel.apply_mixed(spec, rho2)
            out.append(make_record("convex_linearity", tj, t, 0, f"r={fmt_float(r)}",
                                   float(np.abs(lhs - rhs).max()), cfg.tol))
            if tj in ORACLE_TWO_J:
                brute = channel.brute_force_single_clone(spec, n)
                fast = channel.single_clone(spec, n.projector())
                out.append(make_record("oracle_single_clone", tj, t, 0, _bloch_label(n),
                                       float(np.abs(brute - fast).max()), TOL_ORACLE))
        d = wigner_d(tj, float(rng.uniform(-math.pi, math.pi))).entries
        out.append(make_record("wigner_orthogonality", tj, None, 0, "",
                               float(np.abs(d @ d.T - np.eye(tj + 1)).max()), TOL_ORTHO))
    return out


def combinatorial_checks(cfg: SuiteConfig) -> list[CheckRecord]:
    out = []
    for tj in range(2, BINOMIAL_MAX_TWO_J + 1):
        worst = max(abs(clone_overlap_weight(tj, tm) - Fraction(tj + tm, 2 * tj))
                    for tm in range(-tj, tj + 1, 2))
        out.append(make_record("binomial_weight", tj, None, 0, "", worst, 0))
    return out


def prime_checks(cfg: SuiteConfig) -> list[CheckRecord]:
    out = []
    top = min(PRIME_MAX_M, max(cfg.two_j_values))
    for m in range(2, top + 1):
        for n in range(2, top + 1):
            label = f"M={m};N={n}"
            idx = 100 * m + n
            out.append(make_record("prime_law_exact", m * n, None, idx, label,
                                   composition.prime_multiplicativity_check(m, n, "predict"), 0))
            out.append(make_record("prime_law_simulated", m * n, None, idx, label,
                                   composition.prime_multiplicativity_check(m, n, "simulate"),
                                   TOL_PRIME_SIM))
    return out


CHECK_GROUPS = {
    "family": family_checks,
    "ns": ns_checks,
    "linear": linear_identity_checks,
    "channel": channel_checks,
    "combinatorial": combinatorial_checks,
    "prime": prime_checks,
}


def run_suite(cfg: SuiteConfig) -> VerificationReport:
    start = time.perf_counter()
    records: list[CheckRecord] = []
    for name, fn in CHECK_GROUPS.items():
        if cfg.checks is not None and name not in cfg.checks:
            continue
        records.extend(fn(cfg))
    return VerificationReport(records, wall_time=time.perf_counter() - start)
