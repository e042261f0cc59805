import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nscloning.channel import (
    apply_mixed,
    apply_pure,
    bloch_of,
    brute_force_single_clone,
    fidelity_at,
    partial_trace_keep_first,
    reduce_symmetric,
    schmidt_output,
    single_clone,
    validate_density,
)
from nscloning.cloner_family import ClonerSpec, fidelity_of, prob_vector
from nscloning.errors import DensityValidationError, OracleSizeError
from nscloning.pseudospin import BlochVector, Z_AXIS, spin_operators

from .conftest import bloch_projector, expm_rotation

F = Fraction
T_GRID = [F(0), F(1, 4), F(1, 2), F(3, 4), F(1)]
bloch = st.builds(
    BlochVector,
    st.floats(min_value=0.0, max_value=math.pi),
    st.floats(min_value=0.0, max_value=2 * math.pi, exclude_max=True),
)
specs = st.builds(ClonerSpec, st.integers(2, 12), st.fractions(0, 1, max_denominator=64))


def linear_form(spec, n):
    """Oracle: sum_m (a m + b)|n;jm><n;jm| = b I + a n.J for the affine family."""
    tj = spec.two_j
    j = tj / 2
    a = (2 * float(spec.t) - 1) / (j * (tj + 1))
    jx, jy, jz = spin_operators(tj)
    nv = n.vector
    return np.eye(tj + 1) / (tj + 1) + a * (nv[0] * jx + nv[1] * jy + nv[2] * jz)


def assert_density(rho, tol=1e-11):
    assert np.abs(rho - rho.conj().T).max() < tol
    assert abs(np.trace(rho) - 1) < tol
    assert np.linalg.eigvalsh(rho).min() > -tol


class TestApplyPure:
    def test_optimal_north(self):
        rho = apply_pure(ClonerSpec(2, 1), Z_AXIS)
        np.testing.assert_allclose(rho, np.diag([2 / 3, 1 / 3, 0]), atol=1e-15)

    @settings(max_examples=30, deadline=None)
    @given(bloch)
    def test_uniform_is_maximally_mixed(self, n):
        np.testing.assert_allclose(apply_pure(ClonerSpec(2, F(1, 2)), n), np.eye(3) / 3, atol=1e-15)

    def test_optimal_equator_conjugation_oracle(self):
        n = BlochVector(math.pi / 2, 0.0)
        d = expm_rotation(2, math.pi / 2)
        expected = d @ np.diag([2 / 3, 1 / 3, 0]) @ d.conj().T
        rho = apply_pure(ClonerSpec(2, 1), n)
        np.testing.assert_allclose(rho, expected, atol=1e-14)
        w, v = np.linalg.eigh(rho)
        np.testing.assert_allclose(w, [0, 1 / 3, 2 / 3], atol=1e-14)
        for k, col in zip((2, 1, 0), v.T):
            assert abs(abs(np.vdot(col, d[:, k])) - 1) < 1e-12

    @settings(max_examples=60, deadline=None)
    @given(specs, bloch)
    def test_matches_linear_form(self, spec, n):
        np.testing.assert_allclose(apply_pure(spec, n), linear_form(spec, n), atol=1e-12)

    @settings(max_examples=60, deadline=None)
    @given(specs, bloch)
    def test_valid_with_family_spectrum(self, spec, n):
        rho = apply_pure(spec, n)
        assert_density(rho)
        w = np.sort(np.linalg.eigvalsh(rho))
        np.testing.assert_allclose(w, np.sort(prob_vector(spec).as_array()), atol=1e-11)

    @settings(max_examples=60, deadline=None)
    @given(specs, bloch)
    def test_antipodal_sum_rotation_invariant(self, spec, n):
        both = apply_pure(spec, n) + apply_pure(spec, n.antipode())
        w = np.linalg.eigvalsh(both)
        assert np.abs(w - 2 / (spec.two_j + 1)).max() < 1e-11

    @pytest.mark.parametrize("two_j", [20, 33, 40])
    def test_large_j_tolerance(self, two_j):
        spec = ClonerSpec(two_j, F(3, 4))
        n = BlochVector(2.1, 0.4)
        np.testing.assert_allclose(apply_pure(spec, n), linear_form(spec, n), atol=1e-10)


class TestApplyMixed:
    def test_maximally_mixed_input(self):
        np.testing.assert_allclose(apply_mixed(ClonerSpec(2, 1), np.eye(2) / 2), np.eye(3) / 3,
                                   atol=1e-15)

    def test_pure_input_reduces_to_pure_map(self):
        spec = ClonerSpec(2, 1)
        np.testing.assert_allclose(apply_mixed(spec, Z_AXIS.projector()), apply_pure(spec, Z_AXIS),
                                   atol=1e-15)

    def test_hand_combination(self):
        rho = np.diag([0.75, 0.25])
        np.testing.assert_allclose(apply_mixed(ClonerSpec(2, 1), rho), np.diag([0.5, 1 / 3, 1 / 6]),
                                   atol=1e-15)

    @pytest.mark.parametrize("axis", [BlochVector(0.0), BlochVector(1.0, 2.0), BlochVector(2.5, 4.0)])
    def test_degenerate_choice_irrelevant(self, axis):
        spec = ClonerSpec(5, F(1, 4))
        out = 0.5 * apply_pure(spec, axis) + 0.5 * apply_pure(spec, axis.antipode())
        np.testing.assert_allclose(out, apply_mixed(spec, np.eye(2) / 2), atol=1e-13)

    @settings(max_examples=60, deadline=None)
    @given(specs, bloch, bloch, st.floats(0, 1), st.floats(0, 1), st.floats(0, 1))
    def test_convex_linear(self, spec, n1, n2, s1, s2, r):
        rho1 = s1 * n1.projector() + (1 - s1) * np.eye(2) / 2
        rho2 = s2 * n2.projector() + (1 - s2) * np.eye(2) / 2
        lhs = apply_mixed(spec, r * rho1 + (1 - r) * rho2)
        rhs = r * apply_mixed(spec, rho1) + (1 - r) * apply_mixed(spec, rho2)
        assert np.abs(lhs - rhs).max() < 1e-10
        assert_density(lhs)

    @pytest.mark.parametrize("rho", [
        np.diag([0.6, 0.6]),
        np.array([[1.0, 0.2], [0.3, 0.0]]),
        np.diag([1.2, -0.2]),
        np.eye(3) / 3,
    ])
    def test_rejects_invalid(self, rho):
        with pytest.raises(DensityValidationError):
            apply_mixed(ClonerSpec(2, 1), rho)


class TestSingleClone:
    def test_optimal_two_copies(self):
        np.testing.assert_allclose(single_clone(ClonerSpec(2, 1), Z_AXIS.projector()),
                                   np.diag([5 / 6, 1 / 6]), atol=1e-15)

    def test_optimal_three_copies(self):
        np.testing.assert_allclose(single_clone(ClonerSpec(3, 1), Z_AXIS.projector()),
                                   np.diag([7 / 9, 2 / 9]), atol=1e-15)

    @settings(max_examples=40, deadline=None)
    @given(specs)
    def test_unital(self, spec):
        np.testing.assert_allclose(single_clone(spec, np.eye(2) / 2), np.eye(2) / 2, atol=1e-15)

    @settings(max_examples=60, deadline=None)
    @given(specs, bloch)
    def test_pure_fidelity(self, spec, n):
        rho = bloch_projector(n.theta, n.phi)
        assert abs(fidelity_at(single_clone(spec, rho), n) - float(fidelity_of(spec))) < 1e-13

    @settings(max_examples=60, deadline=None)
    @given(specs, bloch, st.floats(0, 1))
    def test_shrinks_bloch_vector(self, spec, n, s):
        rho = s * n.projector() + (1 - s) * np.eye(2) / 2
        eta = 2 * float(fidelity_of(spec)) - 1
        np.testing.assert_allclose(bloch_of(single_clone(spec, rho)), eta * bloch_of(rho), atol=1e-13)

    @settings(max_examples=60, deadline=None)
    @given(specs, bloch)
    def test_matches_symmetric_reduction_of_spin_output(self, spec, n):
        red = reduce_symmetric(apply_pure(spec, n))
        np.testing.assert_allclose(red, single_clone(spec, n.projector()), atol=1e-12)


class TestUniversality:
    @pytest.mark.parametrize("two_j", range(2, 9))
    @pytest.mark.parametrize("t", T_GRID)
    def test_spread(self, two_j, t):
        spec = ClonerSpec(two_j, t)
        rng = np.random.default_rng(two_j)
        z = rng.uniform(-1, 1, 100)
        phi = rng.uniform(0, 2 * math.pi, 100)
        fids = [fidelity_at(reduce_symmetric(apply_pure(spec, n)), n)
                for n in (BlochVector(math.acos(a), b) for a, b in zip(z, phi))]
        assert max(fids) - min(fids) < 1e-12


class TestSchmidt:
    def test_optimal_amplitudes(self):
        out = schmidt_output(ClonerSpec(2, 1), Z_AXIS)
        np.testing.assert_allclose(out.amplitudes, [0, math.sqrt(1 / 3), math.sqrt(2 / 3)], atol=1e-15)

    @settings(max_examples=20, deadline=None)
    @given(bloch)
    def test_uniform_amplitudes(self, n):
        out = schmidt_output(ClonerSpec(2, F(1, 2)), n)
        np.testing.assert_allclose(out.amplitudes, [1 / math.sqrt(3)] * 3, atol=1e-15)

    @settings(max_examples=40, deadline=None)
    @given(specs, bloch)
    def test_trace_out_machine(self, spec, n):
        out = schmidt_output(spec, n)
        assert abs(np.linalg.norm(out.state()) - 1) < 1e-12
        assert np.abs(out.machine_gram() - np.eye(spec.two_j + 1)).max() < 1e-12
        assert np.abs(out.reduced_clones() - apply_pure(spec, n)).max() < 1e-12


class TestBruteForce:
    def test_optimal_two(self):
        np.testing.assert_allclose(brute_force_single_clone(ClonerSpec(2, 1), Z_AXIS),
                                   np.diag([5 / 6, 1 / 6]), atol=1e-15)

    def test_optimal_four(self):
        np.testing.assert_allclose(brute_force_single_clone(ClonerSpec(4, 1), Z_AXIS),
                                   np.diag([3 / 4, 1 / 4]), atol=1e-15)

    def test_worst_two(self):
        np.testing.assert_allclose(brute_force_single_clone(ClonerSpec(2, 0), Z_AXIS),
                                   np.diag([1 / 6, 5 / 6]), atol=1e-15)

    def test_partial_trace_index_sum(self):
        # explicit 4x4 index summation oracle for the 2-qubit case
        rng = np.random.default_rng(0)
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        ref = np.array([[sum(a[2 * i + k, 2 * j + k] for k in range(2)) for j in range(2)]
                        for i in range(2)])
        np.testing.assert_allclose(partial_trace_keep_first(a, 2), ref)

    @pytest.mark.parametrize("two_j", [2, 3, 4])
    @pytest.mark.parametrize("t", T_GRID)
    def test_matches_single_clone(self, two_j, t):
        spec = ClonerSpec(two_j, t)
        for n in (Z_AXIS, BlochVector(1.1, 2.3), BlochVector(2.9, 0.2)):
            brute = brute_force_single_clone(spec, n)
            assert np.abs(brute - single_clone(spec, n.projector())).max() < 1e-12

    def test_size_limit(self):
        with pytest.raises(OracleSizeError):
            brute_force_single_clone(ClonerSpec(9, 1), Z_AXIS)


def test_validate_density_passes_through():
    rho = validate_density(Z_AXIS.projector())
    assert rho.dtype == complex
