from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nscloning.cloner_family import (
    ClonerSpec,
    ProbDist,
    allowed_interval,
    fidelity_from_probs,
    fidelity_of,
    make_named,
    prob_vector,
    t_from_fidelity,
)
from nscloning.errors import DomainError, FidelityOutOfRangeError

F = Fraction
rational_t = st.fractions(min_value=0, max_value=1, max_denominator=1000)
two_js = st.integers(2, 40)


class TestProbVector:
    def test_optimal_spin_one(self):
        assert prob_vector(ClonerSpec(2, 1)).p == (F(0), F(1, 3), F(2, 3))

    def test_uniform_spin_one(self):
        assert prob_vector(ClonerSpec(2, F(1, 2))).p == (F(1, 3),) * 3

    def test_prime_spin_one(self):
        assert prob_vector(ClonerSpec(2, F(7, 8))).p == (F(1, 12), F(1, 3), F(7, 12))

    @pytest.mark.parametrize("two_j", range(2, 21))
    def test_prime_closed_form(self, two_j):
        # p = (1 + 3m / 2j(j+1)) / (2j+1)
        j = F(two_j, 2)
        p = prob_vector(make_named("prime", two_j))
        for tm, x in zip(p.two_m, p.p):
            m = F(tm, 2)
            assert x == (1 + 3 * m / (2 * j * (j + 1))) / (2 * j + 1)

    def test_float_mode(self):
        p = prob_vector(ClonerSpec(2, 0.3))
        assert not p.exact
        np.testing.assert_allclose(p.as_array(), [0.7 * 2 / 3, 1 / 3, 0.3 * 2 / 3])

    @settings(max_examples=200, deadline=None)
    @given(two_js, rational_t)
    def test_normalized_parity_positive(self, two_j, t):
        p = prob_vector(ClonerSpec(two_j, t))
        assert sum(p.p) == 1
        target = F(2, two_j + 1)
        assert all(x + y == target for x, y in zip(p.p, reversed(p.p)))
        assert min(p.p) >= 0

    @settings(max_examples=200, deadline=None)
    @given(two_js, rational_t)
    def test_lowest_vanishes_only_for_optimal(self, two_j, t):
        lowest = prob_vector(ClonerSpec(two_j, t)).p[0]
        assert (lowest == 0) == (t == 1)
        if t < 1:
            assert lowest > 0


class TestFidelity:
    @pytest.mark.parametrize("two_j,t,expected", [
        (2, 1, F(5, 6)),
        (2, F(1, 2), F(1, 2)),
        (3, 1, F(7, 9)),
        (4, 1, F(3, 4)),
        (10, 1, F(21, 30)),
    ])
    def test_values(self, two_j, t, expected):
        assert fidelity_of(ClonerSpec(two_j, t)) == expected

    def test_perfect_cloning_would_give_one(self):
        assert fidelity_from_probs(ProbDist(2, (F(0), F(0), F(1)))) == 1

    def test_uniform_probs_half(self):
        assert fidelity_from_probs(ProbDist(4, (F(1, 5),) * 5)) == F(1, 2)

    def test_prime_probs(self):
        assert fidelity_from_probs(ProbDist(2, (F(1, 12), F(1, 3), F(7, 12)))) == F(3, 4)

    @settings(max_examples=200, deadline=None)
    @given(two_js, rational_t)
    def test_probs_agree_with_formula_exact(self, two_j, t):
        spec = ClonerSpec(two_j, t)
        assert fidelity_from_probs(prob_vector(spec)) == fidelity_of(spec)

    @settings(max_examples=200, deadline=None)
    @given(two_js, st.floats(0.0, 1.0))
    def test_probs_agree_with_formula_float(self, two_j, t):
        spec = ClonerSpec(two_j, t)
        assert abs(fidelity_from_probs(prob_vector(spec)) - fidelity_of(spec)) < 1e-14

    @settings(max_examples=200, deadline=None)
    @given(two_js, rational_t)
    def test_affine_symmetry(self, two_j, t):
        assert fidelity_of(ClonerSpec(two_j, t)) + fidelity_of(ClonerSpec(two_j, 1 - t)) == 1


class TestInverse:
    def test_optimal(self):
        assert t_from_fidelity(2, F(5, 6)).t == 1

    def test_midpoint(self):
        assert t_from_fidelity(2, F(1, 2)).t == F(1, 2)

    def test_float_edges(self):
        assert t_from_fidelity(2, 5 / 6).t == 1.0
        assert t_from_fidelity(2, 1 / 6).t == 0.0

    def test_out_of_range_names_interval(self):
        with pytest.raises(FidelityOutOfRangeError) as info:
            t_from_fidelity(2, 0.9)
        assert info.value.lo == pytest.approx(1 / 6)
        assert info.value.hi == pytest.approx(5 / 6)
        assert "0.1666" in str(info.value) and "0.8333" in str(info.value)

    def test_exact_out_of_range(self):
        with pytest.raises(FidelityOutOfRangeError):
            t_from_fidelity(3, F(7, 9) + F(1, 10**9))

    @settings(max_examples=200, deadline=None)
    @given(two_js, st.floats(0.0, 1.0))
    def test_round_trip(self, two_j, t):
        f = fidelity_of(ClonerSpec(two_j, t))
        assert abs(t_from_fidelity(two_j, f).t - t) < 1e-14
        assert abs(fidelity_of(t_from_fidelity(two_j, f)) - f) < 1e-14


class TestNamed:
    def test_prime_spin_one(self):
        assert make_named("prime", 2).t == F(7, 8)

    def test_optimal_spin_two(self):
        spec = make_named("optimal", 4)
        assert spec.t == 1 and fidelity_of(spec) == F(3, 4)

    def test_worst_spin_one(self):
        spec = make_named("worst", 2)
        assert spec.t == 0 and fidelity_of(spec) == F(1, 6)

    def test_uniform(self):
        assert make_named("uniform", 7).t == F(1, 2)

    def test_unknown(self):
        with pytest.raises(DomainError):
            make_named("best", 2)

    @pytest.mark.parametrize("two_j", range(2, 200))
    def test_prime_within_unit_interval(self, two_j):
        assert 0 <= make_named("prime", two_j).t <= 1


class TestInterval:
    def test_spin_one(self):
        iv = allowed_interval(2)
        assert (iv.lo, iv.hi) == (F(1, 6), F(5, 6))

    def test_spin_three_halves(self):
        iv = allowed_interval(3)
        assert (iv.lo, iv.hi) == (F(2, 9), F(7, 9))

    def test_large_copy_limit(self):
        iv = allowed_interval(1000, exact=False)
        assert abs(iv.lo - 1 / 3) < 1e-3 and abs(iv.hi - 2 / 3) < 1e-3

    @pytest.mark.parametrize("two_j", range(2, 65))
    def test_symmetric_about_half(self, two_j):
        iv = allowed_interval(two_j)
        assert iv.lo == 1 - iv.hi and iv.midpoint == F(1, 2)
        assert fidelity_of(make_named("optimal", two_j)) == iv.hi
        assert fidelity_of(make_named("worst", two_j)) == iv.lo


class TestValidation:
    @pytest.mark.parametrize("t", [-0.1, 1.5, F(9, 8), float("nan")])
    def test_bad_t(self, t):
        with pytest.raises(DomainError):
            ClonerSpec(2, t)

    @pytest.mark.parametrize("two_j", [0, 1, -2, 2.0, True])
    def test_bad_two_j(self, two_j):
        with pytest.raises(DomainError):
            ClonerSpec(two_j, 1)

    def test_wrong_length(self):
        with pytest.raises(DomainError):
            ProbDist(2, (F(1, 2), F(1, 2)))
