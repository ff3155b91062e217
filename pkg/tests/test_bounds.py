import cmath
import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superconc import bounds as B
from superconc.concurrence import concurrence
from superconc.errors import (ClassPreconditionError, InvariantError, PartitionCapError,
                              VanishingNormError)
from superconc.figure import example_states, figure1_rows
from superconc.linalg import PureState
from superconc.orthogonality import OrthoClass
from superconc.verifier import (EnsembleSpec, random_class_set, random_pure_state,
                                random_unit_vector, trial_rng)

from conftest import R2, ket

SQ5_2 = math.sqrt(5) / 2


def draw(cls, dims, m, seed, k):
    g = trial_rng(seed, k)
    states = random_class_set(EnsembleSpec(dims[0], dims[1], m, cls, 1, seed), g)
    return B.Superposition(random_unit_vector(m, g), states)


def sweep(x):
    psi, phi = example_states()
    return B.Superposition.normalized([x, -math.sqrt(max(0.0, 1 - x * x))], (psi, phi))


class TestSuperposition:
    def test_rejects_unnormalized(self, e00, e11):
        with pytest.raises(ValueError, match="normalized"):
            B.Superposition([1, 1], (e00, e11))

    def test_dims_must_match(self, e00):
        with pytest.raises(ValueError, match="mismatch"):
            B.Superposition([R2, R2], (e00, PureState.basis(2, 3, 0, 0)))

    def test_count_must_match(self, e00, e11):
        with pytest.raises(ValueError):
            B.Superposition([1], (e00, e11))

    def test_empty(self):
        with pytest.raises(ValueError):
            B.Superposition([], ())


class TestExact:
    def test_product_terms_make_bell(self, e00, e11):
        s = B.Superposition([R2, R2], (e00, e11))
        assert B.superpose_exact(s).exact == pytest.approx(1.0, abs=1e-14)

    def test_bells_make_product(self, bell, bell_minus):
        s = B.Superposition([R2, R2], (bell, bell_minus))
        norm, exact = B.superpose_exact(s)
        assert norm == pytest.approx(1.0)
        assert exact == pytest.approx(0.0, abs=1e-14)

    def test_example_cancellation(self):
        s = sweep(R2)
        assert B.superpose_exact(s).exact < 1e-12
        # Gamma' is |11> up to sign
        v = s.vector() / np.linalg.norm(s.vector())
        assert abs(abs(v[4]) - 1) < 1e-12

    def test_example_endpoints(self):
        for x in (0.0, 1.0):
            assert B.superpose_exact(sweep(x)).exact == pytest.approx(SQ5_2, abs=1e-12)

    def test_vanishing_norm(self, bell):
        with pytest.raises(VanishingNormError):
            B.superpose_exact(B.Superposition([R2, -R2], (bell, bell)))

    def test_expansion_matches_direct(self):
        for k in range(200):
            g = trial_rng(41, k)
            m = int(g.integers(1, 5))
            dims = (int(g.integers(2, 6)), int(g.integers(2, 6)))
            s = B.Superposition(random_unit_vector(m, g),
                                [random_pure_state(dims, g) for _ in range(m)])
            a = B.superpose_expansion(s).exact
            b = B.superpose_direct(s).exact
            assert abs(a - b) < 1e-10


class TestBiorthogonal:
    def test_two_qubit_product_pair(self, e00, e11):
        s = B.Superposition([R2, R2], (e00, e11))
        assert B.exact_biorthogonal(s) == pytest.approx(1.0)

    def test_two_qubit_general_weights(self, e00, e11):
        a, b = 0.6, 0.8j
        s = B.Superposition([a, b], (e00, e11))
        assert B.exact_biorthogonal(s) == pytest.approx(2 * abs(a * b))

    @pytest.mark.parametrize("m", [2, 3, 4, 5])
    def test_equal_weight_products(self, m):
        states = [PureState.basis(m, m, k, k) for k in range(m)]
        s = B.Superposition(np.full(m, 1 / math.sqrt(m)), states)
        # oracle: maximally entangled rank-m state built directly
        oracle = concurrence(PureState.normalized(m, m, np.eye(m)))
        assert B.exact_biorthogonal(s) == pytest.approx(oracle, abs=1e-12)
        assert oracle == pytest.approx(math.sqrt(2 * (m - 1) / m), abs=1e-12)

    def test_single_state(self, example_pair):
        s = B.Superposition([1], example_pair[:1])
        assert B.exact_biorthogonal(s) == pytest.approx(SQ5_2)

    def test_precondition(self, bell, bell_minus):
        with pytest.raises(ClassPreconditionError):
            B.exact_biorthogonal(B.Superposition([R2, R2], (bell, bell_minus)))

    def test_matches_exact_on_constructed_sets(self):
        for k in range(150):
            s = draw(OrthoClass.BIORTHOGONAL, (5, 6), 2 + k % 3, 42, k)
            assert abs(B.exact_biorthogonal(s) - B.superpose_exact(s).exact) < 1e-9


class TestOneSided:
    def test_biorthogonal_upper_is_exact(self):
        s = draw(OrthoClass.BIORTHOGONAL, (4, 4), 2, 43, 0)
        rep = B.bounds_one_sided(s)
        assert rep.upper == pytest.approx(B.exact_biorthogonal(s), abs=1e-12)

    def test_shared_b_product(self):
        x, y = PureState.basis(2, 2, 0, 0), PureState.basis(2, 2, 1, 0)
        rep = B.bounds_one_sided(B.Superposition([R2, R2], (x, y)))
        assert rep.exact == pytest.approx(0, abs=1e-14)
        assert rep.lower == pytest.approx(0, abs=1e-14)
        assert rep.upper == pytest.approx(1, abs=1e-14)

    def test_single_weight(self):
        x = ket((3, 3), {(0, 0): 0.6, (0, 1): 0.8})
        y = ket((3, 3), {(1, 0): 0.6, (2, 1): 0.8})
        rep = B.bounds_one_sided(B.Superposition([0, 1], (x, y)))
        c = concurrence(y)
        assert rep.lower == pytest.approx(c) and rep.upper == pytest.approx(c)

    def test_precondition(self, bell, bell_minus):
        with pytest.raises(ClassPreconditionError):
            B.bounds_one_sided(B.Superposition([R2, R2], (bell, bell_minus)))

    def test_b_side_accepted(self):
        s = draw(OrthoClass.ONE_SIDED_B, (3, 4), 3, 44, 0)
        assert B.bounds_one_sided(s).brackets()


class TestOrthogonal:
    def test_bell_pair(self, bell, bell_minus):
        rep = B.bounds_orthogonal(B.Superposition([R2, R2], (bell, bell_minus)))
        assert rep.upper == pytest.approx(2.0)
        assert rep.raw_lower == pytest.approx(-1.0)
        assert rep.lower == 0.0
        assert rep.exact == pytest.approx(0.0, abs=1e-14)

    def test_bell_pair_two_qubit_refined(self, bell, bell_minus):
        rep = B.bounds_orthogonal(B.Superposition([R2, R2], (bell, bell_minus)), two_qubit_refine=True)
        assert rep.upper == pytest.approx(1.0)

    def test_single_weight(self, bell, bell_minus):
        rep = B.bounds_orthogonal(B.Superposition([1, 0], (bell, bell_minus)))
        assert rep.lower == pytest.approx(1.0) and rep.upper == pytest.approx(1.0)

    def test_refine_needs_qubits(self):
        s = draw(OrthoClass.ORTHOGONAL, (3, 3), 2, 45, 0)
        with pytest.raises(ValueError, match="two-qubit"):
            B.bounds_orthogonal(s, two_qubit_refine=True)

    def test_precondition(self, example_pair):
        with pytest.raises(ClassPreconditionError):
            B.bounds_orthogonal(B.Superposition([R2, R2], example_pair))

    def test_two_state_lower_matches_general_form(self):
        for k in range(50):
            s = draw(OrthoClass.ORTHOGONAL, (3, 3), 2, 46, k)
            t = B._Terms(s)
            general = 2 * max(t.weighted) - sum(t.weighted) - 2 * t.gg[0]
            assert B.bounds_orthogonal(s).raw_lower == pytest.approx(general / t.norm2, abs=1e-14)

    def test_two_qubit_refined_brackets(self):
        for k in range(300):
            s = draw(OrthoClass.ORTHOGONAL, (2, 2), 2 + k % 2, 47, k)
            rep = B.bounds_orthogonal(s, two_qubit_refine=True)
            assert rep.brackets(1e-9)
            assert rep.upper <= B.bounds_orthogonal(s).upper + 1e-12


class TestArbitraryPair:
    def test_example_at_zero(self):
        rep = B.bounds_arbitrary_pair(sweep(0.0))
        assert rep.exact == pytest.approx(SQ5_2, abs=1e-12)
        assert rep.lower <= SQ5_2 + 1e-9 <= rep.upper + 2e-9

    def test_example_cancellation(self):
        rep = B.bounds_arbitrary_pair(sweep(R2))
        assert rep.exact < 1e-9 and rep.lower == 0.0

    def test_reduces_to_orthogonal(self):
        for k in range(100):
            s = draw(OrthoClass.ORTHOGONAL, (3, 4), 2, 48, k)
            a, o = B.bounds_arbitrary_pair(s), B.bounds_orthogonal(s)
            assert abs(a.upper - o.upper) < 1e-12
            assert abs(a.raw_lower - o.raw_lower) < 1e-12

    def test_needs_two(self, bell):
        with pytest.raises(ValueError):
            B.bounds_arbitrary_pair(B.Superposition([1], (bell,)))

    def test_two_qubit_refined_brackets(self):
        for k in range(400):
            s = draw(OrthoClass.ARBITRARY, (2, 2), 2, 49, k)
            rep = B.bounds_arbitrary_pair(s, two_qubit_refine=True)
            assert rep.brackets(1e-9)
            plain = B.bounds_arbitrary_pair(s)
            assert rep.upper <= plain.upper + 1e-12 and rep.lower >= plain.lower - 1e-12


class TestArbitraryMulti:
    def test_partition_count(self):
        assert B.partition_masks(3).shape == (8, 3)
        assert B.partition_masks(4).shape == (64, 6)
        assert len({tuple(r) for r in B.partition_masks(4)}) == 64

    def test_untouched_index(self):
        # pairs (0,1),(0,2),(1,2); {01} minus, {02,12} plus -> state 1 keeps g_1^2
        g = trial_rng(50, 0)
        s = B.Superposition(random_unit_vector(3, g), [random_pure_state((3, 3), g) for _ in range(3)])
        coeffs = B.partition_coefficients(s, np.array([[False, True, True]]))[0]
        gram = s.gram()
        gam = s.coefficients
        assert coeffs[1] == pytest.approx(gam[1] ** 2)
        assert coeffs[0] == pytest.approx(gam[0] ** 2 + 2 * gam[0] * gam[1] * gram[0, 1])
        assert coeffs[2] == pytest.approx(gam[2] ** 2 + 2 * gam[0] * gam[2] * gram[2, 0]
                                          + 2 * gam[1] * gam[2] * gram[2, 1])

    def test_no_untouched_index(self):
        # {02} minus, {01,12} plus -> every state gains a term
        g = trial_rng(50, 1)
        s = B.Superposition(random_unit_vector(3, g), [random_pure_state((3, 3), g) for _ in range(3)])
        coeffs = B.partition_coefficients(s, np.array([[True, False, True]]))[0]
        assert all(abs(c - gam ** 2) > 1e-6 for c, gam in zip(coeffs, s.coefficients))

    def test_m2_equals_pair(self):
        for k in range(200):
            s = draw(OrthoClass.ARBITRARY, (3, 3), 2, 51, k)
            a, b = B.bounds_arbitrary_pair(s), B.bounds_arbitrary_multi(s)
            assert abs(a.upper - b.upper) < 1e-10 and abs(a.raw_lower - b.raw_lower) < 1e-10
            assert b.partition_count == 2

    def test_biorthogonal_upper_above_exact(self):
        for k in range(50):
            s = draw(OrthoClass.BIORTHOGONAL, (4, 4), 3, 52, k)
            rep = B.bounds_arbitrary_multi(s)
            assert rep.brackets()
            assert rep.upper >= B.exact_biorthogonal(s) - 1e-9

    def test_random_m3_bracket(self):
        bad = 0
        for k in range(100):
            if not B.bounds_arbitrary_multi(draw(OrthoClass.ARBITRARY, (3, 3), 3, 53, k)).brackets(1e-9):
                bad += 1
        assert bad == 0

    def test_cap(self):
        g = trial_rng(54, 0)
        s = B.Superposition(random_unit_vector(7, g), [random_pure_state((3, 3), g) for _ in range(7)])
        with pytest.raises(PartitionCapError):
            B.bounds_arbitrary_multi(s)


class TestReference:
    def test_bell_pair_ours_tighter(self, bell, bell_minus):
        s = B.Superposition([R2, R2], (bell, bell_minus))
        lo, up = B.reference_bounds(s)
        ours = B.bounds_orthogonal(s)
        assert lo <= ours.raw_lower
        assert up == pytest.approx(ours.upper)

    def test_single_weight(self, example_pair):
        s = B.Superposition([1, 0], example_pair)
        lo, up = B.reference_bounds(s)
        rep = B.bounds_arbitrary_pair(s)
        for v in (lo, up, rep.lower, rep.upper):
            assert v == pytest.approx(SQ5_2)

    def test_sweep_dominance(self):
        for r in figure1_rows(201):
            assert r["upper"] <= r["ref_upper"] + 1e-9
            assert r["lower"] >= r["ref_lower"] - 1e-9

    def test_needs_two(self, bell):
        with pytest.raises(ValueError):
            B.reference_bounds(B.Superposition([1], (bell,)))


class TestEvaluate:
    @pytest.mark.parametrize("cls,theorem", [
        (OrthoClass.BIORTHOGONAL, "biorthogonal-exact"),
        (OrthoClass.ONE_SIDED_A, "one-sided"),
        (OrthoClass.ORTHOGONAL, "orthogonal"),
        (OrthoClass.ARBITRARY, "arbitrary-pair"),
    ])
    def test_dispatch_pairs(self, cls, theorem):
        rep = B.evaluate(draw(cls, (3, 3), 2, 55, 0))
        assert rep.ortho_class is cls and rep.theorem == theorem and rep.brackets()

    def test_dispatch_multi(self):
        rep = B.evaluate(draw(OrthoClass.ARBITRARY, (3, 3), 3, 56, 0))
        assert rep.theorem == "arbitrary-multi" and rep.partition_count == 8

    def test_force_weaker(self):
        s = draw(OrthoClass.BIORTHOGONAL, (3, 3), 2, 57, 0)
        rep = B.evaluate(s, force_class=OrthoClass.ORTHOGONAL)
        assert rep.theorem == "orthogonal" and rep.brackets()
        assert any("forced" in n for n in rep.notes)

    def test_force_stronger_rejected(self):
        with pytest.raises(ClassPreconditionError):
            B.evaluate(draw(OrthoClass.ORTHOGONAL, (3, 3), 2, 58, 0), force_class=OrthoClass.BIORTHOGONAL)

    def test_force_other_side_rejected(self):
        with pytest.raises(ClassPreconditionError):
            B.evaluate(draw(OrthoClass.ONE_SIDED_A, (3, 3), 2, 59, 0), force_class=OrthoClass.ONE_SIDED_B)

    def test_single_state(self, example_pair):
        rep = B.evaluate(B.Superposition([1j], example_pair[:1]))
        assert rep.lower == pytest.approx(SQ5_2) and rep.upper == pytest.approx(SQ5_2)
        assert rep.exact == pytest.approx(SQ5_2)

    def test_fallback_above_cap(self):
        g = trial_rng(60, 0)
        s = B.Superposition(random_unit_vector(7, g), [random_pure_state((3, 3), g) for _ in range(7)])
        rep = B.evaluate(s)
        assert rep.fallback and rep.partition_count is None and rep.brackets()

    def test_reference_attached(self):
        rep = B.evaluate(sweep(0.3), reference=True)
        assert rep.reference_lower <= rep.lower + 1e-12
        assert rep.upper <= rep.reference_upper + 1e-12

    def test_refine_ignored_for_biorthogonal(self, e00, e11):
        rep = B.evaluate(B.Superposition([R2, R2], (e00, e11)), two_qubit_refine=True)
        assert rep.exact == rep.lower == pytest.approx(1.0)
        assert rep.notes

    def test_report_dict(self):
        d = B.evaluate(sweep(0.3), reference=True).to_dict()
        assert d["class"] == "arbitrary" and set(d) >= {"exact", "lower", "upper", "norm"}


@pytest.mark.parametrize("cls", [OrthoClass.BIORTHOGONAL, OrthoClass.ONE_SIDED_A,
                                 OrthoClass.ORTHOGONAL, OrthoClass.ARBITRARY])
def test_bracket_all_applicable(cls):
    for k in range(60):
        g = trial_rng(61, k)
        m = int(g.integers(2, 5))
        s = draw(cls, (4, 4), m, 61, k)
        reps = [B.bounds_arbitrary_multi(s)]
        if m == 2:
            reps.append(B.bounds_arbitrary_pair(s))
        if cls is not OrthoClass.ARBITRARY:
            reps.append(B.bounds_orthogonal(s))
        if cls.is_one_sided:
            reps.append(B.bounds_one_sided(s))
        for rep in reps:
            assert rep.lower - 1e-9 <= rep.exact <= rep.upper + 1e-9, rep.theorem
            assert rep.lower >= 0


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), thetas=st.lists(st.floats(0, 2 * math.pi), min_size=3, max_size=3),
       cls=st.sampled_from([OrthoClass.ONE_SIDED_A, OrthoClass.ORTHOGONAL, OrthoClass.ARBITRARY]))
def test_coefficient_phase_covariance(seed, thetas, cls):
    s = draw(cls, (3, 3), 3, seed % 1000, seed)
    ph = [cmath.exp(1j * t) for t in thetas]
    moved = B.Superposition([g * p for g, p in zip(s.coefficients, ph)],
                            [PureState.normalized(*x.dims, x.amplitudes / p) for x, p in zip(s.states, ph)])
    for fn in (B.bounds_arbitrary_multi, ):
        a, b = fn(s), fn(moved)
        assert abs(a.exact - b.exact) < 1e-10
        assert abs(a.upper - b.upper) < 1e-10 and abs(a.raw_lower - b.raw_lower) < 1e-10
    if cls is not OrthoClass.ARBITRARY:
        a, b = B.bounds_orthogonal(s), B.bounds_orthogonal(moved)
        assert abs(a.upper - b.upper) < 1e-10 and abs(a.raw_lower - b.raw_lower) < 1e-10
