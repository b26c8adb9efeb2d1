import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinsq.criteria import (
    DETECTION_TOLERANCE,
    OBSERVATION1_IDS,
    best_standard_squeezing,
    eval_dicke_criterion,
    eval_observation1,
    eval_standard_squeezing,
    extreme_points,
    optimal_directions,
    rotate_moments,
    separable_extreme_A,
    separable_extreme_B,
)
from spinsq.sampling import (
    random_bloch_vectors,
    random_density_matrix,
    random_product_state,
    random_rotation,
    random_separable_state,
    random_symmetric_state,
)
from spinsq.spin import CollectiveMoments, moments_from_state, product_state, reference_state

from conftest import SINGLET_DM
from oracles import direction_scan, frame_margins


def random_feasible_j(rng, n):
    v = rng.normal(size=3)
    return v / np.linalg.norm(v) * rng.uniform(0, 0.999) * n / 2


def point_moments(n, j_vec, k_vec):
    return CollectiveMoments.from_jk(n, j_vec, k_vec)


class TestObservation1:
    def test_identifiers(self):
        r = eval_observation1(moments_from_state(SINGLET_DM))
        assert tuple(r.margins) == OBSERVATION1_IDS
        r = eval_observation1(moments_from_state(SINGLET_DM), extras=True)
        assert set(r.margins) == set(OBSERVATION1_IDS) | {"case2"}

    def test_singlet(self):
        r = eval_observation1(moments_from_state(SINGLET_DM))
        assert r.margins["eq2b"] == pytest.approx(1, abs=1e-12)
        assert r.detected and r.argmax_id == "eq2b"

    def test_polarized_boundary(self):
        r = eval_observation1(moments_from_state(product_state([(0, 0, 1)] * 4)))
        assert max(r.margins.values()) <= 1e-12
        assert abs(r.margins["eq2c_z"]) < 1e-12
        assert not r.detected

    def test_dicke(self):
        r = eval_observation1(moments_from_state(reference_state("dicke_half", 4)))
        assert r.margins["eq2c_z"] == pytest.approx(4, abs=1e-10)
        assert r.detected

    def test_explicit_formulas(self):
        # N=3, J=(0.5,0,0.2), K=(0.9,1.1,0.6)
        m = point_moments(3, [0.5, 0, 0.2], [0.9, 1.1, 0.6])
        var = np.array([0.9 - 0.25, 1.1, 0.6 - 0.04])
        r = eval_observation1(m).margins
        assert r["eq2a"] == pytest.approx(2.6 - 15 / 4)
        assert r["eq2b"] == pytest.approx(1.5 - var.sum())
        assert r["eq2c_y"] == pytest.approx(0.9 + 0.6 - 1.5 - 2 * var[1])
        assert r["eq2d_x"] == pytest.approx(0.9 + 0.75 - 2 * (var[1] + var[2]))

    def test_detection_flag_uses_tolerance(self):
        # N=2, K=(1/2, 1/2, 0): eq2b, eq2c_z and eq2d_x sit exactly at 0
        r = eval_observation1(point_moments(2, [0, 0, 0], [0.5, 0.5, 0]))
        assert r.max_margin == pytest.approx(0, abs=1e-15)
        assert not r.detected
        assert not eval_observation1(point_moments(2, [0, 0, 0], [0.5 - 1e-10, 0.5, 0])).detected
        assert eval_observation1(point_moments(2, [0, 0, 0], [0.5 - 1e-8, 0.5, 0])).detected

    def test_needs_two_qubits(self):
        with pytest.raises(ValueError):
            eval_observation1(point_moments(1, [0, 0, 0.5], [0.25] * 3))

    @pytest.mark.parametrize("n", range(2, 7))
    def test_product_states_satisfy(self, rng, n):
        for _ in range(200):
            r = eval_observation1(moments_from_state(random_product_state(rng, n)))
            assert r.max_margin <= DETECTION_TOLERANCE

    @pytest.mark.parametrize("n", range(2, 6))
    def test_mixtures_satisfy(self, rng, n):
        for terms in range(1, 11):
            r = eval_observation1(moments_from_state(random_separable_state(rng, n, terms)))
            assert r.max_margin <= DETECTION_TOLERANCE

    @pytest.mark.parametrize("n", range(2, 6))
    def test_eq2a_universal(self, rng, n):
        for _ in range(50):
            m = moments_from_state(random_density_matrix(rng, n, rank=int(rng.integers(1, 4))))
            assert eval_observation1(m).margins["eq2a"] <= DETECTION_TOLERANCE


@settings(max_examples=300, deadline=None)
@given(
    n=st.integers(2, 40),
    seed=st.integers(0, 2**32 - 1),
)
def test_product_moments_from_bloch_vectors(n, seed):
    # moments of a product state straight from Bloch components; no density matrix
    b = random_bloch_vectors(np.random.default_rng(seed), n)
    s = b.sum(axis=0)
    j = s / 2
    k = n / 4 + (s**2 - (b**2).sum(axis=0)) / 4
    r = eval_observation1(point_moments(n, j, k))
    assert r.max_margin <= 1e-9 * n * n


class TestStandardSqueezing:
    def test_coherent_boundary(self):
        m = moments_from_state(product_state([(0, 0, 1)] * 5))
        assert eval_standard_squeezing(m, ("x", "y", "z")) == pytest.approx(0, abs=1e-12)

    def test_inapplicable(self):
        assert eval_standard_squeezing(moments_from_state(SINGLET_DM)) is None
        assert best_standard_squeezing(moments_from_state(SINGLET_DM)) is None

    def test_product_states(self, rng):
        for _ in range(300):
            n = int(rng.integers(2, 7))
            m = moments_from_state(random_product_state(rng, n))
            assert best_standard_squeezing(m) <= DETECTION_TOLERANCE

    def test_bad_axes(self):
        with pytest.raises(ValueError):
            eval_standard_squeezing(moments_from_state(SINGLET_DM), ("x", "x", "z"))

    def test_squeezed_state_detected(self):
        # one-axis-twisted style state: polarized along z with reduced Var(Jx)
        m = point_moments(10, [0, 0, 4.8], [0.8, 4.0, 23.5])
        assert eval_standard_squeezing(m) > 0


class TestDickeCriterion:
    def test_dicke(self):
        m = moments_from_state(reference_state("dicke_half", 4))
        assert eval_dicke_criterion(m) == pytest.approx(1, abs=1e-10)

    def test_polarized_and_mixed(self):
        up = moments_from_state(product_state([(0, 0, 1)] * 4))
        mixed = moments_from_state(np.eye(16) / 16)
        assert eval_dicke_criterion(up) == pytest.approx(-3)
        assert eval_dicke_criterion(mixed) == pytest.approx(-3)

    def test_axis_pair(self):
        up = moments_from_state(product_state([(0, 0, 1)] * 4))
        assert eval_dicke_criterion(up, ("x", "z")) == pytest.approx(1 + 4 - 5)
        with pytest.raises(ValueError):
            eval_dicke_criterion(up, ("z", "z"))


class TestExtremePoints:
    def test_fig1_parameters(self):
        e = extreme_points([0, 0, 0], 6)
        assert np.allclose(e.a_points[0], [9, 1.5, 1.5])
        assert np.allclose(e.b_points[0], [0, 1.5, 1.5])
        assert e.kappa == pytest.approx(5 / 6)

    @pytest.mark.parametrize("n", [2, 5, 8])
    def test_zero_spin_b_points(self, n):
        e = extreme_points([0, 0, 0], n)
        assert np.allclose(e.b_points, n / 4 * (1 - np.eye(3)))

    def test_cyclic_substitution(self, rng):
        j = random_feasible_j(rng, 5)
        e = extreme_points(j, 5)
        for perm in itertools.permutations(range(3)):
            ep = extreme_points(j[list(perm)], 5)
            for k in range(3):
                assert np.allclose(ep.a_points[k], e.a_points[perm[k]][list(perm)])
                assert np.allclose(ep.b_points[k], e.b_points[perm[k]][list(perm)])

    def test_on_polytope_boundary(self, rng):
        for n in range(2, 9):
            for _ in range(20):
                j = random_feasible_j(rng, n)
                e = extreme_points(j, n)
                for pt in np.vstack([e.a_points, e.b_points]):
                    margins = eval_observation1(point_moments(n, j, pt)).margins
                    assert max(margins.values()) <= 1e-9
                    assert max(margins.values()) >= -1e-9

    def test_subsumed_criteria(self, rng):
        for n in range(2, 9):
            for _ in range(20):
                j = random_feasible_j(rng, n)
                e = extreme_points(j, n)
                for pt in np.vstack([e.a_points, e.b_points]):
                    m = point_moments(n, j, pt)
                    eq1 = best_standard_squeezing(m)
                    assert eq1 is None or eq1 <= 1e-9
                    for pair in (("x", "y"), ("x", "z"), ("y", "z")):
                        assert eval_dicke_criterion(m, pair) <= 1e-9

    def test_b_point_standard_squeezing_equality(self, rng):
        j = random_feasible_j(rng, 6)
        e = extreme_points(j, 6)
        m = point_moments(6, j, e.b_points[0])
        assert eval_standard_squeezing(m, ("x", "y", "z")) == pytest.approx(0, abs=1e-12)

    def test_infeasible(self):
        with pytest.raises(ValueError):
            extreme_points([2, 0, 1], 4)


class TestSeparableExtremes:
    def test_a_example(self):
        rho = separable_extreme_A("x", [1, 0, 0], 4)
        m = moments_from_state(rho)
        assert m.j_vec[0] == pytest.approx(1, abs=1e-12)
        assert m.k_vec[0] == pytest.approx(4, abs=1e-12)

    def test_a_zero_spin_is_equal_mixture(self):
        rho = separable_extreme_A("z", [0, 0, 0], 3)
        m = moments_from_state(rho)
        assert np.allclose(m.k_vec, extreme_points([0, 0, 0], 3).a_points[2], atol=1e-12)
        assert rho[0, 0] == pytest.approx(0.5) and rho[-1, -1] == pytest.approx(0.5)

    def test_a_satisfies_inequalities(self, rng):
        for axis in "xyz":
            rho = separable_extreme_A(axis, random_feasible_j(rng, 4), 4)
            assert eval_observation1(moments_from_state(rho)).max_margin <= 1e-9

    def test_b_integer_split(self):
        rho, gap = separable_extreme_B("x", [1, 0, 0], 4)
        m = moments_from_state(rho)
        assert gap == 0
        assert np.allclose(m.k_vec, extreme_points([1, 0, 0], 4).b_points[0], atol=1e-12)
        assert abs(np.trace(rho @ rho) - 1) < 1e-12

    def test_b_half_split(self):
        rho, gap = separable_extreme_B("x", [0.5, 0, 0], 4)
        assert gap == pytest.approx(0.25, abs=1e-15)
        m = moments_from_state(rho)
        b = extreme_points([0.5, 0, 0], 4).b_points[0]
        assert m.k_vec[0] - b[0] == pytest.approx(0.25, abs=1e-12)
        assert np.allclose(m.k_vec[1:], b[1:], atol=1e-12)

    def test_b_gap_bound(self, rng):
        for n in range(2, 8):
            for axis in "xyz":
                _, gap = separable_extreme_B(axis, random_feasible_j(rng, n), n)
                assert 0 <= gap <= 0.25 + 1e-12

    def test_degenerate_axis(self):
        with pytest.raises(ValueError, match="c = 0"):
            separable_extreme_A("x", [0, 2, 0], 4)
        with pytest.raises(ValueError):
            separable_extreme_B("z", [0, 0, 3], 4)


class TestRotations:
    def test_identity(self, rng):
        m = moments_from_state(random_density_matrix(rng, 3))
        r = rotate_moments(m, np.eye(3))
        assert np.array_equal(r.corr, m.corr) and np.array_equal(r.j_vec, m.j_vec)

    def test_invariant_margins(self, rng):
        m = moments_from_state(random_density_matrix(rng, 4))
        base = eval_observation1(m).margins
        for _ in range(20):
            rot = eval_observation1(rotate_moments(m, random_rotation(rng))).margins
            assert abs(rot["eq2a"] - base["eq2a"]) < 1e-10
            assert abs(rot["eq2b"] - base["eq2b"]) < 1e-10

    def test_rejects_non_orthogonal(self, rng):
        m = moments_from_state(random_density_matrix(rng, 2))
        with pytest.raises(ValueError):
            rotate_moments(m, 2 * np.eye(3))


class TestOptimalDirections:
    def test_diagonal_x(self):
        m = point_moments(3, [0, 0, 0], [0.3, 0.9, 0.6])
        m = CollectiveMoments(3, m.j_vec, np.diag(m.k_vec))
        d = optimal_directions(m)
        o = d.rotation
        assert np.allclose(np.abs(o), np.abs(o).round())
        assert np.allclose(np.abs(o).sum(axis=0), 1)
        base = eval_observation1(m)
        assert d.report.max_margin == pytest.approx(base.max_margin)
        assert sorted(d.report.margins.values()) == pytest.approx(sorted(base.margins.values()))

    def test_singlet(self):
        d = optimal_directions(moments_from_state(SINGLET_DM))
        assert np.allclose(d.x_eigenvalues, 0, atol=1e-14)
        assert d.eq2c_threshold == pytest.approx(-1)
        assert not d.eq2c_violated
        assert d.report.margins["eq2b"] == pytest.approx(1)

    def test_frame_is_rotation(self, rng):
        d = optimal_directions(moments_from_state(random_density_matrix(rng, 3)))
        assert np.allclose(d.rotation @ d.rotation.T, np.eye(3))
        assert np.linalg.det(d.rotation) == pytest.approx(1)

    def test_closed_form_matches_rotated_report(self, rng):
        for _ in range(100):
            n = int(rng.integers(2, 6))
            rho = random_symmetric_state(rng, n) if rng.uniform() < 0.5 else random_density_matrix(rng, n, 2)
            d = optimal_directions(moments_from_state(rho))
            best_c = max(d.report.margins[f"eq2c_{a}"] for a in "xyz")
            best_d = max(d.report.margins[f"eq2d_{a}"] for a in "xyz")
            assert best_c == pytest.approx(d.eq2c_margin, abs=1e-9)
            assert best_d == pytest.approx(d.eq2d_margin, abs=1e-9)

    def test_product_states_not_violated(self, rng):
        for _ in range(50):
            m = moments_from_state(random_product_state(rng, int(rng.integers(2, 6))))
            d = optimal_directions(m)
            assert not d.eq2c_violated and not d.eq2d_violated
            c, dd = direction_scan(m, rng, polish=False)
            assert c <= 1e-9 and dd <= 1e-9

    def test_no_frame_beats_closed_form(self, rng):
        for _ in range(50):
            m = moments_from_state(random_density_matrix(rng, int(rng.integers(2, 5)), 1))
            d = optimal_directions(m)
            c, dd = frame_margins(m, [random_rotation(rng) for _ in range(200)])
            assert c.max() <= d.eq2c_margin + 1e-9
            assert dd.max() <= d.eq2d_margin + 1e-9

    def test_needs_full_correlations(self):
        with pytest.raises(ValueError):
            optimal_directions(point_moments(3, [0, 0, 0], [1, 1, 1]))
