"""Tests for the power-sum system solvers and the jet identity."""

import math
from itertools import permutations

import numpy as np
import pytest

from symcount import enumerative as en
from symcount.errors import InputError, VerificationError


# --- vandermonde --------------------------------------------------------------

def test_vandermonde_values():
    assert en.vandermonde([0, 1]) == 1
    assert en.vandermonde([1, 1, 5]) == 0
    assert en.vandermonde([0, 1, 2]) == 2


# --- power-sum triviality -------------------------------------------------------

@pytest.mark.parametrize("a", [[1.0], [1.0, 1.0], [1.0, 2.0, 3.0]])
def test_only_trivial_solution(a):
    sols = en.solve_weighted_power_system(a)
    assert len(sols) == 1
    assert np.allclose(sols.points[0], 0)


def test_trivial_solution_n2_by_hand():
    # z2 = -z1 turns the quadratic equation into 2 z1^2 = 0
    sols = en.solve_weighted_power_system([1.0, 1.0])
    assert np.allclose(sols.points[0], [0, 0])


def test_random_weights_trivial(seeded_rng=None):
    rng = np.random.default_rng(42)
    for _ in range(50):
        n = int(rng.integers(1, 4))
        a = list(rng.uniform(0.2, 3.0, size=n))
        assert len(en.solve_weighted_power_system(a)) == 1


def test_nonpositive_weights_rejected():
    with pytest.raises(InputError):
        en.solve_weighted_power_system([1.0, -1.0])


# --- projective intersections ---------------------------------------------------

@pytest.mark.parametrize(
    "a,expected",
    [
        ([1.0, 1.0, 1.0], 2),
        ([1.0, 2.0, 3.0], 2),
        ([1.0, 1.0, 1.0, 1.0], 6),
    ],
)
def test_projective_counts(a, expected):
    sols = en.count_projective_intersections(a)
    assert len(sols) == expected
    assert max(sols.residuals) < en.TAU_RES
    assert min(sols.jacobian_min_sv) > en.TAU_TRANS


def test_projective_points_n2_closed_form():
    # for unit weights the two points are (w^2 : w : 1), w a cube root of 1
    sols = en.count_projective_intersections([1.0, 1.0, 1.0])
    w = np.exp(2j * np.pi / 3)
    expected = {
        tuple(np.round(en._normalize_projective(np.array([u**2, u, 1.0])), 6))
        for u in (w, w.conjugate())
    }
    got = {tuple(np.round(p, 6)) for p in sols.points}
    assert got == expected


def test_weight_variation_moves_points():
    a_pts = en.count_projective_intersections([1.0, 1.0, 1.0]).points
    b_pts = en.count_projective_intersections([1.0, 2.0, 3.0]).points
    for p in b_pts:
        assert all(np.linalg.norm(p - q) > 1e-3 for q in a_pts)


def test_bezout_consistency():
    # the count equals the product of the equation degrees 1 * 2 * ... * n
    for a in ([1.0, 1.0, 1.0], [0.7, 1.3, 2.1, 0.9]):
        n = len(a) - 1
        assert len(en.count_projective_intersections(a)) == math.factorial(n)


def test_count_invariance_under_scaling_and_permutation():
    rng = np.random.default_rng(3)
    a = list(rng.uniform(0.5, 2.0, size=4))
    base = len(en.count_projective_intersections(a))
    assert len(en.count_projective_intersections([2.5 * x for x in a])) == base
    for perm in list(permutations(a))[:4]:
        assert len(en.count_projective_intersections(list(perm))) == base


def test_random_weight_sweep_counts_stable():
    rng = np.random.default_rng(1234)
    for _ in range(100):
        n = int(rng.integers(2, 4))
        a = list(rng.uniform(0.3, 2.5, size=n + 1))
        assert len(en.count_projective_intersections(a)) == math.factorial(n)


def test_monte_carlo_newton_oracle_n3():
    """Independent solver: polish many random starts, then collect."""
    a = [1.0, 1.3, 0.8, 1.9]
    polys = [en.power_sum(a, k) for k in (1, 2, 3)]
    rng = np.random.default_rng(7)
    found = []
    for _ in range(400):
        z0 = rng.normal(size=4) + 1j * rng.normal(size=4)
        z = en._newton_polish(polys, z0)
        if z is None:
            continue
        if all(np.linalg.norm(z - q) > 1e-6 for q in found):
            found.append(z)
    official = en.count_projective_intersections(a).points
    assert len(found) == len(official) == 6
    for z in found:
        assert any(np.linalg.norm(z - q) < 1e-8 for q in official)


# --- tangency lines --------------------------------------------------------------

@pytest.mark.parametrize("n,expected", [(2, 1), (3, 2), (4, 6)])
def test_tangency_counts(n, expected):
    sols = en.count_tangency_lines(n, [1.0] * n)
    assert len(sols) == expected
    assert min(sols.jacobian_min_sv) > en.TAU_TRANS


def test_tangency_n2_single_line():
    sols = en.count_tangency_lines(2, [1.0, 3.0])
    p = sols.points[0]
    # the single linear equation p1 + 3 p2 = 0
    assert abs(p[0] + 3.0 * p[1]) < 1e-12


def test_tangency_random_weights():
    rng = np.random.default_rng(99)
    for n in (2, 3, 4):
        for _ in range(10):
            a = list(rng.uniform(0.4, 2.2, size=n))
            assert len(en.count_tangency_lines(n, a)) == math.factorial(n - 1)


# --- jet identity -----------------------------------------------------------------

def test_jet_identity_linear_case():
    assert en.jet_identity_check([1.0, 0.0], 1, [1.0, 1.0]) == 0.0


def test_jet_identity_complex_point():
    assert en.jet_identity_check([1.0, 1j, -1.0], 2, [1.0, 2.0, 3.0]) < 1e-12


def test_jet_identity_random_points():
    rng = np.random.default_rng(21)
    for n in (2, 3, 4):
        a = list(rng.uniform(0.5, 2.0, size=n))
        for _ in range(50):
            p = rng.normal(size=n) + 1j * rng.normal(size=n)
            k = int(rng.integers(1, n))
            assert en.jet_identity_check(p, k, a) < 1e-12 * max(
                1.0, np.abs(p).max() ** n
            )


def test_jet_order_out_of_range():
    with pytest.raises(InputError):
        en.jet_identity_check([1.0, 1.0], 2, [1.0, 1.0])


# --- solution set contracts --------------------------------------------------------

def test_solution_set_rejects_large_residual():
    with pytest.raises(VerificationError):
        en.SolutionSet((np.array([1.0 + 0j]),), (1e-3,), (1.0,))


def test_solution_set_rejects_duplicates():
    p = np.array([1.0 + 0j, 0j])
    with pytest.raises(VerificationError):
        en.SolutionSet((p, p + 1e-9), (0.0, 0.0), (1.0, 1.0))


def test_multipoly_arithmetic():
    p = en.power_sum([1.0, 2.0], 2)  # z1^2 + 2 z2^2
    q = en.power_sum([1.0, 1.0], 1)
    r = p + q * q
    assert abs(r((1.0, 1.0)) - (3.0 + 4.0)) < 1e-14
    assert r.degree() == 2
