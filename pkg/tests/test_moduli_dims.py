"""Tests for the dimension formulas and the distribution enumerator."""

from fractions import Fraction
from itertools import combinations_with_replacement

import pytest

from symcount import moduli_dims as md
from symcount.errors import InconsistencyError, InputError


def morse(sign, idx):
    return md.PunctureSpec(sign, Fraction(idx))


# --- dim_punctured ----------------------------------------------------------

@pytest.mark.parametrize("n", range(2, 11))
def test_projective_line_tangency_is_rigid(n):
    assert md.dim_punctured(md.projective_line_tangency_problem(n)) == 0


def test_trivial_cylinder_dimension_zero():
    prob = md.ModuliProblem(
        n=3,
        punctures=(morse(md.POSITIVE, 2), morse(md.NEGATIVE, 2)),
        c1=0,
    )
    assert md.dim_punctured(prob) == 0


@pytest.mark.parametrize("n", range(2, 7))
def test_audin_problem_dimension(n):
    for m in range(n + 1, 2 * n + 3):
        # split 2n+2 into m positive entries (arbitrary; only the sum enters)
        mu = [1] * m
        rest = 2 * n + 2 - m
        mu[0] += rest
        prob = md.audin_problem(n, tuple(mu))
        assert md.dim_punctured(prob) == 2 * m - 2 * n - 2


def test_terms_breakdown_is_consistent():
    prob = md.audin_problem(3, (2, 2, 2, 2))
    terms = md.dim_punctured_terms(prob)
    pieces = sum(v for k, v in terms.items() if k != "total")
    assert pieces == terms["total"] == 0


def test_symbolic_recomputation_of_formula():
    # independent re-derivation of the closed-form polynomial in sympy
    sympy = pytest.importorskip("sympy")
    n, ppos, pneg, c1, m, ell, nodes = sympy.symbols(
        "n ppos pneg c1 m ell nodes", integer=True
    )
    cz_pos, cz_neg, dims = sympy.symbols("cz_pos cz_neg dims")
    formula = (
        (n - 3) * (2 - ppos - pneg)
        + 2 * c1
        + (cz_pos + dims)
        - cz_neg
        + 2 * m
        - (2 * n - 2)
        - 2 * ell
        - 2 * nodes
    )
    subs = {n: 4, ppos: 3, pneg: 2, c1: 5, m: 2, ell: 3, nodes: 1,
            cz_pos: 7, cz_neg: 3, dims: 9}
    expected = formula.subs(subs)
    prob = md.ModuliProblem(
        n=4,
        punctures=(
            md.PunctureSpec(md.POSITIVE, Fraction(3), 3),
            md.PunctureSpec(md.POSITIVE, Fraction(3), 3),
            md.PunctureSpec(md.POSITIVE, Fraction(1), 3),
            morse(md.NEGATIVE, 2),
            morse(md.NEGATIVE, 1),
        ),
        c1=5,
        marked_points=2,
        tangency_order=3,
        point_constraint=True,
        node_count=1,
    )
    assert md.dim_punctured(prob) == expected


def test_half_integer_punctures_must_close_up():
    prob = md.ModuliProblem(
        n=2,
        punctures=(md.PunctureSpec(md.POSITIVE, Fraction(1, 2), 1),),
        c1=0,
    )
    with pytest.raises(InconsistencyError):
        md.dim_punctured(prob)


def test_tangency_requires_point_constraint():
    with pytest.raises(InputError):
        md.ModuliProblem(n=2, tangency_order=1, point_constraint=False)


# --- dim_plane / puncture bounds ---------------------------------------------

@pytest.mark.parametrize(
    "n,mu,expected", [(2, 2, 1), (3, 2, 2), (3, 0, 0)]
)
def test_dim_plane(n, mu, expected):
    assert md.dim_plane(n, mu) == expected


@pytest.mark.parametrize("ell,expected", [(0, 2), (2, 4), (5, 7)])
def test_min_punctures_simple(ell, expected):
    assert md.min_punctures_simple(ell) == expected


@pytest.mark.parametrize("n", range(1, 13))
def test_multicover_puncture_bound(n):
    assert md.multicover_puncture_bound(n) == n + 1


def test_multicover_small_search_window():
    assert md.multicover_puncture_bound(1, search_limit=4) == 2


# --- audin distributions ------------------------------------------------------

@pytest.mark.parametrize("n", range(1, 13))
def test_even_distributions_unique(n):
    dists = md.audin_distributions(n, even_only=True)
    assert len(dists) == 1
    assert dists[0].as_pair() == (n + 1, tuple([2] * (n + 1)))


def test_all_parities_have_small_entry():
    for n in (2, 3, 4):
        for dist in md.audin_distributions(n, even_only=False):
            assert min(dist.mu) <= 2


def test_distribution_sum_validated_on_construction():
    with pytest.raises(InconsistencyError):
        md.MaslovDistribution(2, 3, (2, 2, 4))


def test_even_distribution_pins_m():
    # each even entry is >= 2, so 2m <= sum(mu) = 2n+2 forces m <= n+1;
    # together with the enumerator's bound m >= n+1 this pins m = n+1
    for n in (1, 2, 3, 5, 8):
        for dist in md.audin_distributions(n, even_only=True):
            assert dist.m == n + 1


def test_distributions_against_independent_enumeration():
    # oracle: filter all multisets generated by combinations_with_replacement
    for n in (2, 3):
        total = 2 * n + 2
        expected = set()
        for m in range(n + 1, total + 1):
            for combo in combinations_with_replacement(range(1, total + 1), m):
                if sum(combo) != total:
                    continue
                if sum(x + abs(2 - x) for x in combo) > 2 * m:
                    continue
                expected.add((m, tuple(sorted(combo, reverse=True))))
        got = {d.as_pair() for d in md.audin_distributions(n, even_only=False)}
        assert got == expected


# --- evaluation rank inequality ----------------------------------------------

def test_evaluation_rank_cases():
    assert md.evaluation_rank_inequality(2, md.MaslovDistribution(2, 3, (2, 2, 2)))
    assert not md.evaluation_rank_inequality(2, md.MaslovDistribution(2, 3, (4, 1, 1)))
    assert md.evaluation_rank_inequality(3, md.MaslovDistribution(3, 4, (2, 2, 2, 2)))


def test_survivors_pass_evaluation_rank():
    for n in (2, 3, 4):
        for dist in md.audin_distributions(n, even_only=False):
            assert md.evaluation_rank_inequality(n, dist)


# --- JSON ---------------------------------------------------------------------

def test_problem_json_roundtrip():
    prob = md.audin_problem(2, (2, 2, 2))
    back = md.problem_from_json(md.problem_to_json(prob))
    assert back == prob
    assert md.dim_punctured(back) == 0
