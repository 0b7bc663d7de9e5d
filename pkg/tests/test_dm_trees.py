"""Tests for stable-tree combinatorics and nodal-curve validation."""

from itertools import combinations

import numpy as np
import pytest

from symcount import dm_trees as dt
from symcount.errors import InputError, PreconditionError


def one_vertex(k):
    return dt.LabelledTree(("a",), frozenset(), {"a": frozenset(range(1, k + 1))})


def two_vertex(left, right):
    return dt.LabelledTree(
        ("a", "b"),
        frozenset([frozenset(("a", "b"))]),
        {"a": frozenset(left), "b": frozenset(right)},
    )


def random_tree(k, rng):
    n_vertices = int(rng.integers(1, max(2, k)))
    vertices = tuple(range(n_vertices))
    edges = set()
    for v in range(1, n_vertices):
        edges.add(frozenset((v, int(rng.integers(0, v)))))
    labels = {v: set() for v in vertices}
    for label in range(1, k + 1):
        labels[int(rng.integers(0, n_vertices))].add(label)
    return dt.LabelledTree(vertices, frozenset(edges), labels)


# --- stability -----------------------------------------------------------------

def test_one_vertex_k3_stable():
    assert dt.is_stable(one_vertex(3))


def test_k2_always_unstable():
    assert not dt.is_stable(one_vertex(2))
    assert not dt.is_stable(two_vertex({1}, {2}))


def test_two_vertex_22_stable():
    assert dt.is_stable(two_vertex({1, 2}, {3, 4}))


# --- stabilization ----------------------------------------------------------------

def test_stabilize_fixes_stable_tree():
    t = two_vertex({1, 2}, {3, 4})
    assert dt.stabilize(t).canonical_form() == t.canonical_form()


def test_stabilize_collapses_bare_middle_vertex():
    path = dt.LabelledTree(
        ("a", "b", "c"),
        frozenset([frozenset(("a", "b")), frozenset(("b", "c"))]),
        {"a": frozenset({1, 2}), "b": frozenset(), "c": frozenset({3, 4})},
    )
    st = dt.stabilize(path)
    assert st.canonical_form() == two_vertex({1, 2}, {3, 4}).canonical_form()


def test_stabilize_absorbs_chain_into_single_vertex():
    chain = dt.LabelledTree(
        ("a", "b", "c"),
        frozenset([frozenset(("a", "b")), frozenset(("b", "c"))]),
        {"a": frozenset({1, 2, 3}), "b": frozenset(), "c": frozenset({4})},
    )
    st = dt.stabilize(chain)
    assert len(st.vertices) == 1
    assert next(iter(st.labels.values())) == frozenset({1, 2, 3, 4})


def test_stabilize_requires_three_labels():
    with pytest.raises(InputError):
        dt.stabilize(one_vertex(2))


def test_stabilize_idempotent_on_random_trees():
    rng = np.random.default_rng(17)
    for _ in range(500):
        k = int(rng.integers(3, 8))
        t = random_tree(k, rng)
        st = dt.stabilize(t)
        assert dt.is_stable(st) or len(st.vertices) == 1
        assert dt.stabilize(st).canonical_form() == st.canonical_form()


# --- stratum dimensions -------------------------------------------------------------

def test_stratum_dim_examples():
    assert dt.stratum_dim(one_vertex(4)) == 1
    assert dt.stratum_dim(two_vertex({1, 2}, {3, 4})) == 0
    assert dt.stratum_dim(one_vertex(3)) == 0


def test_stratum_dim_requires_stable():
    with pytest.raises(PreconditionError):
        dt.stratum_dim(one_vertex(2))


@pytest.mark.parametrize("k", range(3, 7))
def test_dim_plus_codim_is_k_minus_3(k):
    for tree in dt.enumerate_stable_trees(k):
        assert dt.stratum_dim(tree) + dt.stratum_codim(tree) == k - 3
        assert dt.stratum_dim(tree) == tree.k - 3 - tree.num_edges()


# --- enumeration ---------------------------------------------------------------------

def test_enumerate_k3():
    assert len(dt.enumerate_stable_trees(3)) == 1


def test_enumerate_k4():
    trees = dt.enumerate_stable_trees(4)
    assert len(trees) == 4
    assert sum(1 for t in trees if len(t.vertices) == 2) == 3


def test_enumerate_k5_two_vertex_count():
    trees = dt.enumerate_stable_trees(5)
    assert sum(1 for t in trees if len(t.vertices) == 2) == 10
    assert len(trees) == 26


@pytest.mark.parametrize("k", range(4, 8))
def test_two_vertex_counts_match_subset_oracle(k):
    # independent oracle: unordered label splits with both sides size >= 2
    splits = {
        frozenset([frozenset(c), frozenset(set(range(1, k + 1)) - set(c))])
        for size in range(2, k - 1)
        for c in combinations(range(1, k + 1), size)
    }
    expected = len(splits)
    assert expected == 2 ** (k - 1) - k - 1
    trees = dt.enumerate_stable_trees(k)
    assert sum(1 for t in trees if len(t.vertices) == 2) == expected


def test_strata_dimensions_partition_moduli():
    # every stratum dimension lies in 0..k-3 and the top stratum is unique
    for k in (4, 5, 6):
        trees = dt.enumerate_stable_trees(k)
        dims = [dt.stratum_dim(t) for t in trees]
        assert max(dims) == k - 3
        assert dims.count(k - 3) == 1
        assert min(dims) == 0


# --- stable decompositions ------------------------------------------------------------

def test_decompositions_k2():
    decs = dt.stable_decompositions(2)
    assert len(decs) == 1
    assert [sorted(p) for p in decs[0].parts] == [[0], [1], [2]]


def test_decompositions_k3():
    decs = dt.stable_decompositions(3)
    assert len(decs) == 4
    for d in decs:
        assert d.parts[0] == frozenset({0})


def test_decomposition_ordering_by_minima():
    for d in dt.stable_decompositions(4):
        mins = [min(p) for p in d.parts]
        assert mins == sorted(mins)
        assert mins[0] == 0


@pytest.mark.parametrize("k", range(2, 6))
def test_decompositions_arise_from_trees(k):
    # every stable decomposition of {0..k} comes from some stable
    # (k+1)-labelled tree read off at the vertex carrying the 0-point
    from_trees = {
        dt.decomposition_of_vertex(t).parts
        for t in dt.enumerate_stable_trees(k + 1)
    }
    wanted = {d.parts for d in dt.stable_decompositions(k)}
    assert wanted <= from_trees


# --- nodal curves ----------------------------------------------------------------------

def unit(v):
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def test_nodal_single_sphere_distinct_points():
    tree = one_vertex(3)
    curve = dt.NodalCurve(
        tree,
        {},
        {1: unit([1, 0, 0]), 2: unit([0, 1, 0]), 3: unit([0, 0, 1])},
    )
    assert dt.validate_nodal(curve)


def test_nodal_coincident_points_invalid():
    tree = one_vertex(3)
    curve = dt.NodalCurve(
        tree,
        {},
        {1: unit([1, 0, 0]), 2: unit([1, 0, 0]), 3: unit([0, 0, 1])},
    )
    assert not dt.validate_nodal(curve)


def test_nodal_two_spheres_glued():
    tree = two_vertex({1, 2}, {3, 4})
    curve = dt.NodalCurve(
        tree,
        {("a", "b"): unit([0, 0, 1]), ("b", "a"): unit([0, 0, -1])},
        {
            1: unit([1, 0, 0]),
            2: unit([0, 1, 0]),
            3: unit([1, 1, 0]),
            4: unit([1, -1, 0]),
        },
    )
    assert dt.validate_nodal(curve)


def test_nodal_missing_node_pairing_invalid():
    tree = two_vertex({1, 2}, {3, 4})
    curve = dt.NodalCurve(
        tree,
        {("a", "b"): unit([0, 0, 1])},
        {
            1: unit([1, 0, 0]),
            2: unit([0, 1, 0]),
            3: unit([1, 1, 0]),
            4: unit([1, -1, 0]),
        },
    )
    assert not dt.validate_nodal(curve)


# --- JSON ---------------------------------------------------------------------------------

def test_tree_json_roundtrip():
    t = two_vertex({1, 2}, {3, 4})
    back = dt.tree_from_json(dt.tree_to_json(t))
    assert back.canonical_form() == t.canonical_form()
