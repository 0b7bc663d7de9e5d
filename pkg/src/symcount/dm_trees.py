"""Stable-tree combinatorics of genus-zero curves with marked points.

A k-labelled tree assigns the labels 1..k to the vertices of a finite
tree; a vertex is stable when labels plus neighbours number at least 3.
The module computes stability, the canonical stabilization, stratum
dimensions k - 3 - e(T) with codimension e(T), full enumeration of
isomorphism classes of stable trees for small k, the stable
decompositions of {0,...,k} induced at a distinguished vertex, and
validity of sphere configurations (pairwise-distinct special points).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import InputError, PreconditionError

POINT_TOL = 1e-9


@dataclass(frozen=True)
class LabelledTree:
    """Tree (vertices, edges) with a label partition {1..k} -> vertices."""

    vertices: tuple
    edges: frozenset  # frozenset of frozenset pairs
    labels: dict      # vertex -> frozenset of labels

    def __post_init__(self):
        verts = tuple(self.vertices)
        if not verts:
            raise InputError("a tree needs at least one vertex")
        if len(set(verts)) != len(verts):
            raise InputError("duplicate vertices")
        edges = frozenset(frozenset(e) for e in self.edges)
        for e in edges:
            if len(e) != 2 or not e <= set(verts):
                raise InputError(f"bad edge {set(e)}")
        if len(edges) != len(verts) - 1:
            raise InputError("edge count must be vertex count minus one")
        if verts and not self._connected(verts, edges):
            raise InputError("tree is not connected")
        labels = {v: frozenset(self.labels.get(v, ())) for v in verts}
        all_labels = [l for ls in labels.values() for l in ls]
        k = len(all_labels)
        if sorted(all_labels) != list(range(1, k + 1)):
            raise InputError("labels must partition 1..k")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "labels", labels)

    @staticmethod
    def _connected(verts, edges) -> bool:
        seen = {verts[0]}
        frontier = [verts[0]]
        adj = {v: [] for v in verts}
        for e in edges:
            a, b = tuple(e)
            adj[a].append(b)
            adj[b].append(a)
        while frontier:
            for nxt in adj[frontier.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return len(seen) == len(verts)

    @property
    def k(self) -> int:
        return sum(len(ls) for ls in self.labels.values())

    def degree(self, v) -> int:
        return sum(1 for e in self.edges if v in e)

    def neighbours(self, v):
        out = []
        for e in self.edges:
            if v in e:
                (other,) = e - {v}
                out.append(other)
        return out

    def n_special(self, v) -> int:
        return len(self.labels[v]) + self.degree(v)

    def num_edges(self) -> int:
        return len(self.edges)

    def canonical_form(self):
        """Hashable isomorphism invariant: minimal rooted form over centroids."""
        return min(_rooted_form(self, c, None) for c in _centroids(self))


def _centroids(tree: LabelledTree):
    verts = list(tree.vertices)
    if len(verts) == 1:
        return verts
    remaining = set(verts)
    degree = {v: tree.degree(v) for v in verts}
    layer = [v for v in verts if degree[v] == 1]
    while len(remaining) > 2:
        nxt = []
        for v in layer:
            remaining.discard(v)
            for u in tree.neighbours(v):
                if u in remaining:
                    degree[u] -= 1
                    if degree[u] == 1:
                        nxt.append(u)
        layer = nxt
    return sorted(remaining)


def _rooted_form(tree: LabelledTree, v, parent):
    children = sorted(
        _rooted_form(tree, u, v) for u in tree.neighbours(v) if u != parent
    )
    return (tuple(sorted(tree.labels[v])), tuple(children))


def is_stable(tree: LabelledTree) -> bool:
    """Every vertex carries at least three special points."""
    return all(tree.n_special(v) >= 3 for v in tree.vertices)


def stabilize(tree: LabelledTree) -> LabelledTree:
    """Canonical stabilization: delete unstable vertices until stable.

    An unstable vertex of degree two carries no labels and is smoothed;
    one of degree one moves its (at most one) label to its neighbour.
    Requires k >= 3, otherwise no stable tree exists.
    """
    if tree.k < 3:
        raise InputError("stabilization needs at least three labels")
    verts = list(tree.vertices)
    edges = {frozenset(e) for e in tree.edges}
    labels = {v: set(ls) for v, ls in tree.labels.items()}

    def degree(v):
        return sum(1 for e in edges if v in e)

    changed = True
    while changed:
        changed = False
        for v in sorted(verts):
            if len(verts) == 1:
                break
            deg = degree(v)
            if len(labels[v]) + deg >= 3:
                continue
            nbs = sorted(u for e in edges if v in e for u in e - {v})
            if deg == 2:
                a, b = nbs
                edges -= {frozenset((v, a)), frozenset((v, b))}
                edges.add(frozenset((a, b)))
            elif deg == 1:
                (a,) = nbs
                labels[a] |= labels[v]
                edges.discard(frozenset((v, a)))
            else:  # isolated unstable vertex can only be the last one
                continue
            labels.pop(v)
            verts.remove(v)
            changed = True
            break
    return LabelledTree(tuple(verts), frozenset(edges), labels)


def stratum_dim(tree: LabelledTree) -> int:
    """Complex dimension k - 3 - e(T) of the stratum of a stable tree."""
    if not is_stable(tree):
        raise PreconditionError("stratum dimension is defined for stable trees")
    return tree.k - 3 - tree.num_edges()


def stratum_codim(tree: LabelledTree) -> int:
    """Complex codimension e(T) of the stratum closure."""
    if not is_stable(tree):
        raise PreconditionError("stratum codimension is defined for stable trees")
    return tree.num_edges()


# ---------------------------------------------------------------------------
# enumeration


def _labeled_trees_on(vertices):
    """All labeled trees on the given vertices (Pruefer sequences)."""
    n = len(vertices)
    if n == 1:
        yield frozenset()
        return
    if n == 2:
        yield frozenset([frozenset(vertices)])
        return
    from itertools import product as iproduct

    for seq in iproduct(range(n), repeat=n - 2):
        degree = [1] * n
        for s in seq:
            degree[s] += 1
        seq_list = list(seq)
        edges = set()
        ptr = 0
        leaves = sorted(i for i in range(n) if degree[i] == 1)
        import heapq

        heap = leaves[:]
        heapq.heapify(heap)
        for s in seq_list:
            leaf = heapq.heappop(heap)
            edges.add(frozenset((vertices[leaf], vertices[s])))
            degree[s] -= 1
            if degree[s] == 1:
                heapq.heappush(heap, s)
        a, b = heapq.heappop(heap), heapq.heappop(heap)
        edges.add(frozenset((vertices[a], vertices[b])))
        yield frozenset(edges)


def _compositions(total, mins):
    """Integer vectors >= mins summing to total."""
    if len(mins) == 1:
        if total >= mins[0]:
            yield (total,)
        return
    head_min = mins[0]
    rest_min = sum(mins[1:])
    for head in range(head_min, total - rest_min + 1):
        for rest in _compositions(total - head, mins[1:]):
            yield (head,) + rest


def _assignments(labels, counts):
    """Partitions of the label list into ordered blocks of the given sizes."""
    if not counts:
        yield ()
        return
    first, rest = counts[0], counts[1:]
    pool = list(labels)
    for combo in combinations(pool, first):
        remaining = [l for l in pool if l not in combo]
        for tail in _assignments(remaining, rest):
            yield (frozenset(combo),) + tail


def enumerate_stable_trees(k: int):
    """All isomorphism classes of stable k-labelled trees, 3 <= k <= 7.

    Trees are generated as labeled trees on up to k-2 vertices with
    capacity-constrained label distributions and deduplicated by
    canonical form.  Output is sorted by (vertex count, canonical form).
    """
    if not 3 <= k <= 7:
        raise InputError("enumeration is limited to 3 <= k <= 7")
    labels = list(range(1, k + 1))
    seen = {}
    for n_vertices in range(1, k - 1):
        vertices = tuple(range(n_vertices))
        for edges in _labeled_trees_on(vertices):
            degree = {v: 0 for v in vertices}
            for e in edges:
                for v in e:
                    degree[v] += 1
            mins = tuple(max(0, 3 - degree[v]) for v in vertices)
            if sum(mins) > k:
                continue
            for counts in _compositions(k, mins):
                for blocks in _assignments(labels, counts):
                    tree = LabelledTree(
                        vertices, edges, dict(zip(vertices, blocks))
                    )
                    seen.setdefault(tree.canonical_form(), tree)
    ordered = sorted(
        seen.items(), key=lambda item: (len(item[1].vertices), item[0])
    )
    return [tree for _, tree in ordered]


# ---------------------------------------------------------------------------
# stable decompositions


@dataclass(frozen=True)
class StableDecomposition:
    """Partition of {0..k} with I_0 = {0} and at least three parts."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(frozenset(p) for p in self.parts)
        if len(parts) < 3:
            raise InputError("need at least three parts")
        if parts[0] != frozenset({0}):
            raise InputError("the first part must be {0}")
        union = set()
        for p in parts:
            if not p or (union & p):
                raise InputError("parts must be disjoint and nonempty")
            union |= p
        if union != set(range(len(union))):
            raise InputError("parts must cover 0..k")
        mins = [min(p) for p in parts]
        if mins != sorted(mins):
            raise InputError("parts must be ordered by their minima")
        object.__setattr__(self, "parts", parts)

    @property
    def k(self) -> int:
        return sum(len(p) for p in self.parts) - 1


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partial in _set_partitions(rest):
        for i in range(len(partial)):
            yield partial[:i] + [partial[i] | {first}] + partial[i + 1:]
        yield partial + [{first}]


def stable_decompositions(k: int):
    """All stable decompositions of {0,...,k}, ordered by part minima."""
    if k < 2:
        raise InputError("k must be at least 2")
    out = []
    for partition in _set_partitions(list(range(1, k + 1))):
        if len(partition) < 2:
            continue
        parts = [frozenset({0})] + [frozenset(p) for p in partition]
        parts.sort(key=min)
        out.append(StableDecomposition(tuple(parts)))
    out.sort(key=lambda d: tuple(sorted(tuple(sorted(p)) for p in d.parts)))
    return out


def decomposition_of_vertex(tree: LabelledTree, base_label: int = 1):
    """The stable decomposition a (k+1)-labelled tree induces at the
    vertex carrying ``base_label``.

    Labels are identified with the points 0..k via i <-> i+1; two points
    fall in the same part when their paths leave the base vertex through
    the same edge.
    """
    base = next(v for v in tree.vertices if base_label in tree.labels[v])
    parent = {base: None}
    order = [base]
    for v in order:
        for u in tree.neighbours(v):
            if u not in parent:
                parent[u] = v
                order.append(u)
    groups = {}
    for v in tree.vertices:
        for label in tree.labels[v]:
            point = label - 1
            if v == base:
                groups[("label", point)] = {point}
                continue
            up = v
            while parent[up] != base:
                up = parent[up]
            groups.setdefault(("branch", up), set()).add(point)
    parts = sorted((frozenset(g) for g in groups.values()), key=min)
    return StableDecomposition(tuple(parts))


# ---------------------------------------------------------------------------
# nodal curves


@dataclass(frozen=True)
class NodalCurve:
    """Spheres glued along node points, with marked points, all on S^2."""

    tree: LabelledTree
    node_points: dict   # (alpha, beta) -> unit vector in R^3, both directions
    marked_points: dict  # label -> unit vector on the sphere of its vertex

    def __post_init__(self):
        nodes = {}
        for key, vec in self.node_points.items():
            a, b = key
            v = np.asarray(vec, dtype=float)
            if v.shape != (3,) or abs(np.linalg.norm(v) - 1.0) > 1e-6:
                raise InputError(f"node point {key} must be a unit 3-vector")
            nodes[(a, b)] = v
        marked = {}
        for label, vec in self.marked_points.items():
            v = np.asarray(vec, dtype=float)
            if v.shape != (3,) or abs(np.linalg.norm(v) - 1.0) > 1e-6:
                raise InputError(f"marked point {label} must be a unit 3-vector")
            marked[int(label)] = v
        object.__setattr__(self, "node_points", nodes)
        object.__setattr__(self, "marked_points", marked)


def validate_nodal(curve: NodalCurve) -> bool:
    """Whether special points are pairwise distinct and nodes are paired."""
    tree = curve.tree
    for e in tree.edges:
        a, b = sorted(e)
        if (a, b) not in curve.node_points or (b, a) not in curve.node_points:
            return False
    for label in range(1, tree.k + 1):
        if label not in curve.marked_points:
            return False
    for v in tree.vertices:
        special = [
            curve.node_points[(v, u)] for u in tree.neighbours(v)
        ] + [curve.marked_points[l] for l in sorted(tree.labels[v])]
        for p, q in combinations(special, 2):
            if np.linalg.norm(p - q) < POINT_TOL:
                return False
    return True


# ---------------------------------------------------------------------------
# JSON wire format


def tree_to_json(tree: LabelledTree) -> dict:
    return {
        "vertices": [str(v) for v in tree.vertices],
        "edges": [sorted(str(x) for x in e) for e in sorted(map(sorted, tree.edges))],
        "labels": {str(v): sorted(tree.labels[v]) for v in tree.vertices},
    }


def tree_from_json(doc: dict) -> LabelledTree:
    try:
        vertices = tuple(doc["vertices"])
        edges = frozenset(frozenset(e) for e in doc.get("edges", []))
        labels = {v: frozenset(doc.get("labels", {}).get(v, [])) for v in vertices}
        return LabelledTree(vertices, edges, labels)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"not a labelled-tree document: {exc}") from exc
