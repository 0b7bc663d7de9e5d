"""Relative homology bookkeeping for the exotic monotone torus in CP^2.

Classes in H_2(CP^2, L) = Z^3 are written in the basis (D_Gamma, D_tau,
S_0): a disk over the spine circle, the orbit disk, and a projective
line missing the torus.  The intersection table against the complex
curves S_0, S_1, S_2, Q and the Maslov-number row drive two enumerations:
the finitely many nonnegative classes of Maslov number 2 and 4, and the
three splitting configurations a degenerating line can produce.  The
leaf-pruning induction showing that all asymptotics are multiples of the
spine class is implemented on decorated trees.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import ConstraintViolationError, InputError


@dataclass(frozen=True, order=True)
class RelClass:
    """Integer coordinates (a_gamma, a_tau, b) in the basis (D_Gamma, D_tau, S_0)."""

    a_gamma: int
    a_tau: int
    b: int

    def __add__(self, other: "RelClass") -> "RelClass":
        return RelClass(
            self.a_gamma + other.a_gamma,
            self.a_tau + other.a_tau,
            self.b + other.b,
        )

    def __neg__(self) -> "RelClass":
        return RelClass(-self.a_gamma, -self.a_tau, -self.b)

    def scaled(self, k: int) -> "RelClass":
        return RelClass(k * self.a_gamma, k * self.a_tau, k * self.b)

    def coords(self):
        return (self.a_gamma, self.a_tau, self.b)

    def symbolic(self) -> str:
        parts = []
        for coef, name in zip(self.coords(), ("D_Gamma", "D_tau", "S0")):
            if coef == 0:
                continue
            if coef == 1:
                parts.append(f"+ {name}")
            elif coef == -1:
                parts.append(f"- {name}")
            elif coef > 0:
                parts.append(f"+ {coef} {name}")
            else:
                parts.append(f"- {-coef} {name}")
        if not parts:
            return "0"
        head = parts[0].lstrip("+ ").replace("- ", "-", 1) if parts[0][0] == "-" else parts[0][2:]
        return " ".join([head] + parts[1:])


D_GAMMA = RelClass(1, 0, 0)
D_TAU = RelClass(0, 1, 0)
S0 = RelClass(0, 0, 1)


def intersection_row(a: RelClass):
    """Intersections (S0 . A, S1 . A, S2 . A, Q . A) from the table."""
    return (a.b, -a.a_tau + a.b, a.a_tau + a.b, a.a_gamma + 2 * a.b)


def maslov(a: RelClass) -> int:
    """Maslov number 2 a_gamma + 6 b (the orbit disk contributes zero)."""
    return 2 * a.a_gamma + 6 * a.b


def enumerate_classes(mu_target: int):
    """All classes of the given Maslov number with nonnegative intersections.

    The search is finite: S0 . A = b >= 0 and Q . A >= 0 bound b, the
    side lines force |a_tau| <= b, and the Maslov number fixes a_gamma
    once b is chosen.  Output is sorted by (b, a_gamma, a_tau).
    """
    if mu_target < 0 or mu_target % 2:
        raise InputError("Maslov numbers of these classes are even and nonnegative")
    found = []
    for b in range(0, mu_target // 6 + 3):
        if (mu_target - 6 * b) % 2:
            continue
        a_gamma = (mu_target - 6 * b) // 2
        for a_tau in range(-b, b + 1):
            cls = RelClass(a_gamma, a_tau, b)
            if min(intersection_row(cls)) >= 0:
                found.append(cls)
    found.sort(key=lambda c: (c.b, c.a_gamma, c.a_tau))
    return found


def splitting_configurations():
    """The three component patterns of a degenerating line.

    Components have positive even Maslov numbers summing to 6, classes
    summing to S0, exactly one component meeting S0 (once), and the
    others homologous to D_Gamma or 2 D_Gamma.  The component meeting S0
    is listed first.
    """
    by_mu = {2: enumerate_classes(2), 4: enumerate_classes(4)}
    configs = set()
    for profile in ((2, 2, 2), (4, 2), (2, 4)):
        pools = [by_mu[mu] for mu in profile]
        for combo in product(*pools):
            total = RelClass(0, 0, 0)
            for c in combo:
                total = total + c
            if total != S0:
                continue
            s0_hits = [c for c in combo if intersection_row(c)[0] != 0]
            if len(s0_hits) != 1 or intersection_row(s0_hits[0])[0] != 1:
                continue
            rest = sorted(
                (c for c in combo if intersection_row(c)[0] == 0),
                key=lambda c: c.coords(),
                reverse=True,
            )
            if any(c not in (D_GAMMA, D_GAMMA.scaled(2)) for c in rest):
                continue
            configs.add((s0_hits[0],) + tuple(rest))
    return sorted(configs, key=lambda t: (len(t), [c.coords() for c in t]))


def boundary_class(a: RelClass):
    """Boundary in H_1(L) in the basis ([Gamma], [tau])."""
    return (a.a_gamma, a.a_tau)


def is_gamma_multiple(h1_class) -> bool:
    return int(h1_class[1]) == 0


# ---------------------------------------------------------------------------
# asymptotic trees


@dataclass(frozen=True)
class AsymptoticTree:
    """Rooted tree of curve components with H_1(L)-decorated punctures.

    ``node_punctures`` maps a node id to the tuple of first-homology
    classes (pairs) of its punctures; ``edges`` are (parent, child,
    class) with the shared class present in both endpoint multisets.
    """

    root: str
    node_punctures: dict
    edges: tuple

    def __post_init__(self):
        nodes = dict(self.node_punctures)
        for name, classes in nodes.items():
            nodes[name] = tuple((int(a), int(b)) for a, b in classes)
        edges = tuple(
            (str(u), str(v), (int(c[0]), int(c[1]))) for u, v, c in self.edges
        )
        if self.root not in nodes:
            raise InputError("root must be a node")
        if len(edges) != len(nodes) - 1:
            raise InputError("edge count must be node count minus one")
        seen = {self.root}
        frontier = [self.root]
        adj = {}
        for u, v, c in edges:
            if u not in nodes or v not in nodes:
                raise InputError(f"edge ({u}, {v}) references unknown node")
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        while frontier:
            cur = frontier.pop()
            for nxt in adj.get(cur, []):
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        if seen != set(nodes):
            raise InputError("tree is not connected")
        for u, v, c in edges:
            for end in (u, v):
                counted = sum(1 for cl in nodes[end] if cl == c)
                used = sum(1 for e in edges if (e[0] == end or e[1] == end) and e[2] == c)
                if counted < used:
                    raise InputError(
                        f"node {end} lacks a puncture for its edge class {c}"
                    )
        object.__setattr__(self, "node_punctures", nodes)
        object.__setattr__(self, "edges", edges)

    def neighbours(self, name: str):
        out = []
        for u, v, c in self.edges:
            if u == name:
                out.append((v, c))
            elif v == name:
                out.append((u, c))
        return out


def _check_dichotomy(tree: AsymptoticTree):
    """Each component has all punctures multiples of [Gamma], or >= 2 that are not."""
    for name, classes in tree.node_punctures.items():
        bad = [c for c in classes if not is_gamma_multiple(c)]
        if len(bad) == 1:
            raise ConstraintViolationError(
                f"node {name} has exactly one puncture {bad[0]} off the spine class"
            )


def propagate_tree(tree: AsymptoticTree) -> bool:
    """Leaf-pruning induction certifying all asymptotics are spine multiples.

    Leaves whose punctures are all multiples of [Gamma] are removed
    repeatedly; the tree is certified when nothing remains.  A node
    violating the one-off-class dichotomy raises instead.
    """
    _check_dichotomy(tree)
    remaining = set(tree.node_punctures)
    degrees = {name: len(tree.neighbours(name)) for name in remaining}
    changed = True
    while changed:
        changed = False
        for name in sorted(remaining):
            deg = sum(
                1
                for nb, _ in tree.neighbours(name)
                if nb in remaining
            )
            if deg <= 1 and all(
                is_gamma_multiple(c) for c in tree.node_punctures[name]
            ):
                remaining.discard(name)
                changed = True
    return not remaining


def tree_from_json(doc: dict) -> AsymptoticTree:
    try:
        return AsymptoticTree(
            root=str(doc["root"]),
            node_punctures={
                str(k): tuple(tuple(c) for c in v)
                for k, v in doc["nodes"].items()
            },
            edges=tuple(
                (str(u), str(v), tuple(c)) for u, v, c in doc.get("edges", [])
            ),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"not an asymptotic-tree document: {exc}") from exc


def class_to_json(a: RelClass) -> dict:
    return {
        "a_gamma": a.a_gamma,
        "a_tau": a.a_tau,
        "b": a.b,
        "symbolic": a.symbolic(),
    }
