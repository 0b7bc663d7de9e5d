"""Dimension formulas and puncture-count bounds for punctured spheres.

The central operation evaluates the expected dimension of a moduli
space of genus-zero curves with punctures (Morse or Morse-Bott),
marked points, nodes, and an optional point-plus-tangency constraint:

    (n-3)(2 - p_pos - p_neg) + 2 c1
        + sum_pos (CZ_i + bott_dim_i) - sum_neg CZ_j
        + 2 m - 2 nodes - [point constraint] ((2n-2) + 2 ell).

Also hosted here: the minimal-puncture bounds for spheres tangent to a
hypersurface germ (simple and multiply covered), and the enumerator for
the admissible Maslov-number distributions in the torus counting
argument together with its evaluation-rank test.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count
from math import ceil

from .errors import InconsistencyError, InputError
from .halfint import as_half, half_from_json, half_to_json

POSITIVE = "positive"
NEGATIVE = "negative"


@dataclass(frozen=True)
class PunctureSpec:
    """One puncture: sign, index (CZ; half-integer in Bott families), family dim."""

    sign: str
    index: Fraction
    bott_dim: int = 0

    def __post_init__(self):
        if self.sign not in (POSITIVE, NEGATIVE):
            raise InputError(f"sign must be '{POSITIVE}' or '{NEGATIVE}'")
        idx = as_half(self.index)
        if self.bott_dim < 0:
            raise InputError("bott_dim must be nonnegative")
        if self.bott_dim == 0 and idx.denominator != 1:
            raise InputError("a rigid orbit must have an integer index")
        object.__setattr__(self, "index", idx)


@dataclass(frozen=True)
class ModuliProblem:
    """Bookkeeping record feeding the dimension formula."""

    n: int
    punctures: tuple = ()
    c1: int = 0
    marked_points: int = 0
    tangency_order: int = 0
    point_constraint: bool = False
    node_count: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise InputError("ambient half-dimension must be positive")
        ps = tuple(self.punctures)
        for p in ps:
            if not isinstance(p, PunctureSpec):
                raise InputError("punctures must be PunctureSpec values")
        if min(self.marked_points, self.tangency_order, self.node_count) < 0:
            raise InputError("counts must be nonnegative")
        if self.tangency_order >= 1 and not self.point_constraint:
            raise InputError("a tangency constraint requires the point constraint")
        object.__setattr__(self, "punctures", ps)


@dataclass(frozen=True)
class MaslovDistribution:
    """m transverse planes with Maslov numbers mu_i summing to 2n+2."""

    n: int
    m: int
    mu: tuple

    def __post_init__(self):
        mu = tuple(int(x) for x in self.mu)
        if len(mu) != self.m:
            raise InputError("m must equal the number of Maslov entries")
        if any(x <= 0 for x in mu):
            raise InputError("Maslov numbers must be positive")
        if sum(mu) != 2 * self.n + 2:
            raise InconsistencyError(
                f"Maslov numbers sum to {sum(mu)}, expected {2 * self.n + 2}"
            )
        object.__setattr__(self, "mu", mu)

    def as_pair(self):
        return (self.m, self.mu)


def dim_punctured_terms(problem: ModuliProblem) -> dict:
    """The dimension formula, one labelled term per line for audit output."""
    n = problem.n
    pos = [p for p in problem.punctures if p.sign == POSITIVE]
    neg = [p for p in problem.punctures if p.sign == NEGATIVE]
    base = (n - 3) * (2 - len(pos) - len(neg))
    chern = 2 * problem.c1
    pos_sum = sum((p.index + p.bott_dim for p in pos), Fraction(0))
    neg_sum = sum((p.index for p in neg), Fraction(0))
    marked = 2 * problem.marked_points
    constraint = 0
    if problem.point_constraint:
        constraint = -(2 * n - 2) - 2 * problem.tangency_order
    nodes = -2 * problem.node_count
    total = base + chern + pos_sum - neg_sum + marked + constraint + nodes
    if total.denominator != 1:
        raise InconsistencyError(f"dimension {total} is not an integer")
    return {
        "base": base,
        "chern": chern,
        "positive_punctures": pos_sum,
        "negative_punctures": -neg_sum,
        "marked_points": marked,
        "point_and_tangency": constraint,
        "nodes": nodes,
        "total": int(total),
    }


def dim_punctured(problem: ModuliProblem) -> int:
    """Expected dimension of the moduli space described by ``problem``."""
    return dim_punctured_terms(problem)["total"]


def projective_line_tangency_problem(n: int) -> ModuliProblem:
    """Degree-1 spheres through a point, tangent to order n-1 to a germ there."""
    return ModuliProblem(
        n=n, punctures=(), c1=n + 1, tangency_order=n - 1, point_constraint=True
    )


def audin_problem(n: int, mu: tuple) -> ModuliProblem:
    """The punctured sphere in the torus cotangent bundle with capped indices.

    Each puncture is asymptotic to an (n-1)-dimensional family of
    geodesics whose index in the capping trivialization is -mu_i; the
    curve passes through a point with tangency of order n-1.
    """
    punctures = tuple(
        PunctureSpec(POSITIVE, Fraction(-int(m)), n - 1) for m in mu
    )
    return ModuliProblem(
        n=n,
        punctures=punctures,
        c1=n + 1,
        tangency_order=n - 1,
        point_constraint=True,
    )


def dim_plane(n: int, mu: int) -> int:
    """Dimension (n-3) + mu of the broken-plane space attached to one family.

    Specific to the flat torus: the family dimension n-1 and Morse index
    zero are baked in.
    """
    return (n - 3) + mu


def min_punctures_simple(ell: int) -> int:
    """A simple tangent sphere of order ell needs at least ell + 2 punctures."""
    if ell < 0:
        raise InputError("tangency order must be nonnegative")
    return ell + 2


def multicover_puncture_bound(n: int, search_limit: int | None = None) -> int:
    """Minimal punctures of a d-fold covered sphere tangent to order n-1.

    Minimizes (k-2)d + b + 1 over branchings b <= d, underlying puncture
    counts k >= ell + 2 with ell the smallest integer >= n/b - 1.  The
    minimum is n + 1.
    """
    if n < 1:
        raise InputError("n must be >= 1")
    limit = search_limit or (n + 2)
    best = None
    for b in range(1, limit + 1):
        ell = max(ceil(Fraction(n, b) - 1), 0)
        for d in range(b, limit + 1):
            for k in range(ell + 2, ell + 2 + limit):
                val = (k - 2) * d + b + 1
                if best is None or val < best:
                    best = val
    if best != n + 1:
        raise InconsistencyError(
            f"puncture bound search returned {best}, expected {n + 1}"
        )
    return best


def _partitions(total: int, parts: int, max_part: int, even_only: bool):
    """Non-increasing positive partitions of ``total`` into exactly ``parts``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    start = min(max_part, total - (parts - 1))
    step = -2 if even_only else -1
    lo = 2 if even_only else 1
    first = start if not even_only else start - (start % 2)
    for head in range(first, lo - 1, step):
        for rest in _partitions(total - head, parts - 1, head, even_only):
            yield (head,) + rest


def audin_distributions(n: int, even_only: bool = True) -> list:
    """All admissible Maslov-number distributions of the counting argument.

    Enumerates (m, mu_1 >= ... >= mu_m) with positive (even, if requested)
    entries summing to 2n+2, m >= n+1 from nonnegativity of the total
    moduli dimension, and sum(mu_i + |2 - mu_i|) <= 2m from transversality
    of the evaluation maps.  With even entries the unique survivor is
    (n+1, (2,...,2)).
    """
    if n < 1:
        raise InputError("n must be >= 1")
    total = 2 * n + 2
    out = []
    for m in range(n + 1, total + 1):
        for mu in _partitions(total, m, total, even_only):
            if sum(x + abs(2 - x) for x in mu) <= 2 * m:
                out.append(MaslovDistribution(n, m, mu))
    out.sort(key=lambda d: (d.m, tuple(-x for x in d.mu)))
    return out


def evaluation_rank_inequality(n: int, dist: MaslovDistribution) -> bool:
    """Whether the puncture evaluation maps can jointly cover the orbit families.

    The image of the evaluation of the constrained sphere has dimension
    at most 2m - 2n - 2 and each plane evaluation at most
    (2n - 4 + mu_i - |2 - mu_i|)/2; transversality demands the sum reach
    m(n-1).
    """
    bound = sum(Fraction(2 * n - 4 + mu - abs(2 - mu), 2) for mu in dist.mu)
    bound += 2 * dist.m - 2 * n - 2
    return bound >= dist.m * (n - 1)


# ---------------------------------------------------------------------------
# JSON wire format


def puncture_to_json(p: PunctureSpec) -> dict:
    return {"sign": p.sign, "index": half_to_json(p.index), "bott_dim": p.bott_dim}


def problem_to_json(problem: ModuliProblem) -> dict:
    return {
        "n": problem.n,
        "punctures": [puncture_to_json(p) for p in problem.punctures],
        "c1": problem.c1,
        "marked_points": problem.marked_points,
        "tangency_order": problem.tangency_order,
        "point_constraint": problem.point_constraint,
        "node_count": problem.node_count,
    }


def problem_from_json(doc: dict) -> ModuliProblem:
    try:
        punctures = tuple(
            PunctureSpec(
                p["sign"], half_from_json(p["index"]), int(p.get("bott_dim", 0))
            )
            for p in doc.get("punctures", [])
        )
        return ModuliProblem(
            n=int(doc["n"]),
            punctures=punctures,
            c1=int(doc.get("c1", 0)),
            marked_points=int(doc.get("marked_points", 0)),
            tangency_order=int(doc.get("tangency_order", 0)),
            point_constraint=bool(doc.get("point_constraint", False)),
            node_count=int(doc.get("node_count", 0)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"not a moduli problem document: {exc}") from exc
