"""Acceptance suite: every release criterion as one named check.

Each check returns a CheckResult; ``run_all`` executes them in order and
is what the CLI's ``verify-all`` subcommand and the test suite share.
Tolerances are fixed here, not configurable, so a green run certifies
the package against its contract.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.linalg import expm

from . import capacities as cap
from . import chekanov as ck
from . import cylinders as cyl
from . import dm_trees as dt
from . import enumerative as en
from . import moduli_dims as md
from . import symplectic_index as si
from .errors import PreconditionError


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _result(name, start, passed, detail):
    return CheckResult(name, passed, detail, time.perf_counter() - start)


def check_bezout_counts(seed: int = 0) -> CheckResult:
    """n! transverse projective intersections for n = 2, 3."""
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst_res, worst_sv = 0.0, float("inf")
    for n in (2, 3):
        weight_sets = [[1.0] * (n + 1)] + [
            list(rng.uniform(0.3, 2.5, size=n + 1)) for _ in range(20)
        ]
        for a in weight_sets:
            sols = en.count_projective_intersections(a)
            if len(sols) != math.factorial(n):
                return _result(
                    "bezout-counts", start, False, f"count {len(sols)} for {a}"
                )
            worst_res = max(worst_res, max(sols.residuals))
            worst_sv = min(worst_sv, min(sols.jacobian_min_sv))
    elapsed = time.perf_counter() - start
    ok = worst_res < 1e-10 and worst_sv > 1e-6 and elapsed < 5.0
    return _result(
        "bezout-counts",
        start,
        ok,
        f"max residual {worst_res:.2e}, min sv {worst_sv:.2e}, {elapsed:.2f}s",
    )


def check_tangency_counts(seed: int = 1) -> CheckResult:
    """(n-1)! tangent lines for n = 2, 3, 4 plus the jet identity."""
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst_jet = 0.0
    for n in (2, 3, 4):
        weight_sets = [[1.0] * n] + [
            list(rng.uniform(0.3, 2.5, size=n)) for _ in range(20)
        ]
        for a in weight_sets:
            sols = en.count_tangency_lines(n, a)
            if len(sols) != math.factorial(n - 1):
                return _result(
                    "tangency-counts", start, False, f"count {len(sols)} for {a}"
                )
        a = list(rng.uniform(0.3, 2.5, size=n))
        for _ in range(50):
            p = rng.normal(size=n) + 1j * rng.normal(size=n)
            p = p / np.linalg.norm(p)
            k = int(rng.integers(1, n))
            worst_jet = max(worst_jet, en.jet_identity_check(p, k, a))
    ok = worst_jet < 1e-12
    return _result(
        "tangency-counts", start, ok, f"max jet defect {worst_jet:.2e}"
    )


def check_power_sum_triviality(seed: int = 2) -> CheckResult:
    """Weighted power-sum systems have only the origin for n <= 3."""
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    for _ in range(50):
        n = int(rng.integers(1, 4))
        a = list(rng.uniform(0.2, 3.0, size=n))
        sols = en.solve_weighted_power_system(a)
        if len(sols) != 1 or np.any(np.abs(sols.points[0]) > 0):
            return _result(
                "power-sum-triviality", start, False, f"nontrivial zero for {a}"
            )
    return _result("power-sum-triviality", start, True, "50 weight vectors, n <= 3")


def check_audin_engine() -> CheckResult:
    """Unique even distribution (n+1, (2,...,2)) and puncture bound n+1."""
    start = time.perf_counter()
    for n in range(1, 13):
        dists = md.audin_distributions(n, even_only=True)
        if len(dists) != 1 or dists[0].as_pair() != (n + 1, tuple([2] * (n + 1))):
            return _result("audin-engine", start, False, f"n={n}: {dists}")
        if md.multicover_puncture_bound(n) != n + 1:
            return _result("audin-engine", start, False, f"bound at n={n}")
    elapsed = time.perf_counter() - start
    return _result("audin-engine", start, elapsed < 1.0, f"n <= 12 in {elapsed:.2f}s")


def check_dimension_formulas() -> CheckResult:
    """Rigid tangency problem and the two-term dimension of the torus curves."""
    start = time.perf_counter()
    for n in range(2, 11):
        if md.dim_punctured(md.projective_line_tangency_problem(n)) != 0:
            return _result("dimension-formulas", start, False, f"tangency n={n}")
    for n in range(2, 7):
        for m in range(n + 1, 2 * n + 3):
            mu = [1] * m
            mu[0] += 2 * n + 2 - m
            got = md.dim_punctured(md.audin_problem(n, tuple(mu)))
            if got != 2 * m - 2 * n - 2:
                return _result(
                    "dimension-formulas", start, False, f"n={n}, m={m}: {got}"
                )
    return _result("dimension-formulas", start, True, "n <= 10 tangency, m <= 2n+2")


def check_capacities() -> CheckResult:
    """Exact capacity values and the volume-vs-geodesic bound ordering."""
    start = time.perf_counter()
    for n in range(1, 13):
        ball = cap.lagrangian_capacity(cap.Domain(cap.BALL, n)).value
        if abs(ball - math.pi / n) > 1e-12:
            return _result("capacities", start, False, f"ball n={n}")
    cyl_val = cap.lagrangian_capacity(cap.Domain(cap.CYLINDER, 4, radius=1.0)).value
    if abs(cyl_val - math.pi) > 1e-12:
        return _result("capacities", start, False, "cylinder")
    for r in (0.3, 1.0, 1.7):
        poly = cap.lagrangian_capacity(cap.Domain(cap.POLYDISK, 3, radius=r)).value
        if abs(poly - math.pi * r * r) > 1e-12:
            return _result("capacities", start, False, f"polydisk r={r}")
    c1 = cap.flat_torus_volume_constant(1)
    if abs(c1 - 4.0) > 1e-12 or abs(cap.flat_torus_upper_bound(1) - 4.0) > 1e-12:
        return _result("capacities", start, False, "n=1 equality chain")
    for n in range(2, 13):
        cn = cap.flat_torus_volume_constant(n)
        lower, upper = 2.0 * (n + 1), cap.flat_torus_upper_bound(n)
        if not (cn < lower <= upper):
            return _result("capacities", start, False, f"ordering n={n}")
    return _result("capacities", start, True, "values exact, ordering n <= 12")


def check_chekanov_enumeration() -> CheckResult:
    """Class lists, splitting configurations, and boundary classes."""
    start = time.perf_counter()
    mu2 = {c.coords() for c in ck.enumerate_classes(2)}
    if mu2 != {(1, 0, 0), (-2, 0, 1), (-2, 1, 1), (-2, -1, 1)}:
        return _result("chekanov-enumeration", start, False, f"mu=2: {mu2}")
    mu4 = {c.coords() for c in ck.enumerate_classes(4)}
    expected4 = {
        (2, 0, 0), (-4, 0, 2), (-4, 2, 2), (-4, -2, 2),
        (-1, 0, 1), (-1, 1, 1), (-1, -1, 1), (-4, 1, 2), (-4, -1, 2),
    }
    if mu4 != expected4:
        return _result("chekanov-enumeration", start, False, f"mu=4: {mu4}")
    configs = {tuple(c.coords() for c in t) for t in ck.splitting_configurations()}
    expected_cfgs = {
        ((-2, 0, 1), (1, 0, 0), (1, 0, 0)),
        ((-2, 0, 1), (2, 0, 0)),
        ((-1, 0, 1), (1, 0, 0)),
    }
    if configs != expected_cfgs:
        return _result("chekanov-enumeration", start, False, f"splittings: {configs}")
    for t in ck.splitting_configurations():
        for c in t:
            if not ck.is_gamma_multiple(ck.boundary_class(c)):
                return _result(
                    "chekanov-enumeration", start, False, f"boundary of {c}"
                )
    return _result(
        "chekanov-enumeration", start, True,
        "4 + 9 classes, 3 splittings, spine boundaries",
    )


def _random_sp_path(n, rng, samples=21):
    j0 = si.standard_j(n)

    def ham():
        s = rng.normal(size=(2 * n, 2 * n))
        return j0 @ ((s + s.T) / 2) * 1.2

    x1, x2 = ham(), ham()
    return si.path_from_function(lambda t: expm(t * x1) @ expm(t * x2), samples)


def check_index_suite(seed: int = 3, paths_per_group: int = 100) -> CheckResult:
    """Randomized index properties plus the flat-torus family relation."""
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    checked = 0
    for n in (1, 2):
        for _ in range(paths_per_group):
            path = _random_sp_path(n, rng)
            rs = si.robbin_salamon(path)
            if si.robbin_salamon(si.refine_midpoints(path)) != rs:
                return _result("index-suite", start, False, "refinement instability")
            if si.robbin_salamon(si.concatenate_rotation_loop(path)) != rs + 2:
                return _result("index-suite", start, False, "loop concatenation")
            if si.robbin_salamon(si.direct_sum(path, path)) != 2 * rs:
                return _result("index-suite", start, False, "direct-sum additivity")
            try:
                if si.conley_zehnder(path) != rs:
                    return _result("index-suite", start, False, "CZ != RS")
            except PreconditionError:
                pass
            checked += 1
    for n in range(1, 7):
        gc = si.GeodesicClass(n, (1,) + (0,) * (n - 1))
        rs = si.robbin_salamon(si.linearized_geodesic_path(gc))
        if rs != Fraction(n - 1, 2) or si.bott_cz(rs, max(n - 1, 0)) != 0:
            return _result("index-suite", start, False, f"flat torus n={n}")
    return _result(
        "index-suite", start, True, f"{checked} random paths in Sp(2) and Sp(4)"
    )


def check_dm_trees(seed: int = 4) -> CheckResult:
    """Stratum dimensions, two-vertex counts, stabilization idempotence."""
    start = time.perf_counter()
    for k in range(3, 7):
        for tree in dt.enumerate_stable_trees(k):
            if dt.stratum_dim(tree) != k - 3 - tree.num_edges():
                return _result("dm-trees", start, False, f"dimension at k={k}")
    for k in range(4, 8):
        trees = dt.enumerate_stable_trees(k)
        two = sum(1 for t in trees if len(t.vertices) == 2)
        if two != 2 ** (k - 1) - k - 1:
            return _result("dm-trees", start, False, f"2-vertex count k={k}: {two}")
    rng = np.random.default_rng(seed)
    for _ in range(500):
        k = int(rng.integers(3, 8))
        n_vertices = int(rng.integers(1, max(2, k)))
        vertices = tuple(range(n_vertices))
        edges = set()
        for v in range(1, n_vertices):
            edges.add(frozenset((v, int(rng.integers(0, v)))))
        labels = {v: set() for v in vertices}
        for label in range(1, k + 1):
            labels[int(rng.integers(0, n_vertices))].add(label)
        tree = dt.LabelledTree(vertices, frozenset(edges), labels)
        st = dt.stabilize(tree)
        if dt.stabilize(st).canonical_form() != st.canonical_form():
            return _result("dm-trees", start, False, "stabilize not idempotent")
    return _result("dm-trees", start, True, "k <= 7 counts, 500 stabilizations")


def check_cylinders() -> CheckResult:
    """Residual budget, covering degrees, area equality, convergence."""
    start = time.perf_counter()
    profile = cyl.RhoProfile()
    flat = cyl.integrate_orbit_cylinder(2, 1, (0.3, 1.0), (0.0, 0.0))
    generic = cyl.integrate_orbit_cylinder(2, 3, (0.3, 1.1), (1.0, 0.3), span=0.1)
    worst = max(
        cyl.holomorphic_residual(flat, profile),
        cyl.holomorphic_residual(generic, profile),
    )
    if worst > 1e-8:
        return _result("cylinders", start, False, f"residual {worst:.2e}")
    for k in range(1, 5):
        sol = cyl.integrate_orbit_cylinder(2, k, (0.3, 1.0), (0.0, 0.0))
        probe = (np.array([1.234, 1.0]), np.array([sol.p1_at(0.05 / k), 0.0]))
        if cyl.covering_degree(sol, probe) != k:
            return _result("cylinders", start, False, f"covering k={k}")
    orbit = cyl.integrate_orbit_cylinder(
        1, 1, (0.0,), (1.0,), span=0.5, grid=(400, 64)
    )
    area, bound = cyl.action_area_check(orbit, math.log(1.05), math.log(1.35))
    if abs(area - bound) > 1e-6 * bound:
        return _result("cylinders", start, False, f"area {area} vs {bound}")
    fine = cyl.integrate_orbit_cylinder(
        2, 3, (0.3, 1.1), (1.0, 0.3), span=0.1, grid=(400, 400)
    )
    ratio = cyl.holomorphic_residual(generic, profile) / cyl.holomorphic_residual(
        fine, profile
    )
    elapsed = time.perf_counter() - start
    ok = ratio >= 3.0 and elapsed < 30.0
    return _result(
        "cylinders", start, ok,
        f"residual {worst:.2e}, refinement ratio {ratio:.1f}, {elapsed:.1f}s",
    )


def check_taming_margin() -> CheckResult:
    """Margin exactly 1/2 at unit perturbation norm; never below for K <= 1."""
    start = time.perf_counter()
    if si.taming_margin(1.0, unit_samples=10_000) != 0.5:
        return _result("taming-margin", start, False, "margin at 1 not exactly 0.5")
    for k in np.linspace(0.0, 1.0, 101):
        if si.taming_margin(float(k), unit_samples=10_000) < 0.5:
            return _result("taming-margin", start, False, f"margin below 1/2 at {k}")
    return _result("taming-margin", start, True, "10^4 samples, K in [0, 1]")


ALL_CHECKS = (
    check_bezout_counts,
    check_tangency_counts,
    check_power_sum_triviality,
    check_audin_engine,
    check_dimension_formulas,
    check_capacities,
    check_chekanov_enumeration,
    check_index_suite,
    check_dm_trees,
    check_cylinders,
    check_taming_margin,
)


def run_all(seed: int = 0):
    """Run every acceptance check; returns the list of CheckResult."""
    results = []
    for fn in ALL_CHECKS:
        try:
            if "seed" in fn.__code__.co_varnames[: fn.__code__.co_argcount]:
                results.append(fn(seed=seed + len(results)))
            else:
                results.append(fn())
        except Exception as exc:  # a crash is a failure, not an abort
            results.append(
                CheckResult(
                    fn.__name__.replace("check_", "").replace("_", "-"),
                    False,
                    f"{type(exc).__name__}: {exc}",
                    0.0,
                )
            )
    return results
