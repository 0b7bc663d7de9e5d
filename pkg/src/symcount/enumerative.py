"""Small exact/numeric solving of weighted power-sum systems.

The systems all have the shape h_k(z) = a_1 z_1^k + ... + a_N z_N^k for
consecutive degrees k.  Three verified counts are computed here:

* the affine system h_1 = ... = h_N = 0 in C^N has only the origin,
* the projective system h_1 = ... = h_n = 0 (N = n + 1 weights) meets
  transversally in n! points,
* the tangent-line system h_1 = ... = h_{n-1} = 0 (N = n weights) has
  (n-1)! transverse points, each encoding the line z -> (p_1 z, ..., p_n z).

Strategy: eliminate one variable with the linear equation, cascade a
resultant (degree-exact, evaluated numerically and interpolated) down to
one variable, solve by companion-matrix eigenvalues, then Newton-polish
on the full system and deduplicate projectively.  Counts, residuals, and
transversality are verified on output; any mismatch raises loudly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import InputError, VerificationError

TAU_RES = 1e-10
TAU_SEP = 1e-6
TAU_TRANS = 1e-6


# ---------------------------------------------------------------------------
# multivariate polynomials (sparse, complex coefficients)


@dataclass(frozen=True)
class MultiPoly:
    """Sparse polynomial: exponent tuple -> complex coefficient."""

    num_vars: int
    terms: dict

    def __post_init__(self):
        clean = {}
        for expo, coef in self.terms.items():
            e = tuple(int(x) for x in expo)
            if len(e) != self.num_vars or any(x < 0 for x in e):
                raise InputError(f"bad exponent vector {expo!r}")
            c = complex(coef)
            if c != 0:
                clean[e] = clean.get(e, 0) + c
        object.__setattr__(self, "terms", {e: c for e, c in clean.items() if c != 0})

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return MultiPoly(self.num_vars, terms)

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, float, complex)):
            return MultiPoly(
                self.num_vars, {e: c * other for e, c in self.terms.items()}
            )
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly(self.num_vars, terms)

    __rmul__ = __mul__

    def __call__(self, z) -> complex:
        z = np.asarray(z, dtype=complex)
        total = 0j
        for e, c in self.terms.items():
            term = c
            for zi, ei in zip(z, e):
                if ei:
                    term *= zi**ei
            total += term
        return total

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def gradient(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        grad = np.zeros(self.num_vars, dtype=complex)
        for e, c in self.terms.items():
            for i, ei in enumerate(e):
                if ei == 0:
                    continue
                term = c * ei
                for j, ej in enumerate(e):
                    p = ej - 1 if j == i else ej
                    if p:
                        term *= z[j] ** p
                grad[i] += term
        return grad

    def compose_line(self, p) -> np.ndarray:
        """Coefficients of t -> self(p_1 t, ..., p_n t), exact expansion."""
        p = np.asarray(p, dtype=complex)
        coeffs = np.zeros(self.degree() + 1, dtype=complex)
        for e, c in self.terms.items():
            value = c
            for pi, ei in zip(p, e):
                if ei:
                    value *= pi**ei
            coeffs[sum(e)] += value
        return coeffs


def power_sum(a, k: int) -> MultiPoly:
    """h_k(z) = sum_i a_i z_i^k as a MultiPoly in len(a) variables."""
    n = len(a)
    terms = {}
    for i, ai in enumerate(a):
        e = [0] * n
        e[i] = k
        terms[tuple(e)] = complex(ai)
    return MultiPoly(n, terms)


def vandermonde(z) -> complex:
    """prod_{i<j} (z_j - z_i); zero exactly when two entries coincide."""
    z = list(z)
    out = complex(1.0)
    for i, j in combinations(range(len(z)), 2):
        out *= complex(z[j]) - complex(z[i])
    return out


# ---------------------------------------------------------------------------
# solution sets


@dataclass(frozen=True)
class SolutionSet:
    """Verified solutions: projective points with diagnostics."""

    points: tuple
    residuals: tuple
    jacobian_min_sv: tuple

    def __post_init__(self):
        pts = tuple(np.asarray(p, dtype=complex) for p in self.points)
        if any(r > TAU_RES for r in self.residuals):
            raise VerificationError(f"residual above {TAU_RES}: {self.residuals}")
        for i, j in combinations(range(len(pts)), 2):
            if pts[i].shape == pts[j].shape:
                if np.linalg.norm(pts[i] - pts[j]) < TAU_SEP:
                    raise VerificationError("solution points are not separated")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)


def _normalize_projective(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    z = z / np.linalg.norm(z)
    for zi in z:
        if abs(zi) > 1e-8:
            z = z * (zi.conjugate() / abs(zi))
            break
    return z


def _system_residual(polys, z) -> float:
    return max(abs(p(z)) for p in polys)


def _jacobian(polys, z) -> np.ndarray:
    return np.array([p.gradient(z) for p in polys])


def _tangent_min_sv(polys, z) -> float:
    """Smallest singular value of the Jacobian restricted transverse to z."""
    z = np.asarray(z, dtype=complex)
    jac = _jacobian(polys, z)
    vh = np.linalg.svd(z[None, :])[2]
    basis = vh[1:, :].T  # columns orthonormal and Hermitian-orthogonal to z
    return float(np.linalg.svd(jac @ basis, compute_uv=False)[-1])


def _newton_polish(polys, z0: np.ndarray, iterations: int = 60):
    """Newton iteration in the chart fixing the largest coordinate."""
    z = np.asarray(z0, dtype=complex).copy()
    norm = np.linalg.norm(z)
    if norm == 0:
        return None
    z = z / norm
    pivot = int(np.argmax(np.abs(z)))
    z = z / z[pivot]
    free = [i for i in range(len(z)) if i != pivot]
    for _ in range(iterations):
        vals = np.array([p(z) for p in polys])
        if np.max(np.abs(vals)) < 1e-14:
            break
        jac = _jacobian(polys, z)[:, free]
        try:
            step = np.linalg.solve(jac, vals)
        except np.linalg.LinAlgError:
            return None
        if not np.all(np.isfinite(step)) or np.linalg.norm(step) > 1e3:
            return None
        for idx, i in enumerate(free):
            z[i] -= step[idx]
    if np.max(np.abs([p(z) for p in polys])) > 1e-9 * max(1.0, np.abs(z).max()):
        return None
    return _normalize_projective(z)


def _roots(coeffs: np.ndarray) -> np.ndarray:
    """Roots of a coefficient vector ordered by ascending degree."""
    c = np.asarray(coeffs, dtype=complex)
    mask = np.abs(c) > 1e-12 * max(1.0, np.abs(c).max())
    if not mask.any():
        return np.array([], dtype=complex)
    top = int(np.nonzero(mask)[0].max())
    if top == 0:
        return np.array([], dtype=complex)
    return np.roots(c[: top + 1][::-1])


def _sylvester_det(pc: np.ndarray, qc: np.ndarray) -> complex:
    """Resultant of two univariate polynomials given by ascending coeffs."""
    m, n = len(pc) - 1, len(qc) - 1
    size = m + n
    s = np.zeros((size, size), dtype=complex)
    for i in range(n):
        s[i, i: i + m + 1] = pc[::-1]
    for i in range(m):
        s[n + i, i: i + n + 1] = qc[::-1]
    return complex(np.linalg.det(s))


def _univariate_in(poly: MultiPoly, values: np.ndarray, var: int) -> np.ndarray:
    """Coefficients in variable ``var`` after substituting the other values."""
    deg = max((e[var] for e in poly.terms), default=0)
    coeffs = np.zeros(deg + 1, dtype=complex)
    for e, c in poly.terms.items():
        term = c
        for j, ej in enumerate(e):
            if j == var or ej == 0:
                continue
            term *= values[j] ** ej
        coeffs[e[var]] += term
    return coeffs


def _candidates_trivariate(p2: MultiPoly, p3: MultiPoly):
    """Common projective roots of a quadric and a cubic in three variables.

    The resultant in the third variable is a degree-6 binary form in the
    first two; it is sampled on a circle, interpolated, and its roots are
    paired with the common third-variable roots.  Both affine charts are
    swept so no root at infinity is lost.
    """
    candidates = []
    for chart in (1, 0):  # fix w2 = 1, then w1 = 1
        other = 1 - chart
        xs = 1.35 * np.exp(2j * np.pi * (np.arange(16) + 0.31) / 16)
        vals = []
        for x in xs:
            point = np.zeros(3, dtype=complex)
            point[chart] = 1.0
            point[other] = x
            pc = _univariate_in(p2, point, 2)
            qc = _univariate_in(p3, point, 2)
            vals.append(_sylvester_det(pc, qc))
        v = np.vander(xs, 7, increasing=True)
        coeffs, *_ = np.linalg.lstsq(v, np.array(vals), rcond=None)
        for x in _roots(coeffs):
            point = np.zeros(3, dtype=complex)
            point[chart] = 1.0
            point[other] = x
            pc = _univariate_in(p2, point, 2)
            roots3 = _roots(pc)
            if len(roots3) == 0:
                continue
            q_at = np.polyval(_univariate_in(p3, point, 2)[::-1], roots3)
            for w3, qv in zip(roots3, q_at):
                w = np.array([0j, 0j, w3])
                w[chart] = 1.0
                w[other] = x
                candidates.append(w)
        # direction with both chart coordinates zero
        candidates.append(np.array([0j, 0j, 1.0]))
    return candidates


def _solve_power_system(a, num_eqs: int) -> SolutionSet:
    """Solve h_1 = ... = h_d = 0 in projective space for d = len(a) - 1 <= 3."""
    a = [float(x) for x in a]
    if any(x <= 0 for x in a):
        raise InputError("weights must be positive")
    nvars = len(a)
    d = num_eqs
    if d != nvars - 1:
        raise InputError("need exactly one equation less than variables")
    polys = [power_sum(a, k) for k in range(1, d + 1)]
    expected = math.factorial(d)

    if d == 1:
        pts = [_normalize_projective(np.array([-a[1], a[0]], dtype=complex))]
    else:
        # eliminate z_0 with the linear equation
        reduced = []
        lin = np.array([-ai / a[0] for ai in a[1:]], dtype=complex)
        for k in range(2, d + 1):
            # a_0 (lin . w)^k + sum_i a_i w_i^k
            poly = power_sum(a[1:], k)
            linear = MultiPoly(
                nvars - 1,
                {
                    tuple(1 if j == i else 0 for j in range(nvars - 1)): lin[i]
                    for i in range(nvars - 1)
                },
            )
            powk = linear
            for _ in range(k - 1):
                powk = powk * linear
            reduced.append(poly + a[0] * powk)
        if d == 2:
            coeffs = _univariate_in(reduced[0], np.array([0j, 1.0]), 0)
            ws = [np.array([r, 1.0]) for r in _roots(coeffs)]
            lead = reduced[0].terms.get((2, 0), 0)
            if abs(lead) < 1e-13:
                ws.append(np.array([1.0, 0j]))
        else:
            ws = _candidates_trivariate(reduced[0], reduced[1])
        pts = []
        for w in ws:
            z = np.concatenate([[lin @ w], w])
            polished = _newton_polish(polys, z)
            if polished is not None:
                pts.append(polished)

    # polish once more and deduplicate
    final = []
    for z in pts:
        polished = _newton_polish(polys, z)
        if polished is None:
            continue
        if all(np.linalg.norm(polished - q) > TAU_SEP for q in final):
            final.append(polished)
    if len(final) != expected:
        raise VerificationError(
            f"expected {expected} projective solutions, found {len(final)} "
            f"(weights {a})"
        )
    residuals = tuple(_system_residual(polys, z) for z in final)
    min_svs = tuple(_tangent_min_sv(polys, z) for z in final)
    if any(s <= TAU_TRANS for s in min_svs):
        raise VerificationError(f"non-transverse intersection: min sv {min_svs}")
    order = np.lexsort(
        np.array([[z.real for z in p] + [z.imag for z in p] for p in final]).T[::-1]
    )
    return SolutionSet(
        tuple(final[i] for i in order),
        tuple(residuals[i] for i in order),
        tuple(min_svs[i] for i in order),
    )


# ---------------------------------------------------------------------------
# public operations


def solve_weighted_power_system(a) -> SolutionSet:
    """Verify that h_1 = ... = h_n = 0 in C^n has only the origin.

    n = len(a) <= 3.  The homogeneous system vanishes on a cone, so any
    nontrivial zero is a projective common root of the first n-1
    equations on which h_n also vanishes; those finitely many candidate
    directions are checked explicitly.  Finding one raises with the
    witness, since it would contradict the triviality statement.
    """
    n = len(a)
    if not 1 <= n <= 3:
        raise InputError("elimination solver covers 1 <= n <= 3")
    if any(float(x) <= 0 for x in a):
        raise InputError("weights must be positive")
    if n > 1:
        directions = _solve_power_system(a, n - 1)
        h_n = power_sum(list(a), n)
        for z in directions.points:
            if abs(h_n(z)) < TAU_RES:
                raise VerificationError(
                    f"nontrivial solution direction found: {z} (weights {a})"
                )
    origin = np.zeros(n, dtype=complex)
    return SolutionSet((origin,), (0.0,), (float("inf"),))


def count_projective_intersections(a) -> SolutionSet:
    """The n weighted power-sum hypersurfaces in projective n-space.

    len(a) = n + 1 with 2 <= n <= 3; returns the n! transverse
    intersection points (verified: count, residual, Jacobian rank).
    """
    n = len(a) - 1
    if not 2 <= n <= 3:
        raise InputError("projective intersection solver covers n = 2, 3")
    return _solve_power_system(list(a), n)


def count_tangency_lines(n: int, a) -> SolutionSet:
    """Lines through the origin with maximal-order tangency to the model germ.

    Solves h_1(p) = ... = h_{n-1}(p) = 0 in projective (n-1)-space for
    len(a) = n, 2 <= n <= 4; each of the (n-1)! transverse points p
    encodes the line z -> (p_1 z, ..., p_n z).
    """
    if not 2 <= n <= 4:
        raise InputError("tangency solver covers 2 <= n <= 4")
    if len(a) != n:
        raise InputError("need one weight per coordinate")
    return _solve_power_system(list(a), n - 1)


def jet_identity_check(p, k: int, a) -> float:
    """|d^k/dt^k h(line_p(t)) at 0 - k! h_k(p)| via exact composition.

    h is the sum of the weighted power sums of degrees 1..n-1; its
    composition with the line through p is expanded term by term, so the
    identity holds to rounding error.
    """
    n = len(a)
    if len(p) != n:
        raise InputError("point and weights must have matching length")
    if not 1 <= k <= n - 1:
        raise InputError("jet order must satisfy 1 <= k <= n-1")
    h = power_sum(list(a), 1)
    for j in range(2, n):
        h = h + power_sum(list(a), j)
    coeffs = h.compose_line(p)
    deriv = math.factorial(k) * coeffs[k]
    target = math.factorial(k) * power_sum(list(a), k)(p)
    return float(abs(deriv - target))
