"""Explicit holomorphic cylinders over closed geodesics of a flat torus.

The cotangent bundle of the n-torus carries an almost complex structure
built from a radial profile rho (identically 1 near the zero section,
equal to |p| far out).  Cylinders over the geodesics in the class
k * (1, 0, ..., 0) solve

    d p_1 / d s = k * rho(|(p_1(s), pbar')|),   q_1(s, t) = k t + qbar_1,

with all other coordinates frozen; the factor k is the covering degree
of the domain reparametrization (for k = 1 this is the profile equation
itself).  The module integrates this ODE to machine accuracy, evaluates
the first-order holomorphicity residual on the grid, counts covering
preimages, and checks the action/area inequality for radial truncations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import InconsistencyError, InputError, TruncationError, VerificationError

TAU_HOL = 1e-8
DEFAULT_GRID = (200, 200)
DEFAULT_SPAN = 0.3
FINE_FACTOR = 4


@dataclass(frozen=True)
class RhoProfile:
    """Radial profile: 1 on [0, r0], r on [r1, r_max], quintic blend between.

    The blend matches value, first, and second derivative at both ends,
    so the profile is C^2; positivity over the whole range is checked on
    a dense sample.
    """

    r0: float = 0.5
    r1: float = 2.0
    r_max: float = 50.0

    def __post_init__(self):
        if not 0 < self.r0 < self.r1 < self.r_max:
            raise InputError("need 0 < r0 < r1 < r_max")
        # quintic in x = (r - r0)/(r1 - r0) with p(0)=1, p'(0)=p''(0)=0
        w = self.r1 - self.r0
        rhs = np.array([self.r1 - 1.0, w, 0.0])
        mat = np.array(
            [
                [1.0, 1.0, 1.0],
                [3.0, 4.0, 5.0],
                [6.0, 12.0, 20.0],
            ]
        )
        c345 = np.linalg.solve(mat, rhs)
        coeffs = np.zeros(6)
        coeffs[0] = 1.0
        coeffs[3:] = c345
        object.__setattr__(self, "_coeffs", coeffs)
        rs = np.linspace(0.0, self.r_max, 4001)
        if np.min(self(rs)) <= 0:
            raise InputError("profile is not positive over its range")

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        out = np.where(r <= self.r0, 1.0, np.where(r >= self.r1, r, 0.0))
        blend = (r > self.r0) & (r < self.r1)
        if np.any(blend):
            x = (r[blend] - self.r0) / (self.r1 - self.r0)
            out = out.copy()
            out[blend] = sum(c * x**j for j, c in enumerate(self._coeffs))
        return out if out.shape else float(out)

    def samples(self, count: int = 512):
        rs = np.linspace(0.0, self.r_max, count)
        return rs, self(rs)


@dataclass(frozen=True)
class CylinderSolution:
    """Grid-sampled cylinder over the geodesic class k*(1,0,...,0).

    ``q`` stores the lift of q_1 (it increases by 2 pi k per period in
    t); the torus value is its reduction mod 2 pi.  The fine arrays hold
    the integrator-resolution profile with its exact slopes, interpolated
    with cubic Hermite pieces for accurate evaluation and inversion.
    """

    n: int
    k: int
    qbar: tuple
    pbar: tuple
    s_vals: np.ndarray
    t_vals: np.ndarray
    q: np.ndarray
    p: np.ndarray
    s_fine: np.ndarray
    p1_fine: np.ndarray
    dp1_fine: np.ndarray

    def __post_init__(self):
        n_s, n_t = len(self.s_vals), len(self.t_vals)
        if self.q.shape != (n_s, n_t, self.n) or self.p.shape != (n_s, n_t, self.n):
            raise InputError("grid arrays must have shape (n_s, n_t, n)")

    def p1_at(self, s: float) -> float:
        xs, ys, ds = self.s_fine, self.p1_fine, self.dp1_fine
        if not xs[0] <= s <= xs[-1]:
            raise InputError(f"s={s} outside the solution span")
        i = min(int(np.searchsorted(xs, s, side="right")) - 1, len(xs) - 2)
        i = max(i, 0)
        h = xs[i + 1] - xs[i]
        u = (s - xs[i]) / h
        h00 = (1 + 2 * u) * (1 - u) ** 2
        h10 = u * (1 - u) ** 2
        h01 = u * u * (3 - 2 * u)
        h11 = u * u * (u - 1)
        return float(
            h00 * ys[i] + h10 * h * ds[i] + h01 * ys[i + 1] + h11 * h * ds[i + 1]
        )

    def p1_inverse(self, value: float) -> float:
        lo, hi = self.p1_fine[0], self.p1_fine[-1]
        if not lo <= value <= hi:
            raise InputError(
                f"value {value} outside the attained range [{lo}, {hi}]"
            )
        s = float(np.interp(value, self.p1_fine, self.s_fine))
        for _ in range(4):  # Newton polish on the Hermite interpolant
            i = min(
                max(int(np.searchsorted(self.s_fine, s, side="right")) - 1, 0),
                len(self.s_fine) - 2,
            )
            slope = 0.5 * (self.dp1_fine[i] + self.dp1_fine[i + 1])
            s_new = s - (self.p1_at(s) - value) / slope
            s = min(max(s_new, self.s_fine[0]), self.s_fine[-1])
        return s


def check_invariants(sol: CylinderSolution) -> None:
    """Structural invariants: q_1 lift, frozen coordinates, monotone p_1."""
    k, qbar, pbar = sol.k, sol.qbar, sol.pbar
    expected_q1 = k * sol.t_vals + qbar[0]
    if np.max(np.abs(sol.q[:, :, 0] - expected_q1[None, :])) > 1e-12:
        raise InconsistencyError("q_1 grid is not k*t + qbar_1")
    for i in range(1, sol.n):
        if np.max(np.abs(sol.q[:, :, i] - qbar[i])) != 0.0:
            raise InconsistencyError(f"q_{i+1} is not frozen")
        if np.max(np.abs(sol.p[:, :, i] - pbar[i])) != 0.0:
            raise InconsistencyError(f"p_{i+1} is not frozen")
    if np.any(np.diff(sol.p1_fine) <= 0):
        raise InconsistencyError("p_1 is not strictly increasing")


def _rk4_profile(rhs, p0: float, nodes: np.ndarray, base_step: float) -> np.ndarray:
    """March the scalar ODE through ``nodes`` (ascending from nodes[0])."""
    out = np.empty(len(nodes))
    out[0] = p0
    p = p0
    for i in range(len(nodes) - 1):
        a, b = nodes[i], nodes[i + 1]
        span = b - a
        steps = max(1, int(math.ceil(abs(span) / base_step)))
        h = span / steps
        s = a
        for _ in range(steps):
            k1 = rhs(p)
            k2 = rhs(p + 0.5 * h * k1)
            k3 = rhs(p + 0.5 * h * k2)
            k4 = rhs(p + h * k3)
            p = p + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
            s += h
        out[i + 1] = p
    return out


def integrate_orbit_cylinder(
    n: int,
    k: int,
    qbar,
    pbar,
    profile: RhoProfile | None = None,
    span: float | None = None,
    grid: tuple = DEFAULT_GRID,
) -> CylinderSolution:
    """Integrate the cylinder ODE and fill the (s, t) grid.

    Fourth-order steps with size adapted to the local slope k*rho; the
    stored fine profile has FINE_FACTOR times the grid resolution.  The
    default span shrinks with the covering degree so the residual budget
    holds at the default grid.  Raises when |p| leaves the profile's
    radial range before reaching the requested span.
    """
    if k < 1:
        raise InputError("covering degree must be a positive integer")
    if n < 1:
        raise InputError("torus dimension must be positive")
    qbar = tuple(float(x) for x in qbar)
    pbar = tuple(float(x) for x in pbar)
    if len(qbar) != n or len(pbar) != n:
        raise InputError("qbar and pbar must have length n")
    profile = profile or RhoProfile()
    if span is None:
        span = DEFAULT_SPAN / k
    n_s, n_t = grid
    if n_s < 9 or n_t < 9:
        raise InputError("grid must be at least 9 x 9")
    c2 = sum(x * x for x in pbar[1:])

    def rhs(p1):
        r = math.sqrt(p1 * p1 + c2)
        if r > profile.r_max:
            raise TruncationError(
                f"|p| reached {r:.4g}, beyond the profile range {profile.r_max}"
            )
        return k * float(profile(r))

    n_fine = FINE_FACTOR * (n_s - 1) + 1
    s_fine = np.linspace(-span, span, n_fine)
    base_step = min(1e-3, span / 200.0)
    pos = s_fine[s_fine >= 0.0]
    neg = s_fine[s_fine <= 0.0][::-1]
    p_fine = np.empty(n_fine)
    if len(pos) and pos[0] > 0:
        start = _rk4_profile(rhs, pbar[0], np.concatenate([[0.0], pos]), base_step)[1:]
    else:
        start = _rk4_profile(rhs, pbar[0], np.concatenate([[0.0], pos[1:]]), base_step)
    p_fine[n_fine - len(pos):] = start
    if len(neg) and neg[0] < 0:
        down = _rk4_profile(rhs, pbar[0], np.concatenate([[0.0], neg]), base_step)[1:]
    else:
        down = _rk4_profile(rhs, pbar[0], np.concatenate([[0.0], neg[1:]]), base_step)
    p_fine[: len(neg)] = down[::-1]

    s_vals = np.linspace(-span, span, n_s)
    t_vals = np.linspace(0.0, 2.0 * np.pi, n_t, endpoint=False)
    q = np.empty((n_s, n_t, n))
    p = np.empty((n_s, n_t, n))
    q[:, :, 0] = k * t_vals[None, :] + qbar[0]
    p[:, :, 0] = p_fine[::FINE_FACTOR][:, None]
    for i in range(1, n):
        q[:, :, i] = qbar[i]
        p[:, :, i] = pbar[i]
    dp_fine = np.array([rhs(v) for v in p_fine])
    sol = CylinderSolution(
        n=n,
        k=k,
        qbar=qbar,
        pbar=pbar,
        s_vals=s_vals,
        t_vals=t_vals,
        q=q,
        p=p,
        s_fine=s_fine,
        p1_fine=p_fine,
        dp1_fine=dp_fine,
    )
    check_invariants(sol)
    residual = holomorphic_residual(sol, profile)
    if residual > TAU_HOL:
        raise VerificationError(
            f"integrator output has holomorphic residual {residual:.3e} > {TAU_HOL}"
        )
    return sol


def _d_ds(grid: np.ndarray, h: float) -> np.ndarray:
    """Five-point centered s-derivative on interior rows (margin 2)."""
    return (
        -grid[4:] + 8.0 * grid[3:-1] - 8.0 * grid[1:-3] + grid[:-4]
    ) / (12.0 * h)


def _d_dt_periodic(grid: np.ndarray, h: float, lift: float = 0.0) -> np.ndarray:
    """Five-point t-derivative with periodic wraparound and covering lift."""
    rolled = {}
    for shift in (-2, -1, 1, 2):
        arr = np.roll(grid, -shift, axis=1).astype(float)
        if lift:
            if shift > 0:
                arr[:, -shift:] += lift
            else:
                arr[:, :-shift] -= lift
        rolled[shift] = arr
    return (
        -rolled[2] + 8.0 * rolled[1] - 8.0 * rolled[-1] + rolled[-2]
    ) / (12.0 * h)


def holomorphic_residual(sol: CylinderSolution, profile: RhoProfile) -> float:
    """Max first-order defect of the cylinder equations on interior points.

    Centered five-point differences in s (interior margin two rows) and
    periodic t; the t-derivative of the q_1 lift accounts for the 2 pi k
    jump across the seam.  Output is max over grid points and coordinates
    of |d_t q - rho^{-1} d_s p| + |d_s q + rho^{-1} d_t p|.
    """
    h_s = float(sol.s_vals[1] - sol.s_vals[0])
    h_t = float(sol.t_vals[1] - sol.t_vals[0])
    radius = np.sqrt(np.sum(sol.p**2, axis=2))
    rho = np.asarray(profile(radius))
    inner = slice(2, -2)

    worst = 0.0
    for i in range(sol.n):
        lift = 2.0 * np.pi * sol.k if i == 0 else 0.0
        dq_dt = _d_dt_periodic(sol.q[:, :, i], h_t, lift)[inner]
        dp_dt = _d_dt_periodic(sol.p[:, :, i], h_t)[inner]
        dq_ds = _d_ds(sol.q[:, :, i], h_s)
        dp_ds = _d_ds(sol.p[:, :, i], h_s)
        r = rho[inner]
        res = np.abs(dq_dt - dp_ds / r) + np.abs(dq_ds + dp_dt / r)
        worst = max(worst, float(res.max()))
    return worst


def covering_degree(sol: CylinderSolution, probe) -> int:
    """Count grid-localized preimages of a point on the cylinder's slice."""
    q_pt = np.asarray(probe[0], dtype=float)
    p_pt = np.asarray(probe[1], dtype=float)
    if q_pt.shape != (sol.n,) or p_pt.shape != (sol.n,):
        raise InputError("probe must supply q and p of length n")
    for i in range(1, sol.n):
        dq = (q_pt[i] - sol.qbar[i]) % (2.0 * np.pi)
        if min(dq, 2.0 * np.pi - dq) > 1e-9 or abs(p_pt[i] - sol.pbar[i]) > 1e-9:
            raise InputError("probe is off the cylinder's frozen slice")
    sol.p1_inverse(float(p_pt[0]))  # raises if outside the attained range
    # q_1 sweeps k full turns per period: count wrapped zero crossings
    angles = (sol.k * sol.t_vals + sol.qbar[0] - q_pt[0] + np.pi) % (
        2.0 * np.pi
    ) - np.pi
    hits = 0
    for j in range(len(angles)):
        a, b = angles[j], angles[(j + 1) % len(angles)]
        if abs(b - a) > np.pi:  # seam jump, not a crossing
            continue
        if a == 0.0 or (a < 0.0 <= b) or (b <= 0.0 < a):
            hits += 1
    return hits


def action_area_check(sol: CylinderSolution, r_lo: float, r_hi: float):
    """Symplectic area of a radial truncation against the geodesic length.

    The truncation keeps e^{r_lo} <= |p| <= e^{r_hi} on the branch where
    p_1 > 0.  The area is the difference of the boundary circle integrals
    of p dq (trapezoid in t); it must dominate (e^{r_hi} - e^{r_lo})
    times the asymptotic geodesic length 2 pi k, with equality when the
    transverse momenta vanish.
    """
    if r_lo > r_hi:
        raise InputError("need r_lo <= r_hi")
    c2 = sum(x * x for x in sol.pbar[1:])
    levels = []
    for r in (r_lo, r_hi):
        radius = math.exp(r)
        if radius * radius < c2:
            raise InputError(
                f"truncation level e^{r} is below the transverse momentum norm"
            )
        p1 = math.sqrt(radius * radius - c2)
        levels.append(sol.p1_inverse(p1))
    s_lo, s_hi = levels

    def boundary_integral(s):
        # trapezoid over t of sum_i p_i d_t q_i; only q_1 moves, at rate k
        p1 = sol.p1_at(s)
        integrand = np.full(len(sol.t_vals), p1 * sol.k)
        return float(np.sum(integrand) * (sol.t_vals[1] - sol.t_vals[0]))

    area = boundary_integral(s_hi) - boundary_integral(s_lo)
    length = 2.0 * np.pi * sol.k
    bound = (math.exp(r_hi) - math.exp(r_lo)) * length
    if area < bound - 1e-9 * max(1.0, abs(bound)):
        raise VerificationError(
            f"truncated area {area} fell below the length bound {bound}"
        )
    return area, bound


def perturbed(sol: CylinderSolution, amplitude: float = 0.01) -> CylinderSolution:
    """A deliberately non-holomorphic deformation (for residual tests)."""
    q = sol.q.copy()
    q[:, :, 1] += amplitude * np.sin(sol.s_vals)[:, None]
    return replace(sol, q=q)


# ---------------------------------------------------------------------------
# serialization


def solution_to_json(sol: CylinderSolution) -> dict:
    return {
        "n": sol.n,
        "k": sol.k,
        "qbar": list(sol.qbar),
        "pbar": list(sol.pbar),
        "s_vals": sol.s_vals.tolist(),
        "t_vals": sol.t_vals.tolist(),
        "q": sol.q.tolist(),
        "p": sol.p.tolist(),
    }


def summary(sol: CylinderSolution, profile: RhoProfile) -> dict:
    return {
        "n": sol.n,
        "k": sol.k,
        "grid": [len(sol.s_vals), len(sol.t_vals)],
        "span": float(sol.s_vals[-1]),
        "p1_range": [float(sol.p1_fine[0]), float(sol.p1_fine[-1])],
        "residual": holomorphic_residual(sol, profile),
        "family_parameters": 2 * (sol.n - 1),
    }
