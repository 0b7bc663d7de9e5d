"""Linear symplectic algebra and path indices.

Implements the three index theories used throughout the package: the
Robbin-Salamon index of a (possibly degenerate) path of symplectic
matrices via crossing forms, the Conley-Zehnder index of a nondegenerate
path, and the Maslov index of a loop of Lagrangian subspaces via the
winding of the squared determinant of a unitarized frame.  Also hosts
the flat-torus geodesic data feeding the Morse-Bott bookkeeping and the
taming-margin model computation.

Conventions
-----------
``J0`` is the block matrix [[0, I], [-I, 0]] and doubles as the complex
unit: a real 2n-vector (x, y) is identified with x - iy, under which J0
acts as multiplication by i.  The pairing used in crossing forms is
om(u, v) = <J0 u, v>.  This normalizes the indices so that

    CZ(t -> exp(pi J0 t)) = +1,

concatenating a full rotation loop exp(2 pi J0 t) in a 2-dimensional
factor adds +2, and the positive shear [[1, t], [0, 1]] has
Robbin-Salamon index +1/2.  Among the sign variants in circulation this
is the one under which the linearized flat geodesic flow on the
(n-1)-torus family has index (n-1)/2.

All types are immutable values and all operations are pure functions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import expm, logm

from .errors import (
    DegeneracyError,
    InconsistencyError,
    InputError,
    PreconditionError,
)
from .halfint import as_half, half_from_json, half_to_json

TAU_SYM = 1e-9          # symplecticity / Lagrangian tolerance
CROSSING_RTOL = 1e-9    # crossing declared when sigma_min < CROSSING_RTOL * scale
RANK_RTOL = 1e-7        # kernel dimension cutoff relative to scale
EIG_ZERO_RTOL = 1e-10   # crossing-form eigenvalues below this count as zero
EIG_AMBIG_RTOL = 1e-6   # ...and between the two bands are refused as unstable


def standard_j(n: int) -> np.ndarray:
    """The matrix J0 = [[0, I], [-I, 0]] of size 2n x 2n."""
    j = np.zeros((2 * n, 2 * n))
    j[:n, n:] = np.eye(n)
    j[n:, :n] = -np.eye(n)
    return j


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class SymplecticMatrix:
    """A real 2n x 2n matrix M with M^T J0 M = J0 up to TAU_SYM."""

    n: int
    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=float)
        if self.n < 0:
            raise InputError("half-dimension must be nonnegative")
        if m.shape != (2 * self.n, 2 * self.n):
            raise InputError(f"expected shape {(2*self.n, 2*self.n)}, got {m.shape}")
        object.__setattr__(self, "entries", m)
        if self.n > 0 and not check_symplectic(m, TAU_SYM * _scale_of(m)):
            raise InputError("matrix is not symplectic within tolerance")


@dataclass(frozen=True)
class SymplecticPath:
    """Sampled path [0,1] -> Sp(2n) with Psi(0) = I exactly.

    Between samples the path is evaluated along the one-parameter
    subgroup t -> A_i expm(s X_i) with X_i = logm(A_i^{-1} A_{i+1}); that
    interpolation is exactly symplectic and refinement-consistent
    (inserting the interpolant's own midpoints never changes it).
    """

    n: int
    times: tuple
    matrices: tuple  # tuple of 2n x 2n ndarrays

    def __post_init__(self):
        ts = tuple(float(t) for t in self.times)
        ms = tuple(np.asarray(m, dtype=float) for m in self.matrices)
        if len(ts) != len(ms) or len(ts) < 2:
            raise InputError("need matching times/matrices with at least two samples")
        if abs(ts[0]) > 0 or abs(ts[-1] - 1.0) > 1e-12:
            raise InputError("sample times must run from 0 to 1")
        if any(t1 <= t0 for t0, t1 in zip(ts, ts[1:])):
            raise InputError("sample times must be strictly increasing")
        d = 2 * self.n
        for m in ms:
            if m.shape != (d, d):
                raise InputError("all samples must share the path dimension")
        if self.n > 0:
            if np.max(np.abs(ms[0] - np.eye(d))) != 0.0:
                raise InputError("path must start at the identity exactly")
            scale = max(_scale_of(m) for m in ms)
            for m in ms:
                if not check_symplectic(m, TAU_SYM * scale):
                    raise InputError("a sample is not symplectic within tolerance")
        object.__setattr__(self, "times", ts)
        object.__setattr__(self, "matrices", ms)

    @property
    def scale(self) -> float:
        if self.n == 0:
            return 1.0
        return max(_scale_of(m) for m in self.matrices)

    def endpoint(self) -> np.ndarray:
        return self.matrices[-1]


@dataclass(frozen=True)
class LagrangianLoop:
    """Closed loop of Lagrangian frames: 2n x n full-rank, Lambda^T J0 Lambda = 0."""

    n: int
    frames: tuple

    def __post_init__(self):
        fs = tuple(np.asarray(f, dtype=float) for f in self.frames)
        if len(fs) < 3:
            raise InputError("a loop needs at least three frames")
        j0 = standard_j(self.n)
        for f in fs:
            if f.shape != (2 * self.n, self.n):
                raise InputError(f"frames must be {2*self.n} x {self.n}")
            if np.linalg.matrix_rank(f, tol=1e-10 * max(1.0, np.abs(f).max())) < self.n:
                raise InputError("frame is rank deficient")
            sk = f.T @ j0 @ f
            if np.max(np.abs(sk)) > TAU_SYM * max(1.0, np.abs(f).max()) ** 2:
                raise InputError("frame does not span a Lagrangian subspace")
        if _subspace_distance(fs[0], fs[-1]) > 1e-8:
            raise InputError("loop is not closed: last frame spans a different subspace")
        object.__setattr__(self, "frames", fs)


@dataclass(frozen=True)
class GeodesicClass:
    """Free homotopy class k in Z^n of a closed flat-torus geodesic.

    On the torus with 2*pi side lengths the geodesics in a class k come
    in an (n-1)-dimensional family of Morse index zero and common length
    2*pi*|k|.
    """

    n: int
    k: tuple

    def __post_init__(self):
        kk = tuple(int(x) for x in self.k)
        if self.n < 1 or len(kk) != self.n:
            raise InputError("lattice vector length must equal the torus dimension")
        object.__setattr__(self, "k", kk)

    @property
    def length(self) -> float:
        return 2.0 * np.pi * float(np.linalg.norm(self.k))

    @property
    def morse_index(self) -> int:
        return 0

    @property
    def bott_dim(self) -> int:
        if all(x == 0 for x in self.k):
            raise InputError("the zero class is not a geodesic class")
        return self.n - 1


@dataclass(frozen=True)
class BottFamily:
    """Index data of a family of closed orbits: cz = rs - dim/2 exactly."""

    cz: int
    rs: Fraction
    dim: int

    def __post_init__(self):
        rs = as_half(self.rs)
        if self.dim < 0:
            raise InputError("family dimension must be nonnegative")
        if rs - Fraction(self.dim, 2) != self.cz:
            raise InconsistencyError(
                f"cz={self.cz} != rs - dim/2 = {rs - Fraction(self.dim, 2)}"
            )
        object.__setattr__(self, "rs", rs)


# ---------------------------------------------------------------------------
# basic checks


def _scale_of(m: np.ndarray) -> float:
    return max(1.0, float(np.abs(m).max()))


def check_symplectic(m, tol: float) -> bool:
    """True iff max-entry norm of M^T J0 M - J0 is at most ``tol``."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
        raise InputError("matrix must be square of even size")
    n = m.shape[0] // 2
    if n == 0:
        return True
    j0 = standard_j(n)
    return float(np.max(np.abs(m.T @ j0 @ m - j0))) <= tol


def _subspace_distance(f0: np.ndarray, f1: np.ndarray) -> float:
    q0, _ = np.linalg.qr(f0)
    q1, _ = np.linalg.qr(f1)
    return float(np.max(np.abs(q0 @ q0.T - q1 @ q1.T)))


# ---------------------------------------------------------------------------
# path construction helpers


def path_from_function(fn: Callable[[float], np.ndarray], n_samples: int = 33) -> SymplecticPath:
    """Sample ``fn`` at ``n_samples`` uniform times; fn(0) must be I."""
    ts = np.linspace(0.0, 1.0, n_samples)
    ms = [np.asarray(fn(float(t)), dtype=float) for t in ts]
    d = ms[0].shape[0]
    ms[0] = np.eye(d)
    return SymplecticPath(d // 2, tuple(ts), tuple(ms))


def rotation_path(theta: float, n_samples: int = 33) -> SymplecticPath:
    """The Sp(2) path t -> exp(theta * J0 * t)."""
    j = standard_j(1)
    return path_from_function(lambda t: expm(theta * t * j), n_samples)


def full_rotation_loop(n_samples: int = 33) -> SymplecticPath:
    return rotation_path(2.0 * np.pi, n_samples)


def shear_path(c: float = 1.0, n_samples: int = 17) -> SymplecticPath:
    """The Sp(2) path t -> [[1, c t], [0, 1]]."""
    return path_from_function(lambda t: np.array([[1.0, c * t], [0.0, 1.0]]), n_samples)


def symplectic_direct_sum(m1: np.ndarray, m2: np.ndarray) -> np.ndarray:
    """Direct sum of symplectic matrices in the (all x, all y) block split."""
    n1, n2 = m1.shape[0] // 2, m2.shape[0] // 2
    n = n1 + n2
    m = np.zeros((2 * n, 2 * n))
    blocks = {
        (0, 0): (m1[:n1, :n1], m2[:n2, :n2]),
        (0, 1): (m1[:n1, n1:], m2[:n2, n2:]),
        (1, 0): (m1[n1:, :n1], m2[n2:, :n2]),
        (1, 1): (m1[n1:, n1:], m2[n2:, n2:]),
    }
    for (bi, bj), (a, b) in blocks.items():
        m[bi * n: bi * n + n1, bj * n: bj * n + n1] = a
        m[bi * n + n1: (bi + 1) * n, bj * n + n1: (bj + 1) * n] = b
    return m


def direct_sum(p1: SymplecticPath, p2: SymplecticPath) -> SymplecticPath:
    """Symplectic direct sum of two paths on the union of their sample times."""
    times = sorted(set(p1.times) | set(p2.times))
    e1, e2 = _Interp(p1), _Interp(p2)
    ms = [symplectic_direct_sum(e1.value(t), e2.value(t)) for t in times]
    ms[0] = np.eye(ms[0].shape[0])
    return SymplecticPath(p1.n + p2.n, tuple(times), tuple(ms))


def concatenate(p1: SymplecticPath, p2: SymplecticPath) -> SymplecticPath:
    """Run p1 on [0,1/2] and p1(1)*p2 on [1/2,1]."""
    if p1.n != p2.n:
        raise InputError("paths must share the dimension")
    end = p1.matrices[-1]
    ts = [t / 2.0 for t in p1.times] + [0.5 + t / 2.0 for t in p2.times[1:]]
    ms = list(p1.matrices) + [end @ m for m in p2.matrices[1:]]
    return SymplecticPath(p1.n, tuple(ts), tuple(ms))


def concatenate_rotation_loop(path: SymplecticPath, n_samples: int = 33) -> SymplecticPath:
    """Prepend a full rotation loop acting in the first 2-dimensional factor."""
    loop2 = full_rotation_loop(n_samples)
    if path.n == 1:
        loop = loop2
    else:
        const = path_from_function(lambda t: np.eye(2 * (path.n - 1)), 3)
        loop = direct_sum(loop2, const)
    return concatenate(loop, path)


def refine_midpoints(path: SymplecticPath) -> SymplecticPath:
    """Insert the interpolant's midpoint between every adjacent sample pair."""
    if path.n == 0:
        return path
    ev = _Interp(path)
    ts, ms = [path.times[0]], [path.matrices[0]]
    for t0, t1 in zip(path.times, path.times[1:]):
        tm = 0.5 * (t0 + t1)
        ts.extend([tm, t1])
        ms.extend([ev.value(tm), ev.value(float(t1))])
    return SymplecticPath(path.n, tuple(ts), tuple(ms))


# ---------------------------------------------------------------------------
# interpolation and crossing machinery


def _logm_real(m: np.ndarray) -> np.ndarray:
    """Principal real matrix log; fast eig route with scipy fallback."""
    d = m.shape[0]
    if np.max(np.abs(m - np.eye(d))) < 1e-14 * _scale_of(m):
        return np.zeros_like(m)
    w, v = np.linalg.eig(m)
    on_cut = (w.real <= 0) & (np.abs(w.imag) < 1e-13 * _scale_of(m))
    if not np.any(on_cut):
        try:
            vinv = np.linalg.inv(v)
            recon = (v * w) @ vinv
            if np.max(np.abs(recon - m)) < 1e-11 * _scale_of(m):
                x = (v * np.log(w)) @ vinv
                if np.max(np.abs(x.imag)) < 1e-9 * max(1.0, np.abs(x.real).max()):
                    return np.ascontiguousarray(x.real)
        except np.linalg.LinAlgError:
            pass
    x = logm(m)
    if np.max(np.abs(np.asarray(x).imag)) > 1e-8:
        raise InputError(
            "samples too coarse: a step has no real logarithm; refine the path"
        )
    return np.ascontiguousarray(np.asarray(x).real)


class _Segment:
    """One-parameter subgroup A * exp(s X) with cached eigendecomposition."""

    __slots__ = ("a", "x", "w", "v", "vinv")

    def __init__(self, a: np.ndarray, b: np.ndarray):
        self.a = a
        self.x = _logm_real(np.linalg.solve(a, b))
        self.w = self.v = self.vinv = None
        w, v = np.linalg.eig(self.x)
        try:
            vinv = np.linalg.inv(v)
        except np.linalg.LinAlgError:
            return
        scale = max(1.0, np.abs(self.x).max())
        if np.max(np.abs((v * w) @ vinv - self.x)) < 1e-11 * scale:
            self.w, self.v, self.vinv = w, v, vinv

    def exp(self, s: float) -> np.ndarray:
        if self.w is not None:
            e = (self.v * np.exp(s * self.w)) @ self.vinv
            return np.ascontiguousarray(e.real)
        return expm(s * self.x)

    def value(self, s: float) -> np.ndarray:
        return self.a @ self.exp(s)


class _Interp:
    """Piecewise one-parameter-subgroup interpolant of a sampled path."""

    def __init__(self, path: SymplecticPath):
        self.path = path
        self.times = np.asarray(path.times)
        self.segments = [
            _Segment(a, b) for a, b in zip(path.matrices, path.matrices[1:])
        ]

    def segment_of(self, t: float) -> int:
        i = int(np.searchsorted(self.times, t, side="right")) - 1
        return min(max(i, 0), len(self.segments) - 1)

    def value(self, t: float) -> np.ndarray:
        i = self.segment_of(t)
        t0, t1 = self.times[i], self.times[i + 1]
        return self.segments[i].value((t - t0) / (t1 - t0))

    def derivative(self, t: float, side: str) -> np.ndarray:
        """One-sided dPsi/dt; exact on each segment."""
        i = self.segment_of(t)
        t0, t1 = self.times[i], self.times[i + 1]
        if side == "left" and abs(t - t0) < 1e-15 and i > 0:
            i -= 1
            t0, t1 = self.times[i], self.times[i + 1]
        elif side == "right" and abs(t - t1) < 1e-15 and i + 1 < len(self.segments):
            i += 1
            t0, t1 = self.times[i], self.times[i + 1]
        s = min(max((t - t0) / (t1 - t0), 0.0), 1.0)
        seg = self.segments[i]
        return seg.value(s) @ seg.x / (t1 - t0)

    def dense(self, subdiv: int):
        """Uniform subdivision of every segment (endpoint included once)."""
        ts, ms = [], []
        for i, seg in enumerate(self.segments):
            step = seg.exp(1.0 / subdiv)
            cur = seg.a
            t0, t1 = self.times[i], self.times[i + 1]
            for j in range(subdiv):
                ts.append(t0 + (t1 - t0) * j / subdiv)
                ms.append(cur)
                cur = cur @ step
        ts.append(self.times[-1])
        ms.append(self.path.matrices[-1])
        return np.asarray(ts), np.asarray(ms)


def _sigma_min(mats: np.ndarray) -> np.ndarray:
    eye = np.eye(mats.shape[-1])
    return np.linalg.svd(mats - eye, compute_uv=False)[..., -1]


def _kernel_basis(m: np.ndarray, scale: float) -> np.ndarray:
    d = m.shape[0]
    u, s, vt = np.linalg.svd(m - np.eye(d))
    mask = s < RANK_RTOL * scale
    return vt[mask].T  # columns span ker(M - I)


def _crossing_form(interp: _Interp, t: float, side: str, scale: float):
    """Regularized signature of om(v, dPsi v) on ker(Psi(t) - I)."""
    m = interp.value(t)
    basis = _kernel_basis(m, scale)
    if basis.shape[1] == 0:
        return 0
    dm = interp.derivative(t, side)
    n = m.shape[0] // 2
    k = standard_j(n).T @ dm          # om(v, w) = <J0 v, w> => Q(v) = v^T J0^T dPsi v
    q = basis.T @ (k + k.T) @ basis / 2.0
    lam = np.linalg.eigvalsh(q)
    ref = max(1.0, float(np.abs(lam).max()), float(np.abs(dm).max()))
    lo, hi = EIG_ZERO_RTOL * ref, EIG_AMBIG_RTOL * ref
    if np.any((np.abs(lam) > lo) & (np.abs(lam) < hi)):
        raise DegeneracyError(
            f"crossing form at t={t:.6g} has eigenvalues of unstable rank: {lam}"
        )
    return int(np.sum(lam >= hi) - np.sum(lam <= -hi))


def _refine_minimum(interp: _Interp, ta: float, tb: float, stop: float) -> float:
    """Golden-section minimum of sigma_min(Psi(t) - I) on [ta, tb]."""
    phi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = ta, tb
    c, d = b - phi * (b - a), a + phi * (b - a)
    fc = _sigma_min(interp.value(c)[None])[0]
    fd = _sigma_min(interp.value(d)[None])[0]
    while b - a > 1e-13 and min(fc, fd) > stop:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - phi * (b - a)
            fc = _sigma_min(interp.value(c)[None])[0]
        else:
            a, c, fc = c, d, fd
            d = a + phi * (b - a)
            fd = _sigma_min(interp.value(d)[None])[0]
    return c if fc < fd else d


def _events(interp: _Interp, subdiv: int, scale: float):
    """Maximal parameter intervals where Psi(t) has eigenvalue 1.

    Returns a list of (a, b) with a == b for isolated crossings.  Dense
    grid points below the crossing tolerance are grouped into runs;
    additionally every strict local minimum of sigma_min is sharpened by
    golden section and kept if it reaches the tolerance.
    """
    ts, ms = interp.dense(subdiv)
    d = _sigma_min(ms)
    tau = CROSSING_RTOL * scale
    flagged = d < tau

    events = []
    i = 0
    while i < len(ts):
        if flagged[i]:
            j = i
            while j + 1 < len(ts) and flagged[j + 1]:
                j += 1
            events.append([ts[i], ts[j]])
            i = j + 1
        else:
            i += 1

    for i in range(1, len(ts) - 1):
        if flagged[i - 1] or flagged[i] or flagged[i + 1]:
            continue
        if d[i] < d[i - 1] and d[i] < d[i + 1]:
            # sigma_min falls off linearly at a simple crossing, so only
            # minima that could reach zero within a few cells need work
            s01 = abs(d[i] - d[i - 1]) / (ts[i] - ts[i - 1])
            s12 = abs(d[i + 1] - d[i]) / (ts[i + 1] - ts[i])
            reach = 10.0 * max(s01, s12) * (ts[i + 1] - ts[i - 1])
            if d[i] > max(reach, 1e-4 * scale):
                continue
            t_star = _refine_minimum(interp, ts[i - 1], ts[i + 1], stop=0.2 * tau)
            if _sigma_min(interp.value(t_star)[None])[0] < tau:
                events.append([t_star, t_star])

    events.sort()
    merged = []
    for a, b in events:
        if merged and a <= merged[-1][1] + 1e-12:
            merged[-1][1] = max(merged[-1][1], b)
        else:
            merged.append([a, b])
    return [(a, b) for a, b in merged]


def robbin_salamon(path: SymplecticPath, subdiv: int = 8) -> Fraction:
    """Robbin-Salamon index of a sampled symplectic path.

    At every boundary parameter of a maximal crossing event [a, b] the
    contribution is half the regularized signature of the crossing form
    for each existing one-sided derivative.  Isolated interior crossings
    thus contribute their full signature and endpoint crossings half.
    Inside a constant-rank stretch the form vanishes on the persistent
    kernel, so plateaus contribute only through their boundary, which
    reproduces the Morse-Bott indices of orbit families; at a plateau
    end the inward-side form still records any transverse eigenvalue
    crossing superimposed there.
    """
    if path.n == 0:
        return Fraction(0)
    interp = _Interp(path)
    scale = path.scale
    total = Fraction(0)
    for a, b in _events(interp, subdiv, scale):
        specials = [a] if a == b else [a, b]
        for t in specials:
            if t > 1e-15:
                total += Fraction(_crossing_form(interp, t, "left", scale), 2)
            if t < 1.0 - 1e-15:
                total += Fraction(_crossing_form(interp, t, "right", scale), 2)
    return total


def conley_zehnder(path: SymplecticPath, subdiv: int = 8) -> int:
    """Conley-Zehnder index; requires det(Psi(1) - I) != 0 beyond tolerance."""
    if path.n == 0:
        raise PreconditionError("empty path has no Conley-Zehnder index")
    end = path.endpoint()
    gap = _sigma_min(end[None])[0]
    if gap < 1e-8 * path.scale:
        det = float(np.linalg.det(end - np.eye(end.shape[0])))
        raise PreconditionError(
            f"degenerate endpoint: |det(Psi(1) - I)| = {abs(det):.3e}"
        )
    rs = robbin_salamon(path, subdiv)
    if rs.denominator != 1:
        raise InconsistencyError(f"nondegenerate path produced half-integer index {rs}")
    return int(rs)


# ---------------------------------------------------------------------------
# Maslov index of Lagrangian loops


def _unitarize(frame: np.ndarray) -> np.ndarray:
    n = frame.shape[1]
    z = frame[:n, :] - 1j * frame[n:, :]
    w, _, vh = np.linalg.svd(z, full_matrices=False)
    return w @ vh


def maslov_loop(loop: LagrangianLoop) -> int:
    """Winding number of det^2 of the unitarized frames around the loop."""
    dets = []
    for f in loop.frames:
        u = _unitarize(f)
        dets.append(np.linalg.det(u) ** 2)
    dets.append(dets[0])
    total = 0.0
    for d0, d1 in zip(dets, dets[1:]):
        delta = float(np.angle(d1 / d0))
        if abs(delta) > np.pi - 1e-6:
            raise InputError(
                "insufficient loop resolution: det^2 jumps by almost pi between samples"
            )
        total += delta
    w = total / (2.0 * np.pi)
    if abs(w - round(w)) > 1e-6:
        raise InconsistencyError(f"winding {w} is not an integer; loop may not close")
    return int(round(w))


# ---------------------------------------------------------------------------
# relations and geodesic data


def viterbo_relation(cz: int, maslov: int, morse_index: int) -> bool:
    """True iff cz + maslov == morse_index."""
    return cz + maslov == morse_index


def bott_cz(rs, dim: int) -> int:
    """CZ of an orbit family from its RS index and family dimension."""
    rs = as_half(rs)
    if dim < 0:
        raise InputError("family dimension must be nonnegative")
    cz = rs - Fraction(dim, 2)
    if cz.denominator != 1:
        raise InconsistencyError(f"rs - dim/2 = {cz} is not an integer")
    return int(cz)


def linearized_geodesic_path(gc: GeodesicClass, n_samples: int = 17) -> SymplecticPath:
    """Linearized flat geodesic flow on the contact distribution.

    In the canonical flat trivialization the path is the block shear
    [[I, t*L*I], [0, I]] on the 2(n-1)-dimensional distribution, with L
    the geodesic length 2*pi*|k|.  For n = 1 the distribution has rank
    zero and the empty path (index zero) is returned.
    """
    if all(x == 0 for x in gc.k):
        raise InputError("the constant loop is not a geodesic: k must be nonzero")
    d = gc.n - 1
    if d == 0:
        ts = np.linspace(0.0, 1.0, max(2, n_samples))
        empty = np.zeros((0, 0))
        return SymplecticPath(0, tuple(ts), tuple(empty for _ in ts))
    length = gc.length

    def shear(t):
        m = np.eye(2 * d)
        m[:d, d:] = t * length * np.eye(d)
        return m

    return path_from_function(shear, n_samples)


def taming_margin(K_norm: float, sigma_norm: float = 1.0, unit_samples: int = 2001) -> float:
    """Minimum of sigma_norm*|v|^2 + |w|^2 - K_norm*|v||w| over the unit sphere.

    The model for the taming estimate of a graph complex structure under
    a fibrewise perturbation of norm K_norm: sampling u = |v|^2 on the
    joint unit sphere |v|^2 + |w|^2 = 1 (the value 1/2 is always in the
    sample set so the K_norm = 1 margin is exactly 0.5 when sigma_norm is
    1).  For K_norm <= 1 the result is >= 1/2.
    """
    if K_norm < 0:
        raise InputError("K_norm must be nonnegative")
    if unit_samples < 2:
        raise InputError("need at least two samples")
    us = np.unique(np.concatenate([np.linspace(0.0, 1.0, unit_samples), [0.5]]))
    vals = sigma_norm * us + (1.0 - us) - K_norm * np.sqrt(us * (1.0 - us))
    return float(vals.min())


# ---------------------------------------------------------------------------
# JSON wire format


def path_to_json(path: SymplecticPath) -> dict:
    return {
        "n": path.n,
        "samples": [
            {"t": float(t), "matrix": m.tolist()}
            for t, m in zip(path.times, path.matrices)
        ],
    }


def path_from_json(doc) -> SymplecticPath:
    if isinstance(doc, str):
        doc = json.loads(doc)
    try:
        n = int(doc["n"])
        samples = doc["samples"]
        ts = tuple(float(s["t"]) for s in samples)
        ms = tuple(np.asarray(s["matrix"], dtype=float) for s in samples)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"not a path document: {exc}") from exc
    return SymplecticPath(n, ts, ms)


def loop_to_json(loop: LagrangianLoop) -> dict:
    return {
        "n": loop.n,
        "frames": [f.tolist() for f in loop.frames],
    }


def loop_from_json(doc) -> LagrangianLoop:
    if isinstance(doc, str):
        doc = json.loads(doc)
    try:
        n = int(doc["n"])
        frames = tuple(np.asarray(f, dtype=float) for f in doc["frames"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"not a loop document: {exc}") from exc
    return LagrangianLoop(n, frames)


index_to_json = half_to_json
index_from_json = half_from_json
