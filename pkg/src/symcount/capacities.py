"""Capacity values, embedding criteria, chord bounds, and volume constants.

Units: every capacity is reported in area units, normalized so that a
complex line in the ambient projective space has symplectic area pi.
Values established by theorem carry status "proved"; the ellipsoid
formula is "conjectural"; quantities the source material leaves open are
reported as "unknown" rather than guessed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InconsistencyError, InputError

BALL = "ball"
CYLINDER = "cylinder"
POLYDISK = "polydisk"
ELLIPSOID = "ellipsoid"
STANDARD_TORUS = "standard_torus"

PROVED = "proved"
CONJECTURAL = "conjectural"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class Domain:
    """A model domain: ball/cylinder/polydisk of radius r, or an ellipsoid.

    Radii are in length units; ellipsoid axes a_1 <= ... <= a_n are in
    area units (the axis equals the area of the corresponding coordinate
    disk's boundary slice).
    """

    kind: str
    n: int
    radius: float | None = None
    axes: tuple | None = None

    def __post_init__(self):
        if self.kind not in (BALL, CYLINDER, POLYDISK, ELLIPSOID, STANDARD_TORUS):
            raise InputError(f"unknown domain kind {self.kind!r}")
        if self.n < 1:
            raise InputError("n must be positive")
        if self.kind == ELLIPSOID:
            if not self.axes:
                raise InputError("an ellipsoid needs its axes")
            axes = tuple(float(a) for a in self.axes)
            if len(axes) != self.n:
                raise InputError("need one axis per complex dimension")
            if any(a <= 0 for a in axes):
                raise InputError("axes must be positive")
            if any(a1 > a2 for a1, a2 in zip(axes, axes[1:])):
                raise InputError("axes must be sorted ascending")
            object.__setattr__(self, "axes", axes)
        else:
            r = 1.0 if self.radius is None else float(self.radius)
            if r <= 0:
                raise InputError("radius must be positive")
            object.__setattr__(self, "radius", r)


@dataclass(frozen=True)
class MetricSpec:
    """Riemannian data entering the embedding-capacity bounds."""

    n: int
    ell_min: float
    volume: float

    def __post_init__(self):
        if self.ell_min <= 0 or self.volume <= 0:
            raise InputError("minimal geodesic length and volume must be positive")


@dataclass(frozen=True)
class CapacityValue:
    value: float | None
    status: str


def lagrangian_capacity(d: Domain, lagrangian_class: str = "torus") -> CapacityValue:
    """Lagrangian capacity of a model domain.

    Ball of radius r: pi r^2 / n; cylinder and polydisk of radius r:
    pi r^2 (all proved).  Ellipsoid: pi / sum(1/a_i), conjectural.  With
    ``lagrangian_class="arbitrary"`` the ball value is only known for
    n <= 2 and is reported as unknown beyond that.
    """
    if lagrangian_class not in ("torus", "arbitrary"):
        raise InputError("lagrangian_class must be 'torus' or 'arbitrary'")
    if d.kind == BALL:
        if lagrangian_class == "arbitrary" and d.n > 2:
            return CapacityValue(None, UNKNOWN)
        return CapacityValue(math.pi * d.radius**2 / d.n, PROVED)
    if d.kind == CYLINDER:
        return CapacityValue(math.pi * d.radius**2, PROVED)
    if d.kind == POLYDISK:
        return CapacityValue(math.pi * d.radius**2, PROVED)
    if d.kind == ELLIPSOID:
        return CapacityValue(math.pi / sum(1.0 / a for a in d.axes), CONJECTURAL)
    raise InputError(f"no Lagrangian capacity for kind {d.kind!r}")


def a_min_standard_torus(r: float) -> float:
    """Minimal symplectic area pi r^2 of the product torus of radius r."""
    if r <= 0:
        raise InputError("radius must be positive")
    return math.pi * r**2


def polydisk_embeds_ball(n: int, r: float) -> bool:
    """Whether the polydisk of radius r embeds symplectically in the unit ball."""
    if n < 1 or r <= 0:
        raise InputError("need positive n and r")
    return r <= 1.0 / math.sqrt(n)


def chord_bound(d: Domain) -> CapacityValue:
    """Shortest-chord bound for Legendrian submanifolds in the boundary.

    Equals the Lagrangian capacity of the domain; only star-shaped
    domains (ball, ellipsoid) are supported.  For the unit ball this is
    pi/n, so any such Legendrian meets some closed characteristic twice.
    """
    if d.kind not in (BALL, ELLIPSOID):
        raise InputError("chord bound requires a star-shaped domain (ball/ellipsoid)")
    return lagrangian_capacity(d)


def unit_ball_volume(dim: int) -> float:
    """Volume of the unit ball in R^dim (dim real dimensions)."""
    if dim < 1:
        raise InputError("dimension must be positive")
    if dim % 2 == 0:
        k = dim // 2
        return math.pi**k / math.factorial(k)
    k = (dim - 1) // 2
    return 2.0**dim * math.pi**k * math.factorial(k) / math.factorial(dim)


def weinstein_bounds(m: MetricSpec, n_target: int) -> dict:
    """Lower bounds for embedding the unit codisk bundle into projective space.

    geodesic_bound = (n+1) ell_min / pi; volume_bound is the n-th root of
    vol(Q) vol B^n(1) / vol CP^n with vol CP^n = pi^n / n!.  ``best`` is
    the larger of the two.
    """
    if n_target != m.n:
        raise InputError("target dimension must match the metric's dimension")
    n = m.n
    geodesic = (n + 1) * m.ell_min / math.pi
    vol_cpn = math.pi**n / math.factorial(n)
    volume = (m.volume * unit_ball_volume(n) / vol_cpn) ** (1.0 / n)
    return {
        "geodesic_bound": geodesic,
        "volume_bound": volume,
        "best": max(geodesic, volume),
    }


def flat_torus_metric(n: int) -> MetricSpec:
    """The torus with all side lengths 2 pi: volume (2 pi)^n, ell_min 2 pi."""
    return MetricSpec(n=n, ell_min=2.0 * math.pi, volume=(2.0 * math.pi) ** n)


def flat_torus_volume_constant(n: int) -> float:
    """The constant C_n in the volume lower bound for the flat torus.

    C_{2k} = 2 sqrt(pi) ((2k)!/k!)^(1/2k) and
    C_{2k+1} = 4 (pi^k k!)^(1/(2k+1)), with exact integer factorials
    before the real root is taken.
    """
    if n < 1:
        raise InputError("n must be >= 1")
    if n % 2 == 0:
        k = n // 2
        ratio = math.factorial(2 * k) // math.factorial(k)
        return 2.0 * math.sqrt(math.pi) * float(ratio) ** (1.0 / (2 * k))
    k = (n - 1) // 2
    return 4.0 * (math.pi**k * math.factorial(k)) ** (1.0 / (2 * k + 1))


def flat_torus_upper_bound(n: int) -> float:
    """Upper bound 2(n + sqrt(n)) from the explicit product embedding.

    Re-derives the bound as the constrained maximum of |z|^2 over the
    image, attained where every action coordinate equals 1/sqrt(n), and
    checks the two expressions agree.
    """
    if n < 1:
        raise InputError("n must be >= 1")
    closed_form = 2.0 * (n + math.sqrt(n))
    s = 1.0 / math.sqrt(n)
    max_sq_norm = sum(2.0 + 2.0 * s for _ in range(n))
    if abs(max_sq_norm - closed_form) > 1e-9 * closed_form:
        raise InconsistencyError(
            f"embedding maximum {max_sq_norm} != closed form {closed_form}"
        )
    return closed_form
