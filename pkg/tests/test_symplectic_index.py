"""Tests for path indices, Maslov winding, and the taming margin."""

from fractions import Fraction

import numpy as np
import pytest
from scipy.linalg import expm

from symcount import symplectic_index as si
from symcount.errors import (
    InconsistencyError,
    InputError,
    PreconditionError,
)


def rotation(theta):
    return si.rotation_path(theta)


def random_sp_path(n, rng, samples=21, strength=1.2):
    j0 = si.standard_j(n)

    def ham():
        s = rng.normal(size=(2 * n, 2 * n))
        return j0 @ ((s + s.T) / 2) * strength

    x1, x2 = ham(), ham()
    return si.path_from_function(lambda t: expm(t * x1) @ expm(t * x2), samples)


# --- check_symplectic -------------------------------------------------------

def test_check_symplectic_identity():
    assert si.check_symplectic(np.eye(2), 1e-12)


def test_check_symplectic_j0():
    assert si.check_symplectic(si.standard_j(1), 1e-12)


def test_check_symplectic_diag_fails():
    assert not si.check_symplectic(np.diag([2.0, 1.0]), 1e-12)


def test_check_symplectic_odd_dimension():
    with pytest.raises(InputError):
        si.check_symplectic(np.eye(3), 1e-12)


# --- robbin_salamon ---------------------------------------------------------

def test_rs_constant_identity():
    path = si.path_from_function(lambda t: np.eye(2), 9)
    assert si.robbin_salamon(path) == 0


def test_rs_full_rotation_loop():
    assert si.robbin_salamon(si.full_rotation_loop()) == 2


def test_rs_shear():
    # positive upper shear carries +1/2 in the normalization fixed by
    # CZ(exp(pi J0 t)) = +1; see the module docstring
    assert si.robbin_salamon(si.shear_path(1.0)) == Fraction(1, 2)


def test_rs_half_integer_denominator():
    rs = si.robbin_salamon(si.shear_path(3.0))
    assert isinstance(rs, Fraction) and rs.denominator in (1, 2)


# --- conley_zehnder ---------------------------------------------------------

@pytest.mark.parametrize("theta,expected", [(np.pi, 1), (3 * np.pi, 3)])
def test_cz_rotations(theta, expected):
    assert si.conley_zehnder(rotation(theta)) == expected


def test_cz_direct_sum():
    p = rotation(np.pi)
    assert si.conley_zehnder(si.direct_sum(p, p)) == 2


def test_cz_degenerate_endpoint_raises():
    with pytest.raises(PreconditionError, match="det"):
        si.conley_zehnder(si.full_rotation_loop())


# --- maslov_loop ------------------------------------------------------------

def test_maslov_constant_loop():
    frames = tuple(np.array([[1.0], [0.0]]) for _ in range(5))
    assert si.maslov_loop(si.LagrangianLoop(1, frames)) == 0


def test_maslov_half_rotation_of_real_line():
    j0 = si.standard_j(1)
    frames = tuple(
        expm(np.pi * t * j0) @ np.array([[1.0], [0.0]])
        for t in np.linspace(0, 1, 41)
    )
    assert si.maslov_loop(si.LagrangianLoop(1, frames)) == 1


def test_maslov_tangent_lines_of_circle():
    # tangent lines along the boundary circle of the unit disk, with J0
    # as the ambient complex structure: the classical index-2 loop
    j0 = si.standard_j(1)
    p0 = np.array([[1.0], [0.0]])
    frames = tuple(
        expm(theta * j0) @ (j0 @ p0) for theta in np.linspace(0, 2 * np.pi, 81)
    )
    assert si.maslov_loop(si.LagrangianLoop(1, frames)) == 2


def test_maslov_reparametrization_invariance():
    j0 = si.standard_j(1)
    ts = np.linspace(0, 1, 61)
    warped = ts**2 * (3 - 2 * ts)  # orientation preserving reparametrization
    mk = lambda tt: tuple(
        expm(np.pi * t * j0) @ np.array([[1.0], [0.0]]) for t in tt
    )
    a = si.maslov_loop(si.LagrangianLoop(1, mk(ts)))
    b = si.maslov_loop(si.LagrangianLoop(1, mk(warped)))
    assert a == b == 1


def test_maslov_open_loop_rejected():
    j0 = si.standard_j(1)
    frames = tuple(
        expm(0.4 * np.pi * t * j0) @ np.array([[1.0], [0.0]])
        for t in np.linspace(0, 1, 21)
    )
    with pytest.raises(InputError):
        si.LagrangianLoop(1, frames)


# --- relations --------------------------------------------------------------

def test_viterbo_relation_cases():
    assert si.viterbo_relation(0, 0, 0)
    assert si.viterbo_relation(-2, 2, 0)
    assert not si.viterbo_relation(1, 0, 0)


def test_bott_cz_values():
    assert si.bott_cz(Fraction(1, 2), 1) == 0
    assert si.bott_cz(Fraction(1), 2) == 0
    assert si.bott_cz(2, 0) == 2


def test_bott_cz_non_integer_rejected():
    with pytest.raises(InconsistencyError):
        si.bott_cz(Fraction(1, 2), 2)


def test_bott_family_validation():
    si.BottFamily(cz=0, rs=Fraction(1, 2), dim=1)
    with pytest.raises(InconsistencyError):
        si.BottFamily(cz=1, rs=Fraction(1, 2), dim=1)


# --- geodesic paths ---------------------------------------------------------

def test_geodesic_path_n2_is_shear():
    gc = si.GeodesicClass(2, (1, 0))
    path = si.linearized_geodesic_path(gc)
    assert path.n == 1
    end = path.endpoint()
    assert np.allclose(end, [[1.0, 2 * np.pi], [0.0, 1.0]])


def test_geodesic_path_n1_empty():
    gc = si.GeodesicClass(1, (1,))
    path = si.linearized_geodesic_path(gc)
    assert path.n == 0
    assert si.robbin_salamon(path) == 0


def test_geodesic_path_n3_rs():
    gc = si.GeodesicClass(3, (1, 0, 0))
    assert si.robbin_salamon(si.linearized_geodesic_path(gc)) == 1


def test_geodesic_zero_class_rejected():
    with pytest.raises(InputError):
        si.linearized_geodesic_path(si.GeodesicClass(2, (0, 0)))


@pytest.mark.parametrize("n", range(1, 7))
def test_flat_torus_families_satisfy_cz_rs_relation(n):
    # orbit-trivialization value: cz = rs - dim/2 = 0 and Morse index 0
    for k in [(1,) + (0,) * (n - 1), (2,) + (0,) * (n - 1), (1,) * n]:
        gc = si.GeodesicClass(n, k)
        rs = si.robbin_salamon(si.linearized_geodesic_path(gc))
        assert rs == Fraction(n - 1, 2)
        cz = si.bott_cz(rs, gc.bott_dim if any(k) else 0)
        assert si.viterbo_relation(cz, 0, gc.morse_index)


def test_geodesic_length():
    assert si.GeodesicClass(2, (3, 4)).length == pytest.approx(10 * np.pi)


# --- randomized property suite ----------------------------------------------

@pytest.mark.parametrize("n", [1, 2])
def test_random_path_properties(n):
    rng = np.random.default_rng(100 + n)
    for _ in range(12):
        path = random_sp_path(n, rng)
        rs = si.robbin_salamon(path)
        assert si.robbin_salamon(si.refine_midpoints(path)) == rs
        assert si.robbin_salamon(si.concatenate_rotation_loop(path)) == rs + 2
        assert si.robbin_salamon(si.direct_sum(path, path)) == 2 * rs
        try:
            assert si.conley_zehnder(path) == rs
        except PreconditionError:
            pass


# --- taming margin ----------------------------------------------------------

def test_taming_margin_values():
    assert si.taming_margin(0.0) == 1.0
    assert si.taming_margin(1.0) == 0.5
    assert si.taming_margin(3.0) == pytest.approx(-0.5, abs=1e-9)


def test_taming_margin_small_perturbations_stay_tamed():
    for k in np.linspace(0, 1, 23):
        assert si.taming_margin(float(k)) >= 0.5


def test_taming_margin_negative_norm_rejected():
    with pytest.raises(InputError):
        si.taming_margin(-0.1)


# --- JSON round trips -------------------------------------------------------

def test_path_json_roundtrip():
    path = rotation(np.pi)
    doc = si.path_to_json(path)
    back = si.path_from_json(doc)
    assert back.n == path.n
    assert si.conley_zehnder(back) == 1


def test_index_json():
    assert si.index_to_json(Fraction(3, 2)) == {"num": 3, "den": 2}
    assert si.index_from_json({"num": -1, "den": 2}) == Fraction(-1, 2)
    with pytest.raises(InputError):
        si.index_from_json({"num": 1, "den": 3})


def test_path_must_start_at_identity():
    with pytest.raises(InputError):
        si.SymplecticPath(
            1,
            (0.0, 1.0),
            (np.array([[1.0, 0.1], [0.0, 1.0]]), np.eye(2)),
        )
