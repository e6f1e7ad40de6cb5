import math

import numpy as np
import pytest
import scipy.linalg as la
from hypothesis import given, settings
from hypothesis import strategies as st

from neelstates import Direction, SpinQuantum, as_spin, coherent_state, expectation, spin_matrices

SPINS = ["1/2", "1", "3/2", "2", "5/2"]


def test_spin_half_is_pauli_over_two():
    sm = spin_matrices("1/2")
    np.testing.assert_array_equal(sm.sx, [[0, 0.5], [0.5, 0]])
    np.testing.assert_array_equal(sm.sy, [[0, -0.5j], [0.5j, 0]])
    np.testing.assert_array_equal(sm.sz, np.diag([0.5, -0.5]))


def test_spin_one_matrices():
    sm = spin_matrices(1)
    np.testing.assert_array_equal(sm.sz, np.diag([1.0, 0.0, -1.0]))
    r = 1 / math.sqrt(2)
    np.testing.assert_allclose(sm.sx, [[0, r, 0], [r, 0, r], [0, r, 0]], atol=1e-15)


@pytest.mark.parametrize("s", SPINS)
def test_commutators_and_casimir(s):
    sx, sy, sz = spin_matrices(s)
    spin = as_spin(s)
    for a, b, c in [(sx, sy, sz), (sy, sz, sx), (sz, sx, sy)]:
        assert np.max(np.abs(a @ b - b @ a - 1j * c)) <= 1e-12
    for op in (sx, sy, sz):
        assert np.max(np.abs(op - op.conj().T)) == 0
    casimir = sx @ sx + sy @ sy + sz @ sz
    assert np.max(np.abs(casimir - spin.s * (spin.s + 1) * np.eye(spin.dim))) <= 1e-12


def test_parse_spin():
    assert SpinQuantum.parse("0.5").two_s == 1
    assert SpinQuantum.parse("3/2").two_s == 3
    assert SpinQuantum.parse(1.5).two_s == 3
    assert SpinQuantum.parse(2).two_s == 4
    assert str(SpinQuantum(3)) == "3/2"
    with pytest.raises(ValueError):
        SpinQuantum.parse(0.3)
    with pytest.raises(ValueError):
        SpinQuantum.parse("0")
    with pytest.raises(TypeError):
        SpinQuantum(1.0)


def test_direction_canonicalization():
    assert Direction(0.0, 2.0).phi == 0.0
    assert Direction(math.pi, -1.0).phi == 0.0
    assert Direction(1.0, 3 * math.pi).phi == pytest.approx(math.pi)
    assert Direction(1.0, -math.pi).phi == pytest.approx(math.pi)
    with pytest.raises(ValueError):
        Direction(-0.1, 0.0)
    with pytest.raises(ValueError):
        Direction(4.0, 0.0)


def test_coherent_state_spin_half_matches_closed_form():
    theta, phi = 1.1, -2.3
    v = coherent_state("1/2", Direction(theta, phi))
    expected = [math.cos(theta / 2) * np.exp(-0.5j * phi), math.sin(theta / 2) * np.exp(0.5j * phi)]
    np.testing.assert_allclose(v, expected, atol=1e-15)


@pytest.mark.parametrize("s", SPINS)
def test_north_pole_is_first_basis_vector(s):
    v = coherent_state(s, Direction(0.0, 0.0))
    e0 = np.zeros(as_spin(s).dim)
    e0[0] = 1.0
    np.testing.assert_array_equal(v, e0)


def test_spin_one_equator_state():
    v = coherent_state(1, Direction(math.pi / 2, 0.0))
    np.testing.assert_allclose(v, [0.5, 1 / math.sqrt(2), 0.5], atol=1e-15)


@pytest.mark.parametrize("s", SPINS)
def test_coherent_state_equals_rotated_highest_weight(s):
    # oracle: exp(-i phi Sz) exp(-i theta Sy) |s, s>
    sx, sy, sz = spin_matrices(s)
    rng = np.random.default_rng(5)
    for theta, phi in zip(rng.uniform(0, math.pi, 10), rng.uniform(-math.pi, math.pi, 10)):
        top = np.zeros(sz.shape[0], dtype=complex)
        top[0] = 1.0
        ref = la.expm(-1j * phi * sz) @ la.expm(-1j * theta * sy) @ top
        np.testing.assert_allclose(coherent_state(s, Direction(theta, phi)), ref, atol=1e-12)


def test_expectation_examples():
    v = coherent_state("1/2", Direction(math.pi / 2, math.pi / 2))
    sx, sy, sz = spin_matrices("1/2")
    assert expectation(v, sy) == pytest.approx(0.5, abs=1e-15)
    assert expectation(v, np.eye(2)) == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(ValueError):
        expectation(v, np.eye(3))


@settings(max_examples=100, deadline=None)
@given(
    s=st.sampled_from(SPINS),
    theta=st.floats(0.0, math.pi),
    phi=st.floats(-math.pi, math.pi),
)
def test_coherent_state_points_along_direction(s, theta, phi):
    d = Direction(theta, phi)
    v = coherent_state(s, d)
    spin = as_spin(s)
    assert abs(np.vdot(v, v) - 1) <= 1e-12
    mean = np.array([expectation(v, op) for op in spin_matrices(s)])
    assert np.max(np.abs(mean.imag)) <= 1e-12
    np.testing.assert_allclose(mean.real, spin.s * d.unit_vector, atol=1e-12, rtol=0)
