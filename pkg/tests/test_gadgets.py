"""Exact checks for the hand-built diagram fragments."""

import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zxzw import diagrams as dg
from zxzw import gadgets as gad
from zxzw.matrices import Matrix
from zxzw.rings import Cyclo, INV_SQRT2, SQRT2
from zxzw.semantics import EXACT, FLOAT, interp


def scalar_of(d):
    m = interp(d, EXACT)
    assert m.shape == (1, 1)
    return m[0, 0]


def test_sqrt2_scalar():
    assert scalar_of(gad.sqrt2()) == SQRT2


def test_inv_sqrt2_scalar():
    assert scalar_of(gad.inv_sqrt2()) == INV_SQRT2


def test_dot_values():
    assert scalar_of(gad.dot(0)) == Cyclo(2)
    assert scalar_of(gad.dot(1)) == Cyclo(0)
    assert scalar_of(gad.dot(Fraction(1, 2))) == Cyclo(1) + Cyclo.omega_power(2)


def test_phase_gadget_is_sqrt2_times_unit():
    for k in range(8):
        got = scalar_of(gad.phase_gadget(Fraction(k, 4)))
        assert got == SQRT2 * Cyclo.omega_power(k)


def test_circles():
    assert scalar_of(gad.circles(3)) == Cyclo(8)


def test_loop_h1_values():
    assert scalar_of(gad.loop_h1(1)) == SQRT2
    # (1 - e^{+-i pi/2}) / sqrt2 = omega^{-+1}
    assert scalar_of(gad.loop_h1(Fraction(-1, 2))) == Cyclo.omega_power(1)
    assert scalar_of(gad.loop_h1(Fraction(1, 2))) == Cyclo.omega_power(7)


@given(st.integers(0, 7), st.integers(0, 7))
@settings(max_examples=30, deadline=None)
def test_loop_h2_formula(j, k):
    got = scalar_of(gad.loop_h2(Fraction(j, 4), Fraction(k, 4)))
    want = (Cyclo(1) + Cyclo.omega_power(j)) * (Cyclo(1) + Cyclo.omega_power(k))
    assert got == want.half()


def test_half_scalar():
    assert scalar_of(gad.half_scalar()) == Cyclo(1, 0, 0, 0, 1)


@given(st.integers(-8, 8))
@settings(max_examples=20, deadline=None)
def test_unit_phase(k):
    assert scalar_of(gad.unit_phase(Fraction(k, 4))) == Cyclo.omega_power(k)


@given(st.integers(0, 7), st.integers(-3, 3))
@settings(max_examples=30, deadline=None)
def test_unit_scalar(j, k):
    want = Cyclo.omega_power(j)
    for _ in range(abs(k)):
        want = want * SQRT2 if k > 0 else want * INV_SQRT2
    assert scalar_of(gad.unit_scalar(j, k)) == want


CNOT = Matrix(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
)
CNOT_DOWN = Matrix(
    [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]]
)
CZ = Matrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]])


def test_cnot_exact():
    assert interp(gad.cnot(), EXACT) == CNOT


def test_cnot_down_exact():
    assert interp(gad.cnot_down(), EXACT) == CNOT_DOWN


def test_cz_exact():
    assert interp(gad.cz(), EXACT) == CZ


def test_crossing_matches_generator():
    assert interp(gad.crossing(), EXACT) == interp(dg.zw_cross(), EXACT)


def test_triangle_matches_generator():
    # the pi/4 construction contracts to exactly the triangle generator
    assert interp(gad.triangle(), EXACT) == interp(dg.tri(1), EXACT)
    assert interp(gad.triangle(), EXACT) == Matrix([[1, 1], [0, 1]])


def test_w_add_matrix():
    assert interp(gad.w_add(), EXACT) == Matrix([[1, 0, 0, 0], [0, 1, 1, 0]])


def test_w_split_matrix():
    assert interp(gad.w_split(), EXACT) == Matrix(
        [[1, 0], [0, 1], [0, 1], [0, 0]]
    )


def test_w21_matches_generator():
    assert interp(gad.w21_zx(), EXACT) == interp(dg.w21(), EXACT)


def test_w12_matches_generator():
    assert interp(gad.w12_zx(), EXACT) == interp(dg.w12(), EXACT)


def test_zero_and_int_states():
    assert interp(gad.zero_state(), EXACT) == Matrix([[1], [0]])
    assert interp(gad.int_state(3), EXACT) == Matrix([[1], [3]])
    assert interp(gad.int_state(-2), EXACT) == Matrix([[1], [-2]])


def test_half_state():
    assert interp(gad.half_state(), EXACT) == Matrix.column(
        [Cyclo(1), Cyclo(1, 0, 0, 0, 1)]
    )


@given(
    st.integers(-3, 3),
    st.integers(-3, 3),
    st.integers(-3, 3),
    st.integers(-3, 3),
    st.integers(0, 2),
)
@settings(max_examples=25, deadline=None)
def test_ring_state_hits_any_ring_element(a, b, c, d, e):
    r = Cyclo(a, b, c, d, e)
    got = interp(gad.ring_state(r), EXACT)
    assert got == Matrix.column([Cyclo(1), r])


def test_cos_plug():
    got = interp(gad.cos_plug(Fraction(1, 2)), EXACT)
    assert got == Matrix.column([SQRT2, Cyclo(0)])


def test_tan_state_float():
    a = 0.7
    got = interp(gad.tan_state(a), FLOAT).numpy().reshape(2)
    import math

    mu = math.sqrt(2) * math.cos(a) * cmath.exp(1j * a)
    assert abs(got[0] - mu) < 1e-9
    assert abs(got[1] - mu * math.tan(a)) < 1e-9


@given(st.complex_numbers(max_magnitude=9.0, allow_nan=False, allow_infinity=False))
@settings(max_examples=40, deadline=None)
def test_complex_scalar(value):
    got = interp(gad.complex_scalar(value), FLOAT)
    assert abs(got[0, 0] - complex(value)) < 1e-9


def test_complex_scalar_zero():
    assert abs(interp(gad.complex_scalar(0), FLOAT)[0, 0]) < 1e-12
