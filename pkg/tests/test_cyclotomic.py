import cmath
import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from kzmono.cyclotomic import CycNum, arith, cyclotomic_polynomial, make_field, root
from kzmono.exceptions import ContextMismatch

CONDUCTORS = [4, 12, 24, 36, 60]

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def elements(draw, n=None):
    n = n or draw(st.sampled_from(CONDUCTORS))
    ctx = make_field(n)
    coeffs = draw(st.lists(rationals, min_size=0, max_size=ctx.degree))
    return CycNum.from_coeffs(ctx, coeffs)


@st.composite
def triples(draw):
    n = draw(st.sampled_from(CONDUCTORS))
    return draw(elements(n)), draw(elements(n)), draw(elements(n))


@pytest.mark.parametrize("n", range(1, 61))
def test_cyclotomic_polynomial_matches_sympy(n):
    x = sympy.Symbol("x")
    expected = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
    assert cyclotomic_polynomial(n) == [int(c) for c in expected]


@given(triples())
def test_field_axioms(abc):
    a, b, c = abc
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == a.ctx.zero
    if not a.is_zero():
        assert a * a.inverse() == a.ctx.one
        assert (b / a) * a == b


@given(elements())
def test_complex_embedding_is_a_homomorphism(a):
    b = a * a + 3
    assert abs(b.to_complex() - (a.to_complex() ** 2 + 3)) < 1e-8 * (1 + abs(b.to_complex()))


@given(elements())
def test_json_round_trip(a):
    assert CycNum.from_json(a.to_json()) == a


@pytest.mark.parametrize("n", CONDUCTORS)
def test_roots_are_periodic_and_multiplicative(n):
    ctx = make_field(n)
    for e in range(-n, 2 * n, 7):
        assert root(ctx, e) == root(ctx, e + n)
        assert root(ctx, e) * root(ctx, 5) == root(ctx, e + 5)
        assert abs(root(ctx, e).to_complex() - cmath.exp(2j * math.pi * e / n)) < 1e-12
    assert ctx.i * ctx.i == ctx(-1)


def test_i_requires_four_dividing_conductor():
    with pytest.raises(ValueError):
        make_field(6)


def test_mixed_contexts_rejected():
    with pytest.raises(ContextMismatch):
        make_field(12).one + make_field(24).one


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        make_field(12).zero.inverse()


def test_arith_dispatch():
    ctx = make_field(12)
    a, b = ctx.root(1), ctx(Fraction(3, 2))
    assert arith("add", a, b) == a + b
    assert arith("mul", a, b) == a * b
    assert arith("div", a, b) == a / b
    assert arith("sub", a, b) == a - b


def test_conjugate_is_complex_conjugate():
    ctx = make_field(36)
    a = ctx.root(5) * 3 + ctx.root(11) / 7
    assert abs(a.conjugate().to_complex() - a.to_complex().conjugate()) < 1e-12
    assert a.conjugate().conjugate() == a
    assert abs((a * a.conjugate()).to_complex().imag) < 1e-12


def test_high_precision_embedding():
    ctx = make_field(60)
    a = ctx.root(7) + ctx.root(13)
    z = a.to_complex(precision=1e-20)
    assert abs(z - (cmath.exp(2j * math.pi * 7 / 60) + cmath.exp(2j * math.pi * 13 / 60))) < 1e-14


def test_arith_rejects_unknown_operation():
    ctx = make_field(12)
    with pytest.raises(ValueError):
        arith("pow", ctx.one, ctx.one)
