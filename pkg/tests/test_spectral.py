import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kzmono.exceptions import DegenerateWeight
from kzmono.spectral import Weight, cap_k_rs, cap_k_t, constants, spectral_params
from kzmono.verify import weight_grid

weights = st.builds(
    Weight, st.integers(-60, 60), st.integers(1, 12)
).filter(lambda w: not w.degenerate)


def theta(w: Weight) -> float:
    # independent: theta = pi (k+1) / 6
    return math.pi * float(w.value + 1) / 6


def test_parse_and_normalise():
    assert Weight.parse("13/6") == Weight(13, 6)
    assert Weight.parse("-4/6") == Weight(-2, 3)
    assert Weight.parse("7") == Weight(7, 1)
    assert Weight(3, -6) == Weight(-1, 2)
    assert str(Weight(4, 2)) == "2"
    for bad in ("0.5", "1/0", "x", "", "1//2"):
        with pytest.raises(ValueError):
            Weight.parse(bad)
    with pytest.raises(TypeError):
        Weight.of(0.5)
    assert Weight.of(Fraction(7, 5)) == Weight(7, 5)


def test_degenerate_weights_are_5_mod_6():
    for a in range(-30, 30):
        assert Weight(a, 1).degenerate == (a % 6 == 5)
    assert not Weight(5, 2).degenerate
    with pytest.raises(DegenerateWeight):
        constants(Weight(5)).C
    with pytest.raises(DegenerateWeight):
        cap_k_t("-1", 2)


def test_stiller_gate_integers():
    for a in range(-30, 30):
        assert Weight(a).stiller_valid == (a % 12 not in (0, 4, 5, 11))
    assert Weight(1, 3).stiller_valid


@given(weights, st.integers(-30, 30), st.integers(-30, 30))
def test_constants_match_trigonometry(w, r, s):
    c = constants(w)
    th = theta(w)
    C = 1 / math.sin(th)
    Zr, Zs = cmath.exp(2j * r * th), cmath.exp(2j * s * th)
    Wr, Ws = (Zr - 1) * C, (Zs - 1) * C
    tol = 1e-9 * (1 + abs(C)) ** 2
    assert abs(c.C.to_complex() - C) < tol
    assert abs(c.Z(r).to_complex() - Zr) < 1e-9
    assert abs(c.W(r).to_complex() - Wr) < tol
    assert abs(cap_k_t(w, r).to_complex() - (Wr * Wr + 4 * Zr)) < tol
    assert abs(cap_k_rs(w, r, s).to_complex() - (Wr * Ws + 4 * (Zr + Zs))) < tol
    assert abs(c.i.to_complex() - 1j) < 1e-12
    assert abs(c.cos(3).to_complex() - math.cos(3 * th)) < 1e-9
    assert abs(c.sin(2).to_complex() - math.sin(2 * th)) < 1e-9


@given(weights)
def test_order_of_z1(w):
    c = constants(w)
    Q = 6 * w.q // math.gcd(w.p + w.q, 6)
    assert c.order == Q
    assert c.Z(Q) == c.ctx.one
    assert all(not c.Z(l).is_one() for l in range(1, Q))
    # periodicity checked against raw roots, not the cached reduction
    for l in (-Q - 1, -2, 3, Q + 5):
        assert c.ctx.root(2 * l * c.a) == c.Z(l)


@given(weights)
def test_g_product(w):
    c = constants(w)
    assert c.g * 16 == c.C / 2 + 1


def test_c_equals_minus_two_only_at_6_and_10_mod_12():
    hits = [str(w) for w in weight_grid(8, 24, stiller_only=False) if constants(w).C == -2]
    assert hits and all(Weight.parse(h).q == 1 and Weight.parse(h).p % 12 in (6, 10) for h in hits)
    assert len(hits) == len([a for a in range(-24, 25) if a % 12 in (6, 10)])


def test_spectral_params_bundle():
    sp = spectral_params("7/5", 3)
    c = constants(Weight(7, 5))
    assert sp.C == c.C and sp.Z_l == c.Z(3) and sp.W_l == c.W(3)
    assert sp.sin_theta * sp.C == c.ctx.one
