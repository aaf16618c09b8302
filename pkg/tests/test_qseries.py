from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from kzmono.exceptions import ResonantWeight
from kzmono.qseries import (
    FracQSeries,
    hypergeometric_series,
    kz_residual,
    kz_series_solution,
    local_exponents,
    modular_qexp,
    normal_form_check,
    pullback_check,
    ramanujan_check,
    schwarzian_check,
)

fracs = st.fractions(min_value=-5, max_value=5, max_denominator=7)
series = st.builds(
    lambda rho, cs: FracQSeries(rho, cs),
    st.integers(-2, 2),
    st.lists(fracs, min_size=1, max_size=8),
)
unit_series = st.builds(lambda cs: FracQSeries(0, [1] + cs), st.lists(fracs, min_size=1, max_size=8))

TAU = [1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944]


def test_eisenstein_against_divisor_sums():
    L = 30
    e2, e4, e6 = (modular_qexp(n, L) for n in ("E2", "E4", "E6"))
    for n in range(1, L + 1):
        assert e2.coefficient(n) == -24 * sympy.divisor_sigma(n, 1)
        assert e4.coefficient(n) == 240 * sympy.divisor_sigma(n, 3)
        assert e6.coefficient(n) == -504 * sympy.divisor_sigma(n, 5)


def test_delta_is_ramanujan_tau_and_eisenstein_combination():
    L = 12
    delta = modular_qexp("Delta", L)
    assert delta.rho == 1
    assert list(delta.coeffs[: len(TAU)]) == TAU
    e4, e6 = modular_qexp("E4", L), modular_qexp("E6", L)
    combo = (e4 * e4 * e4 - e6 * e6).scale(Fraction(1, 1728))
    for n in range(1, 12):
        assert combo.coefficient(n) == delta.coefficient(n)


def test_x_of_q_against_j_invariant():
    # 1728/j with j = 1/q + 744 + 196884 q + 21493760 q^2 + ...
    j_coeffs = [1, 744, 196884, 21493760, 864299970, 20245856256]
    j = FracQSeries(-1, j_coeffs)
    x = modular_qexp("x_of_q", 5)
    expected = j.inverse().scale(1728)
    for n in range(1, 6):
        assert x.coefficient(n) == expected.coefficient(n)
    assert x.coefficient(1) == 1728 and x.coefficient(2) == -1285632


def test_eta_powers():
    L = 15
    assert modular_qexp("eta_pow", L, 1) * modular_qexp("eta_pow", L, -1) == FracQSeries.constant(1, L)
    half = modular_qexp("eta_pow", L, Fraction(1, 2))
    assert half * half == modular_qexp("eta_pow", L, 1)
    assert modular_qexp("eta_pow", L, 1).rho == Fraction(1, 24)


def test_ramanujan_through_50():
    r = ramanujan_check(50)
    assert r.is_zero() and r.precision >= 50


@given(series, series, series)
def test_ring_axioms(a, b, c):
    assert ((a * b) * c).coeffs == (a * (b * c)).coeffs
    assert (a * b) == (b * a)
    if (a.rho - b.rho).denominator == 1:
        assert (a + b) == (b + a)


@given(series, series)
def test_derivation_rule(a, b):
    lhs = (a * b).D()
    rhs = a.D() * b + a * b.D()
    assert (lhs - rhs).is_zero()


@given(unit_series)
def test_inverse_and_powers(f):
    one = f * f.inverse()
    assert one == FracQSeries.constant(1, f.order)
    root = f ** Fraction(1, 3)
    assert root * root * root == f
    assert f ** 3 == f * f * f
    assert f ** -2 == (f * f).inverse()


@given(unit_series, st.lists(fracs, min_size=1, max_size=5))
def test_compose_against_sympy(f, inner_cs):
    inner = FracQSeries(1, [1] + inner_cs)
    got = f.compose(inner)
    q = sympy.Symbol("q")
    fi = sum(sympy.Rational(c.numerator, c.denominator) * q**n for n, c in enumerate(f.coeffs))
    ii = sum(sympy.Rational(c.numerator, c.denominator) * q ** (n + 1) for n, c in enumerate(inner.coeffs))
    ref = sympy.Poly(sympy.expand(fi.subs(q, ii)), q).all_coeffs()[::-1]
    for n in range(int(got.precision)):
        expect = ref[n] if n < len(ref) else 0
        assert got.coefficient(n) == Fraction(int(sympy.numer(expect)), int(sympy.denom(expect)))


def test_series_rejects_floats_and_misaligned_sums():
    with pytest.raises(TypeError):
        FracQSeries(0, [0.5])
    with pytest.raises(ValueError):
        FracQSeries(0, [1, 2]) + FracQSeries(Fraction(1, 2), [1])
    with pytest.raises(ZeroDivisionError):
        FracQSeries(0, [0, 0]).inverse()


@pytest.mark.parametrize("k", ["0", "1", "2", "1/2", "13/6", "7/5", "-3/4"])
def test_kz_identities_vanish(k):
    L = 20
    lam = local_exponents(k)[0]
    for branch in (0, lam):
        f = kz_series_solution(k, branch, L)
        assert kz_residual(f, k, L).is_zero()
        nf = normal_form_check(k, L, branch)
        assert nf.is_zero()
        assert nf.riccati.precision >= L
    s = schwarzian_check(k, L)
    assert s.is_zero() and s.precision >= L
    p = pullback_check(k, L)
    assert p.is_zero() and p.precision >= L


def test_residuals_detect_wrong_weight():
    f = kz_series_solution("1/2", 0, 10)
    assert not kz_residual(f, "3/2", 10).is_zero()


def test_weight_zero_solution_relates_to_eta():
    # the lambda = 1/6 Frobenius solution at k = 0 has D f proportional to eta^4
    f = kz_series_solution("0", Fraction(1, 6), 15)
    df = f.D()
    eta4 = modular_qexp("eta_pow", 15, 4)
    ratio = df.coeffs[0] / eta4.coeffs[0]
    assert df == eta4.scale(ratio).truncate(df.order)


def test_resonant_weights_raise():
    for k in ("5", "11", "-7"):
        with pytest.raises(ResonantWeight):
            kz_series_solution(k, 0, 5)


def test_hypergeometric_series_coefficients():
    h = hypergeometric_series(Fraction(1, 2), Fraction(1, 3), Fraction(3, 4), 6)
    for n in range(7):
        term = sympy.rf(sympy.Rational(1, 2), n) * sympy.rf(sympy.Rational(1, 3), n) / (
            sympy.rf(sympy.Rational(3, 4), n) * sympy.factorial(n)
        )
        assert h.coefficient(n) == Fraction(int(term.p), int(term.q))
    with pytest.raises(ValueError):
        hypergeometric_series(1, 1, -2, 4)
