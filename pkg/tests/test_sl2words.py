import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from kzmono.sl2words import (
    IntMat2,
    Membership,
    Word,
    closed_form_trsts2,
    closed_form_tts3,
    compare_closed_forms,
    eval_word,
    gamma_membership,
    parse_word,
    trsts2_word,
    tts3_word,
)

T = sympy.Matrix([[1, 1], [0, 1]])
S = sympy.Matrix([[0, -1], [1, 0]])

letters = st.lists(
    st.one_of(st.tuples(st.just("T"), st.integers(-9, 9)), st.tuples(st.just("S"), st.just(1))),
    max_size=12,
)


def sympy_eval(letters_):
    m = sympy.eye(2)
    for letter, e in letters_:
        m = m * (T**e if letter == "T" else S)
    return m


def as_sympy(m: IntMat2):
    return sympy.Matrix(m.rows())


@given(letters)
def test_words_have_determinant_one_and_match_sympy(ls):
    w = Word._merged(ls)
    m = eval_word(w)
    assert m.det() == 1
    assert as_sympy(m) == sympy_eval(ls)


@given(letters)
def test_parse_round_trip(ls):
    w = Word._merged(ls)
    assert parse_word(str(w)) == w


def test_parse_syntax():
    assert parse_word("(T^2 S T^3 S)^2") == parse_word("(T^{2}ST^{3}S)^2") == trsts2_word(2, 3)
    assert parse_word("(T^-4 S)^3") == tts3_word(-4)
    assert parse_word("T T^-1 S") == parse_word("S")
    assert eval_word("S S") == IntMat2(-1, 0, 0, -1)
    assert eval_word("(T S)^3") == IntMat2(-1, 0, 0, -1)
    for bad in ("(T S", "T S)", "^2", "X", "(T S)^-1"):
        with pytest.raises(ValueError):
            parse_word(bad)


def test_intmat_checks_determinant():
    with pytest.raises(ValueError):
        IntMat2(1, 1, 1, 1)


def test_membership():
    assert gamma_membership(IntMat2(7, 6, 36, 31), 6) is Membership.IN_GAMMA
    assert gamma_membership(IntMat2(-1, 0, 0, -1), 6) is Membership.MINUS_IN_GAMMA
    assert gamma_membership(IntMat2(-1, 0, 0, -1), 2) is Membership.IN_GAMMA
    assert gamma_membership(IntMat2(1, 1, 0, 1), 6) is Membership.NEITHER
    assert not Membership.NEITHER.projective()
    with pytest.raises(ValueError):
        gamma_membership(IntMat2(1, 0, 0, 1), 0)


@pytest.mark.parametrize("t", list(range(-12, 0)) + list(range(1, 60)))
def test_tts3_closed_form_is_minus_direct(t):
    direct = eval_word(tts3_word(t))
    assert compare_closed_forms(direct, closed_form_tts3(t))["relation"] == "negated"
    if abs(t + 1) >= 2:
        assert gamma_membership(direct, abs(t + 1)).projective()


@given(st.integers(-30, 30).filter(lambda x: x != 1), st.integers(-30, 30).filter(lambda x: x != 1))
def test_trsts2_closed_form_differs_only_in_21_sign(r, s):
    direct = eval_word(trsts2_word(r, s))
    literal = closed_form_trsts2(r, s)
    cmp = compare_closed_forms(direct, literal)
    assert cmp["other_entries"] == []
    assert direct.c == s * (r * s - 2) == -literal.c
    if s * (r * s - 2):
        assert cmp["sign_flipped_entries"] == ["21"]
    if abs(r * s - 2) >= 2:
        assert gamma_membership(direct, abs(r * s - 2)).projective()


def test_spec_example_trsts2_2_2():
    direct = eval_word(trsts2_word(2, 2))
    assert direct.rows() == [[5, -4], [4, -3]]
    assert closed_form_trsts2(2, 2).rows() == [[5, -4], [-4, -3]]


def test_closed_forms_reject_excluded_parameters():
    with pytest.raises(ValueError):
        closed_form_tts3(0)
    with pytest.raises(ValueError):
        closed_form_trsts2(1, 3)
