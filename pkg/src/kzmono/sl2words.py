"""Words in T, S, their SL2(Z) matrices, and principal congruence membership.

Word syntax: tokens ``T``, ``T^n`` (n may be negative, optionally in braces),
``S``, and ``( ... )^n`` grouping with n >= 0.  Whitespace is ignored, so
``"(T^2 S T^3 S)^2"`` and ``"(T^{2}ST^{3}S)^2"`` are the same word.  The empty
word is written "1".
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

__all__ = [
    "Word",
    "IntMat2",
    "Membership",
    "parse_word",
    "eval_word",
    "closed_form_tts3",
    "closed_form_trsts2",
    "gamma_membership",
    "tts3_word",
    "trsts2_word",
]


@dataclass(frozen=True)
class IntMat2:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.det() != 1:
            raise ValueError(f"determinant {self.det()} != 1 for {self.rows()}")

    @classmethod
    def _unchecked(cls, a, b, c, d) -> "IntMat2":
        obj = object.__new__(cls)
        object.__setattr__(obj, "a", a)
        object.__setattr__(obj, "b", b)
        object.__setattr__(obj, "c", c)
        object.__setattr__(obj, "d", d)
        return obj

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __matmul__(self, o: "IntMat2") -> "IntMat2":
        return IntMat2._unchecked(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __neg__(self) -> "IntMat2":
        return IntMat2._unchecked(-self.a, -self.b, -self.c, -self.d)

    def __str__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


IDENTITY = IntMat2(1, 0, 0, 1)
T_MAT = IntMat2(1, 1, 0, 1)
S_MAT = IntMat2(0, -1, 1, 0)


@dataclass(frozen=True)
class Word:
    """Flattened sequence of letters: ("T", n) or ("S", 1)."""

    letters: tuple[tuple[str, int], ...] = ()

    def __str__(self):
        if not self.letters:
            return "1"
        parts = []
        for letter, e in self.letters:
            parts.append("S" if letter == "S" else ("T" if e == 1 else f"T^{e}"))
        return " ".join(parts)

    def __mul__(self, other: "Word") -> "Word":
        return Word._merged(self.letters + other.letters)

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            raise ValueError("negative powers of words are not supported")
        return Word._merged(self.letters * n)

    @staticmethod
    def _merged(letters) -> "Word":
        out: list[tuple[str, int]] = []
        for letter, e in letters:
            if letter == "T" and out and out[-1][0] == "T":
                e += out.pop()[1]
            if letter == "T" and e == 0:
                continue
            out.append((letter, e))
        return Word(tuple(out))


_TOKEN = re.compile(r"\s*(?:(T|S)|(\()|(\))|\^\s*\{?\s*([+\-−]?\d+)\s*\}?)")


def parse_word(text: str) -> Word:
    tokens = []
    pos = 0
    text = text.strip()
    if text in ("", "1"):
        return Word()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse word at position {pos}: {text[pos:]!r}")
        pos = m.end()
        if m.group(1):
            tokens.append(("L", m.group(1)))
        elif m.group(2):
            tokens.append(("(", None))
        elif m.group(3):
            tokens.append((")", None))
        else:
            tokens.append(("^", int(m.group(4).replace("−", "-"))))

    def parse_seq(i: int) -> tuple[list, int]:
        items: list[tuple[str, int]] = []
        while i < len(tokens) and tokens[i][0] != ")":
            kind, val = tokens[i]
            if kind == "L":
                atom = [(val, 1)]
                i += 1
            elif kind == "(":
                atom, i = parse_seq(i + 1)
                if i >= len(tokens) or tokens[i][0] != ")":
                    raise ValueError(f"unbalanced parenthesis in {text!r}")
                i += 1
            else:
                raise ValueError(f"dangling exponent in {text!r}")
            if i < len(tokens) and tokens[i][0] == "^":
                e = tokens[i][1]
                i += 1
                if len(atom) == 1 and atom[0][0] == "T":
                    atom = [("T", e)]
                elif e < 0:
                    raise ValueError(f"negative exponent on a non-T factor in {text!r}")
                else:
                    atom = atom * e
            items.extend(atom)
        return items, i

    items, i = parse_seq(0)
    if i != len(tokens):
        raise ValueError(f"unbalanced parenthesis in {text!r}")
    return Word._merged(items)


def tts3_word(t: int) -> Word:
    """(T^t S)^3"""
    return Word._merged([("T", t), ("S", 1)]) ** 3


def trsts2_word(r: int, s: int) -> Word:
    """(T^r S T^s S)^2"""
    return Word._merged([("T", r), ("S", 1), ("T", s), ("S", 1)]) ** 2


def eval_word(w: Word | str) -> IntMat2:
    if isinstance(w, str):
        w = parse_word(w)
    m = IDENTITY
    for letter, e in w.letters:
        if letter == "T":
            m = m @ IntMat2._unchecked(1, e, 0, 1)
        else:
            m = m @ S_MAT
    return m


def closed_form_tts3(t: int) -> IntMat2:
    """The displayed closed form for (T^t S)^3, transcribed literally.

    It equals -eval_word((T^t S)^3): the display carries an overall sign flip.
    """
    if t == 0:
        raise ValueError("closed form is stated for t != 0")
    return IntMat2(
        -1 - (t + 1) * (t * t - t - 1),
        (t + 1) * (t - 1),
        -(t + 1) * (t - 1),
        (t + 1) - 1,
    )


def closed_form_trsts2(r: int, s: int) -> IntMat2:
    """The displayed closed form for (T^r S T^s S)^2, transcribed literally.

    The (2,1) entry is printed as -s(rs - 2); direct multiplication gives
    +s(rs - 2), so the literal matrix generally has determinant != 1 and is
    returned unchecked.
    """
    if r == 1 or s == 1:
        raise ValueError("closed form is stated for r != 1 and s != 1")
    m = r * s - 2
    return IntMat2._unchecked(m * m + m - 1, -r * m, -s * m, -1 - m)


class Membership(str, enum.Enum):
    IN_GAMMA = "InGamma"
    MINUS_IN_GAMMA = "MinusInGamma"
    NEITHER = "Neither"

    def projective(self) -> bool:
        return self is not Membership.NEITHER


def gamma_membership(m: IntMat2, N: int) -> Membership:
    """Whether m is congruent to E, to -E, or to neither modulo N."""
    if N < 1:
        raise ValueError("N must be positive")
    a, b, c, d = m.a % N, m.b % N, m.c % N, m.d % N
    if b or c:
        return Membership.NEITHER
    if a == 1 % N and d == 1 % N:
        return Membership.IN_GAMMA
    if a == (-1) % N and d == (-1) % N:
        return Membership.MINUS_IN_GAMMA
    return Membership.NEITHER


def compare_closed_forms(direct: IntMat2, literal: IntMat2) -> dict:
    """Entrywise comparison of a direct product against a literal closed form."""
    d = [direct.a, direct.b, direct.c, direct.d]
    lit = [literal.a, literal.b, literal.c, literal.d]
    names = ["11", "12", "21", "22"]
    if d == lit:
        relation = "equal"
    elif d == [-x for x in lit]:
        relation = "negated"
    else:
        relation = "entrywise"
    return {
        "relation": relation,
        "sign_flipped_entries": [n for n, x, y in zip(names, d, lit) if x != y and x == -y],
        "other_entries": [n for n, x, y in zip(names, d, lit) if x != y and x != -y],
    }
