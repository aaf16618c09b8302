"""Connection matrices of the Stiller basis (y1, i*y3) as graded matrices.

A ``GradedMatrix`` stands for

    [[ d11,        u12 * G12 ],
     [ l21 * G21,  d22       ]]

with d11, d22, u12, l21 exact in Q(zeta_{12q}).  The transcendental constants
G12, G21 never get evaluated here; the only rule needed to close products is

    G12 * G21 = (C/2 + 1) / 16.

Matrices act on row vectors of solutions, and a word in T, S is represented
by the product of generator matrices in the order the letters are written.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclotomic import CycNum
from .exceptions import ContextMismatch, DegenerateWeight, StillerGateError
from .sl2words import Word, parse_word
from .spectral import Weight, constants

__all__ = [
    "GradedMatrix",
    "generators",
    "graded_mul",
    "a_matrix",
    "b_matrix",
    "m_matrix",
    "n_matrix",
    "t_power",
    "word_representation",
    "check_gates",
]


@dataclass(frozen=True, eq=False)
class GradedMatrix:
    weight: Weight
    d11: CycNum
    d22: CycNum
    u12: CycNum
    l21: CycNum

    # -- construction -----------------------------------------------------

    @classmethod
    def scalar(cls, k: Weight, value) -> "GradedMatrix":
        ctx = k.field
        v = ctx(value)
        return cls(k, v, v, ctx.zero, ctx.zero)

    @classmethod
    def identity(cls, k: Weight) -> "GradedMatrix":
        return cls.scalar(k, 1)

    # -- structure ----------------------------------------------------------

    @property
    def g(self) -> CycNum:
        return constants(self.weight).g

    def entries(self) -> tuple[CycNum, CycNum, CycNum, CycNum]:
        return self.d11, self.u12, self.l21, self.d22

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries())

    def is_scalar(self) -> bool:
        return self.u12.is_zero() and self.l21.is_zero() and self.d11 == self.d22

    def trace(self) -> CycNum:
        return self.d11 + self.d22

    def det(self) -> CycNum:
        return self.d11 * self.d22 - self.u12 * self.l21 * self.g

    def __eq__(self, other):
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        return self.weight == other.weight and self.entries() == other.entries()

    def __hash__(self):
        return hash((self.weight, self.entries()))

    def _check(self, other: "GradedMatrix"):
        if self.weight != other.weight:
            raise ContextMismatch(f"graded matrices for k={self.weight} and k={other.weight}")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "GradedMatrix") -> "GradedMatrix":
        self._check(other)
        return GradedMatrix(
            self.weight,
            self.d11 + other.d11,
            self.d22 + other.d22,
            self.u12 + other.u12,
            self.l21 + other.l21,
        )

    def __sub__(self, other: "GradedMatrix") -> "GradedMatrix":
        self._check(other)
        return GradedMatrix(
            self.weight,
            self.d11 - other.d11,
            self.d22 - other.d22,
            self.u12 - other.u12,
            self.l21 - other.l21,
        )

    def __neg__(self):
        return GradedMatrix(self.weight, -self.d11, -self.d22, -self.u12, -self.l21)

    def scale(self, c) -> "GradedMatrix":
        return GradedMatrix(self.weight, self.d11 * c, self.d22 * c, self.u12 * c, self.l21 * c)

    def __matmul__(self, other: "GradedMatrix") -> "GradedMatrix":
        return graded_mul(self, other)

    def __mul__(self, other):
        if isinstance(other, GradedMatrix):
            return graded_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def inverse(self) -> "GradedMatrix":
        d = self.det()
        if d.is_zero():
            raise ZeroDivisionError("singular graded matrix")
        inv = d.inverse()
        return GradedMatrix(self.weight, self.d22 * inv, self.d11 * inv, -self.u12 * inv, -self.l21 * inv)

    def __pow__(self, e: int) -> "GradedMatrix":
        if e < 0:
            return self.inverse() ** (-e)
        result = GradedMatrix.identity(self.weight)
        base = self
        while e:
            if e & 1:
                result = graded_mul(result, base)
            base = graded_mul(base, base)
            e >>= 1
        return result

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "k": str(self.weight),
            "d11": self.d11.to_json(),
            "d22": self.d22.to_json(),
            "u12_times_G12": self.u12.to_json(),
            "l21_times_G21": self.l21.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "GradedMatrix":
        k = Weight.parse(data["k"])
        return cls(
            k,
            CycNum.from_json(data["d11"]),
            CycNum.from_json(data["d22"]),
            CycNum.from_json(data["u12_times_G12"]),
            CycNum.from_json(data["l21_times_G21"]),
        )


def graded_mul(A: GradedMatrix, B: GradedMatrix) -> GradedMatrix:
    A._check(B)
    g = A.g
    return GradedMatrix(
        A.weight,
        d11=A.d11 * B.d11 + A.u12 * B.l21 * g,
        d22=A.l21 * B.u12 * g + A.d22 * B.d22,
        u12=A.d11 * B.u12 + A.u12 * B.d22,
        l21=A.l21 * B.d11 + A.d22 * B.l21,
    )


def check_gates(k) -> Weight:
    k = Weight.of(k)
    if k.degenerate:
        raise DegenerateWeight(f"k = {k}: sin(theta) = 0, C undefined")
    if not k.stiller_valid:
        raise StillerGateError(
            f"k = {k} is congruent to 0, 4, 5 or 11 mod 12: (y1, y3) is not a fundamental system"
        )
    return k


def t_power(k, n: int) -> GradedMatrix:
    """rho(T)^n = [[1, 4i(1 - Z_n) G12], [0, Z_n]], valid for every integer n."""
    k = check_gates(k)
    c = constants(k)
    ctx = c.ctx
    z = c.Z(n)
    return GradedMatrix(k, ctx.one, z, 4 * c.i * (1 - z), ctx.zero)


def generators(k) -> tuple[GradedMatrix, GradedMatrix]:
    """(rho(T), rho(S))."""
    k = check_gates(k)
    c = constants(k)
    ctx = c.ctx
    rho_s = GradedMatrix(k, -ctx.one, ctx.one, ctx.zero, -4 * c.i)
    return t_power(k, 1), rho_s


def a_matrix(k, t: int) -> GradedMatrix:
    """A(t) = rho(T)^t rho(S) in closed form."""
    k = check_gates(k)
    c = constants(k)
    z, w = c.Z(t), c.W(t)
    return GradedMatrix(
        k,
        d11=-(2 * z + w) / 2,
        d22=z,
        u12=-4 * c.i * (z - 1),
        l21=-4 * c.i * z,
    )


def b_matrix(k, r: int, s: int) -> GradedMatrix:
    """B(r, s) = A(r) A(s)."""
    return graded_mul(a_matrix(k, r), a_matrix(k, s))


def m_matrix(k, t: int) -> GradedMatrix:
    """M(t) = rho((T^t S)^3) = -Z_t W_t / 2 * E + K_t * Mtilde_t."""
    if t == 0:
        raise ValueError("M(t) is defined for t != 0")
    k = check_gates(k)
    c = constants(k)
    z, w, kt = c.Z(t), c.W(t), c.K_t(t)
    lead = -z * w / 2
    return GradedMatrix(
        k,
        d11=lead + kt * (-(2 * z + w) / 8),
        d22=lead + kt * z / 4,
        u12=kt * (-c.i * (z - 1)),
        l21=kt * (-c.i * z),
    )


def m_tilde(k, t: int) -> GradedMatrix:
    k = check_gates(k)
    c = constants(k)
    z, w = c.Z(t), c.W(t)
    return GradedMatrix(k, -(2 * z + w) / 8, z / 4, -c.i * (z - 1), -c.i * z)


def n_tilde(k, r: int, s: int) -> GradedMatrix:
    k = check_gates(k)
    c = constants(k)
    zr, zs, wr, ws = c.Z(r), c.Z(s), c.W(r), c.W(s)
    half = c.ctx(1) / 2
    return GradedMatrix(
        k,
        d11=half * (half + (2 * (zs - 1) + ws) * (2 + wr) / 8),
        d22=half * (zr * (2 - ws) / 4),
        u12=half * (c.i * (2 * (zs - zr) + (zr - 1) * ws)),
        l21=half * (c.i * zr * ws),
    )


def n_matrix(k, r: int, s: int) -> GradedMatrix:
    """N(r, s) = rho((T^r S T^s S)^2) = -Z_r Z_s E + K_{r,s} * Ntilde_{r,s}."""
    if r == 1 or s == 1:
        raise ValueError("N(r, s) is stated for r != 1 and s != 1")
    k = check_gates(k)
    c = constants(k)
    nt = n_tilde(k, r, s)
    krs = c.K_rs(r, s)
    lead = -c.Z(r) * c.Z(s)
    return GradedMatrix(
        k,
        d11=lead + krs * nt.d11,
        d22=lead + krs * nt.d22,
        u12=krs * nt.u12,
        l21=krs * nt.l21,
    )


def word_representation(k, w: Word | str) -> GradedMatrix:
    """rho(w): the product of rho(T)^n and rho(S) in word order."""
    k = check_gates(k)
    if isinstance(w, str):
        w = parse_word(w)
    rho_s = generators(k)[1]
    result = GradedMatrix.identity(k)
    for letter, exp in w.letters:
        if letter == "T":
            result = graded_mul(result, t_power(k, exp))
        else:
            # rho(S)^2 = E
            result = graded_mul(result, rho_s) if exp % 2 else result
    return result
