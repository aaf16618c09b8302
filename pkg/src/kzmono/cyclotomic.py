"""Exact arithmetic in the cyclotomic field Q(zeta_n).

Elements are stored as rational polynomials in zeta reduced modulo the n-th
cyclotomic polynomial, so every element has a unique canonical form and the
zero test is a coefficient check.  The polynomial kernels are FLINT's
``fmpq_poly``; everything above them (the field context, the cyclotomic
polynomial, inversion) is done here.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence

import flint

from .exceptions import ContextMismatch

__all__ = [
    "FieldContext",
    "CycNum",
    "make_field",
    "root",
    "arith",
    "cyclotomic_polynomial",
]


@lru_cache(maxsize=None)
def _cyclotomic_fmpz(n: int) -> flint.fmpz_poly:
    # x^n - 1 divided by every Phi_d, d | n, d < n; each division must be exact
    num = flint.fmpz_poly([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            quo, rem = divmod(num, _cyclotomic_fmpz(d))
            if rem != 0:
                raise ArithmeticError(f"Phi_{d} does not divide x^{n} - 1 exactly")
            num = quo
    return num


def cyclotomic_polynomial(n: int) -> list[int]:
    """Integer coefficients of Phi_n, constant term first."""
    if n < 1:
        raise ValueError("n must be positive")
    return [int(c) for c in _cyclotomic_fmpz(n).coeffs()]


class FieldContext:
    """The field Q(zeta_n) with 4 | n, so that i = zeta_n^(n/4) is available.

    Contexts are immutable and interned by ``make_field``; compare them by
    identity or by ``n``.
    """

    __slots__ = ("n", "phi_n", "degree", "_modulus", "_roots", "_zeta")

    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"conductor must be positive, got {n}")
        if n % 4:
            raise ValueError(f"conductor {n} is not divisible by 4; i would not lie in Q(zeta_{n})")
        self.n = n
        self.phi_n = tuple(cyclotomic_polynomial(n))
        self.degree = len(self.phi_n) - 1
        self._modulus = flint.fmpq_poly(list(self.phi_n))
        self._roots: dict[int, CycNum] = {}
        self._zeta = cmath.exp(2j * math.pi / n)

    def __repr__(self):
        return f"FieldContext(n={self.n})"

    def __reduce__(self):
        return (make_field, (self.n,))

    @property
    def zero(self) -> "CycNum":
        return CycNum._raw(self, flint.fmpq_poly())

    @property
    def one(self) -> "CycNum":
        return CycNum._raw(self, flint.fmpq_poly([1]))

    @property
    def i(self) -> "CycNum":
        return self.root(self.n // 4)

    def root(self, e: int) -> "CycNum":
        """zeta_n ** e, with e taken modulo n."""
        e %= self.n
        cached = self._roots.get(e)
        if cached is None:
            poly = flint.fmpq_poly([0] * e + [1]) % self._modulus
            cached = self._roots[e] = CycNum._raw(self, poly)
        return cached

    def __call__(self, value) -> "CycNum":
        """Coerce a rational, a coefficient sequence or a CycNum into this field."""
        if isinstance(value, CycNum):
            if value.ctx is not self:
                raise ContextMismatch(f"element of Q(zeta_{value.ctx.n}) used in Q(zeta_{self.n})")
            return value
        if isinstance(value, (int, Rational)):
            return CycNum._raw(self, flint.fmpq_poly([_fmpq(value)]))
        return CycNum.from_coeffs(self, value)


def _fmpq(x) -> flint.fmpq:
    if isinstance(x, flint.fmpq):
        return x
    if isinstance(x, int):
        return flint.fmpq(x)
    if isinstance(x, str):
        x = Fraction(x)
    if isinstance(x, Rational):
        return flint.fmpq(int(x.numerator), int(x.denominator))
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


@lru_cache(maxsize=None)
def make_field(n: int) -> FieldContext:
    """Return the (shared) context for Q(zeta_n)."""
    return FieldContext(n)


class CycNum:
    """An element of Q(zeta_n) in canonical form modulo Phi_n."""

    __slots__ = ("ctx", "_poly", "_hash")

    def __init__(self, ctx: FieldContext, coeffs: Iterable = ()):
        self.ctx = ctx
        self._poly = flint.fmpq_poly([_fmpq(c) for c in coeffs]) % ctx._modulus
        self._hash = None

    @classmethod
    def _raw(cls, ctx: FieldContext, poly: flint.fmpq_poly) -> "CycNum":
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj._poly = poly
        obj._hash = None
        return obj

    @classmethod
    def from_coeffs(cls, ctx: FieldContext, coeffs: Sequence) -> "CycNum":
        return cls(ctx, coeffs)

    # -- inspection ---------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        """Canonical coordinates on 1, zeta, ..., zeta^(phi(n)-1)."""
        raw = self._poly.coeffs()
        out = [Fraction(int(c.p), int(c.q)) for c in raw]
        out.extend([Fraction(0)] * (self.ctx.degree - len(out)))
        return tuple(out)

    def is_zero(self) -> bool:
        return self._poly.is_zero()

    def is_one(self) -> bool:
        return self._poly == 1

    def is_rational(self) -> bool:
        return self._poly.degree() <= 0

    def __bool__(self):
        return not self._poly.is_zero()

    def __eq__(self, other):
        if isinstance(other, CycNum):
            return self.ctx is other.ctx and self._poly == other._poly
        if isinstance(other, (int, Rational)):
            return self._poly == flint.fmpq_poly([_fmpq(other)])
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx.n, str(self._poly)))
        return self._hash

    def __repr__(self):
        return f"CycNum(n={self.ctx.n}, {self._poly.str(var='z')})"

    def __str__(self):
        return self._poly.str(var="z")

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> flint.fmpq_poly | None:
        if isinstance(other, CycNum):
            if other.ctx is not self.ctx:
                raise ContextMismatch(
                    f"Q(zeta_{self.ctx.n}) and Q(zeta_{other.ctx.n}) elements cannot be combined"
                )
            return other._poly
        if isinstance(other, (int, Rational, flint.fmpq)):
            return flint.fmpq_poly([_fmpq(other)])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycNum._raw(self.ctx, self._poly + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycNum._raw(self.ctx, self._poly - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycNum._raw(self.ctx, o - self._poly)

    def __neg__(self):
        return CycNum._raw(self.ctx, -self._poly)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return CycNum._raw(self.ctx, self._poly * _fmpq(other))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycNum._raw(self.ctx, (self._poly * o) % self.ctx._modulus)

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        """Multiplicative inverse via the extended gcd with Phi_n."""
        if self._poly.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_%d)" % self.ctx.n)
        g, s, _ = self._poly.xgcd(self.ctx._modulus)
        # Phi_n is irreducible, so the gcd is a nonzero constant
        if g.degree() != 0:
            raise ArithmeticError("Phi_%d is not irreducible?" % self.ctx.n)
        return CycNum._raw(self.ctx, (s / g[0]) % self.ctx._modulus)

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return CycNum._raw(self.ctx, self._poly / _fmpq(other))
        if isinstance(other, CycNum):
            self._coerce(other)
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycNum._raw(self.ctx, o) * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ctx.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> "CycNum":
        """Complex conjugate, i.e. the automorphism zeta -> zeta^-1."""
        acc = self.ctx.zero
        for j, c in enumerate(self._poly.coeffs()):
            if c != 0:
                acc = acc + self.ctx.root(-j) * c
        return acc

    # -- numerics -----------------------------------------------------------

    def to_complex(self, precision: float = 1e-12) -> complex:
        """Evaluate at zeta_n = exp(2 pi i / n).

        Double precision suffices for ``precision >= 1e-13``; tighter requests
        are evaluated with mpmath at a matching working precision.
        """
        raw = self._poly.coeffs()
        if not raw:
            return 0j
        if precision >= 1e-13:
            z = self.ctx._zeta
            acc = 0j
            for c in reversed(raw):
                acc = acc * z + (int(c.p) / int(c.q))
            return complex(acc)
        import mpmath

        dps = int(-math.log10(precision)) + 10
        with mpmath.workdps(dps):
            z = mpmath.expjpi(mpmath.mpf(2) / self.ctx.n)
            acc = mpmath.mpc(0)
            for c in reversed(raw):
                acc = acc * z + mpmath.mpf(int(c.p)) / int(c.q)
            return complex(acc)

    def to_json(self) -> dict:
        return {"n": self.ctx.n, "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "CycNum":
        ctx = make_field(int(data["n"]))
        return cls(ctx, [Fraction(s) for s in data["coeffs"]])


def root(ctx: FieldContext, e: int) -> CycNum:
    return ctx.root(e)


def arith(op: str, x: CycNum, y: CycNum) -> CycNum:
    """Apply ``op`` in {"add", "sub", "mul", "div"} to two elements of one field."""
    if not isinstance(x, CycNum) or not isinstance(y, CycNum):
        raise TypeError("arith expects two CycNum operands")
    if x.ctx is not y.ctx:
        raise ContextMismatch(f"Q(zeta_{x.ctx.n}) vs Q(zeta_{y.ctx.n})")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")
