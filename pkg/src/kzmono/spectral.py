"""Weights and their spectral constants in the ambient field Q(zeta_{12q}).

For k = p/q put theta = (1 + k) pi / 6.  With zeta = zeta_{12q}:

    e^{i theta} = zeta^(p+q),   i = zeta^(3q),   Z_l = e^{2 l i theta} = zeta^(2 l (p+q)),
    C = 1 / sin(theta),         W_l = (Z_l - 1) C,
    K_t = W_t^2 + 4 Z_t,        K_{r,s} = W_r W_s + 4 (Z_r + Z_s).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from .cyclotomic import CycNum, FieldContext, make_field
from .exceptions import DegenerateWeight

__all__ = [
    "Weight",
    "SpectralConstants",
    "spectral_params",
    "cap_k_t",
    "cap_k_rs",
    "constants",
]

_WEIGHT_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


@dataclass(frozen=True)
class Weight:
    """A rational weight k = p/q, always stored in lowest terms with q > 0."""

    p: int
    q: int = 1

    def __post_init__(self):
        p, q = int(self.p), int(self.q)
        if q == 0:
            raise ValueError("weight denominator must be nonzero")
        if q < 0:
            p, q = -p, -q
        g = math.gcd(p, q)
        object.__setattr__(self, "p", p // g)
        object.__setattr__(self, "q", q // g)

    @classmethod
    def parse(cls, text: str) -> "Weight":
        """Parse "p/q" or "p"; decimals are rejected to keep everything exact."""
        m = _WEIGHT_RE.match(str(text))
        if not m:
            raise ValueError(f"weight must be an exact fraction like '13/6', got {text!r}")
        p = int(m.group(1))
        q = int(m.group(2)) if m.group(2) else 1
        if q == 0:
            raise ValueError("weight denominator must be nonzero")
        return cls(p, q)

    @classmethod
    def of(cls, value) -> "Weight":
        if isinstance(value, Weight):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        if isinstance(value, float):
            raise TypeError("weights must be exact; pass a Fraction or a 'p/q' string")
        f = Fraction(value)
        return cls(f.numerator, f.denominator)

    def __str__(self):
        return str(self.p) if self.q == 1 else f"{self.p}/{self.q}"

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)

    @property
    def conductor(self) -> int:
        return 12 * self.q

    @property
    def field(self) -> FieldContext:
        return make_field(self.conductor)

    @property
    def degenerate(self) -> bool:
        """sin(theta) = 0, i.e. (p + q) / (6q) is an integer."""
        return (self.p + self.q) % (6 * self.q) == 0

    @property
    def stiller_valid(self) -> bool:
        """(y1, y3) is a fundamental system.

        For integer k this is k not congruent to 0, 4, 5, 11 mod 12.  For
        non-integer k no Gamma pole can occur and sin(theta) never vanishes.
        """
        if self.q == 1:
            return self.p % 12 not in (0, 4, 5, 11)
        return not self.degenerate

    @property
    def theta_over_pi(self) -> Fraction:
        return Fraction(self.p + self.q, 6 * self.q)


@dataclass(frozen=True)
class SpectralConstants:
    sin_theta: CycNum
    C: CycNum
    Z_l: CycNum
    W_l: CycNum


class _Constants:
    """Per-weight cache of the exact constants; shared through ``constants()``."""

    def __init__(self, k: Weight):
        self.k = k
        self.ctx = k.field
        self.a = k.p + k.q  # e^{i theta} = zeta^a
        self._Z: dict[int, CycNum] = {}
        self._W: dict[int, CycNum] = {}
        self._Kt: dict[int, CycNum] = {}
        self._Krs: dict[tuple[int, int], CycNum] = {}

    @cached_property
    def i(self) -> CycNum:
        return self.ctx.root(3 * self.k.q)

    @cached_property
    def sin_theta(self) -> CycNum:
        return (self.ctx.root(self.a) - self.ctx.root(-self.a)) / (2 * self.i)

    @cached_property
    def C(self) -> CycNum:
        if self.k.degenerate:
            raise DegenerateWeight(f"k = {self.k}: sin(theta) = 0, C undefined")
        return self.sin_theta.inverse()

    @cached_property
    def g(self) -> CycNum:
        """G12 * G21 = (C/2 + 1) / 16."""
        return (self.C / 2 + 1) / 16

    @cached_property
    def order(self) -> int:
        """Multiplicative order of Z_1, so Z_l depends only on l modulo it."""
        return self.ctx.n // math.gcd(2 * self.a, self.ctx.n)

    def e_i_theta(self, m: int = 1) -> CycNum:
        return self.ctx.root(m * self.a)

    def cos(self, m: int) -> CycNum:
        """cos(m theta)."""
        return (self.ctx.root(m * self.a) + self.ctx.root(-m * self.a)) / 2

    def sin(self, m: int) -> CycNum:
        return (self.ctx.root(m * self.a) - self.ctx.root(-m * self.a)) / (2 * self.i)

    def Z(self, l: int) -> CycNum:
        l %= self.order
        z = self._Z.get(l)
        if z is None:
            z = self._Z[l] = self.ctx.root(2 * l * self.a)
        return z

    def Z_is_one(self, l: int) -> bool:
        return l % self.order == 0

    def W(self, l: int) -> CycNum:
        l %= self.order
        w = self._W.get(l)
        if w is None:
            w = self._W[l] = (self.Z(l) - 1) * self.C
        return w

    def K_t(self, t: int) -> CycNum:
        t %= self.order
        v = self._Kt.get(t)
        if v is None:
            v = self._Kt[t] = self.W(t) * self.W(t) + 4 * self.Z(t)
        return v

    def K_rs(self, r: int, s: int) -> CycNum:
        key = (r % self.order, s % self.order)
        v = self._Krs.get(key)
        if v is None:
            v = self._Krs[key] = self.W(r) * self.W(s) + 4 * (self.Z(r) + self.Z(s))
        return v


@lru_cache(maxsize=256)
def constants(k: Weight) -> _Constants:
    """Shared constant cache for weight ``k``."""
    return _Constants(k)


def _nondegenerate(k) -> _Constants:
    k = Weight.of(k)
    if k.degenerate:
        raise DegenerateWeight(f"k = {k}: sin(theta) = 0, C undefined")
    return constants(k)


def spectral_params(k, l: int) -> SpectralConstants:
    c = _nondegenerate(k)
    return SpectralConstants(sin_theta=c.sin_theta, C=c.C, Z_l=c.Z(l), W_l=c.W(l))


def cap_k_t(k, t: int) -> CycNum:
    return _nondegenerate(k).K_t(t)


def cap_k_rs(k, r: int, s: int) -> CycNum:
    return _nondegenerate(k).K_rs(r, s)
