"""Exact truncated q-expansions and the differential identities they satisfy.

A ``FracQSeries`` is q^rho * (a_0 + a_1 q + ... + a_L q^L) + O(q^(rho+L+1))
with rho and every a_n an exact rational.  The derivative is D = q d/dq
throughout.  Every check in this module returns a residual series that must
vanish identically in all of its known coefficients; there is no tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exceptions import ResonantWeight
from .spectral import Weight

__all__ = [
    "FracQSeries",
    "modular_qexp",
    "kz_series_solution",
    "kz_residual",
    "schwarzian_check",
    "normal_form_check",
    "pullback_check",
    "ramanujan_check",
    "hypergeometric_series",
    "local_exponents",
]


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("q-series coefficients must be exact")
    return x if isinstance(x, Fraction) else Fraction(x)


class FracQSeries:
    __slots__ = ("rho", "coeffs")

    def __init__(self, rho, coeffs: Sequence):
        rho = _frac(rho)
        cs = [_frac(c) for c in coeffs]
        if not cs:
            raise ValueError("a series needs at least one known coefficient")
        # keep a_0 != 0 unless the whole known part vanishes
        lead = next((i for i, c in enumerate(cs) if c), None)
        if lead:
            rho += lead
            cs = cs[lead:]
        self.rho = rho
        self.coeffs = tuple(cs)

    # -- basic facts ----------------------------------------------------------

    @property
    def order(self) -> int:
        """L: coefficients are known for q^rho .. q^(rho+L)."""
        return len(self.coeffs) - 1

    @property
    def precision(self) -> Fraction:
        """First exponent that is not known (the O-term)."""
        return self.rho + len(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def first_nonzero(self) -> tuple[Fraction, Fraction] | None:
        for n, c in enumerate(self.coeffs):
            if c:
                return self.rho + n, c
        return None

    def coefficient(self, exponent) -> Fraction:
        n = _frac(exponent) - self.rho
        if n.denominator != 1 or n < 0:
            if n < 0 and n.denominator == 1:
                return Fraction(0)
            raise KeyError(f"exponent {exponent} not on this series' lattice")
        n = int(n)
        if n >= len(self.coeffs):
            raise KeyError(f"q^{exponent} is beyond the known precision")
        return self.coeffs[n]

    def __repr__(self):
        terms = [f"{c}*q^{self.rho + n}" for n, c in enumerate(self.coeffs[:6]) if c]
        return f"FracQSeries({' + '.join(terms) or '0'} + O(q^{self.precision}))"

    def __eq__(self, other):
        if not isinstance(other, FracQSeries):
            return NotImplemented
        return self.rho == other.rho and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.rho, self.coeffs))

    @classmethod
    def constant(cls, c, order: int) -> "FracQSeries":
        return cls(0, [c] + [0] * order)

    def truncate(self, order: int) -> "FracQSeries":
        return FracQSeries(self.rho, self.coeffs[: order + 1])

    # -- arithmetic -----------------------------------------------------------

    def _lift(self, other) -> "FracQSeries":
        if isinstance(other, FracQSeries):
            return other
        return FracQSeries(0, [_frac(other)] + [0] * max(0, int(self.precision) + 1))

    def __add__(self, other) -> "FracQSeries":
        other = self._lift(other)
        shift = self.rho - other.rho
        if shift.denominator != 1:
            raise ValueError(f"cannot add series with exponents {self.rho} and {other.rho}")
        rho = min(self.rho, other.rho)
        prec = min(self.precision, other.precision)
        n = int(prec - rho)
        out = [Fraction(0)] * max(n, 1)
        for s in (self, other):
            off = int(s.rho - rho)
            for i, c in enumerate(s.coeffs):
                if off + i < n:
                    out[off + i] += c
        if n <= 0:
            raise ValueError("sum has no known coefficients")
        return FracQSeries(rho, out)

    __radd__ = __add__

    def __neg__(self):
        return FracQSeries(self.rho, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "FracQSeries":
        c = _frac(c)
        return FracQSeries(self.rho, [c * a for a in self.coeffs])

    def __mul__(self, other) -> "FracQSeries":
        if not isinstance(other, FracQSeries):
            return self.scale(other)
        rho = self.rho + other.rho
        # absolute precision of a product of truncated series
        prec = min(self.rho + other.precision, other.rho + self.precision)
        n = int(prec - rho)
        a, b = self.coeffs, other.coeffs
        out = []
        for m in range(n):
            acc = Fraction(0)
            for i in range(max(0, m - len(b) + 1), min(m, len(a) - 1) + 1):
                acc += a[i] * b[m - i]
            out.append(acc)
        return FracQSeries(rho, out)

    __rmul__ = __mul__

    def inverse(self) -> "FracQSeries":
        a = self.coeffs
        if not a[0]:
            raise ZeroDivisionError("cannot invert a series whose known part vanishes")
        inv0 = 1 / a[0]
        out = [inv0]
        for n in range(1, len(a)):
            acc = sum((a[i] * out[n - i] for i in range(1, n + 1)), Fraction(0))
            out.append(-acc * inv0)
        return FracQSeries(-self.rho, out)

    def __truediv__(self, other):
        if isinstance(other, FracQSeries):
            return self * other.inverse()
        return self.scale(1 / _frac(other))

    def D(self) -> "FracQSeries":
        """q d/dq."""
        return FracQSeries(self.rho, [(self.rho + n) * c for n, c in enumerate(self.coeffs)])

    def __pow__(self, alpha) -> "FracQSeries":
        """Power with exact exponent; non-integer powers need a_0 = 1."""
        alpha = _frac(alpha)
        a = self.coeffs
        if not a[0]:
            raise ValueError("power of a series with vanishing known part")
        if alpha.denominator != 1 and a[0] != 1:
            raise ValueError("fractional powers need leading coefficient 1")
        lead = a[0] ** int(alpha) if alpha.denominator == 1 else Fraction(1)
        # g = f^alpha satisfies f D g = alpha g D f; solve coefficientwise
        out = [lead]
        for n in range(1, len(a)):
            acc = Fraction(0)
            for j in range(1, n + 1):
                acc += (alpha * j - (n - j)) * a[j] * out[n - j]
            out.append(acc / (n * a[0]))
        return FracQSeries(self.rho * alpha, out)

    def compose(self, inner: "FracQSeries") -> "FracQSeries":
        """self(inner) for a power series self and inner of positive integer valuation."""
        if self.rho != 0:
            raise ValueError("outer series must be a plain power series")
        v = inner.rho
        if v.denominator != 1 or v < 1 or inner.is_zero():
            raise ValueError("inner series needs positive integer valuation")
        prec = min(v * (self.order + 1), inner.precision)
        n = int(prec)
        acc = FracQSeries(0, [self.coeffs[-1]] + [0] * (n - 1))
        for c in reversed(self.coeffs[:-1]):
            acc = (acc * inner).truncate_abs(n) + FracQSeries(0, [c] + [0] * (n - 1))
        return acc.truncate_abs(n)

    def truncate_abs(self, prec: int) -> "FracQSeries":
        keep = int(prec - self.rho)
        if keep >= len(self.coeffs):
            return self
        if keep <= 0:
            return FracQSeries(prec - 1, [0])
        return FracQSeries(self.rho, self.coeffs[:keep])

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "rho": str(self.rho),
            "coeffs": [str(c) for c in self.coeffs],
            "precision": str(self.precision),
        }


# -- named expansions -----------------------------------------------------------


@lru_cache(maxsize=None)
def _sigma(k: int, n: int) -> int:
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


@lru_cache(maxsize=None)
def _euler_product(order: int) -> FracQSeries:
    """prod_{n >= 1} (1 - q^n) through q^order, multiplied out directly."""
    poly = [0] * (order + 1)
    poly[0] = 1
    for n in range(1, order + 1):
        for m in range(order, n - 1, -1):
            poly[m] -= poly[m - n]
    return FracQSeries(0, poly)


def modular_qexp(name: str, order: int, e=None) -> FracQSeries:
    """E2, E4, E6, Delta, x_of_q or eta_pow (with exponent ``e``)."""
    if order < 1:
        raise ValueError("order must be at least 1")
    if name == "E2":
        return FracQSeries(0, [1] + [-24 * _sigma(1, n) for n in range(1, order + 1)])
    if name == "E4":
        return FracQSeries(0, [1] + [240 * _sigma(3, n) for n in range(1, order + 1)])
    if name == "E6":
        return FracQSeries(0, [1] + [-504 * _sigma(5, n) for n in range(1, order + 1)])
    if name == "eta_pow":
        if e is None:
            raise ValueError("eta_pow needs an exponent")
        e = _frac(e)
        body = _euler_product(order) ** e
        return FracQSeries(e / 24, body.coeffs)
    if name == "Delta":
        return modular_qexp("eta_pow", order, 24)
    if name == "x_of_q":
        # 1728 Delta / E4^3 has valuation 1; one extra term of each factor
        e4 = modular_qexp("E4", order)
        delta = modular_qexp("Delta", order)
        return (delta / (e4 * e4 * e4)).scale(1728).truncate(order)
    raise ValueError(f"unknown expansion {name!r}")


def local_exponents(k) -> tuple[Fraction, Fraction, Fraction]:
    """(lambda, mu, nu) = ((1+k)/6, 1/2, 1/3) of the hypergeometric equation."""
    w = Weight.of(k)
    return (w.value + 1) / 6, Fraction(1, 2), Fraction(1, 3)


# -- the KZ equation ------------------------------------------------------------


def _lambda(k: Weight) -> Fraction:
    return (k.value + 1) / 6


def _check_resonance(k: Weight):
    lam = _lambda(k)
    if lam.denominator == 1:
        raise ResonantWeight(
            f"k = {k}: indicial roots 0 and {lam} differ by an integer; logarithmic case unsupported"
        )


def kz_residual(f: FracQSeries, k, order: int | None = None) -> FracQSeries:
    """D^2 f - (k+1)/6 E2 D f + k(k+1)/12 (D E2) f."""
    w = Weight.of(k)
    L = order if order is not None else f.order
    e2 = modular_qexp("E2", L + 1)
    kk = w.value
    df = f.D()
    return df.D() - (e2 * df).scale((kk + 1) / 6) + (e2.D() * f).scale(kk * (kk + 1) / 12)


def kz_series_solution(k, branch, order: int) -> FracQSeries:
    """Frobenius solution q^branch (1 + sum a_n q^n) through relative order ``order``."""
    w = Weight.of(k)
    _check_resonance(w)
    lam = _lambda(w)
    rho = _frac(branch)
    if rho not in (0, lam):
        raise ValueError(f"branch must be 0 or (k+1)/6 = {lam}, got {rho}")
    kk = w.value
    e = modular_qexp("E2", order).coeffs
    a = [Fraction(1)]
    for n in range(1, order + 1):
        x = rho + n
        rhs = Fraction(0)
        for m in range(1, n + 1):
            rhs += lam * e[m] * (x - m) * a[n - m] - kk * (kk + 1) / 12 * m * e[m] * a[n - m]
        a.append(rhs / (x * x - lam * x))
    return FracQSeries(rho, a)


def schwarzian_check(k, order: int) -> FracQSeries:
    """S[F] + (k+1)^2/72 E4 with F the ratio of the two Frobenius solutions."""
    w = Weight.of(k)
    f0 = kz_series_solution(w, 0, order)
    f1 = kz_series_solution(w, _lambda(w), order)
    F = f1 / f0
    dF = F.D()
    L = dF.D() / dF  # (log F')'
    S = L.D() - (L * L).scale(Fraction(1, 2))
    e4 = modular_qexp("E4", order)
    return S + e4.scale((w.value + 1) ** 2 / 72)


@dataclass(frozen=True)
class NormalFormResidual:
    branch: Fraction
    u: FracQSeries
    h: FracQSeries
    laguerre_forsyth: FracQSeries
    riccati: FracQSeries

    def is_zero(self) -> bool:
        return self.laguerre_forsyth.is_zero() and self.riccati.is_zero()


def normal_form_check(k, order: int, branch=0) -> NormalFormResidual:
    """u = f / eta^(2(k+1)) and h = -2 u'/u for the chosen Frobenius branch."""
    w = Weight.of(k)
    kk = w.value
    f = kz_series_solution(w, branch, order)
    u = f * modular_qexp("eta_pow", order, -2 * (kk + 1))
    e4 = modular_qexp("E4", order)
    lf = u.D().D() - (e4 * u).scale((kk + 1) ** 2 / 144)
    h = (u.D() / u).scale(-2)
    ric = h.D() - (h * h).scale(Fraction(1, 2)) + e4.scale((kk + 1) ** 2 / 72)
    return NormalFormResidual(_frac(branch), u, h, lf, ric)


def hypergeometric_series(a, b, c, order: int) -> FracQSeries:
    """sum_n (a)_n (b)_n / ((c)_n n!) x^n as a power series in x."""
    a, b, c = _frac(a), _frac(b), _frac(c)
    if c.denominator == 1 and c <= 0:
        raise ValueError(f"c = {c} is a non-positive integer")
    t = [Fraction(1)]
    for n in range(order):
        t.append(t[-1] * (a + n) * (b + n) / ((c + n) * (n + 1)))
    return FracQSeries(0, t)


def pullback_check(k, order: int) -> FracQSeries:
    """KZ residual of E4^(k/4) * 2F1(a, b; c; x(q)) with the KZ parameters."""
    w = Weight.of(k)
    _check_resonance(w)
    kk = w.value
    a, b, c = -kk / 12, -(kk - 4) / 12, -(kk - 5) / 6
    x = modular_qexp("x_of_q", order)
    y1 = hypergeometric_series(a, b, c, order).compose(x)
    f = modular_qexp("E4", order) ** (kk / 4) * y1
    return kz_residual(f, w, order)


def ramanujan_check(order: int) -> FracQSeries:
    """D E2 - (E2^2 - E4)/12."""
    e2 = modular_qexp("E2", order)
    e4 = modular_qexp("E4", order)
    return e2.D() - (e2 * e2 - e4).scale(Fraction(1, 12))
