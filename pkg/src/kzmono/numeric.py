"""Floating-point channel: Gamma, 2F1 and the numerically assembled monodromy.

Nothing here feeds a decision.  The exact modules decide; this module only
rebuilds the same matrices from Gamma-function connection data so the two
channels can be compared.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .connection import GradedMatrix, check_gates
from .exceptions import DegenerateWeight, GammaPole
from .spectral import Weight

__all__ = [
    "complex_gamma",
    "rgamma",
    "GammaConstants",
    "gamma_constants",
    "HypergeomParams",
    "hyp2f1",
    "connection_matrix",
    "local_solutions",
    "numeric_generators",
    "embed",
]

# Lanczos approximation, g = 7, nine terms.  Relative error stays below
# about 2e-15 for Re z >= 1/2 and |z| <= 50 (measured against mpmath in the
# test-suite); the reflection formula covers the left half-plane.
_LANCZOS_G = 7
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_POLE_TOL = 1e-12


def _exact_pole(z) -> int | None:
    if isinstance(z, (int, Fraction)):
        z = Fraction(z)
        if z.denominator == 1 and z <= 0:
            return int(z)
        return None
    z = complex(z)
    n = round(z.real)
    if n <= 0 and abs(z.imag) < _POLE_TOL and abs(z.real - n) < _POLE_TOL:
        return n
    return None


def _sin_pi(z: complex) -> complex:
    # reduce first so sin(pi z) keeps relative accuracy near the integers
    shift = 2 * round(z.real / 2)
    return cmath.sin(math.pi * (z - shift))


def complex_gamma(z) -> complex:
    """Gamma(z); raises GammaPole at the non-positive integers."""
    pole = _exact_pole(z)
    if pole is not None:
        raise GammaPole(pole)
    z = complex(z) if not isinstance(z, Fraction) else complex(float(z))
    if z.real < 0.5:
        return math.pi / (_sin_pi(z) * complex_gamma(1 - z))
    z -= 1
    x = _LANCZOS[0]
    for i in range(1, _LANCZOS_G + 2):
        x += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return cmath.sqrt(2 * math.pi) * cmath.exp((z + 0.5) * cmath.log(t) - t) * x


def rgamma(z) -> complex:
    """1/Gamma(z), exactly zero at the poles."""
    if _exact_pole(z) is not None:
        return 0j
    return 1 / complex_gamma(z)


@dataclass(frozen=True)
class HypergeomParams:
    a: Fraction
    b: Fraction
    c: Fraction
    local_exponents: tuple[Fraction, Fraction, Fraction] | None = None

    @classmethod
    def from_weight(cls, k) -> "HypergeomParams":
        w = Weight.of(k)
        kk = w.value
        lam = (1 + kk) / 6
        return cls(-kk / 12, -(kk - 4) / 12, -(kk - 5) / 6, (lam, Fraction(1, 2), Fraction(1, 3)))

    @classmethod
    def of(cls, a, b, c) -> "HypergeomParams":
        return cls(Fraction(a), Fraction(b), Fraction(c))


@dataclass(frozen=True)
class GammaConstants:
    G12: float
    G21: float
    B: float
    B_is_zero: bool  # decided from the exact Gamma arguments
    pole_rule: bool  # the integer congruence rule k = 0, 4 mod 12

    def to_json(self) -> dict:
        return {"G12": self.G12, "G21": self.G21, "B": self.B, "B_is_zero": self.B_is_zero}


def gamma_constants(k) -> GammaConstants:
    w = Weight.of(k)
    if w.degenerate:
        raise DegenerateWeight(f"k = {w}: sin(theta) = 0")
    kk = w.value
    sp = math.sqrt(math.pi)
    g12 = sp * complex_gamma((1 + kk) / 6) * rgamma((2 + kk) / 12) * rgamma((6 + kk) / 12) / 4
    g21 = sp * complex_gamma((5 - kk) / 6) * rgamma((6 - kk) / 12) * rgamma((10 - kk) / 12) / 2
    p = HypergeomParams.from_weight(w)
    B = complex_gamma(p.c) * complex_gamma(p.a + p.b - p.c) * rgamma(p.a) * rgamma(p.b)
    b_zero = _exact_pole(p.a) is not None or _exact_pole(p.b) is not None
    rule = w.q == 1 and w.p % 12 in (0, 4)
    return GammaConstants(g12.real, g21.real, B.real, b_zero, rule)


def hyp2f1(params: HypergeomParams, x: complex, tol: float = 1e-16, max_terms: int = 10000) -> complex:
    """Direct Gauss series, valid in the zone |x| <= 0.75."""
    a, b, c = (float(params.a), float(params.b), float(params.c))
    if _exact_pole(params.c) is not None:
        raise GammaPole(int(params.c))
    x = complex(x)
    if abs(x) > 0.75:
        raise ValueError(f"|x| = {abs(x):.3f} is outside the direct-series zone")
    term = 1 + 0j
    total = term
    for n in range(max_terms):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * x
        total += term
        if abs(term) <= tol * max(1.0, abs(total)):
            return total
    raise ArithmeticError("hypergeometric series did not converge")


def connection_matrix(params: HypergeomParams) -> np.ndarray:
    """P with y1 = P11 y3 + P12 y4 and y2 = P21 y3 + P22 y4."""
    a, b, c = params.a, params.b, params.c
    if c.denominator == 1 or (c - a - b).denominator == 1:
        raise ValueError("logarithmic connection unsupported: c or c-a-b is an integer")
    g = complex_gamma
    r = rgamma
    return np.array(
        [
            [g(c) * g(c - a - b) * r(c - a) * r(c - b), g(c) * g(a + b - c) * r(a) * r(b)],
            [
                g(2 - c) * g(c - a - b) * r(1 - a) * r(1 - b),
                g(2 - c) * g(a + b - c) * r(a - c + 1) * r(b - c + 1),
            ],
        ],
        dtype=complex,
    )


def local_solutions(params: HypergeomParams, x: float) -> tuple[complex, complex, complex, complex]:
    """y1..y4 at a real point 0 < x < 1 with both |x|, |1-x| in the series zone."""
    a, b, c = params.a, params.b, params.c
    hp = HypergeomParams.of
    y1 = hyp2f1(params, x)
    y2 = x ** (1 - float(c)) * hyp2f1(hp(a - c + 1, b - c + 1, 2 - c), x)
    y3 = hyp2f1(hp(a, b, a + b - c + 1), 1 - x)
    y4 = (1 - x) ** float(c - a - b) * hyp2f1(hp(c - a, c - b, c - a - b + 1), 1 - x)
    return y1, y2, y3, y4


def numeric_generators(k) -> tuple[np.ndarray, np.ndarray]:
    """rho(T), rho(S) on the basis (y1, i y3), assembled from the connection data."""
    w = check_gates(k)
    p = HypergeomParams.from_weight(w)
    P = connection_matrix(p)
    R = np.linalg.inv(P.T)  # (y3, y4) = (y1, y2) R
    basis = np.array([[1, 1j * R[0, 0]], [0, 1j * R[1, 0]]])
    mono0 = np.diag([1, cmath.exp(2j * math.pi * float(1 - p.c))])
    rho_t = np.linalg.inv(basis) @ mono0 @ basis
    at_one = P.T @ basis
    mono1 = np.diag([1, cmath.exp(2j * math.pi * float(p.c - p.a - p.b))])
    rho_s = np.linalg.inv(at_one) @ mono1 @ at_one
    return rho_t, rho_s


def embed(m: GradedMatrix, G12: float, G21: float) -> np.ndarray:
    """Complex 2x2 matrix of a graded matrix at numeric G12, G21."""
    return np.array(
        [
            [m.d11.to_complex(), m.u12.to_complex() * G12],
            [m.l21.to_complex() * G21, m.d22.to_complex()],
        ],
        dtype=complex,
    )
