"""Commutativity of the connection matrices M(t) and N(r, s).

Two independent routes are kept side by side: ``commutator`` computes
AB - BA exactly in the graded algebra, while the ``*_classify`` functions
decide commutation purely from the spectral constants.  The test-suite and
``kzmono verify oracle`` sweep both and require them to agree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .connection import GradedMatrix, check_gates, m_matrix, m_tilde, n_matrix, n_tilde
from .cyclotomic import CycNum
from .exceptions import ContextMismatch, CriterionInapplicable
from .spectral import constants

__all__ = [
    "CommuteVerdict",
    "GradedScalar",
    "commutator",
    "commutes",
    "pair_criterion",
    "thnnc_classify",
    "thmnc_classify",
    "mneqnm_data",
    "triangular_case",
    "cmcnc_entries",
    "tilde_commutator",
    "nn_oracle",
    "mn_oracle",
]

NN_CONDITIONS = {
    "1": "K_{r,s} K_{u,v} = 0",
    "2": "Z_s = Z_v and Z_r = Z_u",
    "3": "Z_s = Z_v = 1",
    "4": "Z_r = Z_u = 1",
    "5": "C = 2 and Z_s(Z_s-1) - Z_v(Z_v-1) = Z_s Z_v (Z_s - Z_v)",
}

MN_CONDITIONS = {
    "1": "K_t K_{r,s} = 0",
    "2": "Z_r = Z_s = 1",
    "3": "Z_t = Z_r = Z_s",
}

# Cases where the matrices commute although none of the listed conditions
# holds.  Only consulted with ``complete=True``; found by the oracle sweeps.
EXTRA_CONDITIONS = {
    "identity": "Z_r = Z_s = 1 or Z_u = Z_v = 1, so one factor is E although K != 0",
    "C=-2": "C = -2 (G12 G21 = 0) and Z_r Z_s = Z_u Z_v = 1 (NN) or Z_t = -1, Z_r Z_s = 1 (MN)",
}


@dataclass(frozen=True)
class CommuteVerdict:
    commutes: bool
    condition: str  # "1".."5", an EXTRA_CONDITIONS key, or "none"
    theorem: str  # "NN" or "MN"

    def __post_init__(self):
        if self.commutes != (self.condition != "none"):
            raise ValueError("verdict and condition label disagree")

    @property
    def description(self) -> str:
        table = NN_CONDITIONS if self.theorem == "NN" else MN_CONDITIONS
        if self.condition in EXTRA_CONDITIONS:
            return EXTRA_CONDITIONS[self.condition]
        return table.get(self.condition, "no listed condition holds")

    def to_json(self) -> dict:
        return {
            "commutes": self.commutes,
            "theorem": self.theorem,
            "condition": self.condition,
            "description": self.description,
        }


@dataclass(frozen=True)
class GradedScalar:
    """coeff * G12^e12 * G21^e21 with the grade kept symbolic."""

    coeff: CycNum
    grade: tuple[int, int] = (0, 0)

    def _same(self, other: "GradedScalar"):
        if self.grade != other.grade:
            raise ContextMismatch(f"grade {self.grade} vs {other.grade}")

    def __add__(self, other: "GradedScalar") -> "GradedScalar":
        self._same(other)
        return GradedScalar(self.coeff + other.coeff, self.grade)

    def __sub__(self, other: "GradedScalar") -> "GradedScalar":
        self._same(other)
        return GradedScalar(self.coeff - other.coeff, self.grade)

    def __neg__(self):
        return GradedScalar(-self.coeff, self.grade)

    def __mul__(self, other):
        if isinstance(other, GradedScalar):
            g = (self.grade[0] + other.grade[0], self.grade[1] + other.grade[1])
            return GradedScalar(self.coeff * other.coeff, g)
        return GradedScalar(self.coeff * other, self.grade)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, GradedScalar):
            g = (self.grade[0] - other.grade[0], self.grade[1] - other.grade[1])
            return GradedScalar(self.coeff / other.coeff, g)
        return GradedScalar(self.coeff / other, self.grade)

    def is_zero(self) -> bool:
        return self.coeff.is_zero()

    def collapse(self, g: CycNum) -> "GradedScalar":
        """Trade each G12*G21 pair for its exact value g."""
        m = min(self.grade)
        if m <= 0:
            return self
        return GradedScalar(self.coeff * g**m, (self.grade[0] - m, self.grade[1] - m))

    def grade_label(self) -> str:
        parts = []
        for name, e in zip(("G12", "G21"), self.grade):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts) or "1"

    def to_json(self) -> dict:
        return {"coeff": self.coeff.to_json(), "grade": self.grade_label()}


# -- the oracle ---------------------------------------------------------------


def commutator(A: GradedMatrix, B: GradedMatrix) -> GradedMatrix:
    """[A, B] = AB - BA, exactly.

    Written out entrywise (the diagonal products cancel), which is the same
    value as ``A @ B - B @ A`` at about half the cost.
    """
    A._check(B)
    da = A.d11 - A.d22
    db = B.d11 - B.d22
    c11 = (A.u12 * B.l21 - B.u12 * A.l21) * A.g
    return GradedMatrix(
        A.weight,
        d11=c11,
        d22=-c11,
        u12=A.u12 * (-db) + B.u12 * da,
        l21=A.l21 * db - B.l21 * da,
    )


def commutes(A: GradedMatrix, B: GradedMatrix) -> bool:
    return commutator(A, B).is_zero()


# -- criteria -----------------------------------------------------------------


def pair_criterion(A: GradedMatrix, B: GradedMatrix) -> bool:
    """2x2 criterion: with a21 b21 != 0, AB = BA iff
    a12/a21 = b12/b21 and (a11 - a22)/a21 = (b11 - b22)/b21.

    Both sides of the first ratio carry G12/G21 and both sides of the second
    carry 1/G21, so only the coefficient ratios are compared.
    """
    A._check(B)
    if A.l21.is_zero() or B.l21.is_zero():
        raise CriterionInapplicable("criterion needs nonzero (2,1) entries")
    first = A.u12 * B.l21 == B.u12 * A.l21
    second = (A.d11 - A.d22) * B.l21 == (B.d11 - B.d22) * A.l21
    return first and second


def thnnc_classify(k, r: int, s: int, u: int, v: int, complete: bool = False) -> CommuteVerdict:
    """Decide whether N(r, s) and N(u, v) commute from the listed conditions.

    The five conditions alone miss two families that the oracle finds; pass
    ``complete=True`` to test those as well after the listed ones.
    """
    for x in (r, s, u, v):
        if x == 1:
            raise ValueError("N(r, s) is stated for r, s != 1")
    k = check_gates(k)
    c = constants(k)
    zr, zs, zu, zv = c.Z(r), c.Z(s), c.Z(u), c.Z(v)
    if c.K_rs(r, s).is_zero() or c.K_rs(u, v).is_zero():
        label = "1"
    elif zs == zv and zr == zu:
        label = "2"
    elif zs.is_one() and zv.is_one():
        label = "3"
    elif zr.is_one() and zu.is_one():
        label = "4"
    elif c.C == 2 and (zs * (zs - 1) - zv * (zv - 1)) == zs * zv * (zs - zv):
        label = "5"
    elif complete and ((zr.is_one() and zs.is_one()) or (zu.is_one() and zv.is_one())):
        label = "identity"
    elif complete and c.C == -2 and (zr * zs).is_one() and (zu * zv).is_one():
        label = "C=-2"
    else:
        label = "none"
    return CommuteVerdict(label != "none", label, "NN")


def thmnc_classify(k, t: int, r: int, s: int, complete: bool = False) -> CommuteVerdict:
    """Decide whether M(t) and N(r, s) commute from the listed conditions."""
    if t == 0:
        raise ValueError("M(t) is defined for t != 0")
    if r == 1 or s == 1:
        raise ValueError("N(r, s) is stated for r, s != 1")
    k = check_gates(k)
    c = constants(k)
    zt, zr, zs = c.Z(t), c.Z(r), c.Z(s)
    if c.K_t(t).is_zero() or c.K_rs(r, s).is_zero():
        label = "1"
    elif zr.is_one() and zs.is_one():
        label = "2"
    elif zt == zr and zr == zs:
        label = "3"
    elif complete and c.C == -2 and zt == -1 and (zr * zs).is_one():
        label = "C=-2"
    else:
        label = "none"
    return CommuteVerdict(label != "none", label, "MN")


@dataclass(frozen=True)
class LinearSystem:
    """The 2x2 system A(s) X - A(v) Y = B(v) - B(s) with X = 1/Z_r, Y = 1/Z_u."""

    A1: tuple[GradedScalar, GradedScalar]  # (A1(s), A1(v)), grade G12/G21
    A2: tuple[GradedScalar, GradedScalar]  # grade 1/G21
    B1: tuple[GradedScalar, GradedScalar]
    B2: tuple[GradedScalar, GradedScalar]
    determinant: GradedScalar  # grade G12/G21^2
    case: int

    def residuals(self, X, Y) -> tuple[GradedScalar, GradedScalar]:
        (a1s, a1v), (a2s, a2v) = self.A1, self.A2
        (b1s, b1v), (b2s, b2v) = self.B1, self.B2
        return (a1s * X - a1v * Y - (b1v - b1s), a2s * X - a2v * Y - (b2v - b2s))

    def to_json(self) -> dict:
        pair = lambda xs: [x.to_json() for x in xs]  # noqa: E731
        return {
            "A1": pair(self.A1),
            "A2": pair(self.A2),
            "B1": pair(self.B1),
            "B2": pair(self.B2),
            "determinant": self.determinant.to_json(),
            "case": self.case,
        }


def mneqnm_data(k, s: int, v: int) -> LinearSystem:
    k = check_gates(k)
    c = constants(k)
    if c.Z(s).is_one() or c.Z(v).is_one():
        raise CriterionInapplicable("W_s W_v = 0: use triangular_case")
    C = c.C
    i = c.i
    ratio, inv21 = (1, -1), (0, -1)

    def parts(l):
        z, w = c.Z(l), c.W(l)
        a1 = GradedScalar(((2 - C) * z + C) / w, ratio)
        a2 = GradedScalar(((4 - C * C) * z + C * C) / (8 * i * w), inv21)
        b1 = GradedScalar((w - 2) / w, ratio)
        b2 = GradedScalar(((4 + C) * w - 4) / (8 * i * w), inv21)
        return a1, a2, b1, b2

    a1s, a2s, b1s, b2s = parts(s)
    a1v, a2v, b1v, b2v = parts(v)
    det = a1s * (-a2v) - (-a1v) * a2s
    if C == 2:
        case = 3
    elif c.Z(s) == c.Z(v):
        case = 2
    else:
        case = 1
    return LinearSystem((a1s, a1v), (a2s, a2v), (b1s, b1v), (b2s, b2v), det, case)


def triangular_case(k, r: int, s: int, u: int, v: int) -> bool:
    """Commutation when K_{r,s} K_{u,v} != 0 and Z_s = 1.

    N(r, s) is then upper triangular with (1, 0) as an eigenvector, so the
    pair commutes iff Z_v = 1, except that Z_r = Z_s = 1 makes N(r, s) = E.
    """
    k = check_gates(k)
    c = constants(k)
    if c.K_rs(r, s).is_zero() or c.K_rs(u, v).is_zero():
        raise CriterionInapplicable("needs K_{r,s} K_{u,v} != 0")
    if not c.Z(s).is_one():
        raise CriterionInapplicable("needs Z_s = 1")
    return c.Z(v).is_one() or c.Z(r).is_one()


def cmcnc_entries(k, t: int, r: int, s: int) -> tuple[GradedScalar, GradedScalar, GradedScalar]:
    """Closed-form entries c11, c12, c21 of [Mtilde_t, Ntilde_{r,s}] (c22 = -c11).

    c11 keeps its G12*G21 grade; ``collapse(g)`` turns it into the d11 slot
    of the graded commutator.
    """
    k = check_gates(k)
    c = constants(k)
    if c.K_t(t).is_zero() or c.K_rs(r, s).is_zero():
        raise CriterionInapplicable("tilde matrices undefined when K_t K_{r,s} = 0")
    zt, zr, zs = c.Z(t), c.Z(r), c.Z(s)
    wt, wr, ws = c.W(t), c.W(r), c.W(s)
    i = c.i
    c11 = (2 * zt * (zr - zs) + ws * (zt - zr)) / 2
    c12 = i * (
        4 * (1 + zt) * (zr - zs)
        - 4 * ws * (zr - zt)
        + 2 * wt * (zr - zs)
        + ws * wt * (1 - zr)
        - wr * ws * (1 - zt)
    ) / 16
    c21 = i * (4 * zt * (zr - zs) - zt * wr * ws + zr * ws * wt) / 16
    return GradedScalar(c11, (1, 1)), GradedScalar(c12, (1, 0)), GradedScalar(c21, (0, 1))


def tilde_commutator(k, t: int, r: int, s: int) -> GradedMatrix:
    """[Mtilde_t, Ntilde_{r,s}] by direct multiplication."""
    return commutator(m_tilde(k, t), n_tilde(k, r, s))


def nn_oracle(k, r: int, s: int, u: int, v: int) -> bool:
    return commutes(n_matrix(k, r, s), n_matrix(k, u, v))


def mn_oracle(k, t: int, r: int, s: int) -> bool:
    return commutes(m_matrix(k, t), n_matrix(k, r, s))
