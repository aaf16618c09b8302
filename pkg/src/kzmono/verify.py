"""Verification suites shared by the CLI and the test-suite.

Each suite returns a ``SuiteResult``: a list of named checks, each with a
pass flag and a short detail string, in a deterministic order.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from .commute import commutator, thmnc_classify, thnnc_classify
from .connection import GradedMatrix, a_matrix, generators, graded_mul, m_matrix, n_matrix, t_power
from .numeric import embed, gamma_constants, numeric_generators
from .exceptions import ResonantWeight
from .qseries import (
    FracQSeries,
    kz_residual,
    kz_series_solution,
    normal_form_check,
    pullback_check,
    ramanujan_check,
    schwarzian_check,
)
from .search import rseqpm12_enumerate
from .sl2words import (
    closed_form_trsts2,
    closed_form_tts3,
    compare_closed_forms,
    eval_word,
    gamma_membership,
    trsts2_word,
    tts3_word,
)
from .spectral import Weight, constants

__all__ = [
    "Check",
    "SuiteResult",
    "weight_grid",
    "lemma_sweeps",
    "relation_suite",
    "rseqpm12_sweep",
    "oracle_sweep",
    "qcheck_suite",
]

NUMERIC_TOL = 1e-9


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class SuiteResult:
    suite: str
    checks: list[Check] = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
            "info": self.info,
        }


def weight_grid(max_den: int = 8, max_num: int = 24, stiller_only: bool = True) -> list[Weight]:
    """Reduced a/b with 1 <= b <= max_den, |a| <= max_num, non-degenerate."""
    out = []
    for b in range(1, max_den + 1):
        for a in range(-max_num, max_num + 1):
            if gcd(a, b) != 1:
                continue
            w = Weight(a, b)
            if w.degenerate or (stiller_only and not w.stiller_valid):
                continue
            out.append(w)
    return sorted(set(out), key=lambda w: (w.value, w.q))


# -- SL2(Z) congruences -------------------------------------------------------


def lemma_sweeps(t_max: int = 200, rs_lo: int = -10, rs_hi: int = 10) -> SuiteResult:
    res = SuiteResult("lemmas")
    bad_t = []
    tts3_relations = Counter()
    for t in range(1, t_max + 1):
        m = eval_word(tts3_word(t))
        if not gamma_membership(m, t + 1).projective():
            bad_t.append(t)
        tts3_relations[compare_closed_forms(m, closed_form_tts3(t))["relation"]] += 1
    res.add(f"(T^t S)^3 = ±E mod t+1 for 1 <= t <= {t_max}", not bad_t, f"failures: {bad_t[:10]}")

    bad_rs = []
    trsts2 = Counter()
    flipped = Counter()
    count = 0
    for r in range(rs_lo, rs_hi + 1):
        for s in range(rs_lo, rs_hi + 1):
            if r == 1 or s == 1 or abs(r * s - 2) < 2:
                continue
            count += 1
            m = eval_word(trsts2_word(r, s))
            if not gamma_membership(m, abs(r * s - 2)).projective():
                bad_rs.append((r, s))
            cmp = compare_closed_forms(m, closed_form_trsts2(r, s))
            trsts2[cmp["relation"]] += 1
            flipped[",".join(cmp["sign_flipped_entries"]) or "-"] += 1
    res.add(
        f"(T^r S T^s S)^2 = ±E mod |rs-2| for r, s in [{rs_lo}, {rs_hi}] minus 1",
        not bad_rs,
        f"{count} pairs, failures: {bad_rs[:10]}",
    )
    res.info["tts3_closed_form_vs_direct"] = dict(sorted(tts3_relations.items()))
    res.info["trsts2_closed_form_vs_direct"] = dict(sorted(trsts2.items()))
    res.info["trsts2_sign_flipped_entries"] = dict(sorted(flipped.items()))
    return res


# -- group relations and the numeric channel ---------------------------------


def relation_suite(k, t_range=range(-4, 5), rs_range=range(-3, 5), numeric: bool = True) -> SuiteResult:
    """Exact group relations at k; with ``numeric`` also the floating-point channel."""
    w = Weight.of(k)
    c = constants(w)
    res = SuiteResult("relations", info={"k": str(w)})
    T, S = generators(w)
    E = GradedMatrix.identity(w)
    res.add("rho(S)^2 = E", graded_mul(S, S) == E)
    ts = graded_mul(T, S)
    scalar = -c.i * c.e_i_theta(3)
    res.add("(rho(T) rho(S))^3 = -i e^{3 i theta} E", ts**3 == GradedMatrix.scalar(w, scalar))

    bad_m, bad_a, bad_n = [], [], []
    for t in t_range:
        A = a_matrix(w, t)
        if graded_mul(t_power(w, t), S) != A:
            bad_a.append(t)
        if A.trace() != -c.W(t) / 2 or A.det() != -c.Z(t):
            bad_a.append(t)
        if t and m_matrix(w, t) != A**3:
            bad_m.append(t)
    for r in rs_range:
        for s in rs_range:
            if r == 1 or s == 1:
                continue
            if n_matrix(w, r, s) != graded_mul(a_matrix(w, r), a_matrix(w, s)) ** 2:
                bad_n.append((r, s))
    res.add("A(t) = rho(T)^t rho(S), tr A = -W_t/2, det A = -Z_t", not bad_a, f"failures: {bad_a}")
    res.add("M(t) = A(t)^3", not bad_m, f"failures: {bad_m}")
    res.add("N(r,s) = (A(r) A(s))^2", not bad_n, f"failures: {bad_n}")
    if not numeric:
        return res

    g = gamma_constants(w)
    dev = abs(16 * g.G12 * g.G21 - (c.C.to_complex() / 2 + 1))
    res.add("|16 G12 G21 - (C/2 + 1)| < 1e-12", dev < 1e-12, f"{dev:.3e}")
    nT, nS = numeric_generators(w)
    eT, eS = embed(T, g.G12, g.G21), embed(S, g.G12, g.G21)
    d_gen = max(np.abs(nT - eT).max(), np.abs(nS - eS).max())
    res.add("numeric generators vs exact", d_gen < NUMERIC_TOL, f"{d_gen:.3e}")
    d_s2 = np.abs(nS @ nS - np.eye(2)).max()
    res.add("numeric rho(S)^2 = E", d_s2 < 1e-10, f"{d_s2:.3e}")
    d_mono = abs(nT[1, 1] - np.exp(1j * math.pi * float(w.value + 1) / 3))
    res.add("rho(T)_22 = e^{(k+1) pi i / 3}", d_mono < 1e-10, f"{d_mono:.3e}")
    d_m = 0.0
    for t in t_range:
        if t == 0:
            continue
        num = np.linalg.matrix_power(np.linalg.matrix_power(nT, t) @ nS, 3)
        d_m = max(d_m, np.abs(num - embed(m_matrix(w, t), g.G12, g.G21)).max())
    res.add("numeric (rho(T)^t rho(S))^3 vs M(t)", d_m < 1e-8, f"{d_m:.3e}")
    d_n = 0.0
    for r in rs_range:
        for s in rs_range:
            if r == 1 or s == 1:
                continue
            ar = np.linalg.matrix_power(nT, r) @ nS
            as_ = np.linalg.matrix_power(nT, s) @ nS
            num = np.linalg.matrix_power(ar @ as_, 2)
            d_n = max(d_n, np.abs(num - embed(n_matrix(w, r, s), g.G12, g.G21)).max())
    res.add("numeric (rho(T)^r rho(S) rho(T)^s rho(S))^2 vs N(r,s)", d_n < 1e-8, f"{d_n:.3e}")
    return res


# -- cosine identity ------------------------------------------------------------


def rseqpm12_sweep(q_lo: int = 3, q_hi: int = 21) -> SuiteResult:
    res = SuiteResult("rseqpm12")
    exceptions, tan_bad, n = [], [], 0
    for q in range(q_lo, q_hi + 1):
        for p in range(12 * q):
            if gcd(p, q) != 1:
                continue
            w = Weight(p, q)
            if w.degenerate:
                continue
            n += 1
            out = rseqpm12_enumerate(p, q)
            if not out.only_trivial:
                exceptions.append((f"{p}/{q}", out.classes))
            if not out.tan_agrees:
                tan_bad.append(f"{p}/{q}")
    res.info["weights_checked"] = n
    res.add(
        f"only ±(1,2), ±(2,1) mod Q for {q_lo} <= q <= {q_hi}",
        not exceptions,
        f"{n} weights, exceptions: {exceptions[:5]}",
    )
    res.add("tan identity holds on every solving class", not tan_bad, f"failures: {tan_bad[:5]}")
    return res


# -- classifier against the commutator ------------------------------------------


def _nonunit(lo: int, hi: int) -> list[int]:
    return [x for x in range(lo, hi + 1) if x != 1]


def oracle_sweep(
    weights, lo: int = -6, hi: int = 6, theorem: str = "both", mode: str = "both"
) -> SuiteResult:
    """Compare the classifiers with the exact commutator.

    ``mode`` picks which classifier the pass/fail checks judge: "literal"
    (the listed conditions only), "complete" (with the extra cases) or "both".
    Agreement counts for both are always reported in ``info``.
    """
    if mode not in ("literal", "complete", "both"):
        raise ValueError(f"unknown mode {mode!r}")
    res = SuiteResult("oracle", info={"mode": mode})
    idx = _nonunit(lo, hi)
    t_idx = [t for t in range(lo, hi + 1) if t != 0]
    nn = Counter()
    mn = Counter()
    nn_examples: list = []
    mn_examples: list = []
    for w in weights:
        order = constants(w).order
        ns = {(r, s): n_matrix(w, r, s) for r in idx for s in idx}
        if theorem in ("both", "NN"):
            cache: dict = {}
            for a, A in ns.items():
                for b, B in ns.items():
                    key = (a[0] % order, a[1] % order, b[0] % order, b[1] % order)
                    truth = cache.get(key)
                    if truth is None:
                        truth = cache[key] = commutator(A, B).is_zero()
                    lit = thnnc_classify(w, *a, *b).commutes
                    full = thnnc_classify(w, *a, *b, complete=True)
                    nn["tuples"] += 1
                    nn["literal_agree"] += lit == truth
                    nn["complete_agree"] += full.commutes == truth
                    if lit != truth:
                        nn[f"missed:{full.condition}"] += 1
                        if len(nn_examples) < 5:
                            nn_examples.append((str(w), a, b, truth))
        if theorem in ("both", "MN"):
            for t in t_idx:
                M = m_matrix(w, t)
                for a, A in ns.items():
                    truth = commutator(M, A).is_zero()
                    lit = thmnc_classify(w, t, *a).commutes
                    full = thmnc_classify(w, t, *a, complete=True)
                    mn["tuples"] += 1
                    mn["literal_agree"] += lit == truth
                    mn["complete_agree"] += full.commutes == truth
                    if lit != truth:
                        mn[f"missed:{full.condition}"] += 1
                        if len(mn_examples) < 5:
                            mn_examples.append((str(w), t, a, truth))
    res.info["weights"] = len(weights)
    for name, counts, examples in (("NN", nn, nn_examples), ("MN", mn, mn_examples)):
        if not counts:
            continue
        res.info[name] = dict(sorted(counts.items()))
        res.info[f"{name}_examples"] = [list(map(str, e)) for e in examples]
        total = counts["tuples"]
        if mode in ("literal", "both"):
            bad = total - counts["literal_agree"]
            res.add(f"{name}: listed conditions vs commutator", bad == 0, f"{bad} of {total} disagree")
        if mode in ("complete", "both"):
            bad = total - counts["complete_agree"]
            res.add(f"{name}: completed conditions vs commutator", bad == 0, f"{bad} of {total} disagree")
    return res


# -- q-expansion identities -------------------------------------------------------


def _max_coeff(series: FracQSeries) -> str:
    return str(max((abs(c) for c in series.coeffs), default=0))


def qcheck_suite(k, order: int = 20) -> SuiteResult:
    """Exact residuals of the q-expansion identities at weight k.

    Each entry of ``info["identities"]`` is {identity, k, order,
    max_nonzero_coefficient}; a residual that vanishes reports "0".
    """
    w = Weight.of(k)
    res = SuiteResult("qcheck", info={"k": str(w), "order": order, "identities": []})

    def record(name, series):
        mx = _max_coeff(series)
        res.info["identities"].append(
            {"identity": name, "k": str(w), "order": order, "max_nonzero_coefficient": mx}
        )
        res.add(f"{name} residual vanishes through order {order}", series.is_zero(), mx)

    record("ramanujan", ramanujan_check(order))
    try:
        lam = (w.value + 1) / 6
        for branch in (Fraction(0), lam):
            f = kz_series_solution(w, branch, order)
            record(f"kz[branch={branch}]", kz_residual(f, w, order))
        record("schwarzian", schwarzian_check(w, order))
        for branch in (Fraction(0), lam):
            nf = normal_form_check(w, order, branch)
            record(f"laguerre_forsyth[branch={branch}]", nf.laguerre_forsyth)
            record(f"riccati[branch={branch}]", nf.riccati)
        record("pullback", pullback_check(w, order))
    except ResonantWeight as exc:
        res.info["skipped"] = str(exc)
    return res
