"""Stable text and JSON rendering for module outputs."""

from __future__ import annotations

import json

from .commute import CommuteVerdict
from .connection import GradedMatrix
from .cyclotomic import CycNum
from .search import ClassificationResult, Witness
from .verify import SuiteResult

__all__ = ["dumps", "render", "cyc_text", "matrix_text"]


def dumps(payload) -> str:
    """Deterministic JSON: keys keep the insertion order of each ``to_json``."""
    if hasattr(payload, "to_json"):
        payload = payload.to_json()
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def cyc_text(x: CycNum) -> str:
    z = x.to_complex()
    coeffs = ", ".join(str(c) for c in x.coeffs) or "0"
    return f"[{coeffs}] in Q(zeta_{x.ctx.n})  ~ {z.real:+.12g}{z.imag:+.12g}i"


def matrix_text(m: GradedMatrix) -> str:
    return "\n".join(
        [
            f"k = {m.weight}",
            f"  d11          = {cyc_text(m.d11)}",
            f"  d22          = {cyc_text(m.d22)}",
            f"  u12 (x G12)  = {cyc_text(m.u12)}",
            f"  l21 (x G21)  = {cyc_text(m.l21)}",
        ]
    )


def _verdict_text(v: CommuteVerdict) -> str:
    state = "commute" if v.commutes else "do not commute"
    label = f"condition ({v.condition})" if v.condition != "none" else "no condition"
    return f"{v.theorem}: {state}; {label}: {v.description}"


def _witness_text(w: Witness) -> str:
    lines = [f"witness for k = {w.k}, N = {w.N}, level 6qN = {w.level}, Q = {w.Q}"]
    for pair, res, word, mem in zip(w.pairs, w.residues, w.words, w.membership):
        lines.append(f"  (r, s) = {pair}  residues mod Q {res}  {word}: {mem.value}")
    lines.append(f"  commutator nonzero: {w.commutator_nonzero}")
    return "\n".join(lines)


def _classification_text(c: ClassificationResult) -> str:
    lines = [f"k = {c.k}: {c.verdict}", f"  reason: {c.reason}"]
    lines += [f"  note: {n}" for n in c.notes]
    if c.witness is not None:
        lines.append(_witness_text(c.witness))
    return "\n".join(lines)


def _suite_text(s: SuiteResult) -> str:
    lines = [f"suite {s.suite}: {'PASS' if s.passed else 'FAIL'}"]
    for c in s.checks:
        tail = f"  [{c.detail}]" if c.detail else ""
        lines.append(f"  {'ok  ' if c.passed else 'FAIL'} {c.name}{tail}")
    for key, value in s.info.items():
        if key == "identities":
            continue
        lines.append(f"  {key}: {value}")
    return "\n".join(lines)


def render(obj) -> str:
    """Human-readable rendering; falls back to JSON for anything unknown."""
    if isinstance(obj, GradedMatrix):
        text = matrix_text(obj)
    elif isinstance(obj, CommuteVerdict):
        text = _verdict_text(obj)
    elif isinstance(obj, ClassificationResult):
        text = _classification_text(obj)
    elif isinstance(obj, Witness):
        text = _witness_text(obj)
    elif isinstance(obj, SuiteResult):
        text = _suite_text(obj)
    else:
        return dumps(obj)
    return text + "\n"
