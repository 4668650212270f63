"""Admissibility predicates: per-weight D1/D2, system-level MD2, case labels.

Predicates never raise on a failed condition; they return a
:class:`ValidationReport` whose violations carry stable clause identifiers
(``"D2.Hahn.sum"``, ``"MD2.2"``, ...) for reports and scripts.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .core import format_scalar, is_integer
from .errors import UnsupportedArity
from .weights import INF, WeightKind, WeightSpec, WeightSystem, shift_violations


@dataclass(frozen=True)
class Violation:
    clause: str
    text: str
    values: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"clause": self.clause, "text": self.text, "values": dict(self.values)}


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    @property
    def clauses(self) -> list:
        return [v.clause for v in self.violations]

    def fail(self, clause: str, text: str, **values) -> None:
        self.violations.append(
            Violation(clause, text, {k: _fmt(v) for k, v in values.items()})
        )

    def extend(self, other: "ValidationReport") -> "ValidationReport":
        self.violations.extend(other.violations)
        self.notes.extend(other.notes)
        return self

    def to_dict(self) -> dict:
        out = {
            "verdict": self.verdict,
            "violated_clauses": [v.to_dict() for v in self.violations],
        }
        if self.notes:
            out["notes"] = list(self.notes)
        if self.details:
            out["details"] = {k: _fmt(v) for k, v in self.details.items()}
        return out


def _fmt(v):
    if isinstance(v, Fraction):
        return format_scalar(v)
    if v == INF:
        return "inf"
    if isinstance(v, (list, tuple)):
        return [_fmt(x) for x in v]
    return v


def in_neg_range(value: Fraction, lowest) -> bool:
    """``value`` in ``{0, -1, ..., lowest}`` (``lowest = -inf`` means all of ``-Z_+``)."""
    return is_integer(value) and value <= 0 and value >= lowest


# -- single weights ----------------------------------------------------------------------


def check_D1(spec: WeightSpec) -> ValidationReport:
    """Positivity conditions for a single unshifted weight."""
    rep = ValidationReport()
    k, a, be, b = spec.kind, spec.alpha, spec.beta, spec.b
    if k is WeightKind.CHARLIER:
        if not b > 0:
            rep.fail("D1.Charlier", "b > 0", b=b)
    elif k is WeightKind.MEIXNER:
        if not a > 0:
            rep.fail("D1.Meixner.alpha", "alpha > 0", alpha=a)
        if not 0 < b < 1:
            rep.fail("D1.Meixner.b", "0 < b < 1", b=b)
    elif k is WeightKind.KRAVCHUK:
        if not b > 0:
            rep.fail("D1.Kravchuk", "b > 0", b=b)
    else:
        lim = 1 - spec.N
        if not ((a > 0 and be > 0) or (a < lim and be < lim)):
            rep.fail(
                "D1.Hahn",
                "alpha, beta > 0 or alpha, beta < 1 - N",
                alpha=a, beta=be, N=spec.N,
            )
    return rep


def check_D2(spec: WeightSpec) -> ValidationReport:
    """Regularity (degree preservation) conditions for a single weight."""
    rep = ValidationReport()
    k, a, be, b = spec.kind, spec.alpha, spec.beta, spec.b
    if k is WeightKind.CHARLIER:
        if b == 0:
            rep.fail("D2.Charlier", "b != 0", b=b)
    elif k is WeightKind.MEIXNER:
        if not 0 < abs(b) < 1:
            rep.fail("D2.Meixner.b", "0 < |b| < 1", b=b)
        if in_neg_range(a, -INF):
            rep.fail("D2.Meixner.alpha", "alpha not in -S_rho = {0, -1, -2, ...}", alpha=a)
    elif k is WeightKind.KRAVCHUK:
        if b == 0 or b == -1:
            rep.fail("D2.Kravchuk", "b != 0 and b != -1", b=b)
    else:
        N = spec.N
        if in_neg_range(a, 1 - N):
            rep.fail("D2.Hahn.alpha", "alpha not in {0, -1, ..., 1-N}", alpha=a, N=N)
        if in_neg_range(be, 1 - N):
            rep.fail("D2.Hahn.beta", "beta not in {0, -1, ..., 1-N}", beta=be, N=N)
        s = -a - be
        if is_integer(s) and 0 <= s <= 2 * N - 2:
            rep.fail("D2.Hahn.sum", "-alpha-beta not in {0, 1, ..., 2N-2}", sum=s, N=N)
    return rep


# -- systems --------------------------------------------------------------------------------


def check_shifts(system: WeightSystem) -> ValidationReport:
    rep = ValidationReport()
    for pair, expr, value in shift_violations(system.weights):
        rep.fail("SHIFT", f"{expr} must not be an integer", pair=list(pair), value=value)
    return rep


def check_MD2(system: WeightSystem, n_max: Optional[int] = None) -> ValidationReport:
    """System-level regularity condition.

    The per-``n`` clause of item 3 is checked for ``n`` up to
    ``min(n_max, N - 1)``; ``n_max=None`` checks the full range.
    """
    rep = ValidationReport()
    r, B = system.r, system.B
    if B == 0:
        rep.fail("MD2.0", "B = prod b_j != 0", B=B)
    for j, w in enumerate(system.weights):
        if w.kind is WeightKind.MEIXNER and in_neg_range(w.alpha, -INF):
            rep.fail(
                "MD2.0.meixner",
                f"Meixner alpha_{j + 1} not in {{0, -1, -2, ...}}",
                alpha=w.alpha,
            )
    if system.r_C == 0 and system.r_M > 0 and not abs(B) < 1:
        rep.fail("MD2.1", "r_C = 0 and r_M > 0 require |B| < 1", B=B)
    if system.r_K == r and B == (-1) ** r:
        rep.fail("MD2.2", "r_K = r requires B != (-1)^r", B=B, r=r)
    if system.r_H > 0:
        if system.r_H != 1 or system.r_K != r - 1:
            rep.fail(
                "MD2.3.count",
                "a Hahn weight requires r_H = 1 and all other weights Kravchuk",
                r_H=system.r_H, r_K=system.r_K,
            )
        if B != (-1) ** (r - 1):
            rep.fail("MD2.3.B", "a Hahn weight requires B = (-1)^(r-1)", B=B, r=r)
        if system.r_H == 1:
            hahn = next(w for w in system.weights if w.kind is WeightKind.HAHN)
            Nr = hahn.N
            for name, val in (("alpha", hahn.alpha), ("beta", hahn.beta)):
                if in_neg_range(val, 1 - Nr):
                    rep.fail(
                        "MD2.3.alphabeta",
                        f"Hahn {name} not in {{0, -1, ..., 1-N_r}}",
                        **{name: val, "N_r": Nr},
                    )
            others = sum(w.N for w in system.weights if w.kind is not WeightKind.HAHN)
            top = system.Ncap - 1
            if n_max is not None:
                top = min(n_max, top)
            base = hahn.alpha + hahn.beta - others
            n = 0
            while n <= top:
                val = base + r * n
                if is_integer(val) and -n <= val <= 0:
                    rep.fail(
                        "MD2.3.n",
                        "alpha + beta + r n - sum_{j<r} N_j not in {0, -1, ..., -n}",
                        n=n, value=val,
                    )
                n += 1
    return rep


def validate_system(system: WeightSystem, n_max: Optional[int] = None) -> ValidationReport:
    """Shift hypothesis plus MD2: everything construction relies on."""
    rep = check_shifts(system)
    rep.extend(check_MD2(system, n_max))
    return rep


class Case(str, enum.Enum):
    CASE_I = "I"
    CASE_II = "II"


@dataclass(frozen=True)
class CaseLabel:
    case: Case
    hulls: tuple  # ((lo, hi), (lo, hi)), hi may be INF

    def to_dict(self) -> dict:
        return {
            "case": self.case.value,
            "hulls": [[_fmt(lo), _fmt(hi)] for lo, hi in self.hulls],
        }


def classify_case(system: WeightSystem) -> CaseLabel:
    """Case I when the closed convex hulls of the two supports meet, Case II otherwise."""
    if system.r != 2:
        raise UnsupportedArity(f"case classification needs r = 2, got r = {system.r}")
    (a1, b1), (a2, b2) = system.hull(0), system.hull(1)
    disjoint = b1 < a2 or b2 < a1
    return CaseLabel(Case.CASE_II if disjoint else Case.CASE_I, ((a1, b1), (a2, b2)))
