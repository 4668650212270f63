"""Independent checks of constructed polynomials.

* orthogonality residuals over each shifted lattice: exact sums on finite
  lattices, certified truncated sums on unbounded ones;
* a moment-matrix nullspace oracle that rebuilds ``P_n`` from the
  orthogonality conditions alone;
* derivation and checking of the Pearson pair ``Delta(sigma R) = tau R``.

Tail certificate for an unbounded lattice: the ratio of consecutive terms
``t(x+1)/t(x)`` is a rational function ``A/C``.  Past a positive-root bound
of ``q^2 C^2 - A^2`` and of ``C`` the ratio is below ``q`` in modulus, so the
tail after node ``k`` is at most ``|t_k| q / (1 - q)``.  ``q = 1/2`` unless
the limiting ratio is already at least ``1/2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .core import Polynomial, format_scalar, positive_root_bound, product
from .errors import (
    DegreeBoundViolated,
    SingularConstruction,
    TailNotContracting,
)
from .linalg import matvec, nullspace
from .validate import ValidationReport
from .weights import WeightSystem, forward_ratio, iter_relative_weights, single_forward_ratio

DEFAULT_TOL = Fraction(1, 10**30)
MAX_TERMS = 200_000


# -- truncated sums -------------------------------------------------------------------------


def _contraction(system: WeightSystem, level: int, Q: Polynomial) -> tuple[Fraction, Fraction]:
    """``(q, X)``: for real ``x >= X``, ``|Q(x+1) F(x)| <= q |Q(x)|`` and ``Q(x) != 0``."""
    F = forward_ratio(system.advanced(level), check_poles=False)
    A = Q.shift_arg(-1) * F.num
    C = Q * F.den
    if A.is_zero():
        return Fraction(1, 2), Fraction(1)
    if A.degree > C.degree:
        raise TailNotContracting("term ratio grows without bound")
    limit = abs(A.lead / C.lead) if A.degree == C.degree else Fraction(0)
    if limit >= 1:
        raise TailNotContracting(
            f"term ratio tends to {format_scalar(limit)} >= 1 (is |B| >= 1 with no Charlier factor?)"
        )
    q = Fraction(1, 2) if limit < Fraction(1, 2) else (1 + limit) / 2
    h = C * C * (q * q) - A * A
    return q, max(positive_root_bound(h), positive_root_bound(C), Fraction(1))


@dataclass(frozen=True)
class LatticeSum:
    value: Fraction
    bound: Optional[Fraction]  # None for exact sums
    terms: int

    @property
    def exact(self) -> bool:
        return self.bound is None


class _WeightCache:
    def __init__(self, system, j, level):
        self._it = iter_relative_weights(system, j, level=level)
        self.values = []

    def __getitem__(self, k):
        while len(self.values) <= k:
            self.values.append(next(self._it))
        return self.values[k]


def lattice_sum(
    system: WeightSystem,
    j: int,
    Q: Polynomial,
    *,
    level: int = 0,
    tol: Fraction = DEFAULT_TOL,
    weights: Optional[_WeightCache] = None,
) -> LatticeSum:
    """``sum_k Q(gamma_j + k) w(k)`` over lattice ``j``; certified truncation if unbounded."""
    spec = system.weights[j]
    w = weights if weights is not None else _WeightCache(system, j, level)
    gamma = spec.gamma
    if spec.finite:
        total = sum((Q(gamma + k) * w[k] for k in range(spec.N + 1)), Fraction(0))
        return LatticeSum(total, None, spec.N + 1)
    q, X = _contraction(system, level, Q)
    k_cert = max(0, math.ceil(X - gamma))
    factor = q / (1 - q)
    total = Fraction(0)
    for k in range(MAX_TERMS):
        t = Q(gamma + k) * w[k]
        total += t
        if k >= k_cert:
            bound = abs(t) * factor
            if bound < tol / 2:
                return LatticeSum(total, bound, k + 1)
    raise TailNotContracting(f"no certified truncation within {MAX_TERMS} terms")


def _short(value: Fraction) -> str:
    """Exact ``p/q`` unless it is unreasonably long, then a float."""
    if value.numerator.bit_length() + value.denominator.bit_length() < 4000:
        return format_scalar(value)
    return repr(float(value))


# -- orthogonality ----------------------------------------------------------------------------


@dataclass(frozen=True)
class ResidualEntry:
    lattice: int  # 1-based
    power: int
    value: Fraction
    bound: Optional[Fraction]
    terms: int

    @property
    def passed(self) -> bool:
        if self.bound is None:
            return self.value == 0
        return abs(self.value) <= self.bound

    def to_dict(self) -> dict:
        out = {
            "lattice": self.lattice,
            "power": self.power,
            "residual": _short(self.value) if self.bound is None else repr(float(self.value)),
            "exact": self.bound is None,
            "terms": self.terms,
            "pass": self.passed,
        }
        if self.bound is not None:
            out["tail_bound"] = repr(float(self.bound))
        return out


@dataclass
class OrthogonalityReport:
    n: int
    level: int
    entries: list = field(default_factory=list)
    tol: Fraction = DEFAULT_TOL

    @property
    def passed(self) -> bool:
        return all(e.passed and (e.bound is None or e.bound < self.tol) for e in self.entries)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "level": self.level,
            "verdict": "pass" if self.passed else "fail",
            "entries": [e.to_dict() for e in self.entries],
        }


def orthogonality_residuals(
    system: WeightSystem,
    P: Polynomial,
    n: int,
    tol: Fraction = DEFAULT_TOL,
    *,
    level: int = 0,
) -> OrthogonalityReport:
    """``sum_{x in lattice j} P(x) x^k R_level(x)`` for ``k < n`` and every lattice ``j``."""
    report = OrthogonalityReport(n=n, level=level, tol=Fraction(tol))
    if n == 0:
        return report
    for j in range(system.r):
        cache = _WeightCache(system, j, level)
        for k in range(n):
            Q = P * Polynomial.monomial(k)
            s = lattice_sum(system, j, Q, level=level, tol=tol, weights=cache)
            report.entries.append(ResidualEntry(j + 1, k, s.value, s.bound, s.terms))
    return report


# -- moment oracle ------------------------------------------------------------------------------


@dataclass
class MomentSystem:
    n: int
    rows: list
    basis: list
    exact: bool
    tail_bounds: dict  # lattice -> (terms, bound) for truncated lattices

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def compare(self, P: Polynomial, rel_tol: Fraction = Fraction(1, 10**20)) -> dict:
        """Does ``P`` lie in the nullspace (exactly, or up to ``rel_tol`` when truncated)?"""
        size = len(self.rows[0]) if self.rows else len(self.basis[0])
        vec = [P.coeff(i) for i in range(size)]
        out = {"dimension": self.dimension, "exact": self.exact}
        if self.exact:
            out["contains"] = all(v == 0 for v in matvec(self.rows, vec))
            if self.dimension == 1:
                out["proportional"] = _proportional(self.basis[0], vec)
            return out
        if self.dimension != 1:
            out["contains"] = False
            out["rel_error"] = None
            return out
        err = _relative_distance(self.basis[0], vec)
        out["rel_error"] = float(err)
        out["contains"] = err < rel_tol
        return out


def _proportional(a, b) -> bool:
    """Exact test for ``a = c b`` with ``c != 0``."""
    k = next((i for i, v in enumerate(b) if v), None)
    if k is None or not a[k]:
        return False
    return all(x * b[k] == y * a[k] for x, y in zip(a, b))


def _relative_distance(a, b) -> Fraction:
    """``max |c a - b| / max |b|`` with ``c`` matching ``a`` to ``b`` at the largest entry of ``b``."""
    k = max(range(len(b)), key=lambda i: abs(b[i]))
    if not b[k] or not a[k]:
        return Fraction(1)
    c = b[k] / a[k]
    return max(abs(c * x - y) for x, y in zip(a, b)) / abs(b[k])


def moment_oracle(system: WeightSystem, n: int, tol: Fraction = DEFAULT_TOL) -> MomentSystem:
    """Nullspace of the ``(r n) x (r n + 1)`` system of orthogonality conditions.

    Row ``(j, k)`` holds ``sum_x x^(k+i) w_j(x)`` for ``i = 0 .. r n``.  Unbounded
    lattices are truncated where the highest moment is certified below ``tol``.
    """
    size = system.r * n + 1
    rows, bounds = [], {}
    exact = True
    for j in range(system.r):
        if n == 0:
            break
        spec = system.weights[j]
        cache = _WeightCache(system, j, 0)
        if spec.finite:
            count = spec.N + 1
        else:
            exact = False
            top = lattice_sum(system, j, Polynomial.monomial(size - 1 + n - 1), tol=tol, weights=cache)
            count = top.terms
            bounds[j + 1] = (count, top.bound)
        nodes = [spec.gamma + k for k in range(count)]
        moments = []
        for p in range(size + n - 1):
            moments.append(sum((x**p * cache[k] for k, x in enumerate(nodes)), Fraction(0)))
        for k in range(n):
            rows.append(moments[k : k + size])
    basis = nullspace(rows, ncols=size) if rows else nullspace([], ncols=1)
    if not basis:
        raise SingularConstruction("moment system has a trivial nullspace; increase truncation")
    return MomentSystem(n=n, rows=rows, basis=basis, exact=exact, tail_bounds=bounds)


# -- Pearson -----------------------------------------------------------------------------------


@dataclass(frozen=True)
class PearsonPair:
    sigma: Polynomial
    tau: Polynomial


def derive_pearson(system: WeightSystem) -> PearsonPair:
    """``sigma(x) = den(x-1)``, ``tau = num - sigma`` for ``F = num/den = R(x+1)/R(x)``.

    ``num`` and ``den`` are the products of the per-weight ratios, not the
    reduced fraction: a Hahn weight with ``alpha = 1`` or a Meixner weight whose
    factor cancels against a Charlier one would otherwise lower ``deg tau``.
    """
    nums, dens = [], []
    for w in system.weights:
        num, den = single_forward_ratio(w)
        nums.append(num.shift_arg(w.gamma))
        dens.append(den.shift_arg(w.gamma))
    sigma = product(dens).shift_arg(1)
    tau = product(nums) - sigma
    r = system.r
    if sigma.degree > r + 1 or tau.degree != r:
        raise DegreeBoundViolated(
            f"deg sigma = {sigma.degree} (max {r + 1}), deg tau = {tau.degree} (need {r})"
        )
    return PearsonPair(sigma, tau)


def check_pearson(system: WeightSystem, pair: PearsonPair, nodes: int = 8) -> ValidationReport:
    """Polynomial identity ``sigma(x+1) num(x) = (sigma + tau)(x) den(x)`` plus node spot checks."""
    F = forward_ratio(system, check_poles=False)
    sigma, tau = pair.sigma, pair.tau
    residual = sigma.shift_arg(-1) * F.num - (sigma + tau) * F.den
    rep = ValidationReport()
    rep.details["residual"] = str(residual)
    if not residual.is_zero():
        rep.fail("PEARSON.identity", "sigma(x+1) num(x) - (sigma + tau)(x) den(x) == 0",
                 residual=str(residual))
    for j in range(system.r):
        spec = system.weights[j]
        count = nodes if not spec.finite else min(nodes, spec.N + 1)
        it = iter_relative_weights(system, j)
        w = [next(it) for _ in range(count + 1)]
        for k in range(count):
            x = spec.gamma + k
            lhs = sigma(x + 1) * w[k + 1] - sigma(x) * w[k]
            if lhs != tau(x) * w[k]:
                rep.fail("PEARSON.node", "Delta(sigma R) = tau R at a lattice node",
                         lattice=j + 1, node=x)
    return rep
