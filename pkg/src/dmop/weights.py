"""Classical discrete weights on shifted lattices and their r-fold products.

A weight of kind Charlier, Meixner, Kravchuk or Hahn is stored with the
unified quadruple ``(alpha, beta, b, N)`` plus the lattice shift ``gamma``.
Absolute weight values involve Gamma functions at noninteger points and are
never computed; everything goes through the rational forward ratio
``R(x+1)/R(x)`` and the ratio rows ``u_m``, ``v_m``.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .core import (
    Polynomial,
    RationalFunction,
    ScalarLike,
    format_scalar,
    is_integer,
    product,
    ratfn_normalize,
    to_scalar,
)
from .errors import (
    DegenerateHahn,
    IntegerShiftDifference,
    InvalidParameter,
    PoleOnLattice,
)

INF = math.inf


class WeightKind(str, enum.Enum):
    CHARLIER = "charlier"
    MEIXNER = "meixner"
    KRAVCHUK = "kravchuk"
    HAHN = "hahn"

    @classmethod
    def parse(cls, value) -> "WeightKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise InvalidParameter(f"unknown weight kind {value!r}") from None


@dataclass(frozen=True)
class WeightSpec:
    kind: WeightKind
    alpha: Fraction
    beta: Fraction
    b: Fraction
    N: object  # int, or INF for Charlier/Meixner
    gamma: Fraction

    @property
    def finite(self) -> bool:
        return self.N != INF

    @property
    def support_size(self):
        return self.N + 1 if self.finite else INF

    def advanced(self, s: int) -> "WeightSpec":
        """Parameters of the shifted weight ``rho_s`` (same kind, same shift)."""
        if s == 0:
            return self
        if self.kind is WeightKind.MEIXNER:
            return replace(self, alpha=self.alpha + s)
        if self.kind is WeightKind.KRAVCHUK:
            return replace(self, N=self.N - s)
        if self.kind is WeightKind.HAHN:
            return replace(self, alpha=self.alpha + s, beta=self.beta + s, N=self.N - s)
        return self

    def describe(self) -> dict:
        return {
            "kind": self.kind.value,
            "alpha": format_scalar(self.alpha),
            "beta": format_scalar(self.beta),
            "b": format_scalar(self.b),
            "N": "inf" if not self.finite else int(self.N),
            "gamma": format_scalar(self.gamma),
        }


_FORCED = {
    # field -> forced value, per kind
    WeightKind.CHARLIER: {"alpha": 0, "beta": 0, "N": INF},
    WeightKind.MEIXNER: {"beta": 0, "N": INF},
    WeightKind.KRAVCHUK: {"alpha": 0, "beta": 0},
    WeightKind.HAHN: {"b": 1},
}
_REQUIRED = {
    WeightKind.CHARLIER: ("b",),
    WeightKind.MEIXNER: ("alpha", "b"),
    WeightKind.KRAVCHUK: ("b", "N"),
    WeightKind.HAHN: ("alpha", "beta", "N"),
}


def _parse_N(value):
    if value is None:
        return None
    if value == INF or (isinstance(value, str) and value.strip().lower() in ("inf", "+inf", "infinity")):
        return INF
    q = to_scalar(value)
    if not is_integer(q) or q < 0:
        raise InvalidParameter(f"N must be a nonnegative integer, got {format_scalar(q)}")
    return int(q)


def make_weight_spec(
    kind,
    *,
    alpha: Optional[ScalarLike] = None,
    beta: Optional[ScalarLike] = None,
    b: Optional[ScalarLike] = None,
    N=None,
    gamma: ScalarLike = 0,
) -> WeightSpec:
    """Build a :class:`WeightSpec`, filling the fields the kind fixes.

    Supplying a fixed field with a different value (e.g. ``beta`` for a
    Kravchuk weight) raises :class:`InvalidParameter`.
    """
    kind = WeightKind.parse(kind)
    try:
        given = {
            "alpha": None if alpha is None else to_scalar(alpha),
            "beta": None if beta is None else to_scalar(beta),
            "b": None if b is None else to_scalar(b),
            "N": _parse_N(N),
        }
        gamma = to_scalar(gamma)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InvalidParameter):
            raise
        raise InvalidParameter(str(exc)) from exc
    for name, forced in _FORCED[kind].items():
        if given[name] is not None and given[name] != forced:
            raise InvalidParameter(
                f"{kind.value} weight fixes {name} = {forced}, got {given[name]}"
            )
        given[name] = forced
    for name in _REQUIRED[kind]:
        if given[name] is None:
            raise InvalidParameter(f"{kind.value} weight requires {name}")
    return WeightSpec(
        kind=kind,
        alpha=Fraction(given["alpha"]),
        beta=Fraction(given["beta"]),
        b=Fraction(given["b"]),
        N=given["N"],
        gamma=gamma,
    )


def ratio_uv(spec: WeightSpec, m: int) -> tuple[Polynomial, Polynomial]:
    """Ratio rows ``u_m = rho_{m+1}(x)/rho_m(x)`` and ``v_m = rho_{m+1}(x-1)/rho_m(x)``.

    Both are polynomials in the unshifted variable.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    x = Polynomial.x()
    kind = spec.kind
    if kind is WeightKind.CHARLIER:
        return Polynomial.constant(1), x / spec.b
    if kind is WeightKind.MEIXNER:
        return Polynomial.linear(1, spec.alpha + m), x / spec.b
    if kind is WeightKind.KRAVCHUK:
        return Polynomial.linear(-1, spec.N - m), x / spec.b
    alpha, beta, N = spec.alpha, spec.beta, spec.N
    denom = (alpha + m) * (beta + m)
    if denom == 0:
        raise DegenerateHahn(f"(alpha+m)(beta+m) = 0 at m={m}")
    u = Polynomial.linear(1, alpha + m) * Polynomial.linear(-1, N - m)
    v = x * Polynomial.linear(-1, N + beta)
    return u / denom, v / denom


def single_forward_ratio(spec: WeightSpec) -> tuple[Polynomial, Polynomial]:
    """Unreduced ``(num, den)`` of ``rho(y+1)/rho(y)`` in the unshifted variable ``y``."""
    kind = spec.kind
    y1 = Polynomial.linear(1, 1)
    if kind is WeightKind.CHARLIER:
        return Polynomial.constant(spec.b), y1
    if kind is WeightKind.MEIXNER:
        return Polynomial.linear(spec.b, spec.b * spec.alpha), y1
    if kind is WeightKind.KRAVCHUK:
        return Polynomial.linear(-spec.b, spec.b * spec.N), y1
    num = Polynomial.linear(1, spec.alpha) * Polynomial.linear(-1, spec.N)
    # (beta)_{N-y-1} / (beta)_{N-y} = 1 / (N - y - 1 + beta)
    den = y1 * Polynomial.linear(-1, spec.N - 1 + spec.beta)
    return num, den


def _single_den_roots(spec: WeightSpec) -> list:
    roots = [Fraction(-1)]
    if spec.kind is WeightKind.HAHN:
        roots.append(spec.N - 1 + spec.beta)
    return roots


@dataclass(frozen=True)
class WeightSystem:
    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(self.weights))

    @property
    def r(self) -> int:
        return len(self.weights)

    @property
    def B(self) -> Fraction:
        acc = Fraction(1)
        for w in self.weights:
            acc *= w.b
        return acc

    @property
    def Ncap(self):
        return min(w.N for w in self.weights)

    def count(self, kind: WeightKind) -> int:
        return sum(1 for w in self.weights if w.kind is kind)

    @property
    def r_C(self) -> int:
        return self.count(WeightKind.CHARLIER)

    @property
    def r_M(self) -> int:
        return self.count(WeightKind.MEIXNER)

    @property
    def r_K(self) -> int:
        return self.count(WeightKind.KRAVCHUK)

    @property
    def r_H(self) -> int:
        return self.count(WeightKind.HAHN)

    @property
    def gammas(self) -> tuple:
        return tuple(w.gamma for w in self.weights)

    def advanced(self, s: int) -> "WeightSystem":
        """The system of shifted weights ``R_s``."""
        return WeightSystem(tuple(w.advanced(s) for w in self.weights))

    def translated(self, t: ScalarLike) -> "WeightSystem":
        t = to_scalar(t)
        return WeightSystem(tuple(replace(w, gamma=w.gamma + t) for w in self.weights))

    def support_size(self, j: int):
        return self.weights[j].support_size

    def hull(self, j: int) -> tuple:
        w = self.weights[j]
        return (w.gamma, w.gamma + w.N if w.finite else INF)

    def describe(self) -> dict:
        return {
            "weights": [w.describe() for w in self.weights],
            "B": format_scalar(self.B),
            "N": "inf" if self.Ncap == INF else int(self.Ncap),
            "counts": {"C": self.r_C, "M": self.r_M, "K": self.r_K, "H": self.r_H},
        }


def shift_violations(specs: Sequence[WeightSpec]) -> list:
    """All ``(pair, expression, value)`` where a shift difference is an integer."""
    out = []
    for j, wj in enumerate(specs):
        for k, wk in enumerate(specs):
            if j == k:
                continue
            d = wj.gamma - wk.gamma
            label = f"gamma_{j + 1} - gamma_{k + 1}"
            checks = [(label, d)]
            if wj.alpha != 0:
                checks.append((f"{label} - alpha_{j + 1}", d - wj.alpha))
            if wk.beta != 0:
                checks.append((f"{label} - beta_{k + 1}", d - wk.beta))
            for expr, value in checks:
                if is_integer(value):
                    out.append(((j + 1, k + 1), expr, value))
    return out


def assemble_system(specs: Sequence[WeightSpec], *, check_shifts: bool = True) -> WeightSystem:
    if not specs:
        raise InvalidParameter("a weight system needs at least one weight")
    specs = tuple(specs)
    if check_shifts:
        bad = shift_violations(specs)
        if bad:
            pair, expr, value = bad[0]
            raise IntegerShiftDifference(pair, expr, format_scalar(value))
    return WeightSystem(specs)


def forward_ratio(system: WeightSystem, *, check_poles: bool = True) -> RationalFunction:
    """``R(x+1)/R(x)`` in lowest terms, ``R(x) = prod_j rho_j(x - gamma_j)``."""
    nums, dens = [], []
    for w in system.weights:
        num, den = single_forward_ratio(w)
        nums.append(num.shift_arg(w.gamma))
        dens.append(den.shift_arg(w.gamma))
    F = ratfn_normalize(product(nums), product(dens))
    if check_poles:
        _check_poles(system, F)
    return F


def _check_poles(system: WeightSystem, F: RationalFunction) -> None:
    candidates = {w.gamma + root for w in system.weights for root in _single_den_roots(w)}
    for x0 in sorted(candidates):
        if F.den(x0) != 0:
            continue
        for j, w in enumerate(system.weights):
            k = x0 - w.gamma
            if not is_integer(k) or k < 0:
                continue
            # F is evaluated at gamma_j + k for k = 0 .. N_j - 1
            if not w.finite or k <= w.N - 1:
                raise PoleOnLattice(
                    f"forward ratio has a pole at x = {format_scalar(x0)}, "
                    f"node {int(k)} of lattice {j + 1}"
                )


def uv_products(system: WeightSystem, m: int) -> tuple[Polynomial, Polynomial]:
    """``U_m = prod_j u_m^(j)(x - gamma_j)`` and ``V_m = prod_j v_m^(j)(x - gamma_j)``."""
    U, V = Polynomial.constant(1), Polynomial.constant(1)
    for w in system.weights:
        u, v = ratio_uv(w, m)
        U = U * u.shift_arg(w.gamma)
        V = V * v.shift_arg(w.gamma)
    return U, V


@dataclass(frozen=True)
class LatticeMeasure:
    """Relative weights ``w(k) = R_s(gamma + k) / R_0(gamma)`` on one lattice."""

    gamma: Fraction
    size: object
    level: int
    weights: tuple
    sign_profile: tuple = field(default=())

    @property
    def nodes(self) -> tuple:
        return tuple(self.gamma + k for k in range(len(self.weights)))

    def constant_sign(self) -> bool:
        signs = {s for s in self.sign_profile if s != 0}
        return len(signs) <= 1


def iter_relative_weights(system: WeightSystem, j: int, *, level: int = 0) -> Iterator[Fraction]:
    """Endless stream of relative weights on lattice ``j`` (0-based) for ``R_level``.

    Normalisation is ``R_0(gamma_j) = 1``; level ``s`` weights start from
    ``prod_{t<s} U_t(gamma_j)`` so that ``w_{s+1} = U_s * w_s`` holds node by node.
    Past the end of a finite support the stream yields zeros.
    """
    gamma = system.weights[j].gamma
    w = Fraction(1)
    for t in range(level):
        U, _ = uv_products(system, t)
        w *= U(gamma)
    F = forward_ratio(system.advanced(level), check_poles=False)
    x = gamma
    k = 0
    while True:
        yield w
        if w != 0:
            # zeros of 1/Gamma persist, so a zero weight stays zero
            try:
                w = w * F(x)
            except ZeroDivisionError:
                raise PoleOnLattice(
                    f"forward ratio has a pole at x = {format_scalar(x)}, "
                    f"node {k} of lattice {j + 1}"
                ) from None
        x += 1
        k += 1


def relative_weights(
    system: WeightSystem, j: int, count: Optional[int] = None, *, level: int = 0
) -> LatticeMeasure:
    """Relative weights ``w(0), ..., w(count-1)`` on lattice ``j`` (0-based)."""
    size = system.weights[j].support_size
    if count is None:
        if size == INF:
            raise ValueError("count is required for an unbounded lattice")
        count = size
    if size != INF and count > size:
        raise ValueError(f"lattice {j + 1} has only {size} nodes")
    out = tuple(itertools.islice(iter_relative_weights(system, j, level=level), count))
    signs = tuple((v > 0) - (v < 0) for v in out)
    return LatticeMeasure(
        gamma=system.weights[j].gamma, size=size, level=level, weights=out, sign_profile=signs
    )
