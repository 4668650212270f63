"""Construction of ``P_n`` from ``P_n R = nabla^n R_n`` via the polynomial recurrence

    P_m^(n)(x) = U_{n-m}(x) P_{m-1}^(n)(x) - V_{n-m}(x) P_{m-1}^(n)(x - 1),

with ``P_0^(n) = 1``.  No normalising constant is applied.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import Polynomial
from .errors import DegreeCollapse, HorizonExceeded
from .weights import WeightSpec, WeightSystem, assemble_system, uv_products


def build_UV(system: WeightSystem, m: int) -> tuple[Polynomial, Polynomial]:
    return uv_products(system, m)


@dataclass(frozen=True)
class RodriguesResult:
    n: int
    P: Polynomial
    intermediates: tuple  # P_0^(n), ..., P_n^(n)
    U_list: tuple  # U_{n-1}, ..., U_0 in the order they were used (step m uses U_{n-m})
    V_list: tuple
    degree_trace: tuple = field(default=())  # (m, expected, actual)

    def monic(self) -> Polynomial:
        return self.P.monic()


def rodrigues_construct(
    system: WeightSystem, n: int, *, check_degree: bool = True
) -> RodriguesResult:
    """All intermediates ``P_0^(n) .. P_n^(n)``; raises :class:`DegreeCollapse` when
    ``deg P_m^(n) != r m`` (pass ``check_degree=False`` to inspect such cases)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > system.Ncap:
        raise HorizonExceeded(f"n = {n} exceeds N = {system.Ncap}")
    r = system.r
    P = Polynomial.constant(1)
    inter = [P]
    Us, Vs, trace = [], [], []
    for m in range(1, n + 1):
        U, V = build_UV(system, n - m)
        P = U * P - V * P.shift_arg(1)
        Us.append(U)
        Vs.append(V)
        trace.append((m, r * m, P.degree))
        if check_degree and P.degree != r * m:
            raise DegreeCollapse(m, P.degree, r * m)
        inter.append(P)
    return RodriguesResult(n, P, tuple(inter), tuple(Us), tuple(Vs), tuple(trace))


def classical_construct(spec: WeightSpec, n: int, m: int) -> Polynomial:
    """``P_m^(n)`` for a single weight: ``rho_{n-m} P_m^(n) = nabla^m rho_n``."""
    if not 0 <= m <= n:
        raise ValueError("need 0 <= m <= n")
    system = assemble_system([spec])
    if n > system.Ncap:
        raise HorizonExceeded(f"n = {n} exceeds N = {system.Ncap}")
    P = Polynomial.constant(1)
    for step in range(1, m + 1):
        U, V = build_UV(system, n - step)
        P = U * P - V * P.shift_arg(1)
        if P.degree != step:
            raise DegreeCollapse(step, P.degree, step)
    return P
