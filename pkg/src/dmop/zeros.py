"""Zeros of exact polynomials by Aberth-Ehrlich iteration in multiprecision.

Coefficients are rounded once to the working precision (``gmpy2`` mpfr);
everything upstream stays exact.  Initial guesses lie on a circle around the
root centroid whose radius is a Fujiwara bound, with angles jittered by a
fixed-seed generator so that runs are reproducible bit for bit.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

import gmpy2
from gmpy2 import mpc, mpfr, mpq

from .core import Polynomial
from .errors import NoConvergence
from .weights import INF, WeightSystem

DEFAULT_SEED = 20201
DEFAULT_PRECISION = 256
MAX_PRECISION = 4096


@dataclass(frozen=True)
class ZeroSet:
    zeros: tuple  # gmpy2.mpc, sorted by (re, im)
    residuals: tuple  # |P(z)| per zero
    precision_bits: int
    iterations: int = 0

    def __len__(self) -> int:
        return len(self.zeros)

    def as_complex(self) -> list:
        return [complex(float(z.real), float(z.imag)) for z in self.zeros]


def _context(bits: int):
    return gmpy2.context(gmpy2.get_context(), precision=bits, real_prec=bits, imag_prec=bits)


def _horner(coeffs, z):
    """``(P(z), P'(z))`` with ``coeffs`` from highest power down."""
    p = coeffs[0]
    dp = mpc(0)
    for c in coeffs[1:]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _fujiwara(coeffs) -> mpfr:
    lead = abs(coeffs[0])
    d = len(coeffs) - 1
    best = mpfr(0)
    for k in range(1, d + 1):
        a = abs(coeffs[k]) / lead
        if k == d:
            a = a / 2
        if a:
            best = max(best, gmpy2.root(a, k))
    return 2 * best


def _shifted(coeffs, c):
    """Coefficients (highest first) of ``P(x + c)``."""
    a = list(reversed(coeffs))
    d = len(a) - 1
    for i in range(d):
        for j in range(d - 1, i - 1, -1):
            a[j] += c * a[j + 1]
    return list(reversed(a))


def find_zeros(
    P: Polynomial,
    precision_bits: int = DEFAULT_PRECISION,
    *,
    max_iter: Optional[int] = None,
    seed: int = DEFAULT_SEED,
) -> ZeroSet:
    d = P.degree
    if d < 1:
        raise ValueError("find_zeros needs a polynomial of degree >= 1")
    max_iter = max_iter or 200 + 20 * d + precision_bits // 2
    with _context(precision_bits):
        coeffs = [mpfr(mpq(c.numerator, c.denominator)) for c in reversed(P.coeffs)]
        lead = coeffs[0]
        coeffs = [c / lead for c in coeffs]
        center = -coeffs[1] / d
        radius = _fujiwara(_shifted(coeffs, center)) or mpfr(1)
        rng = random.Random(seed)
        phase = rng.random()
        z = []
        for k in range(d):
            theta = 2 * math.pi * (k + phase + 0.25 * rng.random()) / d
            z.append(center + radius * mpc(math.cos(theta), math.sin(theta)))
        eps = mpfr(2) ** (-(precision_bits // 2))
        floor = mpfr(2) ** (-(precision_bits // 8))
        best = None
        stall = 0
        it = 0
        converged = False
        for it in range(1, max_iter + 1):
            worst = mpfr(0)
            for i in range(d):
                zi = z[i]
                p, dp = _horner(coeffs, zi)
                if p == 0:
                    continue
                ratio = p / dp if dp != 0 else mpc(eps)
                s = mpc(0)
                for j in range(d):
                    if j != i:
                        diff = zi - z[j]
                        if diff != 0:
                            s += 1 / diff
                denom = 1 - ratio * s
                w = ratio / denom if denom != 0 else ratio
                z[i] = zi - w
                worst = max(worst, abs(w) / max(mpfr(1), abs(z[i])))
            if worst < eps:
                converged = True
                break
            # clustered (multiple) zeros only converge to ~eps^(1/mult); detect stagnation
            if best is None or worst < best / 2:
                best, stall = worst, 0
            else:
                best = min(best, worst)
                stall += 1
                if stall >= 12 and worst < floor and _residuals_ok(coeffs, z, precision_bits):
                    converged = True
                    break
        residuals = [abs(_horner(coeffs, zi)[0]) * abs(lead) for zi in z]
        order = sorted(range(d), key=lambda i: (z[i].real, z[i].imag))
        zs = ZeroSet(
            tuple(z[i] for i in order),
            tuple(residuals[i] for i in order),
            precision_bits,
            it,
        )
    if not converged:
        raise NoConvergence(f"Aberth iteration did not converge in {max_iter} sweeps", partial=zs)
    return zs


def _abs_eval(coeffs, z) -> mpfr:
    """``sum |a_k| |z|^k``, the scale for a backward-error residual test."""
    r = abs(z)
    acc = abs(coeffs[0])
    for c in coeffs[1:]:
        acc = acc * r + abs(c)
    return acc


def _residuals_ok(coeffs, z, bits) -> bool:
    tol = mpfr(2) ** (-(bits // 4))
    return all(abs(_horner(coeffs, zi)[0]) <= tol * _abs_eval(coeffs, zi) for zi in z)


def residual_check(P: Polynomial, zset: ZeroSet) -> bool:
    """``|P(z)| <= 2^(-prec/4) * max|coeff| * max(1, |z|)^deg`` for every zero."""
    if not zset.zeros:
        return True
    with _context(zset.precision_bits):
        scale = max(abs(mpfr(mpq(c.numerator, c.denominator))) for c in P.coeffs)
        tol = mpfr(2) ** (-(zset.precision_bits // 4))
        d = P.degree
        return all(
            r <= tol * scale * max(mpfr(1), abs(z)) ** d
            for z, r in zip(zset.zeros, zset.residuals)
        )


def separation(zset: ZeroSet) -> float:
    zs = zset.zeros
    best = math.inf
    for i in range(len(zs)):
        for j in range(i + 1, len(zs)):
            best = min(best, float(abs(zs[i] - zs[j])))
    return best


def locate_zeros(
    P: Polynomial,
    precision_bits: int = DEFAULT_PRECISION,
    *,
    min_separation: float = 1e-6,
    max_bits: int = MAX_PRECISION,
    seed: int = DEFAULT_SEED,
) -> ZeroSet:
    """:func:`find_zeros`, doubling precision while the residual or separation check fails."""
    if P.degree < 1:
        return ZeroSet((), (), precision_bits)
    bits = precision_bits
    while True:
        try:
            zs = find_zeros(P, bits, seed=seed)
        except NoConvergence:
            if bits * 2 > max_bits:
                raise
            bits *= 2
            continue
        if (residual_check(P, zs) and separation(zs) > min_separation) or bits * 2 > max_bits:
            return zs
        bits *= 2


@dataclass
class ZeroRecord:
    re: float
    im: float
    hull: Optional[int]  # 1-based, None when outside every hull or complex
    is_real: bool


@dataclass
class ZeroReport:
    degree: int
    hull_counts: list
    real_count: int
    max_imag_real: float
    complex_zeros: list
    simplicity_margin: float
    conjugate_closed: bool
    records: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "hull_counts": list(self.hull_counts),
            "real_count": self.real_count,
            "max_imag_real": self.max_imag_real,
            "complex_zeros": [[z.real, z.imag] for z in self.complex_zeros],
            "simplicity_margin": self.simplicity_margin,
            "conjugate_closed": self.conjugate_closed,
        }


def zero_report(
    zset: ZeroSet, system_or_hulls, real_tol: float = 1e-10
) -> ZeroReport:
    """Realness, hull membership (closed hulls widened by ``real_tol``) and conjugate symmetry."""
    if isinstance(system_or_hulls, WeightSystem):
        hulls = [system_or_hulls.hull(j) for j in range(system_or_hulls.r)]
    else:
        hulls = list(system_or_hulls)
    counts = [0] * len(hulls)
    records = []
    max_imag = 0.0
    complex_zeros = []
    for z in zset.zeros:
        re, im = float(z.real), float(z.imag)
        is_real = abs(im) < real_tol
        label = None
        if is_real:
            max_imag = max(max_imag, abs(im))
            for j, (lo, hi) in enumerate(hulls):
                if float(lo) - real_tol <= re and (hi == INF or re <= float(hi) + real_tol):
                    label = j + 1
                    counts[j] += 1
                    break
        else:
            complex_zeros.append(complex(re, im))
        records.append(ZeroRecord(re, im, label, is_real))
    return ZeroReport(
        degree=len(zset.zeros),
        hull_counts=counts,
        real_count=sum(r.is_real for r in records),
        max_imag_real=max_imag,
        complex_zeros=complex_zeros,
        simplicity_margin=separation(zset),
        conjugate_closed=conjugate_closed(zset),
        records=records,
    )


def conjugate_closed(zset: ZeroSet, tol: Optional[float] = None) -> bool:
    """Every zero has a distinct partner near its conjugate (real zeros pair with themselves)."""
    zs = zset.zeros
    if tol is None:
        tol = 2.0 ** (-(zset.precision_bits // 4))
    with _context(zset.precision_bits):
        used = [False] * len(zs)
        for i, z in enumerate(zs):
            if used[i]:
                continue
            scale = max(1.0, float(abs(z)))
            if abs(float(z.imag)) <= tol * scale:
                used[i] = True
                continue
            target = z.conjugate() if hasattr(z, "conjugate") else mpc(z.real, -z.imag)
            match = None
            for j in range(len(zs)):
                if j != i and not used[j] and float(abs(zs[j] - target)) <= tol * scale:
                    match = j
                    break
            if match is None:
                return False
            used[i] = used[match] = True
    return True


def zeros_of(polys: Sequence[Polynomial], precision_bits: int = DEFAULT_PRECISION) -> list:
    return [locate_zeros(P, precision_bits) for P in polys]
