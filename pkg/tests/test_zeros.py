import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dmop.core import Polynomial
from dmop.families import check_family
from dmop.rodrigues import rodrigues_construct
from dmop.zeros import (
    ZeroSet,
    conjugate_closed,
    find_zeros,
    locate_zeros,
    residual_check,
    separation,
    zero_report,
)

x = Polynomial.x()


def test_i_and_minus_i():
    zs = locate_zeros(x * x + 1)
    got = sorted(zs.as_complex(), key=lambda z: z.imag)
    assert abs(got[0] + 1j) < 1e-60 and abs(got[1] - 1j) < 1e-60
    assert conjugate_closed(zs) and residual_check(x * x + 1, zs)


def test_charlier_pair_first_polynomial():
    P = 1 - x * x + x / 2
    got = [z.real for z in locate_zeros(P).as_complex()]
    want = sorted([(1 - math.sqrt(17)) / 4, (1 + math.sqrt(17)) / 4])
    assert got == pytest.approx(want, abs=1e-15)


def test_triple_root():
    P = (x - Fraction(1, 3)) ** 3 * (x + 2)
    zs = find_zeros(P)
    assert residual_check(P, zs)
    for z in zs.as_complex()[1:]:
        assert abs(z - 1 / 3) < 1e-20


def test_degree_zero():
    zs = locate_zeros(Polynomial.constant(5))
    assert len(zs) == 0
    rep = zero_report(zs, [(0, 1), (2, 3)])
    assert rep.degree == 0 and rep.hull_counts == [0, 0] and rep.simplicity_margin == math.inf
    with pytest.raises(ValueError):
        find_zeros(Polynomial.constant(5))


def test_deterministic():
    P = rodrigues_construct(check_family("charlier-charlier")[1], 4).P
    a, b = find_zeros(P), find_zeros(P)
    assert a.zeros == b.zeros and a.iterations == b.iterations


def test_precision_escalates_for_close_roots():
    # below the separation threshold every precision is tried before giving up
    eps = Fraction(1, 10**7)
    P = (x - 1) * (x - 1 - eps) * (x + 1)
    zs = locate_zeros(P)
    assert zs.precision_bits == 4096
    assert separation(zs) == pytest.approx(1e-7, rel=1e-12)


def test_residual_check_rejects_wrong_zeros():
    good = find_zeros(x * x - 2)
    from gmpy2 import mpc
    bad = ZeroSet((mpc(1), mpc(2)), (Fraction(1), Fraction(2)), 256)
    assert residual_check(x * x - 2, good) and not residual_check(x * x - 2, bad)


def test_angelesco_kravchuk_counts():
    _, s = check_family("angelesco-kravchuk")
    P = rodrigues_construct(s, 5).P
    rep = zero_report(locate_zeros(P), s)
    assert rep.real_count == 10 and rep.hull_counts == [5, 5]
    assert rep.to_dict()["complex_zeros"] == []


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(-10, 10, max_denominator=5), min_size=1, max_size=6, unique=True),
       st.lists(st.tuples(st.fractions(-5, 5, max_denominator=3), st.fractions(Fraction(1, 3), 5, max_denominator=3)),
                max_size=2, unique=True))
def test_real_polynomials_have_conjugate_closed_zeros(reals, pairs):
    P = Polynomial.from_roots(reals)
    for a, b in pairs:
        P = P * ((x - a) * (x - a) + b * b)
    zs = locate_zeros(P)
    assert len(zs) == P.degree
    assert residual_check(P, zs) and conjugate_closed(zs)
    got = sorted(z.real for z in zs.as_complex() if abs(z.imag) < 1e-20)
    assert got == pytest.approx(sorted(float(r) for r in reals), abs=1e-20)
