from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dmop.core import (
    NEG_INF,
    Polynomial,
    cauchy_bound,
    format_scalar,
    poly_arith,
    poly_eval,
    poly_gcd,
    poly_shift_arg,
    positive_root_bound,
    ratfn_normalize,
    to_scalar,
)
from dmop.errors import ZeroDenominator

from conftest import polynomials, rationals

half = Fraction(1, 2)


class TestScalars:
    def test_strings_parse_exactly(self):
        assert to_scalar("-92/3") == Fraction(-92, 3)
        assert to_scalar("1e-30") == Fraction(1, 10**30)
        assert to_scalar("0.5") == half

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            to_scalar(0.5)
        with pytest.raises(TypeError):
            to_scalar(True)

    def test_garbage_rejected(self):
        with pytest.raises(ValueError):
            to_scalar("1/0")
        with pytest.raises(ValueError):
            to_scalar("pi")

    def test_format(self):
        assert format_scalar(Fraction(-3, 6)) == "-1/2"
        assert format_scalar(4) == "4"


class TestPolynomialBasics:
    def test_trimmed(self):
        assert Polynomial([1, 2, 0, 0]).coeffs == (1, 2)

    def test_zero_polynomial(self):
        z = Polynomial()
        assert z.degree == NEG_INF
        assert z.coeffs == ()
        assert (z * Polynomial([1, 1])).degree == NEG_INF

    def test_difference_of_squares(self, x):
        assert poly_arith(x + 1, x - 1, "mul") == x**2 - 1

    def test_add_zero(self):
        p = Polynomial([3, half, -1])
        assert poly_arith(p, Polynomial(), "add") == p

    def test_scale(self, x):
        assert poly_arith(2 * x, half, "scale") == x

    def test_divmod(self, x):
        q, r = (x**3 - 1).divmod(x - 1)
        assert q == x**2 + x + 1 and r.is_zero()

    def test_str(self, x):
        assert str(1 + half * x - x**2) == "-x^2 + 1/2*x + 1"


class TestShiftAndEval:
    def test_binomial_square(self, x):
        assert poly_shift_arg(x**2, 1) == x**2 - 2 * x + 1

    def test_identity_shift(self):
        p = Polynomial([1, -2, half, 7])
        assert poly_shift_arg(p, 0) == p

    def test_linear_shift(self, x):
        assert poly_shift_arg(x, half) == x - half

    def test_eval_examples(self, x):
        assert poly_eval(x**2 - 1, Fraction(3, 2)) == Fraction(5, 4)
        assert poly_eval(Polynomial([7, 1, 1]), 0) == 7
        assert poly_eval(x * (x - half), 1) == half

    def test_shift_matches_evaluation(self, x):
        p = Polynomial([1, -3, half, 2])
        q = p.shift_arg(Fraction(2, 3))
        for t in (-2, 0, half, 5):
            assert q(t) == p(t - Fraction(2, 3))


class TestRationalFunctions:
    def test_common_factor(self, x):
        f = ratfn_normalize(x**2 - 1, x - 1)
        assert f.num == x + 1 and f.den == Polynomial([1])

    def test_identity(self):
        p = Polynomial([1, 2, 3])
        f = ratfn_normalize(p, Polynomial([1]))
        assert f.num == p and f.den == Polynomial([1])

    def test_content(self, x):
        f = ratfn_normalize(2 * x, Polynomial([2]))
        assert f.num == x and f.den == Polynomial([1])

    def test_zero_denominator(self, x):
        with pytest.raises(ZeroDenominator):
            ratfn_normalize(x, Polynomial())

    def test_monic_denominator(self, x):
        f = ratfn_normalize(x, 3 * x + 3)
        assert f.den == x + 1 and f.num == x / 3

    def test_pole(self, x):
        f = ratfn_normalize(Polynomial([1]), x - 1)
        with pytest.raises(ZeroDenominator):
            f(1)

    def test_gcd(self, x):
        assert poly_gcd((x - 1) * (x + 2), 3 * (x - 1) * (x - 5)) == x - 1


class TestRootBounds:
    def test_cauchy(self, x):
        p = (x - 3) * (x + 5)
        assert cauchy_bound(p) > 5

    def test_positive_root_bound(self, x):
        p = Polynomial.from_roots([Fraction(1, 3), 7, -100])
        X = positive_root_bound(p)
        assert X >= 7
        assert all(p(X + k) != 0 and (p(X + k) > 0) == (p.lead > 0) for k in range(5))

    def test_no_sign_change(self, x):
        assert positive_root_bound(x**2 + 1) == 1


# -- property tests -----------------------------------------------------------------------


@st.composite
def lemma_instance(draw):
    r = draw(st.integers(0, 3))
    m = draw(st.integers(0, 4))
    a = draw(rationals.filter(lambda v: v != 0))
    b1, b2 = draw(rationals), draw(rationals)
    tail1 = draw(st.lists(rationals, min_size=r, max_size=r))
    tail2 = draw(st.lists(rationals, min_size=r, max_size=r))
    p_tail = draw(st.lists(rationals, min_size=m, max_size=m))
    q1 = Polynomial(tail1 + [b1, a])
    q2 = Polynomial(tail2 + [b2, a])
    p = Polynomial(p_tail + [1])
    return r, m, a, b1, b2, q1, q2, p


@settings(max_examples=1000, deadline=None)
@given(lemma_instance())
def test_leading_coefficient_lemma(inst):
    r, m, a, b1, b2, q1, q2, p = inst
    d = q1 * p - q2 * p.shift_arg(1)
    assert d.degree <= r + m
    assert d.coeff(r + m) == b1 - b2 + a * m


@settings(max_examples=300, deadline=None)
@given(polynomials(), rationals)
def test_shift_round_trip(p, t):
    assert poly_shift_arg(poly_shift_arg(p, t), -t) == p


@settings(max_examples=300, deadline=None)
@given(polynomials(), polynomials(), rationals)
def test_eval_is_multiplicative(p, q, t):
    assert poly_eval(p * q, t) == poly_eval(p, t) * poly_eval(q, t)


@settings(max_examples=300, deadline=None)
@given(polynomials(), polynomials())
def test_degree_law(p, q):
    if p.is_zero() or q.is_zero():
        assert (p * q).is_zero()
    else:
        assert (p * q).degree == p.degree + q.degree


@settings(max_examples=200, deadline=None)
@given(polynomials(4), polynomials(3).filter(lambda q: not q.is_zero()))
def test_normalized_fraction_invariants(p, q):
    f = ratfn_normalize(p, q)
    assert f.den.lead == 1
    assert poly_gcd(f.num, f.den).degree <= 0
    assert f.num * q == p * f.den
