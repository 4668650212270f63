from fractions import Fraction

import pytest
import sympy

from dmop.core import Polynomial
from dmop.errors import TailNotContracting
from dmop.families import PRESETS, check_family
from dmop.rodrigues import rodrigues_construct
from dmop.verify import (
    PearsonPair,
    check_pearson,
    derive_pearson,
    lattice_sum,
    moment_oracle,
    orthogonality_residuals,
)
from dmop.weights import assemble_system, forward_ratio, make_weight_spec

half = Fraction(1, 2)
x = Polynomial.x()
TOL = Fraction(1, 10**30)


def family(name, **params):
    return check_family(name, params or None)[1]


class TestResiduals:
    def test_degree_zero_is_vacuous(self):
        rep = orthogonality_residuals(family("charlier-charlier"), Polynomial.constant(1), 0)
        assert rep.passed and rep.entries == []

    def test_finite_lattices_are_exact_zero(self):
        s = family("angelesco-kravchuk")
        P = rodrigues_construct(s, 1).P
        rep = orthogonality_residuals(s, P, 1)
        assert [e.value for e in rep.entries] == [0, 0]
        assert all(e.bound is None for e in rep.entries)

    def test_unbounded_lattices_are_certified(self):
        s = family("charlier-charlier")
        P = rodrigues_construct(s, 3).P
        rep = orthogonality_residuals(s, P, 3)
        assert rep.passed and len(rep.entries) == 6
        for e in rep.entries:
            assert e.bound < TOL and abs(e.value) <= e.bound

    def test_wrong_polynomial_fails(self):
        s = family("charlier-charlier")
        P = rodrigues_construct(s, 2).P + 1
        assert not orthogonality_residuals(s, P, 2).passed

    def test_tail_bound_is_honest(self):
        # a much longer sum must land within the reported bound
        s = family("charlier-meixner")
        Q = rodrigues_construct(s, 2).P
        short = lattice_sum(s, 1, Q, tol=Fraction(1, 10**8))
        long = lattice_sum(s, 1, Q, tol=Fraction(1, 10**40))
        assert abs(short.value - long.value) <= short.bound + long.bound

    def test_charlier_mass(self):
        # sum b^k / k! with b = 1 is e
        s = assemble_system([make_weight_spec("charlier", b=1)])
        total = lattice_sum(s, 0, Polynomial.constant(1), tol=Fraction(1, 10**40))
        assert abs(total.value - sympy.E.evalf(60)) < 1e-39

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_intermediate_orthogonality(self, n):
        s = family("charlier-meixner")
        res = rodrigues_construct(s, n)
        for m in range(n + 1):
            assert orthogonality_residuals(s, res.intermediates[m], m, level=n - m).passed

    def test_not_contracting(self):
        s = assemble_system([make_weight_spec("meixner", alpha=1, b=2)])
        with pytest.raises(TailNotContracting):
            lattice_sum(s, 0, Polynomial.constant(1))

    def test_serialisation(self):
        s = family("charlier-charlier")
        d = orthogonality_residuals(s, rodrigues_construct(s, 1).P, 1).to_dict()
        assert d["verdict"] == "pass" and "tail_bound" in d["entries"][0]


def sympy_kernel(rows):
    M = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in r] for r in rows])
    return M.nullspace()


class TestOracle:
    @pytest.mark.parametrize("name,n", [("angelesco-kravchuk", 2), ("kravchuk-hahn-2", 3), ("kravchuk-hahn-1", 2)])
    def test_finite_systems_match_sympy(self, name, n):
        s = family(name)
        ms = moment_oracle(s, n)
        ref = sympy_kernel(ms.rows)
        assert ms.exact and ms.dimension == len(ref) == 1
        P = rodrigues_construct(s, n).P
        got = ms.compare(P)
        assert got["contains"] and got["proportional"]
        ratio = {sympy.Rational(c.numerator, c.denominator) / v for c, v in zip(P.coeffs, ref[0]) if v}
        assert len(ratio) == 1

    def test_degree_zero(self):
        ms = moment_oracle(family("charlier-charlier"), 0)
        assert ms.dimension == 1 and ms.compare(Polynomial.constant(3))["proportional"]

    @pytest.mark.parametrize("name", ["charlier-charlier", "charlier-meixner", "meixner-sorokin"])
    def test_truncated_systems(self, name):
        s = family(name)
        for n in (1, 2, 3):
            got = moment_oracle(s, n).compare(rodrigues_construct(s, n).P)
            assert got["dimension"] == 1 and got["contains"], got

    def test_detects_a_wrong_polynomial(self):
        s = family("angelesco-kravchuk")
        got = moment_oracle(s, 2).compare(rodrigues_construct(s, 2).P + x)
        assert not got["contains"]


class TestPearson:
    def test_charlier(self):
        s = assemble_system([make_weight_spec("charlier", b=3)])
        p = derive_pearson(s)
        assert p.sigma == x and p.tau == 3 - x

    def test_meixner(self):
        b, a = Fraction(1, 3), Fraction(5, 2)
        p = derive_pearson(assemble_system([make_weight_spec("meixner", alpha=a, b=b)]))
        assert p.tau == (b - 1) * x + b * a

    def test_charlier_pair(self):
        s = family("charlier-charlier")
        p = derive_pearson(s)
        assert p.sigma == x * (x - half)
        assert p.tau == 1 - x * (x - half)
        assert check_pearson(s, p).passed

    @pytest.mark.parametrize("name", sorted(PRESETS))
    def test_presets(self, name):
        s = family(name)
        p = derive_pearson(s)
        assert check_pearson(s, p).passed
        assert p.sigma.degree <= 3 and p.tau.degree == 2

    def test_cancelling_factor_keeps_degree(self):
        # the Hahn factor with alpha = 1 cancels in the reduced ratio
        s = family("kravchuk-hahn-1")
        assert forward_ratio(s).den.degree == 2
        assert derive_pearson(s).tau.degree == 2

    def test_perturbed_pair_fails(self):
        s = family("charlier-charlier")
        p = derive_pearson(s)
        rep = check_pearson(s, PearsonPair(p.sigma + 1, p.tau))
        assert "PEARSON.identity" in rep.clauses and "PEARSON.node" in rep.clauses
