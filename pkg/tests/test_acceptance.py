"""One test per acceptance criterion; the conftest prints a pass/fail line for each."""

import random
import time
from fractions import Fraction
from math import comb

import pytest

from dmop.core import Polynomial
from dmop.errors import DegreeCollapse, IntegerShiftDifference
from dmop.families import PRESETS, check_family
from dmop.rodrigues import rodrigues_construct
from dmop.validate import check_D2, check_MD2, validate_system
from dmop.verify import check_pearson, derive_pearson, moment_oracle, orthogonality_residuals
from dmop.weights import assemble_system, make_weight_spec, relative_weights
from dmop.zeros import conjugate_closed, find_zeros, residual_check, separation, zero_report

FINITE = ["kravchuk-kravchuk", "kravchuk-hahn-1", "angelesco-kravchuk", "kravchuk-hahn-2"]
UNBOUNDED = ["charlier-charlier", "charlier-meixner", "meixner-sorokin"]
TOL = Fraction(1, 10**30)


def system(name, params=None):
    rep, s = check_family(name, params)
    assert rep.passed, rep.to_dict()
    return s


def rand_fraction(rng, lo, hi, den=6):
    q = rng.randint(1, den)
    return Fraction(rng.randint(int(lo * q), int(hi * q)), q)


@pytest.fixture
def criterion(record_property):
    def label(text):
        record_property("criterion", text)
    return label


def test_criterion_1(criterion):
    criterion("1 degree law, nine presets, n <= min(10, N)")
    t0 = time.perf_counter()
    for name in PRESETS:
        s = system(name)
        top = 10 if s.Ncap == float("inf") else min(10, s.Ncap)
        for n in range(top + 1):
            assert rodrigues_construct(s, n).P.degree == 2 * n, (name, n)
    assert time.perf_counter() - t0 < 10


def test_criterion_2(criterion):
    criterion("2 exact orthogonality on finite lattices, n <= 10")
    t0 = time.perf_counter()
    for name in FINITE:
        s = system(name)
        for n in range(11):
            rep = orthogonality_residuals(s, rodrigues_construct(s, n).P, n)
            assert len(rep.entries) == 2 * n
            assert all(e.bound is None and e.value == 0 for e in rep.entries), (name, n)
    assert time.perf_counter() - t0 < 30


def test_criterion_3(criterion):
    criterion("3 certified orthogonality on unbounded lattices, n <= 8, tol 1e-30")
    t0 = time.perf_counter()
    for name in UNBOUNDED:
        s = system(name)
        for n in range(9):
            rep = orthogonality_residuals(s, rodrigues_construct(s, n).P, n, TOL)
            assert len(rep.entries) == 2 * n
            for e in rep.entries:
                assert e.bound is not None and e.bound < TOL and abs(e.value) <= e.bound, (name, n, e)
    assert time.perf_counter() - t0 < 60


def test_criterion_4(criterion):
    criterion("4 moment oracle agrees with the Rodrigues polynomial, n <= 6")
    for name, preset in PRESETS.items():
        s = system(name)
        for n in range(7):
            ms = moment_oracle(s, n, TOL)
            got = ms.compare(rodrigues_construct(s, n).P)
            if preset.case == "II":
                assert ms.dimension == 1, (name, n)
            if ms.exact:
                assert got["contains"] and got["proportional"], (name, n, got)
            else:
                assert got["contains"] and got["rel_error"] < 1e-20, (name, n, got)


def test_criterion_5(criterion):
    criterion("5 Case II zeros real, n per hull, separated, n <= 20 at 256 bits")
    t0 = time.perf_counter()
    for name in ("angelesco-kravchuk", "kravchuk-hahn-2"):
        s = system(name)
        for n in range(1, 21):
            P = rodrigues_construct(s, n).P
            zs = find_zeros(P, 256)
            rep = zero_report(zs, s)
            assert residual_check(P, zs)
            assert rep.hull_counts == [n, n], (name, n, rep.hull_counts)
            assert rep.real_count == 2 * n and rep.max_imag_real < 1e-10
            assert separation(zs) > 1e-6
    assert time.perf_counter() - t0 < 120


def pearson_ok(s):
    pair = derive_pearson(s)
    rep = check_pearson(s, pair)
    return rep.passed and rep.details["residual"] == "0" and pair.sigma.degree <= 3 and pair.tau.degree == 2


def test_criterion_6(criterion):
    criterion("6 Pearson pair, presets and random valid draws")
    for name in PRESETS:
        assert pearson_ok(system(name)), name
    rng = random.Random(6)
    checked = 0
    for _ in range(400):
        name = rng.choice(sorted(PRESETS))
        params = {}
        for k, v in PRESETS[name].parameters().items():
            params[k] = v if isinstance(v, int) else v + rand_fraction(rng, -1, 1)
        try:
            rep, s = check_family(name, params)
        except Exception:
            continue
        if rep.passed:
            assert pearson_ok(s), (name, params)
            checked += 1
    assert checked >= 100


def test_criterion_7(criterion):
    criterion("7 negative controls")
    half = Fraction(1, 2)
    # (a)
    rep, _ = check_family("kravchuk-kravchuk", {"b": 1})
    assert "MD2.2" in rep.clauses
    s = assemble_system([make_weight_spec("kravchuk", b=1, N=20), make_weight_spec("kravchuk", b=1, N=20, gamma=half)])
    with pytest.raises(DegreeCollapse):
        rodrigues_construct(s, 1)
    # (b)
    for d in (1, -2, 5):
        pair = [make_weight_spec("charlier", b=1), make_weight_spec("charlier", b=1, gamma=d)]
        with pytest.raises(IntegerShiftDifference):
            assemble_system(pair)
        assert "SHIFT" in validate_system(assemble_system(pair, check_shifts=False)).clauses
    # (c)
    N = 6
    for total in range(0, 2 * N - 1):
        spec = make_weight_spec("hahn", alpha=Fraction(1, 3), beta=-total - Fraction(1, 3), N=N)
        assert "D2.Hahn.sum" in check_D2(spec).clauses, total
    for total in (-1, 2 * N - 1):
        spec = make_weight_spec("hahn", alpha=Fraction(1, 3), beta=-total - Fraction(1, 3), N=N)
        assert "D2.Hahn.sum" not in check_D2(spec).clauses, total


def lemma_case(rng):
    r, m = rng.randint(0, 3), rng.randint(0, 4)
    a = rand_fraction(rng, -9, 9)
    while a == 0:
        a = rand_fraction(rng, -9, 9)
    q1 = Polynomial([rand_fraction(rng, -9, 9) for _ in range(r + 1)] + [a])
    q2 = Polynomial([rand_fraction(rng, -9, 9) for _ in range(r + 1)] + [a])
    p = Polynomial([rand_fraction(rng, -9, 9) for _ in range(m)] + [1])
    d = q1 * p - q2 * p.shift_arg(1)
    return d.degree <= r + m and d.coeff(r + m) == q1.coeff(r) - q2.coeff(r) + a * m


def nabla_identity(s, n, m, nodes=6):
    P = rodrigues_construct(s, n).intermediates[m]
    for j in range(s.r):
        size = s.support_size(j)
        count = nodes if size == float("inf") else min(nodes, size)
        low = relative_weights(s, j, count, level=n - m).weights
        high = relative_weights(s, j, count, level=n).weights
        g = s.weights[j].gamma
        for k in range(count):
            rhs = sum((-1) ** i * comb(m, i) * high[k - i] for i in range(m + 1) if k >= i)
            if P(g + k) * low[k] != rhs:
                return False
    return True


def test_criterion_8(criterion):
    criterion("8 property suites")
    rng = random.Random(8)
    assert sum(lemma_case(rng) for _ in range(1000)) == 1000
    for name in PRESETS:
        s = system(name)
        for _ in range(3):
            t = rand_fraction(rng, -20, 20)
            n = rng.randint(1, 4)
            assert rodrigues_construct(s.translated(t), n).P == rodrigues_construct(s, n).P.shift_arg(t)
        for n in range(4):
            for m in range(n + 1):
                assert nabla_identity(s, n, m), (name, n, m)
    for _ in range(10):
        lam = rand_fraction(rng, 1, 9)
        b1 = rand_fraction(rng, 1, 9)
        specs = lambda u, v: [make_weight_spec("charlier", b=u), make_weight_spec("charlier", b=v, gamma=Fraction(1, 2))]
        a = rodrigues_construct(assemble_system(specs(b1, 1 / b1)), 3).P
        b = rodrigues_construct(assemble_system(specs(b1 * lam, 1 / (b1 * lam))), 3).P
        assert a == b
    for name in PRESETS:
        s = system(name)
        for n in (3, 6):
            assert conjugate_closed(find_zeros(rodrigues_construct(s, n).P)), (name, n)
