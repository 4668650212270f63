"""The nine two-weight families, with their positivity clause sets.

Each preset turns a parameter mapping into a :class:`WeightSystem` and a
:class:`ValidationReport` covering the family's own clauses, the shift
hypothesis and MD2.  Families whose weight carries a single ``b**x`` put
``b`` on the first weight and ``b = 1`` on the second; only ``B`` matters.

Chained inequalities of the form ``a > c < d`` are read as ``a > c`` and
``d > c``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional

from .core import format_scalar, is_integer, to_scalar
from .errors import InvalidParameter
from .validate import ValidationReport, in_neg_range, validate_system
from .weights import INF, WeightSystem, assemble_system, make_weight_spec


def _in_naturals(q: Fraction) -> bool:
    return is_integer(q) and q >= 1


def _not_neg_int(q: Fraction) -> bool:
    return not in_neg_range(q, -INF)


@dataclass(frozen=True)
class FamilyPreset:
    name: str
    title: str
    case: str
    defaults: Mapping[str, str]
    integer_params: tuple
    build: Callable[[dict], list]
    clauses: Callable[[dict, ValidationReport], None]

    def parameters(self, overrides: Optional[Mapping] = None) -> dict:
        params = {k: to_scalar(v) for k, v in self.defaults.items()}
        for key, value in (overrides or {}).items():
            if key not in params:
                raise InvalidParameter(
                    f"{self.name} has no parameter {key!r} (expected one of {sorted(params)})"
                )
            params[key] = to_scalar(value)
        for key in self.integer_params:
            if not is_integer(params[key]) or params[key] < 0:
                raise InvalidParameter(f"{key} must be a nonnegative integer")
            params[key] = int(params[key])
        return params


# -- Case I ---------------------------------------------------------------------------------


def _shift_window(p, rep, prefix):
    d = p["gamma1"] - p["gamma2"]
    if not 0 < abs(d) < 1:
        rep.fail(f"{prefix}.shift", "0 < |gamma1 - gamma2| < 1", d=d)
    return d


def _cc_build(p):
    return [
        make_weight_spec("charlier", b=p["b"], gamma=p["gamma1"]),
        make_weight_spec("charlier", b=1, gamma=p["gamma2"]),
    ]


def _cc_clauses(p, rep):
    if not p["b"] > 0:
        rep.fail("CC.b", "b > 0", b=p["b"])
    _shift_window(p, rep, "CC")


def _cm_build(p):
    return [
        make_weight_spec("charlier", b=p["b"], gamma=p["gamma1"]),
        make_weight_spec("meixner", b=1, alpha=p["alpha"], gamma=p["gamma2"]),
    ]


def _cm_clauses(p, rep):
    if not p["b"] > 0:
        rep.fail("CM.b", "b > 0", b=p["b"])
    if not p["alpha"] > 0:
        rep.fail("CM.alpha", "alpha > 0", alpha=p["alpha"])
    d = _shift_window(p, rep, "CM")
    # Gamma(x - gamma2 + alpha) must stay positive on the Charlier lattice
    if not -p["alpha"] < d:
        rep.fail("CM.window", "-alpha < gamma1 - gamma2", d=d, alpha=p["alpha"])


def _ms_build(p):
    return [
        make_weight_spec("meixner", b=p["b"], alpha=p["alpha1"], gamma=p["gamma1"]),
        make_weight_spec("meixner", b=1, alpha=p["alpha2"], gamma=p["gamma2"]),
    ]


def _ms_clauses(p, rep):
    if not 0 < p["b"] < 1:
        rep.fail("MS.b", "0 < b < 1", b=p["b"])
    for key in ("alpha1", "alpha2"):
        if not p[key] > 0:
            rep.fail("MS.alpha", f"{key} > 0", **{key: p[key]})
    d = _shift_window(p, rep, "MS")
    if not -p["alpha2"] < d < p["alpha1"]:
        rep.fail(
            "MS.window", "-alpha2 < gamma1 - gamma2 < alpha1",
            d=d, alpha1=p["alpha1"], alpha2=p["alpha2"],
        )


def _kk_build(p):
    return [
        make_weight_spec("kravchuk", b=p["b"], N=p["N1"], gamma=p["gamma1"]),
        make_weight_spec("kravchuk", b=1, N=p["N2"], gamma=p["gamma2"]),
    ]


def _alternatives(rep, prefix, options):
    """``options``: list of (label, [(ok, text, values), ...]); pass if any option passes."""
    failures = []
    for label, conds in options:
        bad = [(text, values) for ok, text, values in conds if not ok]
        if not bad:
            rep.notes.append(f"{prefix}.{label} satisfied")
            return label
        failures.append((label, bad))
    for label, bad in failures:
        for text, values in bad:
            rep.fail(f"{prefix}.{label}", text, **values)
    return None


def _kk_clauses(p, rep):
    if not p["b"] > 0:
        rep.fail("KK.b", "b > 0", b=p["b"])
    N1, N2 = p["N1"], p["N2"]
    d = p["gamma1"] - p["gamma2"]
    for key in ("N1", "N2"):
        if p[key] < 1:
            rep.fail("KK.N", f"{key} >= 1", **{key: p[key]})
    _alternatives(rep, "KK", [
        ("a", [(N1 == N2, "N1 = N2", {"N1": N1, "N2": N2}),
               (0 < abs(d) < 1, "0 < |gamma1 - gamma2| < 1", {"d": d})]),
        ("b", [(N1 == N2 - 1, "N1 = N2 - 1", {"N1": N1, "N2": N2}),
               (0 < d < 1, "0 < gamma1 - gamma2 < 1", {"d": d})]),
    ])
    if p["b"] == 1:
        rep.fail("KK.B", "B != 1 (leading coefficients cancel; see MD2.2)", B=p["b"])


def _kh_build(p):
    return [
        make_weight_spec("kravchuk", b=-1, N=p["N1"], gamma=p["gamma1"]),
        make_weight_spec("hahn", alpha=p["alpha"], beta=p["beta"], N=p["N2"], gamma=p["gamma2"]),
    ]


def _khi_clauses(p, rep):
    a, be, N1, N2 = p["alpha"], p["beta"], p["N1"], p["N2"]
    g1, g2 = p["gamma1"], p["gamma2"]
    d = g1 - g2
    beta_side = [
        (_not_neg_int(be - g1 + g2), "beta - gamma1 + gamma2 not in -Z_+", {"beta": be, "d": d}),
        (_not_neg_int(be), "beta not in -Z_+", {"beta": be}),
    ]
    alpha_side = [
        (_not_neg_int(a + g1 - g2), "alpha + gamma1 - gamma2 not in -Z_+", {"alpha": a, "d": d}),
        (_not_neg_int(a), "alpha not in -Z_+", {"alpha": a}),
    ]

    def chain(lhs_name, lhs, other_name, other, floor):
        return [
            (lhs > floor, f"{lhs_name} > {format_scalar(floor)}", {lhs_name: lhs}),
            (other > floor, f"{other_name} > {format_scalar(floor)}", {other_name: other}),
        ]

    same = [(N1 == N2, "N1 = N2", {"N1": N1, "N2": N2}),
            (0 < abs(d) < 1, "0 < |gamma1 - gamma2| < 1", {"d": d})]
    minus = [(N1 == N2 - 1, "N1 = N2 - 1", {"N1": N1, "N2": N2}),
             (0 < d < 1, "0 < gamma1 - gamma2 < 1", {"d": d})]
    plus = [(N1 == N2 + 1, "N1 = N2 + 1", {"N1": N1, "N2": N2}),
            (0 < -d < 1, "0 < gamma2 - gamma1 < 1", {"d": d})]
    _alternatives(rep, "KHI", [
        ("a", same + chain("alpha", a, "-beta-N2", -be - N2, max(0, -d)) + beta_side),
        ("b", same + chain("beta", be, "-alpha-N2", -a - N2, max(0, d)) + alpha_side),
        ("c", minus + chain("alpha", a, "-beta-N2", -be - N2, 0) + beta_side),
        ("d", minus + chain("beta", be, "-alpha-N2", -a - N2, 0) + alpha_side),
        ("e", plus + chain("alpha", a, "-beta-N2", -be - N2, -d) + beta_side),
        ("f", plus + chain("beta", be, "-alpha-N2", -a - N2, 1 + d) + alpha_side),
    ])


# -- Case II --------------------------------------------------------------------------------


def _right_of(p, rep, prefix, N):
    d = p["gamma1"] - p["gamma2"]
    if not d > N:
        rep.fail(f"{prefix}.window", "gamma1 - gamma2 > N", d=d, N=N)
    if _in_naturals(d):
        rep.fail(f"{prefix}.nonint", "gamma1 - gamma2 not in N", d=d)


def _ck_build(p):
    return [
        make_weight_spec("charlier", b=-p["b"], gamma=p["gamma1"]),
        make_weight_spec("kravchuk", b=1, N=p["N"], gamma=p["gamma2"]),
    ]


def _ck_clauses(p, rep):
    if not p["b"] > 0:
        rep.fail("CK.b", "b > 0", b=p["b"])
    _right_of(p, rep, "CK", p["N"])


def _mk_build(p):
    return [
        make_weight_spec("meixner", b=-p["b"], alpha=p["alpha"], gamma=p["gamma1"]),
        make_weight_spec("kravchuk", b=1, N=p["N"], gamma=p["gamma2"]),
    ]


def _mk_clauses(p, rep):
    if not 0 < p["b"] < 1:
        rep.fail("MK.b", "0 < b < 1", b=p["b"])
    if not p["alpha"] > 0:
        rep.fail("MK.alpha", "alpha > 0", alpha=p["alpha"])
    _right_of(p, rep, "MK", p["N"])
    # Gamma(x - gamma1 + alpha) alternates along the Kravchuk lattice unless its
    # argument stays positive there, and then mu_2 alternates too
    d = p["gamma1"] - p["gamma2"]
    if not p["alpha"] > d:
        rep.fail("MK.sign", "alpha > gamma1 - gamma2 (constant sign on the Kravchuk lattice)",
                 alpha=p["alpha"], d=d)


def _ak_build(p):
    return [
        make_weight_spec("kravchuk", b=-p["b"], N=p["N1"], gamma=p["gamma1"]),
        make_weight_spec("kravchuk", b=1, N=p["N2"], gamma=p["gamma2"]),
    ]


def _ak_clauses(p, rep):
    if not p["b"] > 0:
        rep.fail("AK.b", "b > 0", b=p["b"])
    _right_of(p, rep, "AK", p["N2"])


def _khii_clauses(p, rep):
    a, be, N1, N2 = p["alpha"], p["beta"], p["N1"], p["N2"]
    g1, g2 = p["gamma1"], p["gamma2"]
    e = g2 - g1
    common = [(e > N1, "gamma2 - gamma1 > N1", {"e": e, "N1": N1}),
              (not _in_naturals(e), "gamma2 - gamma1 not in N", {"e": e})]
    _alternatives(rep, "KHII", [
        ("a", common + [
            (a > e, "alpha > gamma2 - gamma1", {"alpha": a, "e": e}),
            (be > 0, "beta > 0", {"beta": be}),
        ]),
        ("b", common + [
            (-be - N2 > e, "-beta - N2 > gamma2 - gamma1", {"beta": be, "e": e}),
            (-a - N2 > 0, "-alpha - N2 > 0", {"alpha": a}),
            (_not_neg_int(a + g1 - g2), "alpha + gamma1 - gamma2 not in -Z_+", {"alpha": a}),
            (_not_neg_int(be - g1 + g2), "beta - gamma1 + gamma2 not in -Z_+", {"beta": be}),
            (_not_neg_int(a), "alpha not in -Z_+", {"alpha": a}),
            (_not_neg_int(be), "beta not in -Z_+", {"beta": be}),
        ]),
    ])


PRESETS = {
    p.name: p
    for p in [
        FamilyPreset(
            "charlier-charlier", "Charlier-Charlier", "I",
            {"b": "1", "gamma1": "0", "gamma2": "1/2"}, (),
            _cc_build, _cc_clauses,
        ),
        FamilyPreset(
            "charlier-meixner", "Charlier-Meixner", "I",
            {"b": "1", "alpha": "1", "gamma1": "0", "gamma2": "1/2"}, (),
            _cm_build, _cm_clauses,
        ),
        FamilyPreset(
            "meixner-sorokin", "Meixner-Sorokin", "I",
            {"b": "1/2", "alpha1": "1", "alpha2": "1", "gamma1": "0", "gamma2": "1/2"}, (),
            _ms_build, _ms_clauses,
        ),
        FamilyPreset(
            "kravchuk-kravchuk", "Kravchuk-Kravchuk", "I",
            {"b": "2", "N1": "20", "N2": "20", "gamma1": "0", "gamma2": "1/2"}, ("N1", "N2"),
            _kk_build, _kk_clauses,
        ),
        FamilyPreset(
            "kravchuk-hahn-1", "Kravchuk-Hahn I", "I",
            {"alpha": "1", "beta": "-92/3", "N1": "20", "N2": "20",
             "gamma1": "-1/3", "gamma2": "0"}, ("N1", "N2"),
            _kh_build, _khi_clauses,
        ),
        FamilyPreset(
            "charlier-kravchuk", "Charlier-Kravchuk", "II",
            {"b": "1", "N": "20", "gamma1": "20", "gamma2": "-1/2"}, ("N",),
            _ck_build, _ck_clauses,
        ),
        FamilyPreset(
            "meixner-kravchuk", "Meixner-Kravchuk", "II",
            {"b": "1/2", "alpha": "21", "N": "20", "gamma1": "20", "gamma2": "-1/2"}, ("N",),
            _mk_build, _mk_clauses,
        ),
        FamilyPreset(
            "angelesco-kravchuk", "Angelesco-Kravchuk", "II",
            {"b": "2", "N1": "20", "N2": "20", "gamma1": "20", "gamma2": "-1/2"}, ("N1", "N2"),
            _ak_build, _ak_clauses,
        ),
        # Kravchuk lattice on the left, Hahn lattice on the right; swapping the
        # shifts breaks both the shift condition and the family clauses.
        FamilyPreset(
            "kravchuk-hahn-2", "Kravchuk-Hahn II", "II",
            {"alpha": "21", "beta": "4/3", "N1": "20", "N2": "20",
             "gamma1": "-1/3", "gamma2": "20"}, ("N1", "N2"),
            _kh_build, _khii_clauses,
        ),
    ]
}


def get_preset(name) -> FamilyPreset:
    if isinstance(name, FamilyPreset):
        return name
    try:
        return PRESETS[name]
    except KeyError:
        raise InvalidParameter(
            f"unknown family {name!r}; choose from {', '.join(PRESETS)}"
        ) from None


def check_family(
    preset, params: Optional[Mapping] = None, *, n_max: Optional[int] = None
) -> tuple[ValidationReport, WeightSystem]:
    """Evaluate a family's clauses plus the shift hypothesis and MD2.

    Returns the report and the instantiated system (built even when the
    report fails, so callers can inspect or deliberately bypass validation).
    """
    preset = get_preset(preset)
    p = preset.parameters(params)
    rep = ValidationReport()
    preset.clauses(p, rep)
    system = assemble_system(preset.build(p), check_shifts=False)
    rep.extend(validate_system(system, n_max))
    rep.details.update({"family": preset.name, **p})
    return rep, system
