"""Command-line driver.

Subcommands: ``construct``, ``verify``, ``zeros``, ``validate`` and ``presets``.
A run is described by a JSON config (``--config``) and/or flags; flags win.

Exit codes: 0 ok, 1 malformed config, 2 validation failure, 3 degree collapse,
4 verification failure, 5 zero finder did not converge.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import __version__
from .core import Polynomial, format_scalar, to_scalar
from .errors import ConfigError, DegreeCollapse, DmopError, NoConvergence
from .families import PRESETS, check_family
from .rodrigues import rodrigues_construct
from .validate import ValidationReport, classify_case, validate_system
from .verify import (
    DEFAULT_TOL,
    check_pearson,
    derive_pearson,
    moment_oracle,
    orthogonality_residuals,
)
from .weights import assemble_system, make_weight_spec
from .zeros import DEFAULT_PRECISION, locate_zeros, zero_report

SCHEMA = "dmop-run/1"
EXIT_OK, EXIT_CONFIG, EXIT_INVALID, EXIT_COLLAPSE, EXIT_VERIFY, EXIT_NOCONV = range(6)

_CONFIG_KEYS = {
    "schema", "family", "params", "weights", "n_min", "n_max", "tol",
    "precision", "format", "out", "coefficients", "jobs",
}
_WEIGHT_KEYS = {"kind", "alpha", "beta", "b", "N", "gamma"}
ORACLE_N_MAX = 6


@dataclass
class RunConfig:
    family: Optional[str] = None
    params: dict = field(default_factory=dict)
    weights: Optional[list] = None
    n_min: int = 0
    n_max: int = 5
    tol: Fraction = DEFAULT_TOL
    precision: int = DEFAULT_PRECISION
    format: str = "json"
    out: Path = Path(".")
    coefficients: Optional[Path] = None
    jobs: int = 1


# -- config ------------------------------------------------------------------------------


def _rational(value, where: str) -> str:
    """Validate an exact rational given as a string or an int; keep the string."""
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ConfigError(f"{where}: expected a rational as a \"p/q\" string, got {value!r}")
    if isinstance(value, str) and value.strip().lower() in ("inf", "infinity"):
        return value
    try:
        to_scalar(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where}: {exc}") from exc
    return value if isinstance(value, str) else str(value)


def _int(value, where: str, lowest: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < lowest:
        raise ConfigError(f"{where}: expected an integer >= {lowest}, got {value!r}")
    return value


def load_config(path: Path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be an object")
    return data


def parse_config(data: dict, base: Optional[RunConfig] = None) -> RunConfig:
    """Lossless conversion of a config document; unknown keys are errors."""
    cfg = base or RunConfig()
    if data.get("schema") != SCHEMA:
        raise ConfigError(f"schema: expected {SCHEMA!r}, got {data.get('schema')!r}")
    unknown = sorted(set(data) - _CONFIG_KEYS)
    if unknown:
        raise ConfigError(f"unknown key(s): {', '.join(unknown)}")
    if "family" in data and "weights" in data:
        raise ConfigError("family and weights are mutually exclusive")
    if "family" in data:
        if data["family"] not in PRESETS:
            raise ConfigError(f"family: unknown preset {data['family']!r}")
        cfg.family = data["family"]
    if "params" in data:
        if not isinstance(data["params"], dict):
            raise ConfigError("params: expected an object")
        cfg.params = {k: _rational(v, f"params.{k}") for k, v in data["params"].items()}
    if "weights" in data:
        ws = data["weights"]
        if not isinstance(ws, list) or not ws:
            raise ConfigError("weights: expected a nonempty list")
        cfg.weights = []
        for i, w in enumerate(ws):
            if not isinstance(w, dict):
                raise ConfigError(f"weights[{i}]: expected an object")
            bad = sorted(set(w) - _WEIGHT_KEYS)
            if bad:
                raise ConfigError(f"weights[{i}]: unknown key(s): {', '.join(bad)}")
            if "kind" not in w:
                raise ConfigError(f"weights[{i}]: missing kind")
            entry = {"kind": w["kind"]}
            for k in _WEIGHT_KEYS - {"kind"}:
                if k in w:
                    entry[k] = _rational(w[k], f"weights[{i}].{k}")
            cfg.weights.append(entry)
    for key in ("n_min", "n_max"):
        if key in data:
            setattr(cfg, key, _int(data[key], key))
    if "tol" in data:
        cfg.tol = to_scalar(_rational(data["tol"], "tol"))
    if "precision" in data:
        cfg.precision = _int(data["precision"], "precision", 32)
    if "format" in data:
        if data["format"] not in ("csv", "json"):
            raise ConfigError(f"format: expected csv or json, got {data['format']!r}")
        cfg.format = data["format"]
    if "out" in data:
        cfg.out = Path(data["out"])
    if "coefficients" in data:
        cfg.coefficients = Path(data["coefficients"])
    if "jobs" in data:
        cfg.jobs = _int(data["jobs"], "jobs", 1)
    return cfg


def _apply_flags(args, cfg: RunConfig) -> RunConfig:
    if getattr(args, "preset", None):
        if args.preset not in PRESETS:
            raise ConfigError(f"--preset: unknown preset {args.preset!r}")
        cfg.family, cfg.weights = args.preset, None
    for item in getattr(args, "param", None) or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise ConfigError(f"--param: expected key=value, got {item!r}")
        cfg.params[key.strip()] = _rational(value.strip(), f"--param {key}")
    if getattr(args, "n_min", None) is not None:
        cfg.n_min = _int(args.n_min, "--n-min")
    if getattr(args, "n_max", None) is not None:
        cfg.n_max = _int(args.n_max, "--n-max")
    if getattr(args, "tol", None) is not None:
        cfg.tol = to_scalar(_rational(args.tol, "--tol"))
        if cfg.tol <= 0:
            raise ConfigError("--tol must be positive")
    if getattr(args, "precision", None) is not None:
        cfg.precision = _int(args.precision, "--precision", 32)
    if getattr(args, "format", None) is not None:
        cfg.format = args.format
    if getattr(args, "out", None) is not None:
        cfg.out = Path(args.out)
    if getattr(args, "coefficients", None) is not None:
        cfg.coefficients = Path(args.coefficients)
    if getattr(args, "jobs", None) is not None:
        cfg.jobs = _int(args.jobs, "--jobs", 1)
    if cfg.n_min > cfg.n_max:
        raise ConfigError(f"n_min = {cfg.n_min} exceeds n_max = {cfg.n_max}")
    if cfg.family is None and cfg.weights is None:
        raise ConfigError("no family preset or weight list given")
    return cfg


def build_system(cfg: RunConfig):
    """``(report, system)``; malformed parameters raise :class:`ConfigError`."""
    try:
        if cfg.family is not None:
            rep, system = check_family(cfg.family, cfg.params, n_max=cfg.n_max)
        else:
            if cfg.params:
                raise ConfigError("params only apply to family presets")
            specs = [make_weight_spec(w["kind"], **{k: v for k, v in w.items() if k != "kind"})
                     for w in cfg.weights]
            system = assemble_system(specs, check_shifts=False)
            rep = validate_system(system, cfg.n_max)
    except ConfigError:
        raise
    except (DmopError, ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc
    if cfg.n_max > system.Ncap:
        raise ConfigError(f"n_max = {cfg.n_max} exceeds the lattice size N = {system.Ncap}")
    return rep, system


# -- output ------------------------------------------------------------------------------


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(text)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _report_validation(cfg: RunConfig, rep: ValidationReport, system) -> None:
    doc = {"schema": SCHEMA, "version": __version__, "system": system.describe(), **rep.to_dict()}
    if system.r == 2:
        doc["case"] = classify_case(system).to_dict()
    _write(cfg.out / "validation.json", _dump_json(doc))


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


# -- commands ----------------------------------------------------------------------------


def run_validate(cfg: RunConfig) -> int:
    rep, system = build_system(cfg)
    _report_validation(cfg, rep, system)
    _say(f"validation: {rep.verdict}" + (f" ({', '.join(rep.clauses)})" if rep.clauses else ""))
    return EXIT_OK if rep.passed else EXIT_INVALID


def run_construct(cfg: RunConfig) -> int:
    rep, system = build_system(cfg)
    _report_validation(cfg, rep, system)
    if not rep.passed:
        _say(f"validation failed: {', '.join(rep.clauses)}")
        return EXIT_INVALID
    records = []
    for n in range(cfg.n_min, cfg.n_max + 1):
        try:
            res = rodrigues_construct(system, n)
        except DegreeCollapse as exc:
            _say(str(exc))
            return EXIT_COLLAPSE
        records.append({
            "n": n,
            "degree": res.P.degree,
            "coefficients": [format_scalar(c) for c in res.P.coeffs],
            "degree_trace": [list(t) for t in res.degree_trace],
        })
    if cfg.format == "json":
        doc = {"schema": SCHEMA, "version": __version__, "system": system.describe(),
               "polynomials": records}
        _write(cfg.out / "coefficients.json", _dump_json(doc))
    else:
        rows = [(r["n"], k, c) for r in records for k, c in enumerate(r["coefficients"])]
        _write(cfg.out / "coefficients.csv", _csv_text(["n", "power", "coefficient"], rows))
        trace = [(r["n"], *t) for r in records for t in r["degree_trace"]]
        _write(cfg.out / "degree_trace.csv", _csv_text(["n", "m", "expected", "actual"], trace))
    return EXIT_OK


def read_coefficients(path: Path) -> dict:
    """``{n: Polynomial}`` from a file written by ``construct`` (json or csv)."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read coefficients {path}: {exc}") from exc
    polys: dict = {}
    try:
        if path.suffix == ".csv":
            rows = list(csv.DictReader(io.StringIO(text)))
            grouped: dict = {}
            for row in rows:
                grouped.setdefault(int(row["n"]), {})[int(row["power"])] = to_scalar(row["coefficient"])
            for n, cs in grouped.items():
                polys[n] = Polynomial([cs.get(k, 0) for k in range(max(cs) + 1)])
        else:
            for rec in json.loads(text)["polynomials"]:
                polys[int(rec["n"])] = Polynomial([to_scalar(c) for c in rec["coefficients"]])
    except (KeyError, ValueError, TypeError, json.JSONDecodeError) as exc:
        raise ConfigError(f"{path}: malformed coefficient file ({exc})") from exc
    return polys


def _oracle_entry(system, n, P, tol) -> dict:
    try:
        ms = moment_oracle(system, n, tol)
    except DmopError as exc:
        return {"n": n, "pass": False, "error": str(exc)}
    cmp = ms.compare(P)
    out = {"n": n, "dimension": ms.dimension, "exact": ms.exact, "pass": bool(cmp["contains"])}
    if "rel_error" in cmp:
        out["rel_error"] = None if cmp["rel_error"] is None else repr(cmp["rel_error"])
    return out


def run_verify(cfg: RunConfig) -> int:
    rep, system = build_system(cfg)
    if not rep.passed:
        _report_validation(cfg, rep, system)
        _say(f"validation failed: {', '.join(rep.clauses)}")
        return EXIT_INVALID
    supplied = read_coefficients(cfg.coefficients) if cfg.coefficients else {}
    failures = []
    entries = []
    for n in range(cfg.n_min, cfg.n_max + 1):
        if n in supplied:
            P = supplied[n]
        else:
            try:
                P = rodrigues_construct(system, n).P
            except DegreeCollapse as exc:
                _say(str(exc))
                return EXIT_COLLAPSE
        entry = {"n": n, "source": "file" if n in supplied else "rodrigues"}
        if P.degree != system.r * n:
            entry["degree"] = {"expected": system.r * n, "actual": P.degree, "pass": False}
            failures.append(f"degree n={n}")
        orth = orthogonality_residuals(system, P, n, cfg.tol)
        entry["orthogonality"] = orth.to_dict()
        if not orth.passed:
            failures.append(f"orthogonality n={n}")
        if 1 <= n <= ORACLE_N_MAX:
            entry["oracle"] = _oracle_entry(system, n, P, cfg.tol)
            if not entry["oracle"]["pass"]:
                failures.append(f"oracle n={n}")
        entries.append(entry)
    try:
        pair = derive_pearson(system)
        prep = check_pearson(system, pair)
        pearson = {"sigma": str(pair.sigma), "tau": str(pair.tau), **prep.to_dict()}
        if not prep.passed:
            failures.append("pearson")
    except DmopError as exc:
        pearson = {"verdict": "fail", "error": str(exc)}
        failures.append("pearson")
    doc = {
        "schema": SCHEMA,
        "version": __version__,
        "system": system.describe(),
        "tol": format_scalar(cfg.tol),
        "verdict": "fail" if failures else "pass",
        "failed_checks": failures,
        "entries": entries,
        "pearson": pearson,
    }
    _write(cfg.out / "verify.json", _dump_json(doc))
    if failures:
        _say(f"verification failed: {', '.join(failures)}")
        return EXIT_VERIFY
    return EXIT_OK


def _zeros_job(args):
    n, coeffs, bits, hulls = args
    P = Polynomial([Fraction(c) for c in coeffs])
    zs = locate_zeros(P, bits)
    report = zero_report(zs, hulls)
    return n, [(n, r.re, r.im, r.hull, r.is_real) for r in report.records]


def run_zeros(cfg: RunConfig) -> int:
    rep, system = build_system(cfg)
    if not rep.passed:
        _report_validation(cfg, rep, system)
        _say(f"validation failed: {', '.join(rep.clauses)}")
        return EXIT_INVALID
    hulls = [system.hull(j) for j in range(system.r)]
    jobs = []
    for n in range(cfg.n_min, cfg.n_max + 1):
        try:
            P = rodrigues_construct(system, n).P
        except DegreeCollapse as exc:
            _say(str(exc))
            return EXIT_COLLAPSE
        jobs.append((n, [format_scalar(c) for c in P.coeffs], cfg.precision, hulls))
    rows = []
    try:
        if cfg.jobs > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
                results = list(pool.map(_zeros_job, jobs))
        else:
            results = [_zeros_job(j) for j in jobs]
    except NoConvergence as exc:
        _say(str(exc))
        return EXIT_NOCONV
    for _, recs in results:
        rows.extend(recs)
    rows.sort(key=lambda r: (r[0], r[1], r[2]))
    if cfg.format == "csv":
        text = _csv_text(
            ["n", "re", "im", "hull", "is_real"],
            [(n, repr(re), repr(im), "none" if h is None else h, "true" if real else "false")
             for n, re, im, h, real in rows],
        )
        _write(cfg.out / "zeros.csv", text)
    else:
        doc = {
            "schema": SCHEMA,
            "version": __version__,
            "precision": cfg.precision,
            "zeros": [
                {"n": n, "re": repr(re), "im": repr(im), "hull": h, "is_real": real}
                for n, re, im, h, real in rows
            ],
        }
        _write(cfg.out / "zeros.json", _dump_json(doc))
    return EXIT_OK


def run_presets(cfg_format: str) -> int:
    items = []
    for name, preset in PRESETS.items():
        items.append({
            "name": name,
            "title": preset.title,
            "case": preset.case,
            "defaults": dict(preset.defaults),
        })
    if cfg_format == "json":
        sys.stdout.write(_dump_json(items))
    else:
        for it in items:
            params = ", ".join(f"{k}={v}" for k, v in it["defaults"].items())
            print(f"{it['name']:<20} case {it['case']:<3} {params}")
    return EXIT_OK


# -- entry point -------------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dmop", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"dmop {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run config")
    common.add_argument("--preset", help="family preset name (overrides the config)")
    common.add_argument("--param", action="append", metavar="KEY=P/Q",
                        help="preset parameter override, repeatable")
    common.add_argument("--out", help="output directory (default: .)")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--precision", type=int, help="working precision in bits for zeros")
    common.add_argument("--tol", help="tail tolerance as P/Q (default 1/10^30)")
    common.add_argument("--n-min", type=int, dest="n_min")
    common.add_argument("--n-max", type=int, dest="n_max")

    sub.add_parser("construct", parents=[common], help="build P_n and write coefficients")
    p_verify = sub.add_parser("verify", parents=[common], help="orthogonality, oracle and Pearson checks")
    p_verify.add_argument("--coefficients", help="coefficient file from construct to check")
    p_zeros = sub.add_parser("zeros", parents=[common], help="zeros of P_n for the n range")
    p_zeros.add_argument("--jobs", type=int, help="worker processes for the n sweep")
    sub.add_parser("validate", parents=[common], help="parameter conditions only")
    p_presets = sub.add_parser("presets", help="list family presets")
    p_presets.add_argument("--format", choices=("text", "json"), default="text")
    return parser


_COMMANDS = {
    "construct": run_construct,
    "verify": run_verify,
    "zeros": run_zeros,
    "validate": run_validate,
}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "presets":
        return run_presets(args.format)
    try:
        cfg = RunConfig()
        if args.config:
            cfg = parse_config(load_config(Path(args.config)), cfg)
        cfg = _apply_flags(args, cfg)
        return _COMMANDS[args.command](cfg)
    except ConfigError as exc:
        _say(f"config error: {exc}")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
