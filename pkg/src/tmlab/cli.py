"""Command-line front end.

Subcommands::

    tmlab verify <suite>          run a named suite (or ``all``)
    tmlab polygon-map <file>      inequality and round trip for one polygon
    tmlab sweep <family-config>   Trudinger-Moser sweep described by a JSON file
    tmlab report <dir>            summarize the reports in a directory

Reports go to ``--out``, else ``$TMLAB_OUT``, else ``./tmlab-out``.  The exit
status is the worst check status: 0 pass, 1 fail, 2 inconclusive, and 3 for
configuration errors.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from pathlib import Path

import numpy as np

from .errors import ConfigError, OverflowDetected
from .report import (EXIT_CODES, VerificationReport, emit_plot_data, read_reports,
                     summary_table, worst_status, write_report)
from .suites import ALL, SUITES, SuiteConfig, polygon_outcomes, run_checks

OUT_ENV = "TMLAB_OUT"
CONFIG_ERROR_EXIT = 3


def _out_dir(arg: str | None) -> Path:
    return Path(arg or os.environ.get(OUT_ENV) or "tmlab-out")


def _read_json(path: str) -> object:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: malformed JSON ({exc})") from exc


def _suite_config(args) -> SuiteConfig:
    doc = _read_json(args.config) if args.config else None
    cfg = SuiteConfig.from_document(doc)
    if args.tol is not None:
        if not args.tol > 0:
            raise ConfigError("--tol must be positive")
        cfg.tol = args.tol
    if args.seed is not None:
        cfg.seed = args.seed
    return cfg


def _emit(outcomes, out: Path) -> int:
    for rep, samples in outcomes:
        path = write_report(rep, out)
        emit_plot_data(rep, samples, path.with_suffix(".csv"))
    reports = [o[0] for o in outcomes]
    print(summary_table(reports))
    status = worst_status([r.status for r in reports])
    print(f"overall: {status}")
    return EXIT_CODES[status]


def cmd_verify(args) -> int:
    cfg = _suite_config(args)
    return _emit(run_checks(args.suite, cfg, jobs=args.jobs), _out_dir(args.out))


def cmd_polygon_map(args) -> int:
    cfg = _suite_config(args)
    return _emit(polygon_outcomes(args.file, cfg), _out_dir(args.out))


def _parse_beta(x) -> float:
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return float(x)
    if isinstance(x, str) and x.strip().endswith("pi"):
        head = x.strip()[:-2].strip().rstrip("*").strip()
        try:
            return (float(head) if head else 1.0) * math.pi
        except ValueError:
            pass
    raise ConfigError(f"cannot read beta value {x!r}; use a number or a string like '4pi'")


def _sweep_family(doc) -> dict:
    if not isinstance(doc, dict):
        raise ConfigError("family configuration must be a JSON object")
    allowed = {"center", "outer", "concentrations", "inner_radii", "betas", "seeds", "tol"}
    unknown = set(doc) - allowed
    if unknown:
        raise ConfigError(f"unknown family keys: {sorted(unknown)}")
    try:
        c = doc.get("center", [0.0, 0.0])
        center = complex(c[0], c[1]) if isinstance(c, list) else complex(float(c))
        outer = float(doc.get("outer", 0.5))
        if "inner_radii" in doc:
            conc = [math.log(outer / float(r)) for r in doc["inner_radii"]]
        else:
            conc = [float(x) for x in doc.get("concentrations", np.linspace(1.0, 40.0, 20))]
        betas = [_parse_beta(b) for b in doc.get("betas", ["4pi"])]
        seeds = [int(s) for s in doc.get("seeds", [])]
        tol = float(doc.get("tol", 1e-9))
    except (TypeError, ValueError, IndexError) as exc:
        raise ConfigError(f"malformed family configuration: {exc}") from exc
    if not (abs(center) + outer < 1.0 and outer > 0 and all(L > 0 for L in conc) and betas):
        raise ConfigError("family must fit in the disc with positive concentrations and a beta")
    return {"center": center, "outer": outer, "concentrations": conc, "betas": betas,
            "seeds": seeds, "tol": tol}


def cmd_sweep(args) -> int:
    from .functionals import normalize_hardy, sharpness_sweep, tm_defect
    from .trial import random_trial

    fam = _sweep_family(_read_json(args.family))
    if args.tol is not None:
        fam["tol"] = args.tol
    out = _out_dir(args.out)
    outcomes = []
    for beta in fam["betas"]:
        t0 = time.perf_counter()
        curve = sharpness_sweep(beta, fam["concentrations"], fam["center"], fam["outer"], fam["tol"])
        vals = np.array(curve.values)
        # a value is acceptable when finite with a controlled error estimate
        errs = np.array(curve.errors)
        margins = np.where(np.isfinite(vals), 1.0 - errs / np.maximum(np.abs(vals), 1e-300), -math.inf)
        params = {"beta": beta, "center": fam["center"], "outer": fam["outer"],
                  "concentrations": fam["concentrations"], "tol": fam["tol"]}
        rep = VerificationReport.from_margins(
            f"sweep.moser.beta={beta / math.pi:.6g}pi", margins, fam["tol"], params, margin_scale=1.0,
            runtime_ms=int(1000 * (time.perf_counter() - t0)),
            notes={"overflow_at": curve.overflow_at, "max_value": curve.max_value,
                   "final_value": curve.final_value})
        outcomes.append((rep, {"concentration": curve.concentrations, "value": vals, "error": errs,
                               "margin": margins}))
        if fam["seeds"]:
            t0 = time.perf_counter()
            rows = {"seed": [], "value": [], "error": [], "margin": []}
            for s in fam["seeds"]:
                u = normalize_hardy(random_trial(s), fam["tol"])
                try:
                    r = tm_defect(u, "disc", tol=fam["tol"], beta=beta)
                    v, e = r.value, r.error_estimate
                except OverflowDetected:
                    v, e = math.inf, math.inf
                rows["seed"].append(s)
                rows["value"].append(v)
                rows["error"].append(e)
                rows["margin"].append(1.0 - e / v if math.isfinite(v) and v > 0 else
                                      (1.0 if v == 0 else -math.inf))
            rep = VerificationReport.from_margins(
                f"sweep.random.beta={beta / math.pi:.6g}pi", rows["margin"], fam["tol"],
                {"beta": beta, "seeds": fam["seeds"], "tol": fam["tol"]}, margin_scale=1.0,
                runtime_ms=int(1000 * (time.perf_counter() - t0)))
            outcomes.append((rep, rows))
    return _emit(sorted(outcomes, key=lambda o: o[0].check_id), out)


def cmd_report(args) -> int:
    d = Path(args.dir)
    if not d.is_dir():
        raise ConfigError(f"{d} is not a directory")
    reports = read_reports(d)
    print(summary_table(reports))
    status = worst_status([r.status for r in reports])
    print(f"overall: {status}")
    return EXIT_CODES[status]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="quadrature tolerance")
    common.add_argument("--seed", type=int, default=None, help="offset for every seeded family")
    common.add_argument("--out", default=None, help=f"output directory (default ${OUT_ENV})")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--config", default=None, help="JSON suite configuration")

    p = argparse.ArgumentParser(prog="tmlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=list(SUITES) + [ALL])
    v.set_defaults(func=cmd_verify)
    m = sub.add_parser("polygon-map", parents=[common], help="check one polygon file")
    m.add_argument("file")
    m.set_defaults(func=cmd_polygon_map)
    s = sub.add_parser("sweep", parents=[common], help="Trudinger-Moser sweep from a JSON family")
    s.add_argument("family")
    s.set_defaults(func=cmd_sweep)
    r = sub.add_parser("report", help="summarize a report directory")
    r.add_argument("dir")
    r.set_defaults(func=cmd_report)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse signals usage errors with status 2, which is reserved here
        return 0 if exc.code == 0 else CONFIG_ERROR_EXIT
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"tmlab: configuration error: {exc}", file=sys.stderr)
        return CONFIG_ERROR_EXIT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
