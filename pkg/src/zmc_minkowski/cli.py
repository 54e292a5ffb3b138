"""Command-line interface: ``zmc {list, eval, export, verify, bjorling, weierstrass}``.

Exit status: 0 success, 1 a requested check failed, 2 configuration error,
3 I/O error, 4 export refused because the grid straddles a degeneracy line.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import warnings
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from . import __version__
from .errors import ConfigError, ZmcError
from .export import FORMATS, export_mesh, render, sample_target
from .kernel import curvature_summary, first_form, shape_operator
from .suite import (DEFAULT_GRID, SUITES, ExclusionError, Grid, VerificationReport, list_targets, parse_suite,
                    resolve_target, run_checks, thread_count)
from .weierstrass import end_classification, loop_period, residue_period_report

log = logging.getLogger("zmc_minkowski")

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_IO, EXIT_REFUSED = 0, 1, 2, 3, 4


@dataclass
class JobConfig:
    """Everything a command needs; built from ``--config`` then overridden by flags."""

    target: object = None
    grid: Grid | None = None
    output: str | None = None
    format: str | None = None
    suite: list = field(default_factory=list)
    tolerances: dict = field(default_factory=dict)
    seed: int | None = None
    threads: int | None = None

    @classmethod
    def from_file(cls, path) -> "JobConfig":
        try:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path}: {exc}") from None
        if not isinstance(doc, dict):
            raise ConfigError("config file must hold a JSON object")
        unknown = set(doc) - {"target", "grid", "output", "format", "suite", "tolerances", "seed", "threads"}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls()
        cfg.target = doc.get("target")
        g = doc.get("grid")
        cfg.grid = Grid.parse(g) if isinstance(g, str) else (Grid.from_dict(g) if g is not None else None)
        out = doc.get("output")
        if isinstance(out, dict):
            cfg.output, cfg.format = out.get("path"), out.get("format")
        else:
            cfg.output = out
        cfg.format = doc.get("format", cfg.format)
        s = doc.get("suite", [])
        cfg.suite = parse_suite(s) if s else []
        tol = doc.get("tolerances", {})
        if not isinstance(tol, dict):
            raise ConfigError("tolerances must be an object")
        cfg.tolerances = {k: float(v) for k, v in tol.items()}
        cfg.seed = doc.get("seed")
        cfg.threads = doc.get("threads")
        return cfg

    def as_dict(self) -> dict:
        return {"target": self.target, "grid": self.grid.as_dict() if self.grid else None, "output": self.output,
                "format": self.format, "suite": list(self.suite), "tolerances": dict(self.tolerances),
                "seed": self.seed, "threads": self.threads}


def _parse_tol(items) -> dict:
    out = {}
    for it in items or ():
        if "=" not in it:
            raise ConfigError(f"--tol expects name=value, got {it!r}")
        k, v = it.split("=", 1)
        try:
            out[k] = float(v)
        except ValueError:
            raise ConfigError(f"tolerance {it!r} is not a number") from None
    return out


def _target_arg(text):
    """Targets given as JSON objects on the command line are decoded."""
    if isinstance(text, str) and text.lstrip().startswith("{"):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"bad JSON target: {exc}") from None
    return text


def build_config(args) -> JobConfig:
    cfg = JobConfig.from_file(args.config) if getattr(args, "config", None) else JobConfig()
    if getattr(args, "target", None) is not None:
        cfg.target = _target_arg(args.target)
    if getattr(args, "grid", None):
        cfg.grid = Grid.parse(args.grid)
    if getattr(args, "output", None):
        cfg.output = args.output
    if getattr(args, "format", None):
        cfg.format = args.format
    if getattr(args, "suite", None):
        cfg.suite = parse_suite(args.suite)
    cfg.tolerances.update(_parse_tol(getattr(args, "tol", None)))
    if getattr(args, "seed", None) is not None:
        cfg.seed = args.seed
    if getattr(args, "threads", None) is not None:
        cfg.threads = args.threads
    if cfg.target is None and args.command not in ("list",):
        raise ConfigError("no target given (use --target or a config file)")
    return cfg


def _emit(obj, stream=None) -> None:
    stream = stream or sys.stdout
    stream.write(json.dumps(obj, sort_keys=True, indent=2, default=_json_default) + "\n")


def _json_default(x):
    if isinstance(x, np.generic):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    return str(x)


# ---------------------------------------------------------------- commands

def cmd_list(args, cfg) -> int:
    doc = list_targets()
    if args.json:
        _emit(doc)
        return EXIT_OK
    print("Named surfaces:")
    for s in doc["named_surfaces"]:
        params = f" [{', '.join(s['parameters'])}]" if s["parameters"] else ""
        print(f"  {s['id']:<22}{s['causal_character']:<11}{s['provenance']}{params}")
    for key in ("families", "integer_families", "bjorling"):
        print(f"{key.replace('_', ' ').capitalize()}: {doc[key]['syntax']}  ({doc[key]['provenance']})")
    print("Suites:")
    for s in doc["suites"]:
        print(f"  {s['name']:<19}{s['description']}")
    return EXIT_OK


def cmd_eval(args, cfg) -> int:
    t = resolve_target(cfg.target)
    u, v = np.array([args.u], dtype=float), np.array([args.v], dtype=float)
    for u0 in t.degenerate_u:
        if abs(args.u - u0) <= 1e-12 * (1 + abs(u0)):
            raise ConfigError(f"u = {u0:g} is a degeneracy line of {t.label}")
    J = t.patch.jet(u, v)
    I = first_form(J, t.signature)
    c = curvature_summary(shape_operator(J, t.signature), t.signature)
    doc = {"target": t.label, "u": args.u, "v": args.v, "X": J.X[0].tolist(),
           "first_form": {"E": float(I.E[0]), "F": float(I.F[0]), "G": float(I.G[0])},
           "H": float(c.H[0]), "K": float(c.K[0]),
           "causal_character": "spacelike" if t.signature.is_spacelike else "timelike"}
    if args.json:
        _emit(doc)
    else:
        x = ", ".join(repr(float(a)) for a in doc["X"])
        print(f"X = ({x})\nE = {doc['first_form']['E']!r}  F = {doc['first_form']['F']!r}  "
              f"G = {doc['first_form']['G']!r}\nH = {doc['H']!r}  K = {doc['K']!r}")
    return EXIT_OK


def _export(t, cfg) -> int:
    fmt = cfg.format or "obj"
    if fmt not in FORMATS:
        raise ConfigError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    s = sample_target(t, cfg.grid, cfg.threads)
    if cfg.output in (None, "-"):
        sys.stdout.write(render(s, fmt))
    else:
        export_mesh(s, fmt, cfg.output)
        log.info("wrote %s (%d x %d samples)", cfg.output, s.u.size, s.v.size)
    return EXIT_OK


def cmd_export(args, cfg) -> int:
    return _export(resolve_target(cfg.target), cfg)


def _write_report(report: VerificationReport, cfg, args) -> None:
    doc = report.as_dict()
    doc["environment"]["config"] = cfg.as_dict()
    doc["environment"]["threads"] = thread_count(cfg.threads)
    if cfg.output:
        from .export import write_atomic
        write_atomic(cfg.output, json.dumps(doc, sort_keys=True, indent=2, default=_json_default) + "\n")
    if args.json:
        _emit(doc)
    else:
        for c in report.checks:
            status = "PASS" if c.passed else "FAIL"
            print(f"{status}  {c.name:<19} max_residual={c.max_residual:.3e}  tolerance={c.tolerance:.1e}")
        print(f"overall: {'PASS' if report.passed else 'FAIL'}")


def cmd_verify(args, cfg) -> int:
    if not cfg.suite:
        raise ConfigError("no checks requested (use --suite)")
    t = resolve_target(cfg.target)
    report = run_checks(t, cfg.grid or DEFAULT_GRID, cfg.suite, cfg.tolerances, cfg.threads)
    report.environment["seed"] = cfg.seed
    _write_report(report, cfg, args)
    return report.exit_status


def cmd_bjorling(args, cfg) -> int:
    data = cfg.target
    if isinstance(data, str):
        if data.startswith("@"):
            try:
                with open(data[1:], encoding="utf-8") as fh:
                    data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"bad Björling data file: {exc}") from None
        elif not data.startswith("bjorling:"):
            data = "bjorling:" + data
    if isinstance(data, dict) and data.get("type") != "bjorling":
        data = {"type": "bjorling", "data": data}
    t = resolve_target(data)
    if args.format or cfg.output:
        return _export(t, cfg)
    suite = cfg.suite or ["frame", "bjorling", "zmc"]
    report = run_checks(t, cfg.grid or DEFAULT_GRID, suite, cfg.tolerances, cfg.threads)
    _write_report(report, cfg, args)
    return report.exit_status


def cmd_weierstrass(args, cfg) -> int:
    t = resolve_target(cfg.target)
    if t.category != "integer":
        if t.category not in ("family", "named", "bjorling"):
            raise ConfigError("weierstrass needs es:n,m / et:n,m or a family target")
        if args.format or cfg.output:
            return _export(t, cfg)
        report = run_checks(t, cfg.grid or DEFAULT_GRID, cfg.suite or ["weierstrass"], cfg.tolerances, cfg.threads)
        _write_report(report, cfg, args)
        return report.exit_status
    if args.format or cfg.output:
        return _export(t, cfg)
    fam = t.family
    rep = residue_period_report(fam)
    doc = {"family": fam.label, "g": f"z^{fam.n}",
           "omega": f"z^{(-fam.n - fam.m - 1) if fam.kind == 'spacelike' else (fam.m - fam.n - 1)} dz",
           "residues": [[str(r.re), str(r.im)] for r in rep.residues], "log_terms": list(rep.log_terms),
           "ends": [{"end": e.end, "orders": list(e.orders), "k": e.k, "type": e.classification}
                    for e in end_classification(fam)]}
    if rep.real_period is not None:
        doc["real_period"] = list(rep.real_period)
        doc["surface_translation"] = [2 * x for x in rep.real_period]
        doc["loop_period"] = loop_period(fam.phi()).tolist()
    _emit(doc)
    return EXIT_OK


COMMANDS = {"list": cmd_list, "eval": cmd_eval, "export": cmd_export, "verify": cmd_verify,
            "bjorling": cmd_bjorling, "weierstrass": cmd_weierstrass}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zmc", description="Intrinsic rotational ZMC surfaces in Minkowski 3-space",
                                allow_abbrev=False)
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, allow_abbrev=False, **kw)

    sub.add_parser = add_parser

    def common(sp, target=True, grid=True, output=True):
        sp.add_argument("--config", help="JSON job file; flags override its entries")
        sp.add_argument("--threads", type=int, help="worker threads (default: $MINKZMC_THREADS or 1)")
        if target:
            sp.add_argument("--target", help="catalog id, family:..., es:n,m, et:n,m, bjorling:... or JSON")
        if grid:
            sp.add_argument("--grid", help="u_min,u_max,v_min,v_max,nu,nv (write --grid=-1,... for a negative start)")
        if output:
            sp.add_argument("--output", help="output file ('-' for stdout)")
            sp.add_argument("--format", choices=FORMATS, help="mesh format")

    sp = sub.add_parser("list", help="named surfaces, family syntax and checks")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--config", help=argparse.SUPPRESS)
    sp.add_argument("--threads", type=int, help=argparse.SUPPRESS)

    sp = sub.add_parser("eval", help="position, first form and curvatures at one point")
    common(sp, grid=False, output=False)
    sp.add_argument("--u", type=float, required=True)
    sp.add_argument("--v", type=float, required=True)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("export", help="sample a target and write OBJ, CSV or JSON")
    common(sp)

    sp = sub.add_parser("verify", help="run checks and report residuals")
    common(sp, output=False)
    sp.add_argument("--suite", help="comma-separated checks: " + ",".join(SUITES))
    sp.add_argument("--tol", action="append", metavar="NAME=VALUE", help="tolerance override (repeatable)")
    sp.add_argument("--output", help="also write the JSON report to this file")
    sp.add_argument("--seed", type=int, help="recorded in the report; the checks are deterministic")
    sp.add_argument("--json", action="store_true", help="print the JSON report")

    sp = sub.add_parser("bjorling", help="reconstruct from Björling data; check or export")
    common(sp, target=False)
    sp.add_argument("--data", dest="target", help="descriptor JSON, @file, or KIND,a=..,A=..,B=..")
    sp.add_argument("--suite", help="checks to run when not exporting (default frame,bjorling,zmc)")
    sp.add_argument("--tol", action="append", metavar="NAME=VALUE")
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("weierstrass", help="residues, periods and ends of es:n,m / et:n,m; or export")
    common(sp)
    sp.add_argument("--suite", help=argparse.SUPPRESS)
    sp.add_argument("--tol", action="append", metavar="NAME=VALUE", help=argparse.SUPPRESS)
    sp.add_argument("--json", action="store_true", help=argparse.SUPPRESS)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s",
                        stream=sys.stderr)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", UserWarning)
        try:
            cfg = build_config(args)
            if cfg.threads is not None and int(cfg.threads) < 1:
                raise ConfigError("threads must be >= 1")
            status = COMMANDS[args.command](args, cfg)
        except ExclusionError as exc:
            _emit({"error": "exclusion", "message": str(exc), "report": exc.report}, sys.stderr)
            status = EXIT_REFUSED
        except ConfigError as exc:
            print(f"zmc: error: {exc}", file=sys.stderr)
            status = EXIT_CONFIG
        except OSError as exc:
            print(f"zmc: I/O error: {exc}", file=sys.stderr)
            status = EXIT_IO
        except ZmcError as exc:
            print(f"zmc: {type(exc).__name__}: {exc}", file=sys.stderr)
            status = EXIT_FAIL
    for w in caught:
        if issubclass(w.category, UserWarning):
            print(f"zmc: warning: {w.message}", file=sys.stderr)
    return status


def schema(name: str = "list") -> dict:
    """Published JSON schema for ``zmc list --json``."""
    text = resources.files("zmc_minkowski").joinpath("schemas", f"{name}.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
