"""Command line interface: ``ahsquant <subcommand> [options]``.

Exit codes: 0 success, 2 configuration or parse error, 3 algebra fault.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from dataclasses import dataclass, fields, replace
from fractions import Fraction
from pathlib import Path

from . import __version__
from .charalg import (
    decompose,
    exterior_power_character,
    irreducible_character,
    symmetric_power_character,
    tensor_character,
)
from .errors import (
    ConfigurationError,
    DisplayParseError,
    DomainError,
    NoUniqueCriticalWeight,
    NotACharacterError,
)
from .grading import (
    branch_to_levels,
    build_graded_setup,
    format_display,
    format_rational,
    parse_display,
)
from .quant import critical_report, prop35_set, symbol_components
from .rootsys import weyl_dimension

SUBCOMMANDS = ("report", "decompose", "tensor", "sympow", "branch", "prop35")
FORMATS = ("text", "json", "csv")
CACHE_ENV = "AHSQUANT_CACHE_DIR"
CSV_COLUMNS = ("n", "component", "component_mult", "matched", "ell", "candidate", "candidate_mult", "beta", "delta")


class ConfigError(Exception):
    def __init__(self, message, field_name=None, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}, column {column}: "
        if field_name:
            where += f"[{field_name}] "
        super().__init__(where + message)
        self.field_name = field_name
        self.line = line
        self.column = column


@dataclass(frozen=True)
class RunConfig:
    subcommand: str = "report"
    geometry: str = "conformal"
    n: int = 6
    rep: str = "density"
    order: int = 1
    delta: Fraction = Fraction(0)
    refine: bool = True
    output: str = "text"
    n_sweep: tuple = ()
    allow_odd: bool = False
    jobs: int = 1
    over: str = "g0"
    labels: tuple = ()
    power: int = 2
    alt: bool = False
    w: Fraction = Fraction(0)

    def render(self) -> str:
        lines = []
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, bool):
                text = "true" if value else "false"
            elif isinstance(value, tuple):
                text = ";".join(str(v) for v in value)
            elif isinstance(value, Fraction):
                text = format_rational(value)
            else:
                text = str(value)
            lines.append(f"{f.name} = {text}")
        return "\n".join(lines) + "\n"

    def validate(self) -> RunConfig:
        if self.subcommand not in SUBCOMMANDS:
            raise ConfigError(f"unknown subcommand {self.subcommand!r}", "subcommand")
        if self.output not in FORMATS:
            raise ConfigError(f"output must be one of {FORMATS}", "output")
        if self.geometry not in ("conformal", "projective"):
            raise ConfigError("geometry must be conformal or projective", "geometry")
        if self.order < 1:
            raise ConfigError("order must be >= 1", "order")
        if self.power < 0:
            raise ConfigError("power must be >= 0", "power")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1", "jobs")
        if self.over not in ("g", "g0"):
            raise ConfigError("over must be g or g0", "over")
        return self


def _parse_bool(text):
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _field_parser(name):
    if name in ("n", "order", "jobs", "power"):
        return int
    if name in ("delta", "w"):
        return Fraction
    if name in ("refine", "allow_odd", "alt"):
        return _parse_bool
    if name == "n_sweep":
        return lambda t: tuple(int(x) for x in t.split(";") if x.strip()) if t.strip() else ()
    if name == "labels":
        return lambda t: tuple(x.strip() for x in t.split(";") if x.strip())
    return lambda t: t.strip()


def parse_config(text: str) -> RunConfig:
    """Parse the ``key = value`` config format produced by :meth:`RunConfig.render`."""
    known = {f.name for f in fields(RunConfig)}
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in raw:
            raise ConfigError("expected 'key = value'", line=lineno, column=len(raw) - len(raw.lstrip()) + 1)
        key, _, value = raw.partition("=")
        col = len(key) - len(key.lstrip()) + 1
        key = key.strip().replace("-", "_")
        if key not in known:
            raise ConfigError(f"unknown key {key!r}", key, lineno, col)
        try:
            values[key] = _field_parser(key)(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(str(exc), key, lineno, len(raw) - len(value.lstrip()) + 1) from None
    return RunConfig(**values)


# -- helpers -----------------------------------------------------------------


def _setup(cfg: RunConfig, n: int):
    return build_graded_setup(cfg.geometry, n, allow_odd=cfg.allow_odd)


def _resolve_rep(setup, text: str):
    alias = text.strip().lower()
    if alias == "density":
        return setup.g.zero()
    if alias == "standard":
        # tangent representation g_{-1}: label of highest weight of g_1
        return max((a for a in setup.g.positive_roots if setup.h0(a) == 1), key=lambda a: (sum(a), a))
    return parse_display(setup, text, pad=True)


def _resolve_g_label(setup, text: str):
    if text.strip().lower() == "adjoint":
        return max(setup.g.positive_roots, key=lambda a: (sum(a), a))
    return parse_display(setup, text, pad=True)


def _qstr(x) -> str:
    return format_rational(x)


def _sorted_rationals(values) -> list:
    return [_qstr(v) for v in sorted(set(values))]


def _header(cfg: RunConfig) -> dict:
    head = {"tool": "ahsquant", "version": __version__, "subcommand": cfg.subcommand, "geometry": cfg.geometry}
    if cfg.subcommand == "report":
        head.update(rep=cfg.rep, order=cfg.order, delta=_qstr(cfg.delta), method="refined" if cfg.refine else "coarse")
    return head


# -- report ------------------------------------------------------------------


def report_document(report) -> dict:
    s = report.setup
    comps = []
    for c in report.components:
        comps.append(
            {
                "label": format_display(s, c.component.label),
                "multiplicity": c.component.multiplicity,
                "level": c.component.level,
                "matched": [format_display(s, t) for t in c.component.matched],
                "beta0": _qstr(c.beta0),
                "n_i": c.n_i,
                "candidates": [
                    {
                        "ell": f.ell,
                        "label": format_display(s, f.label),
                        "multiplicity": f.multiplicity,
                        "source": f.source,
                        "beta": _qstr(f.beta),
                        "delta": _qstr(f.delta_critical),
                    }
                    for f in c.candidates
                ],
                "gamma_zero_deltas": [_qstr(d) for d in c.gamma_zero_deltas],
                "violations": [_qstr(d) for d in c.violations],
            }
        )
    return {
        "n": s.n,
        "algebra": s.g.name,
        "extrapolated": s.extrapolated,
        "U": format_display(s, report.U),
        "order": report.order,
        "base_delta": _qstr(report.base_delta),
        "method": "refined" if report.refined else "coarse",
        "dominance_threshold": _qstr(report.dominance_threshold),
        "components": comps,
        "critical_set": [_qstr(d) for d in report.critical_set],
        "bound": report.bound,
        "violations": list(report.violations),
    }


def _run_report(cfg: RunConfig) -> dict:
    ns = cfg.n_sweep or (cfg.n,)
    reports = []
    for n in ns:
        setup = _setup(cfg, n)
        U = _resolve_rep(setup, cfg.rep)
        rep = critical_report(setup, U, cfg.order, cfg.delta, refine=cfg.refine, jobs=cfg.jobs)
        reports.append(report_document(rep))
    return {"header": _header(cfg), "reports": reports}


def _report_text(doc) -> str:
    out = io.StringIO()
    h = doc["header"]
    out.write(f"# {h['geometry']} order={h['order']} rep={h['rep']} delta={h['delta']} method={h['method']}\n")
    for r in doc["reports"]:
        tag = "  (odd n: unchecked extrapolation)" if r["extrapolated"] else ""
        out.write(f"\nn = {r['n']}  g = {r['algebra']}  U = {r['U']}  threshold = {r['dominance_threshold']}{tag}\n")
        for c in r["components"]:
            matched = f"  <- {', '.join(c['matched'])}" if c["matched"] else ""
            mult = f"{c['multiplicity']}x " if c["multiplicity"] > 1 else ""
            out.write(f"  R = {mult}{c['label']}  beta0 = {c['beta0']}  n_i = {c['n_i']}{matched}\n")
            for f in c["candidates"]:
                out.write(f"    l={f['ell']}  {f['label']:<24} beta = {f['beta']:<8} delta = {f['delta']}\n")
            out.write(f"    critical: {{{', '.join(c['gamma_zero_deltas'])}}}\n")
        out.write(f"  critical set: {{{', '.join(r['critical_set'])}}}  (bound {r['bound']})\n")
        for v in r["violations"]:
            out.write(f"  WARNING threshold violation: {v}\n")
    return out.getvalue()


def _report_csv(doc) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in doc["reports"]:
        for c in r["components"]:
            for f in c["candidates"]:
                writer.writerow(
                    [r["n"], c["label"], c["multiplicity"], " ".join(c["matched"]), f["ell"], f["label"], f["multiplicity"], f["beta"], f["delta"]]
                )
    return buf.getvalue()


# -- algebra subcommands -----------------------------------------------------


def _decomposition_rows(setup, dec, nodes):
    return [
        {
            "label": [_qstr(c) for c in lam],
            "display": format_display(setup, lam),
            "mult": m,
            "dim": weyl_dimension(setup.g, lam, nodes),
        }
        for lam, m in dec
    ]


def _nodes(cfg, setup):
    return setup.g0_nodes if cfg.over == "g0" else None


def _run_tensor(cfg: RunConfig) -> dict:
    if len(cfg.labels) != 2:
        raise ConfigError("tensor needs exactly two labels", "labels")
    setup = _setup(cfg, cfg.n)
    nodes = _nodes(cfg, setup)
    a, b = (_resolve_rep(setup, t) if cfg.over == "g0" else _resolve_g_label(setup, t) for t in cfg.labels)
    chi = tensor_character(irreducible_character(setup.g, a, nodes), irreducible_character(setup.g, b, nodes))
    dec = decompose(setup.g, nodes, chi)
    return {"header": _header(cfg) | {"n": cfg.n, "over": cfg.over, "factors": list(cfg.labels)}, "components": _decomposition_rows(setup, dec, nodes)}


def _run_sympow(cfg: RunConfig) -> dict:
    if len(cfg.labels) != 1:
        raise ConfigError("sympow needs exactly one label", "labels")
    setup = _setup(cfg, cfg.n)
    nodes = _nodes(cfg, setup)
    text = cfg.labels[0]
    lam = _resolve_rep(setup, text) if cfg.over == "g0" else _resolve_g_label(setup, text)
    power = exterior_power_character if cfg.alt else symmetric_power_character
    chi = power(irreducible_character(setup.g, lam, nodes), cfg.power)
    dec = decompose(setup.g, nodes, chi)
    head = _header(cfg) | {"n": cfg.n, "over": cfg.over, "label": text, "power": cfg.power, "kind": "exterior" if cfg.alt else "symmetric"}
    return {"header": head, "components": _decomposition_rows(setup, dec, nodes)}


def _run_decompose(cfg: RunConfig) -> dict:
    setup = _setup(cfg, cfg.n)
    U = _resolve_rep(setup, cfg.rep)
    comps = symbol_components(setup, U, cfg.order, cfg.delta)
    rows = [
        {
            "label": [_qstr(c) for c in sc.label],
            "display": format_display(setup, sc.label),
            "mult": sc.multiplicity,
            "dim": weyl_dimension(setup.g, sc.label, setup.g0_nodes),
        }
        for sc in comps
    ]
    head = _header(cfg) | {"n": cfg.n, "rep": format_display(setup, U), "order": cfg.order, "delta": _qstr(cfg.delta)}
    return {"header": head, "components": rows}


def _run_branch(cfg: RunConfig) -> dict:
    if len(cfg.labels) != 1:
        raise ConfigError("branch needs exactly one g-label", "labels")
    setup = _setup(cfg, cfg.n)
    top = _resolve_g_label(setup, cfg.labels[0])
    levels = branch_to_levels(setup, top)
    return {
        "header": _header(cfg) | {"n": cfg.n, "label": format_display(setup, top), "dim": weyl_dimension(setup.g, top)},
        "levels": [
            {"level": lvl, "components": _decomposition_rows(setup, dec, setup.g0_nodes)} for lvl, dec in levels.items()
        ],
    }


def _run_prop35(cfg: RunConfig) -> dict:
    return {
        "header": _header(cfg) | {"n": cfg.n, "w": _qstr(cfg.w), "k": cfg.order},
        "critical_superset": _sorted_rationals(prop35_set(cfg.n, cfg.w, cfg.order)),
    }


def _rows_text(rows) -> str:
    return "".join(f"  {r['mult']}x {r['display']:<24} dim {r['dim']}\n" if r["mult"] > 1 else f"  {r['display']:<27} dim {r['dim']}\n" for r in rows)


def _algebra_text(cfg, doc) -> str:
    if cfg.subcommand == "prop35":
        return "{" + ", ".join(doc["critical_superset"]) + "}\n"
    head = " ".join(f"{k}={v}" for k, v in doc["header"].items() if k not in ("tool", "version"))
    if cfg.subcommand == "branch":
        body = "".join(f"level {lv['level']}:\n" + _rows_text(lv["components"]) for lv in doc["levels"])
    else:
        body = _rows_text(doc["components"])
    return f"# {head}\n{body}"


def _algebra_csv(cfg, doc) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if cfg.subcommand == "prop35":
        writer.writerow(["delta"])
        for d in doc["critical_superset"]:
            writer.writerow([d])
    elif cfg.subcommand == "branch":
        writer.writerow(["level", "label", "mult", "dim"])
        for lv in doc["levels"]:
            for r in lv["components"]:
                writer.writerow([lv["level"], r["display"], r["mult"], r["dim"]])
    else:
        writer.writerow(["label", "mult", "dim"])
        for r in doc["components"]:
            writer.writerow([r["display"], r["mult"], r["dim"]])
    return buf.getvalue()


_RUNNERS = {
    "report": _run_report,
    "tensor": _run_tensor,
    "sympow": _run_sympow,
    "decompose": _run_decompose,
    "branch": _run_branch,
    "prop35": _run_prop35,
}


def emit(cfg: RunConfig, doc: dict) -> str:
    if cfg.output == "json":
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if cfg.subcommand == "report":
        return _report_csv(doc) if cfg.output == "csv" else _report_text(doc)
    return _algebra_csv(cfg, doc) if cfg.output == "csv" else _algebra_text(cfg, doc)


def render_document(cfg: RunConfig) -> str:
    cfg.validate()
    cache_dir = os.environ.get(CACHE_ENV)
    cache_file = None
    if cache_dir:
        # jobs does not change the output
        key = hashlib.sha256(replace(cfg, jobs=1).render().encode()).hexdigest()
        cache_file = Path(cache_dir) / f"{key}.out"
        if cache_file.is_file():
            return cache_file.read_text(encoding="utf-8")
    text = emit(cfg, _RUNNERS[cfg.subcommand](cfg))
    if cache_file is not None:
        cache_file.parent.mkdir(parents=True, exist_ok=True)
        cache_file.write_text(text, encoding="utf-8")
    return text


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        text = render_document(cfg)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=stderr)
        return 2
    except DisplayParseError as exc:
        print(f"configuration error: [rep/labels] {exc}", file=stderr)
        return 2
    except (ConfigurationError, DomainError) as exc:
        print(f"configuration error: {exc}", file=stderr)
        return 2
    except (NotACharacterError, NoUniqueCriticalWeight) as exc:
        print(f"algebra fault: {exc}", file=stderr)
        return 3
    stdout.write(text)
    return 0


# -- argument parsing --------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ahsquant", description="Critical weights of Casimir quantizations for AHS-structures.")
    p.add_argument("--version", action="version", version=f"ahsquant {__version__}")
    sub = p.add_subparsers(dest="subcommand")

    def common(sp, with_n=True):
        sp.add_argument("--config", help="key = value config file; explicit flags override it")
        sp.add_argument("--geometry", choices=("conformal", "projective"))
        if with_n:
            sp.add_argument("--n", type=int)
        sp.add_argument("--allow-odd", action="store_true", default=None, help="permit odd n (type B, unchecked)")
        sp.add_argument("--format", dest="output", choices=FORMATS)

    sp = sub.add_parser("report", help="critical weights for symbols of type U")
    common(sp)
    sp.add_argument("--rep", help="display weight of U, or 'density' / 'standard'")
    sp.add_argument("--order", type=int)
    sp.add_argument("--delta", type=Fraction, help="density weight at which labels are displayed")
    sp.add_argument("--coarse", dest="refine", action="store_false", default=None)
    sp.add_argument("--n-sweep", type=lambda t: tuple(int(x) for x in t.split(",")))
    sp.add_argument("--jobs", type=int)

    sp = sub.add_parser("decompose", help="decompose the symbol representation S^k g_{-1} (x) U")
    common(sp)
    sp.add_argument("--rep")
    sp.add_argument("--order", type=int)
    sp.add_argument("--delta", type=Fraction)

    sp = sub.add_parser("tensor", help="decompose a tensor product of two irreducibles")
    common(sp)
    sp.add_argument("--over", choices=("g", "g0"))
    sp.add_argument("labels", nargs=2)

    sp = sub.add_parser("sympow", help="decompose a symmetric (or exterior) power")
    common(sp)
    sp.add_argument("--over", choices=("g", "g0"))
    sp.add_argument("--k", dest="power", type=int)
    sp.add_argument("--alt", action="store_true", default=None, help="exterior instead of symmetric power")
    sp.add_argument("labels", nargs=1)

    sp = sub.add_parser("branch", help="branch a g-irreducible to G0 level by level")
    common(sp)
    sp.add_argument("labels", nargs=1, help="g highest weight in display notation, or 'adjoint'")

    sp = sub.add_parser("prop35", help="closed-form critical superset for a density component R[w]")
    sp.add_argument("--config")
    sp.add_argument("--n", type=int)
    sp.add_argument("--w", type=Fraction)
    sp.add_argument("--k", dest="order", type=int)
    sp.add_argument("--format", dest="output", choices=FORMATS)
    return p


def config_from_args(argv) -> RunConfig:
    ns = _build_parser().parse_args(argv)
    if ns.subcommand is None:
        raise ConfigError("missing subcommand", "subcommand")
    base = RunConfig()
    if getattr(ns, "config", None):
        try:
            base = parse_config(Path(ns.config).read_text(encoding="utf-8"))
        except OSError as exc:
            raise ConfigError(str(exc), "config") from None
    updates = {"subcommand": ns.subcommand}
    for f in fields(RunConfig):
        if f.name == "subcommand":
            continue
        value = getattr(ns, f.name, None)
        if value is not None:
            if isinstance(value, list):
                value = tuple(value)
            updates[f.name] = value
    return replace(base, **updates)


def main(argv=None) -> int:
    try:
        cfg = config_from_args(sys.argv[1:] if argv is None else argv)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
