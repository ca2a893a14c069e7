"""Command line: reproduce the worked examples, or solve a problem file.

    discfrac reproduce --example z1 [--alpha A] [--b B] [--out table.csv]
    discfrac solve --problem problem.yaml [--format csv|pretty] [--seed N]

Exit codes: 0 success, 2 parse/validation error, 3 solver failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Sequence

import numpy as np
import yaml

from . import catalog
from .errors import ConfigError, DiscFracError, NoConvergence, ParseError
from .timescale import Grid
from .variational import (
    FREE,
    Fixed,
    Lagrangian,
    SolverConfig,
    VariationalProblem,
    hz2_continuous,
    solve_extremals,
)

EXIT_OK, EXIT_INVALID, EXIT_SOLVER = 0, 2, 3


def fmt(x: float) -> str:
    return f"{x:.15g}"


def verdict(ok: bool) -> str:
    return "verified" if ok else "not_verified"


class Table:
    """Header, rows, and (label, t, y) plot series."""

    def __init__(self, header: Sequence[str]):
        self.header = list(header)
        self.rows: list[list[str]] = []
        self.series: list[tuple[str, np.ndarray, np.ndarray]] = []

    def add(self, *values: Any) -> None:
        self.rows.append([fmt(v) if isinstance(v, (float, np.floating)) else str(v) for v in values])

    def csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.header)
        w.writerows(self.rows)
        return buf.getvalue()


def _best(p: VariationalProblem, cfg: SolverConfig):
    cands = solve_extremals(p, cfg)
    return cands[0]


def _alphas(args, default: Sequence[float]) -> list[float]:
    return [args.alpha] if args.alpha is not None else list(default)


def run_example(example: str, args: argparse.Namespace) -> Table:
    """Rows (and plot series) for one of the worked examples."""
    cfg = SolverConfig(seed=args.seed)
    quick = replace(cfg, n_starts=min(cfg.n_starts, 50))  # single-root problems
    if example == "z1":
        b = int(args.b) if args.b is not None else 4
        t = Table(["alpha"] + [f"y({i})" for i in range(1, b)] + ["J", "legendre"])
        for a in _alphas(args, (0.25, 0.5, 0.75, 1.0)):
            c = _best(catalog.z1(a, b), quick)
            t.add(a, *c.y.values[1:-1], c.functional_value, verdict(c.legendre_verified))
            t.series.append((f"alpha={a:g}", c.y.points, c.y.values))
        return t
    if example == "z2":
        t = Table(["alpha", "beta", "y(1)", "J", "legendre"])
        for a in _alphas(args, (0.25, 0.5, 0.75, 1.0)):
            beta = args.beta if args.beta is not None else a
            c = _best(catalog.z2(a, beta, args.gamma1, args.gamma2, int(args.b or 2)), quick)
            t.add(a, beta, c.y.values[1], c.functional_value, verdict(c.legendre_verified))
            t.series.append((f"alpha={a:g}", c.y.points, c.y.values))
        return t
    if example == "z3":
        t = Table(["alpha", "y(1)", "J", "legendre"])
        for a in _alphas(args, (0.25, 0.5, 0.75, 1.0)):
            c = _best(catalog.z3(a), quick)
            t.add(a, c.y.values[1], c.functional_value, verdict(c.legendre_verified))
            t.series.append((f"alpha={a:g}", c.y.points, c.y.values))
        return t
    if example == "hz1":
        hs = [args.h] if args.h is not None else [0.5, 0.25, 0.125, 0.0625]
        alphas = _alphas(args, (1.0,))
        t = Table(["alpha", "h", "t", "y", "reference"])
        for a in alphas:
            for h in hs:
                c = _best(catalog.hz1(a, h), quick)
                ts = c.y.points
                for ti, yi in zip(ts, c.y.values):
                    t.add(a, h, ti, yi, ti * (1 - ti) / 2)
                t.series.append((f"alpha={a:g}_h={h:g}", ts, c.y.values))
        return t
    if example == "hz2":
        hs = [args.h] if args.h is not None else [0.5, 0.125, 0.0625, 1 / 30]
        a = args.alpha if args.alpha is not None else 0.75
        t = Table(["alpha", "h", "t", "y", "continuous"])
        for h in hs:
            c = _best(catalog.hz2(h, a), quick)
            ts = c.y.points
            for ti, yi in zip(ts, c.y.values):
                t.add(a, h, ti, yi, hz2_continuous(ti) if ti > 0 else 0.0)
            t.series.append((f"h={h:g}", ts, c.y.values))
        return t
    if example in ("hz3a", "hz3b"):
        base = dict(alpha=0.8, beta=0.5, h=0.25, b=1.0, theta=1.0) if example == "hz3a" else dict(alpha=0.3, beta=0.3, h=0.1, b=0.5, theta=0.0)
        for k in base:
            if getattr(args, k, None) is not None:
                base[k] = getattr(args, k)
        p = catalog.hz3(**base)
        cands = solve_extremals(p, cfg)
        frozen = replace(p, functional_form="frozen")
        pts = p.grid.points[1:-1]
        t = Table(["candidate"] + [f"y({x:g})" for x in pts] + ["J", "J_table_convention", "el_residual_inf", "legendre"])
        for i, c in enumerate(cands, 1):
            t.add(i, *c.y.values[1:-1], c.functional_value, float(frozen.functional(c.y.values)), c.el_residual_inf, verdict(c.legendre_verified))
            t.series.append((f"candidate={i}", c.y.points, c.y.values))
        return t
    raise ConfigError(f"unknown example {example!r}")


# ---------------------------------------------------------------------------
# problem files


def _num(doc: dict, key: str, path: str, required: bool = True, default: Any = None) -> float:
    if key not in doc:
        if required:
            raise ConfigError(f"{path}{key}: missing")
        return default
    val = doc[key]
    try:
        if isinstance(val, bool):
            raise TypeError
        return float(val)
    except (TypeError, ValueError):
        raise ConfigError(f"{path}{key}: expected a number, got {val!r}") from None


def _bc(doc: dict, side: str):
    val = doc.get(side)
    if val is None:
        raise ConfigError(f"bc.{side}: missing (a number or 'free')")
    if isinstance(val, str) and val.strip().lower() == "free":
        return FREE
    return Fixed(_num(doc, side, "bc."))


def load_problem(path: str | Path) -> tuple[VariationalProblem, SolverConfig]:
    """Read and validate a YAML/JSON problem file."""
    try:
        doc = yaml.safe_load(Path(path).read_text())
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e}") from None
    except yaml.YAMLError as e:
        raise ConfigError(f"{path}: not valid YAML/JSON: {e}") from None
    if not isinstance(doc, dict):
        raise ConfigError("top level must be a mapping")
    src = doc.get("lagrangian")
    if not isinstance(src, str):
        raise ConfigError("lagrangian: expected an expression string")
    params = doc.get("params") or {}
    if not isinstance(params, dict):
        raise ConfigError("params: expected a mapping name -> number")
    params = {k: _num(params, k, "params.") for k in params}
    g = doc.get("grid")
    if not isinstance(g, dict):
        raise ConfigError("grid: expected a mapping with a, and h+b or h+n_points or b+n_points")
    a = _num(g, "a", "grid.", default=0.0, required=False)
    if "h" in g and "b" in g:
        grid = Grid.from_interval(a, _num(g, "b", "grid."), _num(g, "h", "grid."))
    elif "n_points" in g:
        n = int(_num(g, "n_points", "grid."))
        h = _num(g, "h", "grid.") if "h" in g else (_num(g, "b", "grid.") - a) / (n - 1)
        grid = Grid(a, h, n)
    else:
        raise ConfigError("grid: give h and b, or n_points with h or b")
    bc = doc.get("bc")
    if not isinstance(bc, dict):
        raise ConfigError("bc: expected a mapping with left and right")
    L = Lagrangian.from_expression(src, params)
    alpha = _num(doc, "alpha", "")
    beta = _num(doc, "beta", "", required=False, default=alpha)
    form = doc.get("functional", "definition")
    p = VariationalProblem(grid, L, alpha, beta, _bc(bc, "left"), _bc(bc, "right"), form)
    s = doc.get("solver") or {}
    if not isinstance(s, dict):
        raise ConfigError("solver: expected a mapping")
    cfg = SolverConfig()
    fields = {"n_starts": int, "radius": float, "seed": int, "newton_tol": float, "newton_max_iter": int, "dedup_tol": float}
    over = {}
    for k, typ in fields.items():
        if k in s:
            over[k] = typ(_num(s, k, "solver."))
    unknown = set(s) - set(fields)
    if unknown:
        raise ConfigError(f"solver: unknown keys {sorted(unknown)}")
    return p, replace(cfg, **over)


def solve_from_file(path: str, output: str = "csv", seed: int | None = None, out=None) -> int:
    out = out or sys.stdout
    p, cfg = load_problem(path)
    if seed is not None:
        cfg = replace(cfg, seed=seed)
    cands = solve_extremals(p, cfg)
    pts = p.grid.points
    header = ["candidate"] + [f"y({x:g})" for x in pts] + ["J", "el_residual_inf", "legendre"]
    t = Table(header)
    for i, c in enumerate(cands, 1):
        t.add(i, *c.y.values, c.functional_value, c.el_residual_inf, verdict(c.legendre_verified))
    out.write(t.csv() if output == "csv" else pretty(t))
    return EXIT_OK


def pretty(t: Table) -> str:
    cols = [t.header] + t.rows
    widths = [max(len(r[i]) for r in cols) for i in range(len(t.header))]
    lines = ["  ".join(v.rjust(w) for v, w in zip(r, widths)) for r in cols]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _write_series(out: Path, t: Table) -> None:
    for label, ts, ys in t.series:
        name = out.with_name(f"{out.stem}_{label.replace('=', '')}.csv")
        s = Table(["t", "y"])
        for a, b in zip(ts, ys):
            s.add(float(a), float(b))
        name.write_text(s.csv())


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="discfrac", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    r = sub.add_parser("reproduce", help="recompute a worked example as CSV")
    r.add_argument("--example", required=True, choices=["z1", "z2", "z3", "hz1", "hz2", "hz3a", "hz3b"])
    for name in ("alpha", "beta", "h", "b", "theta"):
        r.add_argument(f"--{name}", type=float)
    r.add_argument("--gamma1", type=float, default=1.0)
    r.add_argument("--gamma2", type=float, default=1.0)
    r.add_argument("--seed", type=int, default=42)
    r.add_argument("--out", type=Path, help="write the table here plus one <stem>_<series>.csv per plotted series")
    s = sub.add_parser("solve", help="solve a problem file")
    s.add_argument("--problem", required=True)
    s.add_argument("--format", choices=["csv", "pretty"], default="csv")
    s.add_argument("--seed", type=int)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "solve":
            return solve_from_file(args.problem, args.format, args.seed)
        t = run_example(args.example, args)
        if args.out is None:
            sys.stdout.write(t.csv())
        else:
            args.out.write_text(t.csv())
            _write_series(args.out, t)
        return EXIT_OK
    except (ParseError, ConfigError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except NoConvergence as e:
        print(f"solver failure: {e}", file=sys.stderr)
        return EXIT_SOLVER
    except DiscFracError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
