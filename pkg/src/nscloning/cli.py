"""Command-line front end.

Examples::

    nscloning --command table --max-m 10
    nscloning --command verify --seed 7 --format json --out report.json
    nscloning --command compose --m 2 --n 3
    nscloning --command sweep --max-m 6 --t 0,1/4,1/2,3/4,1
"""

from __future__ import annotations

import argparse
import logging
import platform
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import __version__, cloner_family as cf, kernels
from .composition import Pipeline, predict_pipeline, sequential_simulate
from .report import fmt_exact, fmt_float, json_number, render_report, write_csv, write_json
from .verify import DEFAULT_T_GRID, SuiteConfig, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
COMPOSE_SIM_TOL = 1e-12

log = logging.getLogger("nscloning")


@dataclass
class RunConfig:
    command: str
    max_m: int
    t_values: list | None
    kind: str | None
    samples: int
    geometries: int
    seed: int
    tol: float
    format: str
    out: str | None
    perturb: float
    m: int
    n: int
    timing: bool

    @property
    def j_range(self) -> list[int]:
        return list(range(2, self.max_m + 1))

    def meta(self) -> dict:
        cfg = asdict(self)
        cfg.pop("out")
        cfg["t_values"] = None if self.t_values is None else [str(t) for t in self.t_values]
        return {
            "config": cfg,
            "seed": self.seed,
            "versions": {
                "nscloning": __version__,
                "numpy": np.__version__,
                "python": platform.python_version(),
                "kernel_backend": kernels.BACKEND,
            },
        }


def _parse_t_list(text: str) -> list[Fraction]:
    out = []
    for part in text.split(","):
        if part.strip():
            out.append(cf.as_exact(part))
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="nscloning",
        description="Universal symmetric qubit cloners: tables, verification, composition.",
    )
    p.add_argument("--command", choices=["table", "verify", "compose", "sweep"], default="table")
    p.add_argument("--max-m", type=int, default=10, help="largest copy count M = 2j (default 10)")
    p.add_argument("--t", dest="t_values", type=str, default=None,
                   help="comma-separated mixing parameters, e.g. 0,1/4,0.5")
    p.add_argument("--kind", choices=list(cf.KINDS), default=None)
    p.add_argument("--samples", type=int, default=100, help="Bloch-vector / random draws per check")
    p.add_argument("--geometries", type=int, default=50, help="mixture geometries per j")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--perturb", type=float, default=0.0, metavar="EPS",
                   help="add EPS to p_{j,j} in the coefficient checks (fault injection)")
    p.add_argument("--m", type=int, default=2, help="first-stage copy count for compose")
    p.add_argument("--n", type=int, default=2, help="second-stage copy count for compose")
    p.add_argument("--timing", action="store_true",
                   help="include wall time in the verify summary (breaks byte reproducibility)")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def parse_config(argv: Sequence[str] | None, parser: argparse.ArgumentParser) -> RunConfig:
    args = parser.parse_args(argv)
    if args.max_m < 2:
        parser.error("--max-m must be >= 2")
    if args.samples < 1:
        parser.error("--samples must be >= 1")
    if args.geometries < 1:
        parser.error("--geometries must be >= 1")
    if not args.tol > 0:
        parser.error("--tol must be > 0")
    if not 0 <= args.seed < 2**64:
        parser.error("--seed must be a 64-bit unsigned integer")
    if args.m < 2 or args.n < 2:
        parser.error("--m and --n must be >= 2")
    t_values = None
    if args.t_values is not None:
        try:
            t_values = _parse_t_list(args.t_values)
        except (ValueError, ZeroDivisionError) as exc:
            parser.error(f"--t: {exc}")
        if not t_values or any(not 0 <= t <= 1 for t in t_values):
            parser.error("--t values must lie in [0, 1]")
    if args.t_values is not None and args.kind is not None:
        parser.error("--t and --kind are mutually exclusive")
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    return RunConfig(
        command=args.command, max_m=args.max_m, t_values=t_values, kind=args.kind,
        samples=args.samples, geometries=args.geometries, seed=args.seed, tol=args.tol,
        format=args.format, out=args.out, perturb=args.perturb, m=args.m, n=args.n,
        timing=args.timing,
    )


def _num(x, prefix: str) -> dict:
    return {prefix: fmt_float(x), f"{prefix}_frac": fmt_exact(x)}


def _render_rows(rows: list[dict], config: RunConfig) -> str:
    if config.format == "json":
        return write_json(config.meta(), [_json_row(r) for r in rows])
    return write_csv(rows)


def _json_row(row: dict) -> dict:
    out = {}
    for k, v in row.items():
        if isinstance(v, str) and not k.endswith("_frac") and k not in ("kind", "j", "flag"):
            try:
                out[k] = json_number(float(v))
                continue
            except ValueError:
                pass
        out[k] = v
    return out


def run_table(config: RunConfig) -> tuple[str, int]:
    rows = []
    for tj in config.j_range:
        iv = cf.allowed_interval(tj)
        row = {"M": tj, "j": str(Fraction(tj, 2))}
        row.update(_num(cf.fidelity_of(cf.make_named("optimal", tj)), "F_optimal"))
        row.update(_num(cf.fidelity_of(cf.make_named("worst", tj)), "F_worst"))
        row.update(_num(cf.fidelity_of(cf.make_named("prime", tj)), "F_prime"))
        row.update(_num(cf.prime_t(tj), "t_prime"))
        row.update(_num(iv.lo, "interval_lo"))
        row.update(_num(iv.hi, "interval_hi"))
        rows.append(row)
    return _render_rows(rows, config), EXIT_OK


def _sweep_t_values(config: RunConfig, tj: int) -> list:
    if config.kind is not None:
        return [cf.make_named(config.kind, tj).t]
    if config.t_values is not None:
        return list(config.t_values)
    return [Fraction(k, 10) for k in range(11)]


def run_sweep(config: RunConfig) -> tuple[str, int]:
    """Plot-ready fidelity and coefficient sweep over t for each M."""
    rows = []
    for tj in config.j_range:
        for t in _sweep_t_values(config, tj):
            spec = cf.ClonerSpec(tj, t)
            p = cf.prob_vector(spec)
            row = {"M": tj, "j": str(Fraction(tj, 2))}
            row.update(_num(spec.t, "t"))
            row.update(_num(cf.fidelity_of(spec), "fidelity"))
            row.update(_num(p.p[0], "p_lowest"))
            row.update(_num(p.p[-1], "p_highest"))
            rows.append(row)
    return _render_rows(rows, config), EXIT_OK


def run_compose(config: RunConfig) -> tuple[str, int]:
    kinds = [config.kind] if config.kind else list(cf.KINDS)
    m, n = config.m, config.n
    rows, status = [], EXIT_OK
    for kind in kinds:
        pipe = Pipeline([cf.make_named(kind, m), cf.make_named(kind, n)])
        predicted = predict_pipeline(pipe)
        simulated = sequential_simulate(pipe)
        direct = cf.fidelity_of(cf.make_named(kind, m * n))
        residual = abs(predicted - direct)
        multiplicative = residual == 0
        row = {"kind": kind, "M": m, "N": n}
        row.update(_num(predicted, "predicted"))
        row["simulated"] = fmt_float(simulated)
        row.update(_num(direct, "direct"))
        row.update(_num(residual, "prime_law_residual"))
        row["flag"] = "multiplicative" if multiplicative else "not multiplicative"
        rows.append(row)
        if abs(simulated - float(predicted)) > COMPOSE_SIM_TOL:
            log.error("%s: simulated %s differs from predicted %s", kind, simulated, predicted)
            status = EXIT_FAIL
        if kind == "prime" and not multiplicative:
            log.error("prime cloners failed the composition law at M=%d, N=%d", m, n)
            status = EXIT_FAIL
    return _render_rows(rows, config), status


def run_verify(config: RunConfig) -> tuple[str, int]:
    suite = SuiteConfig(
        two_j_values=config.j_range,
        t_values=tuple(config.t_values) if config.t_values else DEFAULT_T_GRID,
        geometries=config.geometries,
        samples=config.samples,
        seed=config.seed,
        tol=config.tol,
        perturb=config.perturb,
        kind=config.kind,
    )
    report = run_suite(suite)
    wall = report.wall_time
    if not config.timing:
        report.wall_time = None
    text = render_report(report, config.format, config.meta())
    print(f"verify: {report.passed}/{report.total} passed, "
          f"max residual {fmt_float(report.max_residual)}, {wall:.2f} s", file=sys.stderr)
    if report.ok:
        return text, EXIT_OK
    first: dict[str, tuple[int, object]] = {}
    for rec in report.failures():
        count, rec0 = first.get(rec.check, (0, rec))
        first[rec.check] = (count + 1, rec0)
    for check, (count, rec) in first.items():
        print(f"FAIL {check}: {count} record(s); first 2j={rec.two_j} t={rec.t} #{rec.index} "
              f"{rec.sample} residual={fmt_float(rec.residual)} tol={fmt_float(rec.tol)}",
              file=sys.stderr)
    return text, EXIT_FAIL


COMMANDS = {"table": run_table, "verify": run_verify, "compose": run_compose, "sweep": run_sweep}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        config = parse_config(argv, parser)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    text, status = COMMANDS[config.command](config)
    if config.out:
        with open(config.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
