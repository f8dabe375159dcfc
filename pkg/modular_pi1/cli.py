"""
Command-line front end.

    modular-pi1 --prime 11 --format json
    modular-pi1 --range 5 499 --format csv --cache-dir ~/.cache/modular_pi1 --jobs 4

Exit status is 0 exactly when every check of every emitted report passed,
1 when a check failed or a computation raised, 2 on invalid input.
"""

from __future__ import annotations

import argparse
import csv
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, TextIO, Tuple, Union

from rich.console import Console
from rich.table import Table
from tqdm import tqdm

from modular_pi1.config.settings import Settings
from modular_pi1.dual_graph import dualgraph
from modular_pi1.exceptions import Pi1Error
from modular_pi1.finite_field.ff import is_prime
from modular_pi1.invariants import structure
from modular_pi1.invariants.structure import Pi1Report, assemble
from modular_pi1.supersingular import ssenum
from modular_pi1.supersingular.ssenum import census
from modular_pi1.utils.file_utils import CensusCache, canonical_json
from modular_pi1.utils.flexible_logger import Logger
from modular_pi1.utils.report_types import OutputFormat, RunMode

logger = Logger(name="cli")

CSV_HEADER = ["p", "genus", "eisenstein", "h", "pairs", "rank", "phi_invariants", "checks_passed"]


@dataclass
class RunConfig:
    mode: RunMode
    p: Optional[int] = None
    p_min: Optional[int] = None
    p_max: Optional[int] = None
    format: OutputFormat = OutputFormat.TEXT
    emit_graph: bool = False
    cache_dir: Optional[Path] = None
    jobs: int = 1
    safety_limit: int = 10000
    cache_version: int = 1
    log_level: Optional[str] = None

    def validate(self):
        if self.jobs < 1:
            raise ValueError(f"--jobs must be at least 1, got {self.jobs}")
        if self.mode is RunMode.SINGLE:
            if self.p is None:
                raise ValueError("single mode needs --prime")
            if self.p > self.safety_limit:
                raise ValueError(f"p={self.p} exceeds the safety limit {self.safety_limit}")
        else:
            if self.p_min is None or self.p_max is None:
                raise ValueError("range mode needs --range MIN MAX")
            if not 2 <= self.p_min <= self.p_max:
                raise ValueError(f"range bounds must satisfy 2 <= MIN <= MAX, got {self.p_min} {self.p_max}")
            if self.p_max > self.safety_limit:
                raise ValueError(f"MAX={self.p_max} exceeds the safety limit {self.safety_limit}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modular-pi1",
        description="Structure of the geometric abelian fundamental group of X_0(p) over Q_p.",
    )
    target = parser.add_mutually_exclusive_group(required=True)
    target.add_argument("--prime", type=int, metavar="P", help="report for a single prime")
    target.add_argument("--range", type=int, nargs=2, metavar=("MIN", "MAX"), help="sweep all primes in [MIN, MAX]")
    parser.add_argument("--format", choices=OutputFormat.get_all_types(), default=None)
    parser.add_argument("--emit-graph", action="store_true", help="include the dual graph in JSON/text output")
    parser.add_argument("--cache-dir", type=Path, default=None, help="census cache directory")
    parser.add_argument("--jobs", type=int, default=None, help="worker processes for --range")
    parser.add_argument("--safety-limit", type=int, default=None, help="largest prime accepted")
    parser.add_argument("--log-level", default=None, choices=list(Logger.LOG_LEVELS))
    return parser


def config_from_args(args: argparse.Namespace, settings: Settings) -> RunConfig:
    cache_dir = args.cache_dir or settings.get("cache", "cache_dir")
    output_format = args.format or settings.get("run", "format") or "text"
    if not OutputFormat.is_valid(output_format):
        raise ValueError(f"unknown output format {output_format!r} in settings")
    cfg = RunConfig(
        mode=RunMode.SINGLE if args.prime is not None else RunMode.RANGE,
        p=args.prime,
        p_min=args.range[0] if args.range else None,
        p_max=args.range[1] if args.range else None,
        format=OutputFormat(output_format),
        emit_graph=args.emit_graph,
        cache_dir=Path(cache_dir).expanduser() if cache_dir else None,
        jobs=args.jobs if args.jobs is not None else int(settings.get("run", "jobs") or 1),
        safety_limit=(
            args.safety_limit if args.safety_limit is not None
            else int(settings.get("run", "safety_limit") or 10000)
        ),
        cache_version=int(settings.get("cache", "format_version") or 1),
        log_level=args.log_level,
    )
    cfg.validate()
    return cfg


def _configure_logging(level: str):
    for module_logger in (logger, ssenum.logger, dualgraph.logger, structure.logger):
        module_logger.set_level(level)


def _assemble_one(
    p: int,
    emit_graph: bool,
    cache_dir: Optional[Path],
    cache_version: int,
    log_level: Optional[str] = None,
) -> Union[Pi1Report, str]:
    """Report for p, or the error message when the pipeline raised."""
    # worker processes start with default levels
    if log_level:
        _configure_logging(log_level)
    provider = None
    if cache_dir is not None:
        cache = CensusCache(cache_dir, cache_version, log_level=log_level)

        def provider(q: int):
            return cache.get_or_compute(q, census)

    try:
        return assemble(p, census_provider=provider, include_graph=emit_graph)
    except Pi1Error as e:
        return f"{type(e).__name__}: {e}"


def _assemble_job(job: Tuple[int, bool, Optional[Path], int, Optional[str]]) -> Union[Pi1Report, str]:
    return _assemble_one(*job)


def _phi_invariants(report: Pi1Report) -> str:
    if report.torsion is None:
        return "?"
    return ";".join(str(d) for d in report.torsion.invariant_factors)


def _csv_row(report: Pi1Report) -> List[str]:
    return [
        str(report.p),
        str(report.genus),
        str(report.eisenstein_number),
        str(report.h),
        str(report.pairs),
        "" if report.rank is None else str(report.rank),
        _phi_invariants(report),
        "true" if report.all_passed else "false",
    ]


def _error_csv_row(p: int) -> List[str]:
    return [str(p)] + ["?"] * (len(CSV_HEADER) - 2) + ["false"]


def _error_entry(p: int, message: str) -> dict:
    return {"p": p, "error": message, "all_checks_passed": False}


def _checks_cell(report: Pi1Report) -> str:
    failed = report.failed_checks()
    return "ok" if not failed else "FAILED: " + ", ".join(failed)


def render_text(report: Pi1Report, console: Console):
    console.print(f"p = {report.p}")
    console.print(f"genus g = {report.genus}, eisenstein number n = {report.eisenstein_number}")
    console.print(
        f"supersingular points: total = {report.total}, over F_p h = {report.h}, "
        f"conjugate pairs = {report.pairs}"
    )
    console.print(f"Phi(J_0(p)) = {report.torsion if report.torsion is not None else '?'}")
    console.print(
        f"H_1 coinvariants = {report.coinvariants if report.coinvariants is not None else '?'}, "
        f"rank r = {'?' if report.rank is None else report.rank}"
    )
    console.print(report.exact_sequence())
    console.print(f"checks: {'all passed' if report.all_passed else _checks_cell(report)}")
    for line in report.diagnostics:
        console.print(f"  {line}")
    if report.graph is not None:
        console.print(canonical_json(report.graph))


def _console(out: TextIO) -> Console:
    return Console(file=out, highlight=False, markup=False, emoji=False, soft_wrap=True)


def run_single(cfg: RunConfig, out: TextIO = None) -> int:
    out = out or sys.stdout
    p = cfg.p
    if not is_prime(p):
        print(f"error: {p} is not prime", file=sys.stderr)
        return 2
    result = _assemble_one(p, cfg.emit_graph, cfg.cache_dir, cfg.cache_version, cfg.log_level)
    if isinstance(result, str):
        logger.error(f"p={p}: {result}")
        print(f"error: p={p}: {result}", file=sys.stderr)
        return 1

    if cfg.format is OutputFormat.JSON:
        out.write(canonical_json(result.to_dict()) + "\n")
    elif cfg.format is OutputFormat.CSV:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        writer.writerow(_csv_row(result))
    else:
        render_text(result, _console(out))
    if not result.all_passed:
        print(f"error: p={p}: failed checks {', '.join(result.failed_checks())}", file=sys.stderr)
        return 1
    return 0


def _sweep(primes: Sequence[int], cfg: RunConfig) -> List[Union[Pi1Report, str]]:
    jobs = [(q, cfg.emit_graph, cfg.cache_dir, cfg.cache_version, cfg.log_level) for q in primes]
    progress = dict(total=len(jobs), desc="primes", unit="p", file=sys.stderr, disable=None)
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            # map keeps submission order, so output stays sorted by p
            return list(tqdm(pool.map(_assemble_job, jobs), **progress))
    return [_assemble_job(job) for job in tqdm(jobs, **progress)]


def run_range(cfg: RunConfig, out: TextIO = None) -> int:
    out = out or sys.stdout
    primes = [q for q in range(cfg.p_min, cfg.p_max + 1) if is_prime(q)]
    results = _sweep(primes, cfg)

    failures: List[str] = []
    for q, r in zip(primes, results):
        if isinstance(r, str):
            failures.append(f"p={q}: {r}")
        elif not r.all_passed:
            failures.append(f"p={q}: {', '.join(r.failed_checks())}")
    for line in failures:
        logger.error(line)

    if failures:
        summary = f"{len(primes)} primes, {len(failures)} failed: " + "; ".join(failures)
    else:
        summary = f"{len(primes)} primes, all checks passed"

    if cfg.format is OutputFormat.JSON:
        payload = {
            "reports": [
                r.to_dict() if isinstance(r, Pi1Report) else _error_entry(q, r)
                for q, r in zip(primes, results)
            ],
            "summary": {
                "primes": len(primes),
                "failures": failures,
                "all_checks_passed": not failures,
            },
        }
        out.write(canonical_json(payload) + "\n")
        print(summary, file=sys.stderr)
    elif cfg.format is OutputFormat.CSV:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for q, r in zip(primes, results):
            writer.writerow(_csv_row(r) if isinstance(r, Pi1Report) else _error_csv_row(q))
        print(summary, file=sys.stderr)
    else:
        console = _console(out)
        table = Table(title=f"X_0(p), {cfg.p_min} <= p <= {cfg.p_max}")
        for column in ("p", "g", "n", "h", "pairs", "r", "Phi", "checks"):
            table.add_column(column, justify="right" if column not in ("Phi", "checks") else "left")
        for q, r in zip(primes, results):
            if isinstance(r, str):
                table.add_row(str(q), "?", "?", "?", "?", "?", "?", f"ERROR: {r}")
                continue
            table.add_row(
                str(r.p), str(r.genus), str(r.eisenstein_number), str(r.h), str(r.pairs),
                "?" if r.rank is None else str(r.rank),
                str(r.torsion) if r.torsion is not None else "?",
                _checks_cell(r),
            )
        console.print(table)
        if cfg.emit_graph:
            for r in results:
                if isinstance(r, Pi1Report) and r.graph is not None:
                    console.print(f"p={r.p} graph: {canonical_json(r.graph, indent=None)}")
        console.print(summary)
    return 0 if not failures else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    settings = Settings()
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.log_level:
        _configure_logging(args.log_level)
    try:
        cfg = config_from_args(args, settings)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if cfg.mode is RunMode.SINGLE:
        return run_single(cfg)
    return run_range(cfg)


if __name__ == "__main__":
    sys.exit(main())
