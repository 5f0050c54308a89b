"""Command-line front end: ``verify``, ``sweep``, ``table`` and ``cache``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import platform
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import __version__
from .chevalley import CACHE_ENV, atomic_write, build_chevalley, cache_path, chevalley_for, dump_structure_constants
from .coinvariants import (
    chevalley_invariant_check,
    hilbert_identity_check,
    nilpotent_cone_hilbert_check,
    verify_borel,
    verify_key_i,
    verify_surjectivity_shadow,
)
from .highest_weight import DEFAULT_DIM_BOUND, DimensionBoundExceeded
from .peterson import (
    grF_polynomial_ring_check,
    verify_cells,
    verify_key_ii,
    verify_kkk_and_ue,
    verify_mult1,
    verify_oracles,
    verify_peterson,
)
from .report import DIVERGENT, FAIL, PASS, SKIP, VERDICTS, CheckReport, reports_to_csv, reports_to_markdown
from .rootdata import RootDatum, UnsupportedType, Weight, build_root_datum, format_weight, parse_weight

log = logging.getLogger("liecheck")

OUT_ENV = "LIECHECK_OUT_DIR"

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_SKIP = 3

DEFAULT_TYPES = ("A1", "A2", "A3", "B2", "B3", "C3", "G2")
DEFAULT_MAX_DIM = 400
WEIGHTED_CHECKS = ("peterson", "mult1", "kkk", "key1", "key2", "surj", "borel", "cells", "oracles")
GLOBAL_CHECKS = ("kb", "nilcone", "hilb4", "winv")
CHECKS = WEIGHTED_CHECKS + GLOBAL_CHECKS
SWEEP_FAMILIES = ("peterson", "mult1", "kkk", "key1", "key2", "surj", "borel", "cells", "oracles")
DEFAULT_TRUNC = {"kb": 20, "hilb4": 30, "winv": 20}


# -- instance enumeration ----------------------------------------------------------


def sweep_instances(datum: RootDatum, max_dim: int) -> List[Weight]:
    """Dominant weights with dim V <= max_dim, by dimension then coordinates.

    The Weyl dimension is increasing in each coordinate, so a search that
    stops at the first weight over the bound is exhaustive.
    """
    zero = tuple(0 for _ in range(datum.rank))
    seen = {zero}
    frontier = [zero]
    found = []
    while frontier:
        nxt = []
        for hw in frontier:
            dim = datum.weyl_dimension(hw)
            if dim > max_dim:
                continue
            found.append((dim, hw))
            for i in range(datum.rank):
                up = hw[:i] + (hw[i] + 1,) + hw[i + 1:]
                if up not in seen:
                    seen.add(up)
                    nxt.append(up)
        frontier = nxt
    return [hw for _, hw in sorted(found)]


def key2_references(datum: RootDatum, hw: Weight) -> List[Weight]:
    """Zero and the minuscule weights whose coset matches the weights of V_hw."""
    refs = [tuple(0 for _ in range(datum.rank))] + datum.minuscule_weights()
    return [mu for mu in refs if datum.in_root_lattice([a - b for a, b in zip(hw, mu)])]


# -- running checks ---------------------------------------------------------------


def _skip(check: str, datum: RootDatum, hw, exc: DimensionBoundExceeded, **details) -> CheckReport:
    rep = CheckReport(check, datum.label, SKIP, tuple(hw), datum.lowest_weight(hw))
    rep.details = {"dim": exc.dim, "dim_bound": exc.bound, **details}
    rep.notes.append(str(exc))
    return rep


def run_check(check: str, label: str, hw: Optional[Weight], dim_bound: int = DEFAULT_DIM_BOUND,
              trunc: Optional[int] = None, mu: Optional[Weight] = None) -> CheckReport:
    """Run one named check. Raises ValueError/UnsupportedType on bad input."""
    datum = build_root_datum(label)
    if check in GLOBAL_CHECKS:
        if check == "kb":
            return grF_polynomial_ring_check(label, trunc or DEFAULT_TRUNC["kb"])
        if check == "hilb4":
            return hilbert_identity_check(label, trunc or DEFAULT_TRUNC["hilb4"])
        if check == "winv":
            return chevalley_invariant_check(label, trunc or DEFAULT_TRUNC["winv"])
        L = chevalley_for(label)
        return nilpotent_cone_hilbert_check(L, trunc or (10 if L.dim <= 3 else 6))
    if hw is None:
        raise ValueError(f"check {check!r} needs a highest weight")
    hw = tuple(hw)
    if len(hw) != datum.rank:
        raise ValueError(f"weight {format_weight(hw)} has wrong length for {label}")
    if not datum.is_dominant(hw):
        raise ValueError(f"weight {format_weight(hw)} is not dominant")
    try:
        if check == "peterson":
            return verify_peterson(label, hw, dim_bound)
        if check == "mult1":
            return verify_mult1(label, hw, dim_bound)
        if check == "kkk":
            return verify_kkk_and_ue(label, hw, dim_bound)
        if check == "key1":
            return verify_key_i(label, hw, dim_bound)
        if check == "key2":
            return verify_key_ii(label, mu if mu is not None else tuple(0 for _ in hw), hw, dim_bound)
        if check == "surj":
            return verify_surjectivity_shadow(label, hw, dim_bound)
        if check == "borel":
            return verify_borel(label, hw)
        if check == "cells":
            return verify_cells(label, hw, dim_bound)
        if check == "oracles":
            return verify_oracles(label, hw, dim_bound)
    except DimensionBoundExceeded as exc:
        extra = {"mu": list(mu)} if check == "key2" and mu is not None else {}
        return _skip(check, datum, hw, exc, **extra)
    raise ValueError(f"unknown check {check!r}")


def report_filename(rep: CheckReport) -> str:
    parts = [rep.check, rep.type]
    if rep.highest_weight is not None:
        parts.append("_".join(map(str, rep.highest_weight)))
    if "mu" in rep.details:
        parts.append("mu" + "_".join(map(str, rep.details["mu"])))
    return "-".join(parts) + ".json"


def write_report(rep: CheckReport, out_dir: Path) -> Path:
    path = out_dir / report_filename(rep)
    atomic_write(path, rep.to_json(with_timing=False))
    return path


def instance_reports(label: str, hw: Weight, families: Sequence[str], dim_bound: int) -> List[CheckReport]:
    """Every applicable check family on one instance, in a fixed order."""
    datum = build_root_datum(label)
    out = []
    for fam in families:
        if fam == "kkk" and not datum.in_root_lattice(hw):
            continue
        if fam == "key1" and not (any(hw) and datum.is_minuscule(hw)):
            continue
        if fam == "key2":
            for mu in key2_references(datum, hw):
                out.append(run_check("key2", label, hw, dim_bound, mu=mu))
            continue
        out.append(run_check(fam, label, hw, dim_bound))
    for rep in out:
        if rep.verdict == DIVERGENT:
            log.warning("%s %s %s: %s", rep.check, rep.type, format_weight(rep.highest_weight), "; ".join(rep.notes))
    return out


def _instance_job(args) -> List[dict]:
    label, hw, families, dim_bound = args
    return [(r.to_dict(with_timing=False), r.millis) for r in instance_reports(label, hw, families, dim_bound)]


@dataclass
class SweepConfig:
    types: Tuple[str, ...] = DEFAULT_TYPES
    dim_bound: int = DEFAULT_DIM_BOUND
    max_dim: int = DEFAULT_MAX_DIM
    trunc: int = 20
    families: Tuple[str, ...] = SWEEP_FAMILIES
    out_dir: Optional[Path] = None
    jobs: int = 1
    cache_dir: Optional[str] = None

    def __post_init__(self):
        if self.dim_bound <= 0 or self.max_dim <= 0 or self.trunc <= 0:
            raise ValueError("bounds must be positive")
        if not self.families:
            raise ValueError("select at least one check family")
        bad = [f for f in self.families if f not in SWEEP_FAMILIES]
        if bad:
            raise ValueError(f"unknown check families: {', '.join(bad)}")
        if self.jobs <= 0:
            raise ValueError("jobs must be positive")


@dataclass
class SweepSummary:
    counts: Dict[str, Dict[str, int]]
    instances: int
    wall_seconds: float
    environment: Dict[str, str]
    reports: List[CheckReport] = field(default_factory=list, repr=False)
    failures: List[str] = field(default_factory=list)

    @property
    def attempted(self) -> int:
        return sum(sum(c.values()) for c in self.counts.values())

    @property
    def any_fail(self) -> bool:
        return any(c.get(FAIL, 0) for c in self.counts.values())

    def to_dict(self) -> dict:
        return {
            "counts": self.counts,
            "instances": self.instances,
            "attempted": self.attempted,
            "wall_seconds": round(self.wall_seconds, 3),
            "environment": self.environment,
            "failures": self.failures,
        }


def environment_fingerprint() -> Dict[str, str]:
    import flint

    return {
        "liecheck": __version__,
        "python": platform.python_version(),
        "python_flint": getattr(flint, "__version__", "unknown"),
        "platform": platform.platform(),
    }


def run_sweep(config: SweepConfig) -> SweepSummary:
    t0 = time.perf_counter()
    if config.cache_dir:
        os.environ[CACHE_ENV] = str(config.cache_dir)
    jobs = []
    for label in config.types:
        datum = build_root_datum(label)
        for hw in sweep_instances(datum, config.max_dim):
            jobs.append((datum.label, hw, tuple(config.families), config.dim_bound))
    if config.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_instance_job, jobs, chunksize=4))
    else:
        results = [_instance_job(j) for j in jobs]
    counts: Dict[str, Dict[str, int]] = {f: {v: 0 for v in VERDICTS} for f in config.families}
    reports, timings, failures = [], {}, []
    for batch in results:  # job order, independent of completion order
        for d, millis in batch:
            rep = CheckReport.from_dict(d)
            reports.append(rep)
            counts[rep.check][rep.verdict] += 1
            name = report_filename(rep)
            timings[name] = millis
            if rep.verdict == FAIL:
                failures.append(name)
            if config.out_dir is not None:
                try:
                    write_report(rep, config.out_dir)
                except OSError as exc:
                    log.error("could not write %s: %s", name, exc)
    summary = SweepSummary(counts, len(jobs), time.perf_counter() - t0, environment_fingerprint(), reports, failures)
    if config.out_dir is not None:
        try:
            atomic_write(config.out_dir / "summary.json", json.dumps(summary.to_dict(), sort_keys=True, indent=2) + "\n")
            atomic_write(config.out_dir / "timings.json", json.dumps(timings, sort_keys=True, indent=2) + "\n")
        except OSError as exc:
            log.error("could not write summary: %s", exc)
    return summary


# -- tables ------------------------------------------------------------------------

NON_REPORT_FILES = {"summary.json", "timings.json"}


def load_reports(report_dir: Path) -> Tuple[List[CheckReport], List[str]]:
    reports, bad = [], []
    if not report_dir.is_dir():
        return [], [f"{report_dir}: not a directory"]
    for path in sorted(report_dir.glob("*.json")):
        if path.name in NON_REPORT_FILES:
            continue
        try:
            reports.append(CheckReport.from_dict(json.loads(path.read_text())))
        except (OSError, ValueError, KeyError, TypeError, AttributeError) as exc:
            bad.append(f"{path.name}: {exc}")
    reports.sort(key=lambda r: (r.type, r.check, r.highest_weight or (), json.dumps(r.details, sort_keys=True)))
    return reports, bad


# -- argument handling ------------------------------------------------------------


def _type_list(values: Optional[List[str]]) -> Tuple[str, ...]:
    if values is None:
        return DEFAULT_TYPES
    out: List[str] = []
    for v in values:
        out.extend(t.strip() for t in v.split(",") if t.strip())
    return tuple(build_root_datum(t).label for t in out)


def _env_path(flag: Optional[str], env: str, default: Optional[str]) -> Optional[Path]:
    value = flag or os.environ.get(env) or default
    return Path(value) if value else None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="liecheck", description="Exact checks for cyclic modules over principal centralizers.")
    p.add_argument("--version", action="version", version=f"liecheck {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run one check on one instance")
    v.add_argument("check", choices=CHECKS)
    v.add_argument("type", nargs="?", help="type label such as A2 or G2")
    v.add_argument("weight", nargs="?", help="dominant highest weight, comma separated fundamental coordinates")
    v.add_argument("--type", dest="type_flag")
    v.add_argument("--weight", dest="weight_flag")
    v.add_argument("--mu", help="reference weight for key2 (zero or minuscule); default zero")
    v.add_argument("--dim-bound", type=int, default=DEFAULT_DIM_BOUND)
    v.add_argument("--trunc", type=int, default=None)
    v.add_argument("--out", help=f"report directory (env {OUT_ENV}; default: no file)")
    v.add_argument("--cache-dir", help=f"structure-constant cache (env {CACHE_ENV})")

    s = sub.add_parser("sweep", help="run check families over all small instances")
    s.add_argument("--type", action="append", help="types, repeatable or comma separated; '--type=' means none")
    s.add_argument("--checks", default=",".join(SWEEP_FAMILIES), help="comma separated check families")
    s.add_argument("--dim-bound", type=int, default=DEFAULT_DIM_BOUND, help="instances above this dimension are skipped")
    s.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM, help="enumerate dominant weights with dim V up to this")
    s.add_argument("--trunc", type=int, default=20)
    s.add_argument("--out", help=f"report directory (env {OUT_ENV})")
    s.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    s.add_argument("--cache-dir", help=f"structure-constant cache (env {CACHE_ENV})")

    t = sub.add_parser("table", help="tabulate series from a report directory")
    t.add_argument("report_dir")
    t.add_argument("--format", choices=("csv", "md"), default="csv")
    t.add_argument("--out", help="write the table here instead of stdout")

    c = sub.add_parser("cache", help="build or refresh cached structure constants")
    c.add_argument("--type", action="append")
    c.add_argument("--cache-dir", help=f"cache directory (env {CACHE_ENV}; default .liecheck-cache)")
    c.add_argument("--rebuild", action="store_true", help="recompute even when a cache file exists")
    return p


def cmd_verify(args) -> int:
    label = args.type_flag or args.type
    weight_text = args.weight_flag or args.weight
    if args.cache_dir:
        os.environ[CACHE_ENV] = args.cache_dir
    if label is None:
        print("error: a type is required", file=sys.stderr)
        return EXIT_USAGE
    try:
        datum = build_root_datum(label)
        hw = parse_weight(weight_text) if weight_text is not None else None
        mu = parse_weight(args.mu) if args.mu is not None else None
        if mu is not None and len(mu) != datum.rank:
            raise ValueError(f"--mu {args.mu} has wrong length for {datum.label}")
        if args.dim_bound <= 0 or (args.trunc is not None and args.trunc < 0):
            raise ValueError("bounds must be positive")
        rep = run_check(args.check, datum.label, hw, args.dim_bound, args.trunc, mu)
    except (UnsupportedType, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = _env_path(args.out, OUT_ENV, None)
    if out is not None:
        path = write_report(rep, out)
        print(f"report: {path}")
    where = "" if rep.highest_weight is None else f" {format_weight(rep.highest_weight)}"
    print(f"{rep.check} {rep.type}{where}: {rep.verdict} ({rep.millis} ms)")
    if rep.series_lhs is not None:
        print(f"  lhs: {rep.series_lhs}")
    if rep.series_rhs is not None:
        print(f"  rhs: {rep.series_rhs}")
    for note in rep.notes:
        print(f"  note: {note}")
    if rep.verdict == DIVERGENT:
        print("warning: oracle divergence", file=sys.stderr)
    return {PASS: EXIT_OK, DIVERGENT: EXIT_OK, FAIL: EXIT_FAIL, SKIP: EXIT_SKIP}[rep.verdict]


def cmd_sweep(args) -> int:
    try:
        types = _type_list(args.type)
        families = tuple(f.strip() for f in args.checks.split(",") if f.strip())
        out = _env_path(args.out, OUT_ENV, None)
        cache = args.cache_dir or os.environ.get(CACHE_ENV)
        config = SweepConfig(types, args.dim_bound, args.max_dim, args.trunc, families, out, args.jobs, cache)
    except (UnsupportedType, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    summary = run_sweep(config)
    print(f"instances: {summary.instances}  checks: {summary.attempted}  wall: {summary.wall_seconds:.1f}s")
    for fam in config.families:
        c = summary.counts[fam]
        print(f"  {fam:9s} " + "  ".join(f"{v}={c[v]}" for v in VERDICTS))
    for name in summary.failures:
        print(f"FAIL {name}")
    return EXIT_FAIL if summary.any_fail else EXIT_OK


def cmd_table(args) -> int:
    reports, bad = load_reports(Path(args.report_dir))
    text = reports_to_markdown(reports) if args.format == "md" else reports_to_csv(reports)
    if args.out:
        atomic_write(Path(args.out), text)
    else:
        sys.stdout.write(text)
    for line in bad:
        print(f"unreadable report: {line}", file=sys.stderr)
    return EXIT_FAIL if bad else EXIT_OK


def cmd_cache(args) -> int:
    cache_dir = args.cache_dir or os.environ.get(CACHE_ENV) or ".liecheck-cache"
    try:
        types = _type_list(args.type)
    except (UnsupportedType, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for label in types:
        datum = build_root_datum(label)
        path = cache_path(cache_dir, datum)
        status = "hit"
        if args.rebuild or not path.exists():
            status = "built"
            if path.exists():
                path.unlink()
        L = build_chevalley(datum, cache_dir)
        if dump_structure_constants(L) != path.read_text():
            print(f"{label}: cache file does not round-trip", file=sys.stderr)
            return EXIT_FAIL
        print(f"{label}: {status} {path}")
    return EXIT_OK


COMMANDS: Dict[str, Callable] = {"verify": cmd_verify, "sweep": cmd_sweep, "table": cmd_table, "cache": cmd_cache}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
