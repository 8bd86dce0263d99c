"""Command-line entry point: ``tiling-disc gen|solve|verify-extremal|verify-templates|threshold-scan``.

Exit codes: 0 success, 1 verification failure, 2 usage or parameter error,
3 internal error. Reports go to stdout with a single ``#`` header line of
run metadata; errors go to stderr.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .constructions import (
    FAMILIES, build_family, canonical_tiling, census_discrepancy, degree_target,
    random_labeling, random_min_degree_graph, type_census,
)
from .errors import InfeasibleError, ParameterError, StructureError
from .graph import EdgeLabeling, Graph, format_graph, parse_graph, tiling_discrepancy
from .solver import (
    discrepancy_extremes, enumerate_perfect_tilings, estimate_tiling_count,
    exists_perfect_tiling, sample_tiling,
)
from .templates import CSV_HEADER, SCENARIOS, sweep

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3
EXHAUSTIVE_N = 24
EXHAUSTIVE_COUNT = 10**7
VISIT_LIMIT = 10**5


@dataclass
class RunConfig:
    subcommand: str
    seed: int = 0
    budget: Optional[int] = None
    fmt: str = "text"
    input: Optional[Path] = None
    output: Optional[Path] = None

    def __post_init__(self):
        if self.budget is not None and self.budget <= 0:
            raise ParameterError("--budget must be positive")
        if self.input is not None and not self.input.is_file():
            raise ParameterError(f"input file {self.input} does not exist")
        if self.output is not None and not self.output.parent.is_dir():
            raise ParameterError(f"output directory {self.output.parent} does not exist")


@dataclass
class ExtremalReport:
    family: str
    r: int
    n: int
    mode: str
    checked: int = 0
    min: Optional[int] = None
    max: Optional[int] = None
    census_checked: int = 0
    census_failures: int = 0
    sample_failures: int = 0
    nonzero: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (self.checked > 0 and self.min == 0 and self.max == 0
                and not self.census_failures and not self.nonzero)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"family={self.family} r={self.r} n={self.n} mode={self.mode} "
                f"checked={self.checked} min={self.min} max={self.max} "
                f"census_checked={self.census_checked} census_failures={self.census_failures} "
                f"sample_failures={self.sample_failures} {status}")


def _census_ok(meta, tiling, disc) -> bool:
    census = type_census(meta, tiling)
    if census_discrepancy(meta, census) != disc:
        return False
    if meta.family == "mod1" and census.t2 != census.t3:
        return False
    if meta.family == "mod2" and census.t1 != meta.n // (meta.r * (meta.r + 1)):
        return False
    return census.t1 + census.t2 + census.t3 == meta.n // meta.r


def exhaustive_feasible(g: Graph, r: int, seed: int = 0) -> bool:
    return g.n <= EXHAUSTIVE_N or estimate_tiling_count(g, r, seed=seed, cap=EXHAUSTIVE_COUNT) <= EXHAUSTIVE_COUNT


def run_verify_extremal(family: str, *, n: int, r: Optional[int] = None, m: Optional[int] = None,
                        samples: int = 1000, seed: int = 0, budget: Optional[int] = None,
                        force_mode: Optional[str] = None) -> ExtremalReport:
    """Check that every perfect tiling of an extremal construction has discrepancy 0.

    Small instances are enumerated exhaustively; larger ones are checked on
    the canonical tiling plus ``samples`` seeded random tilings.
    """
    g, f, meta = build_family(family, r=r, m=m, n=n)
    r = meta.r
    split = meta.special_split is not None
    mode = force_mode or ("exhaustive" if exhaustive_feasible(g, r, seed) else "sampled")
    rep = ExtremalReport(family, r, n, mode)

    def record(t):
        d = tiling_discrepancy(f, t)
        rep.checked += 1
        rep.min = d if rep.min is None else min(rep.min, d)
        rep.max = d if rep.max is None else max(rep.max, d)
        if d != 0 and len(rep.nonzero) < 5:
            rep.nonzero.append(t)
        if split:
            rep.census_checked += 1
            rep.census_failures += not _census_ok(meta, t, d)

    if mode == "exhaustive":
        ext = discrepancy_extremes(g, f, r, mode="exhaustive")
        if ext.tilings_seen <= VISIT_LIMIT:
            enumerate_perfect_tilings(g, r, record)
        else:
            rep.checked, rep.min, rep.max = ext.tilings_seen, ext.min_disc, ext.max_disc
    else:
        record(canonical_tiling(meta, g))
        for s in range(seed, seed + samples):
            t = sample_tiling(g, r, s, budget)
            if t is None:
                rep.sample_failures += 1
            else:
                record(t)
    return rep


@dataclass
class ScanRow:
    fraction: float
    min_degree: int
    samples: int
    feasible: int
    max_abs_disc: Optional[int]
    mode: str

    @property
    def feasible_rate(self) -> float:
        return self.feasible / self.samples if self.samples else 0.0

    def as_csv(self) -> str:
        mad = "NA" if self.max_abs_disc is None else str(self.max_abs_disc)
        return f"{self.fraction:g},{self.min_degree},{self.samples},{self.feasible},{self.feasible_rate:.4f},{mad},{self.mode}"


SCAN_HEADER = "fraction,min_degree,samples,feasible,feasible_rate,max_abs_disc,mode"
LABELINGS = ("random", "plus", "extremal")


def run_threshold_scan(r: int, n: int, fractions: Sequence[float], samples: int, seed: int = 0,
                       labeling: str = "random", budget: Optional[int] = None) -> list[ScanRow]:
    """Exploratory: feasibility rate and largest |discrepancy| of random min-degree graphs.

    ``labeling="extremal"`` samples subgraphs of the balanced (r+1)-partite
    graph labeled as in the r = 0, 3 (mod 4) construction, with the degree
    target clipped to the Turan graph's own minimum degree.
    """
    if r < 1 or n % r:
        raise ParameterError(f"r={r} must divide n={n}")
    if labeling not in LABELINGS:
        raise ParameterError(f"unknown labeling {labeling!r}")
    host = host_f = None
    if labeling == "extremal":
        host, host_f, _ = build_family("mod03", r=r, n=n)
    rng = random.Random(seed)
    rows = []
    for frac in fractions:
        if not 0.0 <= frac <= 1.0:
            raise ParameterError(f"degree fraction {frac} outside [0, 1]")
        target = degree_target(n, frac)
        if host is not None:
            target = min(target, min(a.bit_count() for a in host.adj))
        feasible = 0
        best = None
        mode = "exhaustive" if n <= EXHAUSTIVE_N else "sampled"
        for _ in range(samples):
            g = random_min_degree_graph(n, target, rng, host=host)
            if labeling == "random":
                f = random_labeling(g, rng)
            elif labeling == "plus":
                f = EdgeLabeling.constant(g, 1)
            else:
                f = EdgeLabeling(g, {e: host_f(*e) for e in g.edges()})
            if not exists_perfect_tiling(g, r):
                continue
            feasible += 1
            if mode == "exhaustive":
                val = discrepancy_extremes(g, f, r, mode="exhaustive").max_abs
            else:
                vals = [abs(tiling_discrepancy(f, t)) for t in
                        (sample_tiling(g, r, rng.randrange(2**31), budget) for _ in range(20)) if t is not None]
                val = max(vals) if vals else None
            if val is not None:
                best = val if best is None else max(best, val)
        rows.append(ScanRow(frac, target, samples, feasible, best, mode))
    return rows


# argparse plumbing

def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tiling-disc", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"tiling-disc {__version__}")
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp, formats=("text", "csv", "jsonl"), default="text"):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--format", dest="fmt", choices=formats, default=default)

    g = sub.add_parser("gen", help="emit an extremal construction in the text graph format")
    g.add_argument("--family", choices=FAMILIES, required=True)
    g.add_argument("--r", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--out", type=Path, help="write graph here and metadata to <out>.meta")
    common(g)

    s = sub.add_parser("solve", help="discrepancy extremes over perfect tilings")
    s.add_argument("input", nargs="?", type=Path, help="graph file (stdin when omitted)")
    s.add_argument("--r", type=int, help="clique size (defaults to the header's r)")
    s.add_argument("--mode", choices=("exhaustive", "bnb"), default="exhaustive")
    s.add_argument("--objective", choices=("extremes", "maxabs"), default="extremes")
    s.add_argument("--budget", type=int, help="restart budget for sampling fallbacks")
    common(s)

    v = sub.add_parser("verify-extremal", help="check zero discrepancy of every tiling of a construction")
    v.add_argument("--family", choices=FAMILIES, required=True)
    v.add_argument("--r", type=int)
    v.add_argument("--m", type=int)
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--samples", type=int, default=1000)
    v.add_argument("--budget", type=int)
    v.add_argument("--mode", choices=("auto", "exhaustive", "sampled"), default="auto")
    common(v)

    t = sub.add_parser("verify-templates", help="sweep template gadgets against closed forms")
    t.add_argument("--r-min", type=int, default=3)
    t.add_argument("--r-max", type=int, default=8)
    t.add_argument("--scenarios", default=",".join(SCENARIOS))
    common(t, default="csv")

    h = sub.add_parser("threshold-scan", help="exploratory min-degree scan on random graphs")
    h.add_argument("--r", type=int, required=True)
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--fractions", default="0.5,0.667,0.75,1.0")
    h.add_argument("--samples", type=int, default=100)
    h.add_argument("--labeling", choices=LABELINGS, default="random")
    h.add_argument("--budget", type=int)
    common(h, default="csv")
    return p


def _header(cmd: str, **kw) -> str:
    fields = " ".join(f"{k}={v}" for k, v in kw.items() if v is not None)
    return f"# tiling-disc {__version__} {cmd} {fields}".rstrip()


def _emit_records(records: list[dict], fmt: str, csv_header: str, csv_rows: list[str], out):
    if fmt == "jsonl":
        for rec in records:
            out.write(json.dumps(rec, sort_keys=True) + "\n")
    elif fmt == "csv":
        out.write(csv_header + "\n")
        for row in csv_rows:
            out.write(row + "\n")
    else:
        for rec in records:
            out.write(" ".join(f"{k}={v}" for k, v in rec.items()) + "\n")


def _cmd_gen(a, out) -> int:
    g, f, meta = build_family(a.family, r=a.r, m=a.m, n=a.n)
    text = format_graph(g, f, meta.r)
    if a.out is not None:
        RunConfig("gen", output=a.out)
        a.out.write_text(text)
        Path(str(a.out) + ".meta").write_text(meta.sidecar + "\n")
    else:
        out.write(f"# {meta.sidecar}\n")
        out.write(text)
    return EXIT_OK


def _cmd_solve(a, out) -> int:
    cfg = RunConfig("solve", seed=a.seed, budget=a.budget, fmt=a.fmt, input=a.input)
    text = cfg.input.read_text() if cfg.input else sys.stdin.read()
    g, f, r_header = parse_graph(text)
    r = a.r if a.r is not None else r_header
    ext = discrepancy_extremes(g, f, r, mode=a.mode)
    count = "NA" if ext.tilings_seen is None else str(ext.tilings_seen)
    witnesses = [ext.witness_max_abs] if a.objective == "maxabs" else [ext.witness_min, ext.witness_max]
    out.write(_header("solve", r=r, mode=a.mode, objective=a.objective) + "\n")
    if a.fmt == "jsonl":
        rec = {"min": ext.min_disc, "max": ext.max_disc, "count": ext.tilings_seen,
               "max_abs": ext.max_abs, "witnesses": [list(map(list, w)) for w in witnesses]}
        out.write(json.dumps(rec, sort_keys=True) + "\n")
    elif a.fmt == "csv":
        out.write("min,max,count,max_abs\n")
        out.write(f"{ext.min_disc},{ext.max_disc},{count},{ext.max_abs}\n")
    else:
        out.write(f"extremes min={ext.min_disc} max={ext.max_disc} count={count}\n")
        if a.objective == "maxabs":
            out.write(f"maxabs value={ext.max_abs}\n")
        for w in witnesses:
            for tile in w:
                out.write("t " + " ".join(map(str, tile)) + "\n")
    return EXIT_OK


def _cmd_verify_extremal(a, out) -> int:
    cfg = RunConfig("verify-extremal", seed=a.seed, budget=a.budget, fmt=a.fmt)
    if a.samples <= 0:
        raise ParameterError("--samples must be positive")
    rep = run_verify_extremal(a.family, n=a.n, r=a.r, m=a.m, samples=a.samples, seed=cfg.seed,
                              budget=cfg.budget, force_mode=None if a.mode == "auto" else a.mode)
    out.write(_header("verify-extremal", family=a.family, n=a.n, seed=a.seed) + "\n")
    rec = {"family": rep.family, "r": rep.r, "n": rep.n, "mode": rep.mode, "checked": rep.checked,
           "min": rep.min, "max": rep.max, "census_checked": rep.census_checked,
           "census_failures": rep.census_failures, "sample_failures": rep.sample_failures,
           "status": "PASS" if rep.passed else "FAIL"}
    if a.fmt == "text":
        out.write(rep.line() + "\n")
    else:
        _emit_records([rec], a.fmt, ",".join(rec), [",".join(str(v) for v in rec.values())], out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def _cmd_verify_templates(a, out) -> int:
    scenarios = [s.strip() for s in a.scenarios.split(",") if s.strip()]
    if a.r_min < 3 or a.r_max < a.r_min:
        raise ParameterError("need 3 <= --r-min <= --r-max")
    rows = sweep(a.r_min, a.r_max, scenarios)
    out.write(_header("verify-templates", r_min=a.r_min, r_max=a.r_max) + "\n")
    records = [dict(zip(CSV_HEADER.split(","), row.as_csv().split(","))) for row in rows]
    _emit_records(records, a.fmt, CSV_HEADER, [row.as_csv() for row in rows], out)
    return EXIT_OK if all(row.match for row in rows) else EXIT_FAIL


def _cmd_threshold_scan(a, out) -> int:
    cfg = RunConfig("threshold-scan", seed=a.seed, budget=a.budget, fmt=a.fmt)
    if a.samples <= 0:
        raise ParameterError("--samples must be positive")
    try:
        fractions = [float(x) for x in a.fractions.split(",") if x.strip()]
    except ValueError:
        raise ParameterError(f"cannot parse --fractions {a.fractions!r}") from None
    rows = run_threshold_scan(a.r, a.n, fractions, a.samples, cfg.seed, a.labeling, cfg.budget)
    out.write(_header("threshold-scan", EXPLORATORY="yes", r=a.r, n=a.n, labeling=a.labeling,
                      seed=a.seed) + "\n")
    records = [dict(zip(SCAN_HEADER.split(","), row.as_csv().split(","))) for row in rows]
    _emit_records(records, a.fmt, SCAN_HEADER, [row.as_csv() for row in rows], out)
    return EXIT_OK


_COMMANDS = {
    "gen": _cmd_gen,
    "solve": _cmd_solve,
    "verify-extremal": _cmd_verify_extremal,
    "verify-templates": _cmd_verify_templates,
    "threshold-scan": _cmd_threshold_scan,
}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    try:
        a = _parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return _COMMANDS[a.cmd](a, out)
    except (ParameterError, StructureError, InfeasibleError) as exc:
        print(f"tiling-disc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"tiling-disc: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
