"""Run inequality checks over graph streams and report the results."""
from __future__ import annotations

import csv
import io
import json
import math
import os
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from enum import Enum
from functools import partial
from itertools import islice
from typing import Iterable, Iterator, TextIO

import numpy as np

from .errors import EmptyScan, ParseError, SinkFailure, SourceUnavailable, SpectralTuranError
from .evaluate import evaluate
from .graph import (
    Graph,
    gen_gnp,
    gen_random_regular,
    graph_from_code,
    graph_stats,
    labeled_codes,
)
from .graph6 import HEADER, parse_graph6, to_graph6
from .inequalities import CheckKind, Tolerances, UnexpectedTightWarning

CSV_COLUMNS = (
    "index", "graph6", "n", "m", "omega", "mu1", "mu2", "check",
    "lhs", "bound", "slack", "tight", "violated", "equality_class",
)
BATCH = 4096


class Check(str, Enum):
    SPECTRAL_TURAN = "SpectralTuran"
    BOLLOBAS_NIKIFOROV = "BollobasNikiforov"
    ANDO_LIN_CHI = "AndoLinChi"
    CERTIFY = "Certify"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Source:
    kind: str  # enumerate | graph6_file | random_regular | gnp | graphs
    n: int | None = None
    d: int | None = None
    p: float | None = None
    count: int = 1
    seed: int = 0
    path: str | None = None
    records: tuple[str, ...] = ()

    @classmethod
    def enumerate(cls, n: int) -> "Source":
        return cls("enumerate", n=n)

    @classmethod
    def graph6_file(cls, path: str | os.PathLike) -> "Source":
        return cls("graph6_file", path=os.fspath(path))

    @classmethod
    def random_regular(cls, n: int, d: int, count: int, seed: int) -> "Source":
        return cls("random_regular", n=n, d=d, count=count, seed=seed)

    @classmethod
    def gnp(cls, n: int, p: float, count: int, seed: int) -> "Source":
        return cls("gnp", n=n, p=p, count=count, seed=seed)

    @classmethod
    def graphs(cls, graphs: Iterable[Graph]) -> "Source":
        return cls("graphs", records=tuple(to_graph6(g) for g in graphs))


@dataclass(frozen=True)
class Filters:
    regular_only: bool = False
    connected_only: bool = False
    non_complete_only: bool = False

    def admit(self, g: Graph) -> bool:
        if not (self.regular_only or self.connected_only or self.non_complete_only):
            return True
        stats = graph_stats(g)
        if self.regular_only and stats.regular_degree is None:
            return False
        if self.connected_only and not stats.connected:
            return False
        if self.non_complete_only and stats.is_complete:
            return False
        return True


@dataclass(frozen=True)
class ScanConfig:
    source: Source
    checks: tuple[Check, ...] = (Check.BOLLOBAS_NIKIFOROV,)
    filters: Filters = Filters()
    tolerances: Tolerances = Tolerances()
    workers: int = 1

    def __post_init__(self) -> None:
        checks = tuple(dict.fromkeys(Check(c) for c in self.checks))
        if not checks:
            raise ValueError("select at least one check")
        object.__setattr__(self, "checks", checks)
        if self.source.kind in ("random_regular", "gnp") and self.source.count < 1:
            raise ValueError("sampled sources need count >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    def to_dict(self) -> dict:
        out = {
            "source": {k: v for k, v in asdict(self.source).items() if v not in (None, ())},
            "checks": [c.value for c in self.checks],
            "filters": asdict(self.filters),
            "tolerances": asdict(self.tolerances),
        }
        if self.source.kind == "graphs":
            out["source"]["records"] = list(self.source.records)
        return out


@dataclass(frozen=True)
class CheckRow:
    check: str
    lhs: float | None
    bound: float | None
    slack: float | None
    tight: bool
    violated: bool
    equality_class: str


@dataclass(frozen=True)
class ScanRow:
    index: int
    graph6: str
    n: int
    m: int
    omega: int | None
    mu1: float | None
    mu2: float | None
    checks: tuple[CheckRow, ...]
    flags: tuple[str, ...] = ()
    error: str | None = None

    def result(self, check) -> CheckRow | None:
        name = Check(check).value
        for c in self.checks:
            if c.check == name:
                return c
        return None


@dataclass
class ScanReport:
    config: ScanConfig
    rows: list[ScanRow]
    summary: dict
    elapsed: float = 0.0


# formatting ---------------------------------------------------------------
def format_real(x: float | None) -> str:
    """Twelve significant digits, fixed-point, never finer than 1e-12.

    Values below the solver's noise floor print as ``0.000000000000`` rather
    than as a spurious ``-4.4e-16``.
    """
    if x is None:
        return ""
    if not math.isfinite(x):
        return str(x)
    digits = len(str(int(abs(x)))) if abs(x) >= 1 else 0
    out = f"{x:.{max(0, 12 - digits)}f}"
    head = out.lstrip("-").split(".")[0]
    if head != "0" and len(head) > digits:  # rounding carried into a new digit
        out = f"{x:.{max(0, 11 - digits)}f}"
    if out.startswith("-") and not any(ch in "123456789" for ch in out):
        out = out[1:]
    return out


def _derive_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence([seed, index]).generate_state(1, np.uint64)[0])


# sources -----------------------------------------------------------------
def _read_graph6_file(path: str) -> list[str]:
    try:
        with open(path, "r", encoding="ascii") as fh:
            lines = fh.read().splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise SourceUnavailable(f"cannot read {path}: {exc}") from exc
    records = []
    for lineno, line in enumerate(lines, start=1):
        s = line.strip()
        if not s or s == HEADER:
            continue
        try:
            g = parse_graph6(s)
        except SpectralTuranError as exc:
            raise ParseError(str(exc), lineno) from exc
        records.append(to_graph6(g))
    return records


def _tasks(config: ScanConfig) -> Iterator[tuple[int, str | None]]:
    src = config.source
    if src.kind == "enumerate":
        codes = labeled_codes(src.n, regular_only=config.filters.regular_only)
        for code in codes.tolist():
            yield code, None
    elif src.kind == "graph6_file":
        yield from enumerate(_read_graph6_file(src.path))
    elif src.kind == "graphs":
        yield from enumerate(src.records)
    elif src.kind in ("random_regular", "gnp"):
        for i in range(src.count):
            yield i, None
    else:
        raise SourceUnavailable(f"unknown source kind {src.kind!r}")


def _materialise(config: ScanConfig, index: int, record: str | None) -> Graph:
    src = config.source
    if record is not None:
        return parse_graph6(record)
    if src.kind == "enumerate":
        return graph_from_code(src.n, index)
    if src.kind == "random_regular":
        return gen_random_regular(src.n, src.d, _derive_seed(src.seed, index))
    return gen_gnp(src.n, src.p, _derive_seed(src.seed, index))


def _evaluate_task(config: ScanConfig, task: tuple[int, str | None]) -> ScanRow | None:
    index, record = task
    try:
        g = _materialise(config, index, record)
    except SpectralTuranError as exc:
        return ScanRow(index, record or "", 0, 0, None, None, None, (), (), f"{type(exc).__name__}: {exc}")
    if not config.filters.admit(g):
        return None
    g6 = record if record is not None else to_graph6(g)
    kinds = [CheckKind(c.value) for c in config.checks if c is not Check.CERTIFY]
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", UnexpectedTightWarning)
            ev = evaluate(g, kinds, config.tolerances, certify_graph=Check.CERTIFY in config.checks)
    except Exception as exc:  # per-row capture keeps long scans alive
        return ScanRow(index, g6, g.n, g.m, None, None, None, (), (), f"{type(exc).__name__}: {exc}")
    rows = []
    for c in config.checks:
        if c is Check.CERTIFY:
            failed = [s.name for r in ev.certificates for s in r.steps if not s.passed]
            status = "certified" if not failed else "FAILED: " + "; ".join(failed)
            rows.append(CheckRow(c.value, None, None, None, False, False, status))
            continue
        v = ev.verdicts[CheckKind(c.value)]
        eq = ev.equality.label if c is Check.BOLLOBAS_NIKIFOROV and ev.equality else ""
        rows.append(CheckRow(c.value, v.lhs, v.bound, v.slack, v.tight, v.violated, eq))
    flags = []
    if ev.stats.regular_degree is not None:
        flags.append("regular")
    if ev.stats.connected:
        flags.append("connected")
    if ev.stats.is_complete:
        flags.append("complete")
    if ev.equality is not None and ev.equality.alarm:
        flags.append("unexpected_tight_regular")
    if Check.CERTIFY in config.checks and not ev.certified:
        flags.append("certificate_failed")
    return ScanRow(
        index, g6, g.n, g.m, ev.omega, ev.spectrum.mu1, ev.spectrum.mu2, tuple(rows), tuple(flags)
    )


def _summarise(config: ScanConfig, rows: list[ScanRow]) -> dict:
    per_check = {}
    for c in config.checks:
        entry = {"tight": 0, "violated": 0, "rows": 0}
        best_min = best_max = None
        for row in rows:
            res = row.result(c)
            if res is None:
                continue
            entry["rows"] += 1
            entry["tight"] += res.tight
            entry["violated"] += res.violated
            if res.slack is None:
                continue
            if best_min is None or res.slack < best_min[1]:
                best_min = (row.index, res.slack)
            if best_max is None or res.slack > best_max[1]:
                best_max = (row.index, res.slack)
        if c is not Check.CERTIFY:
            entry["min_slack"] = None if best_min is None else {"index": best_min[0], "slack": best_min[1]}
            entry["max_slack"] = None if best_max is None else {"index": best_max[0], "slack": best_max[1]}
        else:
            entry["failures"] = sum("certificate_failed" in r.flags for r in rows)
        per_check[c.value] = entry
    return {
        "rows": len(rows),
        "tight": sum(e["tight"] for e in per_check.values()),
        "violations": sum(e["violated"] for e in per_check.values()),
        "errors": sum(r.error is not None for r in rows),
        "alarms": sum("unexpected_tight_regular" in r.flags for r in rows),
        "certificate_failures": sum("certificate_failed" in r.flags for r in rows),
        "checks": per_check,
    }


def _run(config: ScanConfig, tasks: Iterator) -> Iterator[ScanRow | None]:
    work = partial(_evaluate_task, config)
    if config.workers == 1:
        yield from map(work, tasks)
        return
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        while True:
            batch = list(islice(tasks, BATCH))
            if not batch:
                break
            chunk = max(1, len(batch) // (4 * config.workers))
            # map preserves submission order, so rows come back by index
            yield from pool.map(work, batch, chunksize=chunk)


def scan(config: ScanConfig) -> ScanReport:
    start = time.perf_counter()
    tasks = _tasks(config)
    if config.source.kind == "graph6_file":
        tasks = iter(list(tasks))  # parse the whole file up front so ParseError surfaces first
    rows = [row for row in _run(config, tasks) if row is not None]
    return ScanReport(config, rows, _summarise(config, rows), time.perf_counter() - start)


def find_extremal(config: ScanConfig, objective: str, check) -> ScanRow:
    """Row minimising or maximising slack for ``check``; ties go to the smallest index."""
    if objective not in ("min_slack", "max_slack"):
        raise ValueError(f"unknown objective {objective!r}")
    check = Check(check)
    if check not in config.checks:
        config = ScanConfig(config.source, config.checks + (check,), config.filters, config.tolerances, config.workers)
    best = None
    for row in scan(config).rows:
        res = row.result(check)
        if res is None or res.slack is None:
            continue
        key = res.slack if objective == "min_slack" else -res.slack
        if best is None or key < best[0]:
            best = (key, row)
    if best is None:
        raise EmptyScan("scan produced no rows with a slack for this check")
    return best[1]


# output ------------------------------------------------------------------
def _bool(b: bool) -> str:
    return "true" if b else "false"


def _flat_rows(report: ScanReport) -> Iterator[dict]:
    for row in report.rows:
        base = {
            "index": row.index,
            "graph6": row.graph6,
            "n": row.n,
            "m": row.m,
            "omega": row.omega,
            "mu1": row.mu1,
            "mu2": row.mu2,
        }
        if row.error is not None:
            for c in report.config.checks:
                yield {**base, "check": c.value, "lhs": None, "bound": None, "slack": None,
                       "tight": False, "violated": False, "equality_class": "", "error": row.error}
            continue
        for res in row.checks:
            yield {**base, "check": res.check, "lhs": res.lhs, "bound": res.bound, "slack": res.slack,
                   "tight": res.tight, "violated": res.violated, "equality_class": res.equality_class,
                   "error": None}


_REAL_FIELDS = ("mu1", "mu2", "lhs", "bound", "slack")


def emit_report(report: ScanReport, fmt: str, sink: TextIO) -> None:
    """Write ``report`` as CSV (one line per row and check) or JSON."""
    try:
        if fmt == "csv":
            writer = csv.writer(sink, lineterminator="\r\n")
            writer.writerow(CSV_COLUMNS)
            for rec in _flat_rows(report):
                out = []
                for col in CSV_COLUMNS:
                    v = rec[col]
                    if col in _REAL_FIELDS:
                        out.append(format_real(v))
                    elif isinstance(v, bool):
                        out.append(_bool(v))
                    elif col == "equality_class" and rec["error"]:
                        out.append(f"error: {rec['error']}")
                    else:
                        out.append("" if v is None else v)
                writer.writerow(out)
        elif fmt == "json":
            rows = []
            for rec in _flat_rows(report):
                for col in _REAL_FIELDS:
                    if rec[col] is not None:
                        rec[col] = float(format_real(rec[col]))
                rows.append(rec)
            doc = {"config": report.config.to_dict(), "rows": rows,
                   "summary": {**report.summary, "elapsed": report.elapsed}}
            json.dump(doc, sink, indent=2)
            sink.write("\n")
        else:
            raise ValueError(f"unknown report format {fmt!r}")
    except OSError as exc:
        raise SinkFailure(f"could not write report: {exc}") from exc


def report_text(report: ScanReport, fmt: str = "csv") -> str:
    buf = io.StringIO()
    emit_report(report, fmt, buf)
    return buf.getvalue()
