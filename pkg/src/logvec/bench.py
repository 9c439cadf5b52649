"""Stack, array and construction benchmarks with CSV output.

Usage::

    logvec-bench --workload all --n 100,1000,10000 --out results.csv

Timing uses a monotonic clock with the garbage collector paused.  One
warm-up pass is discarded, then the median and minimum of ``--repeats``
passes are reported.  Timing columns depend on the machine.  Everything
else is a function of the seed.
"""

import argparse
import csv
import gc
import statistics
import sys
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence

import numpy as np

from .containers import (
    ADAPTERS, DEFAULT_CONTAINERS, ELEMENT_BYTES, LARGE_RECORD, WORD, Adapter,
)

WORKLOADS = ("stack", "array", "construct")
DEFAULT_N = (100, 1_000, 10_000, 100_000, 1_000_000)
FULL_N = DEFAULT_N + (10_000_000,)
CSV_HEADER = ["container", "workload", "element_bytes", "n", "median_s", "min_s", "allocs", "frees"]

# Distinct large payloads per run; pushes cycle through them.
LARGE_POOL = 4096


@dataclass
class WorkloadSpec:
    kind: str
    n: int
    element_bytes: str = WORD
    repeats: int = 5
    seed: int = 0

    def __post_init__(self):
        if self.kind not in WORKLOADS:
            raise ValueError(f"unknown workload {self.kind!r}")
        # Building an empty container is a meaningful measurement; nothing else is.
        if self.n < (0 if self.kind == "construct" else 1):
            raise ValueError(f"n={self.n} is too small for the {self.kind} workload")
        if self.repeats < 1:
            raise ValueError("repeats must be at least 1")
        if self.element_bytes not in ELEMENT_BYTES:
            raise ValueError(f"element_bytes must be one of {sorted(ELEMENT_BYTES)}")


@dataclass
class BenchRecord:
    container: str
    workload: str
    n: int
    element_bytes: int
    median_s: float
    min_s: float
    allocs: Optional[int] = None
    frees: Optional[int] = None
    checksum: Optional[int] = None
    times: List[float] = field(default_factory=list, repr=False)

    def row(self):
        return [
            self.container, self.workload, self.element_bytes, self.n,
            f"{self.median_s:.9f}", f"{self.min_s:.9f}",
            "" if self.allocs is None else self.allocs,
            "" if self.frees is None else self.frees,
        ]


@contextmanager
def gc_paused():
    enabled = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if enabled:
            gc.enable()


def make_values(kind: str, n: int) -> list:
    """Elements to push: ints for words, cycling 256-byte records otherwise."""
    if kind == WORD:
        return list(range(n))
    pool = np.zeros(min(n, LARGE_POOL), dtype=LARGE_RECORD)
    pool["key"] = np.arange(len(pool))
    records = [pool[j] for j in range(len(pool))]
    return [records[j % len(records)] for j in range(n)]


def default_value(kind: str):
    if kind == WORD:
        return 0
    return np.zeros((), dtype=LARGE_RECORD)[()]


def key_of(kind: str):
    if kind == WORD:
        return int
    return lambda v: int(v["key"])


def resolve(names: Iterable[str]) -> List[Adapter]:
    out = []
    for name in names:
        if name not in ADAPTERS:
            raise KeyError(name)
        out.append(ADAPTERS[name])
    return out


def _record(adapter, spec, times, stats=None, checksum=None):
    return BenchRecord(
        container=adapter.name,
        workload=spec.kind,
        n=spec.n,
        element_bytes=ELEMENT_BYTES[spec.element_bytes],
        median_s=statistics.median(times),
        min_s=min(times),
        allocs=stats.allocations if stats is not None else None,
        frees=stats.deallocations if stats is not None else None,
        checksum=checksum,
        times=times,
    )


def run_stack(spec: WorkloadSpec, containers: Sequence[str] = DEFAULT_CONTAINERS) -> List[BenchRecord]:
    """Time ``n`` pushes followed by ``n`` pops."""
    values = make_values(spec.element_bytes, spec.n)
    records = []
    for adapter in resolve(containers):
        times = []
        for r in range(spec.repeats + 1):
            bound = adapter.new(spec.element_bytes)
            push, pop = bound.push, bound.pop
            with gc_paused():
                t0 = time.perf_counter()
                for v in values:
                    push(v)
                for _ in range(spec.n):
                    pop()
                elapsed = time.perf_counter() - t0
            if r:
                times.append(elapsed)
        records.append(_record(adapter, spec, times, bound.stats))
    return records


def run_array(spec: WorkloadSpec, containers: Sequence[str] = DEFAULT_CONTAINERS) -> List[BenchRecord]:
    """Fill ``n`` elements, then time ``n`` sequential and ``n`` random indexed reads.

    The reads are summed into a checksum so every container provably
    returned the same data.
    """
    values = make_values(spec.element_bytes, spec.n)
    rng = np.random.default_rng(spec.seed)
    random_idx = rng.integers(0, spec.n, spec.n).tolist()
    key = key_of(spec.element_bytes)
    records = []
    for adapter in resolve(containers):
        times = []
        checksum = None
        for r in range(spec.repeats + 1):
            bound = adapter.new(spec.element_bytes)
            for v in values:
                bound.push(v)
            get = bound.get
            with gc_paused():
                t0 = time.perf_counter()
                total = 0
                for i in range(spec.n):
                    total += key(get(i))
                for i in random_idx:
                    total += key(get(i))
                elapsed = time.perf_counter() - t0
            if checksum is not None and total != checksum:
                raise RuntimeError(f"{adapter.name}: checksum changed between repeats")
            checksum = total
            if r:
                times.append(elapsed)
        records.append(_record(adapter, spec, times, bound.stats, checksum))
    return records


def run_construct(spec: WorkloadSpec, containers: Sequence[str] = DEFAULT_CONTAINERS) -> List[BenchRecord]:
    """Time building a container of ``n`` default elements in one call."""
    default = default_value(spec.element_bytes)
    records = []
    for adapter in resolve(containers):
        times = []
        for r in range(spec.repeats + 1):
            with gc_paused():
                t0 = time.perf_counter()
                bound = adapter.construct(spec.n, default, spec.element_bytes)
                elapsed = time.perf_counter() - t0
            if r:
                times.append(elapsed)
            stats = bound.stats
            del bound
        records.append(_record(adapter, spec, times, stats))
    return records


RUNNERS = {"stack": run_stack, "array": run_array, "construct": run_construct}


def push_latencies(container: str, n: int, element_bytes: str = WORD,
                   repeats: int = 5) -> List[np.ndarray]:
    """Per-push latency in nanoseconds for ``repeats`` fresh fills of ``n`` elements."""
    adapter = ADAPTERS[container]
    values = make_values(element_bytes, n)
    clock = time.perf_counter_ns
    runs = []
    for _ in range(repeats):
        lat = np.empty(n, dtype=np.int64)
        bound = adapter.new(element_bytes)
        push = bound.push
        with gc_paused():
            for j, v in enumerate(values):
                t0 = clock()
                push(v)
                lat[j] = clock() - t0
        runs.append(lat)
        del bound, push
    return runs


def time_pushes(container: str, n: int, element_bytes: str = WORD,
                 repeats: int = 5) -> List[float]:
    """Total seconds for ``n`` pushes into a fresh container, once per repeat."""
    adapter = ADAPTERS[container]
    values = make_values(element_bytes, n)
    totals = []
    for _ in range(repeats):
        bound = adapter.new(element_bytes)
        push = bound.push
        with gc_paused():
            t0 = time.perf_counter()
            for v in values:
                push(v)
            totals.append(time.perf_counter() - t0)
        del bound, push
    return totals


def sort_records(records: Iterable[BenchRecord]) -> List[BenchRecord]:
    return sorted(records, key=lambda r: (r.container, r.workload, r.n))


def emit(records: Iterable[BenchRecord], path) -> None:
    """Write records as CSV to ``path`` (``"-"`` for stdout)."""
    rows = [r.row() for r in sort_records(records)]
    if path == "-":
        _write_csv(sys.stdout, rows)
        return
    with open(path, "w", newline="") as f:
        _write_csv(f, rows)


def _write_csv(f, rows):
    w = csv.writer(f, lineterminator="\n")
    w.writerow(CSV_HEADER)
    w.writerows(rows)


def _int_list(text: str) -> List[int]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            value = int(part)
        except ValueError:
            f = float(part)
            if not f.is_integer():
                raise argparse.ArgumentTypeError(f"not an integer: {part!r}")
            value = int(f)
        if value < 1:
            raise argparse.ArgumentTypeError(f"n must be positive: {part!r}")
        out.append(value)
    if not out:
        raise argparse.ArgumentTypeError("empty list")
    return out


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="logvec-bench", description=__doc__.split("\n")[0])
    p.add_argument("--workload", choices=WORKLOADS + ("all",), default="all")
    p.add_argument("--containers", default=",".join(DEFAULT_CONTAINERS),
                   help=f"comma-separated subset of {','.join(ADAPTERS)}")
    p.add_argument("--n", type=_int_list, default=None,
                   help="comma-separated element counts (default 100..1000000 by decades)")
    p.add_argument("--full-sweep", action="store_true",
                   help="extend the default sweep to 10000000")
    p.add_argument("--element-bytes", choices=sorted(ELEMENT_BYTES), default=WORD)
    p.add_argument("--repeats", type=_positive, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="-", help="CSV path, '-' for stdout")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    containers = [c.strip() for c in args.containers.split(",") if c.strip()]
    unknown = [c for c in containers if c not in ADAPTERS]
    if unknown or not containers:
        parser.error(f"unknown containers: {','.join(unknown) or '(none given)'}")
    if args.seed < 0 or args.seed >= 1 << 64:
        parser.error("seed must fit in an unsigned 64-bit integer")
    ns = args.n or list(FULL_N if args.full_sweep else DEFAULT_N)
    workloads = WORKLOADS if args.workload == "all" else (args.workload,)

    records = []
    for workload in workloads:
        for n in ns:
            spec = WorkloadSpec(workload, n, args.element_bytes, args.repeats, args.seed)
            for rec in RUNNERS[workload](spec, containers):
                if rec.checksum is not None:
                    print(f"checksum {rec.container} {workload} n={n}: {rec.checksum}",
                          file=sys.stderr)
                records.append(rec)
    try:
        emit(records, args.out)
    except OSError as e:
        print(f"logvec-bench: cannot write {args.out}: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
