"""Timed benchmark suites over the synthetic model families.

The harness repeats each analysis at least ten times, reporting mean and
standard deviation of the wall-clock runtime (parse excluded) plus the
explored state count. Timing uses an injectable monotonic nanosecond clock
so reports are reproducible under test.
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass
from pathlib import Path

from .explorer import ExplorationLimits
from .generators import BranchParams, gen_growing_sequence, gen_parallel_branches
from .properties import diagnose

# The eight parameter rows of the parallel-branch sweep.
BRANCH_SWEEP: tuple[tuple[int, int], ...] = (
    (5, 1),
    (10, 1),
    (15, 1),
    (16, 1),
    (17, 1),
    (20, 1),
    (5, 5),
    (3, 20),
)
GROWING_SWEEP: tuple[int, ...] = (5, 250, 500, 1000, 2000, 4000)

CSV_HEADER = "model,params,states,mean_us,stddev_us,reps"


@dataclass(frozen=True)
class BenchRow:
    model: str
    params: str
    states: int
    mean_us: float
    stddev_us: float
    reps: int
    error: str | None = None


@dataclass(frozen=True)
class BenchReport:
    rows: tuple[BenchRow, ...]

    @property
    def failed(self) -> bool:
        return any(r.error for r in self.rows)

    def to_csv(self) -> str:
        lines = [CSV_HEADER]
        for r in self.rows:
            if r.error:
                lines.append(f"{r.model},{r.params},error,,,{r.reps}")
            else:
                lines.append(
                    f"{r.model},{r.params},{r.states},{r.mean_us:.1f},{r.stddev_us:.1f},{r.reps}"
                )
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        head = f"{'model':<24} {'params':<12} {'states':>10} {'mean':>12} {'stddev':>12} {'reps':>5}"
        lines = [head, "-" * len(head)]
        for r in self.rows:
            if r.error:
                lines.append(f"{r.model:<24} {r.params:<12} failed: {r.error}")
            else:
                lines.append(
                    f"{r.model:<24} {r.params:<12} {r.states:>10} "
                    f"{_fmt_us(r.mean_us):>12} {_fmt_us(r.stddev_us):>12} {r.reps:>5}"
                )
        return "\n".join(lines) + "\n"


def _fmt_us(us: float) -> str:
    if us >= 1_000_000:
        return f"{us / 1_000_000:.2f} s"
    if us >= 1_000:
        return f"{us / 1_000:.1f} ms"
    return f"{us:.0f} µs"


def run_benchmark(
    suite: str,
    params=None,
    repetitions: int = 10,
    limits: ExplorationLimits | None = None,
    clock=time.perf_counter_ns,
) -> BenchReport:
    """Run a timed suite: ``branches``, ``growing``, or ``dir``.

    ``params`` is a list of (n, L) pairs, element counts, or file paths
    depending on the suite; per-row failures are annotated without aborting.
    """
    if repetitions < 10:
        raise ValueError("repetitions must be at least 10")
    if suite == "branches":
        rows = [
            _bench_model(
                f"branches-{n}x{length}",
                f"{n}:{length}",
                lambda n=n, length=length: gen_parallel_branches(BranchParams(n, length)),
                repetitions,
                limits,
                clock,
            )
            for n, length in (params or BRANCH_SWEEP)
        ]
    elif suite == "growing":
        rows = [
            _bench_model(
                f"growing-{k}",
                str(k),
                lambda k=k: gen_growing_sequence(k),
                repetitions,
                limits,
                clock,
            )
            for k in (params or GROWING_SWEEP)
        ]
    elif suite == "dir":
        if not params:
            raise ValueError("dir suite needs a list of files")
        from .bpmn_xml import parse_bpmn

        rows = [
            _bench_model(
                Path(p).stem,
                Path(p).name,
                lambda p=p: parse_bpmn(Path(p).read_text(encoding="utf-8")),
                repetitions,
                limits,
                clock,
            )
            for p in params
        ]
    else:
        raise ValueError(f"unknown suite {suite!r}")
    return BenchReport(tuple(rows))


def _bench_model(name, params, build, repetitions, limits, clock) -> BenchRow:
    try:
        model = build()  # parse/generation excluded from the timed region
        samples = []
        states = 0
        for _ in range(repetitions):
            t0 = clock()
            diag = diagnose(model, limits)
            samples.append((clock() - t0) / 1000.0)
            states = diag.stats.state_count
        return BenchRow(
            model=name,
            params=params,
            states=states,
            mean_us=statistics.fmean(samples),
            stddev_us=statistics.stdev(samples) if len(samples) > 1 else 0.0,
            reps=repetitions,
        )
    except Exception as exc:  # per-row isolation
        return BenchRow(name, params, 0, 0.0, 0.0, repetitions, error=str(exc))
