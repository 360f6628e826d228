"""Suite runner and suite reports.

Each sample produces one row (kind, index, outcome, detail); a report keeps
the rows in a DataFrame and summarises them per kind.
"""

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
import pandas as pd

from lab.sampling import spawn_rngs
from monic.conditions import TheoremViolation

OUTCOMES = ["pass", "fail", "unknown", "skipped"]
COLUMNS = ["kind", "index", "outcome", "detail"]

# A sample task returns (outcome, detail) for one generator
SampleTask = Callable[[np.random.Generator], tuple[str, str]]


@dataclass
class SuiteReport:
    suite: str
    rows: pd.DataFrame
    seed: int
    elapsed_ms: float = 0.0
    witnesses: list[dict] = field(default_factory=list)

    @classmethod
    def from_rows(cls, suite: str, rows: list[dict], seed: int, elapsed_ms: float = 0.0,
                  witnesses: list[dict] | None = None) -> "SuiteReport":
        frame = pd.DataFrame(rows, columns=COLUMNS)
        return cls(suite, frame, seed, elapsed_ms, witnesses or [])

    def summary(self) -> pd.DataFrame:
        """Outcome counts, one row per kind."""
        if self.rows.empty:
            return pd.DataFrame(columns=OUTCOMES)
        counts = self.rows.groupby(["kind", "outcome"]).size().unstack(fill_value=0)
        return counts.reindex(columns=OUTCOMES, fill_value=0)

    def count(self, outcome: str, kind: str | None = None) -> int:
        rows = self.rows if kind is None else self.rows[self.rows["kind"] == kind]
        return int((rows["outcome"] == outcome).sum())

    @property
    def failures(self) -> int:
        return self.count("fail")

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def unknown_rate(self, kind: str | None = None) -> float:
        rows = self.rows if kind is None else self.rows[self.rows["kind"] == kind]
        return float((rows["outcome"] == "unknown").mean()) if len(rows) else 0.0

    def to_dict(self) -> dict:
        summary = self.summary()
        return {
            "suite": self.suite,
            "seed": self.seed,
            "elapsed_ms": round(self.elapsed_ms, 1),
            "samples": int(len(self.rows)),
            "failures": self.failures,
            "per_kind": {kind: {o: int(summary.loc[kind, o]) for o in OUTCOMES} for kind in summary.index},
            "witnesses": self.witnesses,
        }

    def to_text(self) -> str:
        lines = [f"Suite {self.suite} (seed {self.seed}): {len(self.rows)} samples, "
                 f"{self.failures} failures, {self.elapsed_ms:.0f} ms"]
        summary = self.summary()
        if not summary.empty:
            lines.append(summary.to_string())
        failed = self.rows[self.rows["outcome"] == "fail"]
        for _, row in failed.iterrows():
            lines.append(f"  FAIL {row['kind']} #{row['index']}: {row['detail']}")
        return "\n".join(lines)


def merge_reports(suite: str, reports: list[SuiteReport], seed: int) -> SuiteReport:
    frames = [r.rows for r in reports if not r.rows.empty]
    rows = pd.concat(frames, ignore_index=True) if frames else pd.DataFrame(columns=COLUMNS)
    return SuiteReport(suite, rows, seed, sum(r.elapsed_ms for r in reports),
                       [w for r in reports for w in r.witnesses])


def run_samples(kind: str, task: SampleTask, count: int, seed: int, jobs: int = 1,
                abort: bool = True, witnesses: list[dict] | None = None) -> list[dict]:
    """Runs `task` once per spawned generator; rows come back in sample order.

    A TheoremViolation aborts the run unless `abort` is off, in which case it
    becomes a "fail" row and its witness is appended to `witnesses`.

    With jobs > 1 the samples run on a thread pool. Each sample owns its
    generator and its reps; the shared algebras are only read, apart from the
    locked per-algebra cache in algebra.homological and idempotent
    cached_property fields.
    """
    rngs = spawn_rngs(seed, count)

    def one(i: int) -> dict:
        try:
            outcome, detail = task(rngs[i])
        except TheoremViolation as exc:
            if abort:
                exc.witness.setdefault("kind", kind)
                exc.witness.setdefault("index", i)
                raise
            if witnesses is not None:
                witnesses.append({"kind": kind, "index": i, **exc.witness})
            return {"kind": kind, "index": i, "outcome": "fail", "detail": str(exc)}
        return {"kind": kind, "index": i, "outcome": outcome, "detail": detail}

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(one, range(count)))
    return [one(i) for i in range(count)]


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed_ms = (time.perf_counter() - self.start) * 1000
        return False
