"""Command reports: a stable JSON layout plus a plain-text rendering."""

import hashlib
import json
from dataclasses import dataclass, field

from config import SCHEMA_VERSION

VERDICTS = ["valid", "monic", "not-monic", "GP", "NotGP", "Unknown", "written", "pass", "fail"]


def digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass
class Report:
    command: str
    input_digest: str
    verdict: str
    seed: int | None = None
    depth: int | None = None
    per_vertex: dict = field(default_factory=dict)
    per_arrow: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    elapsed_ms: float = 0.0
    # Rendered only in text reports
    body: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "input": {"sha256": self.input_digest},
            "verdict": self.verdict,
            "per_vertex": self.per_vertex,
            "per_arrow": self.per_arrow,
            "witnesses": self.witnesses,
            "details": self.details,
            "seed": self.seed,
            "depth": self.depth,
            "elapsed_ms": round(self.elapsed_ms, 1),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, default=str)

    def to_text(self) -> str:
        lines = [f"{self.command}: {self.verdict}"]
        for v, row in self.per_vertex.items():
            lines.append(f"  vertex {v}: {_inline(row)}")
        for a, row in self.per_arrow.items():
            lines.append(f"  arrow {a}: {_inline(row)}")
        lines.extend(self.body)
        for w in self.witnesses:
            lines.append(f"  witness: {json.dumps(w, sort_keys=True, default=str)}")
        extra = [f"seed={self.seed}" if self.seed is not None else "",
                 f"depth={self.depth}" if self.depth is not None else "",
                 f"{self.elapsed_ms:.0f} ms"]
        lines.append("  (" + ", ".join(e for e in extra if e) + ")")
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_text()


def _inline(row) -> str:
    if isinstance(row, dict):
        return ", ".join(f"{k}={v}" for k, v in row.items())
    return str(row)
