"""Inference metrics over a corpus: size, calls and calls/size per term."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .corpus import CorpusEntry
from .inference import DEFAULT_BUDGET_FACTOR, default_limit, infer
from .surface import ParseError, print_type, read_term

__all__ = ["BenchRow", "run_bench", "bench_entry", "format_table", "max_ratio"]

VERDICTS = ("yes", "no", "budget", "error")


@dataclass(frozen=True)
class BenchRow:
    label: str
    verdict: str
    size: int
    calls: int
    type: Optional[str] = None
    ref_verdict: Optional[str] = None

    @property
    def ratio(self) -> Optional[Fraction]:
        return Fraction(self.calls, self.size) if self.size else None

    def to_json(self) -> str:
        d = {"label": self.label, "verdict": self.verdict, "size": self.size,
             "calls": self.calls,
             "ratio": None if self.ratio is None else float(self.ratio)}
        if self.type is not None:
            d["type"] = self.type
        if self.ref_verdict is not None:
            d["ref_verdict"] = self.ref_verdict
        return json.dumps(d, ensure_ascii=False)

    @classmethod
    def from_json(cls, line: str) -> BenchRow:
        d = json.loads(line)
        if d.get("verdict") not in VERDICTS:
            raise ValueError(f"bad verdict {d.get('verdict')!r}")
        row = cls(d["label"], d["verdict"], int(d["size"]), int(d["calls"]),
                  d.get("type"), d.get("ref_verdict"))
        ratio = d.get("ratio")
        if (ratio is None) != (row.ratio is None) or (
                ratio is not None and ratio != float(row.ratio)):
            raise ValueError("ratio does not match calls/size")
        return row


def bench_entry(entry: CorpusEntry, factor: int = DEFAULT_BUDGET_FACTOR,
                limit: Optional[int] = None) -> BenchRow:
    try:
        term = read_term(entry.source)
    except (ParseError, LookupError) as e:
        return BenchRow(entry.label, "error", 0, 0, str(e), entry.ref_verdict)
    report = infer(term, (), limit if limit is not None else default_limit(term, factor))
    ty = print_type(report.type) if report.type is not None else None
    return BenchRow(entry.label, report.verdict, report.term_size, report.calls, ty,
                    entry.ref_verdict)


def run_bench(entries: Iterable[CorpusEntry], factor: int = DEFAULT_BUDGET_FACTOR,
              limit: Optional[int] = None) -> list[BenchRow]:
    return [bench_entry(e, factor, limit) for e in entries]


def max_ratio(rows: Iterable[BenchRow], verdict: str = "yes") -> Optional[BenchRow]:
    rows = [r for r in rows if r.verdict == verdict and r.ratio is not None]
    return max(rows, key=lambda r: r.ratio, default=None)


def format_table(rows: list[BenchRow]) -> str:
    show_ref = any(r.ref_verdict is not None for r in rows)
    header = ["term", "has type", "size", "#calls", "#calls/size"]
    if show_ref:
        header.append("reference")
    body = []
    for r in rows:
        ratio = "-" if r.ratio is None else f"{float(r.ratio):.2f}"
        cells = [r.label, r.verdict, str(r.size), str(r.calls), ratio]
        if show_ref:
            cells.append(r.ref_verdict or "")
        body.append(cells)
    widths = [max(len(row[i]) for row in [header] + body) for i in range(len(header))]
    lines = []
    for cells in [header] + body:
        parts = [cells[0].ljust(widths[0])]
        parts += [c.rjust(w) if i in (2, 3, 4) else c.ljust(w)
                  for i, (c, w) in enumerate(zip(cells, widths)) if i]
        lines.append("  ".join(parts).rstrip())
    return "\n".join(lines)
