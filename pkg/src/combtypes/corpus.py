"""Benchmark corpora: the built-in metrics table and corpus files.

A corpus file holds one surface term per line.  A line ``# label``
immediately before a term names it; other comment lines and blank lines are
ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional

__all__ = ["CorpusEntry", "parse_corpus", "load_corpus", "builtin", "BUILTINS",
           "reference", "medium", "successor_power", "s_power"]


@dataclass(frozen=True)
class CorpusEntry:
    label: str
    source: str
    # Published reference values, where the entry reproduces a known row.
    ref_verdict: Optional[str] = None
    ref_size: Optional[int] = None
    ref_calls: Optional[int] = None


def parse_corpus(text: str) -> list[CorpusEntry]:
    out: list[CorpusEntry] = []
    label: Optional[str] = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            label = None
            continue
        if line.startswith("#"):
            label = line[1:].strip() or None
            continue
        out.append(CorpusEntry(label or line, line))
        label = None
    return out


def load_corpus(path: str | Path) -> list[CorpusEntry]:
    return parse_corpus(Path(path).read_text(encoding="utf-8"))


def s_power(n: int) -> str:
    """``S`` applied ``n`` times to itself: ``n + 1`` operators."""
    return " ".join(["S"] * (n + 1))


def successor_power(n: int, base: str = "zero") -> str:
    return "successor (" * n + base + ")" * n


_REFERENCE_ROWS: list[tuple[str, str, str, int, Optional[int]]] = [
    ("cond tt ff tt", "cond tt ff tt", "yes", 149, 244),
    ("cond tt tt zero", "cond tt tt zero", "no", 147, 242),
    ("cond (cond tt ff tt) ff tt", "cond (cond tt ff tt) ff tt", "yes", 279, 470),
    ("pair ff tt", "pair ff tt", "yes", 97, 147),
    ("snd (pair ff tt)", "snd (pair ff tt)", "yes", 106, 167),
    ("pair (pair ff tt) tt", "pair (pair ff tt) tt", "yes", 172, 273),
    ("successor tt", "successor tt", "no", 57, 74),
    ("successor zero", "successor zero", "yes", 58, 75),
    ("successor^3 zero", successor_power(3), "yes", 134, 187),
    ("successor^1000 zero", successor_power(1000), "yes", 38020, 56019),
    ("predecessor zero", "predecessor zero", "yes", 104, 164),
    ("isZero", "isZero", "yes", 103, 153),
    ("isZero zero", "isZero zero", "yes", 123, 180),
    ("isZero (successor zero)", "isZero (successor zero)", "yes", 161, 236),
    ("isZero tt", "isZero tt", "no", 122, 178),
    ("case (pair isZero I) (inl (pair zero tt))",
     "case (pair isZero I) (inl (pair zero tt))", "yes", 523, 954),
    ("case (pair isZero I) (inr (pair zero tt))",
     "case (pair isZero I) (inr (pair zero tt))", "yes", 526, 957),
    ("case (pair I I) (inr (pair zero tt))",
     "case (pair I I) (inr (pair zero tt))", "no", 426, 802),
    ("lam x (isZero x) zero", "lam x (isZero x) zero", "yes", 140, 204),
    ("lam x x zero zero", "lam x x zero zero", "yes", 55, 58),
    ("lam x x zero tt", "lam x x zero tt", "no", 54, 57),
    ("cond_mono{zero}", "cond_mono{zero}", "yes", 207, 335),
    ("cond_mono{zero} tt", "cond_mono{zero} tt", "yes", 226, 354),
    ("cond_mono{zero} tt zero", "cond_mono{zero} tt zero", "yes", 246, 374),
    ("cond_mono{zero} tt ff", "cond_mono{zero} tt ff", "no", 248, 376),
    ("plus (successor zero)", "plus (successor zero)", "yes", 954, 1130),
    ("plus (successor zero) zero", "plus (successor zero) zero", "yes", 974, 1367),
    ("plus (successor zero) tt", "plus (successor zero) tt", "no", 973, 1311),
    ("cons (pair ff (nil zero))", "cons (pair ff (nil zero))", "no", 188, 294),
    ("cons (pair ff (nil tt))", "cons (pair ff (nil tt))", "yes", 187, 293),
    ("cons (pair ff (cons (pair tt (nil tt))))",
     "cons (pair ff (cons (pair tt (nil tt))))", "yes", 321, 519),
    ("fold_left{plus}", "fold_left{plus}", "yes", 1638, 1670),
    ("S^4", s_power(4), "yes", 5, 10),
    ("S^10", s_power(10), "yes", 11, 70),
    ("S^100", s_power(100), "yes", 101, 7450),
    # Published as "no" with unbounded calls; inference runs out of budget.
    ("(SII)(SII)", "(SII)(SII)", "no", 14, None),
]


def reference() -> list[CorpusEntry]:
    return [CorpusEntry(label, src, verdict, size, calls)
            for label, src, verdict, size, calls in _REFERENCE_ROWS]


def medium() -> list[CorpusEntry]:
    text = resources.files(__package__).joinpath("data/medium.txt").read_text(encoding="utf-8")
    return parse_corpus(text)


BUILTINS = {"reference": reference, "medium": medium}


def builtin(name: str) -> list[CorpusEntry]:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise KeyError(f"unknown builtin corpus {name!r}; choose from {sorted(BUILTINS)}") from None
