"""Statistics of small-world chain experiments with broken chains as infinity.

Chain files hold one entry per line: a nonnegative integer length, or ``*``
for a chain that never completed (including chains that never started).
A ``group: <label>`` line starts a new dataset; ``#`` starts a comment.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable

from .metrics import UndefinedMetric, format_tsv, _json_number

INF = math.inf
BROKEN = "*"


class ChainParseError(ValueError):
    pass


@dataclass
class ChainDataset:
    lengths: list = field(default_factory=list)
    group: str = "all"

    def __post_init__(self):
        for x in self.lengths:
            if not (x == INF or (isinstance(x, int) and x >= 0)):
                raise ValueError(f"chain length must be a nonnegative integer or inf, got {x!r}")

    def __len__(self) -> int:
        return len(self.lengths)

    @property
    def finite(self) -> list[int]:
        return [x for x in self.lengths if x != INF]


def completed_mean(c: ChainDataset) -> tuple[float, float]:
    """Mean length of the completed chains and the fraction that completed.

    The mean is ``nan`` when no chain completed.
    """
    if not c.lengths:
        raise UndefinedMetric("empty chain dataset")
    done = c.finite
    confidence = len(done) / len(c.lengths)
    if not done:
        return math.nan, 0.0
    return sum(done) / len(done), confidence


def chain_harmonic_mean(c: ChainDataset) -> float:
    if not c.lengths:
        raise UndefinedMetric("empty chain dataset")
    if any(x == 0 for x in c.lengths):
        raise ValueError("harmonic mean is undefined with zero-length chains")
    denom = math.fsum(1 / x for x in c.finite)
    if denom == 0:
        return INF
    return len(c.lengths) / denom


def chain_median(c: ChainDataset):
    """Entry ``floor(N/2)`` of the sorted lengths, broken chains last."""
    if not c.lengths:
        raise UndefinedMetric("empty chain dataset")
    return sorted(c.lengths)[len(c.lengths) // 2]


def load_chains(stream: Iterable[str], default_group: str = "all") -> list[ChainDataset]:
    datasets: list[ChainDataset] = []
    current: ChainDataset | None = None
    for lineno, line in enumerate(stream, start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        if s.lower().startswith("group:"):
            current = ChainDataset([], s.split(":", 1)[1].strip() or default_group)
            datasets.append(current)
            continue
        if current is None:
            current = ChainDataset([], default_group)
            datasets.append(current)
        if s == BROKEN:
            current.lengths.append(INF)
        elif s.isdigit():
            current.lengths.append(int(s))
        else:
            raise ChainParseError(f"line {lineno}: expected a length or '*': {s!r}")
    return [d for d in datasets if d.lengths]


def chain_summary(c: ChainDataset) -> dict:
    mean, confidence = completed_mean(c)
    return {
        "group": c.group,
        "chains": len(c),
        "harmonic_mean": chain_harmonic_mean(c),
        "median": chain_median(c),
        "completed_mean": mean,
        "confidence": confidence,
    }


SUMMARY_COLUMNS = ("group", "chains", "harmonic_mean", "median", "completed_mean", "confidence")


def summaries_to_tsv(summaries: list[dict]) -> str:
    lines = ["\t".join(SUMMARY_COLUMNS)]
    for s in summaries:
        lines.append("\t".join(format_tsv(s[c]) for c in SUMMARY_COLUMNS))
    return "\n".join(lines) + "\n"


def summaries_to_json(summaries: list[dict]) -> str:
    out = [{k: _json_number(v) for k, v in s.items()} for s in summaries]
    return json.dumps(out, indent=2)


# Harmonic means reported for the Travers-Milgram groups (all medians are
# infinite). Raw chain lengths are not public, so these are reference values
# only.
MILGRAM_HARMONIC_MEANS = {
    "Nebraska random": 26.68,
    "Nebraska stockholders": 19.37,
    "All Nebraska": 22.40,
    "Boston random": 12.63,
    "All": 18.29,
}
