"""Closeness measures derived from a distance distribution.

All pair counts are over ordered pairs and include the ``n`` self-pairs at
distance zero, so an edgeless graph has confidence ``1/n``. The harmonic
diameter is the one measure that leaves self-pairs out.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

from .nf import DistanceDistribution

INF = math.inf


class UndefinedMetric(ValueError):
    """The requested measure is not defined for this input."""


def average_distance(d: DistanceDistribution) -> tuple[float, float]:
    """Mean distance over reachable pairs, and the fraction ``r / n**2`` of
    pairs that are reachable."""
    r = d.r
    if d.n == 0 or r <= 0:
        raise UndefinedMetric("average distance needs at least one reachable pair")
    weighted = sum(k * p for k, p in enumerate(d.counts) if k > 0)
    return weighted / r, r / d.n**2


def harmonic_diameter(d: DistanceDistribution) -> float:
    """Harmonic mean of the distances between distinct nodes (``1/inf = 0``)."""
    n = d.n
    if n < 2:
        raise UndefinedMetric("harmonic diameter needs at least two nodes")
    denom = math.fsum(p / k for k, p in enumerate(d.counts) if k > 0)
    if denom <= 0:
        return INF
    return n * (n - 1) / denom


def median_all_distances(d: DistanceDistribution) -> tuple[float, float]:
    """Element ``floor(n**2 / 2)`` (from zero) of the sorted list of all
    ``n**2`` distances, and the fraction of pairs within it.

    Returns ``(inf, r / n**2)`` when unreachable pairs occupy that index.
    """
    n = d.n
    if n < 1:
        raise UndefinedMetric("median needs at least one node")
    total = n * n
    half = total // 2
    cumulative = 0
    for k, p in enumerate(d.counts):
        cumulative += p
        if cumulative > half:
            return k, cumulative / total
    return INF, d.r / total


def fraction_within(d: DistanceDistribution, t: int) -> float:
    if t < 0:
        raise ValueError("distance must be nonnegative")
    if d.n == 0:
        raise UndefinedMetric("no pairs in an empty graph")
    return sum(d.counts[: t + 1]) / d.n**2


@dataclass
class MetricsReport:
    n: int
    avg_distance: float
    confidence: float
    harmonic_diameter: float
    median_distance: float
    median_coverage: float
    pairs_within: dict = field(default_factory=dict)
    mode: str = "exact"
    params: dict = field(default_factory=dict)
    directed: bool | None = None
    m: int | None = None

    def to_dict(self) -> dict:
        out = asdict(self)
        for key in ("harmonic_diameter", "median_distance"):
            out[key] = _json_number(out[key])
        out["pairs_within"] = {str(k): v for k, v in self.pairs_within.items()}
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    TSV_COLUMNS = (
        "mode", "n", "m", "directed", "avg_distance", "confidence",
        "harmonic_diameter", "median_distance", "median_coverage",
    )

    def to_tsv(self, header: bool = True) -> str:
        row = "\t".join(format_tsv(getattr(self, c)) for c in self.TSV_COLUMNS)
        if header:
            return "\t".join(self.TSV_COLUMNS) + "\n" + row + "\n"
        return row + "\n"


def metrics_report(d: DistanceDistribution, **meta) -> MetricsReport:
    """Every measure of this module for ``d``; ``meta`` adds ``directed``/``m``."""
    avg, conf = average_distance(d)
    harmonic = harmonic_diameter(d) if d.n >= 2 else math.nan
    median, coverage = median_all_distances(d)
    within = {}
    cumulative = 0
    for k, p in enumerate(d.counts):
        cumulative += p
        within[k] = cumulative / d.n**2
    return MetricsReport(
        n=d.n,
        avg_distance=avg,
        confidence=conf,
        harmonic_diameter=harmonic,
        median_distance=median,
        median_coverage=coverage,
        pairs_within=within,
        mode="exact" if d.exact else "estimated",
        params=dict(d.params),
        **meta,
    )


def _json_number(x):
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if math.isnan(x):
            return "nan"
    return x


def format_tsv(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if math.isnan(x):
            return "nan"
        return repr(x)
    return str(x)
