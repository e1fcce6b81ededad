"""Remove highest in-degree nodes until a fraction of the arcs is gone."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .graph import Graph, remove_nodes
from .metrics import MetricsReport, UndefinedMetric, format_tsv, metrics_report, _json_number
from .nf import DEFAULT_EPS, DEFAULT_LOG2M, DEFAULT_MAX_T, distribution_from_nf, exact_nf, hll_nf


def removal_order(g: Graph) -> list[int]:
    """Nodes by non-increasing in-degree, ties by ascending id."""
    indeg = g.in_degrees()
    # lexsort is stable and sorts by the last key first
    return np.lexsort((np.arange(g.n), -indeg)).tolist()


def removal_steps(g: Graph, order: Sequence[int] | None = None) -> Iterator[tuple[int, int, int]]:
    """Yield ``(victim, arcs_lost, arcs_removed_so_far)`` one node at a time.

    ``arcs_lost`` counts only arcs still present when the victim goes, i.e.
    arcs to or from nodes that have not been removed yet.
    """
    order = removal_order(g) if order is None else order
    alive = np.ones(g.n, dtype=bool)
    gt = g.transpose()
    removed = 0
    for v in order:
        out_alive = int(alive[g.neighbors(v)].sum())
        if g.directed:
            in_alive = int(alive[gt.neighbors(v)].sum())
        else:
            in_alive = out_alive
        alive[v] = False
        lost = out_alive + in_alive
        removed += lost
        yield v, lost, removed


@dataclass
class AblationRow:
    arc_fraction_target: float
    arcs_removed: int
    nodes_removed: int
    avg_distance: float
    avg_change_pct: float
    harmonic_diameter: float
    harmonic_change_pct: float
    confidence: float


@dataclass
class AblationReport:
    original: MetricsReport
    m_original: int
    rows: list[AblationRow] = field(default_factory=list)
    mode: str = "exact"
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        rows = []
        for row in self.rows:
            rows.append({k: _json_number(v) for k, v in asdict(row).items()})
        return {
            "mode": self.mode,
            "params": self.params,
            "m_original": self.m_original,
            "original": self.original.to_dict(),
            "rows": rows,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_tsv(self) -> str:
        """Table layout: one line per measure, ``original`` then a value and a
        signed percentage change for every target."""
        head = ["measure", "original"]
        for row in self.rows:
            pct = f"{row.arc_fraction_target * 100:g}%"
            head += [pct, f"{pct} change"]
        lines = ["\t".join(head)]
        for name, attr, change in (
            ("avg_distance", "avg_distance", "avg_change_pct"),
            ("harmonic_diameter", "harmonic_diameter", "harmonic_change_pct"),
            ("confidence", "confidence", None),
        ):
            cells = [name, format_tsv(getattr(self.original, attr))]
            for row in self.rows:
                cells.append(format_tsv(getattr(row, attr)))
                cells.append(_fmt_pct(getattr(row, change)) if change else "")
            lines.append("\t".join(cells))
        return "\n".join(lines) + "\n"


def _fmt_pct(x: float) -> str:
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "(+inf%)" if x > 0 else "(-inf%)"
    return f"({x:+.1f}%)"


def percent_change(before: float, after: float) -> float:
    """Relative change in percent.

    Growth from 0 is ``inf``; any change from an infinite or ``nan`` base is
    ``nan``.
    """
    if math.isnan(before) or math.isnan(after) or math.isinf(before):
        return math.nan
    if before == 0:
        return 0.0 if after == 0 else math.copysign(math.inf, after)
    if math.isinf(after):
        return math.inf
    return (after - before) / before * 100.0


def _metrics(g: Graph, mode: str, params: dict, threads: int) -> MetricsReport:
    if mode == "exact":
        nf = exact_nf(g, threads=threads)
    elif mode == "estimated":
        nf = hll_nf(g, threads=threads, **params)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return metrics_report(distribution_from_nf(nf), directed=g.directed, m=g.m)


def run_ablation(
    g: Graph,
    targets: Sequence[float] = (0.1, 0.3),
    mode: str = "exact",
    log2m: int = DEFAULT_LOG2M,
    seed: int = 0,
    eps: float = DEFAULT_EPS,
    max_t: int = DEFAULT_MAX_T,
    threads: int = 1,
) -> AblationReport:
    """Metrics after removing the shortest prefix of :func:`removal_order`
    whose removed-arc count reaches ``target * m`` for each target."""
    if g.n == 0:
        raise UndefinedMetric("cannot ablate an empty graph")
    targets = [float(t) for t in targets]
    if any(not 0 < t <= 1 for t in targets) or any(b <= a for a, b in zip(targets, targets[1:])):
        raise ValueError("targets must be strictly increasing fractions in (0, 1]")
    params = {} if mode == "exact" else {"log2m": log2m, "seed": seed, "eps": eps, "max_t": max_t}
    original = _metrics(g, mode, params, threads)
    report = AblationReport(original, g.m, mode=mode, params=params)

    order = removal_order(g)
    victims: list[int] = []
    removed = 0
    steps = removal_steps(g, order)
    for target in targets:
        while removed < target * g.m:
            v, _, removed = next(steps)
            victims.append(v)
        sub, _ = remove_nodes(g, victims)
        if sub.n == 0:
            raise UndefinedMetric("every node was removed")
        after = _metrics(sub, mode, params, threads)
        report.rows.append(
            AblationRow(
                arc_fraction_target=target,
                arcs_removed=removed,
                nodes_removed=len(victims),
                avg_distance=after.avg_distance,
                avg_change_pct=percent_change(original.avg_distance, after.avg_distance),
                harmonic_diameter=after.harmonic_diameter,
                harmonic_change_pct=percent_change(original.harmonic_diameter, after.harmonic_diameter),
                confidence=after.confidence,
            )
        )
    return report
