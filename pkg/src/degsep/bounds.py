"""Lower bounds on the average distance from bounds on short-distance pair counts.

If ``B[k-1] >= P_k`` for ``k = 1..L`` then the cheapest way to place the
``r - n`` reachable pairs of distinct nodes is to fill distances ``1..L`` up
to their bounds and put everything else at distance ``L + 1``. The ``n``
self-pairs sit at distance zero and are excluded from that residual mass.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .graph import Graph

CENSUS_LIMIT = 10_000


class CensusTooLarge(RuntimeError):
    pass


class InvalidDegreeSequence(ValueError):
    pass


@dataclass
class BoundResult:
    avg_lower_bound: float
    ell_used: int
    feasible: bool
    B: list = field(default_factory=list)
    # Longest prefix of B that would have been feasible (set when infeasible).
    suggested_prefix: int | None = None

    def to_dict(self) -> dict:
        return {
            "avg_lower_bound": self.avg_lower_bound,
            "ell_used": self.ell_used,
            "feasible": self.feasible,
            "B": [float(b) if isinstance(b, float) else int(b) for b in self.B],
            "suggested_prefix": self.suggested_prefix,
        }


def _feasible_prefix(B: Sequence, budget) -> int:
    total = 0
    for i, b in enumerate(B):
        total += b
        if total > budget:
            return i
    return len(B)


def distance_lower_bound(r, n, B: Sequence) -> BoundResult:
    """Average-distance lower bound from upper bounds ``B[k-1] >= P_k``.

    ``r`` counts reachable ordered pairs including the ``n`` self-pairs.
    Requires ``sum(B) <= r - n``; otherwise the result is marked infeasible
    and carries the longest feasible prefix length.
    """
    if n < 0 or r < n:
        raise ValueError("need r >= n >= 0")
    if r <= 0:
        raise ValueError("need at least one reachable pair")
    B = list(B)
    if any(b < 0 for b in B):
        raise ValueError("pair-count bounds must be nonnegative")
    budget = r - n
    L = len(B)
    residual = budget - sum(B)
    if residual < 0:
        return BoundResult(float("nan"), L + 1, False, B, _feasible_prefix(B, budget))
    total = sum(k * b for k, b in enumerate(B, start=1)) + (L + 1) * residual
    return BoundResult(total / r, L + 1, True, B)


def trivial_bound(n, m, D, r, max_ell: int = 3) -> BoundResult:
    """Bound from ``n``, arc count ``m`` and maximum degree ``D``.

    At most ``m * D**(k-1)`` pairs can be at distance ``k``; the longest
    feasible list of such bounds with ``L <= max_ell - 1`` is used.
    """
    if min(m, D, r) < 0:
        raise ValueError("m, D and r must be nonnegative")
    for L in range(max_ell - 1, 0, -1):
        B = [m * D ** (k - 1) for k in range(1, L + 1)]
        result = distance_lower_bound(r, n, B)
        if result.feasible:
            return result
    return BoundResult(float("nan"), 1, False, [m], 0)


def _check_sequence(seq) -> np.ndarray:
    d = np.asarray(seq, dtype=np.int64)
    if d.ndim != 1:
        raise InvalidDegreeSequence("degree sequence must be one-dimensional")
    n = len(d)
    if n and (d.min() < 0 or np.any(np.diff(d) > 0)):
        raise InvalidDegreeSequence("degree sequence must be nonnegative and non-increasing")
    if n and d[0] > n - 1:
        raise InvalidDegreeSequence(f"degree {d[0]} exceeds n - 1 = {n - 1}")
    return d


def delta(seq, t: int) -> int:
    """Sum of the ``seq[t]`` largest degrees: the most length-2 walks a node
    of degree ``seq[t]`` can start."""
    d = _check_sequence(seq)
    if not 0 <= t < len(d):
        raise IndexError(f"index {t} outside [0, {len(d)})")
    return int(d[: d[t]].sum())


def p3_degree_bound(seq) -> int:
    """Upper bound on the number of ordered pairs at distance exactly 3,
    depending only on the (non-increasing) degree sequence."""
    d = _check_sequence(seq)
    n = len(d)
    if n == 0:
        return 0
    prefix = np.concatenate([[0], np.cumsum(d)])
    deltas = prefix[d]
    s = int(np.dot(d, d))
    cum = np.cumsum(deltas)
    ell = int(np.searchsorted(cum, s, side="left")) - 1
    if ell < 0:
        return int(d[0]) * s
    # sum_k d_k * delta(k) grouped by degree value; Python ints avoid overflow
    values, counts = np.unique(d[: ell + 1], return_counts=True)
    head = sum(int(v) * int(c) * int(prefix[v]) for v, c in zip(values, counts))
    if ell == n - 1:
        return head
    return head + int(d[ell + 1]) * (s - int(cum[ell]))


def degree_sequence_bound(seq, r, n=None) -> BoundResult:
    """Degree-sequence bound: ``B = [m, sum d_i**2, p3_degree_bound]``.

    Uses the longest prefix of those bounds that is feasible for ``r``.
    """
    d = sorted((int(x) for x in seq), reverse=True)
    n = len(d) if n is None else n
    B = [sum(d), sum(x * x for x in d), p3_degree_bound(d)]
    result = distance_lower_bound(r, n, B)
    if not result.feasible:
        result = distance_lower_bound(r, n, B[: result.suggested_prefix])
    return result


def load_degree_sequence(stream: Iterable[str]) -> list[int]:
    """One nonnegative integer per line, any order; ``#`` starts a comment."""
    out = []
    for lineno, line in enumerate(stream, start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        if not s.isdigit():
            raise InvalidDegreeSequence(f"line {lineno}: not a nonnegative integer: {s!r}")
        out.append(int(s))
    out.sort(reverse=True)
    return out


def bfs_distances(adj: list[list[int]], source: int) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in adj[u]:
            if v not in dist:
                dist[v] = du
                queue.append(v)
    return dist


def p_census(g: Graph, k_max: int | None = None, allow_large: bool = False) -> list[int]:
    """Exact count of ordered pairs at each distance, by BFS from every node.

    With ``k_max`` the result has exactly ``k_max + 1`` entries.
    """
    if g.n > CENSUS_LIMIT and not allow_large:
        raise CensusTooLarge(f"n={g.n} exceeds {CENSUS_LIMIT}; pass allow_large=True to force")
    adj = g.adjacency_lists()
    counts: list[int] = []
    for x in range(g.n):
        for k in bfs_distances(adj, x).values():
            if k >= len(counts):
                counts.extend([0] * (k + 1 - len(counts)))
            counts[k] += 1
    if k_max is not None:
        counts = (counts + [0] * (k_max + 1))[: k_max + 1]
    return counts
