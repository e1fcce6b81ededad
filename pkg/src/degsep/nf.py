"""Neighborhood functions by diffusion, exact (bitsets) or estimated (HyperLogLog).

Both engines run the same synchronous update

    c(x, t+1) = c(x, t) | OR_{y in out(x)} c(y, t)

starting from ``c(x, 0) = {x}``, so ``c(x, t)`` is the ball of radius ``t``
around ``x``. In exact mode the sets are bitsets over a block of target
nodes, which amounts to running a breadth-first visit from every source at
once; in estimated mode they are HyperLogLog register arrays and the union is
a registerwise maximum.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph
from .sketch import MAX_LOG2M, MIN_LOG2M, estimate_registers, register_updates

DEFAULT_LOG2M = 8
DEFAULT_EPS = 1e-4
DEFAULT_MAX_T = 128

# Bytes of gathered neighbor state materialized per work chunk.
_CHUNK_BYTES = 32 << 20
# Target nodes per exact-mode block (bits per node row).
_EXACT_BLOCK = 4096


@dataclass(frozen=True)
class NeighborhoodFunction:
    """``values[t]`` is the number of ordered pairs at distance at most ``t``."""

    values: tuple
    exact: bool
    n: int
    params: dict = field(default_factory=dict)

    @property
    def T(self) -> int:
        return len(self.values) - 1

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class DistanceDistribution:
    """Ordered-pair counts per distance; ``counts[0]`` holds the self-pairs.

    ``raw_increments`` keeps the unclamped differences of the neighborhood
    function it came from (they differ from ``counts`` only for estimates).
    """

    counts: tuple
    n: int
    exact: bool = True
    raw_increments: tuple = ()
    params: dict = field(default_factory=dict)

    @property
    def r(self):
        """Reachable ordered pairs, self-pairs included."""
        return sum(self.counts) if self.exact else math.fsum(self.counts)

    @property
    def T(self) -> int:
        return len(self.counts) - 1


def _chunks(indptr: np.ndarray, row_bytes: int, parts: int) -> list[tuple[int, int]]:
    n = len(indptr) - 1
    if n == 0:
        return []
    arcs_per_chunk = max(1, _CHUNK_BYTES // max(row_bytes, 1))
    m = int(indptr[-1])
    pieces = max(parts, -(-m // arcs_per_chunk), 1)
    cuts = np.searchsorted(indptr, np.linspace(0, m, pieces + 1)[1:-1], side="left")
    bounds = np.unique(np.concatenate([[0], cuts, [n]]))
    return list(zip(bounds[:-1].tolist(), bounds[1:].tolist()))


class _Diffusion:
    """One synchronous merge round over all nodes, optionally multithreaded."""

    def __init__(self, g: Graph, op: np.ufunc, row_bytes: int, threads: int = 1):
        self.indptr = g.indptr
        self.indices = g.indices
        self.op = op
        self.threads = max(1, int(threads))
        self.chunks = _chunks(g.indptr, row_bytes, self.threads)
        self._pool = ThreadPoolExecutor(self.threads) if self.threads > 1 else None

    def close(self):
        if self._pool is not None:
            self._pool.shutdown()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    def _work(self, cur: np.ndarray, new: np.ndarray, lo: int, hi: int) -> None:
        indptr = self.indptr
        a, b = int(indptr[lo]), int(indptr[hi])
        block = cur[lo:hi].copy()
        if b > a:
            gathered = cur[self.indices[a:b]]
            nonempty = np.flatnonzero(np.diff(indptr[lo:hi + 1]))
            starts = indptr[lo:hi][nonempty] - a
            merged = self.op.reduceat(gathered, starts, axis=0)
            block[nonempty] = self.op(block[nonempty], merged)
        new[lo:hi] = block

    def step(self, cur: np.ndarray) -> np.ndarray:
        new = np.empty_like(cur)
        if self._pool is None:
            for lo, hi in self.chunks:
                self._work(cur, new, lo, hi)
        else:
            list(self._pool.map(lambda c: self._work(cur, new, *c), self.chunks))
        return new


def _exact_block_counts(g: Graph, lo: int, hi: int, max_t, threads: int) -> list[int]:
    n = g.n
    words = -(-(hi - lo) // 64)
    state = np.zeros((n, words), dtype=np.uint64)
    local = np.arange(hi - lo)
    state[lo + local, local // 64] = np.left_shift(np.uint64(1), (local % 64).astype(np.uint64))
    counts = [hi - lo]
    with _Diffusion(g, np.bitwise_or, words * 8, threads) as diffusion:
        while max_t is None or len(counts) <= max_t:
            new = diffusion.step(state)
            if np.array_equal(new, state):
                break
            state = new
            counts.append(int(np.bitwise_count(state).sum(dtype=np.int64)))
    return counts


def exact_nf(g: Graph, max_t: int | None = None, threads: int = 1) -> NeighborhoodFunction:
    """Exact neighborhood function.

    Stops at the first ``t`` where nothing changes (that repeated value is
    not appended) or once ``t == max_t``.
    """
    if g.n == 0:
        return NeighborhoodFunction((0,), True, 0)
    per_block = [
        _exact_block_counts(g, lo, min(lo + _EXACT_BLOCK, g.n), max_t, threads)
        for lo in range(0, g.n, _EXACT_BLOCK)
    ]
    length = max(len(c) for c in per_block)
    values = [0] * length
    for counts in per_block:
        for t in range(length):
            values[t] += counts[min(t, len(counts) - 1)]
    return NeighborhoodFunction(tuple(values), True, g.n)


def hll_nf(
    g: Graph,
    log2m: int = DEFAULT_LOG2M,
    seed: int = 0,
    eps: float = DEFAULT_EPS,
    max_t: int = DEFAULT_MAX_T,
    threads: int = 1,
) -> NeighborhoodFunction:
    """Neighborhood function estimated with one HyperLogLog counter per node.

    Each node's estimate is capped at ``n``, the largest possible ball. The
    per-step total is an exactly rounded sum, so the output does not depend
    on ``threads``. Iteration stops when the relative change of the total
    drops below ``eps``, when no register changes (that step is not
    appended), or at ``t == max_t``.
    """
    if not MIN_LOG2M <= log2m <= MAX_LOG2M:
        raise ValueError(f"log2m={log2m} outside [{MIN_LOG2M}, {MAX_LOG2M}]")
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    params = {"log2m": log2m, "seed": seed, "eps": eps, "max_t": max_t}
    n = g.n
    if n == 0:
        return NeighborhoodFunction((0.0,), False, 0, params)

    def total(state):
        return math.fsum(np.minimum(estimate_registers(state), n).tolist())

    state = np.zeros((n, 1 << log2m), dtype=np.uint8)
    index, rho = register_updates(np.arange(n), log2m, seed)
    state[np.arange(n), index] = rho
    values = [total(state)]
    with _Diffusion(g, np.maximum, 1 << log2m, threads) as diffusion:
        while len(values) <= max_t:
            new = diffusion.step(state)
            if np.array_equal(new, state):
                break
            state = new
            values.append(total(state))
            prev = values[-2]
            if prev > 0 and abs(values[-1] - prev) / prev < eps:
                break
    return NeighborhoodFunction(tuple(values), False, n, params)


def distribution_from_nf(nf: NeighborhoodFunction) -> DistanceDistribution:
    """Differences of the neighborhood function, clamped at zero."""
    v = nf.values
    raw = (v[0],) + tuple(v[k] - v[k - 1] for k in range(1, len(v)))
    if nf.exact:
        counts = raw
    else:
        counts = tuple(max(0.0, x) for x in raw)
    return DistanceDistribution(counts, nf.n, nf.exact, raw, dict(nf.params))


def nf_to_tsv(nf: NeighborhoodFunction) -> str:
    """One row per step: ``t``, ``N(t)`` and the raw increment."""
    lines = ["t\tN(t)\traw_increment"]
    prev = 0
    for t, value in enumerate(nf.values):
        lines.append(f"{t}\t{_fmt(value)}\t{_fmt(value - prev)}")
        prev = value
    return "\n".join(lines) + "\n"


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))
