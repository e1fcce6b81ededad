"""Small graph builders and a brute-force distance oracle independent of BFS."""

import math

import numpy as np

from degsep import Graph


def path(n, directed=False):
    return Graph.from_arcs(n, np.arange(n - 1), np.arange(1, n), directed)


def star(leaves):
    return Graph.from_arcs(leaves + 1, np.zeros(leaves, int), np.arange(1, leaves + 1), False)


def complete(n):
    src, dst = np.nonzero(~np.eye(n, dtype=bool))
    return Graph.from_arcs(n, src, dst, False)


def perfect_match(n):
    assert n % 2 == 0
    return Graph.from_arcs(n, np.arange(0, n, 2), np.arange(1, n, 2), False)


def cycle(n):
    return Graph.from_arcs(n, np.arange(n), (np.arange(n) + 1) % n, False)


def gnp(n, p, rng, directed=False):
    a = rng.random((n, n)) < p
    if not directed:
        a = np.triu(a, 1)
    src, dst = np.nonzero(a)
    return Graph.from_arcs(n, src, dst, directed)


def distance_matrix(g):
    """All-pairs distances by Floyd-Warshall (inf for unreachable)."""
    n = g.n
    d = np.full((n, n), np.inf)
    src, dst = g.arcs()
    d[src, dst] = 1
    np.fill_diagonal(d, 0)
    for k in range(n):
        np.minimum(d, d[:, [k]] + d[[k], :], out=d)
    return d


def brute_metrics(g):
    """Measures straight from the sorted list of all n**2 distances."""
    d = distance_matrix(g)
    n = g.n
    flat = np.sort(d.ravel())
    finite = flat[np.isfinite(flat)]
    off = d[~np.eye(n, dtype=bool)]
    recip = np.where(np.isfinite(off), 1.0 / np.where(off == 0, 1, off), 0.0)
    hsum = math.fsum(recip.tolist())
    median = flat[(n * n) // 2]
    return {
        "avg": finite.sum() / len(finite),
        "confidence": len(finite) / n**2,
        "harmonic": (n * (n - 1) / hsum) if hsum > 0 else math.inf,
        "median": median,
        "coverage": (flat <= median).sum() / n**2 if np.isfinite(median) else len(finite) / n**2,
    }


def census(g):
    """P_k from the Floyd-Warshall matrix."""
    d = distance_matrix(g)
    finite = d[np.isfinite(d)].astype(int)
    return np.bincount(finite).tolist()
