"""Immutable CSR graphs over dense integer node ids."""

from __future__ import annotations

import re
from typing import Iterable, TextIO

import numpy as np

# Node ids are stored as int32; n must fit as well.
MAX_NODE_ID = np.iinfo(np.int32).max - 1

_NODES_DIRECTIVE = re.compile(r"#\s*nodes\s+(\d+)\s*$")


class GraphParseError(ValueError):
    """Malformed edge-list input."""

    def __init__(self, lineno: int, line: str, reason: str = "expected two nonnegative integers"):
        super().__init__(f"line {lineno}: {reason}: {line.strip()!r}")
        self.lineno = lineno


class NodeRangeError(ValueError):
    pass


class Graph:
    """Directed or symmetric graph in compressed sparse row form.

    ``indptr`` has length ``n + 1`` and ``indices[indptr[u]:indptr[u+1]]`` is
    the strictly increasing out-neighbor list of ``u``. Both arrays are
    read-only. For a symmetric graph every edge is stored as two arcs.
    """

    __slots__ = ("indptr", "indices", "directed", "_transpose")

    def __init__(self, indptr: np.ndarray, indices: np.ndarray, directed: bool):
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=np.int32)
        self.indptr.flags.writeable = False
        self.indices.flags.writeable = False
        self.directed = bool(directed)
        self._transpose: Graph | None = None

    @classmethod
    def from_arcs(cls, n: int, src, dst, directed: bool) -> "Graph":
        """Build a graph from parallel arc arrays.

        Self-loops are dropped, duplicates merged, and for ``directed=False``
        the arc set is symmetrized.
        """
        src = np.asarray(src, dtype=np.int64).ravel()
        dst = np.asarray(dst, dtype=np.int64).ravel()
        if src.shape != dst.shape:
            raise ValueError("src and dst must have the same length")
        if n < 0:
            raise ValueError("n must be nonnegative")
        if src.size and (min(src.min(), dst.min()) < 0 or max(src.max(), dst.max()) >= n):
            raise NodeRangeError(f"arc endpoint outside [0, {n})")
        keep = src != dst
        src, dst = src[keep], dst[keep]
        if not directed:
            src, dst = np.concatenate([src, dst]), np.concatenate([dst, src])
        keys = np.unique(src * max(n, 1) + dst)
        src, dst = np.divmod(keys, max(n, 1))
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return cls(indptr, dst, directed)

    @classmethod
    def empty(cls, n: int, directed: bool = False) -> "Graph":
        return cls(np.zeros(n + 1, dtype=np.int64), np.zeros(0, dtype=np.int32), directed)

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def m(self) -> int:
        """Number of arcs (twice the edge count for symmetric graphs)."""
        return len(self.indices)

    def neighbors(self, u: int) -> np.ndarray:
        return self.indices[self.indptr[u]:self.indptr[u + 1]]

    def out_degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def in_degrees(self) -> np.ndarray:
        if not self.directed:
            return self.out_degrees()
        return np.bincount(self.indices, minlength=self.n).astype(np.int64)

    @property
    def max_degree(self) -> int:
        return int(self.out_degrees().max()) if self.n else 0

    def arcs(self) -> tuple[np.ndarray, np.ndarray]:
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.out_degrees())
        return src, self.indices.astype(np.int64)

    def transpose(self) -> "Graph":
        """Graph with every arc reversed (the graph itself when symmetric)."""
        if not self.directed:
            return self
        if self._transpose is None:
            src, dst = self.arcs()
            self._transpose = Graph.from_arcs(self.n, dst, src, directed=True)
        return self._transpose

    def adjacency_lists(self) -> list[list[int]]:
        return [self.neighbors(u).tolist() for u in range(self.n)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.directed == other.directed
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )

    def __hash__(self):
        return hash((self.directed, self.n, self.m, self.indices[:64].tobytes()))

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "symmetric"
        return f"Graph(n={self.n}, m={self.m}, {kind})"


def load_edge_list(stream: Iterable[str], directed: bool = False) -> Graph:
    """Parse whitespace-separated ``src dst`` lines into a :class:`Graph`.

    Lines starting with ``#`` are comments. The one comment recognized is
    ``# nodes N``, which raises the node count to at least ``N`` so that
    trailing isolated nodes survive a write/read round trip. Otherwise ``n``
    is one more than the largest id seen.
    """
    src: list[int] = []
    dst: list[int] = []
    n = 0
    for lineno, line in enumerate(stream, start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            match = _NODES_DIRECTIVE.match(stripped)
            if match:
                declared = int(match.group(1))
                if declared > MAX_NODE_ID + 1:
                    raise NodeRangeError(f"line {lineno}: node count {declared} too large")
                n = max(n, declared)
            continue
        tokens = stripped.split()
        if len(tokens) != 2 or not all(t.isdigit() for t in tokens):
            raise GraphParseError(lineno, line)
        u, v = int(tokens[0]), int(tokens[1])
        if u > MAX_NODE_ID or v > MAX_NODE_ID:
            raise NodeRangeError(f"line {lineno}: node id exceeds {MAX_NODE_ID}")
        src.append(u)
        dst.append(v)
        n = max(n, u + 1, v + 1)
    return Graph.from_arcs(n, src, dst, directed)


def read_edge_list(path, directed: bool = False) -> Graph:
    with open(path, "r", encoding="ascii", newline=None) as fh:
        return load_edge_list(fh, directed)


def write_edge_list(g: Graph, stream: TextIO) -> None:
    """Write ``g`` in the format read by :func:`load_edge_list`.

    Symmetric graphs emit each edge once, as ``u v`` with ``u < v``.
    """
    stream.write(f"# nodes {g.n}\n")
    src, dst = g.arcs()
    if not g.directed:
        keep = src < dst
        src, dst = src[keep], dst[keep]
    for u, v in zip(src.tolist(), dst.tolist()):
        stream.write(f"{u} {v}\n")


def degree_sequence(g: Graph) -> list[int]:
    """Out-degrees sorted in non-increasing order."""
    return sorted(g.out_degrees().tolist(), reverse=True)


def remove_nodes(g: Graph, victims) -> tuple[Graph, np.ndarray]:
    """Induced subgraph on the nodes not in ``victims``.

    Returns the subgraph and an array ``remap`` of length ``g.n`` where
    ``remap[old]`` is the compact new id, or -1 for removed nodes. Surviving
    nodes keep their relative order.
    """
    victims = np.asarray(list(victims), dtype=np.int64)
    if victims.size and (victims.min() < 0 or victims.max() >= g.n):
        raise NodeRangeError(f"victim id outside [0, {g.n})")
    alive = np.ones(g.n, dtype=bool)
    alive[victims] = False
    remap = np.full(g.n, -1, dtype=np.int64)
    remap[alive] = np.arange(int(alive.sum()))
    src, dst = g.arcs()
    keep = alive[src] & alive[dst]
    sub = Graph.from_arcs(int(alive.sum()), remap[src[keep]], remap[dst[keep]], g.directed)
    return sub, remap
