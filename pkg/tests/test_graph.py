import io

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from degsep.graph import (
    Graph,
    GraphParseError,
    NodeRangeError,
    degree_sequence,
    load_edge_list,
    remove_nodes,
    write_edge_list,
)
from helpers import distance_matrix, path, star


def load(text, directed=False):
    return load_edge_list(io.StringIO(text), directed)


def test_path_of_three():
    g = load("0 1\n1 2\n")
    assert (g.n, g.m) == (3, 4)
    assert g.adjacency_lists() == [[1], [0, 2], [1]]


def test_empty_input():
    g = load("")
    assert (g.n, g.m) == (0, 0)
    assert degree_sequence(g) == []


def test_dedup_and_symmetrize():
    g = load("0 1\n0 1\n1 0\n")
    assert g.m == 2
    assert load(_dump(g)) == g


def test_comments_crlf_and_self_loops():
    g = load("# header\r\n0 0\r\n0 2\r\n\r\n")
    assert g.n == 3
    assert g.adjacency_lists() == [[2], [], [0]]


def test_directed_keeps_orientation():
    g = load("0 1\n1 2\n", directed=True)
    assert g.m == 2
    assert g.adjacency_lists() == [[1], [2], []]
    assert g.in_degrees().tolist() == [0, 1, 1]
    assert g.transpose().adjacency_lists() == [[], [0], [1]]


@pytest.mark.parametrize("text, lineno", [("0 1\nx 2\n", 2), ("0\n", 1), ("0 1 2\n", 1), ("1 -1\n", 1)])
def test_parse_errors_report_line(text, lineno):
    with pytest.raises(GraphParseError) as info:
        load(text)
    assert info.value.lineno == lineno


def test_id_overflow():
    with pytest.raises(NodeRangeError):
        load("0 4294967296\n")


def test_degree_sequences():
    assert degree_sequence(star(3)) == [3, 1, 1, 1]
    assert degree_sequence(path(3)) == [2, 1, 1]


def test_remove_star_center():
    sub, remap = remove_nodes(star(3), [0])
    assert (sub.n, sub.m) == (3, 0)
    assert remap.tolist() == [-1, 0, 1, 2]


def test_remove_nothing_is_identity():
    g = star(4)
    sub, remap = remove_nodes(g, [])
    assert sub == g
    assert remap.tolist() == list(range(g.n))


def test_remove_path_middle():
    sub, _ = remove_nodes(path(3), {1})
    assert (sub.n, sub.m) == (2, 0)


def test_remove_out_of_range():
    with pytest.raises(NodeRangeError):
        remove_nodes(path(3), [3])


def test_graph_is_read_only():
    g = path(3)
    with pytest.raises(ValueError):
        g.indices[0] = 2


def _dump(g):
    buf = io.StringIO()
    write_edge_list(g, buf)
    return buf.getvalue()


arc_lists = st.integers(0, 25).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.tuples(st.integers(0, max(n - 1, 0)), st.integers(0, max(n - 1, 0))), max_size=80)
        if n else st.just([]),
        st.booleans(),
    )
)


@settings(max_examples=150, deadline=None)
@given(arc_lists)
def test_invariants_and_round_trip(case):
    n, arcs, directed = case
    src = [a for a, _ in arcs]
    dst = [b for _, b in arcs]
    g = Graph.from_arcs(n, src, dst, directed)
    adj = g.adjacency_lists()
    for u, nbrs in enumerate(adj):
        assert all(0 <= v < n for v in nbrs)
        assert all(a < b for a, b in zip(nbrs, nbrs[1:]))
        assert u not in nbrs
        if not directed:
            assert all(u in adj[v] for v in nbrs)
    assert g.m == sum(map(len, adj))
    assert sum(degree_sequence(g)) == g.m
    assert load(_dump(g), directed) == g


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 30), st.floats(0.05, 0.5), st.booleans(), st.integers(0, 2**32 - 1), st.data())
def test_removal_never_shortens_distances(n, p, directed, seed, data):
    rng = np.random.default_rng(seed)
    a = rng.random((n, n)) < p
    g = Graph.from_arcs(n, *np.nonzero(a), directed)
    victims = data.draw(st.sets(st.integers(0, n - 1), max_size=n - 1))
    sub, remap = remove_nodes(g, victims)
    assert sub.m <= g.m
    before = distance_matrix(g)
    after = distance_matrix(sub)
    keep = np.flatnonzero(remap >= 0)
    assert np.all(after >= before[np.ix_(keep, keep)])
