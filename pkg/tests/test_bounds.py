import io
import os
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from degsep.bounds import (
    CensusTooLarge,
    InvalidDegreeSequence,
    delta,
    distance_lower_bound,
    load_degree_sequence,
    p_census,
    degree_sequence_bound,
    p3_degree_bound,
    trivial_bound,
)
from degsep.graph import Graph, degree_sequence
from helpers import census, complete, gnp, path, star

FB = dict(n=721_000_000, m=69_000_000_000, D=5000, r=5 * 10**17)


def test_facebook_first_bound():
    res = trivial_bound(**FB)
    assert res.feasible and res.ell_used == 3
    assert res.B == [FB["m"], FB["m"] * FB["D"]]
    assert abs(res.avg_lower_bound - 2.999) <= 0.001


def test_facebook_first_bound_via_lower_bound():
    m, D = FB["m"], FB["D"]
    res = distance_lower_bound(FB["r"], FB["n"], [m, m * D])
    # the uncorrected closed form m + 2mD + 3(r - m - mD), over r
    uncorrected = (m + 2 * m * D + 3 * (FB["r"] - m - m * D)) / FB["r"]
    assert res.avg_lower_bound == pytest.approx(uncorrected - 3 * FB["n"] / FB["r"], rel=1e-15)


def test_lower_bound_everything_at_distance_one():
    res = distance_lower_bound(25, 5, [20])
    assert res.feasible and res.avg_lower_bound == 20 / 25 and res.ell_used == 2


def test_lower_bound_path_of_four():
    res = distance_lower_bound(16, 4, [6])
    assert res.avg_lower_bound == 1.125
    P = p_census(path(4))
    assert P == [4, 6, 4, 2]
    assert sum(k * p for k, p in enumerate(P)) / 16 == 1.25


def test_lower_bound_infeasible_suggests_prefix():
    res = distance_lower_bound(16, 4, [6, 5, 100])
    assert not res.feasible
    assert res.suggested_prefix == 2


def test_lower_bound_rejects_bad_input():
    with pytest.raises(ValueError):
        distance_lower_bound(3, 4, [])
    with pytest.raises(ValueError):
        distance_lower_bound(16, 4, [-1])


def test_trivial_k3():
    res = trivial_bound(n=3, m=6, D=2, r=9)
    assert res.feasible and res.B == [6] and res.ell_used == 2
    assert res.avg_lower_bound == 6 / 9
    P = p_census(complete(3))
    assert P == [3, 6]
    assert res.avg_lower_bound == sum(k * p for k, p in enumerate(P)) / 9


def test_trivial_edgeless():
    res = trivial_bound(n=5, m=0, D=0, r=5)
    assert res.feasible and res.avg_lower_bound == 0


def test_trivial_infeasible():
    res = trivial_bound(n=4, m=12, D=3, r=8)
    assert not res.feasible


def test_delta_examples():
    assert delta([3, 1, 1, 1], 0) == 5
    assert delta([3, 1, 1, 1], 1) == 3
    assert delta([1, 1], 0) == 1
    with pytest.raises(IndexError):
        delta([1, 1], 2)


@pytest.mark.parametrize(
    "seq, expected",
    [
        ([3, 1, 1, 1], 22),
        ([1, 1], 2),
        ([2, 2, 2], 24),
        ([4, 1, 1, 1, 1], 41),
        ([3, 1, 0, 0], 15),  # every prefix sum of delta stays below s
        ([1, 0], 1),  # delta(0) >= s
        ([0, 0, 0], 0),
        ([], 0),
    ],
)
def test_p3_bound_values(seq, expected):
    assert p3_degree_bound(seq) == expected


@pytest.mark.parametrize("seq", [[1, 2], [-1], [3, 1, 1]])
def test_p3_bound_rejects(seq):
    with pytest.raises(InvalidDegreeSequence):
        p3_degree_bound(seq)


def test_census_examples():
    assert p_census(path(4)) == [4, 6, 4, 2]
    assert p_census(complete(3)) == [3, 6]
    assert p_census(star(3)) == [4, 6, 6]
    assert p_census(star(3), k_max=3) == [4, 6, 6, 0]
    assert p_census(path(4), k_max=1) == [4, 6]


def test_census_guard():
    big = Graph.empty(10_001)
    with pytest.raises(CensusTooLarge):
        p_census(big)
    assert p_census(big, allow_large=True) == [10_001]


def test_star_p3_bound_sound():
    assert p_census(star(3), k_max=3)[3] == 0 <= p3_degree_bound(degree_sequence(star(3)))


def _avg(P):
    return sum(k * p for k, p in enumerate(P)) / sum(P)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 30), st.floats(0.0, 0.6), st.integers(0, 2**32 - 1))
def test_p3_bound_soundness(n, p, seed):
    g = gnp(n, p, np.random.default_rng(seed))
    P = p_census(g, k_max=3)
    assert P == (census(g) + [0] * 4)[:4]
    assert P[3] <= p3_degree_bound(degree_sequence(g))


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 30), st.floats(0.0, 0.6), st.booleans(), st.integers(0, 2**32 - 1))
def test_lower_bound_soundness_with_exact_prefixes(n, p, directed, seed):
    g = gnp(n, p, np.random.default_rng(seed), directed)
    P = p_census(g)
    r = sum(P)
    true_avg = _avg(P)
    for L in range(0, len(P) + 1):
        res = distance_lower_bound(r, n, P[1:L + 1])
        assert res.feasible
        assert res.avg_lower_bound <= true_avg + 1e-12


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 30), st.floats(0.05, 0.6), st.integers(0, 2**32 - 1))
def test_degree_sequence_bound_soundness(n, p, seed):
    g = gnp(n, p, np.random.default_rng(seed))
    P = p_census(g)
    res = degree_sequence_bound(degree_sequence(g), sum(P), n)
    assert res.feasible
    assert res.avg_lower_bound <= _avg(P) + 1e-12


@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.integers(0, 50), min_size=1, max_size=5),
    st.integers(0, 4),
    st.integers(0, 20),
    st.integers(0, 300),
)
def test_larger_bounds_never_raise_the_result(B, idx, bump, slack):
    n = 3
    r = n + sum(B) + bump + slack
    base = distance_lower_bound(r, n, B)
    bigger = list(B)
    bigger[idx % len(B)] += bump
    res = distance_lower_bound(r, n, bigger)
    assert base.feasible and res.feasible
    assert res.avg_lower_bound <= base.avg_lower_bound + 1e-12


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 40), min_size=1, max_size=41))
def test_delta_non_increasing(raw):
    n = len(raw)
    seq = sorted((min(d, n - 1) for d in raw), reverse=True)
    deltas = [delta(seq, t) for t in range(n)]
    assert all(a >= b for a, b in zip(deltas, deltas[1:]))


def test_load_degree_sequence():
    assert load_degree_sequence(io.StringIO("# degrees\n1\n3\n\n2\n")) == [3, 2, 1]
    with pytest.raises(InvalidDegreeSequence):
        load_degree_sequence(io.StringIO("1\nx\n"))


FB_DEGREES = Path(os.environ.get("DEGSEP_FB_DEGREES", Path(__file__).parent / "data" / "fb-degrees.txt"))


@pytest.mark.skipif(not FB_DEGREES.exists(), reason="public Facebook degree sequence not available")
def test_facebook_degree_sequence_bound():
    with open(FB_DEGREES) as fh:
        seq = load_degree_sequence(fh)
    res = degree_sequence_bound(seq, 5 * 10**17, len(seq))
    assert res.feasible
    assert abs(res.avg_lower_bound - 3.6) <= 0.05
