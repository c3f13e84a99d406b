"""Core graph type: construction, girth, canonical forms, serialization."""

from __future__ import annotations

import itertools
import random
from collections import Counter, deque

import pytest

from pantsorbit import (
    BadGenusError,
    DisconnectedError,
    NotTrivalentError,
    ParseError,
    TrivalentGraph,
    canonical_form,
    from_edge_list,
    girth,
    is_isomorphic,
    loop_count,
    make_oloops,
    parse,
    permutation_isomorphic,
    serialize,
    to_dot,
    trace_cycle,
)


# ------------------------------------------------------------------
# independent oracles
# ------------------------------------------------------------------

def brute_girth(g: TrivalentGraph) -> int:
    """Minimum size of an edge subset forming a vertex-simple cycle."""
    ids = g.edge_id_list()
    for size in range(1, len(ids) + 1):
        for combo in itertools.combinations(ids, size):
            if _is_cycle_set(g, combo):
                return size
    raise AssertionError("trivalent graph without a cycle")


def _is_cycle_set(g: TrivalentGraph, combo) -> bool:
    degree: Counter = Counter()
    adjacency: dict[int, list[int]] = {}
    for eid in combo:
        u, v = g.endpoints(eid)
        degree[u] += 2 if u == v else 1
        if u != v:
            degree[v] += 1
        adjacency.setdefault(u, []).append(v)
        adjacency.setdefault(v, []).append(u)
    if any(d != 2 for d in degree.values()):
        return False
    touched = set(degree)
    start = next(iter(touched))
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in adjacency[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen == touched


def relabeled(g: TrivalentGraph, rng: random.Random) -> TrivalentGraph:
    """Copy under a random vertex permutation, edge shuffle, and flips."""
    perm = list(range(g.vertex_count))
    rng.shuffle(perm)
    edges = []
    for _, u, v in g.edge_pairs():
        pair = (perm[u], perm[v])
        edges.append(pair if rng.random() < 0.5 else pair[::-1])
    rng.shuffle(edges)
    return from_edge_list(g.vertex_count, edges)


# ------------------------------------------------------------------
# construction and validation
# ------------------------------------------------------------------

def test_dumbbell_and_theta(dumbbell, theta):
    assert dumbbell.genus == 2 and theta.genus == 2
    assert loop_count(dumbbell) == 2
    assert loop_count(theta) == 0
    assert dumbbell.edge_count == 3 and theta.edge_count == 3


def test_not_trivalent():
    with pytest.raises(NotTrivalentError):
        from_edge_list(2, [(0, 0), (0, 1)])
    with pytest.raises(NotTrivalentError):
        from_edge_list(2, [(0, 0), (0, 1), (0, 1)])


def test_bad_genus():
    with pytest.raises(BadGenusError):
        from_edge_list(3, [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(BadGenusError):
        from_edge_list(0, [])
    with pytest.raises(BadGenusError):
        make_oloops(1)


def test_disconnected():
    with pytest.raises(DisconnectedError):
        from_edge_list(4, [(0, 0), (0, 1), (1, 1), (2, 2), (2, 3), (3, 3)])


def test_handshake_over_small_graphs(atlas_for):
    for genus in (2, 3, 4):
        for rep in atlas_for(genus).representatives:
            assert 3 * rep.vertex_count == 2 * rep.edge_count
            assert rep.vertex_count == 2 * genus - 2
            assert rep.edge_count == 3 * genus - 3


# ------------------------------------------------------------------
# girth
# ------------------------------------------------------------------

def test_girth_examples(dumbbell, theta, k4):
    length, witness = girth(dumbbell)
    assert length == 1 and dumbbell.is_loop(witness.edge_ids[0])
    length, witness = girth(theta)
    assert length == 2 and len(witness) == 2
    length, witness = girth(k4)
    assert length == 3
    assert brute_girth(k4) == 3


def test_girth_witness_traces(atlas_for):
    for genus in (2, 3, 4):
        for rep in atlas_for(genus).representatives:
            length, witness = girth(rep)
            assert len(witness) == length
            trace_cycle(rep, witness)
            assert length == brute_girth(rep)


def test_girth_one_iff_loop(atlas_for):
    for genus in (2, 3, 4, 5):
        for rep in atlas_for(genus).representatives:
            assert (girth(rep)[0] == 1) == (loop_count(rep) > 0)


# ------------------------------------------------------------------
# canonical form / isomorphism
# ------------------------------------------------------------------

def test_relabeling_invariance(theta):
    swapped = from_edge_list(2, [(1, 0), (1, 0), (1, 0)])
    assert canonical_form(theta) == canonical_form(swapped)


def test_non_isomorphic(theta, dumbbell):
    assert canonical_form(theta) != canonical_form(dumbbell)
    assert not is_isomorphic(theta, dumbbell)
    assert is_isomorphic(theta, theta)


def test_random_relabelings_genus4(atlas_for):
    rng = random.Random(40)
    for rep in atlas_for(4).representatives:
        form = canonical_form(rep)
        for _ in range(100):
            assert canonical_form(relabeled(rep, rng)) == form


def test_permutation_oracle_agrees(theta, dumbbell, k4):
    assert permutation_isomorphic(theta, theta)
    assert not permutation_isomorphic(theta, dumbbell)
    rng = random.Random(7)
    assert permutation_isomorphic(k4, relabeled(k4, rng))


def test_oloops5_unique_5_loop_class(atlas_for):
    five = [r for r in atlas_for(5).representatives if loop_count(r) == 5]
    assert len(five) == 1
    assert is_isomorphic(five[0], make_oloops(5))


# ------------------------------------------------------------------
# the standard g-loop graph
# ------------------------------------------------------------------

def test_make_oloops_base(dumbbell):
    assert is_isomorphic(make_oloops(2), dumbbell)


def test_make_oloops_3_unique(atlas_for):
    built = make_oloops(3)
    assert built.vertex_count == 4 and loop_count(built) == 3
    three_loops = [r for r in atlas_for(3).representatives if loop_count(r) == 3]
    assert len(three_loops) == 1
    assert is_isomorphic(built, three_loops[0])


def test_make_oloops_6():
    g = make_oloops(6)
    assert g.vertex_count == 10
    assert loop_count(g) == 6
    # the loop-free core must be a path on 4 vertices
    loop_vertices = {g.endpoints(e)[0] for e in g.loop_ids()}
    core = [v for v in range(10) if v not in loop_vertices]
    assert len(core) == 4
    degs = sorted(
        sum(
            1
            for _, a, b in g.edge_pairs()
            if a != b and v in (a, b) and a in core and b in core
        )
        for v in core
    )
    assert degs == [1, 1, 2, 2]


def test_loop_count_examples(dumbbell, theta):
    assert loop_count(dumbbell) == 2
    assert loop_count(theta) == 0
    assert loop_count(make_oloops(6)) == 6


# ------------------------------------------------------------------
# serialization
# ------------------------------------------------------------------

def test_round_trip(theta, dumbbell, k4):
    for g in (theta, dumbbell, k4, make_oloops(5)):
        assert is_isomorphic(parse(serialize(g)), g)


def test_parse_dumbbell_literal(dumbbell):
    g = parse('{"vertices":2,"edges":[[0,0],[0,1],[1,1]]}')
    assert is_isomorphic(g, dumbbell)


@pytest.mark.parametrize(
    "text",
    [
        "{nope",
        "[]",
        '{"vertices":2}',
        '{"vertices":2,"edges":[[0,1],[0,1],[0,1]],"x":1}',
        '{"vertices":"2","edges":[]}',
        '{"vertices":2,"edges":[[0,1,2]]}',
        '{"vertices":2,"edges":[[0,5],[0,1],[0,1]]}',
    ],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text)


def test_serialize_deterministic(theta):
    assert serialize(theta) == serialize(parse(serialize(theta)))


def test_to_dot(theta, dumbbell):
    assert to_dot(theta).count("0 -- 1;") == 3
    assert to_dot(dumbbell).count("--") == 3
    assert to_dot(dumbbell).count("0 -- 0;") == 1
