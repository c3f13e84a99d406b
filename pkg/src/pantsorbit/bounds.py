"""Constructive distance bounds: certified shift paths into the g-loop orbit.

The pipeline mirrors the recursion behind the diameter bound but runs it
iteratively on the full-size graph.  Each round conceptually cuts off
every pendant loop assembly (iterated loop surgery), finds a shortest
cycle in the stripped graph, maps it back through the recorded
edge-image table, and reduces the image cycle to a fresh loop.  The
image of a stripped-graph edge is a path in the big graph: surgery joins
two edges into one, so the joined edge maps to the pair it came from,
with the removed neighbor vertex sitting between them.  Reducing an
image cycle costs its length minus one shifts, which is where the
per-level girth allowance plus the single extra shift per level comes
from.

Flattening a g-loop graph onto the standard path-core shape works on the
core tree (the graph minus its pendant loop-vertices).  One shift on the
edge between a branching core vertex and the first vertex of one of its
bare legs splits both ends across two new vertices, shortening the leg
by one unit; the sum over branching vertices of their shortest leg
lengths is at most g - 5, which gives the flatten allowance.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

from .errors import (
    BadGenusError,
    BadParametersError,
    BoundViolation,
    GenusTooSmallError,
    LiftInvariantViolation,
    NoLoopError,
    WrongLoopCountError,
)
from .graphs import (
    Cycle,
    TrivalentGraph,
    canonical_form,
    canonical_labeling,
    girth,
    loop_count,
    make_oloops,
)
from .shifts import ShiftMove, ShiftPath, apply_shift, shorten_cycle

__all__ = [
    "SurgeryRecord",
    "BoundCertificate",
    "theorem1_bound",
    "pull_bound",
    "flatten_bound",
    "make_loop",
    "loop_surgery",
    "pull_all_loops",
    "flatten_to_oloops",
    "path_to_oloops",
]


def theorem1_bound(genus: int) -> float:
    """Upper bound on the orbit-graph diameter, logs base 2."""
    if genus < 2:
        raise BadGenusError(f"genus {genus} below 2")
    log_term = 4.0 * math.log2(math.factorial(genus - 1))
    if genus <= 5:
        return log_term + 4 * genus - 6
    return log_term + 6 * genus - 16


def pull_bound(genus: int) -> float:
    """Allowance for reaching a g-loop graph: 2g - 3 + 2 log2((g-1)!)."""
    if genus < 2:
        raise BadGenusError(f"genus {genus} below 2")
    return 2 * genus - 3 + 2.0 * math.log2(math.factorial(genus - 1))


def flatten_bound(genus: int) -> float:
    """Allowance for reshaping a g-loop graph onto the path core: max(0, g-5)."""
    if genus < 2:
        raise BadGenusError(f"genus {genus} below 2")
    return float(max(0, genus - 5))


@dataclass(frozen=True)
class SurgeryRecord:
    """What one loop surgery removed and what it joined.

    Vertex indices refer to the input graph; ``joined_edge_id`` is the
    fresh edge of the output graph, made from the far halves of
    ``joined_from`` (the removed neighbor's other two edges).
    """

    loop_edge_id: int
    loop_vertex: int
    bridge_edge_id: int
    removed_vertex: int
    joined_edge_id: int
    joined_from: tuple[int, int]


@dataclass(frozen=True)
class BoundCertificate:
    """A shift path together with the bound it witnesses."""

    path: ShiftPath
    claimed_bound: float
    stage_lengths: dict[str, int]

    def __len__(self) -> int:
        return len(self.path)

    def validate(self) -> TrivalentGraph:
        """Replay with full checks; enforce the length and stage accounting."""
        end = self.path.validate()
        if len(self.path) > self.claimed_bound:
            raise BoundViolation(
                f"path length {len(self.path)} exceeds bound {self.claimed_bound}"
            )
        if sum(self.stage_lengths.values()) != len(self.path):
            raise BoundViolation("stage lengths do not add up to the path length")
        return end

    def to_json(self) -> str:
        return json.dumps(
            {
                "stage_lengths": self.stage_lengths,
                "bound": self.claimed_bound,
                "path": json.loads(self.path.to_json()),
            },
            separators=(",", ":"),
        )


def make_loop(g: TrivalentGraph) -> tuple[TrivalentGraph, ShiftPath]:
    """Reach a loop-bearing graph in girth - 1 shifts (0 if one exists)."""
    if loop_count(g) > 0:
        return g, ShiftPath(g, ())
    _, cycle = girth(g)
    cur = g
    moves: list[ShiftMove] = []
    while len(cycle) > 1:
        cur, cycle, mv = shorten_cycle(cur, cycle)
        moves.append(mv)
    return cur, ShiftPath(g, tuple(moves))


def _min_canonical_loop(g: TrivalentGraph, candidates: list[int]) -> int:
    pos = canonical_labeling(g)
    return min(candidates, key=lambda e: (pos[g.endpoints(e)[0]], e))


def loop_surgery(
    g: TrivalentGraph, loop_edge: Optional[int] = None
) -> tuple[TrivalentGraph, SurgeryRecord]:
    """Cut off a pendant loop assembly, joining the neighbor's loose halves.

    Removes the loop, its vertex, the bridge edge, and the bridge's other
    vertex; the latter's two remaining edges fuse into one fresh edge
    (a loop if they were parallel).  By default the loop whose vertex has
    the smallest canonical index is removed.
    """
    if g.genus < 3:
        raise GenusTooSmallError("loop surgery is undefined at genus 2")
    loops = g.loop_ids()
    if not loops:
        raise NoLoopError("graph has no loop")
    if loop_edge is None:
        loop_edge = _min_canonical_loop(g, loops)
    elif loop_edge not in loops:
        raise NoLoopError(f"edge {loop_edge} is not a loop")
    u = g.endpoints(loop_edge)[0]
    bridge = next(e for e in g.edges_at(u) if e != loop_edge)
    ends = g.endpoints(bridge)
    c = ends[0] if ends[1] == u else ends[1]
    # A genus >= 3 graph cannot have a loop at the neighbor as well: that
    # closed two-vertex piece would be the whole (connected) graph.
    side_a, side_b = sorted(e for e in g.edges_at(c) if e != bridge)
    far = {}
    for side in (side_a, side_b):
        x, y = g.endpoints(side)
        far[side] = y if x == c else x

    fresh = g.next_edge_id
    dropped = {u, c}
    new_index = {}
    for v in range(g.vertex_count):
        if v not in dropped:
            new_index[v] = len(new_index)
    triples = []
    for eid, a, b in g.edge_pairs():
        if eid in (loop_edge, bridge, side_a, side_b):
            continue
        triples.append((eid, new_index[a], new_index[b]))
    triples.append((fresh, new_index[far[side_a]], new_index[far[side_b]]))
    triples.sort()
    smaller = _build_from_triples(g.vertex_count - 2, triples, fresh + 1)
    record = SurgeryRecord(
        loop_edge_id=loop_edge,
        loop_vertex=u,
        bridge_edge_id=bridge,
        removed_vertex=c,
        joined_edge_id=fresh,
        joined_from=(side_a, side_b),
    )
    return smaller, record


def _build_from_triples(n: int, triples, next_id: int) -> TrivalentGraph:
    from .graphs import _build

    return _build(n, triples, next_id)


def _recover_cycle(g: TrivalentGraph, edge_ids: set[int]) -> Cycle:
    """Order a vertex-simple set of edges into a closed walk."""
    if len(edge_ids) == 1:
        return Cycle((next(iter(edge_ids)),))
    at_vertex: dict[int, list[int]] = {}
    for eid in edge_ids:
        a, b = g.endpoints(eid)
        at_vertex.setdefault(a, []).append(eid)
        at_vertex.setdefault(b, []).append(eid)
    if any(len(v) != 2 for v in at_vertex.values()):
        raise LiftInvariantViolation("image edges do not form a simple cycle")
    start = min(edge_ids)
    walk = [start]
    cur = g.endpoints(start)[1]
    prev = start
    while len(walk) < len(edge_ids):
        nxt = next(e for e in at_vertex[cur] if e != prev)
        walk.append(nxt)
        a, b = g.endpoints(nxt)
        cur = b if a == cur else a
        prev = nxt
    cycle = Cycle(tuple(walk))
    from .graphs import trace_cycle

    trace_cycle(g, cycle)
    return cycle


def pull_all_loops(g: TrivalentGraph, genus: Optional[int] = None) -> BoundCertificate:
    """Certified path to a graph with exactly g loops.

    Each round strips every pendant loop assembly by iterated surgery
    while keeping an edge-image table, then reduces the image of either
    the stripped graph's girth cycle (no loops left downstairs) or of a
    stripped loop whose image upstairs is subdivided by removed-assembly
    vertices.  Every round adds exactly one loop.
    """
    if genus is None:
        genus = g.genus
    elif genus != g.genus:
        raise BadParametersError(f"graph has genus {g.genus}, not {genus}")
    big = g
    moves: list[ShiftMove] = []
    stages: dict[str, int] = {}

    while loop_count(big) < genus:
        small = big
        image: dict[int, tuple[int, ...]] = {e: (e,) for e in big.edge_id_list()}
        # Strip assemblies whose loop is an honest loop upstairs; loops whose
        # image is already subdivided are exactly the ones a lift must repair.
        while small.genus >= 3:
            plain = [e for e in small.loop_ids() if len(image[e]) == 1]
            if not plain:
                break
            chosen = _min_canonical_loop(small, plain)
            small, rec = loop_surgery(small, loop_edge=chosen)
            image[rec.joined_edge_id] = (
                image.pop(rec.joined_from[0]) + image.pop(rec.joined_from[1])
            )
            del image[rec.loop_edge_id]
            del image[rec.bridge_edge_id]

        subdivided = [e for e in small.loop_ids() if len(image[e]) > 1]
        if subdivided:
            cycle_ids = (min(subdivided),)
            level = small.genus
        elif loop_count(small) == 0:
            _, witness = girth(small)
            cycle_ids = witness.edge_ids
            level = small.genus
        else:
            raise LiftInvariantViolation(
                "missing loops upstairs but nothing left to reduce"
            )
        image_edges = {b for e in cycle_ids for b in image[e]}
        cycle = _recover_cycle(big, image_edges)
        before = loop_count(big)
        key = f"genus{level}"
        while len(cycle) > 1:
            big, cycle, mv = shorten_cycle(big, cycle)
            moves.append(mv)
            stages[key] = stages.get(key, 0) + 1
        # The reduced edge becomes a loop; side halves grouped together can
        # turn further edges into loops at the same time, never destroy one.
        if loop_count(big) <= before:
            raise LiftInvariantViolation(
                f"round at level {level} did not add a loop"
            )

    bound = pull_bound(genus)
    if len(moves) > bound:
        raise BoundViolation(
            f"loop pulling took {len(moves)} shifts, above {bound:.3f}"
        )
    return BoundCertificate(ShiftPath(g, tuple(moves)), bound, stages)


# -- flattening ----------------------------------------------------------------


def _core_tree(g: TrivalentGraph) -> tuple[list[int], dict[int, dict[int, int]]]:
    """Core vertices (no loop) and their adjacency via non-loop edges."""
    loop_vertices = {g.endpoints(e)[0] for e in g.loop_ids()}
    core = [v for v in range(g.vertex_count) if v not in loop_vertices]
    core_set = set(core)
    adj: dict[int, dict[int, int]] = {v: {} for v in core}
    for eid, a, b in g.edge_pairs():
        if a != b and a in core_set and b in core_set:
            adj[a][b] = eid
            adj[b][a] = eid
    return core, adj


def _bare_direction(
    adj: dict[int, dict[int, int]], branch: set[int], c: int, w: int
) -> Optional[list[int]]:
    """Core vertices from w outward if the direction never branches."""
    path = [w]
    prev, cur = c, w
    while True:
        if cur in branch:
            return None
        ahead = [u for u in adj[cur] if u != prev]
        if not ahead:
            return path
        if len(ahead) > 1:
            return None  # unreachable: cur would be in branch
        prev, cur = cur, ahead[0]
        path.append(cur)


def flatten_to_oloops(
    g: TrivalentGraph, genus: Optional[int] = None
) -> BoundCertificate:
    """Certified path from a g-loop graph to the standard path-core shape.

    Each shift acts on the edge between a branching core vertex and the
    first vertex of its shortest bare leg, absorbing one leg unit into
    the spine.  Hard-stops if the allowance max(0, g - 5) is exhausted,
    which would indicate a bug rather than a long input.
    """
    if genus is None:
        genus = g.genus
    elif genus != g.genus:
        raise BadParametersError(f"graph has genus {g.genus}, not {genus}")
    if loop_count(g) != genus:
        raise WrongLoopCountError(
            f"expected {genus} loops, found {loop_count(g)}"
        )
    target = canonical_form(make_oloops(genus))
    bound = flatten_bound(genus)
    big = g
    moves: list[ShiftMove] = []
    while canonical_form(big) != target:
        if len(moves) >= bound + 1:
            raise BoundViolation(
                f"flatten did not finish within {bound:.0f} shifts"
            )
        core, adj = _core_tree(big)
        branch = {v for v in core if len(adj[v]) == 3}
        step: Optional[tuple[int, int, int]] = None  # (leg length, c, x)
        for c in sorted(branch):
            legs = []
            for w in sorted(adj[c]):
                path = _bare_direction(adj, branch, c, w)
                if path is not None:
                    legs.append((len(path), w))
            if len(legs) >= 2:
                length, w = min(legs)
                if step is None or (length, c) < (step[0], step[1]):
                    step = (length, c, w)
        if step is None:
            raise LiftInvariantViolation("no branching vertex with two bare legs")
        _, c, x = step
        move = ShiftMove(adj[c][x], 0)
        nxt = apply_shift(big, move)
        if loop_count(nxt) != genus:
            raise LiftInvariantViolation("flatten shift changed the loop count")
        big = nxt
        moves.append(move)
    stages = {"flatten": len(moves)} if moves else {}
    return BoundCertificate(ShiftPath(g, tuple(moves)), bound, stages)


def path_to_oloops(g: TrivalentGraph, genus: Optional[int] = None) -> BoundCertificate:
    """Loop pulling followed by flattening; ends isomorphic to the g-loop hub."""
    if genus is None:
        genus = g.genus
    elif genus != g.genus:
        raise BadParametersError(f"graph has genus {g.genus}, not {genus}")
    pulled = pull_all_loops(g, genus)
    flattened = flatten_to_oloops(pulled.path.end(), genus)
    stages = dict(pulled.stage_lengths)
    for key, value in flattened.stage_lengths.items():
        stages[key] = stages.get(key, 0) + value
    cert = BoundCertificate(
        ShiftPath(g, pulled.path.moves + flattened.path.moves),
        pull_bound(genus) + flatten_bound(genus),
        stages,
    )
    end = cert.path.end()
    if canonical_form(end) != canonical_form(make_oloops(genus)):
        raise LiftInvariantViolation("composed path does not reach the g-loop hub")
    return cert
