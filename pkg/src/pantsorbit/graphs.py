"""Trivalent multigraphs with loops: construction, girth, canonical forms.

A pants decomposition of a closed genus-g surface cuts it into 2g-2 pairs
of pants along 3g-3 curves; the combinatorial shadow is a connected
3-regular multigraph on 2g-2 vertices in which loops are allowed and a
loop counts 2 toward the valence of its vertex.

Half-edge layout: vertex v owns half-edge slots 3v, 3v+1, 3v+2.  The
graph is a fixed-point-free involution ``partner`` on the slots plus a
stable edge id per partner pair.  Edge ids survive every operation that
does not destroy the edge, which is what lets shift paths and surgery
records refer to edges unambiguously.
"""

from __future__ import annotations

import json
import struct
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import (
    BadGenusError,
    BadParametersError,
    DisconnectedError,
    NotTrivalentError,
    ParseError,
)

__all__ = [
    "TrivalentGraph",
    "CanonicalForm",
    "Cycle",
    "from_edge_list",
    "girth",
    "canonical_form",
    "canonical_labeling",
    "canonical_key",
    "is_isomorphic",
    "permutation_isomorphic",
    "make_oloops",
    "loop_count",
    "serialize",
    "parse",
    "to_dot",
    "trace_cycle",
]


@dataclass(frozen=True)
class CanonicalForm:
    """Label-independent byte key; equal keys mean isomorphic multigraphs."""

    key: bytes

    def hex(self) -> str:
        return self.key.hex()

    @classmethod
    def from_hex(cls, text: str) -> "CanonicalForm":
        return cls(bytes.fromhex(text))


@dataclass(frozen=True)
class Cycle:
    """Closed walk given as an ordered tuple of edge ids, no edge repeated.

    A loop is a cycle of length 1; a parallel-edge pair a cycle of length 2.
    """

    edge_ids: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edge_ids)

    def __iter__(self) -> Iterator[int]:
        return iter(self.edge_ids)


class TrivalentGraph:
    """Immutable connected 3-regular multigraph on 2g-2 vertices.

    Do not call the constructor directly; use :func:`from_edge_list`,
    :func:`parse`, or :func:`make_oloops`.
    """

    __slots__ = ("partner", "edge_ids", "next_edge_id", "_edge_map", "_form")

    def __init__(
        self,
        partner: tuple[int, ...],
        edge_ids: tuple[int, ...],
        next_edge_id: int,
        _validate: bool = True,
    ):
        self.partner = partner
        self.edge_ids = edge_ids
        self.next_edge_id = next_edge_id
        edge_map: dict[int, tuple[int, int]] = {}
        for h, p in enumerate(partner):
            if h < p:
                edge_map[edge_ids[h]] = (h, p)
        self._edge_map = edge_map
        self._form: Optional[CanonicalForm] = None
        if _validate:
            self._check()

    # -- structural queries -------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return len(self.partner) // 3

    @property
    def genus(self) -> int:
        return self.vertex_count // 2 + 1

    @property
    def edge_count(self) -> int:
        return len(self._edge_map)

    def slots(self, v: int) -> tuple[int, int, int]:
        return (3 * v, 3 * v + 1, 3 * v + 2)

    def owner(self, half: int) -> int:
        return half // 3

    def half_edges(self) -> list[tuple[int, int]]:
        """(owner vertex, partner slot) per half-edge, in slot order."""
        return [(h // 3, p) for h, p in enumerate(self.partner)]

    def edge_slots(self, edge_id: int) -> tuple[int, int]:
        """The two half-edge slots of an edge, lower slot first."""
        try:
            return self._edge_map[edge_id]
        except KeyError:
            raise BadParametersError(f"no edge with id {edge_id}") from None

    def endpoints(self, edge_id: int) -> tuple[int, int]:
        a, b = self.edge_slots(edge_id)
        return (a // 3, b // 3)

    def is_loop(self, edge_id: int) -> bool:
        a, b = self.edge_slots(edge_id)
        return a // 3 == b // 3

    def edge_id_list(self) -> list[int]:
        return sorted(self._edge_map)

    def loop_ids(self) -> list[int]:
        return sorted(e for e in self._edge_map if self.is_loop(e))

    def edges_at(self, v: int) -> list[int]:
        """Edge ids incident to v, loops listed twice, in slot order."""
        return [self.edge_ids[h] for h in self.slots(v)]

    def neighbors_of(self, v: int) -> list[int]:
        return [self.partner[h] // 3 for h in self.slots(v)]

    def edge_pairs(self) -> list[tuple[int, int, int]]:
        """(edge id, u, v) with u <= v, sorted by edge id."""
        out = []
        for eid in sorted(self._edge_map):
            u, v = self.endpoints(eid)
            out.append((eid, min(u, v), max(u, v)))
        return out

    def parallel_classes(self) -> dict[tuple[int, int], list[int]]:
        """Non-loop edges grouped by endpoint pair, ids ascending."""
        classes: dict[tuple[int, int], list[int]] = {}
        for eid, u, v in self.edge_pairs():
            if u != v:
                classes.setdefault((u, v), []).append(eid)
        return classes

    # -- validation ---------------------------------------------------------

    def _check(self) -> None:
        n3 = len(self.partner)
        if n3 % 3 != 0 or len(self.edge_ids) != n3:
            raise BadParametersError("half-edge arrays are inconsistent")
        n = n3 // 3
        if n < 2 or n % 2 != 0:
            raise BadGenusError(f"vertex count {n} is not an even number >= 2")
        for h, p in enumerate(self.partner):
            if p == h:
                raise BadParametersError(f"half-edge {h} is its own partner")
            if not 0 <= p < n3 or self.partner[p] != h:
                raise BadParametersError("partner map is not an involution")
            if self.edge_ids[h] != self.edge_ids[p]:
                raise BadParametersError("partner slots disagree on edge id")
        if len(self._edge_map) != n3 // 2:
            raise BadParametersError("edge ids are not unique per partner pair")
        if any(e >= self.next_edge_id for e in self._edge_map):
            raise BadParametersError("edge id above the mint counter")
        seen = [False] * n
        seen[0] = True
        queue = deque([0])
        reached = 1
        while queue:
            v = queue.popleft()
            for w in self.neighbors_of(v):
                if not seen[w]:
                    seen[w] = True
                    reached += 1
                    queue.append(w)
        if reached != n:
            raise DisconnectedError(f"only {reached} of {n} vertices reachable")

    def validate(self) -> None:
        """Re-run every structural invariant, raising on the first failure."""
        self._check()

    # -- equality / canonical form cache ------------------------------------

    def same_labeled_graph(self, other: "TrivalentGraph") -> bool:
        """Equality as labeled multigraphs, ignoring edge ids."""
        return sorted((u, v) for _, u, v in self.edge_pairs()) == sorted(
            (u, v) for _, u, v in other.edge_pairs()
        )

    def _canon_input(self) -> tuple[int, tuple[int, ...], tuple[tuple[tuple[int, int], ...], ...]]:
        n = self.vertex_count
        loops = [0] * n
        mult: list[dict[int, int]] = [dict() for _ in range(n)]
        for eid, u, v in self.edge_pairs():
            if u == v:
                loops[u] += 1
            else:
                mult[u][v] = mult[u].get(v, 0) + 1
                mult[v][u] = mult[v].get(u, 0) + 1
        adj = tuple(tuple(sorted(m.items())) for m in mult)
        return n, tuple(loops), adj

    def __repr__(self) -> str:
        pairs = [(u, v) for _, u, v in self.edge_pairs()]
        return f"TrivalentGraph(genus={self.genus}, edges={pairs})"


# -- construction ------------------------------------------------------------


def _build(
    vertex_count: int,
    edges: Sequence[tuple[int, int, int]],
    next_edge_id: int,
    _validate: bool = True,
) -> TrivalentGraph:
    """Assemble a graph from (edge id, u, v) triples, slots in list order."""
    n3 = 3 * vertex_count
    partner = [-1] * n3
    ids = [-1] * n3
    cursor = [0] * vertex_count

    def take(v: int) -> int:
        if v < 0 or v >= vertex_count:
            raise BadParametersError(f"edge references unknown vertex {v}")
        if cursor[v] >= 3:
            raise NotTrivalentError(f"vertex {v} has valence above 3")
        h = 3 * v + cursor[v]
        cursor[v] += 1
        return h

    for eid, u, v in edges:
        ha = take(u)
        hb = take(v)
        partner[ha] = hb
        partner[hb] = ha
        ids[ha] = ids[hb] = eid
    short = [v for v in range(vertex_count) if cursor[v] != 3]
    if short:
        raise NotTrivalentError(f"vertices {short} have valence below 3")
    return TrivalentGraph(tuple(partner), tuple(ids), next_edge_id, _validate)


def from_edge_list(vertex_count: int, edges: Iterable[tuple[int, int]]) -> TrivalentGraph:
    """Validated graph from unordered vertex pairs; loops written as (v, v).

    Edge ids are minted sequentially in input order.
    """
    if vertex_count < 2 or vertex_count % 2 != 0:
        raise BadGenusError(f"vertex count {vertex_count} is not an even number >= 2")
    triples = [(i, u, v) for i, (u, v) in enumerate(edges)]
    return _build(vertex_count, triples, len(triples))


def make_oloops(genus: int) -> TrivalentGraph:
    """The standard g-loop graph: a path core with pendant loop-vertices.

    Genus 2 is the dumbbell.  For genus >= 3 the core is a path on g-2
    vertices; each core vertex carries 3 - (core degree) pendant
    loop-vertices, so both path ends carry two and interior vertices one.
    """
    if genus < 2:
        raise BadGenusError(f"genus {genus} below 2")
    if genus == 2:
        return from_edge_list(2, [(0, 0), (0, 1), (1, 1)])
    core = genus - 2
    edges: list[tuple[int, int]] = [(i, i + 1) for i in range(core - 1)]
    pendant = core
    for v in range(core):
        core_degree = (1 if core > 1 else 0) + (1 if 0 < v < core - 1 else 0)
        for _ in range(3 - core_degree):
            edges.append((v, pendant))
            edges.append((pendant, pendant))
            pendant += 1
    return from_edge_list(2 * genus - 2, edges)


def loop_count(g: TrivalentGraph) -> int:
    """Number of edges whose two half-edges share a vertex."""
    return len(g.loop_ids())


# -- serialization -----------------------------------------------------------


def serialize(g: TrivalentGraph) -> str:
    """UTF-8 JSON ``{"vertices": n, "edges": [[u, v], ...]}``, edges sorted."""
    pairs = sorted((u, v) for _, u, v in g.edge_pairs())
    return json.dumps({"vertices": g.vertex_count, "edges": [list(p) for p in pairs]},
                      separators=(",", ":"))


def parse(text: str) -> TrivalentGraph:
    """Inverse of :func:`serialize`; edge order in the file is insignificant."""
    try:
        obj = json.loads(text)
    except (json.JSONDecodeError, TypeError) as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    if not isinstance(obj, dict) or set(obj) != {"vertices", "edges"}:
        raise ParseError('expected an object with keys "vertices" and "edges"')
    n = obj["vertices"]
    raw = obj["edges"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise ParseError('"vertices" must be an integer')
    if not isinstance(raw, list):
        raise ParseError('"edges" must be a list')
    edges: list[tuple[int, int]] = []
    for item in raw:
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in item)
        ):
            raise ParseError(f"bad edge entry {item!r}")
        u, v = item
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"edge {item!r} references an unknown vertex")
        edges.append((u, v))
    return from_edge_list(n, edges)


def to_dot(g: TrivalentGraph, name: str = "G") -> str:
    """DOT text for the multigraph; loops and parallel edges preserved."""
    lines = [f"graph {name} {{"]
    for v in range(g.vertex_count):
        lines.append(f"  {v};")
    for _, u, v in g.edge_pairs():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- cycles ------------------------------------------------------------------


def trace_cycle(g: TrivalentGraph, c: Cycle) -> list[int]:
    """Vertex sequence w_0..w_{L-1} with edge i joining w_{i-1} and w_i.

    Raises BadParametersError unless the edge list is a closed walk with
    no repeated edge.
    """
    ids = c.edge_ids
    if not ids:
        raise BadParametersError("empty cycle")
    if len(set(ids)) != len(ids):
        raise BadParametersError("cycle repeats an edge")
    first = ids[0]
    for start in set(g.endpoints(first)):
        verts: list[int] = []
        cur = start
        ok = True
        for eid in ids:
            u, v = g.endpoints(eid)
            if cur == u:
                cur = v
            elif cur == v:
                cur = u
            else:
                ok = False
                break
            verts.append(cur)
        if ok and cur == start:
            return verts
    raise BadParametersError(f"edge ids {ids} do not close up into a cycle")


def _bfs_shortest_path(g: TrivalentGraph, src: int, dst: int, banned_edge: int) -> Optional[list[int]]:
    """Edge-id path src -> dst avoiding one edge; deterministic by slot order."""
    parent_edge: dict[int, int] = {src: -1}
    parent_vertex: dict[int, int] = {src: -1}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if v == dst:
            path = []
            while parent_edge[v] != -1:
                path.append(parent_edge[v])
                v = parent_vertex[v]
            return path[::-1]
        for h in g.slots(v):
            eid = g.edge_ids[h]
            if eid == banned_edge:
                continue
            w = g.partner[h] // 3
            if w not in parent_edge:
                parent_edge[w] = eid
                parent_vertex[w] = v
                queue.append(w)
    return None


def _canonical_rotation(ids: list[int]) -> tuple[int, ...]:
    """Rotate/reflect a cyclic edge-id list to its lexicographic minimum."""
    best = None
    n = len(ids)
    for seq in (ids, ids[::-1]):
        for r in range(n):
            cand = tuple(seq[r:] + seq[:r])
            if best is None or cand < best:
                best = cand
    assert best is not None
    return best


def girth(g: TrivalentGraph) -> tuple[int, Cycle]:
    """Length of the shortest cycle and one witness.

    Loops give 1, parallel pairs 2; otherwise the graph is simple and the
    shortest cycle is found by per-edge BFS.  Among equally short witnesses
    the one with the lexicographically smallest edge-id tuple is returned.
    """
    loops = g.loop_ids()
    if loops:
        return 1, Cycle((loops[0],))
    parallels = [ids for ids in g.parallel_classes().values() if len(ids) >= 2]
    if parallels:
        e1, e2 = min((ids[0], ids[1]) for ids in parallels)
        return 2, Cycle((e1, e2))
    best_len = None
    best_ids: Optional[tuple[int, ...]] = None
    for eid in g.edge_id_list():
        u, v = g.endpoints(eid)
        path = _bfs_shortest_path(g, u, v, eid)
        if path is None:
            continue
        length = len(path) + 1
        if best_len is not None and length > best_len:
            continue
        ids = _canonical_rotation(path + [eid])
        if best_len is None or length < best_len or ids < best_ids:
            best_len, best_ids = length, ids
    # A connected trivalent multigraph always has a cycle.
    assert best_len is not None and best_ids is not None
    return best_len, Cycle(best_ids)


# -- canonical form ----------------------------------------------------------
#
# Iterative partition refinement on (color, loop count, neighbor classes)
# followed by individualization with backtracking; the minimum adjacency
# code over all leaves is the canonical form.  Exhaustive permutation
# search (permutation_isomorphic) is kept as an independent oracle for
# graphs of at most 8 vertices.

AdjTable = Sequence[Sequence[tuple[int, int]]]


def _refine(n: int, adj: AdjTable, cells: list[list[int]]) -> list[list[int]]:
    cls = [0] * n
    for i, cell in enumerate(cells):
        for v in cell:
            cls[v] = i
    while True:
        new_cells: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            sig: dict[tuple[tuple[int, int], ...], list[int]] = {}
            for v in cell:
                key = tuple(sorted((cls[u], m) for u, m in adj[v]))
                sig.setdefault(key, []).append(v)
            if len(sig) == 1:
                new_cells.append(cell)
            else:
                changed = True
                for key in sorted(sig):
                    new_cells.append(sig[key])
        if not changed:
            return cells
        cells = new_cells
        for i, cell in enumerate(cells):
            for v in cell:
                cls[v] = i


def _leaf_code(
    n: int,
    loops: Sequence[int],
    adj: AdjTable,
    cells: list[list[int]],
) -> tuple[tuple[tuple[int, int], ...], list[int]]:
    pos = [0] * n
    for i, cell in enumerate(cells):
        pos[cell[0]] = i
    code: list[tuple[int, int]] = []
    for v in range(n):
        code.extend([(pos[v], pos[v])] * loops[v])
        for u, m in adj[v]:
            if u > v:
                a, b = pos[v], pos[u]
                if a > b:
                    a, b = b, a
                code.extend([(a, b)] * m)
    code.sort()
    return tuple(code), pos


def _canonical_search(
    n: int,
    loops: Sequence[int],
    adj: AdjTable,
    colors: Optional[Sequence[int]],
) -> tuple[tuple[tuple[int, int], ...], list[int]]:
    """Minimum adjacency code and one vertex->position labeling achieving it."""
    groups: dict[tuple, list[int]] = {}
    for v in range(n):
        key = (
            colors[v] if colors is not None else 0,
            loops[v],
            tuple(sorted((m for _, m in adj[v]), reverse=True)),
        )
        groups.setdefault(key, []).append(v)
    initial = [groups[k] for k in sorted(groups)]

    best_code: Optional[tuple[tuple[int, int], ...]] = None
    best_pos: Optional[list[int]] = None

    def descend(cells: list[list[int]]) -> None:
        nonlocal best_code, best_pos
        cells = _refine(n, adj, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            code, pos = _leaf_code(n, loops, adj, cells)
            if best_code is None or code < best_code:
                best_code, best_pos = code, pos
            return
        cell = cells[target]
        for v in cell:
            rest = [u for u in cell if u != v]
            descend(cells[:target] + [[v], rest] + cells[target + 1:])

    descend(initial)
    assert best_code is not None and best_pos is not None
    return best_code, best_pos


def canonical_key(
    n: int,
    loops: Sequence[int],
    adj: AdjTable,
    colors: Optional[Sequence[int]] = None,
) -> bytes:
    """Canonical byte key for a colored multigraph given as loop/adjacency data."""
    code, pos = _canonical_search(n, loops, adj, colors)
    parts = [struct.pack(">H", n)]
    parts.extend(struct.pack(">HH", a, b) for a, b in code)
    if colors is not None:
        by_pos = [0] * n
        for v in range(n):
            by_pos[pos[v]] = colors[v]
        parts.append(bytes([min(c, 255) for c in by_pos]))
    return b"".join(parts)


def canonical_form(g: TrivalentGraph) -> CanonicalForm:
    """Deterministic relabeling-invariant form; equality decides isomorphism."""
    if g._form is None:
        n, loops, adj = g._canon_input()
        g._form = CanonicalForm(canonical_key(n, loops, adj))
    return g._form


def canonical_labeling(g: TrivalentGraph) -> list[int]:
    """One vertex -> position map realizing the canonical form."""
    n, loops, adj = g._canon_input()
    _, pos = _canonical_search(n, loops, adj, None)
    return pos


def canonical_copy(g: TrivalentGraph) -> TrivalentGraph:
    """The canonically labeled representative, with fresh sequential edge ids."""
    pos = canonical_labeling(g)
    pairs = sorted(
        (min(pos[u], pos[v]), max(pos[u], pos[v])) for _, u, v in g.edge_pairs()
    )
    return from_edge_list(g.vertex_count, pairs)


def is_isomorphic(a: TrivalentGraph, b: TrivalentGraph) -> bool:
    return canonical_form(a) == canonical_form(b)


def permutation_isomorphic(a: TrivalentGraph, b: TrivalentGraph) -> bool:
    """Exhaustive permutation search; independent oracle for small graphs.

    Backtracks over vertex bijections in index order, pruning on local
    incidence data only (never on canonical forms).
    """
    n = a.vertex_count
    if n != b.vertex_count:
        return False

    def profile(g: TrivalentGraph) -> list[tuple[int, tuple[int, ...]]]:
        n_, loops, adj = g._canon_input()
        return [(loops[v], tuple(sorted(m for _, m in adj[v]))) for v in range(n_)]

    prof_a, prof_b = profile(a), profile(b)
    if sorted(prof_a) != sorted(prof_b):
        return False

    def table(g: TrivalentGraph):
        n_, loops, adj = g._canon_input()
        return loops, [dict(row) for row in adj]

    loops_a, adj_a = table(a)
    loops_b, adj_b = table(b)
    image = [-1] * n
    used = [False] * n

    def extend(v: int) -> bool:
        if v == n:
            return True
        for w in range(n):
            if used[w] or prof_a[v] != prof_b[w]:
                continue
            ok = all(
                adj_a[v].get(u, 0) == adj_b[w].get(image[u], 0) for u in range(v)
            )
            if ok:
                image[v] = w
                used[w] = True
                if extend(v + 1):
                    return True
                image[v] = -1
                used[w] = False
        return False

    return extend(0)
