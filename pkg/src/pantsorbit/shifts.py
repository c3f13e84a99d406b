"""Elementary shifts: collapse a non-loop edge, expand with a chosen pairing.

Collapsing edge e = {v1, v2} leaves four half-edges; expanding across a
fresh edge splits them 2+2 between the two new vertices.  One of the
three 2+2 partitions reproduces the input graph, so each non-loop edge
carries exactly two moves.  With p < q the non-e slots at v1 and r < s
the non-e slots at v2, pairing 0 groups the contents {p, r | q, s} and
pairing 1 groups {p, s | q, r}.

The new vertices reuse the indices v1, v2 and the fresh edge reuses the
slots of e, so a move is realized by swapping the contents of exactly two
slots and minting one edge id; every other edge id is preserved.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator

from .errors import AlreadyLoopError, BadParametersError, IllegalMoveError, ParseError
from .graphs import (
    CanonicalForm,
    Cycle,
    TrivalentGraph,
    canonical_form,
    parse,
    serialize,
    trace_cycle,
)

__all__ = [
    "ShiftMove",
    "ShiftPath",
    "enumerate_shifts",
    "apply_shift",
    "inverse_shift",
    "shorten_cycle",
    "neighbors",
]


@dataclass(frozen=True)
class ShiftMove:
    """One elementary shift: a non-loop edge id plus a pairing in {0, 1}."""

    edge_id: int
    pairing: int


def _move_slots(g: TrivalentGraph, m: ShiftMove) -> tuple[int, int, int, int, int, int]:
    """(ha, hb, p, q, r, s) for a validated move: e-slots and the four others."""
    if m.pairing not in (0, 1):
        raise IllegalMoveError(f"pairing {m.pairing} is not 0 or 1")
    if m.edge_id not in g._edge_map:
        raise IllegalMoveError(f"edge {m.edge_id} not present")
    ha, hb = g.edge_slots(m.edge_id)
    v1, v2 = ha // 3, hb // 3
    if v1 == v2:
        raise IllegalMoveError(f"edge {m.edge_id} is a loop")
    p, q = sorted(h for h in g.slots(v1) if h != ha)
    r, s = sorted(h for h in g.slots(v2) if h != hb)
    return ha, hb, p, q, r, s


def enumerate_shifts(g: TrivalentGraph) -> list[ShiftMove]:
    """All legal moves: two per non-loop edge, none for loops."""
    return [
        ShiftMove(eid, pairing)
        for eid in g.edge_id_list()
        if not g.is_loop(eid)
        for pairing in (0, 1)
    ]


def apply_shift(g: TrivalentGraph, m: ShiftMove) -> TrivalentGraph:
    """Apply one move; destroys m.edge_id, mints one fresh id, keeps the rest."""
    ha, hb, p, q, r, s = _move_slots(g, m)
    a, b = (q, r) if m.pairing == 0 else (q, s)
    partner = list(g.partner)
    ids = list(g.edge_ids)
    pa, pb = partner[a], partner[b]
    if pa != b:
        # Swap the contents of slots a and b; an edge between a and b
        # keeps both ends in place, so only the disjoint case moves links.
        partner[a], partner[b] = pb, pa
        partner[pb] = a
        partner[pa] = b
        ids[a], ids[b] = ids[b], ids[a]
    fresh = g.next_edge_id
    ids[ha] = ids[hb] = fresh
    return TrivalentGraph(tuple(partner), tuple(ids), fresh + 1, _validate=False)


def inverse_shift(g: TrivalentGraph, m: ShiftMove) -> ShiftMove:
    """The move on apply_shift(g, m) that returns to g (up to the re-minted id).

    The inverse acts on the freshly minted edge and re-swaps the same two
    slots, so it carries the same pairing index.
    """
    _move_slots(g, m)
    return ShiftMove(g.next_edge_id, m.pairing)


def shorten_cycle(g: TrivalentGraph, c: Cycle) -> tuple[TrivalentGraph, Cycle, ShiftMove]:
    """One shift that shortens the cycle by exactly 1.

    Collapses the cycle edge with distinct endpoints of lowest id, pairing
    the two cycle-continuation half-edges onto the same new vertex; a
    length-2 cycle becomes a loop.
    """
    length = len(c)
    if length == 1:
        raise AlreadyLoopError("cycle of length 1 is already a loop")
    verts = trace_cycle(g, c)
    ids = c.edge_ids
    candidates = [
        i for i, eid in enumerate(ids) if verts[i - 1] != verts[i]
    ]
    if not candidates:
        raise BadParametersError("cycle has no edge with distinct endpoints")
    at = min(candidates, key=lambda i: ids[i])
    eid = ids[at]
    v_in, v_out = verts[at - 1], verts[at]
    prev_id = ids[at - 1] if length > 2 else ids[1 - at]
    next_id = ids[(at + 1) % length] if length > 2 else ids[1 - at]

    ha, hb = g.edge_slots(eid)
    if ha // 3 != v_in:
        ha, hb = hb, ha
    # Half-edge of the predecessor edge at v_in and of the successor at v_out.
    h_prev = next(
        h for h in g.slots(v_in) if g.edge_ids[h] == prev_id and h != ha
    )
    h_next = next(
        h for h in g.slots(v_out) if g.edge_ids[h] == next_id and h != hb and h != h_prev
    )
    p, q = sorted(h for h in g.slots(v_in) if h != ha)
    r, s = sorted(h for h in g.slots(v_out) if h != hb)
    pairing = 0 if (h_prev, h_next) in ((p, r), (q, s)) else 1
    move = ShiftMove(eid, pairing)
    out = apply_shift(g, move)
    shorter = Cycle(tuple(x for x in ids if x != eid))
    trace_cycle(out, shorter)  # internal consistency check
    return out, shorter, move


def neighbors(g: TrivalentGraph) -> set[CanonicalForm]:
    """Canonical forms one shift away, with the graph's own form dropped."""
    own = canonical_form(g)
    out = set()
    for m in enumerate_shifts(g):
        form = canonical_form(apply_shift(g, m))
        if form != own:
            out.add(form)
    return out


@dataclass(frozen=True)
class ShiftPath:
    """A start graph plus a sequence of moves, each legal after the previous."""

    start: TrivalentGraph
    moves: tuple[ShiftMove, ...]

    def __len__(self) -> int:
        return len(self.moves)

    def graphs(self) -> Iterator[TrivalentGraph]:
        """Every graph along the path, the start first."""
        g = self.start
        yield g
        for m in self.moves:
            g = apply_shift(g, m)
            yield g

    def end(self) -> TrivalentGraph:
        g = self.start
        for m in self.moves:
            g = apply_shift(g, m)
        return g

    def validate(self) -> TrivalentGraph:
        """Replay with full invariant checks; returns the end graph."""
        g = self.start
        g.validate()
        for m in self.moves:
            before = (g.vertex_count, g.edge_count)
            g = apply_shift(g, m)
            g.validate()
            if (g.vertex_count, g.edge_count) != before:
                raise IllegalMoveError("shift changed vertex or edge count")
        return g

    # -- wire format ---------------------------------------------------------
    #
    # Moves name an edge by its endpoints plus an occurrence index among
    # the parallel edges with those endpoints (ids ascending), so the
    # format does not leak internal edge ids.

    def to_json(self) -> str:
        out = []
        g = self.start
        for m in self.moves:
            u, v = sorted(g.endpoints(m.edge_id))
            occurrence = g.parallel_classes()[(u, v)].index(m.edge_id)
            out.append(
                {"edge": [u, v], "occurrence": occurrence, "pairing": m.pairing}
            )
            g = apply_shift(g, m)
        return json.dumps(
            {"start": json.loads(serialize(self.start)), "moves": out},
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, text: str) -> "ShiftPath":
        try:
            obj = json.loads(text)
        except (json.JSONDecodeError, TypeError) as exc:
            raise ParseError(f"not valid JSON: {exc}") from None
        if not isinstance(obj, dict) or set(obj) != {"start", "moves"}:
            raise ParseError('expected an object with keys "start" and "moves"')
        start = parse(json.dumps(obj["start"]))
        moves = []
        g = start
        for item in obj["moves"]:
            if not isinstance(item, dict) or "edge" not in item or "pairing" not in item:
                raise ParseError(f"bad move entry {item!r}")
            u, v = sorted(item["edge"])
            occurrence = item.get("occurrence", 0)
            bundle = g.parallel_classes().get((u, v), [])
            if occurrence >= len(bundle):
                raise ParseError(f"no edge ({u},{v}) with occurrence {occurrence}")
            m = ShiftMove(bundle[occurrence], item["pairing"])
            moves.append(m)
            g = apply_shift(g, m)
        return cls(start, tuple(moves))
