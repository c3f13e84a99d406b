"""Orbit enumeration, the orbit graph, distances, and cage arithmetic.

Orbits of the mapping class group action correspond one-to-one with
isomorphism classes of connected trivalent multigraphs on 2g-2 vertices,
so enumerating orbits is isomorph-free multigraph generation.  Two
independent enumerators are provided and cross-checked in the tests:

* a search over half-edge pairings that saturates one vertex at a time
  and deduplicates partial graphs by colored canonical form on the fly
  (leaf-only deduplication is hopeless at 12 vertices);
* recursive edge augmentation: every graph on n+2 vertices arises from a
  graph on n vertices either by subdividing an edge and hanging a pendant
  loop-vertex on it (inverse of loop surgery) or by subdividing one or
  two edges and joining the new vertices (inverse of removing a cycle
  edge and smoothing).
"""

from __future__ import annotations

import json
import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import (
    BadParametersError,
    FormatVersionMismatch,
    GenusTooLargeError,
    SearchBudgetExceededError,
    UnknownFormError,
)
from .graphs import (
    CanonicalForm,
    TrivalentGraph,
    canonical_copy,
    canonical_form,
    canonical_key,
    from_edge_list,
    girth,
    loop_count,
    parse,
    serialize,
)
from .shifts import neighbors

__all__ = [
    "OrbitAtlas",
    "CageBoundReport",
    "GirthBoundReport",
    "DEFAULT_GENUS_LIMIT",
    "enumerate_orbits",
    "enumerate_orbits_by_augmentation",
    "build_orbit_graph",
    "bfs_distance",
    "diameter",
    "cage_lower_bound",
    "min_cubic_order_with_girth",
    "verify_girth_bound",
    "save_atlas",
    "load_atlas",
]

DEFAULT_GENUS_LIMIT = 7

ATLAS_FORMAT = 1


@dataclass
class OrbitAtlas:
    """All orbits for one genus, optionally with orbit-graph adjacency."""

    genus: int
    forms: list[CanonicalForm]
    representatives: list[TrivalentGraph]
    adjacency: Optional[list[frozenset[int]]] = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.metadata.setdefault("orbit_count", len(self.forms))
        self.metadata.setdefault("built_at", time.time())

    @property
    def orbit_count(self) -> int:
        return len(self.forms)

    def index_of(self, form: CanonicalForm) -> int:
        try:
            return self._index[form]
        except AttributeError:
            self._index = {f: i for i, f in enumerate(self.forms)}
            return self.index_of(form)
        except KeyError:
            raise UnknownFormError(f"form {form.hex()} not in atlas") from None


# -- enumeration: pairing-model search ----------------------------------------


def _partial_key(
    touched: int,
    loops: list[int],
    adj: list[dict[int, int]],
    free: list[int],
) -> bytes:
    table = tuple(tuple(sorted(adj[v].items())) for v in range(touched))
    return canonical_key(touched, loops, table, colors=free)


def _saturation_choices(
    x: int,
    slots: int,
    loops: list[int],
    free: list[int],
    touched: int,
    budget: int,
) -> list[tuple[bool, tuple[int, ...]]]:
    """(add_loop, target multiset) ways to fill the free slots of x.

    Targets are existing vertices with spare slots or fresh indices
    touched, touched+1, ...; fresh indices must be used without gaps so
    interchangeable new vertices are not enumerated twice.
    """
    out: list[tuple[bool, tuple[int, ...]]] = []
    existing = [u for u in range(touched) if u != x and free[u] > 0]
    fresh_limit = min(slots, budget)
    candidates = existing + [touched + i for i in range(fresh_limit)]

    def targets(k: int) -> list[tuple[int, ...]]:
        found: list[tuple[int, ...]] = []

        def grow(prefix: list[int], start: int) -> None:
            if len(prefix) == k:
                found.append(tuple(prefix))
                return
            for idx in range(start, len(candidates)):
                u = candidates[idx]
                if u < touched:
                    if prefix.count(u) >= free[u]:
                        continue
                elif u > touched and prefix.count(u - 1) == 0:
                    continue  # fresh vertices enter in order
                grow(prefix + [u], idx)

        grow([], 0)
        return found

    for multiset in targets(slots):
        out.append((False, multiset))
    if slots >= 2:
        for multiset in targets(slots - 2):
            out.append((True, multiset))
    return out


def _enumerate_pairing(n: int) -> list[TrivalentGraph]:
    """Isomorph-free connected trivalent multigraphs on n vertices."""
    seen: set[bytes] = set()
    finals: dict[bytes, TrivalentGraph] = {}
    start = (1, (0,), ((),), (3,))  # one touched vertex, all slots free
    work: deque = deque([start])
    seen.add(_partial_key(1, [0], [dict()], [3]))

    while work:
        touched, loops_t, adj_t, free_t = work.popleft()
        loops = list(loops_t)
        free = list(free_t)
        adj = [dict(row) for row in adj_t]
        x = next(v for v in range(touched) if free[v] > 0)
        for add_loop, multiset in _saturation_choices(
            x, free[x], loops, free, touched, n - touched
        ):
            new_touched = touched + len({u for u in multiset if u >= touched})
            loops2 = loops + [0] * (new_touched - touched)
            free2 = free + [3] * (new_touched - touched)
            adj2 = [dict(row) for row in adj] + [
                dict() for _ in range(new_touched - touched)
            ]
            if add_loop:
                loops2[x] += 1
            free2[x] = 0
            ok = True
            for u in multiset:
                if free2[u] == 0:
                    ok = False
                    break
                free2[u] -= 1
                adj2[x][u] = adj2[x].get(u, 0) + 1
                adj2[u][x] = adj2[u].get(x, 0) + 1
            if not ok:
                continue
            if all(f == 0 for f in free2):
                if new_touched == n:
                    edges = [(v, v) for v in range(n) for _ in range(loops2[v])]
                    edges += [
                        (v, u)
                        for v in range(n)
                        for u, m in sorted(adj2[v].items())
                        if u > v
                        for _ in range(m)
                    ]
                    g = from_edge_list(n, sorted(edges))
                    finals.setdefault(canonical_form(g).key, g)
                continue
            key = _partial_key(new_touched, loops2, adj2, free2)
            if key not in seen:
                seen.add(key)
                work.append(
                    (
                        new_touched,
                        tuple(loops2),
                        tuple(tuple(sorted(r.items())) for r in adj2),
                        tuple(free2),
                    )
                )
    return [finals[k] for k in sorted(finals)]


# -- enumeration: recursive edge augmentation ---------------------------------


def _genus2_by_matchings() -> list[TrivalentGraph]:
    """All pairings of the six half-edge slots on two vertices, deduplicated."""
    found: dict[bytes, TrivalentGraph] = {}

    def match(slots: list[int], pairs: list[tuple[int, int]]) -> None:
        if not slots:
            edges = [(a // 3, b // 3) for a, b in pairs]
            g = from_edge_list(2, edges)
            found.setdefault(canonical_form(g).key, g)
            return
        a = slots[0]
        for i in range(1, len(slots)):
            rest = slots[1:i] + slots[i + 1:]
            match(rest, pairs + [(a, slots[i])])

    match(list(range(6)), [])
    return [found[k] for k in sorted(found)]


def _augmentations(g: TrivalentGraph) -> list[list[tuple[int, int]]]:
    """Edge lists of every one-step extension of g by two vertices."""
    pairs = [(u, v) for _, u, v in g.edge_pairs()]
    n = g.vertex_count
    a, b = n, n + 1
    out = []
    for i in range(len(pairs)):
        u, v = pairs[i]
        rest = pairs[:i] + pairs[i + 1:]
        # pendant loop-vertex on a subdivided edge (inverse of loop surgery)
        out.append(rest + [(u, a), (a, v), (a, b), (b, b)])
        # both new vertices on the same edge, joined: a parallel pair
        out.append(rest + [(u, a), (a, b), (a, b), (b, v)])
        for j in range(i + 1, len(pairs)):
            x, y = pairs[j]
            rest2 = [p for k, p in enumerate(pairs) if k != i and k != j]
            # subdivide two distinct edges and join the new vertices
            out.append(rest2 + [(u, a), (a, v), (x, b), (b, y), (a, b)])
    return out


def enumerate_orbits_by_augmentation(genus: int) -> list[TrivalentGraph]:
    """Independent enumerator used as the dual oracle for the pairing search."""
    if genus < 2:
        raise BadParametersError(f"genus {genus} below 2")
    layer = _genus2_by_matchings()
    for _ in range(genus - 2):
        next_layer: dict[bytes, TrivalentGraph] = {}
        n = layer[0].vertex_count + 2
        for g in layer:
            for edges in _augmentations(g):
                h = from_edge_list(n, sorted(edges))
                next_layer.setdefault(canonical_form(h).key, h)
        layer = [next_layer[k] for k in sorted(next_layer)]
    return layer


# -- the atlas ----------------------------------------------------------------


def enumerate_orbits(genus: int, limit: int = DEFAULT_GENUS_LIMIT) -> OrbitAtlas:
    """One canonically labeled representative per orbit, sorted by form."""
    if genus < 2:
        raise BadParametersError(f"genus {genus} below 2")
    if genus > limit:
        raise GenusTooLargeError(f"genus {genus} above the ceiling {limit}")
    reps = [canonical_copy(g) for g in _enumerate_pairing(2 * genus - 2)]
    forms = [canonical_form(g) for g in reps]
    order = sorted(range(len(reps)), key=lambda i: forms[i].key)
    return OrbitAtlas(
        genus=genus,
        forms=[forms[i] for i in order],
        representatives=[reps[i] for i in order],
    )


def build_orbit_graph(atlas: OrbitAtlas, threads: int = 1) -> OrbitAtlas:
    """Fill in adjacency from the shift moves of every representative."""
    def row(i: int) -> frozenset[int]:
        return frozenset(
            atlas.index_of(f) for f in neighbors(atlas.representatives[i])
        )

    indices = range(atlas.orbit_count)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(row, indices))
    else:
        rows = [row(i) for i in indices]
    for i, near in enumerate(rows):
        for j in near:
            if i not in rows[j]:
                raise UnknownFormError(
                    f"adjacency {i}->{j} not symmetric (enumeration bug)"
                )
    return OrbitAtlas(
        genus=atlas.genus,
        forms=list(atlas.forms),
        representatives=list(atlas.representatives),
        adjacency=rows,
        metadata=dict(atlas.metadata),
    )


def _bfs_row(adjacency: list[frozenset[int]], source: int) -> list[int]:
    dist = [-1] * len(adjacency)
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in adjacency[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def _require_adjacency(atlas: OrbitAtlas) -> list[frozenset[int]]:
    if atlas.adjacency is None:
        raise BadParametersError("atlas has no adjacency; build the orbit graph first")
    return atlas.adjacency


def bfs_distance(atlas: OrbitAtlas, a: CanonicalForm, b: CanonicalForm) -> int:
    """Exact orbit-graph distance between two forms in the atlas."""
    adjacency = _require_adjacency(atlas)
    i, j = atlas.index_of(a), atlas.index_of(b)
    dist = _bfs_row(adjacency, i)[j]
    if dist < 0:
        raise UnknownFormError("orbit graph is disconnected (enumeration bug)")
    return dist


def diameter(atlas: OrbitAtlas, threads: int = 1) -> int:
    """Exact diameter by BFS from every orbit."""
    adjacency = _require_adjacency(atlas)
    indices = range(len(adjacency))

    def eccentricity(i: int) -> int:
        row = _bfs_row(adjacency, i)
        if min(row) < 0:
            raise UnknownFormError("orbit graph is disconnected (enumeration bug)")
        return max(row)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return max(pool.map(eccentricity, indices))
    return max(eccentricity(i) for i in indices)


# -- cage arithmetic ----------------------------------------------------------


@dataclass(frozen=True)
class CageBoundReport:
    """Moore-type lower bound on the order of a k-regular graph of girth G."""

    girth: int
    lower_bound: int
    parity: str


def cage_lower_bound(k: int, G: int) -> CageBoundReport:
    """The general cage vertex-number lower bound, exact integer arithmetic."""
    if k < 3 or G < 3:
        raise BadParametersError("need valence k >= 3 and girth G >= 3")
    if G % 2 == 0:
        value = (2 * (k - 1) ** (G // 2) - 2) // (k - 2)
        parity = "even"
    else:
        value = (k * (k - 1) ** ((G - 1) // 2) - 2) // (k - 2)
        parity = "odd"
    return CageBoundReport(girth=G, lower_bound=value, parity=parity)


def min_cubic_order_with_girth(G: int) -> int:
    """Smallest order of a simple cubic graph with girth >= G, by search.

    Desk scale only: the search is exhaustive over half-edge pairings with
    short-cycle pruning and is budgeted for G in 3..5.
    """
    if G < 3:
        raise BadParametersError(f"girth {G} below 3")
    if G > 5:
        raise SearchBudgetExceededError(f"girth {G} beyond the desk-scale budget")

    def exists_on(n: int) -> bool:
        adj = [set() for _ in range(n)]
        degree = [0] * n

        def short_cycle(u: int, v: int) -> bool:
            # Adding u-v closes a cycle of length dist(u, v) + 1.
            dist = {u: 0}
            queue = deque([u])
            while queue:
                w = queue.popleft()
                if dist[w] + 1 >= G:
                    continue
                for z in adj[w]:
                    if z == v:
                        return True
                    if z not in dist:
                        dist[z] = dist[w] + 1
                        queue.append(z)
            return False

        def extend() -> bool:
            v = next((i for i in range(n) if degree[i] < 3), None)
            if v is None:
                return True
            for w in range(v + 1, n):
                if degree[w] >= 3 or w in adj[v]:
                    continue
                if short_cycle(v, w):
                    continue
                adj[v].add(w)
                adj[w].add(v)
                degree[v] += 1
                degree[w] += 1
                if extend():
                    return True
                adj[v].remove(w)
                adj[w].remove(v)
                degree[v] -= 1
                degree[w] -= 1
            return False

        return extend()

    n = 4
    while True:
        if exists_on(n):
            return n
        n += 2
        if n > 16:
            raise SearchBudgetExceededError("no cubic graph found within budget")


@dataclass(frozen=True)
class GirthBoundReport:
    """Check of girth <= 2(1 + log2(g-1)) over all orbits of one genus."""

    genus: int
    bound: float
    max_girth: int
    violations: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_girth_bound(atlas: OrbitAtlas) -> GirthBoundReport:
    import math

    bound = 2.0 * (1.0 + math.log2(atlas.genus - 1)) if atlas.genus > 1 else 2.0
    worst = 0
    bad = []
    for i, rep in enumerate(atlas.representatives):
        g_len, _ = girth(rep)
        worst = max(worst, g_len)
        if g_len > bound:
            bad.append(i)
    return GirthBoundReport(
        genus=atlas.genus, bound=bound, max_girth=worst, violations=tuple(bad)
    )


# -- persistence ---------------------------------------------------------------


def save_atlas(atlas: OrbitAtlas, path: str) -> None:
    """JSON-lines cache: a header line, then one line per orbit."""
    adjacency = atlas.adjacency
    lines = [
        json.dumps(
            {"format": ATLAS_FORMAT, "genus": atlas.genus, "orbits": atlas.orbit_count},
            separators=(",", ":"),
        )
    ]
    for i in range(atlas.orbit_count):
        lines.append(
            json.dumps(
                {
                    "form": atlas.forms[i].hex(),
                    "graph": json.loads(serialize(atlas.representatives[i])),
                    "adj": sorted(adjacency[i]) if adjacency is not None else [],
                },
                separators=(",", ":"),
            )
        )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_atlas(path: str) -> OrbitAtlas:
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise FormatVersionMismatch("empty atlas file")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise FormatVersionMismatch(f"bad header: {exc}") from None
    if not isinstance(header, dict) or header.get("format") != ATLAS_FORMAT:
        raise FormatVersionMismatch(f"unsupported atlas format {header!r}")
    genus, count = header.get("genus"), header.get("orbits")
    if len(lines) - 1 != count:
        raise FormatVersionMismatch(
            f"expected {count} orbit lines, found {len(lines) - 1}"
        )
    forms: list[CanonicalForm] = []
    reps: list[TrivalentGraph] = []
    adjacency: list[frozenset[int]] = []
    for line in lines[1:]:
        try:
            row = json.loads(line)
        except json.JSONDecodeError as exc:
            raise FormatVersionMismatch(f"bad orbit line: {exc}") from None
        g = parse(json.dumps(row["graph"]))
        form = CanonicalForm.from_hex(row["form"])
        if canonical_form(g) != form:
            raise FormatVersionMismatch("stored form does not match stored graph")
        if g.genus != genus:
            raise FormatVersionMismatch("stored graph genus does not match header")
        forms.append(form)
        reps.append(g)
        adjacency.append(frozenset(row["adj"]))
    has_adjacency = any(adjacency)
    return OrbitAtlas(
        genus=genus,
        forms=forms,
        representatives=reps,
        adjacency=adjacency if has_adjacency else None,
    )
