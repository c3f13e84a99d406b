"""Command-line front end: atlases, diameters, certified paths, word bounds.

Exit codes: 0 success, 2 usage or parse problem, 3 missing prerequisite
(e.g. no atlas cache and --no-build), 1 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional

from . import atlas as atlas_mod
from .bounds import path_to_oloops, theorem1_bound
from .errors import (
    BoundViolation,
    LiftInvariantViolation,
    PantsOrbitError,
    UnknownFormError,
)
from .graphs import TrivalentGraph, canonical_form, parse, serialize, to_dot
from .lickorish import distance_bound, parse_word
from .shifts import ShiftMove, ShiftPath, apply_shift, enumerate_shifts, inverse_shift

__all__ = ["main", "RunConfig"]

CACHE_ENV = "PANTS_ORBIT_CACHE_DIR"


@dataclass
class RunConfig:
    genus: int
    atlas_path: Optional[str] = None
    output_path: Optional[str] = None
    method: str = "bfs"
    threads: int = 1
    no_build: bool = False
    as_json: bool = False


def _default_atlas_path(genus: int) -> str:
    base = os.environ.get(CACHE_ENV, ".")
    return os.path.join(base, f"atlas-g{genus}.jsonl")


def _obtain_atlas(cfg: RunConfig) -> atlas_mod.OrbitAtlas:
    path = cfg.atlas_path or _default_atlas_path(cfg.genus)
    if os.path.exists(path):
        atlas = atlas_mod.load_atlas(path)
        if atlas.genus != cfg.genus:
            raise PantsOrbitError(
                f"atlas at {path} is for genus {atlas.genus}, not {cfg.genus}"
            )
        if atlas.adjacency is not None:
            return atlas
    if cfg.no_build:
        raise FileNotFoundError(path)
    atlas = atlas_mod.enumerate_orbits(cfg.genus)
    return atlas_mod.build_orbit_graph(atlas, threads=cfg.threads)


def _read_graph(path: str) -> TrivalentGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def _emit(cfg: RunConfig, human: str, payload: dict) -> None:
    if cfg.as_json:
        print(json.dumps(payload, separators=(",", ":"), sort_keys=True))
    else:
        print(human)


def cmd_enumerate(cfg: RunConfig) -> int:
    atlas = atlas_mod.enumerate_orbits(cfg.genus)
    atlas = atlas_mod.build_orbit_graph(atlas, threads=cfg.threads)
    out = cfg.output_path or _default_atlas_path(cfg.genus)
    atlas_mod.save_atlas(atlas, out)
    _emit(
        cfg,
        f"orbits: {atlas.orbit_count}",
        {"genus": cfg.genus, "orbits": atlas.orbit_count, "path": out},
    )
    return 0


def cmd_diameter(cfg: RunConfig) -> int:
    atlas = _obtain_atlas(cfg)
    value = atlas_mod.diameter(atlas, threads=cfg.threads)
    bound = theorem1_bound(cfg.genus)
    verdict = "PASS" if value <= bound else "FAIL"
    _emit(
        cfg,
        f"diameter {value}, bound {bound:.3f}, {verdict}",
        {
            "genus": cfg.genus,
            "diameter": value,
            "bound": bound,
            "pass": value <= bound,
        },
    )
    return 0 if value <= bound else 1


def _reverse_path(path: ShiftPath) -> ShiftPath:
    graphs = list(path.graphs())
    moves = []
    for g, m in zip(graphs[:-1], path.moves):
        moves.append(inverse_shift(g, m))
    return ShiftPath(graphs[-1], tuple(reversed(moves)))


def _realize_bfs_path(
    atlas: atlas_mod.OrbitAtlas, start: TrivalentGraph, goal_index: int
) -> ShiftPath:
    """Concrete moves realizing a shortest orbit path from start's orbit."""
    from collections import deque

    adjacency = atlas.adjacency
    assert adjacency is not None
    src = atlas.index_of(canonical_form(start))
    dist = [-1] * atlas.orbit_count
    dist[src] = 0
    queue = deque([src])
    while queue:
        v = queue.popleft()
        for w in adjacency[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    if dist[goal_index] < 0:
        raise UnknownFormError("orbit graph is disconnected (enumeration bug)")
    chain = [goal_index]
    while chain[-1] != src:
        cur = chain[-1]
        chain.append(min(w for w in adjacency[cur] if dist[w] == dist[cur] - 1))
    chain.reverse()  # [src, ..., goal_index]
    g = start
    moves: list[ShiftMove] = []
    for orbit in chain[1:]:
        target_form = atlas.forms[orbit]
        found = None
        for m in enumerate_shifts(g):
            nxt = apply_shift(g, m)
            if canonical_form(nxt) == target_form:
                found = (m, nxt)
                break
        if found is None:
            raise UnknownFormError("no move realizes a BFS edge (adjacency bug)")
        moves.append(found[0])
        g = found[1]
    return ShiftPath(start, tuple(moves))


def cmd_path(cfg: RunConfig, from_file: str, to_file: str) -> int:
    a = _read_graph(from_file)
    b = _read_graph(to_file)
    if a.genus != b.genus:
        print(
            f"error: genus mismatch ({a.genus} vs {b.genus})", file=sys.stderr
        )
        return 2
    cfg.genus = a.genus
    if cfg.method == "bfs":
        atlas = _obtain_atlas(cfg)
        goal = atlas.index_of(canonical_form(b))
        path = _realize_bfs_path(atlas, a, goal)
        _emit(
            cfg,
            f"distance {len(path)}\n" + _describe_moves(path),
            {"distance": len(path), "path": json.loads(path.to_json())},
        )
        return 0
    cert_a = path_to_oloops(a)
    cert_b = path_to_oloops(b)
    combined = ShiftPath(
        a, cert_a.path.moves + _reverse_path(cert_b.path).moves
    )
    bound = theorem1_bound(cfg.genus)
    human = (
        f"constructive length {len(combined)} via the {cfg.genus}-loop hub, "
        f"bound {bound:.3f}\n" + _describe_moves(combined)
    )
    _emit(
        cfg,
        human,
        {
            "length": len(combined),
            "bound": bound,
            "stage_lengths": {
                "from": cert_a.stage_lengths,
                "to_reversed": cert_b.stage_lengths,
            },
            "path": json.loads(combined.to_json()),
        },
    )
    return 0


def _describe_moves(path: ShiftPath) -> str:
    lines = []
    g = path.start
    for m in path.moves:
        u, v = sorted(g.endpoints(m.edge_id))
        occurrence = g.parallel_classes()[(u, v)].index(m.edge_id)
        lines.append(f"  shift edge ({u},{v})#{occurrence} pairing {m.pairing}")
        g = apply_shift(g, m)
    return "\n".join(lines) if lines else "  (empty path)"


def cmd_bound(cfg: RunConfig, word_text: str) -> int:
    word = parse_word(word_text, cfg.genus)
    value = distance_bound(word)
    _emit(
        cfg,
        f"bound {value:.3f} (valid if the input word is minimal)",
        {"genus": cfg.genus, "word": word_text, "bound": value},
    )
    return 0


def cmd_export_dot(cfg: RunConfig, graph_file: Optional[str]) -> int:
    if graph_file is not None:
        dot = to_dot(_read_graph(graph_file))
    else:
        atlas = _obtain_atlas(cfg)
        lines = ["graph orbits {"]
        for i in range(atlas.orbit_count):
            lines.append(f'  {i} [label="{atlas.forms[i].hex()[:12]}"];')
        assert atlas.adjacency is not None
        for i, row in enumerate(atlas.adjacency):
            for j in sorted(row):
                if i < j:
                    lines.append(f"  {i} -- {j};")
        lines.append("}")
        dot = "\n".join(lines) + "\n"
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(dot)
    else:
        print(dot, end="")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pantsorbit",
        description="Orbit graphs of pants decomposition graphs: enumeration, "
        "distances, and certified shift paths.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def genus_arg(p, required=True):
        p.add_argument("--genus", type=int, required=required, help="surface genus, >= 2")

    def common(p):
        p.add_argument("--atlas", help="atlas cache file (default from "
                       f"${CACHE_ENV} or the working directory)")
        p.add_argument("--no-build", action="store_true",
                       help="fail instead of building a missing atlas")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--json", action="store_true", dest="as_json")

    p = sub.add_parser("enumerate", help="enumerate orbits and write the atlas cache")
    genus_arg(p)
    p.add_argument("--output", help="atlas cache destination")
    common(p)

    p = sub.add_parser("diameter", help="exact BFS diameter vs the theorem bound")
    genus_arg(p)
    common(p)

    p = sub.add_parser("path", help="shift path between two graph files")
    p.add_argument("from_file")
    p.add_argument("to_file")
    p.add_argument("--method", choices=("bfs", "constructive"), default="bfs")
    common(p)

    p = sub.add_parser("bound", help="distance bound for a twist word")
    genus_arg(p)
    p.add_argument("word", nargs="*", help="tokens like T1 T4^-1")
    common(p)

    p = sub.add_parser("export-dot", help="DOT for a graph file or the orbit graph")
    p.add_argument("graph_file", nargs="?")
    genus_arg(p, required=False)
    p.add_argument("--output")
    common(p)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    genus = getattr(args, "genus", None)
    if genus is not None and genus < 2:
        parser.error(f"genus {genus} below 2")
    cfg = RunConfig(
        genus=genus if genus is not None else 0,
        atlas_path=getattr(args, "atlas", None),
        output_path=getattr(args, "output", None),
        method=getattr(args, "method", "bfs"),
        threads=getattr(args, "threads", 1),
        no_build=getattr(args, "no_build", False),
        as_json=getattr(args, "as_json", False),
    )
    try:
        if args.command == "enumerate":
            return cmd_enumerate(cfg)
        if args.command == "diameter":
            return cmd_diameter(cfg)
        if args.command == "path":
            return cmd_path(cfg, args.from_file, args.to_file)
        if args.command == "bound":
            if not args.word:
                return cmd_bound(cfg, "")
            return cmd_bound(cfg, " ".join(args.word))
        if args.command == "export-dot":
            if args.graph_file is None and genus is None:
                parser.error("export-dot needs a graph file or --genus")
            return cmd_export_dot(cfg, args.graph_file)
        parser.error(f"unknown command {args.command}")
    except FileNotFoundError as exc:
        print(f"error: missing prerequisite: {exc}", file=sys.stderr)
        return 3
    except (BoundViolation, LiftInvariantViolation, UnknownFormError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1
    except PantsOrbitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
