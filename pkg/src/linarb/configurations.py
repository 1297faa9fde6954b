"""The reducible-configuration catalog and a degree-bounded subgraph matcher.

A configuration is a pattern graph whose vertices carry upper bounds on their
degree in the host graph, together with a distinguished anchor edge.  The
catalog lists the ten families C1..C10 used by the partitioner; the matcher
finds injective, edge-preserving, degree-capped embeddings of any
configuration into a host graph.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Optional

from .graphs import Edge, Graph, build_graph, edge

MAX_DEGREE = 9


class ConfigurationError(ValueError):
    """Malformed configuration (bounds below pattern degree, bad anchor, ...)."""


@dataclass(frozen=True)
class Configuration:
    """Pattern graph + per-vertex degree caps + anchor edge."""

    name: str
    pattern: Graph
    bounds: tuple[int, ...]
    anchor: Edge
    family: str = "custom"

    def __post_init__(self) -> None:
        if len(self.bounds) != self.pattern.n:
            raise ConfigurationError("one bound per pattern vertex required")
        for v, cap in enumerate(self.bounds):
            if cap < self.pattern.degree(v):
                raise ConfigurationError(
                    f"{self.name}: bound {cap} at vertex {v} below its pattern degree"
                )
            if cap > MAX_DEGREE:
                raise ConfigurationError(f"{self.name}: bound {cap} exceeds {MAX_DEGREE}")
        if edge(*self.anchor) not in self.pattern.edges:
            raise ConfigurationError(f"{self.name}: anchor {self.anchor} not a pattern edge")

    @cached_property
    def automorphisms(self) -> tuple[tuple[int, ...], ...]:
        """All pattern automorphisms that preserve the degree bounds."""
        pat = self.pattern
        out = []

        def extend(partial: list[int], used: set[int]) -> None:
            v = len(partial)
            if v == pat.n:
                out.append(tuple(partial))
                return
            for w in range(pat.n):
                if w in used:
                    continue
                if self.bounds[w] != self.bounds[v] or pat.degree(w) != pat.degree(v):
                    continue
                ok = True
                for u in range(v):
                    if pat.has_edge(u, v) != pat.has_edge(partial[u], w):
                        ok = False
                        break
                if ok:
                    extend(partial + [w], used | {w})

        extend([], set())
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "vertices": [{"id": v, "bound": b} for v, b in enumerate(self.bounds)],
            "edges": [list(e) for e in self.pattern.edge_list],
            "anchor": list(self.anchor),
        }

    @staticmethod
    def from_json(obj: dict) -> "Configuration":
        try:
            ids = [entry["id"] for entry in obj["vertices"]]
            if sorted(ids) != list(range(len(ids))):
                raise ConfigurationError("vertex ids must be 0..k-1")
            bounds = [0] * len(ids)
            for entry in obj["vertices"]:
                bounds[entry["id"]] = int(entry["bound"])
            pattern = build_graph(len(ids), [tuple(e) for e in obj["edges"]])
            anchor = edge(*obj["anchor"])
            name = str(obj.get("name", "custom"))
        except (KeyError, TypeError) as exc:
            raise ConfigurationError(f"malformed configuration JSON: {exc}") from None
        return Configuration(name, pattern, tuple(bounds), anchor)


@dataclass(frozen=True)
class Occurrence:
    """An injective embedding; images[p] is the host vertex for pattern vertex p."""

    images: tuple[int, ...]

    def edge_image(self, e: Edge) -> Edge:
        return edge(self.images[e[0]], self.images[e[1]])

    def vertex_images(self) -> tuple[int, ...]:
        return self.images


def _default_anchor(edges: list[Edge], bounds: tuple[int, ...]) -> Edge:
    """The first edge, in list order, whose endpoint caps are smallest."""
    return min(
        edges,
        key=lambda e: (
            min(bounds[e[0]], bounds[e[1]]),
            max(bounds[e[0]], bounds[e[1]]),
            edges.index(e),
        ),
    )


def _config(name: str, family: str, n: int, edges: list[tuple[int, int]], bounds: dict[int, int]) -> Configuration:
    full = tuple(bounds.get(v, MAX_DEGREE) for v in range(n))
    norm = [edge(*e) for e in edges]
    return Configuration(name, build_graph(n, edges), full, _default_anchor(norm, full), family)


def catalog() -> list[Configuration]:
    """The ten configuration families, flattened in priority order.

    C1 appears as its five maximal cap pairs and C2 as one instance per hub
    cap 3..9; treating the labels as caps is sound because reducibility is
    monotone under lowering caps.  Reductions for later entries may assume
    that earlier entries do not occur, so the order matters.
    """
    entries: list[Configuration] = []
    for a in (1, 2, 3, 4, 5):
        entries.append(_config(f"C1({a},{10 - a})", "C1", 2, [(0, 1)], {0: a, 1: 10 - a}))
    # C2: triangle (u,v,w) plus pendant u-x; caps on v and x shrink as u grows.
    for d in range(3, 10):
        entries.append(
            _config(
                f"C2({d})", "C2", 4,
                [(0, 1), (1, 2), (0, 2), (0, 3)],
                {0: d, 1: 11 - d, 2: MAX_DEGREE, 3: 11 - d},
            )
        )
    # C3: a vertex with two 2-neighbours.
    entries.append(_config("C3", "C3", 3, [(0, 1), (1, 2)], {0: 2, 2: 2}))
    # C4: hub 0 over the path 1-2-3-4-5 with two capped-3 vertices at 2 and 4.
    entries.append(
        _config(
            "C4", "C4", 6,
            [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (2, 3), (3, 4), (4, 5)],
            {2: 3, 4: 3},
        )
    )
    # C5: hub 0 with capped-3 vertices 2 and 5 each sharing two triangles with
    # the hub, plus a third capped-3 neighbour 7.
    entries.append(
        _config(
            "C5", "C5", 8,
            [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (0, 7), (1, 2), (2, 3), (4, 5), (5, 6)],
            {2: 3, 5: 3, 7: 3},
        )
    )
    # C6: hub 0 with a double-triangle capped-3 neighbour 2 and a 2-neighbour 4.
    entries.append(
        _config(
            "C6", "C6", 5,
            [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3)],
            {2: 3, 4: 2},
        )
    )
    # C7: same shape with the hub capped at 8 and the pendant capped at 4.
    entries.append(
        _config(
            "C7", "C7", 5,
            [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3)],
            {0: 8, 2: 3, 4: 4},
        )
    )
    # C8: a triangle with caps 5, 6, 8.
    entries.append(_config("C8", "C8", 3, [(0, 1), (1, 2), (0, 2)], {0: 5, 1: 6, 2: 8}))
    # C9: hub 0 with capped-3 neighbours 1 and 2, a 2-neighbour 3, and a
    # neighbour 4 adjacent to both 3 and 2.
    entries.append(
        _config(
            "C9", "C9", 5,
            [(0, 1), (0, 2), (0, 3), (0, 4), (4, 3), (4, 2)],
            {1: 3, 2: 3, 3: 2},
        )
    )
    # C10: hub 0 with a 2-neighbour 1 and two capped-3 neighbours 3 and 5 on a
    # common 4-cycle through 4, flanked by triangles through 2 and 6.
    entries.append(
        _config(
            "C10", "C10", 7,
            [(0, 1), (0, 2), (0, 3), (0, 5), (0, 6), (2, 3), (3, 4), (4, 5), (5, 6)],
            {1: 2, 3: 3, 5: 3},
        )
    )
    return entries


def catalog_family(name: str) -> list[Configuration]:
    """All catalog entries of one family ("C1") or the single exact instance."""
    entries = [c for c in catalog() if c.family == name]
    if not entries:
        entries = [c for c in catalog() if c.name == name]
    if not entries:
        raise ConfigurationError(f"unknown configuration {name!r}")
    return entries


def _match_order(conf: Configuration, g: Graph) -> list[int]:
    """Pattern vertex order: most constrained first, then stay connected."""
    pat = conf.pattern

    def candidate_count(v: int) -> int:
        return sum(
            1 for w in range(g.n) if pat.degree(v) <= g.degree(w) <= conf.bounds[v]
        )

    order = [min(range(pat.n), key=lambda v: (candidate_count(v), v))]
    placed = set(order)
    while len(order) < pat.n:
        best = min(
            (v for v in range(pat.n) if v not in placed),
            key=lambda v: (
                -sum(1 for u in pat.neighbours(v) if u in placed),
                candidate_count(v),
                v,
            ),
        )
        order.append(best)
        placed.add(best)
    return order


def _raw_matches(g: Graph, conf: Configuration) -> Iterator[tuple[int, ...]]:
    """All injective degree-capped embeddings, before automorphism dedup."""
    pat = conf.pattern
    order = _match_order(conf, g)
    images = [-1] * pat.n
    used = [False] * g.n

    def place(k: int) -> Iterator[tuple[int, ...]]:
        if k == pat.n:
            yield tuple(images)
            return
        v = order[k]
        placed_neighbours = [u for u in pat.neighbours(v) if images[u] >= 0]
        if placed_neighbours:
            pool = sorted(
                set.intersection(*(set(g.neighbours(images[u])) for u in placed_neighbours))
            )
        else:
            pool = range(g.n)
        for w in pool:
            if used[w]:
                continue
            if g.degree(w) > conf.bounds[v] or g.degree(w) < pat.degree(v):
                continue
            images[v] = w
            used[w] = True
            yield from place(k + 1)
            images[v] = -1
            used[w] = False

    yield from place(0)


def match(g: Graph, conf: Configuration) -> list[Occurrence]:
    """All occurrences of conf in g, deduplicated up to pattern symmetry.

    Two embeddings that differ by a cap-preserving pattern automorphism are
    the same occurrence; the lexicographically smallest image tuple of each
    orbit is kept.
    """
    return list(iter_matches(g, conf))


def iter_matches(g: Graph, conf: Configuration) -> Iterator[Occurrence]:
    autos = conf.automorphisms
    for images in _raw_matches(g, conf):
        if len(autos) > 1:
            canonical = min(tuple(images[a[v]] for v in range(len(images))) for a in autos)
            if images != canonical:
                continue
        yield Occurrence(images)


def find_any(g: Graph, entries: Optional[list[Configuration]] = None) -> Optional[tuple[Configuration, Occurrence]]:
    """First (configuration, occurrence) in catalog priority order, if any."""
    for conf in entries if entries is not None else catalog():
        occ = next(iter_matches(g, conf), None)
        if occ is not None:
            return conf, occ
    return None


def load_configuration(path: str) -> Configuration:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"malformed configuration JSON: {exc}") from None
    return Configuration.from_json(obj)
