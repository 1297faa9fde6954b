"""Edge colorings into linear forests plus matchings.

A coloring maps edges to colors 0..k-1.  With a PartitionSpec of f forests
and m matchings, colors 0..m-1 are matching colors and colors m..m+f-1 are
forest colors.  The headline case (4 forests, 1 matching) therefore uses
color 0 for the matching and 1..4 for the linear forests.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .dsu import RollbackDSU
from .graphs import Edge, Graph, edge

EdgeColoring = dict[Edge, int]

# Per-vertex multiset of colors 0..4, stored as occurrence counts.
Counts = tuple[int, int, int, int, int]


class ColoringError(ValueError):
    """Partial colorings, out-of-range colors, malformed coloring files."""


class SearchSizeError(RuntimeError):
    """Exhaustive search refused because the instance exceeds the edge guard."""


@dataclass(frozen=True)
class PartitionSpec:
    """How many linear-forest colors and how many matching colors to use."""

    forests: int = 4
    matchings: int = 1

    def __post_init__(self) -> None:
        if self.forests < 0 or self.matchings < 0 or self.forests + self.matchings < 1:
            raise ValueError("need non-negative counts and at least one color")

    @property
    def n_colors(self) -> int:
        return self.forests + self.matchings

    def is_matching_color(self, color: int) -> bool:
        return color < self.matchings

    def degree_cap(self, color: int) -> int:
        return 1 if self.is_matching_color(color) else 2


@dataclass(frozen=True)
class Violation:
    """One way a coloring fails to be (forests, matchings)-valid."""

    kind: str  # "matching-degree" | "forest-degree" | "cycle"
    color: int
    vertex: Optional[int] = None
    cycle: Optional[tuple[int, ...]] = None

    def __str__(self) -> str:
        if self.kind == "cycle":
            return f"monochromatic cycle {list(self.cycle or ())} in color {self.color}"
        cap = 1 if self.kind == "matching-degree" else 2
        return f"color {self.color} has degree > {cap} at vertex {self.vertex}"


def normalize_coloring(c: Mapping[tuple[int, int], int]) -> EdgeColoring:
    out: EdgeColoring = {}
    for (u, v), color in c.items():
        e = edge(u, v)
        if e in out and out[e] != color:
            raise ColoringError(f"edge {e} colored twice with different colors")
        out[e] = color
    return out


def color_degree(c: Mapping[Edge, int], v: int, i: int) -> int:
    """Number of edges at v carrying color i."""
    return sum(1 for (a, b), col in c.items() if col == i and v in (a, b))


def _find_cycle(n: int, edges_of_color: list[Edge], closing: Edge) -> tuple[int, ...]:
    """Recover a cycle through `closing` given that its ends are connected."""
    u, v = closing
    adj: dict[int, list[int]] = {}
    for a, b in edges_of_color:
        if (a, b) == closing:
            continue
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    prev = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for y in adj.get(x, ()):
            if y not in prev:
                prev[y] = x
                queue.append(y)
    path = [v]
    while path[-1] != u:
        path.append(prev[path[-1]])
    return tuple(reversed(path))


def validate(g: Graph, c: Mapping[Edge, int], spec: PartitionSpec = PartitionSpec()) -> list[Violation]:
    """All violations of the linear-forests-plus-matchings structure.

    The coloring must be total on E(g) with colors inside the spec's range;
    anything else raises.  An empty list means the coloring is valid.
    """
    c = normalize_coloring(c)
    domain = set(c)
    if domain != set(g.edges):
        missing = sorted(set(g.edges) - domain)
        extra = sorted(domain - set(g.edges))
        raise ColoringError(f"coloring is not total on E(g): missing={missing} extra={extra}")
    for e, color in c.items():
        if not 0 <= color < spec.n_colors:
            raise ColoringError(f"color {color} on edge {e} outside 0..{spec.n_colors - 1}")

    violations: list[Violation] = []
    by_color: dict[int, list[Edge]] = {i: [] for i in range(spec.n_colors)}
    for e in sorted(c):
        by_color[c[e]].append(e)
    for color in range(spec.n_colors):
        degree: dict[int, int] = {}
        for u, v in by_color[color]:
            degree[u] = degree.get(u, 0) + 1
            degree[v] = degree.get(v, 0) + 1
        cap = spec.degree_cap(color)
        kind = "matching-degree" if spec.is_matching_color(color) else "forest-degree"
        for v in sorted(degree):
            if degree[v] > cap:
                violations.append(Violation(kind, color, vertex=v))
        if not spec.is_matching_color(color):
            dsu = RollbackDSU(g.n)
            for e in by_color[color]:
                if not dsu.union(*e):
                    violations.append(
                        Violation("cycle", color, cycle=_find_cycle(g.n, by_color[color], e))
                    )
    return violations


def brute_force_partition(
    g: Graph,
    spec: PartitionSpec = PartitionSpec(),
    max_edges: int = 25,
) -> Optional[EdgeColoring]:
    """Exhaustive backtracking for a valid coloring; None if none exists.

    Deterministic: edges are tried in descending degree-sum order (ties by
    edge index) and colors in ascending order; the first full assignment in
    that order is returned.
    """
    edges = list(g.edge_list)
    if len(edges) > max_edges:
        raise SearchSizeError(f"{len(edges)} edges exceeds the guard of {max_edges}")
    index = {e: i for i, e in enumerate(edges)}
    edges.sort(key=lambda e: (-(g.degree(e[0]) + g.degree(e[1])), index[e]))

    n_colors = spec.n_colors
    counts = [[0] * n_colors for _ in range(g.n)]
    forests = {i: RollbackDSU(g.n) for i in range(spec.matchings, n_colors)}
    assignment: EdgeColoring = {}

    def place(k: int) -> bool:
        if k == len(edges):
            return True
        u, v = edges[k]
        for color in range(n_colors):
            cap = spec.degree_cap(color)
            if counts[u][color] >= cap or counts[v][color] >= cap:
                continue
            dsu = forests.get(color)
            if dsu is not None:
                mark = dsu.mark()
                if not dsu.union(u, v):
                    continue
            counts[u][color] += 1
            counts[v][color] += 1
            assignment[(u, v)] = color
            if place(k + 1):
                return True
            del assignment[(u, v)]
            counts[u][color] -= 1
            counts[v][color] -= 1
            if dsu is not None:
                dsu.rollback(mark)
        return False

    return dict(assignment) if place(0) else None


# ---------------------------------------------------------------------------
# Outer coloring classes


def counts_of(colors: Iterable[int]) -> Counts:
    out = [0, 0, 0, 0, 0]
    for c in colors:
        out[c] += 1
    return tuple(out)  # type: ignore[return-value]


def counts_to_colors(counts: Counts) -> tuple[int, ...]:
    out: list[int] = []
    for color, k in enumerate(counts):
        out.extend([color] * k)
    return tuple(out)


@dataclass(frozen=True)
class ColoringClass:
    """An outer coloring class: per-vertex color multisets plus path triples.

    multisets maps each configuration vertex to the multiset (as counts over
    colors 0..4) of its outer edge colors.  paths holds triples (i, u, v)
    recording a color-i path outside the configuration between u and v, each
    of which sees color i on exactly one outer edge.
    """

    multisets: tuple[tuple[int, Counts], ...]
    paths: tuple[tuple[int, int, int], ...]

    @staticmethod
    def make(
        multisets: Mapping[int, Counts], paths: Iterable[tuple[int, int, int]] = ()
    ) -> "ColoringClass":
        norm_paths = tuple(sorted((i, min(u, v), max(u, v)) for i, u, v in paths))
        return ColoringClass(tuple(sorted(multisets.items())), norm_paths)

    def counts(self, v: int) -> Counts:
        for vertex, counts in self.multisets:
            if vertex == v:
                return counts
        raise KeyError(v)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.multisets)

    def colors_at(self, v: int) -> tuple[int, ...]:
        return counts_to_colors(self.counts(v))

    def to_json(self) -> dict:
        return {
            "multisets": {str(v): list(counts_to_colors(c)) for v, c in self.multisets},
            "paths": [list(t) for t in self.paths],
        }

    @staticmethod
    def from_json(obj: dict) -> "ColoringClass":
        multisets = {int(v): counts_of(colors) for v, colors in obj["multisets"].items()}
        return ColoringClass.make(multisets, [tuple(t) for t in obj["paths"]])


def extract_outer_class(
    g: Graph,
    c: Mapping[Edge, int],
    h_vertices: Iterable[int],
    h_edges: Iterable[Edge],
) -> ColoringClass:
    """The (multisets, paths) class of a coloring seen from a subgraph.

    c may be partial on E(g) (typically everything except one anchor edge)
    but must be a valid (4, 1) coloring of the edges it does cover.  Outer
    edges are the colored edges not in h_edges.
    """
    c = normalize_coloring(c)
    h_vertex_set = set(h_vertices)
    h_edge_set = {edge(*e) for e in h_edges}
    if not h_edge_set <= set(g.edges):
        raise ColoringError("h_edges must be edges of g")
    colored = Graph(g.n, frozenset(c))
    problems = validate(colored, c, PartitionSpec(4, 1))
    if problems:
        raise ColoringError(f"invalid coloring: {problems[0]}")

    outer = {e: col for e, col in c.items() if e not in h_edge_set}
    multisets = {
        v: counts_of(col for (a, b), col in outer.items() if v in (a, b))
        for v in sorted(h_vertex_set)
    }

    paths = set()
    for color in (1, 2, 3, 4):
        adj: dict[int, list[int]] = {}
        for (a, b), col in outer.items():
            if col == color:
                adj.setdefault(a, []).append(b)
                adj.setdefault(b, []).append(a)
        for u in sorted(h_vertex_set):
            if len(adj.get(u, ())) != 1:
                continue
            prev, cur = u, adj[u][0]
            while len(adj[cur]) == 2:
                nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
                prev, cur = cur, nxt
            if cur in h_vertex_set and u < cur:
                paths.add((color, u, cur))
    return ColoringClass.make(multisets, paths)


# ---------------------------------------------------------------------------
# Coloring files: one line per edge, "u v color", '#' comments allowed.


def parse_coloring(text: str) -> EdgeColoring:
    out: EdgeColoring = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ColoringError(f"line {lineno}: expected 'u v color'")
        try:
            u, v, color = (int(p) for p in parts)
        except ValueError:
            raise ColoringError(f"line {lineno}: expected integers") from None
        if u == v:
            raise ColoringError(f"line {lineno}: loop edge")
        e = edge(u, v)
        if e in out:
            raise ColoringError(f"line {lineno}: duplicate edge {e}")
        out[e] = color
    return out


def format_coloring(c: Mapping[Edge, int]) -> str:
    lines = [f"{u} {v} {color}" for (u, v), color in sorted(normalize_coloring(c).items())]
    return "\n".join(lines) + "\n"
