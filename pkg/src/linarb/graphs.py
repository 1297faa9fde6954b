"""Simple graphs, plane embeddings, face tracing and segments.

Graphs are immutable: every operation that "modifies" a graph returns a new
one.  Plane embeddings are rotation systems (a cyclic order of neighbours per
vertex); faces are derived from the rotation system by walk tracing, never
from coordinates.
"""

from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

Edge = tuple[int, int]

WEAK = "weak"
SEMI_WEAK = "semi-weak"
PLAIN = "plain"


class GraphError(ValueError):
    """Malformed graph construction: loops, duplicate edges, bad vertex ids."""


class FormatError(ValueError):
    """Unparseable graph6 text, rotation file or coloring file."""


class EmbeddingError(ValueError):
    """Rotation system that cannot be a planar embedding of its graph."""


class DegreeCapError(ValueError):
    """A vertex degree exceeds the cap an operation supports."""


class NoSegmentsNotice(UserWarning):
    """Issued when segments are requested at a vertex of degree below 2."""


def edge(u: int, v: int) -> Edge:
    """The normalized (sorted) form of an undirected edge."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertex set {0, ..., n-1}."""

    n: int
    edges: frozenset[Edge]

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def edge_list(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbours(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return edge(u, v) in self.edges

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = {0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for w in self.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == self.n

    def with_edges(self, add: Iterable[Edge] = (), remove: Iterable[Edge] = ()) -> Graph:
        """A copy with `remove` deleted and `add` inserted (validated)."""
        edges = set(self.edges)
        for e in remove:
            e = edge(*e)
            if e not in edges:
                raise GraphError(f"cannot remove missing edge {e}")
            edges.remove(e)
        for e in add:
            u, v = e
            if u == v:
                raise GraphError(f"loop edge ({u},{v})")
            e = edge(u, v)
            if e in edges:
                raise GraphError(f"edge {e} already present")
            edges.add(e)
        return Graph(self.n, frozenset(edges))

    def without_vertex(self, v: int) -> Graph:
        """Delete all edges at v; the vertex itself stays as an isolated id."""
        return Graph(self.n, frozenset(e for e in self.edges if v not in e))


def build_graph(n: int, edge_list: Iterable[tuple[int, int]]) -> Graph:
    """Build a simple graph, rejecting loops, duplicates and bad indices."""
    edges: set[Edge] = set()
    for u, v in edge_list:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"vertex out of range in edge ({u},{v}) for n={n}")
        if u == v:
            raise GraphError(f"loop edge ({u},{v})")
        e = edge(u, v)
        if e in edges:
            raise GraphError(f"duplicate edge {e}")
        edges.add(e)
    return Graph(n, frozenset(edges))


# ---------------------------------------------------------------------------
# graph6 interchange format
#
# The format packs the upper triangle of the adjacency matrix, column by
# column, into 6-bit groups printed as ASCII 63..126.  Sizes up to 62 use a
# single size byte, larger sizes an 18-bit or 36-bit extension.


def _g6_size(data: list[int]) -> tuple[int, int]:
    """Decode the size prefix; returns (n, index of first body byte)."""
    if not data:
        raise FormatError("empty graph6 string")
    if data[0] <= 62:
        return data[0], 1
    if len(data) >= 2 and data[1] == 63:
        if len(data) < 8:
            raise FormatError("truncated graph6 size prefix")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | b
        return n, 8
    if len(data) < 4:
        raise FormatError("truncated graph6 size prefix")
    n = 0
    for b in data[1:4]:
        n = (n << 6) | b
    return n, 4


def parse_graph6(text: str) -> Graph:
    """Parse one graph6 string (optional '>>graph6<<' header allowed)."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):].strip()
    if not s:
        raise FormatError("empty graph6 string")
    data = []
    for ch in s:
        b = ord(ch) - 63
        if not 0 <= b <= 63:
            raise FormatError(f"invalid graph6 character {ch!r}")
        data.append(b)
    n, at = _g6_size(data)
    nbits = n * (n - 1) // 2
    body = data[at:]
    if len(body) != (nbits + 5) // 6:
        raise FormatError(
            f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6} for n={n}"
        )
    bits = []
    for b in body:
        bits.extend((b >> shift) & 1 for shift in (5, 4, 3, 2, 1, 0))
    if any(bits[nbits:]):
        raise FormatError("nonzero padding bits in graph6 body")
    edges = []
    k = 0
    for v in range(1, n):
        for u in range(v):
            if bits[k]:
                edges.append((u, v))
            k += 1
    return build_graph(n, edges)


def encode_graph6(g: Graph) -> str:
    """Canonical graph6 encoding of a graph (no header)."""
    n = g.n
    if n <= 62:
        prefix = [n]
    elif n <= 258047:
        prefix = [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    else:
        prefix = [63, 63] + [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]
    bits = []
    for v in range(1, n):
        for u in range(v):
            bits.append(1 if g.has_edge(u, v) else 0)
    while len(bits) % 6:
        bits.append(0)
    body = []
    for i in range(0, len(bits), 6):
        b = 0
        for bit in bits[i : i + 6]:
            b = (b << 1) | bit
        body.append(b)
    return "".join(chr(b + 63) for b in prefix + body)


# ---------------------------------------------------------------------------
# Plane graphs


@dataclass(frozen=True)
class PlaneGraph:
    """A graph together with a rotation system.

    rotation[v] lists the neighbours of v in clockwise order; it must be a
    permutation of the adjacency list of v.
    """

    graph: Graph
    rotation: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.rotation) != self.graph.n:
            raise EmbeddingError("rotation system must cover every vertex")
        for v, order in enumerate(self.rotation):
            if set(order) != set(self.graph.adjacency[v]) or len(order) != len(
                self.graph.adjacency[v]
            ):
                raise EmbeddingError(
                    f"rotation at vertex {v} is not a permutation of its neighbours"
                )

    @cached_property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        return trace_faces(self)

    @cached_property
    def segments(self) -> tuple[Segment, ...]:
        """All segments, in (face index, walk position) order."""
        out = []
        for face_id, walk in enumerate(self.faces):
            length = len(walk)
            for i, y in enumerate(walk):
                x = walk[i - 1]
                z = walk[(i + 1) % length]
                out.append(Segment(x, y, z, face_id, length))
        return tuple(out)


@dataclass(frozen=True)
class Segment:
    """Three consecutive vertices (x, y, z) on a facial walk, owned by y.

    The length of a segment is the length of its face; the segment is
    triangular exactly when that face is a triangle.
    """

    x: int
    y: int
    z: int
    face: int
    length: int

    @property
    def is_triangular(self) -> bool:
        return self.length == 3


def make_plane_graph(g: Graph, rotation: Sequence[Sequence[int]]) -> PlaneGraph:
    return PlaneGraph(g, tuple(tuple(r) for r in rotation))


def trace_faces(pg: PlaneGraph) -> tuple[tuple[int, ...], ...]:
    """Trace all facial walks of a connected plane graph.

    Every directed edge lies on exactly one walk.  A walk of length l is
    returned as a vertex tuple (v0, ..., v_{l-1}); its darts are
    (v0,v1), ..., (v_{l-1},v0).  Raises if the graph is disconnected or if
    the rotation system is not planar (Euler check fails).
    """
    g = pg.graph
    if not g.is_connected():
        raise EmbeddingError("face tracing is defined for connected graphs only")
    if g.n == 1:
        # A single vertex bounds one face with an empty walk.
        return ((),)
    pos = [
        {u: i for i, u in enumerate(order)} for order in pg.rotation
    ]
    faces: list[tuple[int, ...]] = []
    seen: set[tuple[int, int]] = set()
    for u0, v0 in sorted((u, v) for u, vs in enumerate(pg.rotation) for v in vs):
        if (u0, v0) in seen:
            continue
        walk = []
        u, v = u0, v0
        while (u, v) not in seen:
            seen.add((u, v))
            walk.append(u)
            order = pg.rotation[v]
            u, v = v, order[(pos[v][u] + 1) % len(order)]
        faces.append(tuple(walk))
    n, m, f = g.n, len(g.edges), len(faces)
    if n - m + f != 2:
        raise EmbeddingError(
            f"rotation system is not a planar embedding: V-E+F = {n}-{m}+{f} != 2"
        )
    return tuple(faces)


def vertex_segments(pg: PlaneGraph, v: int) -> list[Segment]:
    """The degree(v) segments incident with v, one per facial-walk visit.

    A vertex of degree below 2 bounds no segment; an empty list is returned
    and a NoSegmentsNotice is issued.
    """
    if pg.graph.degree(v) < 2:
        warnings.warn(f"vertex {v} has degree < 2 and no segments", NoSegmentsNotice)
        return []
    return [s for s in pg.segments if s.y == v]


def classify_neighbour(g: Graph, u: int, v: int) -> str:
    """Classify the edge uv by its triangle count: 2 -> weak, 1 -> semi-weak.

    Any other count (0 or 3 and more) is plain.
    """
    if not g.has_edge(u, v):
        raise GraphError(f"({u},{v}) is not an edge")
    triangles = len(g.adjacency[u] & g.adjacency[v])
    if triangles == 2:
        return WEAK
    if triangles == 1:
        return SEMI_WEAK
    return PLAIN


# ---------------------------------------------------------------------------
# Rotation system files
#
# One line per vertex: "v: n1 n2 ... nk" with neighbours in clockwise order.
# Blank lines and '#' comments are skipped.  Vertex ids are 0-based and every
# vertex in {0, ..., max id} must have a line (possibly with no neighbours).


def parse_rotation_system(text: str) -> PlaneGraph:
    rows: dict[int, list[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, tail = line.partition(":")
        if not sep:
            raise FormatError(f"line {lineno}: expected 'v: n1 n2 ...'")
        try:
            v = int(head)
            neighbours = [int(t) for t in tail.split()]
        except ValueError as exc:
            raise FormatError(f"line {lineno}: {exc}") from None
        if v in rows:
            raise FormatError(f"line {lineno}: duplicate vertex {v}")
        rows[v] = neighbours
    if not rows:
        raise FormatError("empty rotation file")
    n = max(rows) + 1
    if set(rows) != set(range(n)):
        missing = sorted(set(range(n)) - set(rows))
        raise FormatError(f"missing rotation lines for vertices {missing}")
    edges = set()
    for v, neighbours in rows.items():
        if len(set(neighbours)) != len(neighbours):
            raise FormatError(f"vertex {v}: repeated neighbour")
        for w in neighbours:
            if not 0 <= w < n:
                raise FormatError(f"vertex {v}: neighbour {w} out of range")
            if w == v:
                raise FormatError(f"vertex {v}: loop")
            edges.add(edge(v, w))
    for u, v in edges:
        if u not in rows[v] or v not in rows[u]:
            raise FormatError(f"edge ({u},{v}) is listed on one side only")
    g = Graph(n, frozenset(edges))
    return make_plane_graph(g, [rows[v] for v in range(n)])


def format_rotation_system(pg: PlaneGraph) -> str:
    lines = [
        f"{v}: " + " ".join(str(w) for w in order) if order else f"{v}:"
        for v, order in enumerate(pg.rotation)
    ]
    return "\n".join(lines) + "\n"
