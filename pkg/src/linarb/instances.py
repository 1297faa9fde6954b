"""Named graphs and random plane graphs used by demos and tests."""

from __future__ import annotations

import math
import random
from typing import Optional, Sequence

from .graphs import Graph, PlaneGraph, build_graph, edge, make_plane_graph


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_plane(n: int) -> PlaneGraph:
    g = path_graph(n)
    return make_plane_graph(g, [sorted(g.neighbours(v)) for v in range(n)])


def complete_graph(n: int) -> Graph:
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def k4_plane() -> PlaneGraph:
    return make_plane_graph(
        complete_graph(4), [(1, 3, 2), (2, 3, 0), (0, 3, 1), (0, 1, 2)]
    )


def wheel(k: int) -> Graph:
    """Hub 0 joined to the rim cycle 1..k."""
    edges = [(0, i) for i in range(1, k + 1)]
    edges += [(i, i % k + 1) for i in range(1, k + 1)]
    return build_graph(k + 1, edges)


def wheel_plane(k: int) -> PlaneGraph:
    g = wheel(k)
    rotation = [tuple(range(1, k + 1))]
    for i in range(1, k + 1):
        nxt = i % k + 1
        prev = (i - 2) % k + 1
        rotation.append((nxt, 0, prev))
    return make_plane_graph(g, rotation)


def subdivided_k4() -> Graph:
    """K4 with one edge subdivided; chromatic index 4 despite max degree 3."""
    edges = [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (1, 4)]
    return build_graph(5, edges)


# ---------------------------------------------------------------------------
# Platonic solids, embedded via their coordinates


def _cross(p, q):
    return (
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    )


def _unit(p):
    length = math.sqrt(sum(x * x for x in p))
    return tuple(x / length for x in p)


def _plane_from_points(points: Sequence[tuple[float, float, float]]) -> PlaneGraph:
    """Connect nearest-neighbour pairs and read rotations off the sphere."""
    n = len(points)
    d2 = [
        [sum((a - b) ** 2 for a, b in zip(points[i], points[j])) for j in range(n)]
        for i in range(n)
    ]
    shortest = min(d2[i][j] for i in range(n) for j in range(i + 1, n))
    edges = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if d2[i][j] < shortest * 1.001
    ]
    g = build_graph(n, edges)
    unit = [_unit(p) for p in points]
    rotation = []
    for v in range(n):
        p = unit[v]
        seed = (1.0, 0.0, 0.0) if abs(p[0]) < 0.9 else (0.0, 1.0, 0.0)
        e1 = _unit(_cross(p, seed))
        e2 = _cross(p, e1)
        def angle(w: int) -> float:
            q = unit[w]
            return math.atan2(
                sum(a * b for a, b in zip(q, e2)), sum(a * b for a, b in zip(q, e1))
            )
        rotation.append(tuple(sorted(g.neighbours(v), key=angle)))
    return make_plane_graph(g, rotation)


def icosahedron() -> PlaneGraph:
    phi = (1 + math.sqrt(5)) / 2
    points = []
    for a in (-1.0, 1.0):
        for b in (-phi, phi):
            points.append((0.0, a, b))
            points.append((a, b, 0.0))
            points.append((b, 0.0, a))
    return _plane_from_points(points)


def dodecahedron() -> PlaneGraph:
    phi = (1 + math.sqrt(5)) / 2
    inv = 1 / phi
    points = [(float(a), float(b), float(c)) for a in (-1, 1) for b in (-1, 1) for c in (-1, 1)]
    for a in (-1.0, 1.0):
        for b in (-1.0, 1.0):
            points.append((0.0, a * inv, b * phi))
            points.append((a * inv, b * phi, 0.0))
            points.append((b * phi, 0.0, a * inv))
    return _plane_from_points(points)


# ---------------------------------------------------------------------------
# Random connected plane graphs with bounded degree


def split_face(rotation: list[list[int]], walk: Sequence[int], x: int) -> None:
    """Put a new vertex x inside the triangular face traced as `walk`.

    Mutates the rotation lists in place; the caller appends the three new
    edges.  The rotation positions follow from requiring the three replacement
    faces to trace correctly.
    """
    a, b, c = walk
    rotation[a].insert(rotation[a].index(c) + 1, x)
    rotation[b].insert(rotation[b].index(a) + 1, x)
    rotation[c].insert(rotation[c].index(b) + 1, x)
    rotation.append([b, a, c])


def random_plane_triangulation(n: int, seed: int, max_degree: int = 9) -> PlaneGraph:
    """Random planar triangulation built by repeated face splits.

    Each new vertex lands in a uniformly chosen triangular face whose three
    corners all stay within max_degree; the rotation system is maintained
    through every split, so the result is a valid plane graph by construction.
    """
    if n < 3:
        raise ValueError("need at least 3 vertices")
    for attempt in range(64):
        rng = random.Random(seed * 64 + attempt)
        rotation: list[list[int]] = [[1, 2], [2, 0], [0, 1]]
        edges = [(0, 1), (1, 2), (0, 2)]
        for x in range(3, n):
            pg = make_plane_graph(build_graph(x, edges), rotation)
            eligible = [
                walk
                for walk in pg.faces
                if all(len(rotation[v]) < max_degree for v in walk)
            ]
            if not eligible:
                break  # wedged: every face touches a saturated corner
            a, b, c = eligible[rng.randrange(len(eligible))]
            split_face(rotation, (a, b, c), x)
            edges += [(a, x), (b, x), (c, x)]
        else:
            return make_plane_graph(build_graph(n, edges), rotation)
    raise RuntimeError("no face with spare degree capacity; lower n or raise the cap")


def random_plane_graph(
    n: int,
    seed: int,
    max_degree: int = 9,
    removal_fraction: float = 0.2,
) -> PlaneGraph:
    """Random connected plane graph: a triangulation with some edges deleted.

    Deleting an edge keeps the embedding valid; deletions that would
    disconnect the graph are skipped.
    """
    pg = random_plane_triangulation(n, seed, max_degree)
    rng = random.Random(seed + 1)
    g = pg.graph
    rotation = [list(r) for r in pg.rotation]
    candidates = list(g.edge_list)
    rng.shuffle(candidates)
    removed = 0
    goal = int(len(candidates) * removal_fraction)
    for u, v in candidates:
        if removed >= goal:
            break
        smaller = g.with_edges(remove=[(u, v)])
        if smaller.is_connected():
            g = smaller
            rotation[u].remove(v)
            rotation[v].remove(u)
            removed += 1
    return make_plane_graph(g, rotation)
