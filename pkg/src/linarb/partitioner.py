"""Constructive edge partition into four linear forests and a matching.

Planar hosts of maximum degree 9 always contain a catalog configuration, so
the partitioner repeatedly finds one, shrinks the graph (removing the anchor
edge, or performing the two-vertex surgery for a vertex with two
2-neighbours), recursively colors the smaller graph and extends the coloring
back.  Tiny graphs are colored by brute force directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .coloring import (
    ColoringClass,
    EdgeColoring,
    PartitionSpec,
    brute_force_partition,
    extract_outer_class,
)
from .configurations import Configuration, Occurrence, catalog, find_any
from .graphs import DegreeCapError, Edge, Graph, edge
from .reducer import find_consistent_inner

MAX_DEGREE = 9
BASE_EDGES = 6

ANCHOR_DELETED = "anchor-deleted"
TWO_NEIGHBOUR_MERGED = "two-neighbour-merged"
TWO_NEIGHBOUR_BYPASSED = "two-neighbour-bypassed"


class ReductionError(RuntimeError):
    """No configuration occurs: the input is not planar or out of scope."""


class ExtensionError(RuntimeError):
    """A certified configuration failed to extend; indicates a bug."""


@dataclass(frozen=True)
class ReductionStep:
    """One graph-shrinking move and everything needed to undo it."""

    configuration: str
    occurrence: Occurrence
    kind: str
    removed_edges: tuple[Edge, ...]
    added_edges: tuple[Edge, ...]
    anchor_image: Optional[Edge] = None
    # For the two-2-neighbour surgery: (centre, leaf x, leaf y, outer a, outer b).
    surgery_vertices: Optional[tuple[int, int, int, int, int]] = None

    def to_json(self) -> dict:
        out = {
            "configuration": self.configuration,
            "kind": self.kind,
            "images": list(self.occurrence.images),
            "removed_edges": [list(e) for e in self.removed_edges],
            "added_edges": [list(e) for e in self.added_edges],
        }
        if self.anchor_image is not None:
            out["anchor_image"] = list(self.anchor_image)
        return out


_CATALOG = None
_BY_NAME = None


def _entries() -> list[Configuration]:
    global _CATALOG, _BY_NAME
    if _CATALOG is None:
        _CATALOG = catalog()
        _BY_NAME = {c.name: c for c in _CATALOG}
    return _CATALOG


def _entry(name: str) -> Configuration:
    _entries()
    return _BY_NAME[name]


def reduce_step(g: Graph) -> tuple[Graph, ReductionStep]:
    """Shrink g by one configuration; the edge count strictly decreases."""
    if not g.edges:
        raise ReductionError("cannot reduce an edgeless graph")
    hit = find_any(g, _entries())
    if hit is None:
        raise ReductionError(
            "no reducible configuration occurs; input not planar or out of scope"
        )
    conf, occ = hit
    if conf.family == "C3":
        return _c3_surgery(g, conf, occ)
    anchor_image = occ.edge_image(conf.anchor)
    step = ReductionStep(
        conf.name, occ, ANCHOR_DELETED, (anchor_image,), (), anchor_image=anchor_image
    )
    return g.with_edges(remove=[anchor_image]), step


def _c3_surgery(g: Graph, conf: Configuration, occ: Occurrence) -> tuple[Graph, ReductionStep]:
    x, v, y = occ.images
    # With no low-degree-sum edge present both leaves have degree exactly 2.
    assert g.degree(x) == 2 and g.degree(y) == 2, "C3 matched although C1 occurs"
    a = next(w for w in g.neighbours(x) if w != v)
    b = next(w for w in g.neighbours(y) if w != v)
    if a == b:
        assert not g.has_edge(a, v), "C3 surgery blocked although C2 is absent"
        removed = (edge(x, v), edge(x, a))
        added = (edge(a, v),)
        kind = TWO_NEIGHBOUR_MERGED
    else:
        assert not g.has_edge(a, v) and not g.has_edge(v, b), (
            "C3 surgery blocked although C2 is absent"
        )
        removed = (edge(a, x), edge(x, v), edge(v, y), edge(y, b))
        added = (edge(a, v), edge(v, b))
        kind = TWO_NEIGHBOUR_BYPASSED
    step = ReductionStep(conf.name, occ, kind, removed, added,
                         surgery_vertices=(v, x, y, a, b))
    return g.with_edges(add=added, remove=removed), step


def extend(g: Graph, step: ReductionStep, sub_coloring: EdgeColoring) -> EdgeColoring:
    """Turn a valid coloring of the reduced graph into one of g."""
    if step.kind == TWO_NEIGHBOUR_MERGED:
        return _extend_merged(step, sub_coloring)
    if step.kind == TWO_NEIGHBOUR_BYPASSED:
        return _extend_bypassed(step, sub_coloring)
    if step.configuration.startswith("C1("):
        return _extend_low_sum_edge(step, sub_coloring)
    return _extend_by_class(g, step, sub_coloring)


def _extend_low_sum_edge(step: ReductionStep, sub: EdgeColoring) -> EdgeColoring:
    """Color the restored edge directly, as the degree sum leaves room.

    Some forest color sees at most one edge across both endpoints, or all
    four are saturated and then neither endpoint touches the matching.
    """
    u, v = step.anchor_image  # type: ignore[misc]
    counts = {u: [0] * 5, v: [0] * 5}
    for (a, b), color in sub.items():
        for w in (a, b):
            if w in counts:
                counts[w][color] += 1
    c = dict(sub)
    for color in (1, 2, 3, 4):
        if counts[u][color] + counts[v][color] <= 1:
            c[(u, v) if u < v else (v, u)] = color
            return c
    assert counts[u][0] == 0 and counts[v][0] == 0, "low-degree-sum extension failed"
    c[(u, v) if u < v else (v, u)] = 0
    return c


def _extend_merged(step: ReductionStep, sub: EdgeColoring) -> EdgeColoring:
    v, x, y, a, _ = step.surgery_vertices  # type: ignore[misc]
    alpha = sub[edge(a, y)]
    beta = sub[edge(y, v)]
    gamma = sub[edge(a, v)]
    c = dict(sub)
    del c[edge(a, v)]
    c[edge(a, y)] = alpha
    c[edge(y, v)] = gamma
    c[edge(a, x)] = gamma
    c[edge(x, v)] = beta
    return c


def _extend_bypassed(step: ReductionStep, sub: EdgeColoring) -> EdgeColoring:
    v, x, y, a, b = step.surgery_vertices  # type: ignore[misc]
    alpha = sub[edge(a, v)]
    beta = sub[edge(v, b)]
    c = dict(sub)
    del c[edge(a, v)]
    del c[edge(v, b)]
    c[edge(a, x)] = alpha
    c[edge(x, v)] = beta
    c[edge(v, y)] = alpha
    c[edge(y, b)] = beta
    return c


def _extend_by_class(g: Graph, step: ReductionStep, sub: EdgeColoring) -> EdgeColoring:
    """Re-solve the configuration's edges against the concrete outer class."""
    conf = _entry(step.configuration)
    occ = step.occurrence
    h_vertices = occ.images
    h_edges = [occ.edge_image(e) for e in conf.pattern.edge_list]
    host_class = extract_outer_class(g, sub, h_vertices, h_edges)
    back = {host: p for p, host in enumerate(occ.images)}
    cclass = ColoringClass.make(
        {p: host_class.counts(host) for host, p in back.items()},
        [(i, back[s], back[t]) for i, s, t in host_class.paths],
    )
    inner = find_consistent_inner(conf, cclass, include_anchor=True)
    if inner is None:
        raise ExtensionError(
            f"{step.configuration} did not extend; configuration not certified?"
        )
    c = dict(sub)
    for pattern_edge, color in inner.items():
        c[occ.edge_image(pattern_edge)] = color
    return c


def partition(g: Graph, trace: Optional[list] = None) -> EdgeColoring:
    """A coloring of E(g) into four linear forests (1..4) and a matching (0).

    Guaranteed for simple planar graphs of maximum degree at most 9; other
    inputs either succeed anyway or raise ReductionError.
    """
    if g.max_degree > MAX_DEGREE:
        raise DegreeCapError(f"maximum degree {g.max_degree} exceeds {MAX_DEGREE}")
    stack: list[tuple[Graph, ReductionStep]] = []
    current = g
    while len(current.edges) > BASE_EDGES:
        smaller, step = reduce_step(current)
        if len(smaller.edges) >= len(current.edges):
            raise ReductionError(f"step {step.kind} did not shrink the graph")
        stack.append((current, step))
        current = smaller
    coloring = brute_force_partition(current, PartitionSpec(4, 1))
    if coloring is None:
        raise ReductionError("base graph admits no partition; input out of scope")
    for host, step in reversed(stack):
        before = coloring
        coloring = extend(host, step, before)
        if trace is not None:
            record = step.to_json()
            record["restored"] = {
                f"{e[0]} {e[1]}": color
                for e, color in sorted(coloring.items())
                if before.get(e) != color
            }
            trace.append(record)
    if trace is not None:
        trace.reverse()
    return coloring
