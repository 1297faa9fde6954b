"""Standard-proof reducibility checking for configurations.

The standard proof removes the anchor edge, assumes the rest of the host is
colored, and asks whether the configuration's own edges can always be
recolored.  Host colorings are abstracted into classes: a multiset of outer
colors per configuration vertex plus the set of outer monochromatic paths
joining configuration vertices.  A configuration is reducible when every
class that admits an anchor-free inner coloring also admits one that colors
the anchor.

Classes are enumerated in a fixed canonical order (counts vectors ascending,
vertex 0 varying slowest; path sets with the empty set first), so verdicts,
class counts and witnesses are deterministic and independent of the worker
count.  Color symmetry is deliberately not exploited unless requested.
"""

from __future__ import annotations

import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import prod
from typing import Iterator, Optional

from .coloring import ColoringClass, Counts
from .configurations import Configuration
from .graphs import Edge, edge

OuterMultisets = tuple[Counts, ...]  # indexed by pattern vertex
PathTriple = tuple[int, int, int]  # (color, u, v) with u < v
OuterPathSet = tuple[PathTriple, ...]

FOREST_COLORS = (1, 2, 3, 4)

REDUCIBLE = "reducible"
NOT_REDUCIBLE = "not-reducible"


class ReducerError(ValueError):
    """Invalid coloring class handed to the inner search."""


class CheckpointMismatch(ValueError):
    """Checkpoint written for a different configuration, anchor or mode."""


class TimeBudgetExceeded(RuntimeError):
    """Raised when a run stops on its time budget; carries the checkpoint."""

    def __init__(self, checkpoint: dict, path: Optional[str]):
        super().__init__("time budget exhausted")
        self.checkpoint = checkpoint
        self.path = path


@lru_cache(maxsize=None)
def vertex_multisets(k: int) -> tuple[Counts, ...]:
    """All outer color multisets for a vertex with k outer slots.

    At most one copy of color 0 and two of each forest color; ordered by
    ascending counts vector (c0, c1, c2, c3, c4).
    """
    out = []
    for c0 in range(2):
        for c1 in range(3):
            for c2 in range(3):
                for c3 in range(3):
                    c4 = k - c0 - c1 - c2 - c3
                    if 0 <= c4 <= 2:
                        out.append((c0, c1, c2, c3, c4))
    return tuple(out)


@lru_cache(maxsize=None)
def _partial_matchings(items: tuple[int, ...]) -> tuple[tuple[tuple[int, int], ...], ...]:
    """All partial matchings on an ordered candidate tuple, empty one first."""
    if len(items) < 2:
        return ((),)
    first, rest = items[0], items[1:]
    out = list(_partial_matchings(rest))
    for j, other in enumerate(rest):
        remaining = rest[:j] + rest[j + 1 :]
        for m in _partial_matchings(remaining):
            out.append(((first, other),) + m)
    return tuple(out)


_COLOR_PERMS = tuple((0,) + p for p in itertools.permutations(FOREST_COLORS))


def _permuted(counts: Counts, perm: tuple[int, ...]) -> Counts:
    out = [0] * 5
    for color, k in enumerate(counts):
        out[perm[color]] = k
    return tuple(out)  # type: ignore[return-value]


def _is_canonical(assignment: OuterMultisets) -> bool:
    return all(
        tuple(_permuted(c, perm) for c in assignment) >= assignment
        for perm in _COLOR_PERMS[1:]
    )


class _Problem:
    """Precomputed enumeration data for one (configuration, anchor) pair."""

    def __init__(self, conf: Configuration, anchor: Edge, symmetry: bool):
        anchor = edge(*anchor)
        pattern = conf.pattern
        if anchor not in pattern.edges:
            raise ReducerError(f"anchor {anchor} is not a pattern edge")
        self.conf = conf
        self.anchor = anchor
        self.n = pattern.n
        self.symmetry = symmetry
        self.all_edges: list[Edge] = list(pattern.edge_list)
        self.free_edges: list[Edge] = [e for e in self.all_edges if e != anchor]
        self.slots = tuple(conf.bounds[v] - pattern.degree(v) for v in range(pattern.n))
        self.families = tuple(vertex_multisets(k) for k in self.slots)
        self.radices = tuple(len(f) for f in self.families)
        self.total_assignments = prod(self.radices)

    def assignment_at(self, index: int) -> OuterMultisets:
        digits = []
        for radix in reversed(self.radices):
            digits.append(index % radix)
            index //= radix
        digits.reverse()
        return tuple(self.families[v][d] for v, d in enumerate(digits))


def enumerate_outer_multisets(conf: Configuration) -> Iterator[OuterMultisets]:
    """All per-vertex outer multiset assignments, in canonical order."""
    problem = _Problem(conf, conf.anchor, symmetry=False)
    for index in range(problem.total_assignments):
        yield problem.assignment_at(index)


def enumerate_path_sets(conf: Configuration, ms: OuterMultisets) -> Iterator[OuterPathSet]:
    """All outer path sets compatible with a multiset assignment.

    Candidates for color i are the vertices holding i exactly once; a path
    set is one partial matching of candidates per color.  The empty set
    comes first.
    """
    if len(ms) != conf.pattern.n:
        raise ReducerError("one multiset per pattern vertex required")
    per_color = [
        _partial_matchings(tuple(v for v in range(len(ms)) if ms[v][i] == 1))
        for i in FOREST_COLORS
    ]
    for combo in itertools.product(*per_color):
        yield tuple(
            (color, u, v)
            for color, matching in zip(FOREST_COLORS, combo)
            for (u, v) in matching
        )


def _search_inner(
    n: int,
    inner_edges: list[Edge],
    assignment: OuterMultisets,
    path_set: OuterPathSet,
) -> Optional[list[int]]:
    """One inner coloring consistent with the class, or None.

    Constraints: at most two edges of each forest color and one matching
    edge per vertex counting the outer multiset, and no monochromatic cycle
    in inner edges plus one virtual edge per path triple.
    """
    avail = [
        [1 - counts[0], 2 - counts[1], 2 - counts[2], 2 - counts[3], 2 - counts[4]]
        for counts in assignment
    ]
    parents = [list(range(n)) for _ in range(5)]

    def find(parent: list[int], x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    for color, u, v in path_set:
        parent = parents[color]
        ru, rv = find(parent, u), find(parent, v)
        if ru == rv:
            return None
        parent[ru] = rv

    m = len(inner_edges)
    colors = [-1] * m
    trail: list[Optional[tuple[int, int]]] = []

    def admissible(eidx: int) -> list[int]:
        a, b = inner_edges[eidx]
        opts = []
        if avail[a][0] > 0 and avail[b][0] > 0:
            opts.append(0)
        for c in FOREST_COLORS:
            if (
                avail[a][c] > 0
                and avail[b][c] > 0
                and find(parents[c], a) != find(parents[c], b)
            ):
                opts.append(c)
        return opts

    def assign(eidx: int, c: int) -> None:
        a, b = inner_edges[eidx]
        avail[a][c] -= 1
        avail[b][c] -= 1
        if c:
            parent = parents[c]
            ra, rb = find(parent, a), find(parent, b)
            parent[ra] = rb
            trail.append((c, ra))
        else:
            trail.append(None)
        colors[eidx] = c

    def unassign(eidx: int, c: int) -> None:
        a, b = inner_edges[eidx]
        avail[a][c] += 1
        avail[b][c] += 1
        entry = trail.pop()
        if entry is not None:
            parents[entry[0]][entry[1]] = entry[1]
        colors[eidx] = -1

    def solve(uncolored: list[int]) -> bool:
        if not uncolored:
            return True
        best = -1
        best_opts: list[int] = []
        for eidx in uncolored:
            opts = admissible(eidx)
            if not opts:
                return False
            if best < 0 or len(opts) < len(best_opts):
                best, best_opts = eidx, opts
                if len(opts) == 1:
                    break
        rest = [e for e in uncolored if e != best]
        for c in best_opts:
            assign(best, c)
            if solve(rest):
                return True
            unassign(best, c)
        return False

    return colors if solve(list(range(m))) else None


def _class_to_arrays(conf: Configuration, cclass: ColoringClass) -> tuple[OuterMultisets, OuterPathSet]:
    pattern = conf.pattern
    if set(cclass.vertices) != set(range(pattern.n)):
        raise ReducerError("class must cover exactly the pattern vertices")
    assignment = tuple(cclass.counts(v) for v in range(pattern.n))
    for v, counts in enumerate(assignment):
        if counts[0] > 1 or any(c > 2 for c in counts[1:]):
            raise ReducerError(f"multiset at vertex {v} breaks the multiplicity caps")
        if sum(counts) > conf.bounds[v] - pattern.degree(v):
            raise ReducerError(f"multiset at vertex {v} larger than its outer slots")
    endpoints = set()
    for color, u, v in cclass.paths:
        if color not in FOREST_COLORS or u == v:
            raise ReducerError(f"bad path triple {(color, u, v)}")
        if assignment[u][color] != 1 or assignment[v][color] != 1:
            raise ReducerError(
                f"path triple {(color, u, v)} endpoints must hold color {color} exactly once"
            )
        for end in (u, v):
            if (end, color) in endpoints:
                raise ReducerError(f"vertex {end} is an endpoint of two color-{color} paths")
            endpoints.add((end, color))
    return assignment, cclass.paths


def find_consistent_inner(
    conf: Configuration,
    cclass: ColoringClass,
    include_anchor: bool,
    anchor: Optional[Edge] = None,
) -> Optional[dict[Edge, int]]:
    """An inner coloring consistent with the class, or None if impossible.

    With include_anchor every pattern edge is colored, otherwise the anchor
    stays uncolored.  Works for classes with fewer outer edges than the caps
    allow, which is what the partitioner extracts from concrete hosts.
    """
    anchor = edge(*(anchor if anchor is not None else conf.anchor))
    assignment, path_set = _class_to_arrays(conf, cclass)
    inner = [e for e in conf.pattern.edge_list if include_anchor or e != anchor]
    result = _search_inner(conf.pattern.n, inner, assignment, path_set)
    if result is None:
        return None
    return {e: c for e, c in zip(inner, result)}


# ---------------------------------------------------------------------------
# Whole-configuration check


@dataclass
class ReducibilityReport:
    configuration: str
    anchor: Edge
    classes_total: int
    classes_feasible: int
    verdict: str
    witness: Optional[ColoringClass]
    seconds: float
    anchor_policy: str = "default"
    symmetry: bool = False

    @property
    def reducible(self) -> bool:
        return self.verdict == REDUCIBLE

    def to_json(self) -> dict:
        out = {
            "config": self.configuration,
            "anchor": list(self.anchor),
            "classes_total": self.classes_total,
            "classes_feasible": self.classes_feasible,
            "verdict": self.verdict,
            "seconds": round(self.seconds, 6),
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def _scan_range(problem: _Problem, start: int, end: int):
    """Scan assignments [start, end); returns counts and the first witness."""
    examined = feasible = 0
    n = problem.n
    all_edges = problem.all_edges
    free_edges = problem.free_edges
    for index in range(start, end):
        assignment = problem.assignment_at(index)
        if problem.symmetry and not _is_canonical(assignment):
            continue
        rank = 0
        for path_set in enumerate_path_sets(problem.conf, assignment):
            examined += 1
            if _search_inner(n, all_edges, assignment, path_set) is not None:
                feasible += 1
            elif _search_inner(n, free_edges, assignment, path_set) is not None:
                # Realizable without the anchor but impossible with it: the
                # standard proof fails on this class.
                feasible += 1
                return examined, feasible, (index, rank, assignment, path_set)
            rank += 1
    return examined, feasible, None


@lru_cache(maxsize=8)
def _problem_from_payload(payload: str) -> _Problem:
    obj = json.loads(payload)
    conf = Configuration.from_json(obj["config"])
    return _Problem(conf, tuple(obj["anchor"]), obj["symmetry"])


def _scan_chunk_task(payload: str, start: int, end: int):
    return _scan_range(_problem_from_payload(payload), start, end)


def _checkpoint_payload(problem: _Problem, next_index: int, examined: int, feasible: int, elapsed: float) -> dict:
    return {
        "config": problem.conf.to_json(),
        "anchor": list(problem.anchor),
        "symmetry": problem.symmetry,
        "next_index": next_index,
        "classes_total": examined,
        "classes_feasible": feasible,
        "elapsed": elapsed,
    }


def _write_checkpoint(path: Optional[str], payload: dict) -> None:
    if path is None:
        return
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)


def load_checkpoint(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _run_problem(
    problem: _Problem,
    workers: int,
    deadline: Optional[float],
    checkpoint_path: Optional[str],
    start_index: int = 0,
    base_examined: int = 0,
    base_feasible: int = 0,
    base_elapsed: float = 0.0,
):
    """Scan the whole assignment stream; deterministic across worker counts.

    Chunks are aggregated strictly in stream order, so the reported counts
    and the witness (the first failing class) do not depend on scheduling.
    """
    total = problem.total_assignments
    examined, feasible = base_examined, base_feasible
    witness = None
    t0 = time.perf_counter()

    def out_of_time() -> bool:
        return deadline is not None and time.perf_counter() >= deadline

    def stop_for_budget(next_index: int) -> TimeBudgetExceeded:
        payload = _checkpoint_payload(
            problem, next_index, examined, feasible,
            base_elapsed + time.perf_counter() - t0,
        )
        _write_checkpoint(checkpoint_path, payload)
        return TimeBudgetExceeded(payload, checkpoint_path)

    chunk = max(1, min(1024, total // (max(1, workers) * 16) or 1))
    starts = list(range(start_index, total, chunk))

    if workers <= 1:
        for s in starts:
            ex, fe, wit = _scan_range(problem, s, min(total, s + chunk))
            examined += ex
            feasible += fe
            if wit is not None:
                witness = wit
                break
            if out_of_time():
                raise stop_for_budget(min(total, s + chunk))
    else:
        payload = json.dumps(
            {"config": problem.conf.to_json(), "anchor": list(problem.anchor), "symmetry": problem.symmetry},
            sort_keys=True,
        )
        window = workers * 2
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = {}
            submitted = 0

            def submit_more():
                nonlocal submitted
                while submitted < len(starts) and len(futures) < window:
                    s = starts[submitted]
                    futures[s] = pool.submit(_scan_chunk_task, payload, s, min(total, s + chunk))
                    submitted += 1

            submit_more()
            for s in starts:
                ex, fe, wit = futures.pop(s).result()
                examined += ex
                feasible += fe
                if wit is not None:
                    witness = wit
                    pool.shutdown(wait=False, cancel_futures=True)
                    break
                if out_of_time():
                    pool.shutdown(wait=False, cancel_futures=True)
                    raise stop_for_budget(min(total, s + chunk))
                submit_more()

    elapsed = base_elapsed + time.perf_counter() - t0
    return examined, feasible, witness, elapsed


def check_reducible(
    conf: Configuration,
    anchor_policy: str = "default",
    *,
    workers: int = 1,
    symmetry: bool = False,
    time_budget: Optional[float] = None,
    checkpoint_path: Optional[str] = None,
    resume: Optional[dict] = None,
) -> ReducibilityReport:
    """Decide reducibility by the standard proof.

    With anchor_policy "default" only the catalog anchor is tried; with
    "try-all" anchors are tried in pattern edge order and the first one that
    succeeds is reported.  A time_budget (seconds) aborts the run with
    TimeBudgetExceeded after writing a resumable checkpoint; pass the loaded
    checkpoint as resume to continue.
    """
    if anchor_policy not in ("default", "try-all"):
        raise ValueError(f"unknown anchor policy {anchor_policy!r}")
    anchors = [conf.anchor] if anchor_policy == "default" else list(conf.pattern.edge_list)
    deadline = None if time_budget is None else time.perf_counter() + time_budget

    start_index = 0
    base_examined = base_feasible = 0
    base_elapsed = 0.0
    if resume is not None:
        if resume["config"] != conf.to_json() or resume["symmetry"] != symmetry:
            raise CheckpointMismatch("checkpoint does not match this run")
        resume_anchor = edge(*resume["anchor"])
        if resume_anchor not in anchors:
            raise CheckpointMismatch("checkpoint anchor is not among the anchors to try")
        anchors = anchors[anchors.index(resume_anchor):]
        start_index = resume["next_index"]
        base_examined = resume["classes_total"]
        base_feasible = resume["classes_feasible"]
        base_elapsed = resume["elapsed"]

    first_failure: Optional[ReducibilityReport] = None
    for pos, anchor in enumerate(anchors):
        problem = _Problem(conf, anchor, symmetry)
        examined, feasible, witness, elapsed = _run_problem(
            problem,
            workers,
            deadline,
            checkpoint_path,
            start_index=start_index if pos == 0 else 0,
            base_examined=base_examined if pos == 0 else 0,
            base_feasible=base_feasible if pos == 0 else 0,
            base_elapsed=base_elapsed if pos == 0 else 0.0,
        )
        if witness is None:
            return ReducibilityReport(
                conf.name, anchor, examined, feasible, REDUCIBLE, None,
                elapsed, anchor_policy, symmetry,
            )
        _, _, assignment, path_set = witness
        report = ReducibilityReport(
            conf.name, anchor, examined, feasible, NOT_REDUCIBLE,
            ColoringClass.make({v: c for v, c in enumerate(assignment)}, path_set),
            elapsed, anchor_policy, symmetry,
        )
        if first_failure is None:
            first_failure = report
    assert first_failure is not None
    return first_failure
