"""Exact-rational discharging audit for plane graphs of maximum degree 9.

Every vertex starts with degree minus 4 and every face with length minus 4;
by Euler's formula the charges of a connected plane graph sum to exactly -8.
Four local rules then move charge around without changing the total, and the
audit reports which elements end negative.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .configurations import find_any
from .graphs import DegreeCapError, PlaneGraph

Element = tuple[str, int]  # ("vertex", v) or ("face", f)

MAX_DEGREE = 9


class UndefinedTransferError(RuntimeError):
    """The transfer table has no value for a triangle (5, 7+, 5).

    Such a triangle contains an edge whose endpoint degrees sum to 10, so a
    host within scope never reaches this case.
    """

    def __init__(self, b: int, a: int, c: int, face: Optional[int] = None,
                 triangle: Optional[tuple[int, int, int]] = None):
        super().__init__(f"transfer m({b},{a},{c}) is undefined")
        self.degrees = (b, a, c)
        self.face = face
        self.triangle = triangle

    @property
    def low_degree_pair(self) -> Optional[tuple[int, int]]:
        """The two degree-5 endpoints witnessing the low-sum edge."""
        if self.triangle is None:
            return None
        x, _, z = self.triangle
        return (x, z)


@dataclass(frozen=True)
class Transfer:
    rule: str
    source: Element
    sink: Element
    amount: Fraction
    segment: Optional[tuple[int, int, int]] = None

    def to_json(self) -> dict:
        out = {
            "rule": self.rule,
            "source": list(self.source),
            "sink": list(self.sink),
            "amount": str(self.amount),
        }
        if self.segment is not None:
            out["segment"] = list(self.segment)
        return out


@dataclass
class ChargeLedger:
    """Exact charges per vertex and face plus the full transfer transcript."""

    vertex_charge: dict[int, Fraction]
    face_charge: dict[int, Fraction]
    transfers: list[Transfer] = field(default_factory=list)

    def charge(self, element: Element) -> Fraction:
        kind, idx = element
        return self.vertex_charge[idx] if kind == "vertex" else self.face_charge[idx]

    def total(self) -> Fraction:
        return sum(self.vertex_charge.values(), Fraction(0)) + sum(
            self.face_charge.values(), Fraction(0)
        )

    def apply(self, transfer: Transfer) -> None:
        for element, sign in ((transfer.source, -1), (transfer.sink, 1)):
            kind, idx = element
            book = self.vertex_charge if kind == "vertex" else self.face_charge
            book[idx] += sign * transfer.amount
        self.transfers.append(transfer)

    def negatives(self) -> list[tuple[Element, Fraction]]:
        out: list[tuple[Element, Fraction]] = []
        for v in sorted(self.vertex_charge):
            if self.vertex_charge[v] < 0:
                out.append((("vertex", v), self.vertex_charge[v]))
        for f in sorted(self.face_charge):
            if self.face_charge[f] < 0:
                out.append((("face", f), self.face_charge[f]))
        return out


def initial_charges(pg: PlaneGraph) -> ChargeLedger:
    """Degree minus 4 per vertex, length minus 4 per face; total is -8."""
    faces = pg.faces  # raises on disconnected input
    g = pg.graph
    return ChargeLedger(
        {v: Fraction(g.degree(v) - 4) for v in range(g.n)},
        {f: Fraction(len(walk) - 4) for f, walk in enumerate(faces)},
    )


def m_value(b: int, a: int, c: int) -> Fraction:
    """Charge a vertex of degree a sends to a triangular face with corners
    of degrees b and c.  Symmetric in b and c; the (5, 7+, 5) cell is
    deliberately undefined and raises.
    """
    if b > c:
        b, c = c, b
    if a <= 4:
        return Fraction(0)
    if a == 5:
        return Fraction(1, 5)
    if a == 6:
        return Fraction(1, 3)
    if b <= 4:
        return Fraction(1, 2)
    if b == 5:
        if c == 5:
            raise UndefinedTransferError(b, a, c)
        if c == 6:
            return Fraction(7, 15)
        return Fraction(2, 5)
    return Fraction(1, 3)


def apply_rules(pg: PlaneGraph) -> ChargeLedger:
    """The ledger after running all four rules.

    R1: every vertex sends 1 to each 2-neighbour.
    R2: every vertex sends 1/3 to each 3-neighbour.
    R3: a segment (x,y,z) of a face of length 5 or more delivers 2/3 to y
        when both x and z have degree 3, else 1/2 when one of them has
        degree 2.
    R4: each corner segment (v,u,w) of a triangular face receives
        m(d(v),d(u),d(w)) from u.

    Vertices of degree 1 are outside every rule; they neither send nor
    receive.  The transcript lists transfers in rule order, each one
    zero-sum, so the total stays -8.
    """
    g = pg.graph
    if g.max_degree > MAX_DEGREE:
        raise DegreeCapError(f"maximum degree {g.max_degree} exceeds {MAX_DEGREE}")
    ledger = initial_charges(pg)
    degree = [g.degree(v) for v in range(g.n)]

    for target_degree, rule, amount in ((2, "R1", Fraction(1)), (3, "R2", Fraction(1, 3))):
        for u in range(g.n):
            if degree[u] < 2:
                continue
            for v in sorted(g.neighbours(u)):
                if degree[v] == target_degree:
                    ledger.apply(Transfer(rule, ("vertex", u), ("vertex", v), amount))

    for seg in pg.segments:
        if seg.length >= 5:
            if degree[seg.x] == 3 and degree[seg.z] == 3:
                amount = Fraction(2, 3)
            elif degree[seg.x] == 2 or degree[seg.z] == 2:
                amount = Fraction(1, 2)
            else:
                continue
            ledger.apply(
                Transfer("R3", ("face", seg.face), ("vertex", seg.y), amount,
                         segment=(seg.x, seg.y, seg.z))
            )

    for seg in pg.segments:
        if seg.length != 3:
            continue
        try:
            amount = m_value(degree[seg.x], degree[seg.y], degree[seg.z])
        except UndefinedTransferError:
            raise UndefinedTransferError(
                degree[seg.x], degree[seg.y], degree[seg.z],
                face=seg.face, triangle=(seg.x, seg.y, seg.z),
            ) from None
        # Zero transfers are recorded too: the rule fires once per corner
        # segment of every triangular face.
        ledger.apply(
            Transfer("R4", ("vertex", seg.y), ("face", seg.face), amount,
                     segment=(seg.x, seg.y, seg.z))
        )
    return ledger


@dataclass
class AuditReport:
    total_initial: Fraction
    total_final: Optional[Fraction]
    negatives: list[tuple[Element, Fraction]]
    configurations: list[str]
    conserved: Optional[bool]
    contrapositive_ok: bool
    undefined_case: Optional[dict]
    ledger: Optional[ChargeLedger]

    def to_json(self, include_transfers: bool = False) -> dict:
        out = {
            "total_initial": str(self.total_initial),
            "total_final": None if self.total_final is None else str(self.total_final),
            "negatives": [
                {"element": list(el), "charge": str(ch)} for el, ch in self.negatives
            ],
            "configurations": list(self.configurations),
            "conserved": self.conserved,
            "contrapositive_ok": self.contrapositive_ok,
        }
        if self.undefined_case is not None:
            out["undefined_case"] = self.undefined_case
        if include_transfers and self.ledger is not None:
            out["transfers"] = [t.to_json() for t in self.ledger.transfers]
        return out


def audit(pg: PlaneGraph) -> AuditReport:
    """Run the discharging rules and report what ends negative.

    Whenever some element ends negative, a configuration from the catalog
    must occur (that is the point of the argument); the report records
    whether that held.  If the transfer table hits its undefined cell the
    audit reports the offending triangle instead of final charges; the
    degree-5 pair it exposes is itself a low-degree-sum edge, so a catalog
    hit is still expected.
    """
    initial = initial_charges(pg)
    total_initial = initial.total()
    hit = find_any(pg.graph)
    configurations = [hit[0].name] if hit is not None else []
    try:
        ledger = apply_rules(pg)
    except UndefinedTransferError as exc:
        return AuditReport(
            total_initial=total_initial,
            total_final=None,
            negatives=[],
            configurations=configurations,
            conserved=None,
            contrapositive_ok=bool(configurations),
            undefined_case={
                "face": exc.face,
                "triangle": list(exc.triangle or ()),
                "degrees": list(exc.degrees),
                "low_degree_pair": list(exc.low_degree_pair or ()),
            },
            ledger=None,
        )
    total_final = ledger.total()
    negatives = ledger.negatives()
    ok = (not negatives) or (not pg.graph.edges) or bool(configurations)
    return AuditReport(
        total_initial=total_initial,
        total_final=total_final,
        negatives=negatives,
        configurations=configurations,
        conserved=total_final == total_initial,
        contrapositive_ok=ok,
        undefined_case=None,
        ledger=ledger,
    )
