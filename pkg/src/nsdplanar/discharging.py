"""Trash removal, initial charges, discharging rules and the balance check.

Conventions used throughout:

* vertex degrees are always degrees in the original graph ``G``;
* adjacency, faces and face patterns are read from the graph ``G'`` left
  after removing the trash, with the faces inherited from the embedding of
  ``G`` (see :func:`nsdplanar.embedding.plane_faces`);
* a face pattern ``(a, b, c, d)`` is a boundary walk of exactly four distinct
  vertices, read in either direction;
* vertex-to-vertex rules along one edge do not add up: the giver sends the
  largest amount among the rules that apply, tagged with the first rule
  reaching it;
* face-to-vertex rules are evaluated per corner of the boundary walk, so a
  vertex met twice on a face is served twice.

All charges are :class:`fractions.Fraction`.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from fractions import Fraction

from .embedding import Face, RotationSystem, plane_faces
from .errors import EmbeddingError, InvariantBreach
from .graph import Graph

F = Fraction


# -- trash -------------------------------------------------------------------


@dataclass(frozen=True)
class TrashPartition:
    """The four trash classes, the kept vertices and the faces they span."""

    T1: frozenset[int]
    T2: frozenset[int]
    T3: frozenset[int]
    T4: frozenset[int]
    kept: frozenset[int]
    embedding: RotationSystem
    faces: tuple[Face, ...]
    rounds: tuple[tuple[str, frozenset[int]], ...] = ()

    @property
    def trash(self) -> frozenset[int]:
        return self.T1 | self.T2 | self.T3 | self.T4

    def kept_graph(self, g: Graph) -> Graph:
        return g.subgraph(self.kept)

    def label(self, v: int) -> str:
        for name in ("T1", "T2", "T3", "T4"):
            if v in getattr(self, name):
                return name
        return "V'"


def _faces_of(rs: RotationSystem, alive: set[int]) -> list[Face]:
    return plane_faces(rs, keep=alive)


def _t2_pairs(g: Graph, alive: set[int]) -> set[int]:
    """Adjacent degree-3 pairs whose two common neighbours both have degree >= 7."""
    out = set()
    for a, b in g.edges():
        if a not in alive or b not in alive or g.degree(a) != 3 or g.degree(b) != 3:
            continue
        na = {y for y in g.neighbours(a) if y in alive and y != b}
        nb = {y for y in g.neighbours(b) if y in alive and y != a}
        common = na & nb
        if len(common) == 2 and all(g.degree(y) >= 7 for y in common):
            out |= {a, b}
    return out


def _on_face_of_degree(faces: Iterable[Face], deg: int) -> set[int]:
    out = set()
    for f in faces:
        if f.degree == deg:
            out |= f.vertices()
    return out


def _t3_candidates(g: Graph, alive: set[int], faces: list[Face]) -> set[int]:
    return {v for v in _on_face_of_degree(faces, 3) if g.degree(v) == 2}


def _t4_candidates(g: Graph, alive: set[int], faces: list[Face]) -> set[int]:
    return {
        v for v in _on_face_of_degree(faces, 4)
        if g.degree(v) == 2 and all(g.degree(y) >= 7 for y in g.neighbours(v))
    }


def compute_trash(g: Graph, rs: RotationSystem, *, check: bool = True) -> TrashPartition:
    """Remove the trash in stages, each stage against the current graph.

    Stage 3 and stage 4 are repeated until nothing changes: when the graph
    has two degree-2 vertices with the same two neighbours, removing one can
    leave the other on a smaller face.
    """
    if rs.graph() != g:
        raise EmbeddingError("rotation system does not describe the graph")
    alive = set(g.vertices())
    rounds: list[tuple[str, frozenset[int]]] = []

    t1 = {v for v in alive if g.degree(v) == 1}
    alive -= t1
    rounds.append(("T1", frozenset(t1)))
    t2 = _t2_pairs(g, alive)
    alive -= t2
    rounds.append(("T2", frozenset(t2)))

    t3: set[int] = set()
    t4: set[int] = set()
    while True:
        faces = _faces_of(rs, alive)
        new = _t3_candidates(g, alive, faces)
        name = "T3"
        if not new:
            new = _t4_candidates(g, alive, faces)
            name = "T4"
        if not new:
            break
        (t3 if name == "T3" else t4).update(new)
        alive -= new
        rounds.append((name, frozenset(new)))

    part = TrashPartition(
        frozenset(t1), frozenset(t2), frozenset(t3), frozenset(t4), frozenset(alive),
        rs, tuple(_faces_of(rs, alive)), tuple(rounds),
    )
    if check:
        bad = residual_patterns(g, part)
        if bad:
            raise InvariantBreach("trash left residual patterns: " + "; ".join(bad[:3]))
    return part


def residual_patterns(g: Graph, part: TrashPartition) -> list[str]:
    """Trash-type patterns still present among the kept vertices (should be none)."""
    alive = set(part.kept)
    out = [f"degree-1 vertex {v}" for v in sorted(alive) if g.degree(v) == 1]
    out += [f"degree-3 pair at {v}" for v in sorted(_t2_pairs(g, alive))]
    faces = list(part.faces)
    out += [f"degree-2 vertex {v} on a 3-face" for v in sorted(_t3_candidates(g, alive, faces))]
    out += [f"degree-2 vertex {v} on a 4-face" for v in sorted(_t4_candidates(g, alive, faces))]
    return out


def trash_stage_sets_disjoint(part: TrashPartition) -> bool:
    sets = [part.T1, part.T2, part.T3, part.T4, part.kept]
    return sum(len(s) for s in sets) == len(frozenset().union(*sets))


# -- charges -----------------------------------------------------------------


@dataclass(frozen=True)
class Transfer:
    source: str
    target: str
    amount: Fraction
    rule: str
    context: str = ""

    def line(self) -> str:
        return f"X {self.source} -> {self.target} {fmt(self.amount)} {self.rule}"


def fmt(x: Fraction) -> str:
    """Always ``p/q`` so charges parse uniformly."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def vtok(v: int) -> str:
    return str(v)


def ftok(i: int) -> str:
    return f"f{i}"


@dataclass
class ChargeLedger:
    vertex_init: dict[int, Fraction]
    face_init: dict[int, Fraction]
    face_degree: dict[int, int]
    transfers: list[Transfer] = field(default_factory=list)

    def initial(self) -> dict[str, Fraction]:
        out = {vtok(v): c for v, c in self.vertex_init.items()}
        out.update({ftok(i): c for i, c in self.face_init.items()})
        return out

    def final(self) -> dict[str, Fraction]:
        out = self.initial()
        for t in self.transfers:
            out[t.source] -= t.amount
            out[t.target] += t.amount
        return out

    def total_initial(self) -> Fraction:
        return sum(self.initial().values(), F(0))

    def total_final(self) -> Fraction:
        return sum(self.final().values(), F(0))

    def dump(self) -> list[str]:
        fin = self.final()
        lines = [
            f"V {v} init={fmt(c)} final={fmt(fin[vtok(v)])}"
            for v, c in sorted(self.vertex_init.items())
        ]
        lines += [
            f"F {i} deg={self.face_degree[i]} init={fmt(c)} final={fmt(fin[ftok(i)])}"
            for i, c in sorted(self.face_init.items())
        ]
        lines += [t.line() for t in self.transfers]
        return lines


def initial_charges(g: Graph, part: TrashPartition) -> ChargeLedger:
    """``d(v) - 6`` on every vertex of ``G`` and ``2 d(f) - 6`` on every kept face."""
    return ChargeLedger(
        {v: F(g.degree(v) - 6) for v in g.vertices()},
        {i: F(2 * f.degree - 6) for i, f in enumerate(part.faces)},
        {i: f.degree for i, f in enumerate(part.faces)},
    )


def charge_identity(ledger: ChargeLedger, components: int | None = None) -> Fraction:
    """Total charge carried by the ledger (after any transfers)."""
    return ledger.total_final()


def expected_total(g: Graph, part: TrashPartition) -> Fraction:
    """What Euler's formula forces the total to be.

    The kept graph with ``c`` components (isolated vertices included) has
    ``|V'| - |E'| + |F'| = 1 + c``, so its vertex and face terms add up to
    ``-6 (1 + c)``; each trash vertex contributes ``d(v) + d_{V'}(v) - 6``.
    """
    kept = part.kept_graph(g)
    c = len(kept.components())
    total = F(-6 * (1 + c))
    for v in part.trash:
        total += trash_floor(g, part, v)
    return total


def trash_floor(g: Graph, part: TrashPartition, v: int) -> Fraction:
    """``d(v) + d_{V'}(v) - 6``."""
    return F(g.degree(v) + sum(1 for y in g.neighbours(v) if y in part.kept) - 6)


# -- rules -------------------------------------------------------------------


class _Env:
    """Lookup tables for the rule predicates."""

    def __init__(self, g: Graph, part: TrashPartition):
        self.g = g
        self.part = part
        self.kept = part.kept
        self.faces = part.faces
        self.face_of: dict[tuple[int, int], int] = {}
        for i, f in enumerate(self.faces):
            for d in f.darts():
                self.face_of[d] = i

    def d(self, v: int) -> int:
        return self.g.degree(v)

    def nbrs(self, v: int) -> list[int]:
        return sorted(y for y in self.g.neighbours(v) if y in self.kept)

    def edge_faces(self, u: int, v: int) -> tuple[int, int]:
        return self.face_of[(u, v)], self.face_of[(v, u)]

    def triangles(self, u: int, v: int) -> list[tuple[int, int]]:
        """``(face, w)`` for each degree-3 face through the edge ``uv``."""
        out = []
        for i in dict.fromkeys(self.edge_faces(u, v)):
            f = self.faces[i]
            if f.degree == 3:
                (w,) = f.vertices() - {u, v}
                out.append((i, w))
        return out

    def quads(self, u: int, v: int) -> list[tuple[int, int, int]]:
        """``(face, w, x)`` for each face reading ``(u, v, w, x)`` in some direction."""
        out = []
        for i in dict.fromkeys(self.edge_faces(u, v)):
            cyc = self.faces[i].vertex_cycle()
            if cyc is None or len(cyc) != 4 or len(set(cyc)) != 4:
                continue
            a = cyc.index(u)
            if cyc[(a + 1) % 4] == v:
                out.append((i, cyc[(a + 2) % 4], cyc[(a + 3) % 4]))
            elif cyc[(a - 1) % 4] == v:
                out.append((i, cyc[(a - 2) % 4], cyc[(a - 3) % 4]))
        return out


def _r1(e: _Env, u, v):
    return e.d(u) >= 7 and 3 <= e.d(v) <= 6 and bool(e.triangles(u, v))


def _r2(e: _Env, u, v):
    if e.d(u) < 7 or e.d(v) != 4:
        return False
    a, b = e.edge_faces(u, v)
    return a != b and e.faces[a].degree == 3 and e.faces[b].degree == 3


def _r3(e: _Env, u, v):
    if e.d(u) < 7 or e.d(v) != 2:
        return False
    others = [z for z in e.nbrs(v) if z != u]
    return len(others) == 1 and (e.d(others[0]) == 3 or e.d(others[0]) >= 7)


def _two_quads(e: _Env, u, v, ok: Callable[[int, int], bool], shared: int) -> bool:
    """Two distinct faces ``(u, v, a, b)`` passing ``ok`` and agreeing on ``(a, b)[shared]``."""
    qs = [(i, (a, b)) for i, a, b in e.quads(u, v) if ok(a, b)]
    return len({i for i, _ in qs}) >= 2 and len({ab[shared] for _, ab in qs}) == 1


def _r4(e: _Env, u, v):
    if e.d(u) < 7 or e.d(v) != 2:
        return False
    return _two_quads(e, u, v, lambda w, x: e.d(w) == 3 and e.d(x) >= 7, 0)


def _r5(e: _Env, u, v):
    if e.d(u) < 7 or e.d(v) != 3:
        return False
    return any(e.d(w) == 2 and e.d(x) >= 7 for _, w, x in e.quads(u, v))


def _r6(e: _Env, u, v):
    if e.d(u) < 7 or e.d(v) != 3:
        return False
    ns = [z for z in e.nbrs(v) if z != u]
    for _, w in e.triangles(u, v):
        if e.d(w) >= 7 and any(x != w and e.d(x) in (2, 3) for x in ns):
            return True
    return False


def _r7(e: _Env, u, v):
    if e.d(u) < 7 or e.d(v) != 3:
        return False
    return any(e.d(w) == 3 for _, w in e.triangles(u, v))


def _r8(e: _Env, u, v):
    if e.d(u) < 4 or e.d(v) != 3:
        return False
    a, b = e.edge_faces(u, v)
    return a != b and e.faces[a].degree == 3 and e.faces[b].degree == 3


def _r9(e: _Env, u, v):
    if e.d(u) < 4 or e.d(v) != 3:
        return False
    return any(e.d(w) >= 7 for _, w in e.triangles(u, v))


def _r10(e: _Env, u, v):
    return 4 <= e.d(u) <= 6 and e.d(v) == 2


def _r11(e: _Env, u, v):
    if e.d(u) != 2 or e.d(v) != 3:
        return False
    # faces (w, u, v, x) read from u towards v as (u, v, x, w)
    return _two_quads(e, u, v, lambda x, w: e.d(x) >= 7 and e.d(w) >= 7, 1)


VERTEX_RULES: dict[str, tuple[Fraction, Callable]] = {
    "R1": (F(1, 2), _r1),
    "R2": (F(1), _r2),
    "R3": (F(2, 3), _r3),
    "R4": (F(1), _r4),
    "R5": (F(2, 3), _r5),
    "R6": (F(1), _r6),
    "R7": (F(1), _r7),
    "R8": (F(1), _r8),
    "R9": (F(2, 3), _r9),
    "R10": (F(2), _r10),
    "R11": (F(1, 3), _r11),
}

FACE_AMOUNTS = {"R12": F(4, 3), "R13": F(1, 3), "R14": F(5, 3), "R15": F(1)}
RT_AMOUNT = F(1)


def _face_rule(e: _Env, face: Face, prev: int, v: int, nxt: int) -> str | None:
    """The rule by which ``face`` serves the corner ``prev, v, nxt``, if any."""
    dv = e.d(v)
    if face.degree >= 4 and dv == 2 and (e.d(prev) == 3 or e.d(nxt) == 3):
        return "R14"
    if face.degree >= 5 and 2 <= dv <= 6 and e.d(prev) >= 7 and e.d(nxt) >= 7:
        return "R12"
    if face.degree == 4 and dv == 3 and _r13_corner(e, face, prev, v, nxt):
        return "R13"
    if face.degree >= 4 and 2 <= dv <= 6:
        return "R15"
    return None


def _r13_corner(e: _Env, face: Face, prev: int, v: int, nxt: int) -> bool:
    cyc = face.vertex_cycle()
    if cyc is None or len(set(cyc)) != 4:
        return False
    (opposite,) = set(cyc) - {prev, v, nxt}
    if e.d(opposite) < 7:
        return False
    return (e.d(prev) == 2 and e.d(nxt) >= 7) or (e.d(nxt) == 2 and e.d(prev) >= 7)


def vertex_transfer(e: _Env, u: int, v: int) -> tuple[Fraction, str, list[str]] | None:
    """Amount ``u`` gives ``v`` (largest applicable), its rule and all rules that apply."""
    hits = [name for name, (_, pred) in VERTEX_RULES.items() if pred(e, u, v)]
    if not hits:
        return None
    best = max(VERTEX_RULES[h][0] for h in hits)
    tag = next(h for h in hits if VERTEX_RULES[h][0] == best)
    return best, tag, hits


def apply_rules(g: Graph, part: TrashPartition, ledger: ChargeLedger) -> ChargeLedger:
    """Record every transfer; returns a new ledger (the input is not modified)."""
    e = _Env(g, part)
    transfers = list(ledger.transfers)
    for u in sorted(part.kept):
        for v in e.nbrs(u):
            hit = vertex_transfer(e, u, v)
            if hit:
                amount, tag, hits = hit
                transfers.append(Transfer(vtok(u), vtok(v), amount, tag, "+".join(hits)))
    for i, face in enumerate(part.faces):
        for corner, (prev, v, nxt) in enumerate(face.incidences()):
            rule = _face_rule(e, face, prev, v, nxt)
            if rule:
                transfers.append(
                    Transfer(ftok(i), vtok(v), FACE_AMOUNTS[rule], rule, f"corner {corner}")
                )
    trash = part.trash
    for u in sorted(part.kept):
        for v in sorted(g.neighbours(u)):
            if v in trash:
                transfers.append(Transfer(vtok(u), vtok(v), RT_AMOUNT, "RT"))
    return ChargeLedger(ledger.vertex_init, ledger.face_init, ledger.face_degree, transfers)


def audit_transfers(g: Graph, part: TrashPartition, ledger: ChargeLedger) -> list[str]:
    """Replay each transfer's own guard; returns the transfers that fail."""
    e = _Env(g, part)
    bad = []
    for t in ledger.transfers:
        ok = False
        if t.rule in VERTEX_RULES:
            amount, pred = VERTEX_RULES[t.rule]
            u, v = int(t.source), int(t.target)
            ok = (
                u in part.kept and v in part.kept and g.has_edge(u, v)
                and pred(e, u, v) and t.amount == amount
            )
        elif t.rule in FACE_AMOUNTS:
            i = int(t.source[1:])
            corner = int(t.context.split()[-1])
            prev, v, nxt = list(part.faces[i].incidences())[corner]
            ok = (
                vtok(v) == t.target and _face_rule(e, part.faces[i], prev, v, nxt) == t.rule
                and t.amount == FACE_AMOUNTS[t.rule]
            )
        elif t.rule == "RT":
            u, v = int(t.source), int(t.target)
            ok = u in part.kept and v in part.trash and g.has_edge(u, v) and t.amount == RT_AMOUNT
        if not ok:
            bad.append(t.line())
    return bad


# -- balance -----------------------------------------------------------------


@dataclass(frozen=True)
class BalanceItem:
    node: str
    final: Fraction
    floor: Fraction

    @property
    def ok(self) -> bool:
        return self.final >= self.floor


@dataclass(frozen=True)
class BalanceReport:
    items: tuple[BalanceItem, ...]

    @property
    def violations(self) -> list[BalanceItem]:
        return [it for it in self.items if not it.ok]

    @property
    def balanced(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        return [
            f"{'ok' if it.ok else 'VIOLATION'} {it.node} final={fmt(it.final)} floor={fmt(it.floor)}"
            for it in self.items
        ]


def verify_balance(g: Graph, part: TrashPartition, ledger: ChargeLedger) -> BalanceReport:
    """Kept vertices and faces must end non-negative; trash at least its floor."""
    fin = ledger.final()
    items = []
    for v in sorted(g.vertices()):
        floor = trash_floor(g, part, v) if v in part.trash else F(0)
        items.append(BalanceItem(vtok(v), fin[vtok(v)], floor))
    for i in sorted(ledger.face_init):
        items.append(BalanceItem(ftok(i), fin[ftok(i)], F(0)))
    return BalanceReport(tuple(items))


@dataclass
class DischargeResult:
    trash: TrashPartition
    initial: ChargeLedger
    ledger: ChargeLedger
    report: BalanceReport
    audit: list[str]

    @property
    def conserved(self) -> bool:
        return self.initial.total_final() == self.ledger.total_final()


def discharge(g: Graph, rs: RotationSystem) -> DischargeResult:
    """Full pipeline: trash, initial charges, rules, balance and audit."""
    part = compute_trash(g, rs)
    init = initial_charges(g, part)
    led = apply_rules(g, part, init)
    return DischargeResult(part, init, led, verify_balance(g, part, led),
                           audit_transfers(g, part, led))
