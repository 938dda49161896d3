"""Parametrized tropical curves in a two-dimensional torus quotient.

The ambient space is S = R^2 / L where L is the rank-2 lattice spanned by
two integer period vectors.  A curve is a finite connected graph with

* a chosen lift position in R^2 for every vertex,
* per edge: an integer weight vector m (primitive direction times weight),
  a positive rational length, and an integer deck shift (g1, g2).

The lift convention, fixed once for the whole package:

    lift(head) - lift(tail) = length * m + g1 * period1 + g2 * period2.

Multipliers attached to the two periods live in the formal multiplicative
group (see valuegroup); they drive the realizability invariant but play no
role in the purely combinatorial operations here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .errors import DegeneracyError, ValidationError
from .exactmath import ext_gcd, gcd_list
from .valuegroup import EqualityMode, MulValue

Vec2 = tuple[int, int]
FracVec2 = tuple[Fraction, Fraction]

ALPHA_KEYS = ("alpha11", "alpha12", "alpha21", "alpha22")


def _frac_pair(value) -> FracVec2:
    return (Fraction(value[0]), Fraction(value[1]))


def _int_pair(value) -> Vec2:
    x, y = int(value[0]), int(value[1])
    if (x, y) != (Fraction(value[0]), Fraction(value[1])):
        raise ValidationError(f"expected an integer vector, got {value!r}")
    return (x, y)


@dataclass(frozen=True)
class PeriodLattice:
    """Two integer periods plus the four formal multipliers.

    `multipliers` maps alpha11/alpha12/alpha21/alpha22 to MulValues: plain
    symbols in FORMAL mode, symbol-free exact values in EXACT mode, symbols
    with a side table of complex numbers in NUMERIC mode.
    """

    period1: Vec2
    period2: Vec2
    mode: EqualityMode = EqualityMode.FORMAL
    multipliers: dict[str, MulValue] = field(default_factory=dict)
    numeric_values: dict[str, complex] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "period1", _int_pair(self.period1))
        object.__setattr__(self, "period2", _int_pair(self.period2))
        mults = dict(self.multipliers)
        for key in ALPHA_KEYS:
            mults.setdefault(key, MulValue.symbol(key))
        object.__setattr__(self, "multipliers", mults)

    @property
    def det(self) -> int:
        return (self.period1[0] * self.period2[1]
                - self.period1[1] * self.period2[0])

    def to_lattice_coords(self, point: FracVec2) -> FracVec2:
        """Coordinates (s1, s2) with point = s1*period1 + s2*period2."""
        d = self.det
        if d == 0:
            raise ValidationError("degenerate period lattice")
        x, y = Fraction(point[0]), Fraction(point[1])
        s1 = (x * self.period2[1] - y * self.period2[0]) / d
        s2 = (y * self.period1[0] - x * self.period1[1]) / d
        return (s1, s2)

    def from_lattice_coords(self, coords: FracVec2) -> FracVec2:
        s1, s2 = Fraction(coords[0]), Fraction(coords[1])
        return (s1 * self.period1[0] + s2 * self.period2[0],
                s1 * self.period1[1] + s2 * self.period2[1])


@dataclass(frozen=True)
class Vertex:
    id: str
    position: FracVec2

    def __post_init__(self):
        object.__setattr__(self, "position", _frac_pair(self.position))


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str
    weight_vector: Vec2
    length: Fraction
    shift: Vec2 = (0, 0)

    def __post_init__(self):
        object.__setattr__(self, "weight_vector", _int_pair(self.weight_vector))
        object.__setattr__(self, "length", Fraction(self.length))
        object.__setattr__(self, "shift", _int_pair(self.shift))

    @property
    def weight(self) -> int:
        return gcd_list(self.weight_vector)

    @property
    def primitive(self) -> Vec2:
        w = self.weight
        if w == 0:
            raise ValidationError(f"edge {self.id} has zero weight vector")
        return (self.weight_vector[0] // w, self.weight_vector[1] // w)

    @property
    def primitive_normal(self) -> Vec2:
        """Rotate the primitive direction by a quarter turn: (p,q) -> (-q,p)."""
        p, q = self.primitive
        return (-q, p)


@dataclass(frozen=True)
class MarkedPoint:
    edge: str
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "t", Fraction(self.t))


@dataclass(frozen=True)
class TropicalCurve:
    lattice: PeriodLattice
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))

    # -- lookups -----------------------------------------------------------

    def vertex(self, vid: str) -> Vertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise KeyError(f"no vertex {vid!r}")

    def edge(self, eid: str) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise KeyError(f"no edge {eid!r}")

    def incident_edges(self, vid: str) -> list[Edge]:
        return [e for e in self.edges if vid in (e.tail, e.head)]

    def outgoing_vector(self, vid: str, e: Edge) -> Vec2:
        """Weight vector of e oriented away from vertex vid."""
        if e.tail == vid:
            return e.weight_vector
        if e.head == vid:
            return (-e.weight_vector[0], -e.weight_vector[1])
        raise KeyError(f"edge {e.id} is not incident to {vid}")

    def valence(self, vid: str) -> int:
        n = 0
        for e in self.edges:
            n += (e.tail == vid) + (e.head == vid)
        return n

    # -- basic invariants ----------------------------------------------------

    @property
    def genus(self) -> int:
        """First Betti number |E| - |V| + 1 of the (connected) graph."""
        return len(self.edges) - len(self.vertices) + 1

    @property
    def delta(self) -> int:
        """gcd of all edge weights."""
        return gcd_list(e.weight for e in self.edges)

    def vertex_weight(self, vid: str) -> int:
        """|det| of two outgoing weight vectors at a 3-valent vertex; 1 at
        a 2-valent vertex (balancing makes the choice immaterial)."""
        out = [self.outgoing_vector(vid, e) for e in self.incident_edges_flags(vid)]
        if len(out) == 2:
            return 1
        if len(out) != 3:
            raise ValidationError(
                f"vertex {vid} has valence {len(out)}, expected 2 or 3")
        a, b = out[0], out[1]
        return abs(a[0] * b[1] - a[1] * b[0])

    def vertex_gcd(self, vid: str) -> int:
        """gcd of the weights of the edges at a vertex."""
        return gcd_list(e.weight for e in self.incident_edges_flags(vid))

    def incident_edges_flags(self, vid: str) -> list[Edge]:
        """Incident edges with multiplicity (loops would appear twice)."""
        out = []
        for e in self.edges:
            if e.tail == vid:
                out.append(e)
            if e.head == vid:
                out.append(e)
        return out

    def lift_defect(self, e: Edge) -> FracVec2:
        """lift(head) - lift(tail) - length*m - shift . periods (0 if valid)."""
        tail = self.vertex(e.tail).position
        head = self.vertex(e.head).position
        lat = self.lattice
        dx = head[0] - tail[0] - e.length * e.weight_vector[0] \
            - e.shift[0] * lat.period1[0] - e.shift[1] * lat.period2[0]
        dy = head[1] - tail[1] - e.length * e.weight_vector[1] \
            - e.shift[0] * lat.period1[1] - e.shift[1] * lat.period2[1]
        return (dx, dy)


@dataclass(frozen=True)
class ValidationReport:
    problems: tuple[str, ...]
    warnings: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.problems


def validate(curve: TropicalCurve) -> ValidationReport:
    """Collect every structural violation (does not stop at the first).

    Checks, in order: nonzero lattice determinant, connectedness, no loops,
    valences in {2, 3}, nonzero weight vectors, opposite weight vectors at
    2-valent vertices, balancing, the lift relation, positive lengths.
    A non-integer length triggers a warning (the edge's lattice length is
    then not an integral multiple of its weight), not an error.
    """
    problems: list[str] = []
    warnings: list[str] = []

    if curve.lattice.det == 0:
        problems.append("period lattice is degenerate (determinant 0)")

    ids = [v.id for v in curve.vertices]
    if len(set(ids)) != len(ids):
        problems.append("duplicate vertex ids")
    eids = [e.id for e in curve.edges]
    if len(set(eids)) != len(eids):
        problems.append("duplicate edge ids")
    known = set(ids)
    for e in curve.edges:
        for end in (e.tail, e.head):
            if end not in known:
                problems.append(f"edge {e.id} references unknown vertex {end}")

    if problems:
        # Structural references are broken; the remaining checks would crash.
        return ValidationReport(tuple(problems), tuple(warnings))

    if not curve.vertices:
        return ValidationReport(("curve has no vertices",), ())

    # connectivity
    seen = {curve.vertices[0].id}
    frontier = [curve.vertices[0].id]
    while frontier:
        vid = frontier.pop()
        for e in curve.edges:
            for nxt in ((e.head if e.tail == vid else None),
                        (e.tail if e.head == vid else None)):
                if nxt is not None and nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
    if len(seen) != len(curve.vertices):
        problems.append("graph is not connected")

    for e in curve.edges:
        if e.tail == e.head:
            problems.append(f"edge {e.id} is a loop")

    for v in curve.vertices:
        val = curve.valence(v.id)
        if val not in (2, 3):
            problems.append(f"vertex {v.id} has valence {val}, expected 2 or 3")

    for e in curve.edges:
        if e.weight_vector == (0, 0):
            problems.append(f"edge {e.id} has zero weight vector")

    for v in curve.vertices:
        out = [curve.outgoing_vector(v.id, e)
               for e in curve.incident_edges_flags(v.id)
               if e.weight_vector != (0, 0) and e.tail != e.head]
        if len(out) == 2:
            if (out[0][0] + out[1][0], out[0][1] + out[1][1]) != (0, 0):
                problems.append(
                    f"2-valent vertex {v.id}: weight vectors do not cancel")
        sx = sum(w[0] for w in out)
        sy = sum(w[1] for w in out)
        if (sx, sy) != (0, 0):
            problems.append(f"vertex {v.id} violates balancing: sum {(sx, sy)}")

    if curve.lattice.det != 0:
        for e in curve.edges:
            defect = curve.lift_defect(e)
            if defect != (0, 0):
                problems.append(
                    f"edge {e.id} violates the lift relation by {defect}")

    for e in curve.edges:
        if e.length <= 0:
            problems.append(f"edge {e.id} has non-positive length {e.length}")
        elif e.length.denominator != 1:
            warnings.append(
                f"edge {e.id}: lattice length {e.length * e.weight} is not an "
                f"integral multiple of its weight {e.weight}")

    return ValidationReport(tuple(problems), tuple(warnings))


def ensure_valid(curve: TropicalCurve) -> ValidationReport:
    report = validate(curve)
    if not report.ok:
        raise ValidationError("; ".join(report.problems))
    return report


# --------------------------------------------------------------------------
# rebuilding operations
# --------------------------------------------------------------------------


def subdivide(
    curve: TropicalCurve, points: list[MarkedPoint]
) -> tuple[TropicalCurve, list[str]]:
    """Insert a 2-valent vertex at each marked point.

    Points are grouped per edge and sorted by parameter t in (0, 1); children
    of edge e are named e#1, e#2, ... from the tail side, new vertices e@1,
    e@2, ...  All intermediate children carry shift (0, 0); the deck shift of
    the original edge moves whole to the last child, matching the lift
    convention since interior vertices are lifted onto the segment itself.

    Returns the new curve and the ids of the created vertices in the order
    of `points`.
    """
    per_edge: dict[str, list[MarkedPoint]] = {}
    for pt in points:
        if not 0 < pt.t < 1:
            raise ValidationError(f"marked point t={pt.t} outside (0, 1)")
        per_edge.setdefault(pt.edge, []).append(pt)
    for eid, pts in per_edge.items():
        curve.edge(eid)  # raises KeyError for unknown edges
        ts = [p.t for p in pts]
        if len(set(ts)) != len(ts):
            raise ValidationError(f"duplicate marked points on edge {eid}")

    new_vertices = list(curve.vertices)
    new_edges: list[Edge] = []
    created: dict[tuple[str, Fraction], str] = {}
    for e in curve.edges:
        pts = sorted(per_edge.get(e.id, []), key=lambda p: p.t)
        if not pts:
            new_edges.append(e)
            continue
        tail_pos = curve.vertex(e.tail).position
        chain = [(Fraction(0), e.tail)]
        for k, pt in enumerate(pts, start=1):
            vid = f"{e.id}@{k}"
            pos = (tail_pos[0] + pt.t * e.length * e.weight_vector[0],
                   tail_pos[1] + pt.t * e.length * e.weight_vector[1])
            new_vertices.append(Vertex(vid, pos))
            created[(e.id, pt.t)] = vid
            chain.append((pt.t, vid))
        chain.append((Fraction(1), e.head))
        for k in range(len(chain) - 1):
            t0, a = chain[k]
            t1, b = chain[k + 1]
            last = k == len(chain) - 2
            new_edges.append(Edge(
                id=f"{e.id}#{k + 1}",
                tail=a,
                head=b,
                weight_vector=e.weight_vector,
                length=(t1 - t0) * e.length,
                shift=e.shift if last else (0, 0),
            ))
    out = TropicalCurve(curve.lattice, tuple(new_vertices), tuple(new_edges))
    return out, [created[(p.edge, p.t)] for p in points]


def relift(curve: TropicalCurve, moves: dict[str, Vec2]) -> TropicalCurve:
    """Translate vertex lifts by lattice vectors; deck shifts follow suit.

    move(v) = (k1, k2) adds k1*period1 + k2*period2 to the lift of v; every
    edge shift becomes shift + move(head) - move(tail), which keeps the lift
    relation satisfied.
    """
    lat = curve.lattice
    moved = {}
    for vid, mv in moves.items():
        curve.vertex(vid)
        moved[vid] = _int_pair(mv)
    vertices = []
    for v in curve.vertices:
        k1, k2 = moved.get(v.id, (0, 0))
        vertices.append(Vertex(v.id, (
            v.position[0] + k1 * lat.period1[0] + k2 * lat.period2[0],
            v.position[1] + k1 * lat.period1[1] + k2 * lat.period2[1],
        )))
    edges = []
    for e in curve.edges:
        mt = moved.get(e.tail, (0, 0))
        mh = moved.get(e.head, (0, 0))
        edges.append(replace(e, shift=(e.shift[0] + mh[0] - mt[0],
                                       e.shift[1] + mh[1] - mt[1])))
    return TropicalCurve(lat, tuple(vertices), tuple(edges))


def transform(curve: TropicalCurve, a: list[list[int]]) -> TropicalCurve:
    """Apply a unimodular change of coordinates A to the ambient plane.

    Positions, weight vectors and periods map through A; the multiplier
    attached to the k-th coordinate of period i becomes the monomial
    prod_j alpha(i,j) ^ A[k][j].  Deck shifts are untouched, so validity is
    preserved; the realizability invariant transforms by det A = +-1.
    """
    ((a11, a12), (a21, a22)) = ((int(a[0][0]), int(a[0][1])),
                                (int(a[1][0]), int(a[1][1])))
    det = a11 * a22 - a12 * a21
    if det not in (1, -1):
        raise ValidationError(f"transform matrix must be unimodular, det={det}")

    def apply(vec):
        return (a11 * vec[0] + a12 * vec[1], a21 * vec[0] + a22 * vec[1])

    lat = curve.lattice
    mult = lat.multipliers
    new_mult = {}
    for i in (1, 2):
        row = (mult[f"alpha{i}1"], mult[f"alpha{i}2"])
        new_mult[f"alpha{i}1"] = (row[0] ** a11) * (row[1] ** a12)
        new_mult[f"alpha{i}2"] = (row[0] ** a21) * (row[1] ** a22)
    new_lat = PeriodLattice(
        period1=apply(lat.period1),
        period2=apply(lat.period2),
        mode=lat.mode,
        multipliers=new_mult,
        numeric_values=dict(lat.numeric_values),
    )
    vertices = tuple(Vertex(v.id, apply(v.position)) for v in curve.vertices)
    edges = tuple(replace(e, weight_vector=apply(e.weight_vector))
                  for e in curve.edges)
    return TropicalCurve(new_lat, vertices, edges)


# --------------------------------------------------------------------------
# fundamental-domain crossings
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Crossing:
    """Net transversal crossings of one edge with one family of walls.

    side "B1" is the wall crossed when the first lattice coordinate passes
    an integer threshold (the opposite pair of sides is identified in the
    quotient), side "B2" likewise for the second coordinate.  signed_count
    is positive when the edge travels in the increasing-coordinate
    direction, i.e. from the inside of the fundamental cell to the outside
    through that side; outward_vector is the edge's full weight vector
    oriented the same way.
    """

    edge: str
    side: str
    signed_count: int
    outward_vector: Vec2


def crossings(curve: TropicalCurve, offset: FracVec2) -> list[Crossing]:
    """All wall crossings of the stored edge segment lifts.

    The fundamental cell is offset + [0,1)^2 in lattice coordinates; its
    translates tile the plane with two wall families.  For each edge the
    segment from lift(tail) to lift(tail) + length*m is intersected with
    both families; a vertex lying on a wall or a crossing through a cell
    corner raises DegeneracyError (callers retry with another offset).
    """
    lat = curve.lattice
    o1, o2 = Fraction(offset[0]), Fraction(offset[1])
    scoords = {}
    for v in curve.vertices:
        s1, s2 = lat.to_lattice_coords(v.position)
        if (s1 - o1).denominator == 1:
            raise DegeneracyError(
                f"vertex {v.id} lies on a B1 wall for offset ({o1}, {o2})")
        if (s2 - o2).denominator == 1:
            raise DegeneracyError(
                f"vertex {v.id} lies on a B2 wall for offset ({o1}, {o2})")
        scoords[v.id] = (s1, s2)
    out: list[Crossing] = []
    for e in curve.edges:
        start = scoords[e.tail]
        disp = lat.to_lattice_coords(
            (e.length * e.weight_vector[0], e.length * e.weight_vector[1]))
        end = (start[0] + disp[0], start[1] + disp[1])
        # end is the head lift translated back by the deck shift, so its
        # fractional parts are the head's: no new degeneracy check needed.
        for axis, side in ((0, "B1"), (1, "B2")):
            lo = (start[axis] - (o1, o2)[axis])
            hi = (end[axis] - (o1, o2)[axis])
            net = math.floor(hi) - math.floor(lo)
            if net == 0:
                continue
            step = 1 if net > 0 else -1
            first = math.floor(min(lo, hi)) + 1
            for k in range(abs(net)):
                # lattice-coordinate value where the wall is crossed
                wall = first + k
                t = (wall - lo) / (hi - lo)
                other = start[1 - axis] + t * (end[1 - axis] - start[1 - axis])
                if (other - (o1, o2)[1 - axis]).denominator == 1:
                    raise DegeneracyError(
                        f"edge {e.id} crosses a cell corner for offset "
                        f"({o1}, {o2})")
            sign = 1 if net > 0 else -1
            out.append(Crossing(
                edge=e.id,
                side=side,
                signed_count=net,
                outward_vector=(sign * e.weight_vector[0],
                                sign * e.weight_vector[1]),
            ))
    return out


def offset_sequence(limit: int = 25):
    """Deterministic retry sequence of offsets (1/p, 1/p^2), p prime."""
    p, found = 2, 0
    while found < limit:
        for d in range(2, p):
            if p % d == 0:
                break
        else:
            yield (Fraction(1, p), Fraction(1, p * p))
            found += 1
        p += 1


def canonical_offset(curve: TropicalCurve) -> FracVec2:
    """First offset in the retry sequence that avoids all degeneracies."""
    last_error: DegeneracyError | None = None
    for offset in offset_sequence():
        try:
            crossings(curve, offset)
            return offset
        except DegeneracyError as exc:
            last_error = exc
    raise DegeneracyError(
        f"no usable offset found in the retry sequence; last: {last_error}")
