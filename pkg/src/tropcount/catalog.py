"""Built-in example curves used by the self test and the test suite."""

from __future__ import annotations

from fractions import Fraction

from .curve import Edge, MarkedPoint, PeriodLattice, TropicalCurve, Vertex
from .valuegroup import EqualityMode, MulValue


def _lattice(period1, period2, mode=EqualityMode.FORMAL, polar=None,
             numeric=None) -> PeriodLattice:
    multipliers = {}
    numeric_values = {}
    if polar:
        mode = EqualityMode.EXACT
        multipliers = {
            key: MulValue.polar(Fraction(modulus), Fraction(turns))
            for key, (modulus, turns) in polar.items()
        }
    if numeric:
        mode = EqualityMode.NUMERIC
        numeric_values = dict(numeric)
    return PeriodLattice(period1, period2, mode=mode,
                         multipliers=multipliers,
                         numeric_values=numeric_values)


def theta(**lattice_kwargs) -> TropicalCurve:
    """Genus-2 curve with two vertices joined by three edges.

    Periods (1,-1) and (1,2); edge directions (1,0), (0,1), (-1,-1) with
    deck shifts (0,0), (1,0), (1,1).  All weights 1.
    """
    lat = _lattice((1, -1), (1, 2), **lattice_kwargs)
    u = Vertex("u", (0, 0))
    v = Vertex("v", (1, 0))
    edges = (
        Edge("e1", "u", "v", (1, 0), Fraction(1), (0, 0)),
        Edge("e2", "u", "v", (0, 1), Fraction(1), (1, 0)),
        Edge("e3", "u", "v", (-1, -1), Fraction(1), (1, 1)),
    )
    return TropicalCurve(lat, (u, v), edges)


def theta_marks() -> list[MarkedPoint]:
    return [MarkedPoint("e1", Fraction(1, 3)), MarkedPoint("e2", Fraction(1, 2))]


def theta_double(**lattice_kwargs) -> TropicalCurve:
    """theta() with all weight vectors doubled and lengths halved.

    Same lift positions and deck shifts; all edge weights 2, vertex weights 4.
    """
    base = theta(**lattice_kwargs)
    edges = tuple(
        Edge(e.id, e.tail, e.head,
             (2 * e.weight_vector[0], 2 * e.weight_vector[1]),
             e.length / 2, e.shift)
        for e in base.edges
    )
    return TropicalCurve(base.lattice, base.vertices, edges)


def wrapping_cycle(segments: int = 2, weight: int = 1,
                   **lattice_kwargs) -> TropicalCurve:
    """Genus-1 curve: a straight cycle wrapping the first period once.

    All vertices are 2-valent, every edge has weight vector weight*(1, 0);
    the total deck shift around the cycle is (-1, 0) per the lift relation.
    Defined over the split lattice with periods (1,0) and (0,1).
    """
    if segments < 2:
        raise ValueError("need at least two segments (loops are not allowed)")
    lat = _lattice((1, 0), (0, 1), **lattice_kwargs)
    verts = tuple(
        Vertex(f"c{k}", (Fraction(k, segments), 0)) for k in range(segments)
    )
    edges = []
    for k in range(segments):
        last = k == segments - 1
        edges.append(Edge(
            f"s{k + 1}",
            f"c{k}",
            f"c{(k + 1) % segments}",
            (weight, 0),
            Fraction(1, segments * weight),
            (-1, 0) if last else (0, 0),
        ))
    return TropicalCurve(lat, verts, tuple(edges))


def triple_vertex(**lattice_kwargs) -> TropicalCurve:
    """Genus-2 curve whose two vertices have weight 3.

    Directions (2,1), (-1,1), (-1,-2) between vertices (0,0) and (2,1) over
    the lattice spanned by (3,0) and (0,3).
    """
    lat = _lattice((3, 0), (0, 3), **lattice_kwargs)
    u = Vertex("u", (0, 0))
    v = Vertex("v", (2, 1))
    edges = (
        Edge("f1", "u", "v", (2, 1), Fraction(1), (0, 0)),
        Edge("f2", "u", "v", (-1, 1), Fraction(1), (1, 0)),
        Edge("f3", "u", "v", (-1, -2), Fraction(1), (1, 1)),
    )
    return TropicalCurve(lat, (u, v), edges)


CATALOG = {
    "theta": theta,
    "theta2": theta_double,
    "cycle": wrapping_cycle,
    "triple": triple_vertex,
}
