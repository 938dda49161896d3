"""JSON curve files.

Schema (all rationals are strings like "1/3" or "2"; plain JSON integers
are also accepted):

    {
      "lattice": {"lambda1": [1, -1], "lambda2": [1, 2]},
      "multipliers": {
        "alpha11": {"formal": true},          # or
        "alpha12": {"modulus": "3/2", "turns": "1/4"},   # or
        "alpha21": {"re": 0.5, "im": -0.25},
        ...
      },
      "vertices": [{"id": "u", "pos": ["0", "0"]}, ...],
      "edges": [{"id": "e1", "tail": "u", "head": "v",
                 "weight_vector": [1, 0], "length": "1/3",
                 "shift": [0, 0]}, ...],
      "marked_points": [{"edge": "e1", "t": "1/3"}]
    }

All four multipliers must use the same form; the form selects the default
equality mode (formal, exact polar, numeric).  A missing "multipliers" key
means formal.  A missing edge "shift" is derived from the vertex positions
through the lift relation and must come out integral.

Floats are rejected everywhere except the numeric multiplier form.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .curve import (ALPHA_KEYS, Edge, MarkedPoint, PeriodLattice,
                    TropicalCurve, Vertex)
from .errors import ParseError
from .valuegroup import EqualityMode, MulValue


def parse_rational(value, what: str = "value") -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"{what}: expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"{what}: bad rational {value!r}: {exc}") from exc
    raise ParseError(
        f"{what}: expected a rational string, got {type(value).__name__} "
        f"(floats are not accepted; write \"1/3\")")


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


def _int_pair(value, what: str) -> tuple[int, int]:
    if (not isinstance(value, list) or len(value) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool)
                       for x in value)):
        raise ParseError(f"{what}: expected a pair of integers, got {value!r}")
    return value[0], value[1]


def _rational_pair(value, what: str) -> tuple[Fraction, Fraction]:
    if not isinstance(value, list) or len(value) != 2:
        raise ParseError(f"{what}: expected a pair, got {value!r}")
    return (parse_rational(value[0], what),
            parse_rational(value[1], what))


def _require(mapping, key, what):
    if not isinstance(mapping, dict) or key not in mapping:
        raise ParseError(f"{what}: missing required key {key!r}")
    return mapping[key]


def _parse_multipliers(doc) -> tuple[EqualityMode, dict, dict]:
    """Returns (mode, multipliers, numeric_values) for PeriodLattice."""
    table = doc.get("multipliers")
    if table is None:
        return EqualityMode.FORMAL, {}, {}
    if not isinstance(table, dict):
        raise ParseError("multipliers: expected an object")
    unknown = set(table) - set(ALPHA_KEYS)
    if unknown:
        raise ParseError(f"multipliers: unknown keys {sorted(unknown)}")
    forms = set()
    for key in ALPHA_KEYS:
        entry = _require(table, key, "multipliers")
        if not isinstance(entry, dict):
            raise ParseError(f"multipliers.{key}: expected an object")
        if "formal" in entry:
            forms.add("formal")
        elif "modulus" in entry:
            forms.add("polar")
        elif "re" in entry:
            forms.add("numeric")
        else:
            raise ParseError(
                f"multipliers.{key}: need formal, modulus/turns, or re/im")
    if len(forms) != 1:
        raise ParseError(
            "multipliers: all four entries must use the same form "
            f"(found {sorted(forms)})")
    form = forms.pop()
    if form == "formal":
        return EqualityMode.FORMAL, {}, {}
    if form == "polar":
        values = {}
        for key in ALPHA_KEYS:
            entry = table[key]
            modulus = parse_rational(
                _require(entry, "modulus", f"multipliers.{key}"),
                f"multipliers.{key}.modulus")
            turns = parse_rational(
                _require(entry, "turns", f"multipliers.{key}"),
                f"multipliers.{key}.turns")
            if modulus <= 0:
                raise ParseError(
                    f"multipliers.{key}: modulus must be positive")
            values[key] = MulValue.polar(modulus, turns)
        return EqualityMode.EXACT, values, {}
    numeric = {}
    for key in ALPHA_KEYS:
        entry = table[key]
        re = _require(entry, "re", f"multipliers.{key}")
        im = _require(entry, "im", f"multipliers.{key}")
        if not all(isinstance(x, (int, float)) and not isinstance(x, bool)
                   for x in (re, im)):
            raise ParseError(f"multipliers.{key}: re/im must be numbers")
        numeric[key] = complex(re, im)
    return EqualityMode.NUMERIC, {}, numeric


def curve_from_dict(doc) -> tuple[TropicalCurve, list[MarkedPoint]]:
    if not isinstance(doc, dict):
        raise ParseError("top level: expected an object")
    lattice_doc = _require(doc, "lattice", "document")
    lambda1 = _int_pair(_require(lattice_doc, "lambda1", "lattice"),
                        "lattice.lambda1")
    lambda2 = _int_pair(_require(lattice_doc, "lambda2", "lattice"),
                        "lattice.lambda2")
    mode, multipliers, numeric = _parse_multipliers(doc)
    lattice = PeriodLattice(lambda1, lambda2, mode=mode,
                            multipliers=multipliers, numeric_values=numeric)

    vertices = []
    for i, vdoc in enumerate(doc.get("vertices", [])):
        vid = _require(vdoc, "id", f"vertices[{i}]")
        if not isinstance(vid, str):
            raise ParseError(f"vertices[{i}].id: expected a string")
        pos = _rational_pair(_require(vdoc, "pos", f"vertices[{i}]"),
                             f"vertices[{i}].pos")
        vertices.append(Vertex(vid, pos))
    positions = {v.id: v.position for v in vertices}

    edges = []
    for i, edoc in enumerate(doc.get("edges", [])):
        what = f"edges[{i}]"
        eid = _require(edoc, "id", what)
        tail = _require(edoc, "tail", what)
        head = _require(edoc, "head", what)
        if not all(isinstance(x, str) for x in (eid, tail, head)):
            raise ParseError(f"{what}: id/tail/head must be strings")
        wvec = _int_pair(_require(edoc, "weight_vector", what),
                         f"{what}.weight_vector")
        length = parse_rational(_require(edoc, "length", what),
                                f"{what}.length")
        if "shift" in edoc:
            shift = _int_pair(edoc["shift"], f"{what}.shift")
        else:
            shift = _derive_shift(lattice, positions, tail, head, wvec,
                                  length, what)
        edges.append(Edge(eid, tail, head, wvec, length, shift))

    marks = []
    for i, mdoc in enumerate(doc.get("marked_points", [])):
        what = f"marked_points[{i}]"
        edge = _require(mdoc, "edge", what)
        if not isinstance(edge, str):
            raise ParseError(f"{what}.edge: expected a string")
        t = parse_rational(_require(mdoc, "t", what), f"{what}.t")
        marks.append(MarkedPoint(edge, t))

    return TropicalCurve(lattice, vertices, edges), marks


def _derive_shift(lattice, positions, tail, head, wvec, length, what):
    """Solve the lift relation for the deck shift; it must be integral."""
    if tail not in positions or head not in positions:
        raise ParseError(
            f"{what}: cannot derive shift, unknown vertex "
            f"{tail if tail not in positions else head!r}")
    ht = positions[head]
    tl = positions[tail]
    rhs = (ht[0] - tl[0] - length * wvec[0],
           ht[1] - tl[1] - length * wvec[1])
    g1, g2 = lattice.to_lattice_coords(rhs)
    if g1.denominator != 1 or g2.denominator != 1:
        raise ParseError(
            f"{what}: derived shift ({g1}, {g2}) is not integral; the "
            "vertex positions do not satisfy the lift relation")
    return int(g1), int(g2)


def curve_to_dict(
    curve: TropicalCurve, marks: list[MarkedPoint] | None = None
) -> dict:
    lattice = curve.lattice
    doc: dict = {
        "lattice": {
            "lambda1": list(lattice.period1),
            "lambda2": list(lattice.period2),
        }
    }
    if lattice.mode == EqualityMode.EXACT:
        doc["multipliers"] = {
            key: {
                "modulus": format_rational(_polar_modulus(value)),
                "turns": format_rational(value.phase),
            }
            for key, value in lattice.multipliers.items()
        }
    else:
        # In formal and numeric modes the file format can only express
        # multipliers that are the plain symbols alpha11..alpha22; a curve
        # that went through a lattice transform carries composite symbol
        # expressions and must be refused rather than silently flattened.
        for key, value in lattice.multipliers.items():
            if value != MulValue.symbol(key):
                raise ParseError(
                    f"multiplier {key} = {value} is not representable in "
                    f"the curve file format (only plain symbols are, in "
                    f"{lattice.mode.value} mode)")
        if lattice.mode == EqualityMode.NUMERIC:
            doc["multipliers"] = {
                key: {"re": z.real, "im": z.imag}
                for key, z in lattice.numeric_values.items()
            }
    doc["vertices"] = [
        {"id": v.id, "pos": [format_rational(v.position[0]),
                             format_rational(v.position[1])]}
        for v in curve.vertices
    ]
    doc["edges"] = [
        {"id": e.id, "tail": e.tail, "head": e.head,
         "weight_vector": list(e.weight_vector),
         "length": format_rational(e.length),
         "shift": list(e.shift)}
        for e in curve.edges
    ]
    if marks:
        doc["marked_points"] = [
            {"edge": m.edge, "t": format_rational(m.t)} for m in marks
        ]
    return doc


def _polar_modulus(value: MulValue) -> Fraction:
    acc = Fraction(1)
    for prime, exponent in value.primes:
        if exponent.denominator != 1:
            raise ParseError(
                f"multiplier {value} has a non-rational modulus")
        acc *= Fraction(prime) ** exponent.numerator
    if value.symbols:
        raise ParseError(f"multiplier {value} is not a concrete value")
    return acc


def loads_curve(text: str) -> tuple[TropicalCurve, list[MarkedPoint]]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from exc
    return curve_from_dict(doc)


def load_curve(path: str) -> tuple[TropicalCurve, list[MarkedPoint]]:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return loads_curve(text)


def dumps_curve(
    curve: TropicalCurve, marks: list[MarkedPoint] | None = None
) -> str:
    return json.dumps(curve_to_dict(curve, marks), indent=2) + "\n"


def save_curve(
    curve: TropicalCurve, path: str,
    marks: list[MarkedPoint] | None = None,
) -> None:
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(dumps_curve(curve, marks))
    except OSError as exc:
        raise ParseError(f"cannot write {path}: {exc}") from exc
