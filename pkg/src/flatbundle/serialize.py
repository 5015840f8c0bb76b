"""JSON schemas shared by the CLI and the file-based interfaces.

Exact rationals serialize as strings ``"p/q"`` (``"p"`` when the
denominator is 1); floats serialize as JSON numbers.  Both are accepted on
input wherever a circle point or angle is expected.

Lift schema::

    {"type": "rigid", "angle": "2/5"}
    {"type": "pl", "breakpoints": [...], "values": [...]}
    {"type": "moebius", "matrix": [[a, b], [c, d]], "offset": 0}
    {"type": "chain", "parts": [...]}          # extension, for diagnostics

Representation: ``{"genus": g, "generators": [lift, ... x 2g]}``.
Vertex list: ``{"vertices": [{"n": 1, "k": 0}, ...]}``.
Corner data: ``{"genus": g, "corners": [...]}``; loop: ``{"samples": [...]}``.
Cover presentation: ``{"base_genus": g, "words": ["a1 a1", "b1", ...]}``.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import InvalidInputError
from .lifts import ChainLift, Lift, MoebiusLift, PLLift, RigidLift


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"bad rational {text!r}: {exc}") from exc


def number_to_json(x):
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return format_rational(Fraction(x))
    if isinstance(x, float):
        return x
    raise InvalidInputError(f"cannot serialize number {x!r}")


def number_from_json(obj):
    if isinstance(obj, str):
        return parse_rational(obj)
    if isinstance(obj, bool) or not isinstance(obj, (int, float)):
        raise InvalidInputError(f"expected a number or 'p/q' string, got {obj!r}")
    if isinstance(obj, int):
        return Fraction(obj)
    return float(obj)


def lift_to_json(f: Lift) -> dict:
    if isinstance(f, RigidLift):
        return {"type": "rigid", "angle": number_to_json(f.angle)}
    if isinstance(f, PLLift):
        return {
            "type": "pl",
            "breakpoints": [number_to_json(x) for x in f.breakpoints],
            "values": [number_to_json(x) for x in f.values],
        }
    if isinstance(f, MoebiusLift):
        return {
            "type": "moebius",
            "matrix": [[float(x) for x in row] for row in f.matrix],
            "offset": f.offset,
        }
    if isinstance(f, ChainLift):
        return {"type": "chain", "parts": [lift_to_json(p) for p in f.parts]}
    raise InvalidInputError(f"cannot serialize lift {f!r}")


def lift_from_json(obj) -> Lift:
    if not isinstance(obj, dict) or "type" not in obj:
        raise InvalidInputError(f"lift must be an object with a 'type', got {obj!r}")
    kind = obj["type"]
    try:
        if kind == "rigid":
            return RigidLift(number_from_json(obj["angle"]))
        if kind == "pl":
            return PLLift(
                tuple(number_from_json(x) for x in obj["breakpoints"]),
                tuple(number_from_json(x) for x in obj["values"]),
            )
        if kind == "moebius":
            (a, b), (c, d) = obj["matrix"]
            return MoebiusLift(
                ((float(a), float(b)), (float(c), float(d))),
                int(obj.get("offset", 0)),
            )
        if kind == "chain":
            return ChainLift(tuple(lift_from_json(p) for p in obj["parts"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"bad {kind!r} lift: {exc}") from exc
    raise InvalidInputError(f"unknown lift type {kind!r}")


def representation_to_json(rep) -> dict:
    return {
        "genus": rep.genus,
        "generators": [lift_to_json(f) for f in rep.generators],
    }


def representation_from_json(obj):
    from .representations import Representation

    if not isinstance(obj, dict):
        raise InvalidInputError("representation must be a JSON object")
    try:
        genus = int(obj["genus"])
        gens = tuple(lift_from_json(f) for f in obj["generators"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"bad representation: {exc}") from exc
    return Representation(genus, gens)


def vertices_to_json(vertices) -> dict:
    return {"vertices": [{"n": v.n, "k": v.k} for v in vertices]}


def vertices_from_json(obj):
    from .local_formula import SingularVertex

    if not isinstance(obj, dict) or not isinstance(obj.get("vertices"), list):
        raise InvalidInputError("vertex file must be {'vertices': [...]}")
    out = []
    for item in obj["vertices"]:
        try:
            out.append(SingularVertex(int(item["n"]), int(item["k"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"bad vertex {item!r}: {exc}") from exc
    return out


def corners_to_json(c) -> dict:
    return {"genus": c.genus, "corners": [number_to_json(x) for x in c.corners]}


def corners_from_json(obj):
    from .sections import CornerData

    if not isinstance(obj, dict):
        raise InvalidInputError("corner file must be a JSON object")
    try:
        return CornerData(
            int(obj["genus"]),
            tuple(number_from_json(x) for x in obj["corners"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"bad corner data: {exc}") from exc


def loop_to_json(loop) -> dict:
    return {"samples": [number_to_json(x) for x in loop.samples]}


def loop_from_json(obj):
    from .sections import BoundaryLoop

    if not isinstance(obj, dict) or not isinstance(obj.get("samples"), list):
        raise InvalidInputError("loop file must be {'samples': [...]}")
    return BoundaryLoop(tuple(number_from_json(x) for x in obj["samples"]))


def cover_presentation_to_json(cp) -> dict:
    from .words import format_word

    return {
        "base_genus": cp.base_genus,
        "words": [format_word(w) for w in cp.words],
    }


def cover_presentation_from_json(obj):
    from .cover import CoverPresentation
    from .words import parse_word

    if not isinstance(obj, dict):
        raise InvalidInputError("cover file must be a JSON object")
    try:
        g = int(obj["base_genus"])
        words = tuple(parse_word(t, g) for t in obj["words"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"bad cover presentation: {exc}") from exc
    return CoverPresentation(g, words)


def load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path!r} is not valid JSON: {exc}") from exc


def dump_json(obj) -> str:
    """Deterministic machine-format serialization (byte-stable per input)."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
