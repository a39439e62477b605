"""JSON document formats for fans, polytopes, divisors, and systems.

Every document is a JSON object with a "kind" tag (fan | polytope |
divisor | system).  Integers exceeding 53 bits are written as decimal
strings so documents survive float-based JSON readers; the parser
accepts both forms.  Output ordering is deterministic (rays as listed,
cones lexicographic) for golden-file diffing.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction

from .cones import Cone, Fan
from .divisors import TDivisor
from .lattice import DualVector, LatticeVector
from .polytopes import LatticePolytope, LaurentPolynomial


class FormatError(ValueError):
    pass


_BIG = 1 << 53


def _encode_int(x: int):
    x = int(x)
    return str(x) if abs(x) >= _BIG else x


def _decode_int(x) -> int:
    if isinstance(x, bool):
        raise FormatError("booleans are not integers")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x, 10)
        except ValueError as exc:
            raise FormatError(f"not a decimal integer: {x!r}") from exc
    raise FormatError(f"not an integer: {x!r}")


def _encode_fraction(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


def _decode_fraction(x) -> Fraction:
    if isinstance(x, bool):
        raise FormatError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"not a rational: {x!r}") from exc
    raise FormatError(f"not a rational: {x!r}")


def _int_vector(x, what="vector"):
    if not isinstance(x, list):
        raise FormatError(f"{what} must be a list")
    return [_decode_int(c) for c in x]


# ----------------------------------------------------------------------
# per-kind encoders / decoders


def fan_to_doc(fan: Fan) -> dict:
    return {
        "kind": "fan",
        "dim": fan.dim,
        "rays": [[_encode_int(c) for c in u.coords] for u in fan.rays],
        "maximal_cones": sorted(sorted(k) for k in fan.maximal),
    }


def fan_from_doc(doc: dict, validate: bool = True) -> Fan:
    rays = [LatticeVector(_int_vector(r, "ray")) for r in doc.get("rays", [])]
    cones_field = doc.get("maximal_cones")
    if cones_field is None:
        raise FormatError("fan document needs a 'maximal_cones' list")
    cones = []
    for c in cones_field:
        idx = [_decode_int(i) for i in c]
        if any(i < 0 or i >= len(rays) for i in idx):
            raise FormatError(f"cone {idx} references a missing ray")
        cones.append(idx)
    dim = doc.get("dim")
    if dim is not None and rays and _decode_int(dim) != len(rays[0]):
        raise FormatError("'dim' does not match the ray coordinates")
    return Fan(rays, cones, validate=validate)


def polytope_to_doc(K: LatticePolytope) -> dict:
    return {
        "kind": "polytope",
        "dim": K.ambient_dim,
        "vertices": [[_encode_int(c) for c in v.coords] for v in K.vertices],
    }


def polytope_from_doc(doc: dict) -> LatticePolytope:
    verts = doc.get("vertices")
    if not verts:
        raise FormatError("polytope document needs a nonempty 'vertices' list")
    return LatticePolytope([DualVector(_int_vector(v, "vertex")) for v in verts])


def divisor_to_doc(divisor: TDivisor, fan_ref: str | None = None) -> dict:
    return {
        "kind": "divisor",
        "fan": fan_ref if fan_ref is not None else fan_to_doc(divisor.fan),
        "coefficients": [_encode_int(a) for a in divisor.coefficients],
    }


def divisor_from_doc(doc: dict, base_dir: str = ".", fan: Fan | None = None) -> TDivisor:
    """The 'fan' field is an inline fan document or a path to one; an
    already-loaded fan may be supplied to share the ray table."""
    if fan is None:
        ref = doc.get("fan")
        if ref is None:
            raise FormatError("divisor document needs a 'fan' field")
        if isinstance(ref, str):
            fan = load(os.path.join(base_dir, ref), expect="fan")
        else:
            fan = fan_from_doc(ref)
    coeffs = doc.get("coefficients")
    if coeffs is None:
        raise FormatError("divisor document needs a 'coefficients' list")
    coeffs = [_decode_int(c) for c in coeffs]
    if len(coeffs) != len(fan.rays):
        raise FormatError(
            f"{len(coeffs)} coefficients for a fan with {len(fan.rays)} rays"
        )
    return TDivisor(fan, coeffs)


def polynomial_to_doc_terms(poly: LaurentPolynomial) -> list:
    return [
        [[_encode_int(c) for c in e], _encode_fraction(q)]
        for e, q in sorted(poly.terms.items())
    ]


def polynomial_from_doc_terms(terms) -> LaurentPolynomial:
    if not isinstance(terms, list) or not terms:
        raise FormatError("polynomial must be a nonempty list of [exponent, coeff]")
    out = {}
    for item in terms:
        if not (isinstance(item, list) and len(item) == 2):
            raise FormatError(f"malformed term {item!r}")
        e = DualVector(_int_vector(item[0], "exponent"))
        out[e] = out.get(e, 0) + _decode_fraction(item[1])
    return LaurentPolynomial(out)


def system_to_doc(polys, roots=None) -> dict:
    doc = {
        "kind": "system",
        "dim": polys[0].ambient_dim,
        "polynomials": [polynomial_to_doc_terms(p) for p in polys],
    }
    if roots is not None:
        doc["roots"] = [
            [[_encode_fraction(c) for c in x], _encode_int(mult)]
            for x, mult in roots
        ]
    return doc


def system_from_doc(doc: dict):
    """Returns (polynomials, roots or None)."""
    polys_field = doc.get("polynomials")
    if not polys_field:
        raise FormatError("system document needs a nonempty 'polynomials' list")
    polys = [polynomial_from_doc_terms(t) for t in polys_field]
    d = polys[0].ambient_dim
    if any(p.ambient_dim != d for p in polys):
        raise FormatError("polynomials have mismatched numbers of variables")
    roots = None
    if "roots" in doc:
        roots = []
        for item in doc["roots"]:
            if not (isinstance(item, list) and len(item) == 2):
                raise FormatError(f"malformed root {item!r}")
            x = tuple(_decode_fraction(c) for c in item[0])
            if len(x) != d:
                raise FormatError("root dimension mismatch")
            roots.append((x, _decode_int(item[1])))
    return polys, roots


# ----------------------------------------------------------------------
# top-level load/save

_DECODERS = {
    "fan": fan_from_doc,
    "polytope": polytope_from_doc,
    "divisor": divisor_from_doc,
    "system": system_from_doc,
}


def parse(doc: dict, expect: str | None = None, base_dir: str = "."):
    if not isinstance(doc, dict):
        raise FormatError("document must be a JSON object")
    kind = doc.get("kind")
    if kind not in _DECODERS:
        raise FormatError(f"unknown or missing document kind: {kind!r}")
    if expect is not None and kind != expect:
        raise FormatError(f"expected a {expect} document, found {kind}")
    if kind == "divisor":
        return divisor_from_doc(doc, base_dir=base_dir)
    return _DECODERS[kind](doc)


def load(path: str, expect: str | None = None):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON at line {exc.lineno}") from exc
    return parse(doc, expect=expect, base_dir=os.path.dirname(path) or ".")


def dump(doc: dict, path: str):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=False)
        fh.write("\n")


def to_doc(obj) -> dict:
    if isinstance(obj, Fan):
        return fan_to_doc(obj)
    if isinstance(obj, LatticePolytope):
        return polytope_to_doc(obj)
    if isinstance(obj, TDivisor):
        return divisor_to_doc(obj)
    raise TypeError(f"no document form for {type(obj).__name__}")
