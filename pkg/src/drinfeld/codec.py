"""JSON encoding of fields, polynomials, series, Ore polynomials and Drinfeld modules.

Every finite-field element is a list of F_p digits in the basis z^i w^j of its
field (index i + e*j); the field itself is named by its moduli.  Output is plain
dicts and lists, so json.dumps(..., sort_keys=True) is canonical.
"""
from __future__ import annotations

import json
import re

from .dmodule import DrinfeldModule
from .fields import GF, FieldElem, get_field
from .ore import OrePoly
from .poly import ModElem, Poly, PolyRing
from .series import SeriesRing, TruncSeries

SCHEMA = "drinfeld-json/1"


class CodecError(ValueError):
    pass


def encode_field(F: GF) -> dict:
    return F.describe()


def decode_field(d: dict) -> GF:
    tower = d.get("tower")
    if tower:
        return get_field(d["p"], d["e"], tuple(d["modulus"]), tower["m"], tuple(tower["modulus"]))
    return get_field(d["p"], d["e"], tuple(d["modulus"]))


def encode_elem(F: GF, code: int) -> list[int]:
    return F.digits(int(code))


def decode_elem(F: GF, digits) -> int:
    if len(digits) != F.n or any(not 0 <= x < F.p for x in digits):
        raise CodecError(f"bad digit list {digits!r} for {F!r}")
    return F.from_digits(digits)


def encode_poly(a: Poly) -> dict:
    F = a.field
    return {"t": [encode_elem(F, c) for c in a.coeffs]}


def decode_poly(A: PolyRing, d: dict) -> Poly:
    return Poly(A, [decode_elem(A.field, x) for x in d["t"]])


def _encode_coeff(R: SeriesRing, c):
    if R.kind == "Fq":
        return encode_elem(R.field, c)
    if isinstance(c, ModElem):
        c = c.value
    return encode_poly(c)


def encode_series(s: TruncSeries) -> dict:
    R = s.ring
    if s.val is None:
        return {"var": R.var, "val": None, "prec": s.prec, "coeffs": []}
    stop = s.val + s.c.shape[0]
    return {"var": R.var, "val": s.val, "prec": s.prec,
            "coeffs": [_encode_coeff(R, c) for c in s.coeffs(s.val, stop)]}


def decode_series(R: SeriesRing, d: dict) -> TruncSeries:
    if d.get("var", R.var) != R.var:
        raise CodecError(f"series variable {d.get('var')!r} != {R.var!r}")
    if d["val"] is None:
        return R.zero(d["prec"])
    if R.kind == "Fq":
        cs = [decode_elem(R.field, x) for x in d["coeffs"]]
    else:
        cs = [decode_poly(R.poly_ring, x) for x in d["coeffs"]]
    return R.series(cs, d["val"], d["prec"])


def encode_base_elem(b):
    if isinstance(b, FieldElem):
        return encode_elem(b.parent, b.code)
    if isinstance(b, TruncSeries):
        return encode_series(b)
    if isinstance(b, Poly):
        return encode_poly(b)
    raise CodecError(f"cannot encode {type(b).__name__}")


def encode_ore(f: OrePoly) -> dict:
    return {"tau": [encode_base_elem(c) for c in f.coeffs]}


def encode_base(B) -> dict:
    if isinstance(B, GF):
        return {"kind": "field", "field": encode_field(B)}
    if isinstance(B, SeriesRing):
        return {"kind": "series", "coeffs": B.kind, "field": encode_field(B.field), "var": B.var}
    if isinstance(B, PolyRing):
        return {"kind": "poly", "field": encode_field(B.field)}
    raise CodecError(f"cannot encode base {B!r}")


def decode_base(d: dict):
    F = decode_field(d["field"])
    if d["kind"] == "field":
        return F
    if d["kind"] == "series":
        if d["coeffs"] == "A/n":
            raise CodecError("A/n series bases are not serialized")
        return SeriesRing(F, d["coeffs"], var=d.get("var", "x"))
    if d["kind"] == "poly":
        return PolyRing(F)
    raise CodecError(f"unknown base kind {d['kind']!r}")


def decode_base_elem(B, x):
    if isinstance(B, GF):
        return FieldElem(B, decode_elem(B, x))
    if isinstance(B, SeriesRing):
        return decode_series(B, x)
    if isinstance(B, PolyRing):
        return decode_poly(B, x)
    raise CodecError(f"cannot decode over {B!r}")


def decode_ore(B, d: dict) -> OrePoly:
    return OrePoly(B, [decode_base_elem(B, x) for x in d["tau"]])


def encode_module(E: DrinfeldModule) -> dict:
    return {"base": encode_base(E.base), "theta": encode_base_elem(E.theta),
            "rank": E.rank, "phi_t": encode_ore(E.phi_t)}


def decode_module(d: dict) -> DrinfeldModule:
    B = decode_base(d["base"])
    phi = decode_ore(B, d["phi_t"])
    coeffs = [phi.coeff(i) for i in range(1, d["rank"] + 1)]
    return DrinfeldModule(B, decode_base_elem(B, d["theta"]), coeffs)


def document(kind: str, payload: dict) -> dict:
    return {"schema": SCHEMA, "kind": kind, **payload}


_NUMERIC_LIST = re.compile(r"\[[\s\d,\-\[\]]*\]")


def _inline(m: re.Match) -> str:
    try:
        return json.dumps(json.loads(m.group(0)), separators=(",", ":"))
    except json.JSONDecodeError:
        return m.group(0)


def dumps(obj) -> str:
    """Canonical text: sorted keys, one line per field, numeric lists kept on one line."""
    return _NUMERIC_LIST.sub(_inline, json.dumps(obj, sort_keys=True, indent=1)) + "\n"
