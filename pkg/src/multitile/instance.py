"""JSON instance files.

Grammar (all scalars are JSON strings, never numbers with a fraction part)::

    {
      "discriminant": 2,                      # optional, inferred otherwise
      "polygon": [["1", "-1"], ["1", "1"], ...],   # 2m CCW vertices
      "parts": [
        {"basis": [["1", "0"], ["0", "1"]],
         "offsets": [["0", "0"], ["sqrt(2)/2", "0"]]}   # default [["0","0"]]
      ],
      "expected_k": 8                         # optional
    }

A scalar is ``"p/q"``, ``"p/q + r/s*sqrt(d)"``, ``"r/s√d"`` or ``"sqrt(d)/n"``;
plain JSON integers are accepted as well.  Every irrational scalar in one file
must use the same ``d``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import MixedDiscriminantsError, ParseError
from .field import Scalar, format_scalar, parse_scalar
from .geometry import SymPolygon, Vec
from .lattice import Lattice2
from .tiling import TileMultiset

__all__ = ["InstanceFile", "parse_instance", "format_instance", "load_instance", "parse_basis"]

SCHEMA = "multitile-instance/1"


@dataclass(frozen=True)
class InstanceFile:
    discriminant: int
    polygon: SymPolygon
    X: TileMultiset
    expected_k: int | None = None

    def __eq__(self, o) -> bool:
        if not isinstance(o, InstanceFile):
            return NotImplemented
        if (self.discriminant, self.polygon, self.expected_k) != (o.discriminant, o.polygon, o.expected_k):
            return False
        a, b = self.X.groups, o.X.groups
        return len(a) == len(b) and all(
            g.lattice.basis == h.lattice.basis and g.offsets == h.offsets for g, h in zip(a, b)
        )

    __hash__ = None


class _Reader:
    def __init__(self) -> None:
        self.ds: set[int] = set()

    def scalar(self, raw, where: str) -> Scalar:
        if isinstance(raw, bool) or not isinstance(raw, (str, int)):
            raise ParseError(f"{where}: scalar must be a string, got {json.dumps(raw)}", field=where)
        try:
            s = parse_scalar(raw) if isinstance(raw, str) else Scalar(raw)
        except ParseError as exc:
            raise ParseError(f"{where}: {exc}", field=where) from exc
        if s.d:
            self.ds.add(s.d)
            if len(self.ds) > 1:
                raise MixedDiscriminantsError(
                    f"{where}: sqrt({s.d}) mixed with sqrt({min(self.ds - {s.d})})", field=where
                )
        return s

    def point(self, raw, where: str) -> Vec:
        if not isinstance(raw, list) or len(raw) != 2:
            raise ParseError(f"{where}: expected a pair of scalars", field=where)
        return Vec(self.scalar(raw[0], f"{where}[0]"), self.scalar(raw[1], f"{where}[1]"))


def parse_instance(text: str) -> InstanceFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}", line=exc.lineno) from exc
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    rd = _Reader()
    declared = doc.get("discriminant", None)
    if declared is not None and (isinstance(declared, bool) or not isinstance(declared, int) or declared < 0):
        raise ParseError("discriminant: expected a non-negative integer", field="discriminant")

    poly_raw = doc.get("polygon")
    if not isinstance(poly_raw, list):
        raise ParseError("polygon: expected a list of vertices", field="polygon")
    verts = [rd.point(v, f"polygon[{i}]") for i, v in enumerate(poly_raw)]

    parts_raw = doc.get("parts")
    if not isinstance(parts_raw, list) or not parts_raw:
        raise ParseError("parts: expected a non-empty list", field="parts")
    parts = []
    for j, part in enumerate(parts_raw):
        where = f"parts[{j}]"
        if not isinstance(part, dict):
            raise ParseError(f"{where}: expected an object", field=where)
        basis = part.get("basis")
        if not isinstance(basis, list) or len(basis) != 2:
            raise ParseError(f"{where}.basis: expected two vectors", field=f"{where}.basis")
        u = rd.point(basis[0], f"{where}.basis[0]")
        v = rd.point(basis[1], f"{where}.basis[1]")
        try:
            L = Lattice2(u, v)
        except ValueError as exc:
            raise ParseError(f"{where}.basis: {exc}", field=f"{where}.basis") from exc
        offs = part.get("offsets", [["0", "0"]])
        if not isinstance(offs, list) or not offs:
            raise ParseError(f"{where}.offsets: expected a non-empty list", field=f"{where}.offsets")
        for k, o in enumerate(offs):
            parts.append((L, rd.point(o, f"{where}.offsets[{k}]")))

    used = rd.ds.pop() if rd.ds else 0
    d = used
    if declared is not None:
        s = Scalar(0, 1, declared) if declared > 1 else None
        norm = s.d if s is not None else 0
        if used and norm != used:
            raise MixedDiscriminantsError(f"declared discriminant {declared} but scalars use sqrt({used})")
        d = norm
    expected = doc.get("expected_k")
    if expected is not None and (isinstance(expected, bool) or not isinstance(expected, int) or expected < 1):
        raise ParseError("expected_k: expected a positive integer", field="expected_k")
    P = SymPolygon(verts)  # raises InvalidPolygonError
    return InstanceFile(d, P, TileMultiset(parts), expected)


def load_instance(path: str | Path) -> InstanceFile:
    return parse_instance(Path(path).read_text(encoding="utf-8"))


def _pair(v: Vec) -> list[str]:
    return [format_scalar(v.x), format_scalar(v.y)]


def format_instance(inst: InstanceFile) -> str:
    """Canonical text: fixed key order, one vertex or vector per line."""

    def pair(v: Vec) -> str:
        return json.dumps(_pair(v), ensure_ascii=False)

    out = ["{", f'  "format": "{SCHEMA}",', f'  "discriminant": {inst.discriminant},']
    verts = ",\n".join(f"    {pair(v)}" for v in inst.polygon.vertices)
    out.append(f'  "polygon": [\n{verts}\n  ],')
    parts = []
    for g in inst.X.groups:
        offs = ",\n".join(f"        {pair(o)}" for o in g.offsets)
        parts.append(
            "    {\n"
            f'      "basis": [{pair(g.lattice.u)}, {pair(g.lattice.v)}],\n'
            f'      "offsets": [\n{offs}\n      ]\n'
            "    }"
        )
    tail = "," if inst.expected_k is not None else ""
    out.append('  "parts": [\n' + ",\n".join(parts) + f"\n  ]{tail}")
    if inst.expected_k is not None:
        out.append(f'  "expected_k": {inst.expected_k}')
    out.append("}")
    return "\n".join(out) + "\n"


def parse_basis(text: str) -> Lattice2:
    """``"u1,u2;v1,v2"`` as used on the command line."""
    try:
        u_txt, v_txt = text.split(";")
        u = [parse_scalar(t) for t in u_txt.split(",")]
        v = [parse_scalar(t) for t in v_txt.split(",")]
    except ValueError as exc:
        raise ParseError(f"bad basis {text!r}; expected 'u1,u2;v1,v2'") from exc
    if len(u) != 2 or len(v) != 2:
        raise ParseError(f"bad basis {text!r}; expected 'u1,u2;v1,v2'")
    try:
        return Lattice2(Vec(*u), Vec(*v))
    except ValueError as exc:
        raise ParseError(f"bad basis {text!r}: {exc}") from exc
