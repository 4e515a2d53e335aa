"""Versioned text format for polynomial systems.

::

    #falldeg-system v1
    field: GF(2^2) mod=x^2+x+1
    vars: x0 x1
    field_equations: false
    descent: {"basis": ["2", "3"], "model": "classic", ...}
    polys:
    x0^2 + x1
    x0*x1 + 1

The ``descent`` line is optional.  Printing is canonical, so a file that
came out of :func:`dump_system` parses and prints back byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .errors import FallDegError, ParseError
from .field import field_literal, parse_field
from .poly import GREVLEX, PolyRing, PolySystem, format_poly, parse_poly

MAGIC = "#falldeg-system v1"
_KEYS = ("field", "vars", "field_equations", "descent")


@dataclass
class SystemFile:
    ring: PolyRing
    polys: list
    field_equations: bool = False
    descent: dict | None = None
    meta: dict = dc_field(default_factory=dict)

    def system(self) -> PolySystem:
        meta = dict(self.meta)
        if self.descent is not None:
            meta["descent"] = self.descent
        return PolySystem(self.ring, list(self.polys), self.field_equations, meta)

    @classmethod
    def from_system(cls, F: PolySystem, descent: dict | None = None) -> "SystemFile":
        if descent is None and "descent" in F.meta:
            descent = dict(F.meta["descent"])
            if "model" in F.meta:
                descent.setdefault("model", F.meta["model"])
        return cls(F.ring, list(F.polys), bool(F.field_equations), descent)

    def dumps(self) -> str:
        lines = [MAGIC,
                 f"field: {field_literal(self.ring.field)}",
                 f"vars: {' '.join(self.ring.names)}",
                 f"field_equations: {'true' if self.field_equations else 'false'}"]
        if self.descent is not None:
            lines.append("descent: " + json.dumps(self.descent, sort_keys=True, separators=(", ", ": ")))
        lines.append("polys:")
        lines.extend(format_poly(f, GREVLEX) for f in self.polys)
        return "\n".join(lines) + "\n"


def dump_system(F, descent: dict | None = None) -> str:
    sf = F if isinstance(F, SystemFile) else SystemFile.from_system(F, descent)
    return sf.dumps()


def parse_system(text: str) -> SystemFile:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0].strip() != MAGIC:
        raise ParseError(f"missing header line {MAGIC!r}", 1, 1)
    header: dict = {}
    k = 1
    while k < len(lines) and lines[k].strip() != "polys:":
        raw = lines[k]
        key, sep, val = raw.partition(":")
        key = key.strip()
        if not sep or key not in _KEYS:
            raise ParseError(f"unknown header entry {raw!r}", k + 1, 1)
        if key in header:
            raise ParseError(f"duplicate header entry {key!r}", k + 1, 1)
        header[key] = (val.strip(), k + 1, len(key) + 3)
        k += 1
    if k == len(lines):
        raise ParseError("missing 'polys:' section", k + 1, 1)
    for need in ("field", "vars"):
        if need not in header:
            raise ParseError(f"missing header entry {need!r}", k + 1, 1)
    val, ln, col = header["field"]
    try:
        F = parse_field(val)
    except ParseError as exc:
        raise ParseError(str(exc), ln, col) from exc
    except FallDegError as exc:
        raise ParseError(str(exc), ln, col) from exc
    val, ln, col = header["vars"]
    names = val.split()
    try:
        ring = PolyRing(F, len(names), names)
    except (ValueError, FallDegError) as exc:
        raise ParseError(str(exc), ln, col) from exc
    fe = False
    if "field_equations" in header:
        val, ln, col = header["field_equations"]
        if val not in ("true", "false"):
            raise ParseError(f"field_equations must be true or false, got {val!r}", ln, col)
        fe = val == "true"
    descent = None
    if "descent" in header:
        val, ln, col = header["descent"]
        try:
            descent = json.loads(val)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad descent metadata: {exc.msg}", ln, col + exc.pos) from exc
    polys = []
    for j in range(k + 1, len(lines)):
        body = lines[j]
        if not body.strip():
            continue
        polys.append(parse_poly(ring, body, j + 1))
    return SystemFile(ring, polys, fe, descent)


def load_system(path: str) -> SystemFile:
    with open(path, encoding="utf-8") as fh:
        return parse_system(fh.read())


def save_system(path: str, F) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_system(F))
