"""Size caps. Override with ``FALLDEG_CAPS="matrix=300000,enum=1000000"``."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

from .errors import FallDegError

FIELD_CAP = 1 << 20


@dataclass(frozen=True)
class Caps:
    matrix: int = 200_000        # monomial columns in one echelon space
    enum: int = 1 << 24          # points scanned by brute-force enumeration
    field: int = FIELD_CAP       # largest field cardinality
    gb_pairs: int = 200_000      # S-pairs processed by one Buchberger run
    escalation: int = 12         # extra degrees tried by the escalating solver


def _from_env() -> Caps:
    caps = Caps()
    raw = os.environ.get("FALLDEG_CAPS", "").strip()
    if not raw:
        return caps
    updates = {}
    for item in raw.split(","):
        if not item.strip():
            continue
        key, _, val = item.partition("=")
        key = key.strip()
        if key not in Caps.__dataclass_fields__:
            raise FallDegError(f"unknown cap {key!r} in FALLDEG_CAPS")
        updates[key] = int(val)
    return replace(caps, **updates)


CAPS = _from_env()


def get_caps() -> Caps:
    return CAPS


def set_caps(**kwargs) -> Caps:
    global CAPS
    CAPS = replace(CAPS, **kwargs)
    return CAPS
