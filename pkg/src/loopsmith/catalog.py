"""Group references used in JSON instance files.

A reference is a builder name (``C6``, ``D4`` for the square's symmetries,
``S4``, ``Q8``, ``trivial``), an ``x``-joined product such as ``C3xS3xC2``,
or a path to a ``.tbl`` file relative to the JSON file.
"""
from __future__ import annotations

import json
import re
from pathlib import Path

from .errors import ParseError
from .groups import (FiniteGroup, Subgroup, cyclic, dihedral, direct_product,
                     make_group, point_stabilizer, quaternion8, subgroup_closure, symmetric)
from .tbl import read_tbl

_NAME = re.compile(r"^([CDS])(\d+)$")


def _builder(name: str) -> FiniteGroup | None:
    if name in ("Q8", "quaternion8"):
        return quaternion8()
    if name in ("trivial", "1"):
        return cyclic(1)
    m = _NAME.match(name)
    if not m:
        return None
    kind, n = m.group(1), int(m.group(2))
    return {"C": cyclic, "D": dihedral, "S": symmetric}[kind](n)


def resolve_group(ref, base: Path | str = ".") -> FiniteGroup:
    if isinstance(ref, dict) and "product" in ref:
        return direct_product([resolve_group(r, base) for r in ref["product"]])
    if not isinstance(ref, str):
        raise ParseError(f"cannot interpret group reference {ref!r}")
    G = _builder(ref)
    if G is not None:
        return G
    parts = ref.split("x")
    if len(parts) > 1 and all(_builder(p) is not None for p in parts):
        return direct_product([_builder(p) for p in parts])
    path = Path(base) / ref
    if not path.exists():
        raise ParseError(f"unknown group {ref!r} (not a builder name or an existing file)")
    return make_group(read_tbl(path))


def resolve_subgroup(G: FiniteGroup, ref) -> Subgroup:
    """Index list (closed to the generated subgroup) or ``{"point_stabilizer": k}``."""
    if isinstance(ref, dict) and "point_stabilizer" in ref:
        return point_stabilizer(G, int(ref["point_stabilizer"]))
    if isinstance(ref, list):
        if any(not isinstance(v, int) or not 0 <= v < G.order for v in ref):
            raise ParseError("subgroup indices must be integers in range")
        return subgroup_closure(G, ref)
    raise ParseError(f"cannot interpret subgroup {ref!r}")


def load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: line {e.lineno}, column {e.colno}: {e.msg}",
                         line=e.lineno, column=e.colno) from None
