"""JSON file formats for categories and modules, plus gallery references.

Category file:
    { "field": "Q" | {"Fp": p}, "objects": [...], "hom": {"x|y": dim},
      "compose": {"x|y|z": [[i, j, l, scalar], ...]},
      "identity": {"x": [coords]} }

Module file:
    { "category": path-or-gallery-ref, "side": "left"|"right",
      "dims": {"x": dim}, "action": {"x|y": [matrix per hom-basis vector]} }

Rationals are "num/den" strings; prime-field scalars are plain integers.
A category reference is either a file path or "gallery:name" /
"gallery:name:window-spec".  All maps are emitted with sorted keys.
"""

from __future__ import annotations

import json
import os

from locfin.lincat import LeftModule, LinCat, RightModule, Window, scope_cat
from locfin.linalg import Matrix, Tensor3
from locfin.scalar import FieldDescriptor

__all__ = [
    "SCHEMA_VERSION",
    "BadInput",
    "category_to_json",
    "category_from_json",
    "module_to_json",
    "module_from_json",
    "load_category",
    "load_module",
    "dump_json",
]

SCHEMA_VERSION = "1"


class BadInput(ValueError):
    """Malformed input file or reference."""


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _split(key: str, parts: int) -> tuple:
    bits = key.split("|")
    if len(bits) != parts:
        raise BadInput(f"expected {parts} |-separated object ids in {key!r}")
    return tuple(bits)


def category_to_json(c: LinCat) -> dict:
    f = c.field
    compose = {}
    for (x, y, z), t in sorted(c.compose.items()):
        compose[f"{x}|{y}|{z}"] = [[i, j, l, f.raw_to_json(v)] for i, j, l, v in t.entries]
    return {
        "field": f.to_json(),
        "objects": [str(o) for o in c.objects],
        "hom": {f"{x}|{y}": d for (x, y), d in sorted(c.hom.items())},
        "compose": compose,
        "identity": {str(x): [f.raw_to_json(v) for v in coords]
                     for x, coords in sorted(c.identity.items())},
    }


def category_from_json(obj: dict) -> LinCat:
    try:
        f = FieldDescriptor.from_json(obj["field"])
        objects = tuple(obj["objects"])
        hom = {_split(k, 2): int(d) for k, d in obj.get("hom", {}).items()}
        compose = {}
        for k, entries in obj.get("compose", {}).items():
            x, y, z = _split(k, 3)
            dims = (hom.get((y, z), 0), hom.get((x, y), 0), hom.get((x, z), 0))
            coeffs = {(int(i), int(j), int(l)): f.raw_from_json(v) for i, j, l, v in entries}
            compose[(x, y, z)] = Tensor3.from_dict(f, dims, coeffs)
        identity = {x: tuple(f.raw_from_json(v) for v in coords)
                    for x, coords in obj.get("identity", {}).items()}
    except BadInput:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise BadInput(f"malformed category JSON: {exc}") from exc
    return LinCat(f, objects, hom, compose, identity)


def module_to_json(m: LeftModule | RightModule, category_ref: str) -> dict:
    f = m.cat.field
    return {
        "category": category_ref,
        "side": m.side,
        "dims": {str(x): d for x, d in sorted(m.dims.items()) if d},
        "action": {
            f"{x}|{y}": [[[f.raw_to_json(v) for v in row] for row in mat.data]
                         for mat in mats]
            for (x, y), mats in sorted(m.action.items())
        },
    }


def module_from_json(obj: dict, cat: LinCat) -> LeftModule | RightModule:
    f = cat.field
    try:
        side = obj["side"]
        if side not in ("left", "right"):
            raise BadInput(f"bad side {side!r}")
        dims = {x: int(d) for x, d in obj.get("dims", {}).items()}
        cls = LeftModule if side == "left" else RightModule
        probe = cls(cat, dims, {})
        action = {}
        for k, mats in obj.get("action", {}).items():
            x, y = _split(k, 2)
            rows, cols = probe.block_shape(x, y)
            parsed = []
            for grid in mats:
                data = [[f.raw_from_json(v) for v in row] for row in grid]
                if len(data) != rows or any(len(r) != cols for r in data):
                    raise BadInput(f"block shape mismatch at {k}: "
                                   f"expected {rows}x{cols}")
                parsed.append(Matrix.from_rows(f, data, cols) if rows
                              else Matrix.zeros(f, 0, cols))
            action[(x, y)] = tuple(parsed)
    except BadInput:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise BadInput(f"malformed module JSON: {exc}") from exc
    return cls(cat, dims, action)


def load_category(ref: str, base_dir: str = "."):
    """Resolve a category reference to a LinCat or Window."""
    if ref.startswith("gallery:"):
        from locfin.gallery import gallery_instantiate

        parts = ref.split(":", 2)
        name = parts[1]
        spec = parts[2] if len(parts) > 2 else None
        return gallery_instantiate(name, spec)
    path = ref if os.path.isabs(ref) else os.path.join(base_dir, ref)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise BadInput(f"cannot read category file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise BadInput(f"invalid JSON in {path}: {exc}") from exc
    return category_from_json(obj)


def load_module(path: str, scope=None):
    """Load a module file; returns (module, scope).

    The file's "category" reference is resolved relative to the file unless a
    scope is supplied explicitly.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise BadInput(f"cannot read module file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise BadInput(f"invalid JSON in {path}: {exc}") from exc
    if scope is None:
        ref = obj.get("category")
        if not isinstance(ref, str):
            raise BadInput("module file lacks a category reference")
        scope = load_category(ref, base_dir=os.path.dirname(os.path.abspath(path)))
    m = module_from_json(obj, scope_cat(scope))
    return m, scope
