"""File formats and reference resolution for the CLI.

Group file:        {"name": str, "kind": "builtin"|"permutations"|"table",
                    "builtin": {"family": str, "param": int}?,
                    "generators": ["(1 2)(3 4)", ...]?, "table": [[int]]?}
Variety file:      {"name": str, "basis": ["[x1,x2,x3]", ...],
                    "members_nilpotent": bool}
Construction file: {"kind": "free"|"amalgam", "A": groupref, "B": groupref,
                    "pairing": [[intA, intB], ...]?}

A groupref is either "builtin:<name>", a path to a group file, or an
inline group object.
"""

from __future__ import annotations

import json
from pathlib import Path

from .corpus import corpus_group
from .errors import VaritasError
from .freeprod import FreeConstruction, build_construction, d2p_amalgam
from .groups import FiniteGroup, builtin_group, from_permutations, from_table
from .varieties import VarietySpec, builtin_variety, variety_from_basis


def _load_json(path: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise VaritasError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise VaritasError(
            f"malformed JSON in {path} at line {exc.lineno}, column {exc.colno}: "
            f"{exc.msg}"
        ) from exc


def group_from_dict(data: dict, source: str = "<inline>") -> FiniteGroup:
    if not isinstance(data, dict):
        raise VaritasError(f"{source}: group object must be a JSON object")
    kind = data.get("kind")
    name = data.get("name")
    if kind == "builtin":
        spec = data.get("builtin")
        if not isinstance(spec, dict) or "family" not in spec:
            raise VaritasError(f"{source}: builtin group needs a 'builtin' object")
        g = builtin_group(spec["family"], spec.get("param"))
        if name:
            g.name = str(name)
        return g
    if kind == "permutations":
        gens = data.get("generators")
        if not isinstance(gens, list) or not gens:
            raise VaritasError(f"{source}: permutation group needs 'generators'")
        return from_permutations(gens, name=name or "G")
    if kind == "table":
        table = data.get("table")
        if not isinstance(table, list):
            raise VaritasError(f"{source}: table group needs 'table'")
        return from_table(table, labels=data.get("labels"), name=name or "G")
    raise VaritasError(f"{source}: unknown group kind {kind!r}")


def load_group_file(path: str) -> FiniteGroup:
    return group_from_dict(_load_json(path), source=path)


def resolve_group_ref(ref) -> FiniteGroup:
    if isinstance(ref, dict):
        return group_from_dict(ref)
    text = str(ref)
    if text.startswith("builtin:"):
        return corpus_group(text.split(":", 1)[1])
    return load_group_file(text)


def load_variety_file(path: str) -> VarietySpec:
    data = _load_json(path)
    if not isinstance(data.get("name"), str) or not isinstance(
        data.get("basis"), list
    ):
        raise VaritasError(f"{path}: variety file needs 'name' and 'basis'")
    return variety_from_basis(
        data["name"], data["basis"], bool(data.get("members_nilpotent", False))
    )


def resolve_variety_ref(ref: str) -> VarietySpec:
    if ref.startswith("builtin:"):
        return builtin_variety(ref.split(":", 1)[1])
    return load_variety_file(ref)


_BUILTIN_CONSTRUCTIONS = {
    "c3xc3": lambda: build_construction(
        "free", corpus_group("C3"), corpus_group("C3"), name="C3*C3"
    ),
    "c5xc7": lambda: build_construction(
        "free", corpus_group("C5"), corpus_group("C7"), name="C5*C7"
    ),
    "d2p3": lambda: d2p_amalgam(3),
    "d2p5": lambda: d2p_amalgam(5),
}


def load_construction_file(path: str) -> FreeConstruction:
    data = _load_json(path)
    kind = data.get("kind")
    if kind not in ("free", "amalgam"):
        raise VaritasError(f"{path}: construction kind must be 'free' or 'amalgam'")
    A = resolve_group_ref(data.get("A"))
    B = resolve_group_ref(data.get("B"))
    pairing = data.get("pairing")
    return build_construction(kind, A, B, pairing, name=data.get("name"))


def resolve_construction_ref(ref: str) -> FreeConstruction:
    key = ref.lower()
    if key in _BUILTIN_CONSTRUCTIONS:
        return _BUILTIN_CONSTRUCTIONS[key]()
    if key.startswith("d2p:"):
        return d2p_amalgam(int(key.split(":", 1)[1]))
    if key.startswith("free:"):
        names = key.split(":", 1)[1].split(",")
        if len(names) != 2:
            raise VaritasError("free:<g1>,<g2> needs exactly two group names")
        a = corpus_group(names[0].strip().upper().replace("X", "x"))
        b = corpus_group(names[1].strip().upper().replace("X", "x"))
        return build_construction("free", a, b, name=f"{a.name}*{b.name}")
    return load_construction_file(ref)
