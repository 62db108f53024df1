"""Built-in corpus of finite groups and the default variety set.

The corpus populates every truth-table cell the propositions need:
XT-but-not-member points (S3, A5 against nilpotent varieties),
non-XT points (S4), domains (A5) and non-domains (abelian groups, S3).
"""

from __future__ import annotations

from functools import lru_cache

from .errors import GroupError
from .groups import (
    FiniteGroup,
    alternating_group,
    builtin_group,
    cyclic_group,
    dihedral_group,
    direct_product,
    frobenius21_group,
    quaternion_group,
    symmetric_group,
)
from .varieties import VarietySpec, builtin_variety

CORPUS_NAMES = (
    "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12",
    "C2xC2", "C2xC4",
    "S3", "S4", "A4", "A5",
    "D8", "D10", "D12",
    "Q8", "frobenius21",
    "S3xC2",
)

VARIETY_NAMES = ("abelian", "nilpotent-2", "nilpotent-3", "metabelian", "burnside-2")


@lru_cache(maxsize=None)
def corpus_group(name: str) -> FiniteGroup:
    """Resolve a corpus-style group name; groups are process-wide singletons
    so their memo caches are shared."""
    key = name.strip()
    if key in ("frobenius21", "F21"):
        return frobenius21_group()
    if key == "Q8":
        return quaternion_group()
    if "x" in key:
        parts = key.split("x")
        group = corpus_group(parts[0])
        for part in parts[1:]:
            group = direct_product(group, corpus_group(part))
        return group
    family, num = key[0], key[1:]
    if not num.isdigit():
        raise GroupError(f"unknown group name {name!r}")
    n = int(num)
    if family == "C":
        return cyclic_group(n)
    if family == "D":
        return dihedral_group(n)
    if family == "S":
        return symmetric_group(n)
    if family == "A":
        return alternating_group(n)
    if family == "E":
        return builtin_group("elementary-abelian", n)
    raise GroupError(f"unknown group name {name!r}")


def corpus() -> list:
    return [corpus_group(name) for name in CORPUS_NAMES]


def default_varieties() -> list:
    return [builtin_variety(name) for name in VARIETY_NAMES]
