"""Core predicates: X-centralizers, XT/CSX checks, class operators,
the covering/counting identity, equational-domain scans, and universal
sentences.

All scans run in ascending element/lattice order, so witnesses are
reproducible. Everything here is a pure read over immutable groups.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .errors import CapError, GroupError
from .groups import (
    FiniteGroup,
    SubgroupSet,
    all_subgroups,
    center,
    classic_centralizer,
    generate,
    is_malnormal,
    normalizer,
)
from .varieties import VarietySpec, is_member, q_predicate, subgroup_member
from .words import evaluate_word


@dataclass(frozen=True)
class PropertyReport:
    verdict: bool
    method: str
    witness: Optional[dict] = None
    stats: dict = field(default_factory=dict)


@dataclass(frozen=True)
class XCentralizer:
    """The literal element set {x : ⟨a, x⟩ ∈ X} plus its closure diagnosis."""

    elements: tuple
    closed: bool
    generated_in_x: bool


class GroupPredicate:
    """A deterministic membership test evaluable on any SubgroupSet.

    Realized by variety membership or by plugging a T/CS-derived check
    back in; results are memoized per (parent group, member tuple).
    """

    def __init__(self, name: str, fn: Callable[[SubgroupSet], bool]):
        self.name = name
        self._fn = fn
        self._cache: dict = {}

    def __call__(self, H: SubgroupSet) -> bool:
        key = (H.parent, H.members)
        cached = self._cache.get(key)
        if cached is None:
            cached = bool(self._fn(H))
            self._cache[key] = cached
        return cached

    def __repr__(self) -> str:
        return f"GroupPredicate({self.name})"


def variety_predicate(X: VarietySpec) -> GroupPredicate:
    return GroupPredicate(f"member:{X.name}", lambda H: subgroup_member(H, X))


# ---------------------------------------------------------------------------
# X-centralizers


def x_centralizer_set(G: FiniteGroup, a: int, X: VarietySpec) -> tuple:
    key = (X, a)
    cached = G._cent_sets.get(key)
    if cached is None:
        cached = tuple(
            x for x in G.elements() if q_predicate(G, a, x, X)
        )
        G._cent_sets[key] = cached
    return cached


def x_centralizer(G: FiniteGroup, a: int, X: VarietySpec) -> XCentralizer:
    elements = x_centralizer_set(G, a, X)
    elt_set = frozenset(elements)
    # the empty set is vacuously closed and generates the trivial subgroup
    closed = all(G.mul(x, y) in elt_set for x in elements for y in elements)
    generated_in_x = subgroup_member(generate(G, elements), X)
    return XCentralizer(elements, closed, generated_in_x)


# ---------------------------------------------------------------------------
# XT


def _x_subgroups(G: FiniteGroup, X: VarietySpec, cap=None) -> list:
    return [H for H in all_subgroups(G, cap) if subgroup_member(H, X)]


def _xt_direct(G: FiniteGroup, X: VarietySpec, cap=None) -> PropertyReport:
    subs = _x_subgroups(G, X, cap)
    pairs = 0
    for i, A in enumerate(subs):
        for B in subs[i + 1 :]:
            if len(A._set & B._set) == 1:
                continue
            pairs += 1
            join = generate(G, A.members + B.members)
            if not subgroup_member(join, X):
                return PropertyReport(
                    False,
                    "direct",
                    witness={
                        "subgroup_a": A.members,
                        "subgroup_b": B.members,
                        "join": join.members,
                    },
                    stats={"x_subgroups": len(subs), "pairs_checked": pairs},
                )
    return PropertyReport(
        True, "direct", stats={"x_subgroups": len(subs), "pairs_checked": pairs}
    )


def _xt_centralizer(G: FiniteGroup, X: VarietySpec) -> PropertyReport:
    checked = 0
    for a in range(1, G.order):
        elements = x_centralizer_set(G, a, X)
        if not elements:
            continue
        checked += 1
        elt_set = frozenset(elements)
        for y in elements:
            for z in elements:
                if G.mul(G.inv(y), z) not in elt_set:
                    return PropertyReport(
                        False,
                        "centralizer",
                        witness={"element": a, "pair": (y, z)},
                        stats={"centralizers_checked": checked},
                    )
        H = SubgroupSet(G, elements, _validated=True)
        verdict = is_member(H.induced(), X)
        if not verdict.member:
            word, tup = verdict.violated
            return PropertyReport(
                False,
                "centralizer",
                witness={
                    "element": a,
                    "law": word.text(),
                    "tuple": tuple(H.members[i] for i in tup),
                },
                stats={"centralizers_checked": checked},
            )
    return PropertyReport(True, "centralizer", stats={"centralizers_checked": checked})


def is_xt(
    G: FiniteGroup, X: VarietySpec, method: str = "direct", cap=None
) -> PropertyReport:
    """XT via the lattice pair scan or via X-centralizer closure.

    If the lattice cap blocks the direct method, falls back to the
    centralizer method and flags that in the stats.
    """
    if method == "centralizer":
        return _xt_centralizer(G, X)
    if method != "direct":
        raise GroupError(f"unknown is_xt method {method!r}")
    try:
        return _xt_direct(G, X, cap)
    except CapError:
        report = _xt_centralizer(G, X)
        stats = dict(report.stats)
        stats["fallback"] = "centralizer"
        return PropertyReport(report.verdict, report.method, report.witness, stats)


def maximal_x_subgroups(G: FiniteGroup, X: VarietySpec, cap=None) -> list:
    subs = _x_subgroups(G, X, cap)
    return [
        H
        for H in subs
        if not any(H is not K and H._set < K._set for K in subs)
    ]


# ---------------------------------------------------------------------------
# CSX


def _csx_direct(G: FiniteGroup, X: VarietySpec, cap=None) -> PropertyReport:
    maxes = maximal_x_subgroups(G, X, cap)
    for M in maxes:
        report = is_malnormal(G, M)
        if not report.verdict:
            g, h = report.witness
            return PropertyReport(
                False,
                "direct",
                witness={"subgroup": M.members, "conjugator": g, "intersection": h},
                stats={"maximal_x_subgroups": len(maxes)},
            )
    return PropertyReport(True, "direct", stats={"maximal_x_subgroups": len(maxes)})


def _conjugation_condition(G: FiniteGroup, X: VarietySpec):
    """⟨a, a^z⟩ ∈ X implies ⟨a, z⟩ ∈ X, for all a != 1 and all z."""
    for a in range(1, G.order):
        for z in G.elements():
            if q_predicate(G, a, G.conj(a, z), X) and not q_predicate(G, a, z, X):
                return False, (a, z)
    return True, None


def is_csx(
    G: FiniteGroup, X: VarietySpec, method: str = "direct", cap=None
) -> PropertyReport:
    """CSX via malnormal maximal X-subgroups, or via the conjugation
    condition.

    The condition method is three-state internally: a failed condition
    refutes CSX outright; a passing condition proves CSX only together
    with XT, so without XT the verdict is reported false with
    ``conclusive`` false in the stats.
    """
    if method == "direct":
        return _csx_direct(G, X, cap)
    if method != "condition":
        raise GroupError(f"unknown is_csx method {method!r}")
    xt = is_xt(G, X, "direct", cap)
    ok, witness = _conjugation_condition(G, X)
    stats = {"xt_holds": xt.verdict, "condition_holds": ok}
    if not ok:
        a, z = witness
        return PropertyReport(
            False,
            "condition",
            witness={"element": a, "conjugator": z},
            stats={**stats, "conclusive": True},
        )
    if xt.verdict:
        return PropertyReport(True, "condition", stats={**stats, "conclusive": True})
    return PropertyReport(False, "condition", stats={**stats, "conclusive": False})


# ---------------------------------------------------------------------------
# class operators T and CS


def t_operator_holds(G: FiniteGroup, P: GroupPredicate, cap=None) -> PropertyReport:
    subs = [H for H in all_subgroups(G, cap) if P(H)]
    for i, A in enumerate(subs):
        for B in subs[i + 1 :]:
            if len(A._set & B._set) == 1:
                continue
            join = generate(G, A.members + B.members)
            if not P(join):
                return PropertyReport(
                    False,
                    "T",
                    witness={
                        "subgroup_a": A.members,
                        "subgroup_b": B.members,
                        "join": join.members,
                    },
                    stats={"p_subgroups": len(subs)},
                )
    return PropertyReport(True, "T", stats={"p_subgroups": len(subs)})


def cs_operator_holds(G: FiniteGroup, P: GroupPredicate, cap=None) -> PropertyReport:
    subs = [H for H in all_subgroups(G, cap) if P(H)]
    maxes = [
        H for H in subs if not any(H is not K and H._set < K._set for K in subs)
    ]
    for M in maxes:
        report = is_malnormal(G, M)
        if not report.verdict:
            g, h = report.witness
            return PropertyReport(
                False,
                "CS",
                witness={"subgroup": M.members, "conjugator": g, "intersection": h},
                stats={"maximal_p_subgroups": len(maxes)},
            )
    return PropertyReport(True, "CS", stats={"maximal_p_subgroups": len(maxes)})


def t_predicate(P: GroupPredicate) -> GroupPredicate:
    return GroupPredicate(
        f"T({P.name})",
        lambda H: t_operator_holds(
            H.induced(), P, cap=H.induced().order
        ).verdict,
    )


def cs_predicate(P: GroupPredicate) -> GroupPredicate:
    return GroupPredicate(
        f"CS({P.name})",
        lambda H: cs_operator_holds(
            H.induced(), P, cap=H.induced().order
        ).verdict,
    )


def operator_check(
    G: FiniteGroup, P: GroupPredicate, op: str, cap=None
) -> PropertyReport:
    if op == "T":
        return t_operator_holds(G, P, cap)
    if op == "CS":
        return cs_operator_holds(G, P, cap)
    raise GroupError(f"unknown operator {op!r}; expected 'T' or 'CS'")


# ---------------------------------------------------------------------------
# the counting identity of the finite theorem


@dataclass(frozen=True)
class PartitionReport:
    partition_ok: bool
    malnormal_ok: bool
    count_identity_ok: bool
    covered: int
    expected: int
    term_sum: int


def verify_partition_count(
    G: FiniteGroup, reps: Sequence[SubgroupSet]
) -> PartitionReport:
    """Check the covering of G \\ {1} by conjugates of the reps and the
    identity |G| - 1 = sum over reps of [G : N_G(M)] (|M| - 1).

    The counting uses the true normalizer, without assuming malnormality;
    malnormality of each rep is reported separately.
    """
    for M in reps:
        if M.parent is not G:
            raise GroupError("representative from a different group")
        if len(M) == 1 or M.is_whole_group:
            raise GroupError("representatives must be nontrivial proper subgroups")
    conjugates: list[frozenset] = []
    for M in reps:
        seen = set()
        for g in G.elements():
            conj = frozenset(G.conj(h, g) for h in M.members)
            seen.add(conj)
        conjugates.extend(seen)
    covered: set[int] = set()
    partition_ok = True
    for c in conjugates:
        body = c - {0}
        if covered & body:
            partition_ok = False
        covered |= body
    if covered != set(range(1, G.order)):
        partition_ok = False
    term_sum = 0
    for M in reps:
        index = G.order // len(normalizer(G, M))
        term_sum += index * (len(M) - 1)
    expected = G.order - 1
    malnormal_ok = all(is_malnormal(G, M).verdict for M in reps)
    return PartitionReport(
        partition_ok=partition_ok,
        malnormal_ok=malnormal_ok,
        count_identity_ok=(term_sum == expected),
        covered=len(covered),
        expected=expected,
        term_sum=term_sum,
    )


# ---------------------------------------------------------------------------
# equational domains


@dataclass(frozen=True)
class DomainReport:
    verdict: bool  # True = equational domain (no nontrivial zero divisors)
    method: str
    zero_divisors: tuple = ()
    witness: Optional[dict] = None


def zero_divisor_scan(G: FiniteGroup, method: str = "definition") -> DomainReport:
    """Zero divisors by definition, or the normal-centralizer criterion.

    definition: x != 1 with some y != 1 satisfying [x^g, y] = 1 for all g.
    normal-centralizer: a domain iff every nontrivial normal subgroup has
    trivial centralizer.
    """
    if method == "definition":
        divisors = []
        first_pair = None
        for x in range(1, G.order):
            conjugates = {G.conj(x, g) for g in G.elements()}
            for y in range(1, G.order):
                if all(G.comm(c, y) == 0 for c in conjugates):
                    divisors.append(x)
                    if first_pair is None:
                        first_pair = (x, y)
                    break
        witness = None
        if first_pair is not None:
            witness = {"zero_divisor": first_pair[0], "annihilator": first_pair[1]}
        return DomainReport(not divisors, "definition", tuple(divisors), witness)
    if method == "normal-centralizer":
        for H in all_subgroups(G):
            if len(H) == 1 or not H.normal:
                continue
            centralizing = [
                x
                for x in range(1, G.order)
                if all(G.comm(x, h) == 0 for h in H.members)
            ]
            if centralizing:
                return DomainReport(
                    False,
                    "normal-centralizer",
                    witness={
                        "normal_subgroup": H.members,
                        "centralizing_element": centralizing[0],
                    },
                )
        return DomainReport(True, "normal-centralizer")
    raise GroupError(f"unknown zero_divisor_scan method {method!r}")


# ---------------------------------------------------------------------------
# universal sentences


@dataclass(frozen=True)
class SentenceReport:
    sub_x: bool
    mal_x: bool
    xn: dict
    witnesses: dict = field(default_factory=dict)


def _tuples_with_bounded_support(pool: Sequence[int], arity: int, max_distinct: int):
    """Lexicographic tuples from pool^arity with at most max_distinct values."""

    def rec(prefix: tuple, used: frozenset):
        if len(prefix) == arity:
            yield prefix
            return
        for c in pool:
            if c in used:
                yield from rec(prefix + (c,), used)
            elif len(used) < max_distinct:
                yield from rec(prefix + (c,), used | {c})

    yield from rec((), frozenset())


def eval_universal_sentences(
    G: FiniteGroup, X: VarietySpec, n_max: int
) -> SentenceReport:
    """Evaluate Sub_X, Mal_X and the X^n family, n <= n_max.

    Q(a, b) is evaluated directly as ⟨a, b⟩ ∈ X (memoized). X^n
    instantiates each basis law at every tuple over C_X(x) that uses at
    most n distinct values; for n >= the law's arity that is the full
    tuple space. When C_X(x) is a subgroup whose induced group is already
    known to lie in X (an exhaustively verified fact), the instances are
    covered by that verification and the scan is skipped.
    """
    witnesses: dict = {}

    sub_x = True
    for x in range(1, G.order):
        cent = x_centralizer_set(G, x, X)
        cset = frozenset(cent)
        for y in cent:
            iy = G.inv(y)
            for z in cent:
                if G.mul(iy, z) not in cset:
                    sub_x = False
                    witnesses["sub_x"] = (x, y, z)
                    break
            if not sub_x:
                break
        if not sub_x:
            break

    mal_x = True
    for x in range(1, G.order):
        for z in G.elements():
            if q_predicate(G, x, G.conj(x, z), X) and not q_predicate(G, x, z, X):
                mal_x = False
                witnesses["mal_x"] = (x, z)
                break
        if not mal_x:
            break

    member_all = is_member(G, X).member
    xn: dict[int, bool] = {}
    for n in range(1, n_max + 1):
        holds = True
        if member_all:
            xn[n] = True
            continue
        for x in range(1, G.order):
            cent = x_centralizer_set(G, x, X)
            if not cent:
                continue
            cset = frozenset(cent)
            closed = all(G.mul(a, b) in cset for a in cent for b in cent)
            if closed and subgroup_member(SubgroupSet(G, cent, _validated=True), X):
                continue
            for w in X.basis:
                arity = w.arity
                if arity == 0:
                    continue
                for t in _tuples_with_bounded_support(cent, arity, n):
                    if evaluate_word(G, w, t) != 0:
                        holds = False
                        witnesses[f"xn:{n}"] = (x, w.text(), t)
                        break
                if not holds:
                    break
            if not holds:
                break
        xn[n] = holds
    return SentenceReport(sub_x=sub_x, mal_x=mal_x, xn=xn, witnesses=witnesses)
