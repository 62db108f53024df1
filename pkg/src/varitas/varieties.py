"""Varieties as finite identity bases, membership tests, and the Var(A) oracle."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from .config import DEFAULT_ORACLE_NODES, DEFAULT_ORACLE_POSITIONS
from .errors import GroupError, VaritasError
from .groups import FiniteGroup, SubgroupSet, generate
from .words import FreeWord, evaluate_word, is_identity, parse_word, standard_word


@dataclass(frozen=True)
class VarietySpec:
    """A named finite identity basis.

    The variety of all groups is the empty basis. ``members_nilpotent`` is
    caller-supplied metadata (true when every member group is nilpotent).
    """

    name: str
    basis: tuple
    members_nilpotent: bool = False

    @property
    def contains_all_abelian(self) -> bool:
        # a law holds in every abelian group iff each variable's total
        # exponent is zero
        return all(
            all(s == 0 for s in w.exponent_sums().values()) for w in self.basis
        )

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class MembershipVerdict:
    member: bool
    violated: Optional[tuple] = None  # (FreeWord, counterexample tuple)


@lru_cache(maxsize=None)
def builtin_variety(name: str) -> VarietySpec:
    """Built-ins: abelian, nilpotent-k, metabelian, burnside-n."""
    if name == "abelian":
        return VarietySpec("abelian", (standard_word("abelian"),), True)
    if name == "metabelian":
        return VarietySpec("metabelian", (standard_word("metabelian"),), False)
    if name.startswith("nilpotent-"):
        k = int(name.split("-", 1)[1])
        return VarietySpec(name, (standard_word("nilpotent", k),), True)
    if name.startswith("burnside-"):
        n = int(name.split("-", 1)[1])
        # exponent-2 groups are abelian, hence nilpotent
        return VarietySpec(name, (standard_word("burnside", n),), n == 2)
    raise VaritasError(f"unknown builtin variety {name!r}")


def variety_from_basis(
    name: str, basis_texts: Sequence[str], members_nilpotent: bool = False
) -> VarietySpec:
    words = tuple(parse_word(t) for t in basis_texts)
    if any(w.is_empty for w in words):
        raise VaritasError("basis words must be nonempty")
    return VarietySpec(name, words, members_nilpotent)


def is_member(
    G: FiniteGroup, X: VarietySpec, budget: int | None = None
) -> MembershipVerdict:
    """G satisfies every basis law. Memoized per group."""
    cached = G._member_cache.get(X)
    if cached is None:
        cached = MembershipVerdict(True)
        for w in X.basis:
            verdict = is_identity(G, w, budget=budget)
            if not verdict.holds:
                cached = MembershipVerdict(False, (w, verdict.counterexample))
                break
        G._member_cache[X] = cached
    return cached


def subgroup_member(H: SubgroupSet, X: VarietySpec) -> bool:
    return is_member(H.induced(), X).member


def pair_subgroup(G: FiniteGroup, a: int, b: int) -> SubgroupSet:
    key = (a, b) if a <= b else (b, a)
    cached = G._pair_sub.get(key)
    if cached is None:
        cached = generate(G, key)
        G._pair_sub[key] = cached
    return cached


def q_predicate(G: FiniteGroup, a: int, b: int, X: VarietySpec) -> bool:
    """Q(a, b) = ⟨a, b⟩ ∈ X; memoized per (group, unordered pair, variety).

    The memo lives in plain dicts: insertion is idempotent, so concurrent
    last-write-wins updates are safe.
    """
    return subgroup_member(pair_subgroup(G, a, b), X)


# ---------------------------------------------------------------------------
# Var(A) membership oracle


@dataclass(frozen=True)
class OracleVerdict:
    status: str  # "member" | "non-member" | "unknown"
    witness: Optional[FreeWord] = None  # law of A violated by G, when non-member

    @property
    def decisive(self) -> bool:
        return self.status != "unknown"


def var_gen_oracle(
    A: FiniteGroup,
    G: FiniteGroup,
    gens: Sequence[int],
    position_cap: int | None = None,
    node_cap: int | None = None,
) -> OracleVerdict:
    """Decide G ∈ Var(A) for G generated by ``gens``.

    Builds the relatively free object on d = len(gens) generators as the
    subgroup of A^(A^d) generated by the coordinate projections, closing
    pairs (free-object element, product of gens in G). A collision proves
    non-membership and yields a witness law; a functional closure proves
    membership. Hitting a cap returns "unknown", never a wrong verdict.
    """
    d = len(gens)
    if d == 0:
        raise VaritasError("oracle needs at least one generator")
    gens = [G.element(g) for g in gens]
    if len(generate(G, gens)) != G.order:
        raise GroupError("supplied generators do not generate G")
    positions = A.order**d
    if positions > (position_cap or DEFAULT_ORACLE_POSITIONS):
        return OracleVerdict("unknown")
    limit = node_cap or DEFAULT_ORACLE_NODES

    tuples = list(itertools.product(range(A.order), repeat=d))
    projections = [tuple(t[i] for t in tuples) for i in range(d)]
    identity_f = tuple(0 for _ in tuples)

    seen: dict[tuple, int] = {identity_f: 0}
    parents: dict[tuple, tuple] = {}  # f -> (parent f, generator index, sign)
    queue = [identity_f]

    def word_for(f: tuple) -> FreeWord:
        syllables = []
        while f != identity_f:
            f, i, sign = parents[f]
            syllables.append((i + 1, sign))
        syllables.reverse()
        return FreeWord.from_syllables(syllables)

    gen_steps = []
    for i in range(d):
        proj = projections[i]
        inv_proj = tuple(A.inv(x) for x in proj)
        gen_steps.append((i, 1, proj, gens[i]))
        gen_steps.append((i, -1, inv_proj, G.inv(gens[i])))

    while queue:
        f = queue.pop(0)
        g = seen[f]
        for i, sign, proj, gstep in gen_steps:
            f2 = tuple(A.mul(x, y) for x, y in zip(f, proj))
            g2 = G.mul(g, gstep)
            known = seen.get(f2)
            if known is None:
                if len(seen) >= limit:
                    return OracleVerdict("unknown")
                seen[f2] = g2
                parents[f2] = (f, i, sign)
                queue.append(f2)
            elif known != g2:
                # two spellings of the same free-object element disagree in G
                u = word_for(f) * FreeWord(((i + 1, sign),))
                witness = u * word_for(f2).inverse()
                return OracleVerdict("non-member", witness)
    return OracleVerdict("member")


def minimal_generators(G: FiniteGroup, max_size: int = 3) -> tuple:
    """Lexicographically least generating tuple of minimal size."""
    if G.order == 1:
        return (0,)
    for size in range(1, max_size + 1):
        for combo in itertools.combinations(range(1, G.order), size):
            if len(generate(G, combo)) == G.order:
                return combo
    raise GroupError(f"no generating set of size <= {max_size} found for {G.name}")
