"""Finite groups as multiplication tables over 0-based element indices.

Element 0 is always the identity. Permutation products use the
apply-right-factor-first convention (function composition): the product
``p*q`` sends a point ``x`` to ``p(q(x))``; with this choice
``(1 2)*(2 3 4) = (1 2 3 4)``.

Tables built internally (permutation closure, builtin families, direct
products) come from operations that are associative a priori and skip the
associativity test; explicit user tables go through Light's test.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Optional, Sequence

from .config import lattice_cap, order_cap
from .errors import CapError, GroupError

Perm = tuple

# ---------------------------------------------------------------------------
# cycle notation


def parse_cycles(text: str, degree: int | None = None) -> Perm:
    """Parse "(1 2)(3 4)" into a 0-based mapping tuple.

    Points are 1-based in the notation. "()" is the identity. Cycles must
    be disjoint.
    """
    text = text.strip()
    if text in ("()", ""):
        return tuple(range(degree or 0))
    cycles: list[list[int]] = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch != "(":
            raise GroupError(f"bad cycle notation {text!r}: expected '(' at {pos}")
        end = text.find(")", pos)
        if end < 0:
            raise GroupError(f"bad cycle notation {text!r}: unclosed '('")
        body = text[pos + 1 : end].replace(",", " ").split()
        try:
            cycle = [int(tok) for tok in body]
        except ValueError:
            raise GroupError(f"bad cycle notation {text!r}: non-integer point") from None
        if any(p < 1 for p in cycle):
            raise GroupError(f"bad cycle notation {text!r}: points are 1-based")
        if cycle:
            cycles.append([p - 1 for p in cycle])
        pos = end + 1
    seen: set[int] = set()
    for cycle in cycles:
        for p in cycle:
            if p in seen:
                raise GroupError(f"bad cycle notation {text!r}: cycles not disjoint")
            seen.add(p)
    n = degree if degree is not None else (max(seen) + 1 if seen else 1)
    if seen and max(seen) >= n:
        raise GroupError(f"cycle {text!r} uses point {max(seen)+1} beyond degree {n}")
    mapping = list(range(n))
    for cycle in cycles:
        for i, p in enumerate(cycle):
            mapping[p] = cycle[(i + 1) % len(cycle)]
    return tuple(mapping)


def cycle_label(perm: Sequence[int]) -> str:
    """Canonical disjoint-cycle string, "()" for the identity."""
    n = len(perm)
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cycle = [start]
        seen[start] = True
        nxt = perm[start]
        while nxt != start:
            cycle.append(nxt)
            seen[nxt] = True
            nxt = perm[nxt]
        out.append("(" + " ".join(str(p + 1) for p in cycle) + ")")
    return "".join(out) if out else "()"


def compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    """Product p*q with q applied first: (p*q)(x) = p(q(x))."""
    return tuple(p[q[x]] for x in range(len(p)))


# ---------------------------------------------------------------------------
# table validation


def _validate_structure(table: Sequence[Sequence[int]]) -> None:
    n = len(table)
    if n == 0:
        raise GroupError("empty table")
    full = list(range(n))
    for i, row in enumerate(table):
        if len(row) != n:
            raise GroupError(f"table row {i} has length {len(row)}, expected {n}")
        if sorted(row) != full:
            raise GroupError(f"table row {i} is not a permutation of 0..{n-1}")
    for j in range(n):
        if sorted(table[i][j] for i in range(n)) != full:
            raise GroupError(f"table column {j} is not a permutation of 0..{n-1}")
    for k in range(n):
        if table[0][k] != k or table[k][0] != k:
            raise GroupError("element 0 is not a two-sided identity")


def _generating_set(table: Sequence[Sequence[int]]) -> list[int]:
    """Greedy generating set for Light's associativity test."""
    n = len(table)
    closure = {0}
    gens: list[int] = []
    for e in range(1, n):
        if e in closure:
            continue
        gens.append(e)
        current = set(closure) | {e}
        while True:
            new = {table[a][b] for a in current for b in current} - current
            if not new:
                break
            current |= new
        closure = current
        if len(closure) == n:
            break
    return gens


def _light_associativity(table: Sequence[Sequence[int]]) -> None:
    n = len(table)
    for g in _generating_set(table):
        row_g = table[g]
        for a in range(n):
            t_ag = table[a][g]
            row_a = table[a]
            left = table[t_ag]
            for b in range(n):
                if left[b] != row_a[row_g[b]]:
                    raise GroupError(
                        f"table is not associative: ({a}*{g})*{b} != {a}*({g}*{b})"
                    )


# ---------------------------------------------------------------------------


class FiniteGroup:
    """Immutable multiplication-table group.

    All heavy derived data (subgroup lattice, induced subgroup tables,
    joins, membership verdicts) is memoized on the instance; the group
    itself never changes after construction, so concurrent readers are
    safe.
    """

    def __init__(
        self,
        table: Sequence[Sequence[int]],
        labels: Optional[Sequence[str]] = None,
        name: str = "G",
        perms: Optional[Sequence[Perm]] = None,
        _trusted: bool = False,
    ):
        self.order = len(table)
        self._table = tuple(tuple(int(x) for x in row) for row in table)
        _validate_structure(self._table)
        if not _trusted:
            _light_associativity(self._table)
        self._inv = tuple(row.index(0) for row in self._table)
        if labels is None:
            labels = [str(i) for i in range(self.order)]
        if len(labels) != self.order:
            raise GroupError("labels length does not match order")
        self.labels = tuple(str(x) for x in labels)
        self.name = name
        self._perms = tuple(perms) if perms is not None else None
        self._label_index = {lab: i for i, lab in enumerate(self.labels)}
        self._perm_index = (
            {p: i for i, p in enumerate(self._perms)} if self._perms else None
        )
        # memo caches; keys are member tuples / value-hashable specs
        self._induced: dict = {}
        self._joins: dict = {}
        self._subgroups: list | None = None
        self._normal: dict = {}
        self._malnormal: dict = {}
        self._pair_sub: dict = {}
        self._member_cache: dict = {}
        self._cent_sets: dict = {}
        self._np_table = None
        self._np_inv = None
        self._abelian: bool | None = None

    # -- basic arithmetic ---------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self._table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def conj(self, a: int, x: int) -> int:
        """a^x = x^-1 a x."""
        t = self._table
        return t[t[self._inv[x]][a]][x]

    def comm(self, a: int, b: int) -> int:
        """[a, b] = a^-1 b^-1 a b."""
        t = self._table
        return t[t[t[self._inv[a]][self._inv[b]]][a]][b]

    def power(self, a: int, e: int) -> int:
        if e < 0:
            a = self._inv[a]
            e = -e
        result = 0
        base = a
        while e:
            if e & 1:
                result = self._table[result][base]
            e >>= 1
            if e:
                base = self._table[base][base]
        return result

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self._table[x][a]
            k += 1
        return k

    def elements(self) -> range:
        return range(self.order)

    # -- lookups ------------------------------------------------------------

    def label(self, i: int) -> str:
        return self.labels[i]

    def element(self, ref) -> int:
        """Resolve an element from an index, a label, or cycle notation."""
        if isinstance(ref, int):
            if not 0 <= ref < self.order:
                raise GroupError(f"element index {ref} out of range for {self.name}")
            return ref
        text = str(ref).strip()
        if text in self._label_index:
            return self._label_index[text]
        if self._perm_index is not None and ("(" in text or text == "()"):
            degree = len(self._perms[0])
            perm = parse_cycles(text, degree)
            if perm in self._perm_index:
                return self._perm_index[perm]
        if text.isdigit():
            return self.element(int(text))
        raise GroupError(f"unknown element {ref!r} of {self.name}")

    @property
    def is_abelian(self) -> bool:
        if self._abelian is None:
            t = self._table
            n = self.order
            self._abelian = all(
                t[a][b] == t[b][a] for a in range(n) for b in range(a + 1, n)
            )
        return self._abelian

    def numpy_table(self):
        if self._np_table is None:
            import numpy as np

            self._np_table = np.array(self._table, dtype=np.intp)
            self._np_inv = np.array(self._inv, dtype=np.intp)
        return self._np_table, self._np_inv

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"


# ---------------------------------------------------------------------------
# subgroups


class SubgroupSet:
    """A subgroup of a fixed parent group, stored as sorted element indices.

    Construction validates closure and the Lagrange divisibility sanity
    check; inverse closure follows from product closure in a finite group.
    """

    __slots__ = ("parent", "members", "_set", "_gens")

    def __init__(
        self,
        parent: FiniteGroup,
        members: Iterable[int],
        _gens: Optional[tuple] = None,
        _validated: bool = False,
    ):
        self.parent = parent
        self.members = tuple(sorted(set(int(m) for m in members)))
        self._set = frozenset(self.members)
        self._gens = _gens
        if not _validated:
            self._validate()

    def _validate(self) -> None:
        G = self.parent
        if not self.members or self.members[0] != 0:
            raise GroupError("subgroup must contain the identity (index 0)")
        if any(not 0 <= m < G.order for m in self.members):
            raise GroupError("subgroup member out of range")
        s = self._set
        for a in self.members:
            row = G._table[a]
            for b in self.members:
                if row[b] not in s:
                    raise GroupError(
                        f"set is not closed: {G.label(a)}*{G.label(b)} escapes"
                    )
        if G.order % len(self.members) != 0:
            raise GroupError("subgroup size does not divide the group order")

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, idx: int) -> bool:
        return idx in self._set

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SubgroupSet)
            and other.parent is self.parent
            and other.members == self.members
        )

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def __repr__(self) -> str:
        return f"SubgroupSet({self.parent.name}, size={len(self.members)})"

    @property
    def is_whole_group(self) -> bool:
        return len(self.members) == self.parent.order

    @property
    def normal(self) -> bool:
        G = self.parent
        cached = G._normal.get(self.members)
        if cached is None:
            s = self._set
            cached = all(
                G.conj(h, g) in s for g in G.elements() for h in self.members
            )
            G._normal[self.members] = cached
        return cached

    def labels(self) -> tuple:
        return tuple(self.parent.label(m) for m in self.members)

    def induced(self) -> FiniteGroup:
        """The subgroup as a standalone group, reindexed 0..|H|-1."""
        G = self.parent
        if self.is_whole_group:
            return G
        cached = G._induced.get(self.members)
        if cached is None:
            index = {m: i for i, m in enumerate(self.members)}
            table = [
                [index[G.mul(a, b)] for b in self.members] for a in self.members
            ]
            cached = FiniteGroup(
                table,
                labels=[G.label(m) for m in self.members],
                name=f"{G.name}|{len(self.members)}",
                _trusted=True,
            )
            G._induced[self.members] = cached
        return cached


@dataclass(frozen=True)
class MalnormalityReport:
    verdict: bool
    witness: Optional[tuple] = None  # (g, h) with g not in H, 1 != h in H ∩ H^g


def generate(G: FiniteGroup, seeds: Iterable[int]) -> SubgroupSet:
    """Least subgroup containing ``seeds``; empty seeds give the trivial one."""
    seed_list = sorted(set(int(s) for s in seeds))
    for s in seed_list:
        if not 0 <= s < G.order:
            raise GroupError(f"seed index {s} out of range")
    gens = [g for g in seed_list if g != 0]
    step = gens + [G.inv(g) for g in gens]
    reached = {0}
    queue = [0]
    while queue:
        x = queue.pop()
        row = G._table[x]
        for g in step:
            y = row[g]
            if y not in reached:
                reached.add(y)
                queue.append(y)
    return SubgroupSet(G, reached, _gens=tuple(gens), _validated=True)


def _join(G: FiniteGroup, a: SubgroupSet, b: SubgroupSet) -> SubgroupSet:
    key = (a.members, b.members) if a.members <= b.members else (b.members, a.members)
    cached = G._joins.get(key)
    if cached is None:
        gens_a = a._gens if a._gens is not None else a.members
        gens_b = b._gens if b._gens is not None else b.members
        cached = generate(G, tuple(gens_a) + tuple(gens_b))
        G._joins[key] = cached
    return cached


def all_subgroups(G: FiniteGroup, cap: int | None = None) -> list:
    """Complete subgroup list, sorted by (size, members).

    Computed by closing the cyclic subgroups under pairwise join until a
    fixpoint; complete because every subgroup is a finite join of the
    cyclic subgroups it contains.
    """
    limit = lattice_cap(cap)
    if G.order > limit:
        raise CapError(
            f"subgroup enumeration needs order <= {limit}, got {G.order}"
        )
    if G._subgroups is not None:
        return list(G._subgroups)
    by_members: dict[tuple, SubgroupSet] = {}
    for g in G.elements():
        h = generate(G, (g,))
        by_members.setdefault(h.members, h)
    while True:
        current = list(by_members.values())
        added = False
        for i, a in enumerate(current):
            for b in current[i + 1 :]:
                if a._set <= b._set or b._set <= a._set:
                    continue
                j = _join(G, a, b)
                if j.members not in by_members:
                    by_members[j.members] = j
                    added = True
        if not added:
            break
    result = sorted(by_members.values(), key=lambda h: (len(h.members), h.members))
    G._subgroups = result
    return list(result)


def is_malnormal(G: FiniteGroup, H: SubgroupSet) -> MalnormalityReport:
    """H ∩ H^g = {1} for every g outside H.

    The whole group and the trivial subgroup are vacuously malnormal. The
    witness, when present, is the least such pair: least failing g, then
    the least nontrivial element of H ∩ H^g.
    """
    if H.parent is not G:
        raise GroupError("subgroup belongs to a different group")
    cached = G._malnormal.get(H.members)
    if cached is not None:
        return cached
    hs = H._set
    report = MalnormalityReport(True)
    for g in G.elements():
        if g in hs:
            continue
        hits = sorted(
            c for h in H.members[1:] if (c := G.conj(h, g)) in hs
        )
        if hits:
            report = MalnormalityReport(False, (g, hits[0]))
            break
    G._malnormal[H.members] = report
    return report


def classic_centralizer(G: FiniteGroup, a: int) -> SubgroupSet:
    """{x : xa = ax}; always a subgroup."""
    t = G._table
    members = [x for x in G.elements() if t[x][a] == t[a][x]]
    return SubgroupSet(G, members, _validated=True)


def center(G: FiniteGroup) -> SubgroupSet:
    t = G._table
    n = G.order
    members = [
        x for x in range(n) if all(t[x][y] == t[y][x] for y in range(n))
    ]
    return SubgroupSet(G, members, _validated=True)


def conjugacy_class(G: FiniteGroup, a: int) -> tuple:
    return tuple(sorted({G.conj(a, x) for x in G.elements()}))


def normalizer(G: FiniteGroup, H: SubgroupSet) -> SubgroupSet:
    hs = H._set
    members = [
        g
        for g in G.elements()
        if all(G.conj(h, g) in hs for h in H.members)
    ]
    return SubgroupSet(G, members, _validated=True)


# ---------------------------------------------------------------------------
# constructors


def from_table(
    table: Sequence[Sequence[int]],
    labels: Optional[Sequence[str]] = None,
    name: str = "G",
) -> FiniteGroup:
    """Build from an explicit table; runs the full validator."""
    return FiniteGroup(table, labels=labels, name=name, _trusted=False)


def from_permutations(
    generators: Sequence, name: Optional[str] = None, cap: int | None = None
) -> FiniteGroup:
    """Closure of permutation generators (cycle strings or mapping tuples)."""
    limit = order_cap(cap)
    perms: list[Perm] = []
    degree = 0
    parsed = []
    for gen in generators:
        if isinstance(gen, str):
            p = parse_cycles(gen)
        else:
            p = tuple(int(x) for x in gen)
        parsed.append(p)
        degree = max(degree, len(p))
    if degree == 0:
        degree = 1
    if degree > 12:
        raise GroupError(f"permutation degree {degree} exceeds 12")
    for p in parsed:
        p = tuple(p) + tuple(range(len(p), degree))
        if sorted(p) != list(range(degree)):
            raise GroupError("generator is not a permutation")
        perms.append(p)
    identity = tuple(range(degree))
    closure = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for g in perms:
                q = compose(p, g)
                if q not in closure:
                    if len(closure) >= limit:
                        raise CapError(
                            f"permutation closure exceeds order cap {limit}"
                        )
                    closure.add(q)
                    nxt.append(q)
        frontier = nxt
    ordered = sorted(closure)
    index = {p: i for i, p in enumerate(ordered)}
    table = [[index[compose(p, q)] for q in ordered] for p in ordered]
    return FiniteGroup(
        table,
        labels=[cycle_label(p) for p in ordered],
        name=name or f"perm{len(ordered)}",
        perms=ordered,
        _trusted=True,
    )


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic order must be positive")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    labels = ["1"] + [f"g^{k}" if k > 1 else "g" for k in range(1, n)]
    return FiniteGroup(table, labels=labels, name=f"C{n}", _trusted=True)


def dihedral_group(order: int) -> FiniteGroup:
    """Dihedral group of the given (even) order, elements r^i s^j."""
    if order < 2 or order % 2 != 0:
        raise GroupError("dihedral order must be even and at least 2")
    n = order // 2
    elems = [(i, j) for j in range(2) for i in range(n)]
    index = {e: k for k, e in enumerate(elems)}

    def mul(e1, e2):
        i1, j1 = e1
        i2, j2 = e2
        i = (i1 + (i2 if j1 == 0 else -i2)) % n
        return (i, (j1 + j2) % 2)

    table = [[index[mul(a, b)] for b in elems] for a in elems]

    def lab(e):
        i, j = e
        r = "" if i == 0 else ("r" if i == 1 else f"r^{i}")
        s = "s" if j else ""
        txt = (r + (" " if r and s else "") + s).strip()
        return txt or "1"

    return FiniteGroup(
        table, labels=[lab(e) for e in elems], name=f"D{order}", _trusted=True
    )


def symmetric_group(n: int) -> FiniteGroup:
    if not 1 <= n <= 5:
        raise GroupError("symmetric builtin supports n <= 5")
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[compose(p, q)] for q in perms] for p in perms]
    return FiniteGroup(
        table,
        labels=[cycle_label(p) for p in perms],
        name=f"S{n}",
        perms=perms,
        _trusted=True,
    )


def _perm_sign(p: Perm) -> int:
    n = len(p)
    seen = [False] * n
    sign = 1
    for i in range(n):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def alternating_group(n: int) -> FiniteGroup:
    if not 1 <= n <= 5:
        raise GroupError("alternating builtin supports n <= 5")
    perms = sorted(
        p for p in itertools.permutations(range(n)) if _perm_sign(p) == 1
    )
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[compose(p, q)] for q in perms] for p in perms]
    return FiniteGroup(
        table,
        labels=[cycle_label(p) for p in perms],
        name=f"A{n}",
        perms=perms,
        _trusted=True,
    )


def quaternion_group() -> FiniteGroup:
    """Q8 with elements 1, -1, i, -i, j, -j, k, -k."""
    units = ["1", "i", "j", "k"]
    # unit multiplication: (sign, unit)
    rules = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("j", "1"): (1, "j"), ("k", "1"): (1, "k"),
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "i"): (-1, "k"),
        ("j", "k"): (1, "i"), ("k", "j"): (-1, "i"),
        ("k", "i"): (1, "j"), ("i", "k"): (-1, "j"),
    }
    elems = [(s, u) for u in units for s in (1, -1)]
    elems.sort(key=lambda e: (units.index(e[1]), -e[0]))  # 1,-1,i,-i,j,-j,k,-k
    index = {e: n for n, e in enumerate(elems)}

    def mul(a, b):
        s, u = rules[(a[1], b[1])]
        return (s * a[0] * b[0], u)

    table = [[index[mul(a, b)] for b in elems] for a in elems]
    labels = [("" if s > 0 else "-") + u for s, u in elems]
    return FiniteGroup(table, labels=labels, name="Q8", _trusted=True)


def frobenius21_group() -> FiniteGroup:
    """C7 ⋊ C3 on 7 points: a 7-cycle and the doubling map x -> 2x mod 7."""
    g = from_permutations(["(1 2 3 4 5 6 7)", "(1 2 4)(3 6 5)"], name="frobenius21")
    if g.order != 21:
        raise GroupError("frobenius21 closure has unexpected order")
    return g


def elementary_abelian_group(q: int) -> FiniteGroup:
    """Elementary abelian group of prime-power order q = p^k."""
    if q < 2:
        raise GroupError("elementary-abelian order must be a prime power >= 2")
    p = None
    for d in range(2, q + 1):
        if q % d == 0:
            p = d
            break
    k = 0
    rest = q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise GroupError(f"{q} is not a prime power")
    vectors = list(itertools.product(range(p), repeat=k))
    index = {v: i for i, v in enumerate(vectors)}
    table = [
        [index[tuple((a + b) % p for a, b in zip(u, v))] for v in vectors]
        for u in vectors
    ]
    labels = ["(" + ",".join(str(c) for c in v) + ")" for v in vectors]
    return FiniteGroup(table, labels=labels, name=f"E{q}", _trusted=True)


def direct_product(A: FiniteGroup, B: FiniteGroup, cap: int | None = None) -> FiniteGroup:
    limit = order_cap(cap)
    if A.order * B.order > limit:
        raise CapError(f"product order {A.order * B.order} exceeds cap {limit}")
    nb = B.order
    table = [
        [
            A.mul(a1, a2) * nb + B.mul(b1, b2)
            for a2 in A.elements()
            for b2 in B.elements()
        ]
        for a1 in A.elements()
        for b1 in B.elements()
    ]
    labels = [
        f"({A.label(a)},{B.label(b)})" for a in A.elements() for b in B.elements()
    ]
    return FiniteGroup(
        table, labels=labels, name=f"{A.name}x{B.name}", _trusted=True
    )


_BUILTIN_FAMILIES = {
    "cyclic": lambda p: cyclic_group(p),
    "dihedral": lambda p: dihedral_group(p),
    "symmetric": lambda p: symmetric_group(p),
    "alternating": lambda p: alternating_group(p),
    "quaternion8": lambda p: quaternion_group(),
    "frobenius21": lambda p: frobenius21_group(),
    "elementary-abelian": lambda p: elementary_abelian_group(p),
}


def builtin_group(family: str, param: int | None = None) -> FiniteGroup:
    try:
        factory = _BUILTIN_FAMILIES[family]
    except KeyError:
        raise GroupError(
            f"unknown builtin family {family!r}; known: {sorted(_BUILTIN_FAMILIES)}"
        ) from None
    return factory(param)
