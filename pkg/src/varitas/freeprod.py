"""Word algebra for free products and amalgamated free products of two
finite factors.

Normal form: an amalgam word is ``h · t1 · t2 ... tk`` with ``h`` in the
amalgamated subgroup (stored as an A-side element index) and the ``ti``
nontrivial coset-transversal representatives of alternating factors. A
free product is handled as the amalgam over the trivial subgroup, which
makes the head trivial and the syllables the usual reduced alternating
form. Normal forms are unique relative to the fixed transversal choice
(identity represents the subgroup itself, then ascending element index),
so all equality tests go through one construction instance.

Word syntax for factor elements: ``a<k>`` and ``b<k>`` name element index
``k`` of factor A and B, with an optional ``^e`` power inside the factor,
e.g. ``"a2 b2^2"``. In the dihedral amalgam below the factor elements are
ordered so that ``a1`` is the order-2 generator and ``a2`` the rotation.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .config import Budget, eval_budget, order_cap
from .errors import GroupError, VaritasError
from .groups import FiniteGroup, SubgroupSet
from .words import FreeWord

SIDE_A = "A"
SIDE_B = "B"
_TOKEN_RE = re.compile(r"^([abAB])(\d+)(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class PWord:
    """Normal-form word: head (A-side element of the amalgamated image)
    plus alternating transversal syllables (side, element index)."""

    head: int
    syllables: tuple

    @property
    def length(self) -> int:
        return len(self.syllables)

    @property
    def is_identity(self) -> bool:
        return self.head == 0 and not self.syllables


def _dihedral_for_amalgam(p: int, name: str) -> FiniteGroup:
    """Dihedral group of order 2p ordered so index 1 is the reflection
    (the presentation's order-2 generator) and index 2 the rotation."""
    elems = [(0, 0), (0, 1)] + [(i, 0) for i in range(1, p)] + [
        (i, 1) for i in range(1, p)
    ]
    index = {e: k for k, e in enumerate(elems)}

    def mul(e1, e2):
        i1, j1 = e1
        i2, j2 = e2
        return ((i1 + (i2 if j1 == 0 else -i2)) % p, (j1 + j2) % 2)

    table = [[index[mul(x, y)] for y in elems] for x in elems]
    return FiniteGroup(
        table, labels=[str(k) for k in range(2 * p)], name=name, _trusted=True
    )


class FreeConstruction:
    """A free or amalgamated product of two finite factors."""

    def __init__(
        self,
        kind: str,
        A: FiniteGroup,
        B: FiniteGroup,
        pairing: Optional[Sequence] = None,
        name: str | None = None,
    ):
        if kind not in ("free", "amalgam"):
            raise GroupError(f"unknown construction kind {kind!r}")
        if kind == "amalgam" and pairing is None:
            raise GroupError("amalgam construction requires a pairing")
        if kind == "free" and pairing is not None:
            raise GroupError("free product takes no pairing")
        self.kind = kind
        self.A = A
        self.B = B
        self.name = name or f"{A.name}*{B.name}"
        if pairing is None:
            pairing = [(0, 0)]
        self._phi_ab = {}
        self._phi_ba = {}
        for a, b in pairing:
            a, b = int(a), int(b)
            if a in self._phi_ab or b in self._phi_ba:
                raise GroupError("pairing is not injective")
            self._phi_ab[a] = b
            self._phi_ba[b] = a
        if self._phi_ab.get(0) != 0:
            raise GroupError("pairing must identify the identities")
        self.im_a = SubgroupSet(A, self._phi_ab.keys())
        self.im_b = SubgroupSet(B, self._phi_ba.keys())
        for x in self.im_a.members:
            for y in self.im_a.members:
                if self._phi_ab[A.mul(x, y)] != B.mul(
                    self._phi_ab[x], self._phi_ab[y]
                ):
                    raise GroupError("pairing is not a homomorphism")
        if kind == "amalgam":
            if self.im_a.is_whole_group or self.im_b.is_whole_group:
                raise GroupError("amalgamated images must be proper subgroups")
        # decomposition x = h * t with t the fixed transversal rep of the
        # right coset (im)x; identity first, then ascending element index
        self._decomp = {SIDE_A: {}, SIDE_B: {}}
        self.transversals = {}
        for side, G, im, to_head in (
            (SIDE_A, A, self.im_a, lambda h: h),
            (SIDE_B, B, self.im_b, lambda h: self._phi_ba[h]),
        ):
            reps = []
            for t in G.elements():
                if t in self._decomp[side]:
                    continue
                reps.append(t)
                for h in im.members:
                    self._decomp[side][G.mul(h, t)] = (to_head(h), t)
            self.transversals[side] = tuple(reps)

    # -- helpers ------------------------------------------------------------

    def factor(self, side: str) -> FiniteGroup:
        return self.A if side == SIDE_A else self.B

    def head_in(self, side: str, head: int) -> int:
        """The head as an element of the given factor."""
        return head if side == SIDE_A else self._phi_ab[head]

    # -- normal form --------------------------------------------------------

    def normal_form(self, raw: Iterable) -> PWord:
        """Normalize a raw syllable sequence [(side, element index), ...]."""
        head = 0
        tail: list = []
        for side, elt in reversed(list(raw)):
            if side not in (SIDE_A, SIDE_B):
                raise GroupError(f"unknown factor side {side!r}")
            G = self.factor(side)
            elt = int(elt)
            if not 0 <= elt < G.order:
                raise GroupError(f"element {elt} out of range in factor {side}")
            if elt == 0:
                continue
            e = G.mul(elt, self.head_in(side, head))
            if tail and tail[0][0] == side:
                e = G.mul(e, tail.pop(0)[1])
            h, t = self._decomp[side][e]
            head = h
            if t != 0:
                tail.insert(0, (side, t))
        return PWord(head, tuple(tail))

    def word(self, side: str, elt) -> PWord:
        return self.normal_form([(side, self.factor(side).element(elt))])

    def identity_word(self) -> PWord:
        return PWord(0, ())

    def _raw(self, w: PWord) -> list:
        raw = [(SIDE_A, w.head)] if w.head != 0 else []
        return raw + list(w.syllables)

    def multiply(self, u: PWord, v: PWord) -> PWord:
        return self.normal_form(self._raw(u) + self._raw(v))

    def invert(self, u: PWord) -> PWord:
        raw = [
            (side, self.factor(side).inv(elt))
            for side, elt in reversed(u.syllables)
        ]
        raw.append((SIDE_A, self.A.inv(u.head)))
        return self.normal_form(raw)

    def conjugate(self, u: PWord, g: PWord) -> PWord:
        return self.multiply(self.multiply(self.invert(g), u), g)

    def power(self, u: PWord, e: int) -> PWord:
        if e < 0:
            return self.power(self.invert(u), -e)
        result = self.identity_word()
        for _ in range(e):
            result = self.multiply(result, u)
        return result

    def cyclic_reduce(self, u: PWord) -> PWord:
        while u.length >= 2 and u.syllables[0][0] == u.syllables[-1][0]:
            first = PWord(u.head, (u.syllables[0],))
            reduced = self.conjugate(u, first)
            if reduced.length >= u.length:
                break
            u = reduced
        return u

    def length(self, u: PWord, cyclic: bool = False) -> int:
        return (self.cyclic_reduce(u) if cyclic else u).length

    # -- parsing and formatting ----------------------------------------------

    def parse(self, text: str) -> PWord:
        raw = []
        for token in text.split():
            m = _TOKEN_RE.match(token)
            if m is None:
                raise VaritasError(
                    f"bad factor-word token {token!r}; expected e.g. 'a2' or 'b2^-1'"
                )
            side = SIDE_A if m.group(1).lower() == "a" else SIDE_B
            G = self.factor(side)
            elt = int(m.group(2))
            if not 0 <= elt < G.order:
                raise VaritasError(f"token {token!r}: index beyond factor order")
            if m.group(3) is not None:
                elt = G.power(elt, int(m.group(3)))
            raw.append((side, elt))
        return self.normal_form(raw)

    def format(self, u: PWord) -> str:
        tokens = []
        if u.head != 0:
            tokens.append(f"a{u.head}")
        for side, elt in u.syllables:
            tokens.append(("a" if side == SIDE_A else "b") + str(elt))
        return " ".join(tokens) if tokens else "1"

    def serialize(self, u: PWord) -> dict:
        return {
            "head": f"a{u.head}",
            "syllables": [
                [side, ("a" if side == SIDE_A else "b") + str(elt)]
                for side, elt in u.syllables
            ],
        }

    # -- enumeration ----------------------------------------------------------

    def bounded_words(self, max_length: int, budget: int | None = None):
        """All normal-form words of syllable length <= max_length,
        duplicate-free, in length-then-lex order (A before B)."""
        tracker = Budget(eval_budget(budget))
        heads = self.im_a.members
        out = [PWord(h, ()) for h in heads]
        rank = {SIDE_A: 0, SIDE_B: 1}
        seqs: list[tuple] = [()]
        for _ in range(max_length):
            nxt = []
            for seq in seqs:
                last = seq[-1][0] if seq else None
                for side in (SIDE_A, SIDE_B):
                    if side == last:
                        continue
                    for t in self.transversals[side]:
                        if t == 0:
                            continue
                        tracker.charge(1)
                        nxt.append(seq + ((side, t),))
            nxt.sort(key=lambda s: tuple((rank[x[0]], x[1]) for x in s))
            for seq in nxt:
                for h in heads:
                    out.append(PWord(h, seq))
            seqs = nxt
        return out

    # -- subgroup membership ---------------------------------------------------

    def in_factor_subgroup(self, u: PWord, side: str, members) -> bool:
        """Whether the word lies in a subgroup of one factor.

        Decided syntactically on the normal form: possible only for words
        of length <= 1 supported on that factor; sound and complete here.
        """
        mset = frozenset(members)
        if u.length == 0:
            return self.head_in(side, u.head) in mset
        if u.length == 1 and u.syllables[0][0] == side:
            G = self.factor(side)
            return G.mul(self.head_in(side, u.head), u.syllables[0][1]) in mset
        return False


def build_construction(
    kind: str,
    A: FiniteGroup,
    B: FiniteGroup,
    pairing: Optional[Sequence] = None,
    name: str | None = None,
) -> FreeConstruction:
    return FreeConstruction(kind, A, B, pairing, name)


def _is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    return all(p % d for d in range(3, int(p**0.5) + 1, 2))


def d2p_amalgam(p: int, cap: int | None = None) -> FreeConstruction:
    """Two dihedral factors of order 2p amalgamated over their order-2
    subgroups ⟨a1⟩ = ⟨b1⟩; p an odd prime."""
    if not _is_odd_prime(p):
        raise GroupError(f"p must be an odd prime, got {p}")
    if 2 * p > order_cap(cap):
        raise GroupError(f"factor order {2*p} exceeds the order cap")
    A = _dihedral_for_amalgam(p, f"D{2*p}a")
    B = _dihedral_for_amalgam(p, f"D{2*p}b")
    return FreeConstruction(
        "amalgam", A, B, pairing=[(0, 0), (1, 1)], name=f"d2p({p})"
    )


# ---------------------------------------------------------------------------
# bounded verification


@dataclass(frozen=True)
class BoundedMalnormalReport:
    ok_up_to: int
    witness: Optional[tuple] = None  # (g, h) as PWords
    words_checked: int = 0


def bounded_malnormal_check(
    K: FreeConstruction,
    side: str,
    max_length: int,
    members: Optional[Sequence[int]] = None,
    budget: int | None = None,
) -> BoundedMalnormalReport:
    """Exhaustively test H ∩ H^g = {1} for normal-form g of length 1..L.

    H is a subgroup of one factor (defaults to the whole factor).
    """
    G = K.factor(side)
    H = SubgroupSet(G, members if members is not None else range(G.order))
    tracker = Budget(eval_budget(budget))
    checked = 0
    for g in K.bounded_words(max_length, budget):
        if g.length < 1:
            continue
        if K.in_factor_subgroup(g, side, H.members):
            continue
        checked += 1
        for h in H.members[1:]:
            tracker.charge(4 * (g.length + 1))
            hw = K.word(side, h)
            conj = K.conjugate(hw, g)
            if K.in_factor_subgroup(conj, side, H.members):
                return BoundedMalnormalReport(0, (g, hw), checked)
    return BoundedMalnormalReport(max_length, None, checked)


@dataclass(frozen=True)
class NotXtWitness:
    found: bool
    factor_a_in_x: bool = False
    factor_b_in_x: bool = False
    intersection_element: Optional[PWord] = None
    tuple_words: Optional[tuple] = None
    value: Optional[PWord] = None


def evaluate_free_word(K: FreeConstruction, w: FreeWord, assignment) -> PWord:
    """Evaluate an abstract word at PWord arguments."""
    if len(assignment) < w.arity:
        raise VaritasError("assignment does not cover the word's variables")
    result = K.identity_word()
    for v, e in w.syllables:
        result = K.multiply(result, K.power(assignment[v - 1], e))
    return result


def not_xt_witness(K: FreeConstruction, X, depth: int, budget: int | None = None):
    """Finite certificate that the amalgam fails XT for the metabelian law.

    Certifies the factors lie in X, exhibits the nontrivial amalgamated
    element, and searches words of length <= depth for a 4-tuple whose
    double commutator has nontrivial normal form. Inconclusive when the
    search space is exhausted; never claims XT.
    """
    from .varieties import is_member
    from .words import standard_word

    law = standard_word("metabelian")
    if law not in X.basis:
        raise VaritasError("not_xt_witness expects a basis containing the "
                           "metabelian law")
    a_ok = is_member(K.A, X).member
    b_ok = is_member(K.B, X).member
    meet = K.word(SIDE_A, K.im_a.members[1]) if len(K.im_a.members) > 1 else None
    tracker = Budget(eval_budget(budget))
    pool = [w for w in K.bounded_words(depth, budget) if not w.is_identity]
    inner: list[tuple] = []
    for u1 in pool:
        for u2 in pool:
            tracker.charge(4 * (u1.length + u2.length + 2))
            c = K.multiply(
                K.multiply(K.invert(u1), K.invert(u2)), K.multiply(u1, u2)
            )
            if not c.is_identity:
                inner.append((u1, u2, c))
    for u1, u2, c1 in inner:
        for u3, u4, c2 in inner:
            tracker.charge(4 * (c1.length + c2.length + 2))
            value = K.multiply(
                K.multiply(K.invert(c1), K.invert(c2)), K.multiply(c1, c2)
            )
            if not value.is_identity:
                check = evaluate_free_word(K, law, (u1, u2, u3, u4))
                if check != value:
                    raise VaritasError("witness re-evaluation mismatch")
                return NotXtWitness(
                    True, a_ok, b_ok, meet, (u1, u2, u3, u4), value
                )
    return NotXtWitness(False, a_ok, b_ok, meet)


@dataclass(frozen=True)
class FreeProbeReport:
    no_relation_up_to: int
    witness: Optional[FreeWord] = None
    words_checked: int = 0


def free_probe(
    K: FreeConstruction,
    w1: PWord,
    w2: PWord,
    max_length: int,
    budget: int | None = None,
) -> FreeProbeReport:
    """Evaluate every nontrivial reduced two-letter word of length <= L at
    (w1, w2); reports the first one that normalizes to the identity."""
    if w1.is_identity or w2.is_identity:
        raise VaritasError("probe words must be nontrivial")
    tracker = Budget(eval_budget(budget))
    values = {(): K.identity_word()}
    letters = [(1, 1), (1, -1), (2, 1), (2, -1)]
    letter_values = {
        (1, 1): w1,
        (1, -1): K.invert(w1),
        (2, 1): w2,
        (2, -1): K.invert(w2),
    }
    frontier: list[tuple] = [()]
    checked = 0
    for _ in range(max_length):
        nxt = []
        for seq in frontier:
            for letter in letters:
                if seq and seq[-1] == (letter[0], -letter[1]):
                    continue
                new_seq = seq + (letter,)
                tracker.charge(4 * (len(new_seq) * max(w1.length, w2.length, 1) + 1))
                value = K.multiply(values[seq], letter_values[letter])
                values[new_seq] = value
                checked += 1
                if value.is_identity:
                    witness = FreeWord.from_syllables(new_seq)
                    return FreeProbeReport(0, witness, checked)
                nxt.append(new_seq)
        frontier = nxt
    return FreeProbeReport(max_length, None, checked)


def power_conjugacy_instances(
    K: FreeConstruction,
    max_z_length: int = 2,
    max_g_length: int = 3,
    max_exponent: int = 3,
    max_power_length: int = 6,
    min_z_length: int = 2,
):
    """Enumerate bounded instances g^-1 z^n g = z^m with z cyclically
    reduced of length > 1; yields (z, g, n, m).

    Length-1 words live in a factor and may have finite order, where the
    exponent comparison argument does not apply; the interesting case is
    cyclically reduced length at least two.
    """
    zs = [
        z
        for z in K.bounded_words(max_z_length)
        if z.length >= min_z_length and K.cyclic_reduce(z) == z
    ]
    gs = K.bounded_words(max_g_length)
    for z in zs:
        powers = {}
        for n in range(1, max_exponent + 1):
            if n * max(z.length, 1) > max_power_length:
                break
            powers[n] = K.power(z, n)
            powers[-n] = K.invert(powers[n])
        for g in gs:
            for n in sorted(k for k in powers if k > 0):
                lhs = K.conjugate(powers[n], g)
                for m, zm in sorted(powers.items()):
                    if lhs == zm:
                        yield (z, g, n, m)
