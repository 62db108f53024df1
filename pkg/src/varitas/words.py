"""Free-group words over variables x1, x2, ...

Grammar (whitespace ignored)::

    word := term { term }
    term := atom [ "^" int ]
    atom := var | "(" word ")" | "[" word "," word { "," word } "]"
    var  := "x" posint

``[u, v, w]`` desugars left-normed to ``[[u, v], w]``. Parsing an empty
string yields the empty word (free reduction can produce it, and the
printer emits "" for it, so the round trip stays total).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .config import Budget, eval_budget
from .errors import VaritasError, WordSyntaxError
from .groups import FiniteGroup, SubgroupSet, generate

Syllable = tuple  # (variable index >= 1, nonzero exponent)


def _reduce(syllables: Iterable[Syllable]) -> tuple:
    out: list[list[int]] = []
    for v, e in syllables:
        v = int(v)
        e = int(e)
        if v < 1:
            raise VaritasError("variable indices start at 1")
        if e == 0:
            continue
        if out and out[-1][0] == v:
            out[-1][1] += e
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([v, e])
    return tuple((v, e) for v, e in out)


@dataclass(frozen=True)
class FreeWord:
    """Freely reduced word; hashable by value."""

    syllables: tuple

    def __post_init__(self):
        for i, (v, e) in enumerate(self.syllables):
            if v < 1:
                raise VaritasError("variable indices start at 1")
            if e == 0:
                raise VaritasError("syllable exponents must be nonzero")
            if i and self.syllables[i - 1][0] == v:
                raise VaritasError("word is not freely reduced")

    @classmethod
    def from_syllables(cls, syllables: Iterable[Syllable]) -> "FreeWord":
        return cls(_reduce(syllables))

    @property
    def arity(self) -> int:
        return max((v for v, _ in self.syllables), default=0)

    @property
    def is_empty(self) -> bool:
        return not self.syllables

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple((v, -e) for v, e in reversed(self.syllables)))

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord.from_syllables(self.syllables + other.syllables)

    def power(self, e: int) -> "FreeWord":
        if e == 0:
            return FreeWord(())
        base = self if e > 0 else self.inverse()
        result = base
        for _ in range(abs(e) - 1):
            result = result * base
        return result

    def exponent_sums(self) -> dict:
        sums: dict[int, int] = {}
        for v, e in self.syllables:
            sums[v] = sums.get(v, 0) + e
        return sums

    def text(self) -> str:
        parts = []
        for v, e in self.syllables:
            parts.append(f"x{v}" if e == 1 else f"x{v}^{e}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.text()


def commutator(u: FreeWord, v: FreeWord) -> FreeWord:
    return u.inverse() * v.inverse() * u * v


def left_normed_commutator(words: Sequence[FreeWord]) -> FreeWord:
    if len(words) < 2:
        raise VaritasError("left-normed commutator needs at least two entries")
    acc = commutator(words[0], words[1])
    for w in words[2:]:
        acc = commutator(acc, w)
    return acc


def variable(v: int) -> FreeWord:
    return FreeWord(((v, 1),))


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        raise WordSyntaxError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse_posint(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a digit")
        return int(self.text[start : self.pos])

    def parse_int(self) -> int:
        self.skip_ws()
        sign = 1
        if self.peek() == "-":
            self.pos += 1
            sign = -1
        return sign * self.parse_posint()

    def parse_atom(self) -> FreeWord:
        ch = self.peek()
        if ch == "x":
            self.pos += 1
            v = self.parse_posint()
            if v == 0:
                self.error("variable index 0 is not allowed")
            return variable(v)
        if ch == "(":
            self.pos += 1
            inner = self.parse_word(stoppers=")")
            self.expect(")")
            return inner
        if ch == "[":
            self.pos += 1
            entries = [self.parse_word(stoppers=",]")]
            while self.peek() == ",":
                self.pos += 1
                entries.append(self.parse_word(stoppers=",]"))
            self.expect("]")
            if len(entries) < 2:
                self.error("commutator needs at least two entries")
            return left_normed_commutator(entries)
        self.error("expected a variable, '(' or '['")

    def parse_term(self) -> FreeWord:
        atom = self.parse_atom()
        if self.peek() == "^":
            self.pos += 1
            e = self.parse_int()
            if e == 0:
                self.error("exponent 0 is not allowed")
            # single-variable atoms keep the exponent as one syllable
            if len(atom.syllables) == 1:
                v, e0 = atom.syllables[0]
                return FreeWord.from_syllables(((v, e0 * e),))
            return atom.power(e)
        return atom

    def parse_word(self, stoppers: str = "") -> FreeWord:
        result = FreeWord(())
        while True:
            ch = self.peek()
            if not ch or ch in stoppers:
                return result
            result = result * self.parse_term()


def parse_word(text: str) -> FreeWord:
    parser = _Parser(text)
    word = parser.parse_word()
    parser.skip_ws()
    if parser.pos != len(text):
        parser.error("unexpected trailing input")
    return word


def print_word(w: FreeWord) -> str:
    return w.text()


def standard_word(kind: str, param: int | None = None) -> FreeWord:
    """Built-in law words: abelian, nilpotent-k, metabelian, burnside-n."""
    if kind == "abelian":
        return commutator(variable(1), variable(2))
    if kind == "metabelian":
        return commutator(
            commutator(variable(1), variable(2)),
            commutator(variable(3), variable(4)),
        )
    if kind == "nilpotent":
        if param is None or param < 1:
            raise VaritasError("nilpotency class must be at least 1")
        return left_normed_commutator([variable(i) for i in range(1, param + 2)])
    if kind == "burnside":
        if param is None or param < 1:
            raise VaritasError("burnside exponent must be at least 1")
        return FreeWord(((1, param),))
    raise VaritasError(f"unknown standard word kind {kind!r}")


# ---------------------------------------------------------------------------
# evaluation


def word_cost(w: FreeWord) -> int:
    """Elementary products needed for one evaluation.

    Budgets are charged per word evaluation (one substituted tuple); this
    cost is informational and feeds error estimates.
    """
    return sum(abs(e) for _, e in w.syllables) + max(0, len(w.syllables) - 1)


def _eval_syllables(G: FiniteGroup, syllables, assignment) -> int:
    val = 0
    for v, e in syllables:
        val = G.mul(val, G.power(assignment[v - 1], e))
    return val


def evaluate_word(G: FiniteGroup, w: FreeWord, assignment: Sequence[int]) -> int:
    """Evaluate at assignment[i-1] for variable xi."""
    if len(assignment) < w.arity:
        raise VaritasError(
            f"word uses x{w.arity} but the assignment has {len(assignment)} entries"
        )
    return _eval_syllables(G, w.syllables, assignment)


@dataclass(frozen=True)
class IdentityVerdict:
    holds: bool
    counterexample: Optional[tuple] = None


_SMALL_SCAN = 4096
_CHUNK_TARGET = 262144


def _pow_array(T, INV, base, e: int):
    if e < 0:
        base = INV[base]
        e = -e
    result = None
    cur = base
    while e:
        if e & 1:
            result = cur if result is None else T[result, cur]
        e >>= 1
        if e:
            cur = T[cur, cur]
    return result


def _chunk_layout(n: int, k: int) -> int:
    """Number of trailing variables evaluated as one numpy block."""
    suffix = k
    while suffix > 1 and n**suffix > _CHUNK_TARGET:
        suffix -= 1
    return suffix


def _eval_chunk(G: FiniteGroup, w: FreeWord, prefix: tuple, comps):
    """Word values over one chunk; prefix vars are scalars, the rest arrays."""
    T, INV = G.numpy_table()
    k_prefix = len(prefix)
    val = None
    for v, e in w.syllables:
        if v - 1 < k_prefix:
            op = G.power(prefix[v - 1], e)
        else:
            op = _pow_array(T, INV, comps[v - 1 - k_prefix], e)
        val = op if val is None else T[val, op]
    return val


def _suffix_components(n: int, suffix: int):
    r = np.arange(n**suffix)
    return [(r // n ** (suffix - 1 - t)) % n for t in range(suffix)]


def _scan_assignments(G: FiniteGroup, w: FreeWord, budget: Budget):
    """Yield (prefix, values) chunks in lexicographic assignment order."""
    n = G.order
    k = w.arity
    suffix = _chunk_layout(n, k)
    comps = _suffix_components(n, suffix)
    chunk = n**suffix
    for prefix in itertools.product(range(n), repeat=k - suffix):
        budget.charge(chunk)
        yield prefix, _eval_chunk(G, w, prefix, comps)


def _decode_suffix(n: int, suffix: int, r: int) -> tuple:
    return tuple((r // n ** (suffix - 1 - t)) % n for t in range(suffix))


def is_identity(
    G: FiniteGroup, w: FreeWord, budget: int | None = None
) -> IdentityVerdict:
    """Exhaustive lexicographic scan; stops at the first counterexample."""
    n = G.order
    k = w.arity
    if k == 0 or n == 1:
        return IdentityVerdict(True)
    tracker = Budget(eval_budget(budget), estimate=n**k)
    if n**k <= _SMALL_SCAN:
        for assignment in itertools.product(range(n), repeat=k):
            tracker.charge(1)
            if _eval_syllables(G, w.syllables, assignment) != 0:
                return IdentityVerdict(False, assignment)
        return IdentityVerdict(True)
    suffix = _chunk_layout(n, k)
    for prefix, values in _scan_assignments(G, w, tracker):
        if np.isscalar(values) or values.ndim == 0:
            if int(values) != 0:
                return IdentityVerdict(False, prefix + (0,) * suffix)
            continue
        nz = np.flatnonzero(values)
        if nz.size:
            return IdentityVerdict(
                False, prefix + _decode_suffix(n, suffix, int(nz[0]))
            )
    return IdentityVerdict(True)


# ---------------------------------------------------------------------------
# verbal and marginal subgroups


def verbal_subgroup(
    G: FiniteGroup, words: Iterable[FreeWord], budget: int | None = None
) -> SubgroupSet:
    """Subgroup generated by all word values over all assignment tuples.

    Scanning stops early once the collected values already generate the
    whole group (the result cannot grow further). On a complete scan the
    value set is asserted closed under conjugation, which is what makes
    the result normal; on an early stop the result is G itself.
    """
    n = G.order
    values: set[int] = {0}
    limit = eval_budget(budget)
    complete = True
    for w in sorted(set(words), key=lambda u: u.syllables):
        k = w.arity
        if k == 0:
            continue
        tracker = Budget(limit, estimate=n**k)
        if n**k <= _SMALL_SCAN:
            for assignment in itertools.product(range(n), repeat=k):
                tracker.charge(1)
                values.add(_eval_syllables(G, w.syllables, assignment))
        else:
            for _, chunk in _scan_assignments(G, w, tracker):
                values.update(int(x) for x in np.unique(chunk))
                if len(generate(G, values)) == n:
                    complete = False
                    break
        if not complete:
            break
    if complete:
        for x in sorted(values):
            for g in G.elements():
                if G.conj(x, g) not in values:
                    raise VaritasError("verbal value set is not conjugation-closed")
    return generate(G, values)


def _marginal_single(G: FiniteGroup, w: FreeWord, limit: int) -> set:
    """Marginal member test per candidate: a cheap randomized probe
    rejects non-members early; survivors get the exhaustive chunked
    comparison of w(t) against every one-slot insertion of g."""
    import random

    n = G.order
    k = w.arity
    if k == 0 or n == 1:
        return set(range(n))
    tracker = Budget(limit, estimate=(n ** (k + 1)) * k)
    space = n**k
    result = {0}
    T, _ = G.numpy_table()
    suffix = _chunk_layout(n, k)
    comps = _suffix_components(n, suffix)
    base_cache: dict = {}

    def base_values(prefix):
        values = base_cache.get(prefix)
        if values is None:
            values = _eval_chunk(G, w, prefix, comps)
            base_cache[prefix] = values
        return values

    def probe(g: int, rng) -> bool:
        """False once any random tuple exposes g; True = inconclusive."""
        for _ in range(1200):
            t = tuple(rng.randrange(n) for _ in range(k))
            base = _eval_syllables(G, w.syllables, t)
            for i in range(k):
                tracker.charge(2)
                modified = t[:i] + (G.mul(g, t[i]),) + t[i + 1 :]
                if _eval_syllables(G, w.syllables, modified) != base:
                    return False
        return True

    def verify(g: int) -> bool:
        for i in range(k):
            for prefix in itertools.product(range(n), repeat=k - suffix):
                tracker.charge(n**suffix)
                base = base_values(prefix)
                if i < len(prefix):
                    mod_prefix = list(prefix)
                    mod_prefix[i] = G.mul(g, prefix[i])
                    modified = _eval_chunk(G, w, tuple(mod_prefix), comps)
                else:
                    mod_comps = list(comps)
                    mod_comps[i - len(prefix)] = T[g, comps[i - len(prefix)]]
                    modified = _eval_chunk(G, w, prefix, mod_comps)
                if not np.array_equal(base, modified):
                    return False
        return True

    for g in range(1, n):
        rng = random.Random(0xA11A + g)
        if space > _SMALL_SCAN and not probe(g, rng):
            continue
        if verify(g):
            result.add(g)
    return result


def marginal_subgroup(
    G: FiniteGroup, words: Iterable[FreeWord], budget: int | None = None
) -> SubgroupSet:
    """Elements whose insertion into any argument slot never changes a value.

    Intersected over the word set. The result must come out a subgroup;
    SubgroupSet construction enforces that.
    """
    limit = eval_budget(budget)
    members = set(range(G.order))
    for w in sorted(set(words), key=lambda u: u.syllables):
        members &= _marginal_single(G, w, limit)
    return SubgroupSet(G, members)
