"""The corpus verification suite.

Every Invariants & Properties item from the library modules, plus the
acceptance-level example checks, as named, independently runnable checks.
Checks return CheckResult and never raise on a property violation; they
raise only on genuine errors (bad configuration, budget).

Check functions are pure over the process-wide corpus singletons, so a
parallel runner may evaluate them in any order; results are reassembled
in registry order to keep reports byte-identical.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .corpus import VARIETY_NAMES, corpus, corpus_group, default_varieties
from .errors import GroupError
from .freeprod import (
    bounded_malnormal_check,
    build_construction,
    d2p_amalgam,
    free_probe,
    not_xt_witness,
    power_conjugacy_instances,
)
from .groups import (
    all_subgroups,
    center,
    classic_centralizer,
    conjugacy_class,
    generate,
    is_malnormal,
)
from .properties import (
    cs_predicate,
    eval_universal_sentences,
    is_csx,
    is_xt,
    maximal_x_subgroups,
    operator_check,
    t_predicate,
    variety_predicate,
    verify_partition_count,
    x_centralizer,
    x_centralizer_set,
    zero_divisor_scan,
)
from .varieties import (
    builtin_variety,
    is_member,
    minimal_generators,
    q_predicate,
    subgroup_member,
    var_gen_oracle,
)
from .words import (
    FreeWord,
    _eval_syllables,
    evaluate_word,
    is_identity,
    marginal_subgroup,
    parse_word,
    print_word,
    standard_word,
    verbal_subgroup,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def as_report(self) -> dict:
        return {
            "check": self.name,
            "verdict": self.passed,
            "stats": {"detail": self.detail},
        }


_REGISTRY: list = []


def check(name):
    def wrap(fn):
        fn.check_name = name
        _REGISTRY.append((name, fn))
        return fn

    return wrap


def _grid():
    groups = corpus()
    varieties = default_varieties()
    return [(G, X) for G in groups for X in varieties]


def _fail(name, detail):
    return CheckResult(name, False, detail)


def _ok(name, detail=""):
    return CheckResult(name, True, detail)


def _cyclic_hypothesis(G, X) -> bool:
    """Every cyclic subgroup of G lies in X (the finite theorem's first
    hypothesis, localized to G)."""
    return all(
        subgroup_member(generate(G, (g,)), X) for g in G.elements()
    )


# ---------------------------------------------------------------------------
# group-core invariants


@check("group-core/associativity")
def check_associativity():
    name = "group-core/associativity"
    for G in corpus():
        t = G._table
        n = G.order
        for a in range(n):
            for b in range(n):
                tab = t[a][b]
                row = t[b]
                for c in range(n):
                    if t[tab][c] != t[a][row[c]]:
                        return _fail(name, f"{G.name}: ({a}{b}){c} != {a}({b}{c})")
    return _ok(name, f"{len(corpus())} groups, all triples")


@check("group-core/orbit-stabilizer")
def check_orbit_stabilizer():
    name = "group-core/orbit-stabilizer"
    for G in corpus():
        for a in G.elements():
            cls = conjugacy_class(G, a)
            cent = classic_centralizer(G, a)
            if len(cls) * len(cent) != G.order:
                return _fail(name, f"{G.name}: element {a}")
    return _ok(name)


@check("group-core/generate-idempotent")
def check_generate_idempotent():
    name = "group-core/generate-idempotent"
    for G in corpus():
        for H in all_subgroups(G):
            if generate(G, H.members).members != H.members:
                return _fail(name, f"{G.name}: subgroup {H.members}")
    return _ok(name)


def _malnormal_alternative(G, H) -> bool:
    """Second scan: every H ∩ H^g is trivial or all of H, and equality
    forces g into N_G(H) = H (when H is proper)."""
    if H.is_whole_group:
        return True
    hs = H._set
    for g in G.elements():
        inter = {h for h in H.members if G.conj(h, g) in hs}
        inter = {G.conj(h, g) for h in inter} & hs
        if inter == {0}:
            continue
        if inter != hs:
            return False
        if g not in hs:
            return False
    return True


@check("group-core/malnormal-crosscheck")
def check_malnormal_crosscheck():
    name = "group-core/malnormal-crosscheck"
    for G in corpus():
        for H in all_subgroups(G):
            if is_malnormal(G, H).verdict != _malnormal_alternative(G, H):
                return _fail(name, f"{G.name}: subgroup {H.members}")
    return _ok(name)


@check("group-core/malnormal-transitive")
def check_malnormal_transitive():
    name = "group-core/malnormal-transitive"
    for G in corpus():
        subs = all_subgroups(G)
        for H in subs:
            if not is_malnormal(G, H).verdict:
                continue
            Hg = H.induced()
            inner = {
                tuple(H.members[i] for i in K.members): K
                for K in all_subgroups(Hg)
            }
            for parent_members, K in inner.items():
                if not is_malnormal(Hg, K).verdict:
                    continue
                KinG = generate(G, parent_members)
                if not is_malnormal(G, KinG).verdict:
                    return _fail(
                        name, f"{G.name}: K={parent_members} H={H.members}"
                    )
    return _ok(name)


# ---------------------------------------------------------------------------
# words invariants


@check("words/roundtrip-1000")
def check_roundtrip():
    name = "words/roundtrip-1000"
    rng = random.Random(20240811)
    for i in range(1000):
        syllables = [
            (rng.randint(1, 5), rng.choice([-3, -2, -1, 1, 2, 3]))
            for _ in range(rng.randint(0, 12))
        ]
        w = FreeWord.from_syllables(syllables)
        if parse_word(print_word(w)) != w:
            return _fail(name, f"word #{i}: {w.text()!r}")
    return _ok(name)


@check("words/free-reduction-padding")
def check_padding():
    name = "words/free-reduction-padding"
    rng = random.Random(77)
    G = corpus_group("S4")
    for i in range(200):
        syllables = [
            (rng.randint(1, 3), rng.choice([-2, -1, 1, 2]))
            for _ in range(rng.randint(1, 6))
        ]
        w = FreeWord.from_syllables(syllables)
        padded = list(w.syllables)
        for _ in range(rng.randint(1, 4)):
            pos = rng.randint(0, len(padded))
            v = rng.randint(1, 3)
            padded[pos:pos] = [(v, 1), (v, -1)]
        assignment = [rng.randrange(G.order) for _ in range(3)]
        if _eval_syllables(G, padded, assignment) != _eval_syllables(
            G, w.syllables, assignment
        ):
            return _fail(name, f"case #{i}")
    return _ok(name)


@check("words/marginal-iff-identity")
def check_marginal_iff_identity():
    name = "words/marginal-iff-identity"
    for G in corpus():
        for X in default_varieties():
            for w in X.basis:
                holds = is_identity(G, w).holds
                full = len(marginal_subgroup(G, [w])) == G.order
                if holds != full:
                    return _fail(name, f"{G.name}, law {w.text()}")
    return _ok(name)


@check("words/commutator-marginal-is-center")
def check_marginal_center():
    name = "words/commutator-marginal-is-center"
    w = standard_word("abelian")
    for G in corpus():
        if marginal_subgroup(G, [w]).members != center(G).members:
            return _fail(name, G.name)
    return _ok(name)


@check("words/verbal-trivial-iff-identity")
def check_verbal_iff_identity():
    name = "words/verbal-trivial-iff-identity"
    for G in corpus():
        for X in default_varieties():
            for w in X.basis:
                holds = is_identity(G, w).holds
                trivial = len(verbal_subgroup(G, [w])) == 1
                if holds != trivial:
                    return _fail(name, f"{G.name}, law {w.text()}")
    return _ok(name)


@check("words/verbal-marginal-normal")
def check_verbal_marginal_normal():
    name = "words/verbal-marginal-normal"
    for G in corpus():
        for X in default_varieties():
            if not verbal_subgroup(G, X.basis).normal:
                return _fail(name, f"verbal {G.name}/{X.name}")
            if not marginal_subgroup(G, X.basis).normal:
                return _fail(name, f"marginal {G.name}/{X.name}")
    return _ok(name)


# ---------------------------------------------------------------------------
# varieties invariants


@check("varieties/abelian-iff-symmetric-table")
def check_abelian_symmetric():
    name = "varieties/abelian-iff-symmetric-table"
    ab = builtin_variety("abelian")
    for G in corpus():
        if is_member(G, ab).member != G.is_abelian:
            return _fail(name, G.name)
    return _ok(name)


@check("varieties/monotone-inclusions")
def check_monotone():
    name = "varieties/monotone-inclusions"
    chains = [
        ("burnside-2", "abelian"),
        ("abelian", "nilpotent-2"),
        ("nilpotent-2", "nilpotent-3"),
        ("abelian", "metabelian"),
    ]
    for small_name, large_name in chains:
        small = builtin_variety(small_name)
        large = builtin_variety(large_name)
        # extensional premise on the corpus: wherever the small variety's
        # laws hold, the large variety's laws hold
        if not all(
            is_member(G, large).member
            for G in corpus()
            if is_member(G, small).member
        ):
            return _fail(name, f"premise fails for {small_name} <= {large_name}")
    return _ok(name)


@check("varieties/q-symmetry")
def check_q_symmetric():
    name = "varieties/q-symmetry"
    for G in corpus():
        for X in default_varieties():
            for a in G.elements():
                for b in range(a, G.order):
                    if q_predicate(G, a, b, X) != q_predicate(G, b, a, X):
                        return _fail(name, f"{G.name}/{X.name}: ({a},{b})")
    return _ok(name)


@check("varieties/oracle-consistency")
def check_oracle_consistency():
    name = "varieties/oracle-consistency"
    c2 = corpus_group("C2")
    b2 = builtin_variety("burnside-2")
    decided = 0
    for G in corpus():
        gens = minimal_generators(G)
        verdict = var_gen_oracle(c2, G, gens)
        if not verdict.decisive:
            continue
        decided += 1
        if (verdict.status == "member") != is_member(G, b2).member:
            return _fail(name, f"oracle vs burnside-2 on {G.name}")
        if verdict.status == "non-member":
            w = verdict.witness
            if not is_identity(c2, w).holds:
                return _fail(name, f"witness for {G.name} is not a law of C2")
            if evaluate_word(G, w, [G.element(g) for g in gens]) == 0:
                return _fail(name, f"witness for {G.name} not violated in G")
    return _ok(name, f"{decided} decisive verdicts against Var(C2)")


# ---------------------------------------------------------------------------
# properties invariants


@check("properties/xt-methods-agree")
def check_xt_methods():
    name = "properties/xt-methods-agree"
    for G, X in _grid():
        if is_xt(G, X, "direct").verdict != is_xt(G, X, "centralizer").verdict:
            return _fail(name, f"{G.name}/{X.name}")
    return _ok(name)


@check("properties/sentences-crossvalidate-xt")
def check_sentences_xt():
    name = "properties/sentences-crossvalidate-xt"
    for G, X in _grid():
        report = eval_universal_sentences(G, X, 3)
        sentence_xt = report.sub_x and all(report.xn.values())
        if sentence_xt != is_xt(G, X).verdict:
            return _fail(name, f"{G.name}/{X.name}")
    return _ok(name)


@check("properties/csx-methods-agree-under-xt")
def check_csx_methods():
    name = "properties/csx-methods-agree-under-xt"
    for G, X in _grid():
        direct = is_csx(G, X, "direct").verdict
        condition = is_csx(G, X, "condition")
        if is_xt(G, X).verdict:
            if direct != condition.verdict:
                return _fail(name, f"{G.name}/{X.name}")
        elif direct and condition.stats.get("condition_holds") is False:
            # CSX always implies the condition (forward direction)
            return _fail(name, f"{G.name}/{X.name}: forward implication")
    return _ok(name)


@check("properties/centralizer-maximality")
def check_centralizer_maximality():
    name = "properties/centralizer-maximality"
    for G, X in _grid():
        if not is_xt(G, X).verdict:
            continue
        maxes = {M.members for M in maximal_x_subgroups(G, X)}
        for a in range(1, G.order):
            cent = x_centralizer_set(G, a, X)
            if not cent:
                continue
            if cent not in maxes:
                return _fail(name, f"{G.name}/{X.name}: C_X({a}) not maximal")
        for M in maximal_x_subgroups(G, X):
            for a in M.members[1:]:
                if x_centralizer_set(G, a, X) != M.members:
                    return _fail(
                        name, f"{G.name}/{X.name}: M != C_X({a}) for a in M"
                    )
    return _ok(name)


@check("properties/theorem-finite")
def check_theorem_finite():
    name = "properties/theorem-finite"
    for G, X in _grid():
        if not _cyclic_hypothesis(G, X):
            continue  # the theorem hypothesizes cyclic groups lie in X
        if is_csx(G, X).verdict and not is_member(G, X).member:
            return _fail(name, f"{G.name}/{X.name}")
    return _ok(name)


@check("properties/frobenius-partition-count")
def check_partition_count():
    name = "properties/frobenius-partition-count"
    F21 = corpus_group("frobenius21")
    c7 = generate(F21, [F21.element("(1 2 3 4 5 6 7)")])
    c3 = generate(F21, [F21.element("(1 2 4)(3 6 5)")])
    report = verify_partition_count(F21, [c7, c3])
    if not (report.partition_ok and report.count_identity_ok):
        return _fail(name, str(report))
    if report.malnormal_ok:
        return _fail(name, "C7 is normal, malnormal_ok must be false")
    if report.term_sum != 20:
        return _fail(name, f"term sum {report.term_sum} != 20")
    return _ok(name, "covering 14+6 = 20 = |G|-1")


@check("properties/subgroup-closure")
def check_subgroup_closure():
    name = "properties/subgroup-closure"
    for G, X in _grid():
        csx_g = is_csx(G, X).verdict
        xt_g = is_xt(G, X).verdict
        if not (csx_g or xt_g):
            continue
        for H in all_subgroups(G):
            Hg = H.induced()
            if csx_g and not is_csx(Hg, X).verdict:
                return _fail(name, f"CSX {G.name}/{X.name}: H={H.members}")
            if xt_g and not is_xt(Hg, X).verdict:
                return _fail(name, f"XT {G.name}/{X.name}: H={H.members}")
    return _ok(name)


@check("properties/operator-idempotence")
def check_operator_idempotence():
    name = "properties/operator-idempotence"
    for X in default_varieties():
        P = variety_predicate(X)
        TP = t_predicate(P)
        CP = cs_predicate(P)
        for G in corpus():
            if operator_check(G, P, "T").verdict != operator_check(G, TP, "T").verdict:
                return _fail(name, f"T on {G.name}/{X.name}")
            if operator_check(G, P, "CS").verdict != operator_check(G, CP, "CS").verdict:
                return _fail(name, f"CS on {G.name}/{X.name}")
    return _ok(name)


@check("properties/maximal-intersections")
def check_maximal_intersections():
    name = "properties/maximal-intersections"
    for G, X in _grid():
        if not X.contains_all_abelian:
            continue
        maxes = maximal_x_subgroups(G, X)
        trivial_meets = all(
            len(maxes[i]._set & maxes[j]._set) == 1
            for i in range(len(maxes))
            for j in range(i + 1, len(maxes))
        )
        if trivial_meets != is_xt(G, X).verdict:
            return _fail(name, f"{G.name}/{X.name}")
    return _ok(name)


@check("properties/xt-not-member-centerless-marginal")
def check_centerless_marginal():
    name = "properties/xt-not-member-centerless-marginal"
    hits = 0
    for G, X in _grid():
        if not X.contains_all_abelian:
            continue
        if not (is_xt(G, X).verdict and not is_member(G, X).member):
            continue
        hits += 1
        if len(center(G)) != 1:
            return _fail(name, f"{G.name}/{X.name}: center nontrivial")
        if len(marginal_subgroup(G, X.basis)) != 1:
            return _fail(name, f"{G.name}/{X.name}: basis marginal nontrivial")
    return _ok(name, f"{hits} XT-not-member cells")


@check("properties/decomposable-xt-implies-member")
def check_decomposable():
    name = "properties/decomposable-xt-implies-member"
    for gname in ("C2xC2", "C2xC4", "S3xC2"):
        G = corpus_group(gname)
        for X in default_varieties():
            if not X.contains_all_abelian:
                continue
            if is_xt(G, X).verdict and not is_member(G, X).member:
                return _fail(name, f"{gname}/{X.name}")
    return _ok(name)


@check("properties/domain-methods-agree")
def check_domain_methods():
    name = "properties/domain-methods-agree"
    for G in corpus():
        by_def = zero_divisor_scan(G, "definition")
        by_nc = zero_divisor_scan(G, "normal-centralizer")
        if by_def.verdict != by_nc.verdict:
            return _fail(name, G.name)
    return _ok(name)


@check("properties/domain-examples")
def check_domain_examples():
    name = "properties/domain-examples"
    c6 = zero_divisor_scan(corpus_group("C6"))
    if c6.verdict or len(c6.zero_divisors) != 5:
        return _fail(name, "C6 must have every nontrivial element a zero divisor")
    s3 = corpus_group("S3")
    report = zero_divisor_scan(s3)
    if report.verdict or s3.element("(1 2 3)") not in report.zero_divisors:
        return _fail(name, "S3 must have zero divisor (1 2 3)")
    if not zero_divisor_scan(corpus_group("A5")).verdict:
        return _fail(name, "A5 must be a domain")
    return _ok(name)


@check("properties/nilpotent-csx-implies-xt")
def check_nilpotent_csx_xt():
    name = "properties/nilpotent-csx-implies-xt"
    for G in corpus():
        for vname in ("nilpotent-2", "nilpotent-3"):
            X = builtin_variety(vname)
            if is_csx(G, X).verdict and not is_xt(G, X).verdict:
                return _fail(name, f"{G.name}/{vname}")
    return _ok(name)


@check("properties/metabelian-weak-transitivity")
def check_weak_transitivity():
    name = "properties/metabelian-weak-transitivity"
    X = builtin_variety("metabelian")
    for G in corpus():
        if not is_csx(G, X).verdict:
            continue
        subs = [H for H in all_subgroups(G) if subgroup_member(H, X)]
        for i, A in enumerate(subs):
            for B in subs[i + 1 :]:
                meet = A._set & B._set
                if len(meet) == 1:
                    continue
                meet_sub = generate(G, sorted(meet))
                if meet_sub.induced().is_abelian:
                    continue
                join = generate(G, A.members + B.members)
                if not subgroup_member(join, X):
                    return _fail(name, f"{G.name}: {A.members} vs {B.members}")
    return _ok(name)


@check("properties/universal-sentences-nilpotent")
def check_sentences_nilpotent():
    name = "properties/universal-sentences-nilpotent"
    for G in corpus():
        for vname in ("nilpotent-2", "nilpotent-3"):
            X = builtin_variety(vname)
            report = eval_universal_sentences(G, X, 3)
            sentence_xt = report.sub_x and all(report.xn.values())
            if sentence_xt != is_xt(G, X).verdict:
                return _fail(name, f"XT sentences {G.name}/{vname}")
            if is_xt(G, X).verdict:
                sentence_csx = sentence_xt and report.mal_x
                if sentence_csx != is_csx(G, X).verdict:
                    return _fail(name, f"CSX sentences {G.name}/{vname}")
    return _ok(name)


@check("properties/abelian-centralizer-coincidence")
def check_abelian_centralizer():
    name = "properties/abelian-centralizer-coincidence"
    ab = builtin_variety("abelian")
    for G in corpus():
        for a in G.elements():
            if x_centralizer_set(G, a, ab) != classic_centralizer(G, a).members:
                return _fail(name, f"{G.name}: element {a}")
    return _ok(name)


@check("properties/s4-metabelian-example")
def check_s4_example():
    name = "properties/s4-metabelian-example"
    S4 = corpus_group("S4")
    X = builtin_variety("metabelian")
    a = S4.element("(2 3)")
    x = S4.element("(1 2)")
    y = S4.element("(2 3 4)")
    if not (q_predicate(S4, a, x, X) and q_predicate(S4, a, y, X)):
        return _fail(name, "x or y missing from the metabelian centralizer")
    if q_predicate(S4, a, S4.mul(x, y), X):
        return _fail(name, "xy unexpectedly lies in the metabelian centralizer")
    if S4.label(S4.mul(x, y)) != "(1 2 3 4)":
        return _fail(name, "composition convention broken")
    diag = x_centralizer(S4, a, X)
    if diag.closed:
        return _fail(name, "C_X((2 3)) should not be closed")
    return _ok(name)


# ---------------------------------------------------------------------------
# freeprod invariants


@check("freeprod/normal-form-sound")
def check_normal_form_sound():
    name = "freeprod/normal-form-sound"
    for K in (
        build_construction("free", corpus_group("C3"), corpus_group("C3")),
        d2p_amalgam(3),
    ):
        words = K.bounded_words(3)[:1000]
        for w in words:
            if K.normal_form(K._raw(w)) != w:
                return _fail(name, f"{K.name}: not idempotent on {K.format(w)}")
            if not K.multiply(w, K.invert(w)).is_identity:
                return _fail(name, f"{K.name}: w*w^-1 != 1 for {K.format(w)}")
    return _ok(name)


@check("freeprod/factor-homomorphism")
def check_factor_homomorphism():
    name = "freeprod/factor-homomorphism"
    for K in (
        build_construction("free", corpus_group("C3"), corpus_group("C5")),
        d2p_amalgam(3),
        d2p_amalgam(5),
    ):
        for side in ("A", "B"):
            G = K.factor(side)
            for a in G.elements():
                for b in G.elements():
                    product = K.multiply(K.word(side, a), K.word(side, b))
                    if product != K.word(side, G.mul(a, b)):
                        return _fail(name, f"{K.name} factor {side}: {a}*{b}")
    return _ok(name)


@check("freeprod/amalgam-coherence")
def check_amalgam_coherence():
    name = "freeprod/amalgam-coherence"
    for p in (3, 5):
        K = d2p_amalgam(p)
        if K.normal_form([("A", 1)]) != K.normal_form([("B", 1)]):
            return _fail(name, f"p={p}: images of the order-2 generator differ")
    return _ok(name)


@check("freeprod/length-subadditive")
def check_length_subadditive():
    name = "freeprod/length-subadditive"
    for K in (
        build_construction("free", corpus_group("C3"), corpus_group("C3")),
        d2p_amalgam(3),
    ):
        words = K.bounded_words(2)
        for u in words:
            for v in words:
                if K.multiply(u, v).length > u.length + v.length:
                    return _fail(
                        name, f"{K.name}: {K.format(u)} * {K.format(v)}"
                    )
    return _ok(name)


@check("freeprod/power-conjugacy-exponents")
def check_power_conjugacy():
    name = "freeprod/power-conjugacy-exponents"
    K = build_construction("free", corpus_group("C3"), corpus_group("C3"))
    found = 0
    for z, g, n, m in power_conjugacy_instances(K, 2, 3, 3, 6):
        found += 1
        if abs(m) != abs(n):
            return _fail(
                name, f"z={K.format(z)} g={K.format(g)}: n={n}, m={m}"
            )
    if found == 0:
        return _fail(name, "no instances discovered; search is vacuous")
    return _ok(name, f"{found} instances, all with |m| = |n|")


@check("freeprod/d2p-certificates")
def check_d2p_certificates():
    name = "freeprod/d2p-certificates"
    X = builtin_variety("metabelian")
    for p in (3, 5):
        K = d2p_amalgam(p)
        if not is_member(K.A, X).member or not is_member(K.B, X).member:
            return _fail(name, f"p={p}: factors not metabelian")
        rep = bounded_malnormal_check(K, "A", 4)
        if rep.witness is not None or rep.ok_up_to != 4:
            return _fail(name, f"p={p}: factor A not malnormal up to 4")
        wit = not_xt_witness(K, X, 2)
        if not wit.found or wit.intersection_element.is_identity:
            return _fail(name, f"p={p}: no metabelian-law violation found")
    return _ok(name)


@check("freeprod/factor-malnormal-free-product")
def check_free_factor_malnormal():
    name = "freeprod/factor-malnormal-free-product"
    K = build_construction("free", corpus_group("C5"), corpus_group("C7"))
    rep = bounded_malnormal_check(K, "A", 3)
    if rep.witness is not None:
        return _fail(name, "factor of a free product must be malnormal")
    return _ok(name)


# ---------------------------------------------------------------------------
# runner


def registry_names() -> list:
    return [name for name, _ in _REGISTRY]


def run_suite(names=None, jobs: int = 1) -> list:
    selected = [
        (name, fn)
        for name, fn in _REGISTRY
        if names is None or name in names
    ]
    if names is not None:
        unknown = set(names) - {name for name, _ in selected}
        if unknown:
            raise GroupError(f"unknown suite checks: {sorted(unknown)}")
    if jobs <= 1:
        return [fn() for _, fn in selected]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = [(name, pool.submit(fn)) for name, fn in selected]
        return [future.result() for _, future in futures]
