import pytest
from hypothesis import given, settings, strategies as st

from varitas import (
    BudgetError,
    FreeWord,
    VaritasError,
    WordSyntaxError,
    center,
    commutator,
    corpus_group,
    cyclic_group,
    evaluate_word,
    is_identity,
    marginal_subgroup,
    parse_word,
    print_word,
    quaternion_group,
    standard_word,
    symmetric_group,
    variable,
    verbal_subgroup,
)
from varitas.words import _eval_syllables, word_cost

syllable_lists = st.lists(
    st.tuples(
        st.integers(min_value=1, max_value=5),
        st.integers(min_value=-4, max_value=4).filter(lambda e: e != 0),
    ),
    max_size=10,
)


class TestParse:
    def test_commutator(self):
        w = parse_word("[x1,x2]")
        assert w.syllables == ((1, -1), (2, -1), (1, 1), (2, 1))
        assert w.arity == 2

    def test_power_syllable(self):
        assert parse_word("x1^2").syllables == ((1, 2),)
        assert parse_word("x1^-3").syllables == ((1, -3),)

    def test_left_normed_desugar(self):
        assert parse_word("[x1,x2,x2]") == commutator(
            commutator(variable(1), variable(2)), variable(2)
        )

    def test_grouping_power(self):
        w = parse_word("(x1 x2)^2")
        assert w.syllables == ((1, 1), (2, 1), (1, 1), (2, 1))

    def test_whitespace_ignored(self):
        assert parse_word("[ x1 , x2 ]") == parse_word("[x1,x2]")

    def test_empty_input_is_empty_word(self):
        assert parse_word("").is_empty

    def test_reduction_during_parse(self):
        assert parse_word("x1 x1^-1").is_empty
        assert parse_word("x1 x1").syllables == ((1, 2),)

    def test_errors_carry_position(self):
        with pytest.raises(WordSyntaxError) as err:
            parse_word("x0")
        assert err.value.position >= 0
        with pytest.raises(WordSyntaxError):
            parse_word("x1^0")
        with pytest.raises(WordSyntaxError):
            parse_word("[x1]")
        with pytest.raises(WordSyntaxError):
            parse_word("x1)")
        with pytest.raises(WordSyntaxError):
            parse_word("y1")

    @settings(max_examples=200, deadline=None)
    @given(syllable_lists)
    def test_print_parse_roundtrip(self, syllables):
        w = FreeWord.from_syllables(syllables)
        assert parse_word(print_word(w)) == w


class TestStandardWords:
    def test_families(self):
        assert standard_word("nilpotent", 1) == parse_word("[x1,x2]")
        assert standard_word("nilpotent", 2) == parse_word("[x1,x2,x3]")
        assert standard_word("burnside", 2) == parse_word("x1^2")
        assert standard_word("metabelian") == parse_word("[[x1,x2],[x3,x4]]")

    def test_invalid_params(self):
        with pytest.raises(VaritasError):
            standard_word("nilpotent", 0)
        with pytest.raises(VaritasError):
            standard_word("burnside", 0)
        with pytest.raises(VaritasError):
            standard_word("dada")


class TestEvaluate:
    def test_commutator_of_transpositions(self):
        S3 = symmetric_group(3)
        w = parse_word("[x1,x2]")
        got = evaluate_word(S3, w, (S3.element("(1 2)"), S3.element("(1 3)")))
        assert S3.element_order(got) == 3

    def test_all_identity_assignment(self):
        S3 = symmetric_group(3)
        w = parse_word("[[x1,x2],[x3,x4]]")
        assert evaluate_word(S3, w, (0, 0, 0, 0)) == 0

    def test_square_of_three_cycle(self):
        S3 = symmetric_group(3)
        w = parse_word("x1^2")
        got = evaluate_word(S3, w, (S3.element("(1 2 3)"),))
        assert S3.label(got) == "(1 3 2)"

    def test_missing_binding(self):
        S3 = symmetric_group(3)
        with pytest.raises(VaritasError):
            evaluate_word(S3, parse_word("x1 x3"), (1, 2))

    @settings(max_examples=60, deadline=None)
    @given(syllable_lists, st.data())
    def test_padding_invariance(self, syllables, data):
        # inserting x*x^-1 pairs anywhere cannot change the value
        G = corpus_group("S4")
        w = FreeWord.from_syllables(syllables)
        arity = max(w.arity, 1)
        assignment = data.draw(
            st.lists(
                st.integers(min_value=0, max_value=G.order - 1),
                min_size=arity,
                max_size=arity,
            )
        )
        padded = list(w.syllables)
        pos = data.draw(st.integers(min_value=0, max_value=len(padded)))
        v = data.draw(st.integers(min_value=1, max_value=arity))
        padded[pos:pos] = [(v, 1), (v, -1)]
        assert _eval_syllables(G, padded, assignment) == _eval_syllables(
            G, w.syllables, assignment
        )


class TestIsIdentity:
    def test_abelian_law_on_c6(self):
        assert is_identity(cyclic_group(6), parse_word("[x1,x2]")).holds

    def test_abelian_law_fails_on_s3(self):
        S3 = symmetric_group(3)
        verdict = is_identity(S3, parse_word("[x1,x2]"))
        assert not verdict.holds
        a, b = verdict.counterexample
        assert evaluate_word(S3, parse_word("[x1,x2]"), (a, b)) != 0
        # lexicographically first: nothing smaller violates
        for x in range(a + 1):
            for y in range(b if x == a else S3.order):
                assert S3.comm(x, y) == 0

    def test_metabelian_law_on_s3(self):
        assert is_identity(symmetric_group(3), parse_word("[[x1,x2],[x3,x4]]")).holds

    def test_counterexamples_replay_on_big_groups(self):
        # exercises the chunked scanner path
        A5 = corpus_group("A5")
        for text in ("[x1,x2,x3,x4]", "[[x1,x2],[x3,x4]]"):
            w = parse_word(text)
            verdict = is_identity(A5, w)
            assert not verdict.holds
            assert evaluate_word(A5, w, verdict.counterexample) != 0

    def test_budget_error_reports_requirement(self):
        A5 = corpus_group("A5")
        with pytest.raises(BudgetError) as err:
            is_identity(A5, parse_word("[x1,x2,x3,x4]"), budget=1000)
        assert err.value.required == A5.order**4


class TestVerbal:
    def test_derived_subgroup_of_s4(self):
        S4 = symmetric_group(4)
        H = verbal_subgroup(S4, [parse_word("[x1,x2]")])
        assert len(H) == 12
        # oracle: the even permutations
        even = [i for i, p in enumerate(S4._perms) if _sign(p) == 1]
        assert list(H.members) == even

    def test_abelian_group_trivial(self):
        assert len(verbal_subgroup(cyclic_group(6), [parse_word("[x1,x2]")])) == 1

    def test_squares_in_q8(self):
        Q8 = quaternion_group()
        H = verbal_subgroup(Q8, [parse_word("x1^2")])
        assert H.labels() == ("1", "-1")

    def test_normality(self):
        for name in ("S3", "S4", "A4", "Q8"):
            G = corpus_group(name)
            assert verbal_subgroup(G, [parse_word("[x1,x2]")]).normal


class TestMarginal:
    def test_q8_commutator_marginal_is_center(self):
        Q8 = quaternion_group()
        H = marginal_subgroup(Q8, [parse_word("[x1,x2]")])
        assert H.labels() == ("1", "-1")
        assert H.members == center(Q8).members

    def test_s3_trivial(self):
        assert len(marginal_subgroup(symmetric_group(3), [parse_word("[x1,x2]")])) == 1

    def test_identity_word_gives_whole_group(self):
        C6 = cyclic_group(6)
        assert len(marginal_subgroup(C6, [parse_word("[x1,x2]")])) == C6.order

    def test_brute_force_agreement(self):
        # oracle: direct quantifier evaluation, no probing or chunking
        w = parse_word("[x1,x2]")
        for name in ("S3", "D8", "Q8"):
            G = corpus_group(name)
            expected = set()
            for g in G.elements():
                ok = True
                for t1 in G.elements():
                    for t2 in G.elements():
                        base = G.comm(t1, t2)
                        if (
                            G.comm(G.mul(g, t1), t2) != base
                            or G.comm(t1, G.mul(g, t2)) != base
                        ):
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    expected.add(g)
            assert set(marginal_subgroup(G, [w]).members) == expected


def _sign(p):
    n = len(p)
    seen = [False] * n
    sign = 1
    for i in range(n):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def test_word_cost_counts_products():
    assert word_cost(parse_word("x1^3")) == 3
    assert word_cost(parse_word("[x1,x2]")) == 7
