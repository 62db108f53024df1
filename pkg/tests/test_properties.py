import pytest

from varitas import (
    GroupError,
    all_subgroups,
    builtin_variety,
    center,
    classic_centralizer,
    corpus,
    corpus_group,
    cs_predicate,
    cyclic_group,
    eval_universal_sentences,
    generate,
    is_csx,
    is_malnormal,
    is_member,
    is_xt,
    maximal_x_subgroups,
    operator_check,
    subgroup_member,
    symmetric_group,
    t_predicate,
    variety_predicate,
    verify_partition_count,
    x_centralizer,
    zero_divisor_scan,
)
from varitas.properties import x_centralizer_set

abelian = builtin_variety("abelian")
nilp2 = builtin_variety("nilpotent-2")
metab = builtin_variety("metabelian")


class TestXCentralizer:
    def test_abelian_equals_classic(self):
        for name in ("S3", "S4", "Q8", "frobenius21"):
            G = corpus_group(name)
            for a in G.elements():
                assert (
                    x_centralizer_set(G, a, abelian)
                    == classic_centralizer(G, a).members
                )

    def test_s4_metabelian_not_closed(self):
        S4 = corpus_group("S4")
        a = S4.element("(2 3)")
        diag = x_centralizer(S4, a, metab)
        assert S4.element("(1 2)") in diag.elements
        assert S4.element("(2 3 4)") in diag.elements
        product = S4.mul(S4.element("(1 2)"), S4.element("(2 3 4)"))
        assert product not in diag.elements
        assert not diag.closed

    def test_identity_always_present(self):
        # the varieties here contain every cyclic group
        S4 = corpus_group("S4")
        for a in S4.elements():
            assert 0 in x_centralizer_set(S4, a, metab)


class TestIsXt:
    def test_s3_abelian_is_ct(self):
        assert is_xt(corpus_group("S3"), abelian).verdict

    def test_s4_abelian_not_ct_witness(self):
        S4 = corpus_group("S4")
        report = is_xt(S4, abelian, "centralizer")
        assert not report.verdict
        assert S4.label(report.witness["element"]) == "(1 2)(3 4)"
        cent = classic_centralizer(S4, report.witness["element"])
        assert len(cent) == 8 and not cent.induced().is_abelian

    def test_s3_nilpotent2_xt_not_member(self):
        S3 = corpus_group("S3")
        assert is_xt(S3, nilp2).verdict
        assert not is_member(S3, nilp2).member

    def test_methods_agree_on_grid(self):
        for G in corpus():
            for name in ("abelian", "nilpotent-2", "nilpotent-3", "metabelian",
                         "burnside-2"):
                X = builtin_variety(name)
                assert (
                    is_xt(G, X, "direct").verdict
                    == is_xt(G, X, "centralizer").verdict
                ), f"{G.name}/{name}"

    def test_cap_fallback_flagged(self):
        S4 = corpus_group("S4")
        report = is_xt(S4, abelian, "direct", cap=3)
        assert report.stats.get("fallback") == "centralizer"
        assert report.verdict == is_xt(S4, abelian).verdict


class TestMaximalXSubgroups:
    def test_s3_abelian(self):
        S3 = corpus_group("S3")
        maxes = {M.members for M in maximal_x_subgroups(S3, abelian)}
        assert maxes == {(0, 1), (0, 2), (0, 5), (0, 3, 4)}

    def test_member_group_is_unique_maximal(self):
        C5 = cyclic_group(5)
        maxes = maximal_x_subgroups(C5, abelian)
        assert len(maxes) == 1 and maxes[0].is_whole_group

    def test_frobenius21_abelian(self):
        F21 = corpus_group("frobenius21")
        maxes = maximal_x_subgroups(F21, abelian)
        sizes = sorted(len(M) for M in maxes)
        assert sizes == [3] * 7 + [7]


class TestIsCsx:
    def test_s3_abelian_false_with_a3(self):
        S3 = corpus_group("S3")
        report = is_csx(S3, abelian)
        assert not report.verdict
        assert report.witness["subgroup"] == (0, 3, 4)

    def test_c5_abelian(self):
        assert is_csx(cyclic_group(5), abelian).verdict

    def test_s3_metabelian(self):
        S3 = corpus_group("S3")
        assert is_csx(S3, metab).verdict
        assert is_member(S3, metab).member

    def test_condition_method_three_state(self):
        S3 = corpus_group("S3")
        report = is_csx(S3, abelian, "condition")
        assert not report.verdict
        assert report.stats["conclusive"]
        # S3 is XT for abelian, so the failed condition refutes CSX
        assert report.stats["xt_holds"]
        report = is_csx(S3, metab, "condition")
        assert report.verdict and report.stats["conclusive"]

    def test_methods_agree_under_xt(self):
        for G in corpus():
            for name in ("abelian", "nilpotent-2", "metabelian", "burnside-2"):
                X = builtin_variety(name)
                if is_xt(G, X).verdict:
                    assert (
                        is_csx(G, X, "direct").verdict
                        == is_csx(G, X, "condition").verdict
                    ), f"{G.name}/{name}"


class TestOperators:
    def test_t_on_s3_abelian(self):
        S3 = corpus_group("S3")
        P = variety_predicate(abelian)
        assert operator_check(S3, P, "T").verdict
        assert operator_check(S3, t_predicate(P), "T").verdict

    def test_t_on_s4_abelian_false(self):
        S4 = corpus_group("S4")
        P = variety_predicate(abelian)
        report = operator_check(S4, P, "T")
        assert not report.verdict
        A = generate(S4, report.witness["subgroup_a"])
        B = generate(S4, report.witness["subgroup_b"])
        assert len(A._set & B._set) > 1
        join = generate(S4, A.members + B.members)
        assert not subgroup_member(join, abelian)

    def test_cs_on_member_group(self):
        C6 = corpus_group("C6")
        P = variety_predicate(abelian)
        assert operator_check(C6, P, "CS").verdict

    def test_unknown_operator(self):
        with pytest.raises(GroupError):
            operator_check(corpus_group("S3"), variety_predicate(abelian), "Z")


class TestPartitionCount:
    def test_frobenius(self):
        F21 = corpus_group("frobenius21")
        c7 = generate(F21, [F21.element("(1 2 3 4 5 6 7)")])
        c3 = generate(F21, [F21.element("(1 2 4)(3 6 5)")])
        report = verify_partition_count(F21, [c7, c3])
        assert report.partition_ok
        assert report.count_identity_ok
        assert not report.malnormal_ok  # C7 is normal
        assert report.term_sum == 20 == report.expected

    def test_s3(self):
        S3 = corpus_group("S3")
        a3 = generate(S3, [S3.element("(1 2 3)")])
        c2 = generate(S3, [S3.element("(1 2)")])
        report = verify_partition_count(S3, [a3, c2])
        assert report.partition_ok and report.count_identity_ok
        assert report.term_sum == 5
        assert not report.malnormal_ok

    def test_rejects_improper_reps(self):
        S3 = corpus_group("S3")
        with pytest.raises(GroupError):
            verify_partition_count(S3, [generate(S3, range(6))])
        with pytest.raises(GroupError):
            verify_partition_count(S3, [generate(S3, [])])

    def test_trivial_group_vacuous(self):
        C1 = cyclic_group(1)
        report = verify_partition_count(C1, [])
        assert report.partition_ok and report.count_identity_ok
        assert report.malnormal_ok

    def test_broken_partition_detected(self):
        S3 = corpus_group("S3")
        a3 = generate(S3, [S3.element("(1 2 3)")])
        report = verify_partition_count(S3, [a3])
        assert not report.partition_ok  # transpositions are not covered
        assert not report.count_identity_ok


class TestDomains:
    def test_c6_all_zero_divisors(self):
        report = zero_divisor_scan(corpus_group("C6"))
        assert not report.verdict
        assert report.zero_divisors == (1, 2, 3, 4, 5)

    def test_s3_with_three_cycle(self):
        S3 = corpus_group("S3")
        report = zero_divisor_scan(S3)
        assert not report.verdict
        assert S3.element("(1 2 3)") in report.zero_divisors

    def test_a5_domain(self):
        assert zero_divisor_scan(corpus_group("A5")).verdict
        assert zero_divisor_scan(corpus_group("A5"), "normal-centralizer").verdict

    def test_methods_agree(self):
        for G in corpus():
            assert (
                zero_divisor_scan(G, "definition").verdict
                == zero_divisor_scan(G, "normal-centralizer").verdict
            ), G.name

    def test_definition_oracle_on_s3(self):
        # direct quantifier replay of the witness
        S3 = corpus_group("S3")
        report = zero_divisor_scan(S3)
        x = report.witness["zero_divisor"]
        y = report.witness["annihilator"]
        assert x != 0 and y != 0
        assert all(S3.comm(S3.conj(x, g), y) == 0 for g in S3.elements())


class TestSentences:
    def test_s3_abelian_pattern(self):
        report = eval_universal_sentences(corpus_group("S3"), abelian, 2)
        assert report.sub_x and all(report.xn.values())
        assert not report.mal_x  # matches is_csx false

    def test_abelian_group_all_hold(self):
        report = eval_universal_sentences(corpus_group("C12"), abelian, 3)
        assert report.sub_x and report.mal_x and all(report.xn.values())

    def test_s4_abelian_fails(self):
        report = eval_universal_sentences(corpus_group("S4"), abelian, 2)
        # Sub_X holds for the abelian variety in any group (X-centralizers
        # are ordinary centralizers); the failure shows up in the laws
        assert report.sub_x
        assert not all(report.xn.values())
        assert not (report.sub_x and all(report.xn.values()))

    def test_crossvalidates_xt(self):
        for G in corpus():
            for name in ("abelian", "nilpotent-2", "burnside-2"):
                X = builtin_variety(name)
                report = eval_universal_sentences(G, X, 3)
                assert (report.sub_x and all(report.xn.values())) == is_xt(
                    G, X
                ).verdict, f"{G.name}/{name}"


class TestTheoremsOnCorpus:
    def test_theorem_finite_with_cyclic_hypothesis(self):
        for G in corpus():
            for name in ("abelian", "nilpotent-2", "nilpotent-3", "metabelian"):
                X = builtin_variety(name)
                if is_csx(G, X).verdict:
                    assert is_member(G, X).member, f"{G.name}/{name}"

    def test_burnside2_degenerate_csx_cells_lack_hypothesis(self):
        # odd-order groups are CSX for the exponent-2 variety because the
        # only maximal member subgroup is trivial; the finite theorem does
        # not apply since their cyclic subgroups are not members
        b2 = builtin_variety("burnside-2")
        C3 = corpus_group("C3")
        assert is_csx(C3, b2).verdict
        assert not is_member(C3, b2).member
        assert not subgroup_member(generate(C3, [1]), b2)

    def test_cent2_maximality_on_s3(self):
        S3 = corpus_group("S3")
        maxes = {M.members for M in maximal_x_subgroups(S3, abelian)}
        for a in range(1, 6):
            assert x_centralizer_set(S3, a, abelian) in maxes

    def test_decomposable_xt_members(self):
        for name in ("C2xC2", "C2xC4", "S3xC2"):
            G = corpus_group(name)
            for vname in ("abelian", "nilpotent-2", "nilpotent-3", "metabelian"):
                X = builtin_variety(vname)
                if is_xt(G, X).verdict:
                    assert is_member(G, X).member, f"{name}/{vname}"
