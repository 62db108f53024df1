import json

import pytest

from varitas import (
    GroupError,
    VaritasError,
    builtin_variety,
    corpus,
    corpus_group,
    cyclic_group,
    direct_product,
    evaluate_word,
    generate,
    is_identity,
    is_member,
    minimal_generators,
    parse_word,
    q_predicate,
    subgroup_member,
    symmetric_group,
    var_gen_oracle,
    variety_from_basis,
)
from varitas.io import load_variety_file, resolve_variety_ref


class TestVarietySpec:
    def test_builtins(self):
        assert builtin_variety("abelian").basis == (parse_word("[x1,x2]"),)
        assert builtin_variety("nilpotent-2").basis == (parse_word("[x1,x2,x3]"),)
        assert builtin_variety("burnside-2").basis == (parse_word("x1^2"),)
        with pytest.raises(VaritasError):
            builtin_variety("solvable")

    def test_contains_all_abelian(self):
        # zero exponent sums per variable characterize that flag
        for name in ("abelian", "nilpotent-2", "nilpotent-3", "metabelian"):
            assert builtin_variety(name).contains_all_abelian
        assert not builtin_variety("burnside-2").contains_all_abelian

    def test_from_basis(self):
        X = variety_from_basis("exp6-abelian", ["[x1,x2]", "x1^6"])
        assert len(X.basis) == 2
        assert is_member(cyclic_group(6), X).member
        assert not is_member(cyclic_group(4), X).member

    def test_file_loading(self, tmp_path):
        path = tmp_path / "v.json"
        path.write_text(
            json.dumps(
                {"name": "nilp2", "basis": ["[x1,x2,x3]"], "members_nilpotent": True}
            )
        )
        X = load_variety_file(str(path))
        assert X.name == "nilp2"
        assert X.members_nilpotent
        assert X == resolve_variety_ref(str(path))
        bad = tmp_path / "bad.json"
        bad.write_text("{nope")
        with pytest.raises(VaritasError):
            load_variety_file(str(bad))


class TestMembership:
    def test_s3_metabelian(self):
        assert is_member(corpus_group("S3"), builtin_variety("metabelian")).member

    def test_s4_not_metabelian_with_replayable_tuple(self):
        S4 = corpus_group("S4")
        verdict = is_member(S4, builtin_variety("metabelian"))
        assert not verdict.member
        word, tup = verdict.violated
        assert evaluate_word(S4, word, tup) != 0

    def test_d8_nilpotent2(self):
        assert is_member(corpus_group("D8"), builtin_variety("nilpotent-2")).member

    def test_abelian_iff_symmetric(self):
        ab = builtin_variety("abelian")
        for G in corpus():
            assert is_member(G, ab).member == G.is_abelian


class TestQPredicate:
    def test_s4_metabelian_paper_points(self):
        S4 = corpus_group("S4")
        X = builtin_variety("metabelian")
        a = S4.element("(2 3)")
        assert q_predicate(S4, a, S4.element("(1 2)"), X)
        assert not q_predicate(S4, a, S4.element("(1 2 3 4)"), X)

    def test_identity_pair(self):
        S4 = corpus_group("S4")
        X = builtin_variety("metabelian")
        for a in range(S4.order):
            assert q_predicate(S4, a, 0, X) == subgroup_member(generate(S4, [a]), X)

    def test_symmetry(self):
        S4 = corpus_group("S4")
        X = builtin_variety("nilpotent-2")
        for a in range(0, S4.order, 3):
            for b in range(0, S4.order, 5):
                assert q_predicate(S4, a, b, X) == q_predicate(S4, b, a, X)


class TestOracle:
    def test_c2_in_var_s3(self):
        verdict = var_gen_oracle(corpus_group("S3"), cyclic_group(2), [1])
        assert verdict.status == "member"

    def test_c4_not_in_var_s3(self):
        S3 = corpus_group("S3")
        C4 = cyclic_group(4)
        verdict = var_gen_oracle(S3, C4, [1])
        assert verdict.status == "non-member"
        # the witness is a law of S3 violated by the generator of C4
        assert is_identity(S3, verdict.witness).holds
        assert evaluate_word(C4, verdict.witness, [1] * max(verdict.witness.arity, 1)) != 0

    def test_klein_in_var_c2(self):
        V4 = direct_product(cyclic_group(2), cyclic_group(2))
        verdict = var_gen_oracle(cyclic_group(2), V4, minimal_generators(V4))
        assert verdict.status == "member"

    def test_unknown_on_tiny_cap(self):
        S3 = corpus_group("S3")
        verdict = var_gen_oracle(S3, cyclic_group(4), [1], node_cap=2)
        assert verdict.status == "unknown"
        verdict = var_gen_oracle(S3, cyclic_group(4), [1], position_cap=2)
        assert verdict.status == "unknown"

    def test_bad_generators(self):
        with pytest.raises(GroupError):
            var_gen_oracle(corpus_group("S3"), cyclic_group(4), [2])

    def test_never_contradicts_burnside2(self):
        C2 = cyclic_group(2)
        b2 = builtin_variety("burnside-2")
        for G in corpus():
            verdict = var_gen_oracle(C2, G, minimal_generators(G))
            if verdict.decisive:
                assert (verdict.status == "member") == is_member(G, b2).member


def test_minimal_generators():
    assert minimal_generators(cyclic_group(5)) == (1,)
    S4 = corpus_group("S4")
    gens = minimal_generators(S4)
    assert len(gens) == 2
