"""Verification toolkit for generalized commutative-transitivity
(XT-groups) and conjugate-separability (CSX-groups) over finitely based
varieties, on finite groups and bounded free constructions."""

from .config import Budget, eval_budget, lattice_cap, order_cap
from .errors import (
    BudgetError,
    CapError,
    GroupError,
    VaritasError,
    WordSyntaxError,
)
from .groups import (
    FiniteGroup,
    MalnormalityReport,
    SubgroupSet,
    all_subgroups,
    alternating_group,
    builtin_group,
    center,
    classic_centralizer,
    conjugacy_class,
    cyclic_group,
    dihedral_group,
    direct_product,
    from_permutations,
    from_table,
    frobenius21_group,
    generate,
    is_malnormal,
    normalizer,
    quaternion_group,
    symmetric_group,
)
from .words import (
    FreeWord,
    IdentityVerdict,
    commutator,
    evaluate_word,
    is_identity,
    left_normed_commutator,
    marginal_subgroup,
    parse_word,
    print_word,
    standard_word,
    variable,
    verbal_subgroup,
)
from .varieties import (
    MembershipVerdict,
    OracleVerdict,
    VarietySpec,
    builtin_variety,
    is_member,
    minimal_generators,
    q_predicate,
    subgroup_member,
    var_gen_oracle,
    variety_from_basis,
)
from .properties import (
    DomainReport,
    GroupPredicate,
    PartitionReport,
    PropertyReport,
    SentenceReport,
    XCentralizer,
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
    zero_divisor_scan,
)
from .freeprod import (
    BoundedMalnormalReport,
    FreeConstruction,
    FreeProbeReport,
    NotXtWitness,
    PWord,
    bounded_malnormal_check,
    build_construction,
    d2p_amalgam,
    evaluate_free_word,
    free_probe,
    not_xt_witness,
    power_conjugacy_instances,
)
from .corpus import CORPUS_NAMES, VARIETY_NAMES, corpus, corpus_group, default_varieties

__version__ = "0.1.0"
