from pytest import raises

from aspconf import (
    DELETE_INSERT,
    DELETE_ONLY,
    ChangeSet,
    ConfidentialitySetup,
    Literal,
    Policy,
    Program,
    PublishSolution,
    Query,
    Rule,
    abducibles_deletion,
    brute_force_publish,
    dependency_abducibles,
    dependency_layers,
    is_skeptical_solution,
    minimality_audit,
    normalize_policy,
    parse_policy,
    parse_program,
    ptr_cred,
    publish,
    serialize,
    transform,
    verify,
)
from aspconf.abduction import INSTANCE_GRANULARITY
from aspconf.confidentiality import FILTER_REJECTED, GOAL_UNREACHABLE
from aspconf.exceptions import EmptyPolicy, EmptyUniverse, InconsistentInput, ResourceCap

from .utils import load_program

UNIVERSE = ("aids", "flu", "mary", "medi1", "medi2", "pete")


def lit(predicate, *args, negated=False):
    return Literal.of(predicate, *args, negated=negated)


def disjunctive_rule():
    return Rule.make(
        [lit("ill", "X", "aids"), lit("ill", "X", "flu")],
        pos=[lit("treat", "X", "medi1")],
        naf=[lit("treat", "X", "medi2")],
    )


ILL_MARY = Rule.fact(lit("ill", "mary", "aids"))
TREAT_PETE = Rule.fact(lit("treat", "pete", "medi1"))
MEDI2_PETE = Rule.fact(lit("treat", "pete", "medi2"))


def changesets(result):
    return [s.changeset for s in result]


def test_normalize_policy_keeps_conjunctions(policy_prime):
    assert normalize_policy(policy_prime, UNIVERSE) == [
        Query([lit("ill", "X", "aids")]),
        Query([lit("able_to_work", "X", negated=True)]),
    ]


def test_normalize_policy_grounds_shared_variables():
    found = normalize_policy(parse_policy("p(X) | q(X)."), ("a", "b"))
    assert found == [
        Query([lit("p", "a")]),
        Query([lit("q", "a")]),
        Query([lit("p", "b")]),
        Query([lit("q", "b")]),
    ]
    with raises(EmptyUniverse):
        normalize_policy(parse_policy("p(X) | q(X)."), ())


def test_normalize_policy_splits_independent_disjuncts():
    assert normalize_policy(parse_policy("p(X) | q(Y)."), ()) == [
        Query([lit("p", "X")]),
        Query([lit("q", "Y")]),
    ]


def test_normalize_policy_dedupes_variants():
    assert normalize_policy(parse_policy("p(X).\np(Y).\np(X) | p(Z)."), ()) == [
        Query([lit("p", "X")])
    ]


def test_ptr_cred(policy_prime):
    ptr = ptr_cred(normalize_policy(policy_prime, UNIVERSE))
    assert len(ptr.rules) == 3
    assert serialize(ptr.rules) == (
        "__obs_neg_1 :- ill(X,aids).\n"
        "__obs_neg_2 :- -able_to_work(X).\n"
        "__obs_pos :- not __obs_neg_1, not __obs_neg_2.\n"
    )
    assert str(ptr.goal) == ":- not __obs_pos."
    assert str(ptr.blocked) == ":- __obs_pos."


def test_ptr_cred_empty_policy():
    with raises(EmptyPolicy):
        ptr_cred([])


def test_abducibles_deletion(kb):
    assert abducibles_deletion(kb) == kb


def test_dependency_layers(kb, prior, policy_prime):
    ptr = ptr_cred(normalize_policy(policy_prime, UNIVERSE))
    layers = dependency_layers(kb, prior, ptr)
    assert layers == [
        [lit("ill", "X", "aids"), lit("able_to_work", "X", negated=True)],
        [lit("treat", "X", "medi1"), lit("treat", "X", "medi2"), lit("ill", "X", "flu")],
    ]


def test_dependency_abducibles(kb, prior, policy_prime):
    ptr = ptr_cred(normalize_policy(policy_prime, UNIVERSE))
    a = dependency_abducibles(kb, prior, ptr)
    assert {r.literal for r in a if r.is_fact} == {
        lit("ill", "X", "aids"),
        lit("able_to_work", "X", negated=True),
        lit("ill", "X", "flu"),
        lit("treat", "X", "medi1"),
        lit("treat", "X", "medi2"),
        lit("ill", "mary", "aids"),
        lit("treat", "pete", "medi1"),
    }
    assert disjunctive_rule() in a


def test_dependency_chain_includes_first_layer():
    prior = parse_program("a :- b.\nb :- c.")
    ptr = ptr_cred(normalize_policy(parse_policy("a."), ()))
    layers = dependency_layers(parse_program("c."), prior, ptr)
    assert [l for layer in layers for l in layer] == [lit("a"), lit("b"), lit("c")]


def test_is_skeptical_solution(kb, prior, policy_prime):
    ptr = ptr_cred(normalize_policy(policy_prime, UNIVERSE))
    assert is_skeptical_solution(kb, ChangeSet(f=[ILL_MARY, TREAT_PETE]), prior, ptr)
    assert not is_skeptical_solution(kb, ChangeSet(f=[ILL_MARY]), prior, ptr)
    assert not is_skeptical_solution(kb, ChangeSet(), prior, ptr)


def test_verify_published_program(prior, policy_prime):
    report = verify(load_program("k_pub.lp"), prior, policy_prime)
    assert report.passed
    assert report.consistent
    assert not report.leaks


def test_verify_original_program_leaks(kb, policy_prime):
    report = verify(kb, Program(), policy_prime)
    assert not report.passed
    assert report.leaks == [
        (
            Query([lit("ill", "X", "aids")]),
            [Query([lit("ill", "mary", "aids")]), Query([lit("ill", "pete", "aids")])],
        )
    ]


def test_verify_empty_policy(kb):
    assert verify(kb, Program(), Policy())


def test_verify_inconsistent_program(policy):
    report = verify(load_program("inconsistent.lp"), Program(), policy)
    assert not report.consistent
    assert not report.passed


def test_publish_delete_only(running_example):
    result = publish(running_example, DELETE_ONLY)
    assert changesets(result) == [
        ChangeSet(f=[ILL_MARY, TREAT_PETE]),
        ChangeSet(f=[ILL_MARY, disjunctive_rule()]),
    ]
    assert result.reason is None
    assert result.stats["answer_sets"] == 3
    assert result.stats["candidates"] == 3
    assert result.stats["filter_checks"] == 3
    assert result.stats["reduction_checks"] == 5
    first, second = result
    assert first.k_pub == Program([disjunctive_rule()])
    assert second.k_pub == Program([TREAT_PETE])
    assert [str(a) for a in first.witness] == [
        "__del_ill(mary,aids)",
        "__del_treat(pete,medi1)",
    ]
    for solution in result:
        assert solution.verified
        assert minimality_audit(running_example, solution)


def test_publish_delete_insert(running_example):
    result = publish(running_example, DELETE_INSERT)
    assert set(changesets(result)) == {
        ChangeSet(f=[ILL_MARY, TREAT_PETE]),
        ChangeSet(f=[ILL_MARY, disjunctive_rule()]),
        ChangeSet([MEDI2_PETE], [ILL_MARY]),
    }
    assert changesets(result) == sorted(changesets(result), key=lambda cs: cs.sort_key)
    for solution in result:
        assert solution.verified
        assert minimality_audit(running_example, solution)
        assert not any(l.is_reserved for l in solution.k_pub.literals())


def test_publish_negative_fact_variant(kb_prime, policy):
    setup = ConfidentialitySetup(kb_prime, Program(), policy)
    result = publish(setup, DELETE_INSERT)
    assert set(changesets(result)) == {
        ChangeSet(f=[ILL_MARY, TREAT_PETE]),
        ChangeSet(f=[ILL_MARY, disjunctive_rule()]),
        ChangeSet([MEDI2_PETE], [ILL_MARY]),
    }
    assert len(publish(setup, DELETE_ONLY)) == 2


def test_publish_without_prior(kb, policy):
    result = publish(ConfidentialitySetup(kb, Program(), policy), DELETE_INSERT)
    assert len(result) == 3


def test_publish_nothing_to_protect(kb):
    setup = ConfidentialitySetup(kb, Program(), parse_policy("ill(X,cold)."))
    (solution,) = publish(setup, DELETE_ONLY)
    assert solution.changeset.is_empty
    assert solution.k_pub == kb


def test_publish_goal_unreachable(kb, policy):
    setup = ConfidentialitySetup(kb, load_program("prior_mary.lp", "prior"), policy)
    result = publish(setup, DELETE_ONLY)
    assert list(result) == []
    assert result.reason == GOAL_UNREACHABLE


def test_publish_filters_credulous_candidates():
    setup = ConfidentialitySetup(parse_program("a ; b."), Program(), parse_policy("a."))
    assert changesets(publish(setup)) == [ChangeSet(f=parse_program("a ; b."))]


def test_publish_filters_choice():
    k = parse_program("a :- not b.\nb :- not a.")
    setup = ConfidentialitySetup(k, Program(), parse_policy("a."))
    result = publish(setup)
    assert changesets(result) == [ChangeSet(f=parse_program("a :- not b."))]
    assert result.stats["filter_checks"] >= 2


def test_publish_filter_rejects_everything():
    # the prior alone leaves an answer set containing the secret
    setup = ConfidentialitySetup(parse_program("c."), parse_program("a ; b."), parse_policy("a."))
    result = publish(setup)
    assert list(result) == []
    assert result.reason == FILTER_REJECTED
    assert result.stats["candidates"] == 2


def test_publish_rejects_inconsistent_input(policy):
    setup = ConfidentialitySetup(load_program("inconsistent.lp"), Program(), policy)
    with raises(InconsistentInput):
        publish(setup)


def test_publish_empty_policy(kb):
    with raises(EmptyPolicy):
        publish(ConfidentialitySetup(kb))


def test_publish_instance_granularity():
    k = parse_program("p(X) :- q(X).\nq(a).\nq(b).")
    setup = ConfidentialitySetup(k, Program(), parse_policy("p(a)."))
    by_rule = publish(setup, DELETE_ONLY)
    assert changesets(by_rule) == [
        ChangeSet(f=[lit("q", "a")]),
        ChangeSet(f=parse_program("p(X) :- q(X).")),
    ]
    by_instance = publish(setup, DELETE_ONLY, granularity=INSTANCE_GRANULARITY)
    assert changesets(by_instance) == [
        ChangeSet(f=[lit("q", "a")]),
        ChangeSet(f=parse_program("p(a) :- q(a).")),
    ]
    assert by_instance[1].k_pub == parse_program("p(b) :- q(b).\nq(a).\nq(b).")


def test_minimality_audit_rejects_padding(running_example):
    padded = ChangeSet(f=[ILL_MARY, TREAT_PETE, disjunctive_rule()])
    solution = PublishSolution(padded, Program(), None)
    assert not minimality_audit(running_example, solution)


def test_brute_force_publish_agrees(running_example):
    result = publish(running_example, DELETE_ONLY)
    assert brute_force_publish(running_example, DELETE_ONLY) == changesets(result)


def test_brute_force_publish_cap(running_example):
    with raises(ResourceCap):
        brute_force_publish(running_example, DELETE_INSERT)


def test_transform_delete_only(running_example):
    t = transform(running_example, DELETE_ONLY)
    assert t.layers is None
    assert t.abducibles == running_example.k
    assert t.ptr.goal in t.program
    inserts, deletes = t.items()
    assert inserts == []
    assert deletes == [ILL_MARY, TREAT_PETE, disjunctive_rule()]


def test_transform_delete_insert(running_example):
    t = transform(running_example, DELETE_INSERT)
    assert len(t.layers) == 2
    plus = Literal.of("__ins_treat", "pete", "medi2")
    assert plus in t.update.ua_plus
    assert Rule.make([plus], pos=[lit("treat", "pete", "medi2")]) in t.update.rules


def test_setup_universe(kb, prior):
    setup = ConfidentialitySetup(kb, prior, parse_policy("ill(X,cold)."), ["zed"])
    assert setup.universe() == UNIVERSE[:1] + ("cold",) + UNIVERSE[1:] + ("zed",)


def test_publish_reduces_unwitnessed_changes():
    # deleting the fact c alone has no update-program answer set, since c
    # stays derivable from a
    k = parse_program("c.\na :- not b.\nb :- c, not a.\nc :- a.\ns :- b.")
    setup = ConfidentialitySetup(k, Program(), parse_policy("s."))
    result = publish(setup, DELETE_ONLY)
    expected = [
        ChangeSet(f=parse_program("c.")),
        ChangeSet(f=parse_program("b :- c, not a.")),
        ChangeSet(f=parse_program("s :- b.")),
    ]
    assert changesets(result) == expected
    assert brute_force_publish(setup, DELETE_ONLY) == expected
    assert result.stats["reduction_checks"] > 0
    for solution in result:
        assert minimality_audit(setup, solution)
