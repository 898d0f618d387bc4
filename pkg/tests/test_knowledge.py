"""Knowledge operators over past-directed models."""

import random

import pytest

from itl import (
    CONSENSUS,
    Box,
    FiniteLassoFrame,
    KDiscovered,
    KPast,
    KRigid,
    KSince,
    KnowledgeQuery,
    Letter,
    Model,
    MultiAgentModel,
    UniformWindowFrame,
    Valuation,
    eval_consensus,
    eval_knowledge,
    eval_nt,
    expand_derived,
    parse_formula,
    vote,
    voted_pipeline,
)

from helpers import random_lasso_model, random_valuation

p, q = Letter("p"), Letter("q")


def test_k_past_finds_the_acquisition_point():
    model = Model(UniformWindowFrame(4, 1), Valuation({"p": frozenset({0, 1, 2})}))
    query = KnowledgeQuery(KPast(), p, world=0)
    assert eval_knowledge(model, query, m=1)


def test_k_past_false_when_truth_never_lapses():
    model = Model(FiniteLassoFrame(4, 0, (1, 1, 1, 1)), Valuation({"p": frozenset({0, 1, 2, 3})}))
    assert not eval_knowledge(model, KnowledgeQuery(KPast(), p, world=0), m=1)


def test_k_rigid_with_full_valuation():
    model = Model(FiniteLassoFrame(3, 0, (2, 2, 2)), Valuation({"p": frozenset({0, 1, 2})}))
    for a in range(3):
        assert eval_knowledge(model, KnowledgeQuery(KRigid(), p, world=a))


def test_k_since_needs_a_trigger_in_the_window():
    model = Model(FiniteLassoFrame(3, 2, (1, 1, 1)), Valuation({"p": frozenset({0, 1, 2})}))
    assert not eval_knowledge(model, KnowledgeQuery(KSince(q), p, world=0))


def test_k_rigid_is_box_pointwise():
    rng = random.Random(61)
    for _ in range(80):
        model = random_lasso_model(rng, letters=1)
        for a in range(model.frame.worlds):
            lhs = eval_knowledge(model, KnowledgeQuery(KRigid(), p, world=a))
            rhs = eval_nt(model, a, expand_derived(Box(), [p]))
            assert lhs == rhs


def test_k_discovered_implies_diamond():
    rng = random.Random(67)
    diamond_p = parse_formula("F p")
    for _ in range(120):
        model = random_lasso_model(rng, letters=1)
        for a in range(model.frame.worlds):
            if eval_knowledge(model, KnowledgeQuery(KDiscovered(), p, world=a)):
                assert eval_nt(model, a, diamond_p)


# --- consensus ----------------------------------------------------------------


def test_consensus_query_quantifies_over_agents():
    frame = UniformWindowFrame(3, 1)
    mam = MultiAgentModel(
        frame,
        {"a": Valuation({"p": frozenset({0, 1})}), "b": Valuation({"p": frozenset()})},
    )
    assert not eval_knowledge(mam, KnowledgeQuery(CONSENSUS, p, world=0))
    assert eval_knowledge(mam, KnowledgeQuery(CONSENSUS, p, world=0, agent="a"))


def test_consensus_monotone_under_agent_removal():
    rng = random.Random(71)
    for _ in range(60):
        worlds = rng.randint(3, 5)
        frame = FiniteLassoFrame(worlds, rng.randint(0, worlds - 1), tuple([2] * worlds))
        agents = {f"a{i}": random_valuation(rng, 1, worlds) for i in range(rng.randint(2, 4))}
        mam = MultiAgentModel(frame, agents)
        subset = dict(list(agents.items())[:-1])
        sub_mam = MultiAgentModel(frame, subset)
        for a in range(worlds):
            if eval_consensus(mam, a, p):
                assert eval_consensus(sub_mam, a, p)


def test_agent_routing_for_macro_operators():
    frame = FiniteLassoFrame(2, 0, (1, 1))
    mam = MultiAgentModel(
        frame,
        {"a": Valuation({"p": frozenset({0, 1})}), "b": Valuation({"p": frozenset()})},
    )
    assert eval_knowledge(mam, KnowledgeQuery(KRigid(), p, world=0, agent="a"))
    assert not eval_knowledge(mam, KnowledgeQuery(KRigid(), p, world=0, agent="b"))
    with pytest.raises(ValueError):
        eval_knowledge(mam, KnowledgeQuery(KRigid(), p, world=0))
    with pytest.raises(ValueError):
        eval_knowledge(mam, KnowledgeQuery(KRigid(), p, world=0, agent="nobody"))


# --- voted pipeline -------------------------------------------------------------


def test_voted_pipeline_agreement_reduces_to_single_agent():
    rng = random.Random(73)
    for _ in range(30):
        model = random_lasso_model(rng, letters=2, max_worlds=4)
        mam = MultiAgentModel(model.frame, {f"a{i}": model.valuation for i in range(3)})
        f = parse_formula("p U q")
        table = voted_pipeline(mam, f)
        for a, value in table.items():
            assert value == eval_nt(model, a, f)


def test_voted_pipeline_box_table():
    frame = UniformWindowFrame(3, 1)
    agreeing = Valuation({"p": frozenset({0, 1})})
    dissent = Valuation({"p": frozenset({0})})
    mam = MultiAgentModel(frame, {"a": agreeing, "b": agreeing, "c": dissent})
    voted = vote(mam)
    assert voted.valuation.true_worlds["p"] == frozenset({0, 1})
    table = voted_pipeline(mam, parse_formula("G p"))
    assert table == {0: True, 1: False}


def test_voted_pipeline_split_everywhere_is_all_false():
    frame = UniformWindowFrame(3, 1)
    mam = MultiAgentModel(
        frame,
        {"a": Valuation({"p": frozenset({0, 1, 2})}), "b": Valuation({"p": frozenset()})},
    )
    table = voted_pipeline(mam, parse_formula("F p"))
    assert table == {0: False, 1: False}
