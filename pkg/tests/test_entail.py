import random

import pytest
from hypothesis import given, settings, strategies as st

from gen import random_chase_instance
from oracles import is_model as oracle_model, models_upto, random_cq, ucq_holds

from ontofit.core import (
    ABox,
    Atom,
    BOT,
    CAtom,
    CI,
    CQ,
    Existential,
    Interpretation,
    Logic,
    Ontology,
    RAtom,
    Role,
    Rooted,
    SimQuant,
    UCQ,
    Var,
    conj,
    is_model,
    satisfies_abox,
    some,
)
from ontofit.entail import (
    Entailment,
    canonical_cq,
    chase_universal_model,
    eli_entailment_bounded,
    eli_entailment_bounded_model,
    entails_el_query,
    enum_forest_variations,
    is_forest_variation,
    reduction_queries,
    search_model,
    tree_chase,
    ucq_entailed_by_universal,
    unfold_universal,
)

x, y, z = Var("x"), Var("y"), Var("z")
A_a = ABox([CAtom("A", "a")])
GROW = Ontology([CI(Atom("A"), some("r", Atom("A")))])


def test_compact_chase_reuses_fillers():
    um = chase_universal_model(A_a, GROW)
    U = um.interp
    assert not um.inconsistent and len(U.domain) == 2
    x0 = um.reps[0][0]
    assert (x0, x0) in U.roles["r"] and ("a", x0) in U.roles["r"]


def test_chase_detects_inconsistency():
    O = Ontology([CI(Atom("A"), some("r", Atom("B"))), CI(some("r", Atom("B")), BOT)])
    assert chase_universal_model(A_a, O).inconsistent
    assert entails_el_query(A_a, O, Rooted(Atom("Z"), "a"))


def test_chase_rejects_inverse_and_sim_on_the_right():
    with pytest.raises(ValueError):
        chase_universal_model(A_a, Ontology([CI(Atom("A"), some(Role("r", True)))]))
    J = Interpretation([1], {"A": [1]})
    with pytest.raises(ValueError):
        chase_universal_model(A_a, Ontology([CI(Atom("A"), SimQuant(Logic.EL, J, 1))]))


def test_sim_quantifier_on_the_left():
    J = Interpretation([1, 2], {"B": [2]}, {"r": [(1, 2)]})
    O = Ontology([CI(SimQuant(Logic.EL, J, 1), Atom("Hit"))])
    A = ABox([RAtom("r", "a", "b"), CAtom("B", "b")])
    assert entails_el_query(A, O, Rooted(Atom("Hit"), "a"))
    assert not entails_el_query(A, O, Rooted(Atom("Hit"), "b"))


def test_el_queries_on_chase():
    assert entails_el_query(A_a, GROW, Existential(some("r", some("r", Atom("A")))))
    assert not entails_el_query(A_a, GROW, Rooted(Atom("B"), "a"))


def test_ucq_entailment_ignores_shared_cycles():
    # the compact model has a self loop but no model needs one
    q = UCQ([CQ([RAtom("r", x, x)])])
    assert not ucq_entailed_by_universal(A_a, GROW, q)
    um = chase_universal_model(A_a, GROW)
    W = unfold_universal(um, 3)
    assert is_model(W, GROW) and satisfies_abox(W, A_a)
    assert not ucq_holds(q, W)
    assert ucq_entailed_by_universal(A_a, GROW, UCQ([CQ([RAtom("r", "a", x), RAtom("r", x, y), CAtom("A", y)])]))


def test_forest_variations():
    A = ABox([RAtom("r", "a", "b"), CAtom("A", "a")])
    p = CQ([RAtom("r", x, y), CAtom("A", x)])
    vs = enum_forest_variations(A, p, Logic.EL)
    texts = sorted(str(v.cq.atoms) for v in vs)
    assert len(vs) == len(set(texts))
    # y cannot be merged into x (self loop) and r(b, a) is not asserted
    assert all(is_forest_variation(v.cq, A, Logic.EL) for v in vs)
    assert not is_forest_variation(CQ([RAtom("r", "b", "a")]), A, Logic.EL)
    assert not is_forest_variation(CQ([RAtom("r", x, x)]), A, Logic.EL)
    # two individuals in one tree
    assert not is_forest_variation(CQ([RAtom("r", "a", x), RAtom("r", "b", x)]), A, Logic.ELI)
    assert not is_forest_variation(CQ([RAtom("r", "a", x), RAtom("r", "b", x)]), A, Logic.EL)


def test_reduction_queries_root_el_trees_at_the_source():
    A = ABox([CAtom("A", "a")])
    v = enum_forest_variations(A, CQ([RAtom("r", y, x), CAtom("B", x)]), Logic.EL)
    qs = [q for var in v for q in reduction_queries(var, A)]
    assert Existential(some("r", Atom("B"))) in qs


def test_canonical_cq_is_renaming_invariant():
    q1 = CQ([RAtom("r", x, y), CAtom("A", y)])
    q2 = CQ([RAtom("r", z, x), CAtom("A", x)])
    assert canonical_cq(q1) == canonical_cq(q2)


def test_eli_bounded_entailment():
    O = Ontology([CI(Atom("A"), some("r", Atom("A"))), CI(some(Role("r", True)), Atom("B"))])
    assert eli_entailment_bounded(A_a, O, Rooted(Atom("B"), "a")) is Entailment.NOT_ENTAILED
    assert eli_entailment_bounded(A_a, O, Existential(Atom("B"))) is Entailment.ENTAILED
    status, model = eli_entailment_bounded_model(A_a, O, Rooted(Atom("B"), "a"))
    assert is_model(model, O) and "B" not in model.labels("a")
    assert eli_entailment_bounded(A_a, Ontology([CI(Atom("A"), BOT)]), None) is Entailment.ENTAILED
    assert eli_entailment_bounded(A_a, O, None) is Entailment.NOT_ENTAILED


def test_search_model_respects_bound():
    O = Ontology([CI(Atom("A"), some("r", Atom("A"))), CI(some("r", Atom("A")), Atom("B"))])
    forbidden = UCQ([CQ([RAtom("r", x, x)])])
    assert search_model(A_a, O, 1, forbidden) is None
    M = search_model(A_a, O, 2, forbidden)
    assert M is not None and len(M.domain) == 2 and is_model(M, O)


def test_tree_chase_reports_truncation():
    snap, bad, cut = tree_chase(A_a, GROW, 3)
    assert not bad and cut and len(snap.domain) == 4


@settings(max_examples=60)
@given(st.randoms(use_true_random=False))
def test_chase_model_is_a_model(rng):
    A, O = random_chase_instance(rng)
    um = chase_universal_model(A, O)
    if not um.inconsistent:
        assert oracle_model(um.interp, O) and satisfies_abox(um.interp, A)


@settings(max_examples=40)
@given(st.randoms(use_true_random=False))
def test_ucq_entailment_against_small_models(rng):
    """Entailed queries hold in every small model; refuted ones fail in the unfolded chase."""
    A, O = random_chase_instance(rng)
    q = UCQ([random_cq(rng, A.individuals)])
    um = chase_universal_model(A, O)
    if um.inconsistent:
        return
    if ucq_entailed_by_universal(A, O, q):
        assert all(ucq_holds(q, J) for J in models_upto(A, O, ("A", "B"), ("r",), 2))
    else:
        assert not ucq_holds(q, unfold_universal(um, 4))


@settings(max_examples=40)
@given(st.randoms(use_true_random=False))
def test_bounded_eli_is_sound_on_el_inputs(rng):
    A, O = random_chase_instance(rng)
    if any(isinstance(s, SimQuant) for ci in O for s in ci.lhs.subconcepts()):
        return
    q = UCQ([random_cq(rng, A.individuals)])
    exact = ucq_entailed_by_universal(A, O, q)
    got = eli_entailment_bounded(A, O, q)
    if got is Entailment.ENTAILED:
        assert exact
    elif got is Entailment.NOT_ENTAILED:
        assert not exact
