import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from gen import random_abox
from oracles import coloring_oracle, sim_relation

from ontofit.core import (
    ABox,
    Atom,
    BOT,
    CAtom,
    CI,
    CQ,
    Example,
    ExampleCollection,
    Logic,
    Ontology,
    QueryLang,
    RAtom,
    TOP,
    UCQ,
    Var,
    aq,
    eval_concept,
    some,
)
from ontofit.fit import (
    UNKNOWN,
    U_ROLE,
    Verdict,
    audit_witness,
    decide_aq_fit,
    decide_consistency_fit,
    decide_fit,
    decide_ucq_fit_el,
    decide_ucq_fit_eli_bounded,
    encode_abox_as_ontology,
    encode_char_poly,
    fit_no_negatives,
    gamma_sets,
    gen_coloring_instance,
    refine_completion,
    synth_alternative_consistency,
    verify_fit,
)
from ontofit.sim import max_simulation

x = Var("x")


def cons(pos, neg, logic):
    return ExampleCollection([Example(ABox(a), None) for a in pos], [Example(ABox(a), None) for a in neg], logic, QueryLang.CONSISTENCY)


def test_consistency_no_carries_a_total_simulation():
    E = cons([[CAtom("A", "a"), RAtom("r", "a", "b")]], [[CAtom("A", "c")]], Logic.ELB)
    d = decide_consistency_fit(E)
    assert d.verdict is Verdict.NO and d.certificate["negative"] == 0
    assert ("c", (0, "a")) in {(p, tuple(q)) for p, q in d.certificate["simulation"]}


def test_consistency_yes_for_both_depth_modes():
    E = cons([[CAtom("A", "a")]], [[CAtom("A", "c"), CAtom("B", "c")]], Logic.ELB)
    for mode in ("tight", "bound"):
        d = decide_consistency_fit(E, depth=mode)
        assert d.verdict is Verdict.YES and verify_fit(d.ontology, E) is True
    with pytest.raises(ValueError):
        decide_consistency_fit(E, depth="deep")


def test_consistency_without_bottom():
    E = cons([[CAtom("A", "a")]], [[CAtom("B", "c")]], Logic.EL)
    assert decide_consistency_fit(E).verdict is Verdict.NO
    assert decide_consistency_fit(cons([[CAtom("A", "a")]], [], Logic.EL)).verdict is Verdict.YES


def test_vbar_requires_bottom_and_a_fit():
    E = cons([[CAtom("A", "a")]], [[CAtom("B", "c")]], Logic.EL)
    with pytest.raises(ValueError):
        synth_alternative_consistency(E)
    with pytest.raises(ValueError):
        synth_alternative_consistency(cons([[CAtom("A", "a"), CAtom("B", "a")]], [[CAtom("A", "c")]], Logic.ELB))


@settings(max_examples=40)
@given(st.randoms(use_true_random=False), st.sampled_from([Logic.ELB, Logic.ELIB]))
def test_consistency_decision_matches_simulations(rng, logic):
    """NO exactly when some negative totally simulates into the positives."""
    pos = [random_abox(rng, rng.randint(1, 5), rng.randint(1, 3)) for _ in range(2)]
    neg = [random_abox(rng, rng.randint(1, 5), rng.randint(1, 3)) for _ in range(2)]
    E = ExampleCollection([Example(a, None) for a in pos], [Example(a, None) for a in neg], logic, QueryLang.CONSISTENCY)
    d = decide_consistency_fit(E)
    from ontofit.core import disjoint_union

    plus = disjoint_union([a.interp for a in pos])
    blocked = any({p for p, _ in sim_relation(logic.inverse, a.interp, plus)} >= set(a.interp.domain) for a in neg)
    assert (d.verdict is Verdict.NO) == blocked
    if d.verdict is Verdict.YES:
        assert verify_fit(d.ontology, E) is True
        assert verify_fit(encode_char_poly(d.ontology, E), E) is True
        assert verify_fit(synth_alternative_consistency(E), E) is True


def aqs(pos, neg, logic):
    return ExampleCollection([Example(ABox(a), aq(*q)) for a, q in pos], [Example(ABox(a), aq(*q)) for a, q in neg], logic, QueryLang.AQ)


def test_aq_completion_rule_derives_from_positives():
    E = aqs([([CAtom("A", "a")], ("B", "a"))], [([CAtom("A", "c"), CAtom("C", "c")], ("D", "c"))], Logic.EL)
    comp = refine_completion(E, Logic.EL)
    assert "B" in comp.interp.labels((0, "c"))
    d = decide_aq_fit(E)
    assert d.verdict is Verdict.YES and verify_fit(d.ontology, E) is True


def test_aq_no_when_negative_query_is_forced():
    E = aqs([([CAtom("A", "a")], ("B", "a"))], [([CAtom("A", "c")], ("B", "c"))], Logic.ELIB)
    d = decide_aq_fit(E)
    assert d.verdict is Verdict.NO and tuple(d.certificate["assertion"]) == ("B", (0, "c"))


@settings(max_examples=40)
@given(st.randoms(use_true_random=False), st.sampled_from(list(Logic)))
def test_aq_yes_answers_verify(rng, logic):
    exs = []
    for _ in range(3):
        A = random_abox(rng, rng.randint(1, 5), rng.randint(1, 3))
        exs.append(Example(A, aq(rng.choice("ABC"), rng.choice(A.individuals))))
    E = ExampleCollection(exs[:2], exs[2:], logic, QueryLang.AQ)
    d = decide_aq_fit(E)
    if d.verdict is Verdict.YES:
        assert verify_fit(d.ontology, E) is True
        assert verify_fit(encode_char_poly(d.ontology, E), E) is True


def test_gamma_sets_cover_variations():
    e = Example(ABox([CAtom("A", "a")]), UCQ([CQ([RAtom("r", "a", x), CAtom("B", x)])]))
    gs = gamma_sets(e, Logic.EL)
    assert gs and all(isinstance(g, Ontology) for g in gs)


def test_ucq_el_firstone_style():
    E = ExampleCollection(
        [Example(ABox([CAtom("N", "j")]), UCQ([CQ([RAtom("m", "j", x), CAtom("E", x)])]))],
        [Example(ABox([CAtom("N", "b")]), UCQ([CQ([RAtom("m", "b", x), CAtom("S", x)])]))],
        Logic.EL,
        QueryLang.CQ,
    )
    d = decide_ucq_fit_el(E)
    assert d.verdict is Verdict.YES and verify_fit(d.ontology, E) is True
    assert audit_witness(E, Logic.EL, d.witness) == []


def test_ucq_el_no_when_positive_forces_negative():
    q = UCQ([CQ([RAtom("m", "j", x)])])
    E = ExampleCollection(
        [Example(ABox([CAtom("N", "j")]), q)],
        [Example(ABox([CAtom("N", "j"), CAtom("Z", "j")]), q)],
        Logic.EL,
        QueryLang.CQ,
    )
    assert decide_ucq_fit_el(E).verdict is Verdict.NO


def test_no_negatives():
    q = UCQ([CQ([RAtom("r", "a", x), CAtom("A", x)])])
    E = ExampleCollection([Example(ABox([CAtom("A", "a")]), q)], [], Logic.EL, QueryLang.CQ)
    d = fit_no_negatives(E)
    assert d.verdict is Verdict.YES and verify_fit(d.ontology, E) is True
    assert fit_no_negatives(E, Logic.ELB).ontology == Ontology([CI(TOP, BOT)])
    # a positive query mentioning a role outside the signature cannot be forced
    with pytest.raises(ValueError):
        fit_no_negatives(ExampleCollection(E.positives, E.positives, Logic.EL, QueryLang.CQ))


def test_eli_bounded_yes_and_unknown():
    P1 = Example(ABox([CAtom("A", "a")]), UCQ([CQ([RAtom("r", "a", x), CAtom("A", x)])]))
    P2 = Example(ABox([RAtom("r", "a", "a")]), aq("B", "a"))
    N = Example(ABox([CAtom("A", "a")]), aq("B", "a"))
    E = ExampleCollection([P1, P2], [N], Logic.ELI, QueryLang.CQ)
    d = decide_ucq_fit_eli_bounded(E, max_size=2)
    assert d.verdict is Verdict.YES and verify_fit(d.ontology, E) is True
    assert decide_ucq_fit_eli_bounded(E, max_size=1).verdict is Verdict.UNKNOWN
    assert decide_ucq_fit_el(E.with_logic(Logic.EL)).verdict is Verdict.NO


def test_encode_abox_as_ontology_forces_a_copy():
    A = ABox([CAtom("A", "a"), RAtom("r", "a", "b")])
    O = encode_abox_as_ontology(A, Logic.EL)
    from ontofit.entail import tree_chase

    snap, bad, cut = tree_chase(ABox([CAtom("Z", "z")]), O, 3)
    assert not bad  # cut is expected: every new element needs its own u-successor
    ext = eval_concept(some("r"), snap)
    assert any("A" in snap.labels(d) for d in ext)


def test_gen_coloring_validation():
    with pytest.raises(ValueError):
        gen_coloring_instance(3, [(1, 2)], [2])
    with pytest.raises(ValueError):
        gen_coloring_instance(3, [(1, 1)], [])
    E = gen_coloring_instance(3, [(1, 2)], [1, 2])
    assert len(E.positives) == 1 and len(E.negatives) == 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_coloring_small_graphs(n):
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        edges = [p for i, p in enumerate(pairs) if mask >> i & 1]
        for k in range(min(2, n) + 1):
            P = list(range(1, k + 1))
            d = decide_ucq_fit_el(gen_coloring_instance(n, edges, P), synthesize=False)
            assert (d.verdict is Verdict.YES) == coloring_oracle(n, edges, P)


def test_decide_fit_dispatch():
    E = cons([[CAtom("A", "a")]], [[CAtom("B", "c")]], Logic.ELB)
    assert decide_fit(E).verdict is Verdict.YES
    assert decide_fit(E, Logic.EL).verdict is Verdict.NO
