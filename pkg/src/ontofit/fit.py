"""Deciding and constructing fitting ontologies.

Consistency and AQ fitting are decided through maximal simulations.  UCQ
fitting guesses one small simulation-quantifier ontology per positive
example and checks the negatives against it: exactly with the chase for EL
and EL_bot, by bounded model search (never answering NO) for ELI and ELI_bot.
Every YES comes with an ontology built from characteristic concepts.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

from .construct import char_concept, sim_image_satisfies
from .core import (
    ABox,
    Atom,
    BOT,
    CAtom,
    CharSpec,
    CI,
    CQ,
    Example,
    ExampleCollection,
    Existential,
    FRESH_PREFIX,
    Interpretation,
    Logic,
    Ontology,
    QueryLang,
    RAtom,
    Role,
    Rooted,
    SimQuant,
    TOP,
    UCQ,
    Var,
    atoms,
    conj,
    disjoint_union,
    ekey,
    esorted,
    find_cq_hom,
    is_model,
    satisfies_abox,
    some,
)
from .entail import (
    Entailment,
    _check_chase_input,
    chase_universal_model,
    eli_entailment_bounded,
    enum_forest_variations,
    reduction_queries,
    search_model,
    ucq_holds_on_universal,
)
from .sim import max_simulation, refutation_depth

U_ROLE = FRESH_PREFIX + "u"
INTERP_CAP = 4


class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


UNKNOWN = Verdict.UNKNOWN


@dataclass
class FitDecision:
    verdict: Verdict
    ontology: Ontology | None = None
    certificate: object = None
    bound: int | None = None
    witness: Interpretation | None = None
    notes: list = field(default_factory=list)

    def __bool__(self):
        return self.verdict is Verdict.YES


@dataclass(frozen=True)
class Completion:
    """The ABox A± as a labelled interpretation over tagged negatives."""

    interp: Interpretation
    derivations: tuple


def _tagged(aboxes: list[ABox]) -> Interpretation:
    """Disjoint union of ABoxes; individual a of ABox j becomes (j, a)."""
    u = disjoint_union([A.interp for A in aboxes])
    return Interpretation(u.domain, u.concepts, u.roles, {d: d for d in u.domain})


def _first_unmatched(abox: ABox, sim) -> str:
    matched = {d for d, _ in sim.pairs}
    return next(a for a in abox.individuals if a not in matched)


def _depth(mode: str, logic: Logic, abox: ABox, target: Interpretation, a, bound: int) -> int:
    """Role depth for the characteristic concept of (abox, a) against target.

    ``bound`` is the product of domain sizes, always sufficient.  ``tight``
    uses the round at which the last non-partner of a drops out of the
    k-simulation refinement, which gives the same extension on target.
    """
    if mode == "bound":
        return bound
    if mode != "tight":
        raise ValueError(f"unknown depth mode {mode!r}")
    return refutation_depth(logic, abox.interp, target, a)


def _char_ci(logic: Logic, abox: ABox, a, k: int, rhs, tag: str, memo: dict) -> CI:
    lhs = char_concept(logic, abox.interp, a, k, memo)
    return CI(lhs, rhs, CharSpec(logic, abox.interp, a, k, tag))


# ---------------------------------------------------------------------------
# Consistency


def decide_consistency_fit(E: ExampleCollection, logic: Logic | None = None, depth: str = "tight") -> FitDecision:
    L = logic or E.logic
    pos = [e.abox for e in E.positives]
    neg = [e.abox for e in E.negatives]
    if not L.bottom:
        # without bottom every ABox is consistent with every ontology
        if neg:
            return FitDecision(Verdict.NO, certificate={"reason": f"{L.pretty} cannot express inconsistency", "negative": 0})
        return FitDecision(Verdict.YES, ontology=Ontology())
    if not neg:
        return FitDecision(Verdict.YES, ontology=Ontology())
    plus = _tagged(pos) if pos else Interpretation([])
    width = max(len(A.individuals) for A in neg)
    bound = len(plus.domain) * width
    cis = []
    for j, A in enumerate(neg):
        sim = max_simulation(L, A.interp, plus)
        if sim.total:
            return FitDecision(Verdict.NO, certificate={"negative": j, "simulation": sim.sorted_pairs()})
        a = _first_unmatched(A, sim)
        k = _depth(depth, L.base, A, plus, a, bound)
        cis.append(_char_ci(L.base, A, a, k, BOT, f"n{j}", {}))
    return FitDecision(Verdict.YES, ontology=Ontology(cis))


def synth_alternative_consistency(E: ExampleCollection, logic: Logic | None = None) -> Ontology:
    """Polynomial ontology with one fresh name per element of A⁺.

    ``V_a`` marks elements that are not simulated by a; an element marked for
    every a has no partner at all and is made inconsistent.
    """
    L = logic or E.logic
    if not L.bottom:
        raise ValueError("the alternative construction needs a logic with bottom")
    dec = decide_consistency_fit(E, L)
    if dec.verdict is not Verdict.YES:
        raise ValueError("no fitting ontology exists, so the construction does not apply")
    plus = _tagged([e.abox for e in E.positives]) if E.positives else Interpretation([])
    cn, rn = set(), set()
    for e in E.negatives:
        c, r = e.abox.signature()
        cn |= c
        rn |= r
    elems = plus.elements()
    name = {d: Atom(f"{FRESH_PREFIX}V{i}") for i, d in enumerate(elems)}
    cis = []
    for d in elems:
        for A in sorted(cn):
            if A not in plus.labels(d):
                cis.append(CI(Atom(A), name[d]))
        for r in sorted(rn):
            dirs = [Role(r)] + ([Role(r, True)] if L.inverse else [])
            for role in dirs:
                cis.append(CI(some(role, conj(*(name[e] for e in plus.succ(role, d)))), name[d]))
    cis.append(CI(conj(*name.values()), BOT))
    return Ontology(cis)


# ---------------------------------------------------------------------------
# Atomic queries


def _aq_of(e: Example):
    (cq,) = e.query.cqs
    (atom,) = cq.atoms
    if not isinstance(atom, CAtom) or not isinstance(atom.term, str):
        raise ValueError("AQ fitting needs atomic queries A(a)")
    return atom.concept, atom.term


def refine_completion(E: ExampleCollection, logic: Logic, start: Interpretation | None = None) -> Completion:
    """Close the tagged union of the negatives (or ``start``) under rule (R)."""
    for e in E.positives + E.negatives:
        if e.query is None or len(e.query.cqs) != 1 or len(e.query.cqs[0].atoms) != 1:
            raise ValueError("AQ fitting needs one atomic query per example")
    cur = start if start is not None else (_tagged([e.abox for e in E.negatives]) if E.negatives else Interpretation([]))
    labels = {d: set(cur.labels(d)) for d in cur.domain}
    derivations = []
    changed = True
    while changed:
        changed = False
        for i, e in enumerate(E.positives):
            Q, a = _aq_of(e)
            sim = max_simulation(logic, e.abox.interp, cur)
            if logic.bottom and not sim.total:
                continue
            for b in sim.image(a):
                if Q not in labels[b]:
                    labels[b].add(Q)
                    derivations.append((i, Q, b))
                    changed = True
            if changed:
                cur = _relabel(cur, labels)
    return Completion(cur, tuple(derivations))


def _relabel(I: Interpretation, labels: dict) -> Interpretation:
    concepts: dict = {}
    for d, labs in labels.items():
        for A in labs:
            concepts.setdefault(A, set()).add(d)
    return Interpretation(I.domain, concepts, I.roles, I.named)


def decide_aq_fit(E: ExampleCollection, logic: Logic | None = None, depth: str = "tight") -> FitDecision:
    L = logic or E.logic
    comp = refine_completion(E, L)
    C = comp.interp
    for j, e in enumerate(E.negatives):
        Q, a = _aq_of(e)
        if Q in C.labels((j, a)):
            chain = [d for d in comp.derivations if d[2] == (j, a) and d[1] == Q]
            return FitDecision(
                Verdict.NO,
                certificate={"negative": j, "assertion": (Q, (j, a)), "derivations": list(comp.derivations), "last": chain},
            )
    cis = []
    for i, e in enumerate(E.positives):
        Q, a = _aq_of(e)
        A = e.abox
        sim = max_simulation(L, A.interp, C)
        bound = len(C.domain) * len(A.individuals)
        memo: dict = {}
        if L.bottom and not sim.total:
            b = _first_unmatched(A, sim)
            cis.append(_char_ci(L.base, A, b, _depth(depth, L.base, A, C, b, bound), BOT, f"p{i}", memo))
        else:
            cis.append(_char_ci(L.base, A, a, _depth(depth, L.base, A, C, a, bound), Atom(Q), f"p{i}", memo))
    return FitDecision(Verdict.YES, ontology=Ontology(cis), witness=C)


# ---------------------------------------------------------------------------
# UCQs


def _variations(abox: ABox, q: UCQ, logic: Logic) -> dict:
    return {p: [(v, reduction_queries(v, abox)) for v in enum_forest_variations(abox, p, logic)] for p in q.cqs}


def gamma_sets(e: Example, logic: Logic, u: str = U_ROLE) -> list[Ontology]:
    """Candidate simulation-quantifier ontologies for one positive example."""
    A = e.abox
    base = logic.base
    out: list = []
    seen = set()
    for p in e.query.cqs:
        for v in enum_forest_variations(A, p, base):
            reds = reduction_queries(v, A)
            rooted = [r for r in reds if isinstance(r, Rooted)]
            exist = [r for r in reds if isinstance(r, Existential)]
            for anchors in itertools.product(A.individuals, repeat=len(exist)):
                cis = [CI(SimQuant(base, A.interp, r.individual), r.concept) for r in rooted]
                cis += [CI(SimQuant(base, A.interp, b), some(u, r.concept)) for r, b in zip(exist, anchors)]
                O = Ontology(cis)
                if O not in seen:
                    seen.add(O)
                    out.append(O)
    if logic.bottom:
        for a in A.individuals:
            O = Ontology([CI(SimQuant(base, A.interp, a), BOT)])
            if O not in seen:
                seen.add(O)
                out.append(O)
    return out


def saturate_universal(parts: list[Interpretation], u: str = U_ROLE) -> Interpretation:
    """Disjoint union of the parts with u total inside each part."""
    I = disjoint_union(parts)
    extra = {u: {((j, d), (j, e)) for j, P in enumerate(parts) for d in P.domain for e in P.domain}}
    return I.with_roles(extra)


def _union_ontology(choice) -> Ontology:
    cis = []
    for O in choice:
        cis.extend(O.cis)
    return Ontology(cis)


def decide_ucq_fit_el(E: ExampleCollection, logic: Logic | None = None, depth: str = "tight", synthesize: bool = True) -> FitDecision:
    L = logic or E.logic
    if L.inverse:
        raise ValueError("use decide_ucq_fit_eli_bounded for ELI and ELI_bot")
    if not E.negatives:
        return fit_no_negatives(E, L)
    gammas = [gamma_sets(e, L) for e in E.positives]
    neg_vars = [_variations(e.abox, e.query, L.base) for e in E.negatives]
    checked = 0
    for idx in itertools.product(*[range(len(g)) for g in gammas]):
        checked += 1
        omega = _union_ontology(gammas[i][k] for i, k in enumerate(idx))
        models = []
        for j, e in enumerate(E.negatives):
            um = chase_universal_model(e.abox, omega)
            if um.inconsistent or ucq_holds_on_universal(um.interp, e.abox, e.query, L.base, neg_vars[j]):
                break
            models.append(um.interp)
        else:
            witness = saturate_universal(models)
            dec = FitDecision(Verdict.YES, witness=witness, certificate={"gamma_choice": list(idx)})
            if synthesize:
                dec.ontology = synth_from_witness(E, L, witness, depth=depth)
            return dec
    return FitDecision(Verdict.NO, certificate={"choices_refuted": checked})


def _component(I: Interpretation, j) -> Interpretation:
    keep = [d for d in I.domain if d[0] == j]
    sub = I.restrict(keep)
    return sub


def audit_witness(E: ExampleCollection, logic: Logic, I: Interpretation) -> list[str]:
    """Check (a'): component j of I is a model of negative j's ABox, named
    (j, a), refuting every forest variation of its query."""
    problems = []
    for j, e in enumerate(E.negatives):
        comp = _component(I, j)
        named = {a: (j, a) for a in e.abox.individuals}
        if any(d not in comp.domain for d in named.values()):
            problems.append(f"component {j} lacks the individuals of negative {j}")
            continue
        comp = Interpretation(comp.domain, comp.concepts, comp.roles, named)
        if not satisfies_abox(comp, e.abox):
            problems.append(f"component {j} is not a model of negative {j}")
        if e.query is not None:
            for p in e.query.cqs:
                for v in enum_forest_variations(e.abox, p, logic.base):
                    if find_cq_hom(v.cq, comp) is not None:
                        problems.append(f"component {j} satisfies variation {v.cq}")
    return problems


def synth_from_witness(E: ExampleCollection, logic: Logic, I: Interpretation, u: str = U_ROLE, depth: str = "tight") -> Ontology:
    """Ontology ⋃ C^ℓ_{A,a} ⊑ D over the entailment targets chosen per positive."""
    problems = audit_witness(E, logic, I)
    if problems:
        raise ValueError("witness fails the audit: " + problems[0])
    L = logic
    size = len(I.domain)
    memo_eval: dict = {}
    cis = []
    for i, e in enumerate(E.positives):
        A = e.abox
        sim = max_simulation(L, A.interp, I)
        bound = size * len(A.individuals)
        memo: dict = {}
        if L.bottom and not sim.total:
            a = _first_unmatched(A, sim)
            cis.append(_char_ci(L.base, A, a, _depth(depth, L.base, A, I, a, bound), BOT, f"p{i}", memo))
            continue
        ens = _ens(A, e.query, L, sim, I, u, memo_eval)
        if ens is None:
            raise ValueError(f"witness fails condition (b) for positive {i}")
        for c, a in ens:
            cis.append(_char_ci(L.base, A, a, _depth(depth, L.base, A, I, a, bound), c, f"p{i}", memo))
    return Ontology(cis)


def _ens(A: ABox, q: UCQ, L: Logic, sim, I: Interpretation, u: str, memo: dict):
    for p in q.cqs:
        for v in enum_forest_variations(A, p, L.base):
            out = []
            for r in reduction_queries(v, A):
                if isinstance(r, Rooted):
                    if not sim_image_satisfies(A, sim, I, r.concept, r.individual, memo):
                        break
                    out.append((r.concept, r.individual))
                else:
                    target = some(u, r.concept)
                    anchor = next((b for b in A.individuals if sim_image_satisfies(A, sim, I, target, b, memo)), None)
                    if anchor is None:
                        break
                    out.append((target, anchor))
            else:
                return out
    return None


def decide_ucq_fit_eli_bounded(E: ExampleCollection, logic: Logic | None = None, max_size: int = 4, depth: str = "tight", synthesize: bool = True) -> FitDecision:
    """Search per-negative models of size <= max_size; YES or UNKNOWN."""
    L = logic or E.logic
    if not E.negatives:
        return fit_no_negatives(E, L)
    gammas = [gamma_sets(e, L) for e in E.positives]
    forbidden = []
    for e in E.negatives:
        vs = [v.cq for p in e.query.cqs for v in enum_forest_variations(e.abox, p, L.base)]
        forbidden.append(UCQ(vs) if vs else None)
    for idx in itertools.product(*[range(len(g)) for g in gammas]):
        omega = _union_ontology(gammas[i][k] for i, k in enumerate(idx))
        models = []
        for j, e in enumerate(E.negatives):
            m = search_model(e.abox, omega, max_size, forbidden=forbidden[j], universal=(U_ROLE,))
            if m is None:
                break
            models.append(m)
        else:
            parts = [Interpretation(m.domain, m.concepts, {r: x for r, x in m.roles.items() if r != U_ROLE}) for m in models]
            witness = saturate_universal(parts)
            dec = FitDecision(Verdict.YES, witness=witness, certificate={"gamma_choice": list(idx)})
            if synthesize:
                dec.ontology = synth_from_witness(E, L, witness, depth=depth)
            return dec
    return FitDecision(Verdict.UNKNOWN, bound=max_size)


def fit_no_negatives(E: ExampleCollection, logic: Logic | None = None) -> FitDecision:
    L = logic or E.logic
    if E.negatives:
        raise ValueError("fit_no_negatives needs an empty set of negative examples")
    if L.bottom:
        return FitDecision(Verdict.YES, ontology=Ontology([CI(TOP, BOT)]))
    cn, rn = E.signature()
    cis = [CI(TOP, Atom(A)) for A in sorted(cn)]
    for r in sorted(rn):
        cis.append(CI(TOP, some(Role(r))))
        if L.inverse:
            cis.append(CI(TOP, some(Role(r, True))))
    O = Ontology(cis)
    ok = verify_fit(O, E, L)
    if ok is True:
        return FitDecision(Verdict.YES, ontology=O)
    if ok is False:
        return FitDecision(Verdict.NO, certificate={"reason": "the maximal ontology does not entail every positive query"})
    return FitDecision(Verdict.UNKNOWN, notes=["bounded verification of the maximal ontology was inconclusive"])


def decide_fit(E: ExampleCollection, logic: Logic | None = None, max_size: int = 4, depth: str = "tight") -> FitDecision:
    """Dispatch on the query language and logic of E."""
    L = logic or E.logic
    if E.query_lang is QueryLang.CONSISTENCY:
        return decide_consistency_fit(E, L, depth)
    if E.query_lang is QueryLang.AQ:
        return decide_aq_fit(E, L, depth)
    if L.inverse:
        return decide_ucq_fit_eli_bounded(E, L, max_size, depth)
    return decide_ucq_fit_el(E, L, depth)


# ---------------------------------------------------------------------------
# Other constructions


def _elem_name(d) -> str:
    if isinstance(d, tuple):
        return ".".join(_elem_name(x) for x in d)
    return str(d)


def encode_char_poly(O: Ontology, E: ExampleCollection | None = None) -> Ontology:
    """Replace characteristic left-hand sides by fresh names X^k.

    One name per (pointed source, element, depth); only the pairs reachable
    from the CI's point are introduced.  CIs without a recorded source are
    copied unchanged.
    """
    sources: dict = {}
    cis = []
    for ci in O:
        spec = ci.char
        if spec is None or spec.depth == 0:
            cis.append(CI(ci.lhs, ci.rhs))
            continue
        key = (spec.logic, spec.interp)
        tag = sources.setdefault(key, len(sources))
        J = spec.interp
        dirs = J.edge_roles(spec.logic.inverse)

        def X(b, k, tag=tag):
            return Atom(f"{FRESH_PREFIX}X{k}_{tag}_{_elem_name(b)}")

        todo = [(spec.point, spec.depth)]
        done = set()
        while todo:
            b, k = todo.pop()
            if (b, k) in done:
                continue
            done.add((b, k))
            labs = atoms(sorted(J.labels(b)))
            if k == 0:
                cis.append(CI(labs, X(b, 0)))
                continue
            parts = [labs]
            for r in dirs:
                for c in J.succ(r, b):
                    parts.append(some(r, X(c, k - 1)))
                    todo.append((c, k - 1))
            cis.append(CI(conj(*parts), X(b, k)))
        cis.append(CI(X(spec.point, spec.depth), ci.rhs))
    return Ontology(cis)


def synth_from_interpretation(E: ExampleCollection, logic: Logic, I: Interpretation, cap: int = INTERP_CAP) -> Ontology:
    """Ontology Ω_I: fresh names V_d forcing every model to simulate into I."""
    if len(I.domain) > cap:
        raise ValueError(f"witness has {len(I.domain)} elements, above the cap of {cap} (family (v) is exponential)")
    problems = audit_witness(E, logic, I)
    if problems:
        raise ValueError("witness fails the audit: " + problems[0])
    L = logic
    elems = I.elements()
    V = {d: Atom(f"{FRESH_PREFIX}V{i}") for i, d in enumerate(elems)}
    cn_pos, rn_pos = set(), set()
    for e in E.positives:
        c, r = e.signature()
        cn_pos |= c
        rn_pos |= r
    cn_all = cn_pos | set(I.concepts)
    rn_all = rn_pos | set(I.roles)

    def roles(names):
        out = [Role(r) for r in sorted(names)]
        if L.inverse:
            out += [Role(r, True) for r in sorted(names)]
        return out

    cis = []
    if L.bottom:
        cis.append(CI(conj(*V.values()), BOT))  # (i)
    for A in sorted(cn_pos):
        for d in elems:
            if A not in I.labels(d):
                cis.append(CI(Atom(A), V[d]))  # (ii)
    for r in roles(rn_pos):
        for d in elems:
            cis.append(CI(some(r, conj(*(V[e] for e in I.succ(r, d)))), V[d]))  # (iii)
    for A in sorted(cn_all):
        cis.append(CI(conj(*(V[d] for d in elems if A not in I.labels(d))), Atom(A)))  # (iv)
    for r in roles(rn_all):
        for n in range(len(elems) + 1):
            for F in itertools.combinations(elems, n):
                Fs = set(F)
                P = [d for d in elems if all(e in Fs for e in I.succ(r, d))]
                cis.append(CI(conj(*(V[d] for d in P)), some(r, conj(*(V[e] for e in F)))))  # (v)
    return Ontology(cis)


def encode_abox_as_ontology(A: ABox, logic: Logic, u: str = U_ROLE) -> Ontology:
    """Ontology whose every model contains a simulating copy of A."""
    cis = []
    for a in A.individuals:
        S = Atom(f"{FRESH_PREFIX}S_{a}")
        cis.append(CI(TOP, some(u, S)))
        cis.append(CI(S, SimQuant(logic.base, A.interp, a)))
    return Ontology(cis)


def gen_coloring_instance(n: int, edges, protected, logic: Logic = Logic.EL) -> ExampleCollection:
    """Examples that admit a fitting ontology iff some 2-coloring of the
    protected vertices does not extend to a 3-coloring of the graph.

    Vertices are 1..n and the protected set must be {1..k}.
    """
    P = sorted(set(protected))
    if P != list(range(1, len(P) + 1)) or len(P) > n or n < 1:
        raise ValueError("vertices must be 1..n with protected set {1..k}")
    E = set()
    for v, w in edges:
        if not (1 <= v <= n and 1 <= w <= n) or v == w:
            raise ValueError(f"bad edge {(v, w)}")
        E.add((min(v, w), max(v, w)))
    Pset = set(P)
    b1, b2 = "b1", "b2"
    A2 = [RAtom("r", b1, b2), RAtom("r", b2, b1), CAtom("T1", b1), CAtom("T2", b2)]
    # s(b1,b2) and s(b2,b1) let variables with s(b1, x) reach b2
    A2 += [RAtom("s", x, y) for x in (b1, b2) for y in (b1, b2)]
    x = {v: Var(f"x{v}") for v in range(1, n + 1)}
    qp = []
    for v in P:
        qp += [RAtom("s", x[v], x[v]), CAtom(f"V{v}", x[v]), RAtom("s", b1, x[v])]
    for v, w in sorted(E):
        if v in Pset and w in Pset:
            qp += [RAtom("r", x[v], x[w]), RAtom("r", x[w], x[v])]
    if not qp:
        qp = [CAtom("T1", b1)]
    a = {i: f"a{i}" for i in (1, 2, 3)}
    A3 = [CAtom("T1", a[1]), CAtom("T2", a[2])]
    A3 += [RAtom("s", a[i], a[j]) for i in (1, 2, 3) for j in (1, 2, 3)]
    A3 += [RAtom("r", a[i], a[j]) for i in (1, 2, 3) for j in (1, 2, 3) if i != j]
    qg = [RAtom("s", a[1], x[v]) for v in range(1, n + 1)]
    qg += [CAtom(f"V{v}", x[v]) for v in P]
    for v, w in sorted(E):
        qg += [RAtom("r", x[v], x[w]), RAtom("r", x[w], x[v])]
    return ExampleCollection(
        [Example(ABox(A2), UCQ([CQ(qp)]))],
        [Example(ABox(A3), UCQ([CQ(qg)]))],
        logic,
        QueryLang.CQ,
    )


# ---------------------------------------------------------------------------
# Verification


def _chase_route(O: Ontology) -> bool:
    try:
        _check_chase_input(O)
    except ValueError:
        return False
    return True


def verify_fit(O: Ontology, E: ExampleCollection, logic: Logic | None = None, chase_depth: int = 6, model_bound: int | None = None):
    """True, False or UNKNOWN: does O fit E?

    Ontologies the chase accepts are checked exactly; others through the
    bounded three-valued procedure.
    """
    exact = _chase_route(O)
    unknown = False
    consistency = E.query_lang is QueryLang.CONSISTENCY
    for positive, examples in ((True, E.positives), (False, E.negatives)):
        # with queries, positives must be entailed; in consistency mode an
        # example "holds" when inconsistent, which negatives must be
        want = positive != consistency
        for e in examples:
            if exact:
                um = chase_universal_model(e.abox, O)
                if e.query is None:
                    got = um.inconsistent
                else:
                    got = um.inconsistent or ucq_holds_on_universal(um.interp, e.abox, e.query, Logic.EL)
                if got != want:
                    return False
                continue
            bound = model_bound if model_bound is not None else len(e.abox.individuals) + 3
            res = eli_entailment_bounded(e.abox, O, e.query, chase_depth, bound)
            if res is Entailment.UNKNOWN:
                unknown = True
            elif (res is Entailment.ENTAILED) != want:
                return False
    return UNKNOWN if unknown else True
