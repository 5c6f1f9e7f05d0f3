"""Random instance generators shared by the property and acceptance tests."""

import random

from ontofit.core import (
    ABox,
    Atom,
    BOT,
    CAtom,
    CI,
    Interpretation,
    Logic,
    Ontology,
    RAtom,
    SimQuant,
    TOP,
    conj,
    some,
)

CONCEPTS = ("A", "B")


def random_el_concept(rng: random.Random, depth=2, allow_sim=True):
    roll = rng.random()
    if depth == 0 or roll < 0.35:
        return rng.choice([Atom("A"), Atom("B"), TOP, Atom("A")])
    if roll < 0.65:
        return some("r", random_el_concept(rng, depth - 1, allow_sim))
    if roll < 0.85 or not allow_sim:
        return conj(random_el_concept(rng, depth - 1, allow_sim), random_el_concept(rng, depth - 1, allow_sim))
    n = rng.randint(1, 2)
    J = Interpretation(
        [f"p{i}" for i in range(n)],
        {a: [f"p{i}" for i in range(n) if rng.random() < 0.4] for a in CONCEPTS},
        {"r": [(f"p{i}", f"p{j}") for i in range(n) for j in range(n) if rng.random() < 0.4]},
    )
    return SimQuant(Logic.EL, J, "p0")


def random_chase_instance(rng: random.Random):
    """ABox with at most 3 individuals and at most 2 EL_bot(sim) CIs."""
    n_ind = rng.randint(1, 3)
    inds = [f"a{i}" for i in range(n_ind)]
    out = [CAtom(rng.choice(CONCEPTS), inds[0])]
    for _ in range(rng.randint(0, 3)):
        if rng.random() < 0.5:
            out.append(CAtom(rng.choice(CONCEPTS), rng.choice(inds)))
        else:
            out.append(RAtom("r", rng.choice(inds), rng.choice(inds)))
    cis = []
    for _ in range(rng.randint(1, 2)):
        lhs = random_el_concept(rng)
        rhs = BOT if rng.random() < 0.12 else random_el_concept(rng, allow_sim=False)
        cis.append(CI(lhs, rhs))
    return ABox(out), Ontology(cis)


def random_abox(rng: random.Random, n_assert, n_ind, concepts=("A", "B", "C"), roles=("r", "s")):
    inds = [f"i{k}" for k in range(n_ind)]
    out = [CAtom(concepts[0], inds[0])]
    while len(out) < n_assert:
        if rng.random() < 0.45:
            out.append(CAtom(rng.choice(concepts), rng.choice(inds)))
        else:
            out.append(RAtom(rng.choice(roles), rng.choice(inds), rng.choice(inds)))
    return ABox(out)
