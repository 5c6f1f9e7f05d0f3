"""Fitting Horn description logic ontologies to labelled ABox/query examples."""

from .core import (
    ABox,
    BOT,
    CAtom,
    CI,
    CQ,
    Example,
    ExampleCollection,
    Existential,
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
    aq,
    atoms,
    conj,
    eval_concept,
    find_cq_hom,
    is_model,
    satisfies_ucq,
    some,
)
from .sim import k_simulates, max_simulation, simulates

__version__ = "0.1.0"
