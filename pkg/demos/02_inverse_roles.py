"""Consistency-based fitting where inverse roles make the difference.

The negative ABox joins two r-edges in one node b; the positive keeps them
apart.  Looking only forward along r, b looks like b1 and b2 at once, so no
EL_bot ontology can tell them apart.  With inverse roles it can.
"""

from pathlib import Path

from ontofit.cli import load_instance, serialize_ontology
from ontofit.core import Logic
from ontofit.fit import decide_consistency_fit, synth_alternative_consistency, verify_fit
from ontofit.sim import max_simulation

E = load_instance(str(Path(__file__).parent / "data" / "shared_successor.of"))
neg, pos = E.negatives[0].abox.interp, E.positives[0].abox.interp

for logic in (Logic.ELB, Logic.ELIB):
    sim = max_simulation(logic, neg, pos)
    print(f"{logic.pretty}: total simulation from negative into positive: {sim.total}")

d = decide_consistency_fit(E, Logic.ELB)
print("\nEL_bot verdict:", d.verdict.value)
print("witness pairs:", [p for p in d.certificate["simulation"]])

d = decide_consistency_fit(E, Logic.ELIB)
print("\nELI_bot verdict:", d.verdict.value)
print(serialize_ontology(d.ontology), end="")
print("fits:", verify_fit(d.ontology, E, Logic.ELIB))

alt = synth_alternative_consistency(E, Logic.ELIB)
print(f"\nmarker-based construction: {len(alt)} CIs, fits: {verify_fit(alt, E, Logic.ELIB)}")
