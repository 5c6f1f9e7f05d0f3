"""Atomic queries: the completion A± and why ELI can fail where EL_bot fits.

The positive example wants A2(a) from A1(a) plus an unrelated B(b).  The
negative has A1(a) alone.  EL_bot can refuse the negative by making B
inconsistent; ELI has no bottom and is forced to derive A2(a) there as well.
"""

from pathlib import Path

from ontofit.cli import load_instance, serialize_ontology
from ontofit.core import Logic
from ontofit.fit import decide_aq_fit, refine_completion, verify_fit

E = load_instance(str(Path(__file__).parent / "data" / "atomic.of"))

d = decide_aq_fit(E, Logic.ELB)
print("EL_bot:", d.verdict.value)
print(serialize_ontology(d.ontology), end="")
print("fits:", verify_fit(d.ontology, E, Logic.ELB))

comp = refine_completion(E, Logic.ELI)
print("\nELI completion of the negatives:")
for elem in comp.interp.elements():
    print(f"  {elem}: {sorted(comp.interp.labels(elem))}")
d = decide_aq_fit(E, Logic.ELI)
print("ELI:", d.verdict.value, "because", d.certificate["assertion"], "is forced")
