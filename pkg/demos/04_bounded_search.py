"""CQ fitting for ELI: a bounded witness search.

The first instance needs a backward step along r, so EL says NO while the
ELI search finds a two-element witness.  Adding one more positive example
removes every fitting ELI ontology; the search then reports UNKNOWN up to its
bound rather than claiming NO.
"""

import time
from pathlib import Path

from ontofit.cli import load_instance, parse_ontology, serialize_ontology
from ontofit.core import Logic
from ontofit.entail import eli_entailment_bounded
from ontofit.fit import decide_ucq_fit_el, decide_ucq_fit_eli_bounded, verify_fit

DATA = Path(__file__).parent / "data"
E = load_instance(str(DATA / "backward.of"))

print("EL:", decide_ucq_fit_el(E, Logic.EL).verdict.value)
d = decide_ucq_fit_eli_bounded(E, Logic.ELI, max_size=2)
print("ELI, witness size <= 2:", d.verdict.value)
print("witness elements:", sorted(map(str, d.witness.domain)))
print(f"synthesized ontology has {len(d.ontology)} CIs, fits: {verify_fit(d.ontology, E, Logic.ELI)}")

hand = parse_ontology((DATA / "backward_hand.ont").read_text())
print("\nhand-written ontology:")
print(serialize_ontology(hand), end="")
neg = E.negatives[0]
print("negative query:", eli_entailment_bounded(neg.abox, hand, neg.query).value)

F = load_instance(str(DATA / "no_fit.of"))
for bound in range(1, 5):
    t = time.perf_counter()
    v = decide_ucq_fit_eli_bounded(F, Logic.ELI, max_size=bound, synthesize=False).verdict
    print(f"with the extra positive, bound {bound}: {v.value} ({time.perf_counter() - t:.3f}s)")
