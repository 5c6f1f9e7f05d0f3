"""Learning an onboarding policy from three labelled examples.

Two positive examples say which kind of mentor a new hire must get, one
negative example says a plain new hire need not get a senior mentor.  We ask
for an EL ontology that fits, print it, and check a hand-written one too.
"""

from pathlib import Path

from ontofit.cli import load_instance, parse_ontology, serialize_ontology
from ontofit.fit import Verdict, decide_fit, encode_char_poly, verify_fit

DATA = Path(__file__).parent / "data"

E = load_instance(str(DATA / "firstone.of"))
print(f"{len(E.positives)} positive and {len(E.negatives)} negative examples, logic {E.logic.pretty}")

d = decide_fit(E)
assert d.verdict is Verdict.YES
print("\nsynthesized ontology:")
print(serialize_ontology(d.ontology))
print("fits:", verify_fit(d.ontology, E))

# the same ontology with characteristic concepts replaced by fresh names
P = encode_char_poly(d.ontology, E)
print(f"name-based encoding has {len(P)} CIs, fits: {verify_fit(P, E)}")

hand = parse_ontology((DATA / "firstone_hand.ont").read_text())
print("\nhand-written policy fits:", verify_fit(hand, E))
