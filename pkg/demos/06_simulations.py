"""Simulations and characteristic concepts on a loop and a path.

A labelled self-loop is k-simulated by the start of a path of length 3 only
for k <= 3.  Its characteristic concept of depth k captures exactly that.
"""

from ontofit.cli import concept_to_sexpr
from ontofit.construct import char_concept
from ontofit.core import Interpretation, Logic, eval_concept
from ontofit.sim import k_simulates, refutation_depth, simulates

loop = Interpretation(["d"], {"A": ["d"]}, {"r": [("d", "d")]})
path = Interpretation([0, 1, 2, 3], {"A": [0, 1, 2, 3]}, {"r": [(0, 1), (1, 2), (2, 3)]})

for k in range(6):
    c = char_concept(Logic.EL, loop, "d", k)
    print(k, k_simulates(Logic.EL, k, (loop, "d"), (path, 0)), sorted(eval_concept(c, path)), concept_to_sexpr(c) if k < 3 else "...")
print("unbounded:", simulates(Logic.EL, (loop, "d"), (path, 0)))
print("depth needed to separate the loop from the path:", refutation_depth(Logic.EL, loop, path, "d"))
