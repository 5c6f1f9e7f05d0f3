"""The 2-coloring extension generator as a stress test of EL CQ fitting.

For every graph on up to four vertices and every protected set {1..k} with
k <= 2, a fitting EL ontology exists exactly when some 2-coloring of the
protected vertices does not extend to a proper 3-coloring.
"""

import itertools
import time

from ontofit.fit import Verdict, decide_ucq_fit_el, gen_coloring_instance


def extends(n, edges, P):
    for c2 in itertools.product((1, 2), repeat=len(P)):
        col = dict(zip(P, c2))
        if any(col[v] == col[w] for v, w in edges if v in col and w in col):
            continue
        ok = any(
            all(c[v - 1] == col[v] for v in P) and all(c[v - 1] != c[w - 1] for v, w in edges)
            for c in itertools.product((1, 2, 3), repeat=n)
        )
        if not ok:
            return False
    return True


t = time.perf_counter()
rows = []
for n in range(1, 5):
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        edges = [p for i, p in enumerate(pairs) if mask >> i & 1]
        for k in range(min(2, n) + 1):
            P = list(range(1, k + 1))
            yes = decide_ucq_fit_el(gen_coloring_instance(n, edges, P), synthesize=False).verdict is Verdict.YES
            rows.append((n, len(edges), k, yes, not extends(n, edges, P)))
agree = sum(r[3] == r[4] for r in rows)
print(f"{len(rows)} instances, {agree} agree with brute force, {time.perf_counter() - t:.1f}s")
print("fitting instances:", sum(r[3] for r in rows))
print("example: K4 with nothing protected ->", [r for r in rows if r[:3] == (4, 6, 0)][0][3])
