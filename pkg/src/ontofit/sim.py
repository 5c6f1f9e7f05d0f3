"""Greatest (k-bounded) L-simulations between finite interpretations.

The unbounded case uses the classic counter-based refinement: every pair
(d1, d2) keeps, per outgoing edge of d1, the number of matching edges of d2
whose targets are still related.  Removing a pair decrements the counters of
its predecessors; a counter reaching zero removes that pair as well.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .core import Interpretation, Logic, Role, esorted

__all__ = ["Logic", "Simulation", "max_simulation", "removal_ranks", "refutation_depth", "simulates", "k_simulates", "k_simulation_levels", "audit_simulation"]


@dataclass(frozen=True)
class Simulation:
    pairs: frozenset
    total: bool
    logic: Logic

    def image(self, d) -> list:
        return esorted(e for (x, e) in self.pairs if x == d)

    def images(self) -> dict:
        out: dict = {}
        for d, e in self.pairs:
            out.setdefault(d, []).append(e)
        return {d: esorted(v) for d, v in out.items()}

    def __contains__(self, pair) -> bool:
        return pair in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def sorted_pairs(self) -> list:
        return esorted(self.pairs)


def _directions(logic: Logic, I1: Interpretation) -> list[Role]:
    return I1.edge_roles(logic.inverse)


def _atom_pairs(I1: Interpretation, I2: Interpretation) -> set:
    out = set()
    by_label: dict = {}
    for d2 in I2.domain:
        by_label.setdefault(I2.labels(d2), []).append(d2)
    for d1 in I1.domain:
        need = I1.labels(d1)
        for lab, ds in by_label.items():
            if need <= lab:
                out.update((d1, d2) for d2 in ds)
    return out


def max_simulation(logic: Logic, I1: Interpretation, I2: Interpretation) -> Simulation:
    """The greatest relation satisfying (Atom), (Rel) and, for ELI, (iRel).

    The totality flag records whether every element of I1 has a partner; for
    the bottom logics an L-simulation exists iff the flag is set.
    """
    return _refine(logic, I1, I2)[0]


def removal_ranks(logic: Logic, I1: Interpretation, I2: Interpretation) -> tuple[Simulation, dict]:
    """The greatest simulation plus, for every pair outside it, the least k
    such that the pair is not in the greatest k-simulation.

    Removals are processed first in first out, so ranks come out in
    nondecreasing order and the first counter to hit zero fixes the rank.
    """
    return _refine(logic, I1, I2)


def refutation_depth(logic: Logic, I1: Interpretation, I2: Interpretation, d1) -> int:
    """Least k with (I1,d1) ≼^k (I2,e) exactly for the e with (I1,d1) ≼ (I2,e)."""
    _, ranks = _refine(logic, I1, I2)
    return max((k for (x, _), k in ranks.items() if x == d1), default=0)


def _refine(logic, I1, I2):
    dirs = _directions(logic, I1)
    S = _atom_pairs(I1, I2)
    rank = {(d1, d2): 0 for d1 in I1.domain for d2 in I2.domain if (d1, d2) not in S}
    count: dict = {}
    dead: deque = deque()
    removed: set = set()
    for d1, d2 in list(S):
        ok = True
        for r in dirs:
            for e1 in I1.succ(r, d1):
                n = sum(1 for e2 in I2.succ(r, d2) if (e1, e2) in S)
                count[(d1, d2, r, e1)] = n
                if n == 0:
                    ok = False
        if not ok:
            dead.append((d1, d2))
            removed.add((d1, d2))
            rank[(d1, d2)] = 1
    while dead:
        e1, e2 = dead.popleft()
        S.discard((e1, e2))
        for r in dirs:
            back = r.inv()
            for d1 in I1.succ(back, e1):
                for d2 in I2.succ(back, e2):
                    if (d1, d2) in removed or (d1, d2) not in S:
                        continue
                    k = (d1, d2, r, e1)
                    count[k] -= 1
                    if count[k] == 0:
                        removed.add((d1, d2))
                        dead.append((d1, d2))
                        rank[(d1, d2)] = rank[(e1, e2)] + 1
    pairs = frozenset(S)
    firsts = {d for d, _ in pairs}
    return Simulation(pairs, firsts >= I1.domain, logic), rank


def simulates(logic: Logic, p1: tuple, p2: tuple) -> bool:
    """(I1, d1) is L-simulated by (I2, d2)."""
    (I1, d1), (I2, d2) = p1, p2
    sim = max_simulation(logic, I1, I2)
    if logic.bottom and not sim.total:
        return False
    return (d1, d2) in sim.pairs


def k_simulation_levels(logic: Logic, I1: Interpretation, I2: Interpretation, k: int | None):
    """Level sets T_0 ⊇ T_1 ⊇ ... ⊇ T_k of the greatest k-simulation.

    T_i holds the pairs that survive i refinement rounds.  k=None stands for
    omega and iterates to the fixpoint.  Returns the last level computed.
    """
    dirs = _directions(logic, I1)
    level = _atom_pairs(I1, I2)
    i = 0
    while k is None or i < k:
        nxt = set()
        for d1, d2 in level:
            ok = True
            for r in dirs:
                for e1 in I1.succ(r, d1):
                    if not any((e1, e2) in level for e2 in I2.succ(r, d2)):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                nxt.add((d1, d2))
        i += 1
        if nxt == level:
            break
        level = nxt
    return level


def k_simulates(logic: Logic, k: int | None, p1: tuple, p2: tuple) -> bool:
    """(I1, d1) is k-L-simulated by (I2, d2); k=None means omega."""
    (I1, d1), (I2, d2) = p1, p2
    level = k_simulation_levels(logic, I1, I2, k)
    if logic.bottom and {d for d, _ in level} < set(I1.domain):
        return False
    return (d1, d2) in level


def audit_simulation(logic: Logic, I1: Interpretation, I2: Interpretation, pairs, require_total: bool | None = None) -> list[str]:
    """Check (Atom), (Rel), (iRel) and, for bottom logics, (Tot) pointwise.

    Returns a list of violations; empty means the relation is an L-simulation.
    """
    pairs = set(pairs)
    problems = []
    for d1, d2 in esorted(pairs):
        if d1 not in I1.domain or d2 not in I2.domain:
            problems.append(f"pair {(d1, d2)} leaves the domains")
            continue
        missing = I1.labels(d1) - I2.labels(d2)
        if missing:
            problems.append(f"(Atom) fails at {(d1, d2)}: {sorted(missing)}")
        for r in _directions(logic, I1):
            for e1 in I1.succ(r, d1):
                if not any((e1, e2) in pairs for e2 in I2.succ(r, d2)):
                    tag = "(iRel)" if r.inverted else "(Rel)"
                    problems.append(f"{tag} fails at {(d1, d2)} for {r} edge to {e1}")
    if require_total is None:
        require_total = logic.bottom
    if require_total:
        lacking = set(I1.domain) - {d for d, _ in pairs}
        if lacking:
            problems.append(f"(Tot) fails for {esorted(lacking)}")
    return problems
