"""Query entailment: the compact chase for EL_bot ontologies with simulation
quantifiers, forest variations of CQs and their reduction queries, and a
bounded (sound but incomplete) procedure for ELI_bot.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .construct import TreeCQ, tree_concept
from .core import (
    ABox,
    And,
    Atom,
    BOT,
    CAtom,
    CQ,
    Concept,
    Exists,
    Existential,
    FRESH_PREFIX,
    Interpretation,
    Logic,
    Ontology,
    RAtom,
    Role,
    Rooted,
    SimQuant,
    TOP,
    UCQ,
    Var,
    concept_in_logic,
    ekey,
    esorted,
    eval_concept,
    is_model,
    is_var,
    satisfies_abox,
    satisfies_el_query,
    satisfies_ucq,
)

# ---------------------------------------------------------------------------
# Forest variations and reduction queries


@dataclass(frozen=True)
class Variation:
    cq: CQ
    origin: CQ
    logic: Logic


def _assignments(variables: list, individuals: list):
    """Substitute variables by individuals and/or merge them.

    Restricted growth over the merged classes enumerates every partition once.
    """
    out = []

    def go(i, current, classes):
        if i == len(variables):
            out.append(dict(current))
            return
        v = variables[i]
        for a in individuals:
            current[v] = a
            go(i + 1, current, classes)
        for rep in classes:
            current[v] = rep
            go(i + 1, current, classes)
        current[v] = v
        go(i + 1, current, classes + [v])
        del current[v]

    go(0, {}, [])
    return out


def _substitute(atom, m):
    if isinstance(atom, CAtom):
        return CAtom(atom.concept, m.get(atom.term, atom.term))
    return RAtom(atom.role, m.get(atom.subj, atom.subj), m.get(atom.obj, atom.obj))


def is_forest_variation(cq: CQ, abox: ABox, logic: Logic) -> bool:
    """Conditions 1-2 on a candidate variation.

    Edges between individuals must be asserted; the remaining role atoms form
    a forest (directed away from roots for EL, undirected for ELI) in which
    each tree holds at most one individual.
    """
    asserted = set(abox.assertions)
    rest = []
    for a in cq.atoms:
        if isinstance(a, RAtom):
            if not is_var(a.subj) and not is_var(a.obj):
                if a not in asserted:
                    return False
            else:
                rest.append(a)
    for a in rest:
        if a.subj == a.obj:
            return False
    if not logic.inverse:
        parent: dict = {}
        for a in rest:
            if not is_var(a.obj) or a.obj in parent:
                return False
            parent[a.obj] = a.subj
        for v in parent:
            seen = {v}
            t = v
            while t in parent:
                t = parent[t]
                if t in seen:
                    return False
                seen.add(t)
        return True
    uf: dict = {}

    def find(x):
        while uf.get(x, x) != x:
            uf[x] = uf.get(uf[x], uf[x])
            x = uf[x]
        return x

    for a in rest:
        x, y = find(a.subj), find(a.obj)
        if x == y:
            return False
        uf[x] = y
    roots: dict = {}
    for t in cq.terms:
        if not is_var(t):
            r = find(t)
            if r in roots:
                return False
            roots[r] = t
    return True


def canonical_cq(cq: CQ) -> CQ:
    """Rename variables to v0, v1, ... choosing the least atom list."""
    variables = cq.variables
    if len(variables) > 6:
        first: list = []
        for a in cq.atoms:
            for t in a.terms:
                if is_var(t) and t not in first:
                    first.append(t)
        m = {v: Var(f"v{i}") for i, v in enumerate(first)}
        return CQ(_substitute(a, m) for a in cq.atoms)
    best = None
    for perm in itertools.permutations(range(len(variables))):
        m = {v: Var(f"v{perm[i]}") for i, v in enumerate(variables)}
        cand = CQ(_substitute(a, m) for a in cq.atoms)
        k = tuple(a.sort_key() for a in cand.atoms)
        if best is None or k < best[0]:
            best = (k, cand)
    return best[1]


def enum_forest_variations(abox: ABox, p: CQ, logic: Logic) -> list[Variation]:
    """All L-forest A-variations of p, deduplicated up to variable renaming."""
    missing = set(p.individuals) - set(abox.individuals)
    if missing:
        raise ValueError(f"query individuals {sorted(missing)} are not in the ABox")
    base = logic.base
    seen: dict = {}
    for m in _assignments(p.variables, abox.individuals):
        cand = CQ(_substitute(a, m) for a in p.atoms)
        if not is_forest_variation(cand, abox, base):
            continue
        canon = canonical_cq(cand)
        k = tuple(a.sort_key() for a in canon.atoms)
        seen.setdefault(k, canon)
    return [Variation(seen[k], p, base) for k in sorted(seen)]


def reduction_queries(v: Variation, abox: ABox) -> list:
    """Rooted or existential concept queries, one per tree of v minus A."""
    asserted = set(abox.assertions)
    rest = [a for a in v.cq.atoms if a not in asserted]
    uf: dict = {}

    def find(x):
        while uf.get(x, x) != x:
            x = uf[x]
        return x

    for a in rest:
        ts = a.terms
        for t in ts[1:]:
            x, y = find(ts[0]), find(t)
            if x != y:
                uf[x] = y
    comps: dict = {}
    for a in rest:
        comps.setdefault(find(a.terms[0]), []).append(a)
    out = []
    for atoms_ in comps.values():
        terms = {t for a in atoms_ for t in a.terms}
        inds = [t for t in terms if not is_var(t)]
        if inds:
            root = inds[0]
        else:
            # EL trees must be read from the node without a parent
            targets = {a.obj for a in atoms_ if isinstance(a, RAtom)}
            root = esorted(terms - targets)[0]
        c = tree_concept(TreeCQ(tuple(atoms_), root), v.logic)
        out.append(Rooted(c, root) if inds else Existential(c))
    out.sort(key=lambda q: (0, q.individual, q.concept.key) if isinstance(q, Rooted) else (1, "", q.concept.key))
    return out


# ---------------------------------------------------------------------------
# Mutable model under construction


class _Builder:
    def __init__(self, abox: ABox | None = None, universal: tuple = ()):
        self.domain: list = []
        self.members: set = set()
        self.labels: dict = {}
        self.edges: dict = {}
        self.named: dict = {}
        self.universal = tuple(universal)
        self._snap = None
        self._memo: dict = {}
        if abox is not None:
            for a in abox.individuals:
                self.add_element(a)
                self.named[a] = a
            for at in abox:
                if isinstance(at, CAtom):
                    self.add_label(at.term, at.concept)
                else:
                    self.add_edge(at.role, at.subj, at.obj)

    def copy(self) -> "_Builder":
        b = _Builder(universal=self.universal)
        b.domain = list(self.domain)
        b.members = set(self.members)
        b.labels = {d: set(v) for d, v in self.labels.items()}
        b.edges = {r: set(v) for r, v in self.edges.items()}
        b.named = dict(self.named)
        return b

    def add_element(self, d) -> bool:
        if d in self.members:
            return False
        self.domain.append(d)
        self.members.add(d)
        self.labels[d] = set()
        self._snap = None
        return True

    def add_label(self, d, a) -> bool:
        if a in self.labels[d]:
            return False
        self.labels[d].add(a)
        self._snap = None
        return True

    def add_edge(self, r, d, e) -> bool:
        s = self.edges.setdefault(r, set())
        if (d, e) in s:
            return False
        s.add((d, e))
        self._snap = None
        return True

    def snapshot(self) -> Interpretation:
        if self._snap is None:
            concepts: dict = {}
            for d, labs in self.labels.items():
                for a in labs:
                    concepts.setdefault(a, set()).add(d)
            roles = {r: set(v) for r, v in self.edges.items()}
            for u in self.universal:
                roles[u] = {(d, e) for d in self.domain for e in self.domain}
            self._snap = Interpretation(self.domain, concepts, roles, self.named)
            self._memo = {}
        return self._snap

    def holds(self, c: Concept, d) -> bool:
        snap = self.snapshot()
        return d in eval_concept(c, snap, memo=self._memo)

    def ext(self, c: Concept) -> frozenset:
        snap = self.snapshot()
        return eval_concept(c, snap, memo=self._memo)


# ---------------------------------------------------------------------------
# Compact chase


@dataclass(frozen=True)
class UniversalModel:
    interp: Interpretation
    inconsistent: bool
    reps: tuple = ()


def _check_chase_input(onto: Ontology) -> None:
    for ci in onto:
        if not concept_in_logic(ci.rhs, Logic.ELB, allow_sim=False):
            raise ValueError("chase right-hand sides must be EL_bot concepts")
        if not concept_in_logic(ci.lhs, Logic.ELB):
            raise ValueError("chase left-hand sides must be EL concepts or EL simulation quantifiers")
        for s in ci.lhs.subconcepts():
            if isinstance(s, SimQuant) and s.logic.inverse:
                raise ValueError("chase left-hand sides may only use EL simulation quantifiers")


def chase_universal_model(abox: ABox, onto: Ontology) -> UniversalModel:
    """Saturate the ABox under the ontology, reusing one element per filler.

    Rule order is breadth first over elements in canonical order and CIs in
    ontology order, so the output is reproducible.
    """
    _check_chase_input(onto)
    b = _Builder(abox)
    reps: dict = {}
    state = {"bad": False}

    def apply(c: Concept, d) -> bool:
        if b.holds(c, d):
            return False
        if c is BOT:
            state["bad"] = True
            return True
        if isinstance(c, Atom):
            return b.add_label(d, c.name)
        if isinstance(c, And):
            changed = False
            for p in c.parts:
                changed |= apply(p, d)
                if state["bad"]:
                    break
            return changed
        if isinstance(c, Exists):
            x = reps.get(c.filler)
            if x is None:
                x = f"{FRESH_PREFIX}x{len(reps)}"
                reps[c.filler] = x
                b.add_element(x)
                b.add_edge(c.role.name, d, x)
                apply(c.filler, x)
                return True
            b.add_edge(c.role.name, d, x)
            apply(c.filler, x)
            return True
        raise ValueError(f"cannot apply {c!r}")

    changed = True
    while changed and not state["bad"]:
        changed = False
        snap = b.snapshot()
        memo: dict = {}
        exts = [eval_concept(ci.lhs, snap, memo=memo) for ci in onto]
        order = {d: i for i, d in enumerate(_bfs_order(snap))}
        for ci, ext in zip(onto, exts):
            for d in sorted(ext, key=lambda x: order[x]):
                if apply(ci.rhs, d):
                    changed = True
                if state["bad"]:
                    break
            if state["bad"]:
                break
    return UniversalModel(b.snapshot(), state["bad"], tuple(sorted(((x, c) for c, x in reps.items()), key=lambda p: ekey(p[0]))))


def _bfs_order(interp: Interpretation) -> list:
    """Individuals first, then other elements in breadth-first order."""
    out = esorted(interp.named.values())
    seen = set(out)
    frontier = list(out)
    dirs = interp.edge_roles(False)
    while frontier:
        nxt = []
        for d in frontier:
            for r in dirs:
                for e in interp.succ(r, d):
                    if e not in seen:
                        seen.add(e)
                        out.append(e)
                        nxt.append(e)
        frontier = nxt
    out += [d for d in interp.elements() if d not in seen]
    return out


def unfold_universal(um: UniversalModel, depth: int) -> Interpretation:
    """Finite forest-like copy of a compact chase model.

    Anonymous elements become histories: anchored step sequences while
    shorter than ``depth``, afterwards only the last ``depth`` steps together
    with the path length modulo depth+1 (so periodic histories do not fold
    into short cycles).  Each copy has the successors of the element it
    copies, which keeps the result a model of any ontology whose left-hand
    sides are EL concepts or EL simulation quantifiers.  CQs with fewer than
    ``depth`` terms match only if some forest variation matches.
    """
    U = um.interp
    inds = set(U.named.values())
    dirs = U.edge_roles(False)
    domain = set(inds)
    concepts: dict = {}
    roles: dict = {}
    period = depth + 1

    def tail_of(h):
        if h in inds:
            return h
        return h[-1][1]

    def child(h, r, y):
        if h in inds:
            steps, anchor, n = ((r, y),), h, 1
        elif h[0] == "@":
            steps, anchor, n = h[2:] + ((r, y),), h[1], len(h) - 1
        else:
            steps, anchor, n = h[2:] + ((r, y),), None, h[1] + 1
        if anchor is not None and len(steps) < depth:
            return ("@", anchor) + steps
        return ("~", n % period) + steps[-depth:]

    frontier = esorted(inds)
    for d in frontier:
        for a in U.labels(d):
            concepts.setdefault(a, set()).add(d)
    seen = set(frontier)
    while frontier:
        nxt = []
        for h in frontier:
            x = tail_of(h)
            for r in dirs:
                for y in U.succ(r, x):
                    if h in inds and y in inds:
                        roles.setdefault(r.name, set()).add((h, y))
                        continue
                    c = child(h, r.name, y)
                    roles.setdefault(r.name, set()).add((h, c))
                    if c not in seen:
                        seen.add(c)
                        domain.add(c)
                        nxt.append(c)
                        for a in U.labels(y):
                            concepts.setdefault(a, set()).add(c)
        frontier = nxt
    return Interpretation(domain, concepts, roles, U.named)


def entails_el_query(abox: ABox, onto: Ontology, q: Rooted | Existential) -> bool:
    um = chase_universal_model(abox, onto)
    if um.inconsistent:
        return True
    return satisfies_el_query(um.interp, q)


def ucq_entailed_by_universal(abox: ABox, onto: Ontology, q: UCQ, logic: Logic = Logic.EL) -> bool:
    """A ∪ O |= q, via forest variations evaluated on the compact chase model."""
    um = chase_universal_model(abox, onto)
    if um.inconsistent:
        return True
    return ucq_holds_on_universal(um.interp, abox, q, logic)


def ucq_holds_on_universal(U: Interpretation, abox: ABox, q: UCQ, logic: Logic, variations: dict | None = None) -> bool:
    memo: dict = {}
    for p in q.cqs:
        vs = variations.get(p) if variations is not None else None
        if vs is None:
            vs = [(v, reduction_queries(v, abox)) for v in enum_forest_variations(abox, p, logic)]
        for v, reds in vs:
            if all(satisfies_el_query(U, r, memo=memo) for r in reds):
                return True
    return False


# ---------------------------------------------------------------------------
# Bounded ELI_bot entailment


class Entailment(enum.Enum):
    ENTAILED = "entailed"
    NOT_ENTAILED = "not_entailed"
    UNKNOWN = "unknown"


def _query_holds(snap: Interpretation, q) -> bool:
    if q is None:
        return False
    if isinstance(q, UCQ):
        return satisfies_ucq(snap, q)
    if isinstance(q, CQ):
        return satisfies_ucq(snap, UCQ([q]))
    if isinstance(q, (list, tuple)):
        return any(_query_holds(snap, x) for x in q)
    return satisfies_el_query(snap, q)


TREE_CHASE_CAP = 1000


def tree_chase(abox: ABox, onto: Ontology, depth: int, universal: tuple = (), max_elements: int = TREE_CHASE_CAP):
    """Forced consequences without element reuse, up to a nesting depth.

    Returns (model, inconsistent, truncated).  Every element and fact is
    forced, so the result maps homomorphically into every model of A ∪ O.
    Growth also stops once max_elements anonymous elements exist.
    """
    b = _Builder(abox, universal)
    level = {a: 0 for a in abox.individuals}
    state = {"bad": False, "cut": False, "n": 0}

    def fresh(parent):
        x = f"{FRESH_PREFIX}t{state['n']}"
        state["n"] += 1
        b.add_element(x)
        level[x] = level[parent] + 1
        return x

    def apply(c: Concept, d) -> bool:
        if b.holds(c, d):
            return False
        if c is BOT:
            state["bad"] = True
            return True
        if isinstance(c, Atom):
            return b.add_label(d, c.name)
        if isinstance(c, And):
            changed = False
            for p in c.parts:
                changed |= apply(p, d)
                if state["bad"]:
                    break
            return changed
        if isinstance(c, Exists):
            if state["n"] >= max_elements:
                state["cut"] = True
                return False
            if c.role.name in universal:
                # universal role: any element will do, create one at the top
                if level[d] >= depth:
                    state["cut"] = True
                    return False
                x = fresh(d)
                apply(c.filler, x)
                return True
            if level[d] >= depth:
                state["cut"] = True
                return False
            x = fresh(d)
            if c.role.inverted:
                b.add_edge(c.role.name, x, d)
            else:
                b.add_edge(c.role.name, d, x)
            apply(c.filler, x)
            return True
        if isinstance(c, SimQuant):
            return _attach_unraveling(c, d)
        raise ValueError(f"cannot apply {c!r}")

    def _attach_unraveling(c: SimQuant, d) -> bool:
        J = c.interp
        dirs = J.edge_roles(c.logic.inverse)
        changed = False
        for a in J.labels(c.point):
            changed |= b.add_label(d, a)
        frontier = [(c.point, d)]
        while frontier:
            nxt = []
            for src, img in frontier:
                for r in dirs:
                    for e in J.succ(r, src):
                        if level[img] >= depth or state["n"] >= max_elements:
                            state["cut"] = True
                            continue
                        x = fresh(img)
                        changed = True
                        if r.inverted:
                            b.add_edge(r.name, x, img)
                        else:
                            b.add_edge(r.name, img, x)
                        for a in J.labels(e):
                            b.add_label(x, a)
                        nxt.append((e, x))
            frontier = nxt
        return changed

    changed = True
    while changed and not state["bad"]:
        changed = False
        snap = b.snapshot()
        memo: dict = {}
        exts = [eval_concept(ci.lhs, snap, memo=memo) for ci in onto]
        for ci, ext in zip(onto, exts):
            for d in esorted(ext):
                if apply(ci.rhs, d):
                    changed = True
                if state["bad"]:
                    break
            if state["bad"]:
                break
    return b.snapshot(), state["bad"], state["cut"]


def search_model(
    abox: ABox,
    onto: Ontology,
    size_bound: int,
    forbidden=None,
    universal: tuple = (),
    node_limit: int = 200000,
) -> Interpretation | None:
    """Finite model of A ∪ O with at most size_bound elements avoiding ``forbidden``.

    Depth-first search over the witnesses chosen for existential demands;
    labels are propagated as a least fixpoint between choices.  New elements
    are only introduced as the next unused one, which breaks the symmetry
    between anonymous elements.  Any returned model has been re-checked.
    """
    start = _Builder(abox, universal)
    bound = max(size_bound, len(abox.individuals))
    budget = [node_limit]

    def violates(b):
        return _query_holds(b.snapshot(), forbidden)

    def propagate(b, obligations):
        while True:
            if violates(b):
                return "fail", None
            demands = []
            pending = []
            for ci in onto:
                lhs = b.ext(ci.lhs)
                rhs = b.ext(ci.rhs)
                for d in esorted(lhs - rhs):
                    pending.append((ci.rhs, d))
            for c, d in sorted(obligations, key=lambda p: (p[0].key, ekey(p[1]))):
                if not b.holds(c, d):
                    pending.append((c, d))
            if not pending:
                return "done", None
            progress = False
            for c, d in pending:
                res = _decompose(b, c, d, demands)
                if res == "fail":
                    return "fail", None
                progress |= res == "progress"
            if not progress:
                return "choose", demands[0]

    def _decompose(b, c, d, demands):
        if b.holds(c, d):
            return "ok"
        if c is BOT:
            return "fail"
        if isinstance(c, Atom):
            b.add_label(d, c.name)
            return "progress"
        if isinstance(c, And):
            out = "ok"
            for p in c.parts:
                r = _decompose(b, p, d, demands)
                if r == "fail":
                    return "fail"
                if r == "progress":
                    out = "progress"
            return out
        demands.append((c, d))
        return "ok"

    def options(b, c, d):
        elems = list(b.domain)
        fresh = None
        if len(b.domain) < bound:
            fresh = f"{FRESH_PREFIX}e{len(b.domain)}"
        if isinstance(c, Exists):
            for t in elems + ([fresh] if fresh else []):
                nb = b.copy()
                if t == fresh:
                    nb.add_element(t)
                if c.role.name in universal:
                    pass
                elif c.role.inverted:
                    nb.add_edge(c.role.name, t, d)
                else:
                    nb.add_edge(c.role.name, d, t)
                yield nb, (c.filler, t)
        elif isinstance(c, SimQuant):
            J = c.interp
            comp = _component(J, c.point, c.logic.inverse)
            others = [x for x in esorted(comp) if x != c.point]
            pool = elems + [f"{FRESH_PREFIX}e{len(b.domain) + i}" for i in range(bound - len(b.domain))]
            for images in itertools.product(pool, repeat=len(others)):
                h = dict(zip(others, images))
                h[c.point] = d
                nb = b.copy()
                ok = True
                for x in esorted(h.values()):
                    if x not in nb.members:
                        nb.add_element(x)
                if len(nb.domain) > bound:
                    ok = False
                if not ok:
                    continue
                for x in comp:
                    for a in J.labels(x):
                        nb.add_label(h[x], a)
                for r, ext in J.roles.items():
                    for x, y in ext:
                        if x in h and y in h:
                            nb.add_edge(r, h[x], h[y])
                yield nb, None
        else:
            raise ValueError(f"cannot satisfy {c!r}")

    def dfs(b, obligations):
        budget[0] -= 1
        if budget[0] < 0:
            return None
        status, demand = propagate(b, obligations)
        if status == "fail":
            return None
        if status == "done":
            snap = b.snapshot()
            if is_model(snap, onto) and satisfies_abox(snap, abox) and not _query_holds(snap, forbidden):
                return snap
            return None
        c, d = demand
        for nb, ob in options(b, c, d):
            nobs = set(obligations)
            if ob is not None:
                nobs.add(ob)
            res = dfs(nb, frozenset(nobs))
            if res is not None:
                return res
        return None

    return dfs(start, frozenset())


def _component(J: Interpretation, d, inverse: bool) -> set:
    seen = {d}
    stack = [d]
    dirs = J.edge_roles(inverse)
    while stack:
        x = stack.pop()
        for r in dirs:
            for y in J.succ(r, x):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return seen


def eli_entailment_bounded(abox: ABox, onto: Ontology, q, chase_depth: int = 4, model_bound: int | None = None) -> Entailment:
    """Sound three-valued entailment check for ELI_bot ontologies.

    q is a UCQ, a CQ, an EL query, or None for inconsistency.  ENTAILED comes
    from a match in the forced tree chase; NOT_ENTAILED from a finite
    countermodel (the completed chase or one found by bounded search).
    """
    status, _ = eli_entailment_bounded_model(abox, onto, q, chase_depth, model_bound)
    return status


def eli_entailment_bounded_model(abox, onto, q, chase_depth=4, model_bound=None, node_limit=20000):
    """As eli_entailment_bounded, also returning the countermodel if found.

    The two phases are interleaved and deepen gradually: one more nesting
    level of the tree chase, then one more element for the model search.
    Either answer is sound, so the first conclusive one is returned.
    """
    if model_bound is None:
        model_bound = len(abox.individuals) + 3
    depths = list(range(1, chase_depth + 1))
    sizes = list(range(len(abox.individuals), model_bound + 1))
    capped = False
    for i in range(max(len(depths), len(sizes))):
        if i < len(depths) and not capped:
            snap, bad, cut = tree_chase(abox, onto, depths[i])
            if bad or _query_holds(snap, q):
                return Entailment.ENTAILED, None
            if not cut and is_model(snap, onto):
                return Entailment.NOT_ENTAILED, snap
            # a chase stopped by the element cap cannot grow any further
            capped = len(snap.domain) - len(abox.individuals) >= TREE_CHASE_CAP
        if i < len(sizes):
            model = search_model(abox, onto, sizes[i], forbidden=q, node_limit=node_limit)
            if model is not None:
                return Entailment.NOT_ENTAILED, model
    return Entailment.UNKNOWN, None
