"""Model-theoretic constructions: products, unravelings, characteristic
concepts, tree-query concepts and the simulation-image satisfaction test.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import (
    ABox,
    CAtom,
    Concept,
    Interpretation,
    Logic,
    RAtom,
    Role,
    atoms,
    conj,
    esorted,
    eval_concept,
    is_var,
    some,
)
from .sim import Simulation, audit_simulation


@dataclass(frozen=True)
class PointedInterp:
    interp: Interpretation
    point: object

    def __post_init__(self):
        if self.point not in self.interp.domain:
            raise ValueError("point must be a domain element")


@dataclass(frozen=True)
class TreeCQ:
    atoms: tuple
    root: object


def _signature_of(signature, parts) -> tuple[list[str], list[str]]:
    if signature is not None:
        cn, rn = signature
        return sorted(cn), sorted(rn)
    cn, rn = set(), set()
    for p in parts:
        cn |= set(p.interp.concepts)
        rn |= set(p.interp.roles)
    return sorted(cn), sorted(rn)


def product(parts: list[PointedInterp], signature=None) -> PointedInterp:
    """Direct product of pointed interpretations.

    The empty product is the one-element interpretation in which every
    concept name of the signature holds and every role loops.
    """
    cn, rn = _signature_of(signature, parts)
    if not parts:
        d = ()
        return PointedInterp(
            Interpretation([d], {a: [d] for a in cn}, {r: [(d, d)] for r in rn}), d
        )
    doms = [p.interp.elements() for p in parts]
    domain = list(itertools.product(*doms))
    concepts = {}
    for a in cn:
        exts = [p.interp.concepts.get(a, frozenset()) for p in parts]
        concepts[a] = [t for t in itertools.product(*[esorted(x) for x in exts])]
    roles = {}
    for r in rn:
        exts = [esorted(p.interp.roles.get(r, frozenset())) for p in parts]
        roles[r] = [(tuple(x for x, _ in combo), tuple(y for _, y in combo)) for combo in itertools.product(*exts)]
    return PointedInterp(Interpretation(domain, concepts, roles), tuple(p.point for p in parts))


def _unravel(start, labels_of, succ_of, dirs: list[Role], depth: int):
    """Paths of length <= depth as tuples (d0, (r, inv, d1), ...)."""
    domain = [(start,)]
    concepts: dict = {}
    roles: dict = {}
    frontier = [(start,)]
    for a in labels_of(start):
        concepts.setdefault(a, set()).add((start,))
    for _ in range(depth):
        nxt = []
        for path in frontier:
            tail = path[-1] if len(path) == 1 else path[-1][2]
            for r in dirs:
                for e in succ_of(r, tail):
                    child = path + ((r.name, r.inverted, e),)
                    domain.append(child)
                    nxt.append(child)
                    pair = (path, child) if not r.inverted else (child, path)
                    roles.setdefault(r.name, set()).add(pair)
                    for a in labels_of(e):
                        concepts.setdefault(a, set()).add(child)
        frontier = nxt
    return Interpretation(domain, concepts, roles)


def tail(path):
    return path[0] if len(path) == 1 else path[-1][2]


def unravel(logic: Logic, interp: Interpretation, d, depth: int) -> PointedInterp:
    """The depth-bounded L-unraveling of interp at d (EL uses forward steps only)."""
    dirs = interp.edge_roles(logic.inverse)
    J = _unravel(d, interp.labels, interp.succ, dirs, depth)
    return PointedInterp(J, (d,))


def char_concept(logic: Logic, interp: Interpretation, d, k: int, memo: dict | None = None) -> Concept:
    """Characteristic L-concept of role depth k for (interp, d).

    Built bottom-up and memoised per (element, depth) so shared parts are
    constructed once; interning keeps the result a DAG.
    """
    dirs = interp.edge_roles(logic.inverse)
    if memo is None:
        memo = {}
    base = {e: atoms(sorted(interp.labels(e))) for e in interp.domain}
    dist = _distances(interp, dirs, d, k)
    for j in range(k + 1):
        for e in esorted(x for x, n in dist.items() if n + j <= k):
            if (e, j) in memo:
                continue
            if j == 0:
                memo[(e, 0)] = base[e]
                continue
            parts = [base[e]]
            for r in dirs:
                for f in interp.succ(r, e):
                    parts.append(some(r, memo[(f, j - 1)]))
            memo[(e, j)] = conj(*parts)
    return memo[(d, k)]


def _distances(interp, dirs, d, k) -> dict:
    dist = {d: 0}
    frontier = [d]
    for n in range(1, k + 1):
        nxt = []
        for e in frontier:
            for r in dirs:
                for f in interp.succ(r, e):
                    if f not in dist:
                        dist[f] = n
                        nxt.append(f)
        frontier = nxt
        if not frontier:
            break
    return dist


def check_tree(atoms_, root, logic: Logic) -> None:
    """Raise ValueError unless (atoms_, root) is an L-tree CQ."""
    nodes = {t for a in atoms_ for t in a.terms} | {root}
    individuals = {t for t in nodes if not is_var(t)}
    if individuals - {root}:
        raise ValueError("individuals may only occur as the root of a tree query")
    edges = [a for a in atoms_ if isinstance(a, RAtom)]
    for a in edges:
        if a.subj == a.obj:
            raise ValueError(f"self loop {a} makes the query cyclic")
    if len(edges) != len(nodes) - 1:
        raise ValueError("tree queries need exactly |nodes|-1 role atoms (cyclic or disconnected input)")
    adj: dict = {t: [] for t in nodes}
    for a in edges:
        adj[a.subj].append(a.obj)
        adj[a.obj].append(a.subj)
    seen = {root}
    stack = [root]
    while stack:
        t = stack.pop()
        for u in adj[t]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    if seen != nodes:
        raise ValueError("tree query is disconnected (cyclic input)")
    if not logic.inverse:
        incoming: dict = {}
        for a in edges:
            incoming[a.obj] = incoming.get(a.obj, 0) + 1
        if root in incoming or any(n > 1 for n in incoming.values()):
            raise ValueError("EL tree queries must be directed away from the root")


def tree_concept(t: TreeCQ, logic: Logic = Logic.ELI) -> Concept:
    """Concept equivalent to the tree CQ t at its root (linear size)."""
    check_tree(t.atoms, t.root, logic)
    labels: dict = {}
    out_edges: dict = {}
    for a in t.atoms:
        if isinstance(a, CAtom):
            labels.setdefault(a.term, []).append(a.concept)
        else:
            out_edges.setdefault(a.subj, []).append((Role(a.role), a.obj, a))
            out_edges.setdefault(a.obj, []).append((Role(a.role, True), a.subj, a))

    def build(node, via):
        parts = [atoms(sorted(labels.get(node, [])))]
        for r, other, atom in out_edges.get(node, []):
            if atom is via:
                continue
            parts.append(some(r, build(other, atom)))
        return conj(*parts)

    return build(t.root, None)


def sim_image_satisfies(abox: ABox, sim: Simulation, interp: Interpretation, c: Concept, a, memo: dict | None = None) -> bool:
    """Decide I_{A,S,L} |= C(a) as aS ⊆ C^I without building I_{A,S,L}."""
    problems = audit_simulation(sim.logic, abox.interp, interp, sim.pairs, require_total=False)
    if problems:
        raise ValueError("not a simulation: " + problems[0])
    ext = eval_concept(c, interp, memo=memo)
    return all(d in ext for d in sim.image(a))


def materialize_IASL(abox: ABox, sim: Simulation, interp: Interpretation, logic: Logic, depth: int) -> Interpretation:
    """Depth-bounded I_{A,S,L}, for testing only.

    Individuals carry the labels shared by all their S-images (all labels
    when an individual has no image); below each individual hangs the
    unraveled product of its images.
    """
    problems = audit_simulation(sim.logic, abox.interp, interp, sim.pairs, require_total=False)
    if problems:
        raise ValueError("not a simulation: " + problems[0])
    A = abox.interp
    cn = sorted(set(A.concepts) | set(interp.concepts))
    rn = sorted(set(A.roles) | set(interp.roles))
    dirs = [Role(r) for r in rn] + ([Role(r, True) for r in rn] if logic.inverse else [])
    domain = set(A.domain)
    concepts: dict = {c: set() for c in cn}
    roles: dict = {r: set(A.roles.get(r, ())) for r in rn}
    for a in abox.individuals:
        images = sim.image(a)
        for c in cn:
            if all(d in interp.concepts.get(c, ()) for d in images):
                concepts[c].add(a)

        # implicit product of the images, unraveled from its point
        def labels_of(t, images=images):
            if not images:
                return frozenset(cn)
            common = set(interp.labels(t[0]))
            for x in t[1:]:
                common &= interp.labels(x)
            return frozenset(common)

        def succ_of(r, t, images=images):
            if not images:
                return [()] if r.name in rn else []
            return [tuple(c) for c in itertools.product(*[interp.succ(r, x) for x in t])]

        J = _unravel(tuple(images), labels_of, succ_of, dirs, depth)

        def rename(path, a=a):
            return a if len(path) == 1 else ("J", a, path[1:])

        for p in J.domain:
            domain.add(rename(p))
        for c, ext in J.concepts.items():
            concepts.setdefault(c, set()).update(rename(p) for p in ext)
        for r, ext in J.roles.items():
            roles.setdefault(r, set()).update((rename(x), rename(y)) for x, y in ext)
    return Interpretation(domain, concepts, roles, {a: a for a in abox.individuals})
