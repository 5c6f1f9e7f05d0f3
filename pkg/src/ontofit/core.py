"""Syntax and semantics of Horn description logic concepts, ABoxes and queries.

Concepts are interned: building the same concept twice returns the same
object, conjunctions are flattened and sorted, so syntactic equality is
identity and deep shared structures (characteristic concepts) stay small.
Interpretations are immutable finite labelled graphs; an ABox is viewed as
the interpretation whose elements are its individual names.
"""

from __future__ import annotations

import enum
import weakref
from dataclasses import dataclass
from typing import Iterable

# Reserved prefix for symbols invented by the library (auxiliary role u,
# X^k names of the poly encoding, V-bar names, S names).  User input that
# uses it is rejected by the parser.
FRESH_PREFIX = "__"


class Logic(enum.Enum):
    EL = "el"
    ELB = "elb"
    ELI = "eli"
    ELIB = "elib"

    @property
    def inverse(self) -> bool:
        return self in (Logic.ELI, Logic.ELIB)

    @property
    def bottom(self) -> bool:
        return self in (Logic.ELB, Logic.ELIB)

    @property
    def base(self) -> "Logic":
        """The logic without the bottom concept."""
        return Logic.ELI if self.inverse else Logic.EL

    @property
    def pretty(self) -> str:
        return {"el": "EL", "elb": "EL_bot", "eli": "ELI", "elib": "ELI_bot"}[self.value]

    @classmethod
    def parse(cls, text: str) -> "Logic":
        key = text.strip().lower().replace("⊥", "b").replace("_bot", "b").replace("-", "")
        for member in cls:
            if member.value == key:
                return member
        raise ValueError(f"unknown logic tag {text!r}")


def ekey(x):
    """Sort key for domain elements of mixed type (names, tuples, numbers)."""
    if isinstance(x, str):
        return (0, x)
    if isinstance(x, bool) or isinstance(x, int):
        return (1, int(x))
    if isinstance(x, tuple):
        return (2, tuple(ekey(y) for y in x))
    if isinstance(x, Role):
        return (3, x.name, x.inverted)
    if isinstance(x, Var):
        return (4, x.name)
    return (5, repr(x))


def esorted(xs: Iterable) -> list:
    return sorted(xs, key=ekey)


@dataclass(frozen=True, order=True)
class Role:
    name: str
    inverted: bool = False

    def inv(self) -> "Role":
        return Role(self.name, not self.inverted)

    def __str__(self) -> str:
        return self.name + ("-" if self.inverted else "")


# ---------------------------------------------------------------------------
# Concepts

_INTERN: "weakref.WeakValueDictionary" = weakref.WeakValueDictionary()


class Concept:
    """Base class of interned concept nodes.

    ``key`` is a structural nested tuple used for canonical ordering; it
    shares sub-tuples with the children so it is cheap to build.
    """

    __slots__ = ("key", "depth", "__weakref__")
    kind = "?"

    def __lt__(self, other: "Concept") -> bool:
        return self.key < other.key

    def __repr__(self) -> str:
        from .cli import concept_to_sexpr

        return f"<{concept_to_sexpr(self)}>"

    def subconcepts(self) -> list["Concept"]:
        """All distinct sub-concepts in post order (children first)."""
        seen: set[int] = set()
        out: list[Concept] = []
        stack: list[tuple[Concept, bool]] = [(self, False)]
        while stack:
            c, done = stack.pop()
            if done:
                out.append(c)
                continue
            if id(c) in seen:
                continue
            seen.add(id(c))
            stack.append((c, True))
            for ch in reversed(c.children()):
                if id(ch) not in seen:
                    stack.append((ch, False))
        return out

    def children(self) -> tuple["Concept", ...]:
        return ()


def _intern(cls, ident, init):
    obj = _INTERN.get(ident)
    if obj is None:
        obj = object.__new__(cls)
        init(obj)
        _INTERN[ident] = obj
    return obj


class Top(Concept):
    __slots__ = ()
    kind = "top"

    def __new__(cls):
        def init(o):
            o.key, o.depth = (0,), 0

        return _intern(cls, ("top",), init)


class Bot(Concept):
    __slots__ = ()
    kind = "bot"

    def __new__(cls):
        def init(o):
            o.key, o.depth = (1,), 0

        return _intern(cls, ("bot",), init)


class Atom(Concept):
    __slots__ = ("name",)
    kind = "atom"

    def __new__(cls, name: str):
        def init(o):
            o.name = name
            o.key, o.depth = (2, name), 0

        return _intern(cls, ("atom", name), init)


class And(Concept):
    __slots__ = ("parts",)
    kind = "and"

    def __new__(cls, parts: tuple):
        # callers go through conj(), which canonicalises parts
        def init(o):
            o.parts = parts
            o.key = (3, tuple(p.key for p in parts))
            o.depth = max(p.depth for p in parts)

        return _intern(cls, ("and", parts), init)

    def children(self):
        return self.parts


class Exists(Concept):
    __slots__ = ("role", "filler")
    kind = "exists"

    def __new__(cls, role: Role, filler: Concept):
        def init(o):
            o.role, o.filler = role, filler
            o.key = (4, role.name, role.inverted, filler.key)
            o.depth = filler.depth + 1

        return _intern(cls, ("exists", role, id(filler), filler), init)

    def children(self):
        return (self.filler,)


class SimQuant(Concept):
    """The simulation quantifier: elements that L-simulate (interp, point)."""

    __slots__ = ("logic", "interp", "point")
    kind = "sim"

    def __new__(cls, logic: Logic, interp: "Interpretation", point):
        if logic.bottom:
            raise ValueError("simulation quantifiers carry EL or ELI tags only")
        if point not in interp.domain:
            raise ValueError("quantifier point must belong to its interpretation")

        def init(o):
            o.logic, o.interp, o.point = logic, interp, point
            o.key = (5, logic.value, interp.key, ekey(point))
            o.depth = 0

        return _intern(cls, ("sim", logic, interp.key, ekey(point)), init)


TOP = Top()
BOT = Bot()


def conj(*parts: Concept) -> Concept:
    """Canonical conjunction: flattened, deduplicated, sorted, Top dropped."""
    flat: dict[int, Concept] = {}
    stack = list(parts)
    while stack:
        p = stack.pop()
        if isinstance(p, And):
            stack.extend(p.parts)
        elif p is BOT:
            return BOT
        elif p is not TOP:
            flat[id(p)] = p
    if not flat:
        return TOP
    if len(flat) == 1:
        return next(iter(flat.values()))
    return And(tuple(sorted(flat.values(), key=lambda c: c.key)))


def some(role: Role | str, filler: Concept = TOP) -> Concept:
    if isinstance(role, str):
        role = Role(role)
    return Exists(role, filler)


def atoms(names: Iterable[str]) -> Concept:
    return conj(*(Atom(n) for n in names))


def concept_signature(c: Concept) -> tuple[set[str], set[str]]:
    """Concept and role names used in c (including quantifier payloads)."""
    cn: set[str] = set()
    rn: set[str] = set()
    for s in c.subconcepts():
        if isinstance(s, Atom):
            cn.add(s.name)
        elif isinstance(s, Exists):
            rn.add(s.role.name)
        elif isinstance(s, SimQuant):
            cn |= set(s.interp.concepts)
            rn |= set(s.interp.roles)
    return cn, rn


def concept_in_logic(c: Concept, logic: Logic, allow_sim: bool = True) -> bool:
    for s in c.subconcepts():
        if s is BOT and not logic.bottom:
            return False
        if isinstance(s, Exists) and s.role.inverted and not logic.inverse:
            return False
        if isinstance(s, SimQuant):
            if not allow_sim or (s.logic.inverse and not logic.inverse):
                return False
    return True


# ---------------------------------------------------------------------------
# Interpretations


class Interpretation:
    """Finite interpretation; immutable once built."""

    __slots__ = ("domain", "concepts", "roles", "named", "_succ", "_pred", "_labels", "_key")

    def __init__(self, domain, concepts=None, roles=None, named=None):
        self.domain = frozenset(domain)
        cs = {}
        for a, ext in (concepts or {}).items():
            ext = frozenset(ext)
            if ext:
                if not ext <= self.domain:
                    raise ValueError(f"extension of {a} leaves the domain")
                cs[a] = ext
        rs = {}
        for r, ext in (roles or {}).items():
            ext = frozenset((d, e) for d, e in ext)
            if ext:
                for d, e in ext:
                    if d not in self.domain or e not in self.domain:
                        raise ValueError(f"extension of {r} leaves the domain")
                rs[r] = ext
        self.concepts = cs
        self.roles = rs
        named = dict(named or {})
        if len(set(named.values())) != len(named):
            raise ValueError("named map must be injective")
        for a, d in named.items():
            if d not in self.domain:
                raise ValueError(f"individual {a} is not mapped into the domain")
        self.named = named
        self._succ = None
        self._pred = None
        self._labels = None
        self._key = None

    # adjacency is built lazily on first use
    def _index(self):
        succ: dict = {}
        pred: dict = {}
        for r, ext in self.roles.items():
            s = succ.setdefault(r, {})
            p = pred.setdefault(r, {})
            for d, e in ext:
                s.setdefault(d, []).append(e)
                p.setdefault(e, []).append(d)
        for m in (succ, pred):
            for table in m.values():
                for d in table:
                    table[d] = tuple(esorted(table[d]))
        self._succ, self._pred = succ, pred
        labels = {d: set() for d in self.domain}
        for a, ext in self.concepts.items():
            for d in ext:
                labels[d].add(a)
        self._labels = {d: frozenset(v) for d, v in labels.items()}

    def labels(self, d) -> frozenset:
        if self._labels is None:
            self._index()
        return self._labels[d]

    def succ(self, role: Role, d) -> tuple:
        """Successors of d along role (predecessors for an inverted role)."""
        if self._succ is None:
            self._index()
        table = (self._pred if role.inverted else self._succ).get(role.name)
        if not table:
            return ()
        return table.get(d, ())

    def elements(self) -> list:
        return esorted(self.domain)

    def role_names(self) -> list[str]:
        return sorted(self.roles)

    def concept_names(self) -> list[str]:
        return sorted(self.concepts)

    def edge_roles(self, inverse: bool) -> list[Role]:
        out = [Role(r) for r in self.role_names()]
        if inverse:
            out += [Role(r, True) for r in self.role_names()]
        return out

    @property
    def key(self):
        if self._key is None:
            self._key = (
                tuple(ekey(d) for d in esorted(self.domain)),
                tuple((a, tuple(ekey(d) for d in esorted(self.concepts[a]))) for a in sorted(self.concepts)),
                tuple(
                    (r, tuple(sorted((ekey(d), ekey(e)) for d, e in self.roles[r])))
                    for r in sorted(self.roles)
                ),
                tuple(sorted((a, ekey(d)) for a, d in self.named.items())),
            )
        return self._key

    def __eq__(self, other):
        return isinstance(other, Interpretation) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"Interpretation(|dom|={len(self.domain)}, concepts={self.concept_names()}, roles={self.role_names()})"

    def with_roles(self, extra: dict) -> "Interpretation":
        roles = {r: set(ext) for r, ext in self.roles.items()}
        for r, ext in extra.items():
            roles.setdefault(r, set()).update(ext)
        return Interpretation(self.domain, self.concepts, roles, self.named)

    def restrict(self, elements) -> "Interpretation":
        keep = frozenset(elements)
        return Interpretation(
            keep,
            {a: ext & keep for a, ext in self.concepts.items()},
            {r: {(d, e) for d, e in ext if d in keep and e in keep} for r, ext in self.roles.items()},
            {a: d for a, d in self.named.items() if d in keep},
        )


def disjoint_union(parts: list[Interpretation]) -> Interpretation:
    """Disjoint union; element d of part j becomes (j, d)."""
    domain, concepts, roles = set(), {}, {}
    for j, I in enumerate(parts):
        domain |= {(j, d) for d in I.domain}
        for a, ext in I.concepts.items():
            concepts.setdefault(a, set()).update((j, d) for d in ext)
        for r, ext in I.roles.items():
            roles.setdefault(r, set()).update(((j, d), (j, e)) for d, e in ext)
    return Interpretation(domain, concepts, roles)


# ---------------------------------------------------------------------------
# Terms, atoms, ABoxes and queries


@dataclass(frozen=True, order=True)
class Var:
    name: str

    def __str__(self):
        return "?" + self.name


@dataclass(frozen=True)
class CAtom:
    """Concept atom A(t)."""

    concept: str
    term: object

    @property
    def terms(self):
        return (self.term,)

    def sort_key(self):
        return (0, self.concept, ekey(self.term))

    def __str__(self):
        return f"{self.concept}({self.term})"


@dataclass(frozen=True)
class RAtom:
    """Role atom r(t1, t2)."""

    role: str
    subj: object
    obj: object

    @property
    def terms(self):
        return (self.subj, self.obj)

    def sort_key(self):
        return (1, self.role, ekey(self.subj), ekey(self.obj))

    def __str__(self):
        return f"{self.role}({self.subj}, {self.obj})"


def is_var(t) -> bool:
    return isinstance(t, Var)


def sort_atoms(atoms_: Iterable) -> tuple:
    return tuple(sorted(set(atoms_), key=lambda a: a.sort_key()))


class ABox:
    """Finite nonempty set of assertions over individual names."""

    __slots__ = ("assertions", "_interp")

    def __init__(self, assertions: Iterable):
        items = sort_atoms(assertions)
        if not items:
            raise ValueError("ABoxes are nonempty")
        for a in items:
            for t in a.terms:
                if not isinstance(t, str):
                    raise ValueError(f"ABox assertion {a} mentions a non-individual term")
        self.assertions = items
        self._interp = None

    @property
    def individuals(self) -> list[str]:
        return sorted({t for a in self.assertions for t in a.terms})

    @property
    def interp(self) -> Interpretation:
        if self._interp is None:
            inds = self.individuals
            concepts: dict = {}
            roles: dict = {}
            for a in self.assertions:
                if isinstance(a, CAtom):
                    concepts.setdefault(a.concept, set()).add(a.term)
                else:
                    roles.setdefault(a.role, set()).add((a.subj, a.obj))
            self._interp = Interpretation(inds, concepts, roles, {a: a for a in inds})
        return self._interp

    def signature(self) -> tuple[set[str], set[str]]:
        cn = {a.concept for a in self.assertions if isinstance(a, CAtom)}
        rn = {a.role for a in self.assertions if isinstance(a, RAtom)}
        return cn, rn

    def __iter__(self):
        return iter(self.assertions)

    def __len__(self):
        return len(self.assertions)

    def __eq__(self, other):
        return isinstance(other, ABox) and self.assertions == other.assertions

    def __hash__(self):
        return hash(self.assertions)

    def __repr__(self):
        return "ABox{" + ", ".join(map(str, self.assertions)) + "}"


class CQ:
    """Conjunctive query: a nonempty set of atoms over variables and individuals."""

    __slots__ = ("atoms",)

    def __init__(self, atoms_: Iterable):
        items = sort_atoms(atoms_)
        if not items:
            raise ValueError("conjunctive queries need at least one atom")
        self.atoms = items

    @property
    def terms(self) -> list:
        return esorted({t for a in self.atoms for t in a.terms})

    @property
    def variables(self) -> list[Var]:
        return [t for t in self.terms if is_var(t)]

    @property
    def individuals(self) -> list[str]:
        return [t for t in self.terms if not is_var(t)]

    def is_aq(self) -> bool:
        return len(self.atoms) == 1 and isinstance(self.atoms[0], CAtom) and not is_var(self.atoms[0].term)

    def signature(self):
        cn = {a.concept for a in self.atoms if isinstance(a, CAtom)}
        rn = {a.role for a in self.atoms if isinstance(a, RAtom)}
        return cn, rn

    def __eq__(self, other):
        return isinstance(other, CQ) and self.atoms == other.atoms

    def __hash__(self):
        return hash(self.atoms)

    def __repr__(self):
        return "CQ(" + ", ".join(map(str, self.atoms)) + ")"


class UCQ:
    __slots__ = ("cqs",)

    def __init__(self, cqs: Iterable[CQ]):
        items = tuple(cqs)
        if not items:
            raise ValueError("a UCQ needs at least one disjunct")
        self.cqs = items

    @property
    def individuals(self) -> list[str]:
        return sorted({a for q in self.cqs for a in q.individuals})

    def signature(self):
        cn, rn = set(), set()
        for q in self.cqs:
            c, r = q.signature()
            cn |= c
            rn |= r
        return cn, rn

    def __eq__(self, other):
        return isinstance(other, UCQ) and self.cqs == other.cqs

    def __hash__(self):
        return hash(self.cqs)

    def __repr__(self):
        return " | ".join(map(repr, self.cqs))


def aq(concept: str, individual: str) -> UCQ:
    return UCQ([CQ([CAtom(concept, individual)])])


@dataclass(frozen=True)
class Rooted:
    """Rooted EL query C(a)."""

    concept: Concept
    individual: str


@dataclass(frozen=True)
class Existential:
    """Existential EL query: some element satisfies C."""

    concept: Concept


class QueryLang(enum.Enum):
    CONSISTENCY = "consistency"
    AQ = "aq"
    CQ = "cq"
    UCQ = "ucq"


@dataclass(frozen=True)
class Example:
    abox: ABox
    query: UCQ | None  # None in consistency mode

    def signature(self):
        cn, rn = self.abox.signature()
        if self.query is not None:
            c, r = self.query.signature()
            cn, rn = cn | c, rn | r
        return cn, rn


@dataclass(frozen=True)
class ExampleCollection:
    positives: tuple
    negatives: tuple
    logic: Logic
    query_lang: QueryLang
    declared: tuple = (frozenset(), frozenset())  # extra concept and role names

    def __post_init__(self):
        object.__setattr__(self, "positives", tuple(self.positives))
        object.__setattr__(self, "negatives", tuple(self.negatives))
        object.__setattr__(self, "declared", (frozenset(self.declared[0]), frozenset(self.declared[1])))
        for ex in self.positives + self.negatives:
            if (ex.query is None) != (self.query_lang is QueryLang.CONSISTENCY):
                raise ValueError("queries must be absent exactly in consistency mode")
            if ex.query is not None:
                missing = set(ex.query.individuals) - set(ex.abox.individuals)
                if missing:
                    raise ValueError(f"query individuals {sorted(missing)} do not occur in the ABox")
                if self.query_lang is QueryLang.AQ and not all(q.is_aq() for q in ex.query.cqs):
                    raise ValueError("AQ mode requires atomic queries")

    def signature(self) -> tuple[set[str], set[str]]:
        cn, rn = set(self.declared[0]), set(self.declared[1])
        for ex in self.positives + self.negatives:
            c, r = ex.signature()
            cn |= c
            rn |= r
        return cn, rn

    def with_logic(self, logic: Logic) -> "ExampleCollection":
        return ExampleCollection(self.positives, self.negatives, logic, self.query_lang, self.declared)


# ---------------------------------------------------------------------------
# Ontologies


@dataclass(frozen=True)
class CharSpec:
    """Records that a CI left-hand side is a characteristic concept.

    Used by the polynomial re-encoding, which needs the pointed ABox the
    concept was built from.
    """

    logic: Logic
    interp: Interpretation
    point: object
    depth: int
    tag: str


@dataclass(frozen=True)
class CI:
    lhs: Concept
    rhs: Concept
    char: CharSpec | None = None

    def __eq__(self, other):
        return isinstance(other, CI) and self.lhs is other.lhs and self.rhs is other.rhs

    def __hash__(self):
        return hash((id(self.lhs), id(self.rhs)))


class Ontology:
    """Finite set of CIs, kept in a canonical order."""

    __slots__ = ("cis",)

    def __init__(self, cis: Iterable[CI] = ()):
        seen: dict = {}
        for ci in cis:
            if not isinstance(ci, CI):
                ci = CI(*ci)
            seen.setdefault((id(ci.lhs), id(ci.rhs)), ci)
        self.cis = tuple(sorted(seen.values(), key=lambda ci: (ci.lhs.key, ci.rhs.key)))

    def __iter__(self):
        return iter(self.cis)

    def __len__(self):
        return len(self.cis)

    def __eq__(self, other):
        return isinstance(other, Ontology) and self.cis == other.cis

    def __hash__(self):
        return hash(self.cis)

    def __or__(self, other: "Ontology") -> "Ontology":
        return Ontology(self.cis + other.cis)

    def signature(self):
        cn, rn = set(), set()
        for ci in self.cis:
            for c in (ci.lhs, ci.rhs):
                a, r = concept_signature(c)
                cn |= a
                rn |= r
        return cn, rn

    def in_logic(self, logic: Logic) -> bool:
        return all(concept_in_logic(ci.lhs, logic) and concept_in_logic(ci.rhs, logic) for ci in self.cis)

    def __repr__(self):
        return f"Ontology({len(self.cis)} CIs)"


# ---------------------------------------------------------------------------
# Semantics


def eval_concept(c: Concept, interp: Interpretation, logic: Logic | None = None, memo: dict | None = None) -> frozenset:
    """The extension of c in interp.

    Simulation quantifiers are evaluated through a maximal simulation.  When
    a logic is given, concepts outside it are rejected.
    """
    if logic is not None and not concept_in_logic(c, logic):
        raise ValueError(f"concept is not in {logic.pretty}")
    if memo is None:
        memo = {}
    from .sim import max_simulation

    dom = interp.domain
    for s in c.subconcepts():
        if id(s) in memo:
            continue
        if s is TOP:
            ext = dom
        elif s is BOT:
            ext = frozenset()
        elif isinstance(s, Atom):
            ext = interp.concepts.get(s.name, frozenset())
        elif isinstance(s, And):
            ext = memo[id(s.parts[0])]
            for p in s.parts[1:]:
                ext = ext & memo[id(p)]
        elif isinstance(s, Exists):
            inner = memo[id(s.filler)]
            back = s.role.inv()
            ext = frozenset(d for e in inner for d in interp.succ(back, e))
        elif isinstance(s, SimQuant):
            sim = max_simulation(s.logic, s.interp, interp)
            ext = frozenset(sim.image(s.point))
        else:
            raise TypeError(f"unknown concept node {s!r}")
        memo[id(s)] = ext
    return memo[id(c)]


def is_model(interp: Interpretation, onto: Ontology) -> bool:
    memo: dict = {}
    for ci in onto:
        if not eval_concept(ci.lhs, interp, memo=memo) <= eval_concept(ci.rhs, interp, memo=memo):
            return False
    return True


def satisfies_abox(interp: Interpretation, abox: ABox) -> bool:
    """interp is a model of abox under its named map."""
    named = interp.named
    for a in abox:
        if not all(t in named for t in a.terms):
            return False
        if isinstance(a, CAtom):
            if named[a.term] not in interp.concepts.get(a.concept, ()):
                return False
        elif (named[a.subj], named[a.obj]) not in interp.roles.get(a.role, ()):
            return False
    return True


def find_cq_hom(q: CQ, interp: Interpretation) -> dict | None:
    """A homomorphism from q into interp fixing individuals, or None."""
    for a in q.individuals:
        if a not in interp.named:
            raise ValueError(f"individual {a} has no image in the interpretation")
    h = {a: interp.named[a] for a in q.individuals}
    variables = q.variables
    if not variables:
        return h if _atoms_hold(q.atoms, h, interp) else None

    # order variables so that each one is adjacent to an earlier term if possible
    order: list = []
    placed = set(h)
    remaining = list(variables)
    while remaining:
        best = None
        for v in remaining:
            touching = sum(1 for a in q.atoms if v in a.terms and any(t in placed for t in a.terms if t != v))
            if best is None or touching > best[0]:
                best = (touching, v)
        order.append(best[1])
        placed.add(best[1])
        remaining.remove(best[1])

    by_var = {v: [a for a in q.atoms if v in a.terms] for v in variables}
    elements = interp.elements()

    def candidates(v):
        for a in by_var[v]:
            if isinstance(a, RAtom):
                if a.obj == v and a.subj in h:
                    return interp.succ(Role(a.role), h[a.subj])
                if a.subj == v and a.obj in h:
                    return interp.succ(Role(a.role, True), h[a.obj])
        return elements

    def consistent(v):
        for a in by_var[v]:
            if all(t in h for t in a.terms):
                if isinstance(a, CAtom):
                    if h[a.term] not in interp.concepts.get(a.concept, ()):
                        return False
                elif (h[a.subj], h[a.obj]) not in interp.roles.get(a.role, ()):
                    return False
        return True

    def extend(i):
        if i == len(order):
            return True
        v = order[i]
        for d in candidates(v):
            h[v] = d
            if consistent(v) and extend(i + 1):
                return True
            del h[v]
        return False

    if not _atoms_hold([a for a in q.atoms if all(not is_var(t) for t in a.terms)], h, interp):
        return None
    return dict(h) if extend(0) else None


def _atoms_hold(atoms_, h, interp) -> bool:
    for a in atoms_:
        if isinstance(a, CAtom):
            if h[a.term] not in interp.concepts.get(a.concept, ()):
                return False
        elif (h[a.subj], h[a.obj]) not in interp.roles.get(a.role, ()):
            return False
    return True


def satisfies_ucq(interp: Interpretation, q: UCQ) -> bool:
    return any(find_cq_hom(p, interp) is not None for p in q.cqs)


def satisfies_el_query(interp: Interpretation, q: Rooted | Existential, memo: dict | None = None) -> bool:
    ext = eval_concept(q.concept, interp, memo=memo)
    if isinstance(q, Rooted):
        return interp.named.get(q.individual) in ext
    return bool(ext)
