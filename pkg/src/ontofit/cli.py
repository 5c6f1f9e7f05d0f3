"""Text formats and the ``ontofit`` command line.

Instance files (``.of``) are line based::

    logic el
    query-lang cq
    positive
      NewHire(jane)
      query mentor(jane, ?x), Emp(?x)
    negative
      NewHire(bob)
      query mentor(bob, ?x), SeniorEmp(?x)

Each ``positive``/``negative`` line opens an example; several ``query``
lines form a union.  ``concepts`` and ``roles`` lines declare extra
symbols.  Ontology files hold ``(sub C D)`` lines, with ``(def $n C)`` naming
shared subconcepts.  A JSON mirror of the instance format is read from files
ending in ``.json``.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from pathlib import Path

from .core import (
    ABox,
    And,
    Atom,
    BOT,
    CAtom,
    CI,
    CQ,
    Example,
    ExampleCollection,
    Exists,
    Existential,
    FRESH_PREFIX,
    Interpretation,
    Logic,
    Ontology,
    QueryLang,
    RAtom,
    Role,
    Rooted,
    SimQuant,
    TOP,
    UCQ,
    Var,
    concept_in_logic,
    conj,
    ekey,
    esorted,
    is_var,
)

EXIT_YES, EXIT_NO, EXIT_UNKNOWN = 0, 1, 2
EXIT_USAGE, EXIT_DATA, EXIT_NOINPUT = 64, 65, 66


class ParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None, col: int | None = None, source: str | None = None):
        self.msg, self.line, self.col, self.source = msg, line, col, source
        where = ""
        if line is not None:
            where = f"{source + ':' if source else ''}{line}:{col or 1}: "
        super().__init__(where + msg)


NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.\-]*")


def _check_name(name: str, line, col, allow_reserved: bool):
    if not NAME.fullmatch(name):
        raise ParseError(f"bad symbol {name!r}", line, col)
    if not allow_reserved and name.startswith(FRESH_PREFIX):
        raise ParseError(f"symbol {name!r} uses the reserved prefix {FRESH_PREFIX!r}", line, col)


# ---------------------------------------------------------------------------
# Atoms

ATOM_RE = re.compile(r"\s*([^\s(),]+)\s*\(\s*([^\s(),]+)\s*(?:,\s*([^\s(),]+)\s*)?\)\s*")


def _term(tok: str, line, col, allow_vars: bool, allow_reserved: bool):
    if tok.startswith("?"):
        if not allow_vars:
            raise ParseError(f"variable {tok} not allowed here", line, col)
        _check_name(tok[1:], line, col, True)
        return Var(tok[1:])
    _check_name(tok, line, col, allow_reserved)
    return tok


def parse_atoms(text: str, line=None, col=1, allow_vars=True, allow_reserved=False) -> list:
    """Comma separated atoms ``A(t)`` / ``r(t, t)``."""
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = ATOM_RE.match(text, pos)
        if not m:
            raise ParseError(f"expected an atom at {text[pos:]!r}", line, col + pos)
        pred, t1, t2 = m.groups()
        c = col + m.start(1)
        _check_name(pred, line, c, allow_reserved)
        a = _term(t1, line, c, allow_vars, allow_reserved)
        if t2 is None:
            out.append(CAtom(pred, a))
        else:
            out.append(RAtom(pred, a, _term(t2, line, c, allow_vars, allow_reserved)))
        pos = m.end()
        if pos < len(text):
            if text[pos] != ",":
                raise ParseError("expected ',' between atoms", line, col + pos)
            pos += 1
    if not out:
        raise ParseError("expected at least one atom", line, col)
    return out


def atom_to_text(a) -> str:
    def t(x):
        return f"?{x.name}" if is_var(x) else x

    if isinstance(a, CAtom):
        return f"{a.concept}({t(a.term)})"
    return f"{a.role}({t(a.subj)}, {t(a.obj)})"


# ---------------------------------------------------------------------------
# Instances


def _finish_example(kind, abox_atoms, queries, start_line, lang, source):
    if not abox_atoms:
        raise ParseError(f"{kind} example has an empty ABox", start_line, 1, source)
    abox = ABox(abox_atoms)
    if lang is QueryLang.CONSISTENCY:
        if queries:
            raise ParseError("consistency examples take no query", queries[0][1], 1, source)
        return Example(abox, None)
    if not queries:
        raise ParseError(f"{kind} example needs a query", start_line, 1, source)
    inds = set(abox.individuals)
    cqs = []
    for atoms_, ln in queries:
        q = CQ(atoms_)
        missing = sorted(set(q.individuals) - inds)
        if missing:
            raise ParseError(f"query individual {missing[0]} does not occur in the ABox", ln, 1, source)
        cqs.append(q)
    q = UCQ(cqs)
    if lang is QueryLang.AQ and not (len(cqs) == 1 and cqs[0].is_aq()):
        raise ParseError("aq instances need a single atomic query A(a)", queries[0][1], 1, source)
    if lang is QueryLang.CQ and len(cqs) != 1:
        raise ParseError("cq instances take one query line per example (use query-lang ucq)", queries[1][1], 1, source)
    return Example(abox, q)


def parse_instance(text: str, source: str | None = None) -> ExampleCollection:
    logic = lang = None
    pos, neg = [], []
    cur = None
    decl_c, decl_r = set(), set()

    def close():
        if cur is not None:
            kind, ab, qs, ln = cur
            ex = _finish_example(kind, ab, qs, ln, lang, source)
            (pos if kind == "positive" else neg).append(ex)

    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        col = len(line) - len(line.lstrip()) + 1
        head, _, rest = stripped.partition(" ")
        rest_col = col + len(head) + 1
        try:
            if head == "logic":
                logic = Logic.parse(rest)
            elif head == "query-lang":
                try:
                    lang = QueryLang(rest.strip().lower())
                except ValueError:
                    raise ParseError(f"unknown query language {rest.strip()!r}", ln, rest_col)
            elif head in ("concepts", "roles"):
                for n in rest.replace(",", " ").split():
                    _check_name(n, ln, rest_col, False)
                    (decl_c if head == "concepts" else decl_r).add(n)
            elif head in ("positive", "negative"):
                if lang is None or logic is None:
                    raise ParseError("'logic' and 'query-lang' must precede the examples", ln, col)
                if rest.strip():
                    raise ParseError(f"unexpected text after '{head}'", ln, rest_col)
                close()
                cur = (head, [], [], ln)
            elif head == "query":
                if cur is None:
                    raise ParseError("query outside an example", ln, col)
                cur[2].append((parse_atoms(rest, ln, rest_col), ln))
            else:
                if cur is None:
                    raise ParseError(f"unexpected line {stripped!r}", ln, col)
                cur[1].extend(parse_atoms(stripped, ln, col, allow_vars=False))
        except ParseError as e:
            if e.line is None:
                raise ParseError(e.msg, ln, col, source) from None
            if e.source is None and source:
                raise ParseError(e.msg, e.line, e.col, source) from None
            raise
        except ValueError as e:
            raise ParseError(str(e), ln, col, source) from None
    close()
    if logic is None or lang is None:
        raise ParseError("missing 'logic' or 'query-lang' line", None, None, source)
    _check_logic_symbols(pos + neg, logic)
    return ExampleCollection(pos, neg, logic, lang, (decl_c, decl_r))


def _check_logic_symbols(examples, logic):
    # examples carry no concepts, so any logic tag is acceptable here
    return None


def serialize_instance(E: ExampleCollection) -> str:
    out = [f"logic {E.logic.value}", f"query-lang {E.query_lang.value}"]
    if E.declared[0]:
        out.append("concepts " + " ".join(sorted(E.declared[0])))
    if E.declared[1]:
        out.append("roles " + " ".join(sorted(E.declared[1])))
    for kind, exs in (("positive", E.positives), ("negative", E.negatives)):
        for ex in exs:
            out.append(kind)
            for a in ex.abox:
                out.append("  " + atom_to_text(a))
            if ex.query is not None:
                for q in ex.query.cqs:
                    out.append("  query " + ", ".join(atom_to_text(a) for a in q.atoms))
    return "\n".join(out) + "\n"


def instance_to_json(E: ExampleCollection) -> dict:
    def ex(e):
        d = {"abox": [atom_to_text(a) for a in e.abox]}
        if e.query is not None:
            d["query"] = [[atom_to_text(a) for a in q.atoms] for q in e.query.cqs]
        return d

    return {
        "logic": E.logic.value,
        "query_lang": E.query_lang.value,
        "signature": {"concepts": sorted(E.declared[0]), "roles": sorted(E.declared[1])},
        "positives": [ex(e) for e in E.positives],
        "negatives": [ex(e) for e in E.negatives],
    }


def parse_instance_json(text: str, source: str | None = None) -> ExampleCollection:
    """The JSON mirror: converted to the line format and parsed from there."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno, source) from None
    if not isinstance(data, dict):
        raise ParseError("top level JSON value must be an object", 1, 1, source)
    try:
        lines = [f"logic {data['logic']}", f"query-lang {data['query_lang']}"]
        sig = data.get("signature", {})
        if sig.get("concepts"):
            lines.append("concepts " + " ".join(sig["concepts"]))
        if sig.get("roles"):
            lines.append("roles " + " ".join(sig["roles"]))
        for kind in ("positives", "negatives"):
            for ex in data.get(kind, []):
                lines.append(kind[:-1])
                lines += ["  " + a for a in ex["abox"]]
                for q in ex.get("query", []):
                    lines.append("  query " + ", ".join(q))
    except (KeyError, TypeError) as e:
        raise ParseError(f"malformed instance object ({e})", 1, 1, source) from None
    return parse_instance("\n".join(lines) + "\n", source)


def parse_abox(text: str, source: str | None = None) -> ABox:
    atoms_ = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if line.strip():
            try:
                atoms_.extend(parse_atoms(line, ln, 1, allow_vars=False))
            except ParseError as e:
                raise ParseError(e.msg, e.line, e.col, source) from None
    if not atoms_:
        raise ParseError("empty ABox", None, None, source)
    return ABox(atoms_)


# ---------------------------------------------------------------------------
# Concepts and ontologies


def _tokenize(text: str):
    toks = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split(";", 1)[0]
        for m in re.finditer(r"\(|\)|[^\s()]+", line):
            toks.append((m.group(), ln, m.start() + 1))
    return toks


def _read(toks, i):
    """One s-expression starting at toks[i]: (value, next index)."""
    if i >= len(toks):
        raise ParseError("unexpected end of input")
    tok, ln, col = toks[i]
    if tok == ")":
        raise ParseError("unexpected ')'", ln, col)
    if tok != "(":
        return (tok, ln, col), i + 1
    items = []
    i += 1
    while True:
        if i >= len(toks):
            raise ParseError("unclosed '('", ln, col)
        if toks[i][0] == ")":
            return (items, ln, col), i + 1
        x, i = _read(toks, i)
        items.append(x)


def _sym(node, what="symbol"):
    v, ln, col = node
    if isinstance(v, list):
        raise ParseError(f"expected a {what}", ln, col)
    return v


def _role(node, allow_reserved):
    v, ln, col = node
    if isinstance(v, list):
        if len(v) == 2 and _sym(v[0]) == "inv":
            name = _sym(v[1], "role name")
            _check_name(name, ln, col, allow_reserved)
            return Role(name, True)
        raise ParseError("expected a role name or (inv r)", ln, col)
    _check_name(v, ln, col, allow_reserved)
    return Role(v)


def _interp(node, allow_reserved):
    v, ln, col = node
    if not isinstance(v, list) or not v or _sym(v[0]) != "interp":
        raise ParseError("expected (interp (dom ...) ...)", ln, col)
    domain, concepts, roles, named = None, {}, {}, {}
    for item in v[1:]:
        iv, iln, icol = item
        if not isinstance(iv, list) or not iv:
            raise ParseError("expected a list inside interp", iln, icol)
        head = _sym(iv[0])
        args = [_sym(x, "element") for x in iv[1:]]
        if head == "dom":
            domain = args
        elif head == "named":
            named.update({a: a for a in args})
        elif len(args) == 1:
            _check_name(head, iln, icol, allow_reserved)
            concepts.setdefault(head, set()).add(args[0])
        elif len(args) == 2:
            _check_name(head, iln, icol, allow_reserved)
            roles.setdefault(head, set()).add((args[0], args[1]))
        else:
            raise ParseError(f"bad interpretation fact {head}", iln, icol)
    if not domain:
        raise ParseError("interpretation needs a nonempty (dom ...)", ln, col)
    try:
        return Interpretation(domain, concepts, roles, named)
    except ValueError as e:
        raise ParseError(str(e), ln, col) from None


def _concept(node, defs, logic, allow_reserved):
    v, ln, col = node
    if not isinstance(v, list):
        if v == "top":
            return TOP
        if v == "bot":
            if logic is not None and not logic.bottom:
                raise ParseError(f"bot not allowed in {logic.pretty}", ln, col)
            return BOT
        if v.startswith("$"):
            if v not in defs:
                raise ParseError(f"undefined reference {v}", ln, col)
            return defs[v]
        _check_name(v, ln, col, allow_reserved)
        return Atom(v)
    if not v:
        raise ParseError("empty list is not a concept", ln, col)
    head = _sym(v[0])
    if head == "and":
        return conj(*(_concept(x, defs, logic, allow_reserved) for x in v[1:]))
    if head == "some":
        if len(v) != 3:
            raise ParseError("(some r C) takes two arguments", ln, col)
        r = _role(v[1], allow_reserved)
        if r.inverted and logic is not None and not logic.inverse:
            raise ParseError(f"inverse role not allowed in {logic.pretty}", v[1][1], v[1][2])
        return Exists(r, _concept(v[2], defs, logic, allow_reserved))
    if head == "sim":
        # (sim <interp> e) is an EL quantifier; (sim eli <interp> e) an ELI one
        if len(v) == 3:
            tag, rest = Logic.EL, v[1:]
        elif len(v) == 4:
            try:
                tag = Logic.parse(_sym(v[1], "logic tag"))
            except ValueError as e:
                raise ParseError(str(e), v[1][1], v[1][2]) from None
            rest = v[2:]
        else:
            raise ParseError("(sim [logic] (interp ...) point) takes two or three arguments", ln, col)
        if tag.inverse and logic is not None and not logic.inverse:
            raise ParseError(f"ELI simulation quantifier not allowed in {logic.pretty}", ln, col)
        J = _interp(rest[0], allow_reserved)
        point = _sym(rest[1], "element")
        try:
            return SimQuant(tag, J, point)
        except ValueError as e:
            raise ParseError(str(e), ln, col) from None
    raise ParseError(f"unknown concept constructor {head!r}", ln, col)


def parse_concept(text: str, logic: Logic | None = None, allow_reserved: bool = False):
    toks = _tokenize(text)
    node, i = _read(toks, 0)
    if i != len(toks):
        raise ParseError("trailing input after concept", toks[i][1], toks[i][2])
    return _concept(node, {}, logic, allow_reserved)


def parse_ontology(text: str, logic: Logic | None = None, source: str | None = None) -> Ontology:
    """Reserved names are allowed here since synthesized ontologies use them."""
    toks = _tokenize(text)
    defs: dict = {}
    cis = []
    i = 0
    try:
        while i < len(toks):
            node, i = _read(toks, i)
            v, ln, col = node
            if not isinstance(v, list) or not v:
                raise ParseError("expected (sub C D) or (def $n C)", ln, col)
            head = _sym(v[0])
            if head == "def":
                if len(v) != 3:
                    raise ParseError("(def $n C) takes two arguments", ln, col)
                name = _sym(v[1])
                if not name.startswith("$") or name in defs:
                    raise ParseError(f"bad or repeated definition name {name}", ln, col)
                defs[name] = _concept(v[2], defs, logic, True)
            elif head == "sub":
                if len(v) != 3:
                    raise ParseError("(sub C D) takes two arguments", ln, col)
                cis.append(CI(_concept(v[1], defs, logic, True), _concept(v[2], defs, logic, True)))
            else:
                raise ParseError(f"unknown form {head!r}", ln, col)
    except ParseError as e:
        raise ParseError(e.msg, e.line, e.col, source) from None
    return Ontology(cis)


def _elem(d) -> str:
    if not isinstance(d, str):
        raise ValueError(f"cannot serialize element {d!r}; interpretations in concepts need symbol elements")
    return d


def interp_to_sexpr(J: Interpretation) -> str:
    parts = ["(dom " + " ".join(_elem(d) for d in J.elements()) + ")"]
    for a in J.concept_names():
        parts += [f"({a} {_elem(d)})" for d in esorted(J.concepts[a])]
    for r in J.role_names():
        parts += [f"({r} {_elem(d)} {_elem(e)})" for d, e in sorted(J.roles[r], key=lambda p: (ekey(p[0]), ekey(p[1])))]
    if J.named:
        if any(k != v for k, v in J.named.items()):
            raise ValueError("only identity naming can be serialized")
        parts.append("(named " + " ".join(esorted(J.named)) + ")")
    return "(interp " + " ".join(parts) + ")"


def concept_to_sexpr(c, names: dict | None = None) -> str:
    """S-expression for c; ``names`` maps shared nodes to ``$n`` references."""
    names = names or {}
    memo: dict = {}
    for s in c.subconcepts():
        if id(s) in names and s is not c:
            memo[id(s)] = names[id(s)]
            continue
        if s is TOP:
            t = "top"
        elif s is BOT:
            t = "bot"
        elif isinstance(s, Atom):
            t = s.name
        elif isinstance(s, And):
            t = "(and " + " ".join(memo[id(p)] for p in s.parts) + ")"
        elif isinstance(s, Exists):
            r = f"(inv {s.role.name})" if s.role.inverted else s.role.name
            t = f"(some {r} {memo[id(s.filler)]})"
        elif isinstance(s, SimQuant):
            try:
                tag = "" if s.logic is Logic.EL else s.logic.value + " "
                t = f"(sim {tag}{interp_to_sexpr(s.interp)} {_elem(s.point)})"
            except ValueError:
                t = f"(sim {s.logic.value} <{len(s.interp.domain)} elements> {s.point!r})"
        else:
            raise TypeError(s)
        memo[id(s)] = t
    return memo[id(c)]


def serialize_ontology(O: Ontology) -> str:
    """Canonical text; subconcepts used more than once become definitions."""
    uses: dict = {}
    order: list = []
    for ci in O:
        for c in (ci.lhs, ci.rhs):
            for s in c.subconcepts():
                for ch in s.children():
                    uses[id(ch)] = uses.get(id(ch), 0) + 1
            uses[id(c)] = uses.get(id(c), 0) + 1
    seen = set()
    for ci in O:
        for c in (ci.lhs, ci.rhs):
            for s in c.subconcepts():
                if id(s) not in seen:
                    seen.add(id(s))
                    order.append(s)
    names: dict = {}
    lines = []
    for s in order:
        if uses.get(id(s), 0) > 1 and isinstance(s, (And, Exists, SimQuant)):
            text = concept_to_sexpr(s, names)
            names[id(s)] = f"${len(names) + 1}"
            lines.append(f"(def {names[id(s)]} {text})")
    for ci in O:
        lines.append(f"(sub {_ref(ci.lhs, names)} {_ref(ci.rhs, names)})")
    return "\n".join(lines) + "\n"


def _ref(c, names):
    return names.get(id(c)) or concept_to_sexpr(c, names)


# ---------------------------------------------------------------------------
# Reports


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in x]
        return items if not isinstance(x, (set, frozenset)) else sorted(items, key=str)
    if isinstance(x, Var):
        return "?" + x.name
    if hasattr(x, "value") and not isinstance(x, (str, int, float, bool)):
        return x.value
    return x


def interp_to_json(I: Interpretation) -> dict:
    def el(d):
        return _jsonable(d)

    return {
        "domain": [el(d) for d in I.elements()],
        "concepts": {a: [el(d) for d in esorted(I.concepts[a])] for a in I.concept_names()},
        "roles": {r: [[el(d), el(e)] for d, e in sorted(I.roles[r], key=lambda p: (ekey(p[0]), ekey(p[1])))] for r in I.role_names()},
    }


def _emit(report: dict, out=None):
    text = json.dumps(_jsonable(report), sort_keys=True, indent=2, ensure_ascii=False)
    print(text, file=out or sys.stdout)


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def _read_file(path: str) -> str:
    p = Path(path)
    if not p.is_file():
        raise FileNotFoundError(path)
    return p.read_text(encoding="utf-8")


def load_instance(path: str) -> ExampleCollection:
    text = _read_file(path)
    if path.endswith(".json"):
        return parse_instance_json(text, path)
    return parse_instance(text, path)


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ontofit", description="Decide, build and check ontologies fitting labelled examples.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, instance=True):
        if instance:
            sp.add_argument("--in", dest="inp", required=True, help="instance file (.of or .json)")
        sp.add_argument("--logic", choices=[l.value for l in Logic])
        sp.add_argument("--query-lang", choices=[q.value for q in QueryLang])
        sp.add_argument("--max-witness-size", type=int, default=4)
        sp.add_argument("--chase-depth", type=int, default=6)
        sp.add_argument("--model-bound", type=int)
        sp.add_argument("--depth", choices=["tight", "bound"], default="tight", help="role depth of characteristic concepts")
        sp.add_argument("--timings", action="store_true", help="add wall-clock timings to the report")

    d = sub.add_parser("decide", help="decide whether a fitting ontology exists")
    common(d)
    d.add_argument("--synthesis", choices=["char", "poly", "interp", "vbar"], default="char")
    d.add_argument("--out", help="where to write the ontology (default: next to the input, suffix .ont)")

    s = sub.add_parser("synth", help="print a fitting ontology")
    common(s)
    s.add_argument("--synthesis", choices=["char", "poly", "interp", "vbar"], default="char")
    s.add_argument("--out")

    v = sub.add_parser("verify", help="check that an ontology fits an instance")
    common(v)
    v.add_argument("--ontology", required=True)

    e = sub.add_parser("entail", help="query entailment from an ABox and ontology")
    common(e, instance=False)
    e.add_argument("--abox", required=True)
    e.add_argument("--ontology", required=True)
    g = e.add_mutually_exclusive_group(required=True)
    g.add_argument("--query", help="atoms, e.g. 'r(a, ?x), A(?x)'")
    g.add_argument("--concept", help="concept term, rooted at --at or existential")
    g.add_argument("--inconsistent", action="store_true", help="ask whether the ABox is inconsistent")
    e.add_argument("--at", help="individual for a rooted concept query")

    m = sub.add_parser("sim", help="greatest simulation between two ABoxes")
    common(m, instance=False)
    m.add_argument("--from", dest="src", required=True)
    m.add_argument("--to", dest="dst", required=True)
    m.add_argument("--point")
    m.add_argument("--at")
    m.add_argument("--k", type=int)

    c = sub.add_parser("chase", help="compact universal model of an ABox and EL_bot ontology")
    common(c, instance=False)
    c.add_argument("--abox", required=True)
    c.add_argument("--ontology", required=True)

    k = sub.add_parser("gen-coloring", help="write a 2-coloring extension instance")
    k.add_argument("--graph", required=True, help="file with one edge 'v w' per line")
    k.add_argument("--protected", default="", help="comma separated protected vertices 1..k")
    k.add_argument("--vertices", type=int)
    k.add_argument("--logic", choices=["el", "elb"], default="el")
    k.add_argument("--out")
    k.add_argument("--timings", action="store_true")
    return p


def _instance_with_flags(args) -> ExampleCollection:
    E = load_instance(args.inp)
    if args.query_lang and QueryLang(args.query_lang) is not E.query_lang:
        raise ParseError(f"--query-lang {args.query_lang} disagrees with the instance ({E.query_lang.value})", source=args.inp)
    if args.logic:
        E = E.with_logic(Logic(args.logic))
    return E


def _decide(args, E):
    from .fit import decide_fit

    return decide_fit(E, E.logic, args.max_witness_size, args.depth)


def _ontology_for(args, E, dec):
    from .fit import encode_char_poly, synth_alternative_consistency, synth_from_interpretation

    if dec.ontology is None:
        return None
    if args.synthesis == "char":
        return dec.ontology
    if args.synthesis == "poly":
        return encode_char_poly(dec.ontology, E)
    if args.synthesis == "vbar":
        if E.query_lang is not QueryLang.CONSISTENCY:
            raise _Usage("--synthesis vbar applies to consistency instances only")
        return synth_alternative_consistency(E, E.logic)
    if dec.witness is None or E.query_lang in (QueryLang.CONSISTENCY, QueryLang.AQ):
        raise _Usage("--synthesis interp needs a CQ/UCQ instance with negative examples")
    return synth_from_interpretation(E, E.logic, dec.witness)


_EXIT = {"yes": EXIT_YES, "no": EXIT_NO, "unknown": EXIT_UNKNOWN}


def _cmd_decide(args, report):
    E = _instance_with_flags(args)
    dec = _decide(args, E)
    report.update(verdict=dec.verdict.value, logic=E.logic.value, query_lang=E.query_lang.value)
    if dec.certificate is not None:
        report["certificate"] = dec.certificate
    if dec.bound is not None:
        report["bound"] = dec.bound
    if dec.notes:
        report["notes"] = dec.notes
    O = _ontology_for(args, E, dec)
    if O is not None:
        text = serialize_ontology(O)
        if args.command == "synth" and not args.out:
            sys.stdout.write(text)
            return _EXIT[dec.verdict.value], False
        out = args.out or str(Path(args.inp).with_suffix(".ont"))
        Path(out).write_text(text, encoding="utf-8")
        report.update(ontology_file=out, cis=len(O))
    return _EXIT[dec.verdict.value], True


def _cmd_verify(args, report):
    from .fit import UNKNOWN, verify_fit

    E = _instance_with_flags(args)
    O = parse_ontology(_read_file(args.ontology), source=args.ontology)
    res = verify_fit(O, E, E.logic, args.chase_depth, args.model_bound)
    value = "unknown" if res is UNKNOWN else ("true" if res else "false")
    report.update(result=value, cis=len(O))
    return {"true": EXIT_YES, "false": EXIT_NO, "unknown": EXIT_UNKNOWN}[value], True


def _cmd_entail(args, report):
    from .entail import Entailment, _check_chase_input, chase_universal_model, eli_entailment_bounded, ucq_holds_on_universal
    from .core import satisfies_el_query

    A = parse_abox(_read_file(args.abox), args.abox)
    O = parse_ontology(_read_file(args.ontology), source=args.ontology)
    if args.query:
        cq = CQ(parse_atoms(args.query, 1, 1))
        missing = sorted(set(cq.individuals) - set(A.individuals))
        if missing:
            raise ParseError(f"query individual {missing[0]} does not occur in the ABox", source="--query")
        q = UCQ([cq])
    elif args.concept:
        c = parse_concept(args.concept)
        if args.at and args.at not in A.individuals:
            raise ParseError(f"individual {args.at} does not occur in the ABox", source="--at")
        q = Rooted(c, args.at) if args.at else Existential(c)
    else:
        q = None
    try:
        _check_chase_input(O)
        exact = True
    except ValueError:
        exact = False
    if exact:
        um = chase_universal_model(A, O)
        if um.inconsistent:
            res = True
        elif q is None:
            res = False
        elif isinstance(q, UCQ):
            res = ucq_holds_on_universal(um.interp, A, q, Logic.EL)
        else:
            res = satisfies_el_query(um.interp, q)
        value = "entailed" if res else "not_entailed"
        report["method"] = "chase"
    else:
        bound = args.model_bound if args.model_bound is not None else len(A.individuals) + 3
        value = eli_entailment_bounded(A, O, q, args.chase_depth, bound).value
        report["method"] = "bounded"
    report["result"] = value
    return {"entailed": EXIT_YES, "not_entailed": EXIT_NO, "unknown": EXIT_UNKNOWN}[value], True


def _cmd_sim(args, report):
    from .sim import k_simulation_levels, max_simulation

    logic = Logic(args.logic or "el")
    A = parse_abox(_read_file(args.src), args.src)
    B = parse_abox(_read_file(args.dst), args.dst)
    if args.k is not None:
        pairs = k_simulation_levels(logic, A.interp, B.interp, args.k)
        total = {d for d, _ in pairs} >= A.interp.domain
    else:
        sim = max_simulation(logic, A.interp, B.interp)
        pairs, total = sim.pairs, sim.total
    unmatched = esorted(set(A.interp.domain) - {d for d, _ in pairs})
    report.update(logic=logic.value, pairs=[list(p) for p in esorted(pairs)], total=total, unmatched=unmatched)
    if args.point:
        ok = (args.point, args.at) in pairs and (total or not logic.bottom)
        report["simulates"] = ok
    else:
        ok = total
    return (EXIT_YES if ok else EXIT_NO), True


def _cmd_chase(args, report):
    from .entail import chase_universal_model

    A = parse_abox(_read_file(args.abox), args.abox)
    O = parse_ontology(_read_file(args.ontology), source=args.ontology)
    try:
        um = chase_universal_model(A, O)
    except ValueError as e:
        raise _Usage(str(e))
    report.update(inconsistent=um.inconsistent, model=interp_to_json(um.interp))
    return (EXIT_NO if um.inconsistent else EXIT_YES), True


def _cmd_gen(args, report):
    from .fit import gen_coloring_instance

    edges = []
    for ln, raw in enumerate(_read_file(args.graph).splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        if len(line) != 2 or not all(x.isdigit() for x in line):
            raise ParseError("expected an edge 'v w'", ln, 1, args.graph)
        edges.append((int(line[0]), int(line[1])))
    prot = [int(x) for x in args.protected.replace(",", " ").split()] if args.protected.strip() else []
    n = args.vertices or max([v for e in edges for v in e] + prot + [1])
    try:
        E = gen_coloring_instance(n, edges, prot, Logic(args.logic))
    except ValueError as e:
        raise _Usage(str(e))
    text = serialize_instance(E)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        report.update(instance_file=args.out, vertices=n, edges=len(edges), protected=prot)
        return EXIT_YES, True
    sys.stdout.write(text)
    return EXIT_YES, False


COMMANDS = {
    "decide": _cmd_decide,
    "synth": _cmd_decide,
    "verify": _cmd_verify,
    "entail": _cmd_entail,
    "sim": _cmd_sim,
    "chase": _cmd_chase,
    "gen-coloring": _cmd_gen,
}


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    """Run one command; returns the exit code, reports go to ``out``."""
    err = err or sys.stderr
    try:
        args = _build_parser().parse_args(argv)
    except _Usage as e:
        print(f"usage error: {e}", file=err)
        return EXIT_USAGE
    report: dict = {"command": args.command}
    t0 = time.perf_counter()
    try:
        old = sys.stdout
        if out is not None:
            sys.stdout = out
        try:
            code, show = COMMANDS[args.command](args, report)
            if args.command == "synth" and report.get("verdict") not in (None, "yes"):
                show = True
            if getattr(args, "timings", False):
                report["timings"] = {"seconds": round(time.perf_counter() - t0, 6)}
            if show:
                _emit(report)
        finally:
            sys.stdout = old
        return code
    except FileNotFoundError as e:
        print(f"missing input: {e}", file=err)
        return EXIT_NOINPUT
    except ParseError as e:
        print(f"parse error: {e}", file=err)
        return EXIT_DATA
    except _Usage as e:
        print(f"usage error: {e}", file=err)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
