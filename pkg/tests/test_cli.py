import io
import json
from pathlib import Path

import pytest
from hypothesis import given

from conftest import concepts

from ontofit.cli import (
    ParseError,
    concept_to_sexpr,
    instance_to_json,
    load_instance,
    parse_abox,
    parse_concept,
    parse_instance,
    parse_instance_json,
    parse_ontology,
    run,
    serialize_instance,
    serialize_ontology,
)
from ontofit.core import Atom, CI, Interpretation, Logic, Ontology, QueryLang, SimQuant, conj, some

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_firstone_parses():
    E = load_instance(str(DATA / "firstone.of"))
    assert len(E.positives) == 2 and len(E.negatives) == 1
    assert E.logic is Logic.EL and E.query_lang is QueryLang.CQ


@pytest.mark.parametrize("path", sorted(DATA.glob("*.of")), ids=lambda p: p.stem)
def test_instance_round_trip(path):
    E = parse_instance(path.read_text())
    text = serialize_instance(E)
    assert parse_instance(text) == E
    assert serialize_instance(parse_instance(text)) == text
    assert parse_instance_json(json.dumps(instance_to_json(E))) == E


@pytest.mark.parametrize(
    "text, needle, line",
    [
        ("logic el\nquery-lang cq\npositive\n  A(a\n", "expected an atom", 4),
        ("logic alc\n", "unknown logic tag", 1),
        ("logic el\nquery-lang cq\npositive\n  __A(a)\n  query A(a)\n", "reserved prefix", 4),
        ("logic el\nquery-lang cq\npositive\n  A(a)\n  query r(b, ?x)\n", "does not occur in the ABox", 5),
        ("logic el\nquery-lang cq\npositive\nnegative\n", "empty ABox", 3),
        ("logic el\nquery-lang aq\npositive\n  A(a)\n  query r(a, ?x)\n", "atomic query", 5),
        ("positive\n", "must precede", 1),
        ("logic el\nquery-lang consistency\npositive\n  A(a)\n  query B(a)\n", "no query", 5),
        ("logic el\nquery-lang cq\npositive\n  A(?x)\n  query B(a)\n", "not allowed", 4),
    ],
)
def test_instance_errors_carry_locations(text, needle, line):
    with pytest.raises(ParseError) as info:
        parse_instance(text, "t.of")
    assert needle in str(info.value)
    assert info.value.line == line


def test_missing_header_is_a_named_precondition():
    with pytest.raises(ParseError, match="missing 'logic'"):
        parse_instance("# nothing\n")


def test_ucq_lines_and_comments():
    E = parse_instance("logic el\nquery-lang ucq\npositive\n  A(a)  # note\n  query B(a)\n  query C(a)\n")
    assert len(E.positives[0].query.cqs) == 2


def test_inverse_role_rejected_under_el():
    with pytest.raises(ParseError, match="inverse role not allowed in EL"):
        parse_concept("(and A (some (inv r) B))", Logic.EL)
    c = parse_concept("(and A (some (inv r) B))", Logic.ELI)
    assert concept_to_sexpr(c) == "(and A (some (inv r) B))"


def test_concept_syntax_errors():
    for bad, msg in [("(and A", "unclosed"), (")", "unexpected"), ("(some r)", "two arguments"), ("(or A B)", "unknown"), ("bot", "bot not allowed")]:
        with pytest.raises(ParseError, match=msg):
            parse_concept(bad, Logic.EL)


@given(concepts())
def test_concept_round_trip(c):
    assert parse_concept(concept_to_sexpr(c)) is c


def test_sim_quantifier_round_trip():
    J = Interpretation(["d", "e"], {"A": ["d"]}, {"r": [("d", "e")]})
    for logic in (Logic.EL, Logic.ELI):
        c = conj(Atom("B"), some("r", SimQuant(logic, J, "d")))
        assert parse_concept(concept_to_sexpr(c)) is c
    assert parse_concept("(sim (interp (dom d) (A d)) d)") is SimQuant(Logic.EL, Interpretation(["d"], {"A": ["d"]}), "d")
    with pytest.raises(ParseError):
        parse_concept("(sim eli (interp (dom d)) d)", Logic.EL)


@pytest.mark.parametrize("name", ["firstone_hand", "shared_successor_hand", "backward_hand", "grow"])
def test_hand_ontology_round_trip(name):
    O = parse_ontology((DATA / f"{name}.ont").read_text())
    text = serialize_ontology(O)
    assert parse_ontology(text) == O and serialize_ontology(parse_ontology(text)) == text


def test_shared_subconcepts_become_definitions():
    shared = some("r", Atom("A"))
    O = Ontology([CI(Atom("B"), shared), CI(conj(Atom("C"), shared), Atom("D"))])
    text = serialize_ontology(O)
    assert "(def $1 (some r A))" in text
    assert parse_ontology(text) == O
    with pytest.raises(ParseError, match="undefined reference"):
        parse_ontology("(sub $9 A)")


def test_parse_abox():
    A = parse_abox("r(a, b)\n# c\nA(a)\n")
    assert len(A) == 2
    with pytest.raises(ParseError):
        parse_abox("\n")


def test_decide_writes_default_ontology(tmp_path):
    src = tmp_path / "firstone.of"
    src.write_text((DATA / "firstone.of").read_text())
    code, out, _ = call("decide", "--in", str(src))
    rep = json.loads(out)
    assert code == 0 and rep["verdict"] == "yes"
    assert Path(rep["ontology_file"]) == tmp_path / "firstone.ont"
    O = parse_ontology((tmp_path / "firstone.ont").read_text())
    code, out, _ = call("verify", "--in", str(src), "--ontology", str(tmp_path / "firstone.ont"))
    assert code == 0 and json.loads(out)["result"] == "true" and len(O) == 2


@pytest.mark.parametrize("synthesis", ["char", "poly", "interp"])
def test_synth_variants(tmp_path, synthesis):
    out_file = tmp_path / "o.ont"
    code, out, _ = call("synth", "--in", str(DATA / "firstone.of"), "--synthesis", synthesis, "--out", str(out_file))
    assert code == 0
    code, out, _ = call("verify", "--in", str(DATA / "firstone.of"), "--ontology", str(out_file))
    assert code == 0


def test_synth_prints_to_stdout():
    code, out, _ = call("synth", "--in", str(DATA / "shared_successor.of"), "--synthesis", "vbar")
    assert code == 0 and out.startswith("(")


def test_decide_no_and_unknown(tmp_path):
    code, out, _ = call("decide", "--in", str(DATA / "shared_successor.of"), "--logic", "elb")
    rep = json.loads(out)
    assert code == 1 and rep["verdict"] == "no" and rep["certificate"]["simulation"]
    code, out, _ = call("decide", "--in", str(DATA / "no_fit.of"), "--max-witness-size", "2")
    assert code == 2 and json.loads(out)["bound"] == 2


def test_sim_command():
    code, out, _ = call("sim", "--logic", "elib", "--from", str(DATA / "neg.abox"), "--to", str(DATA / "pos.abox"))
    rep = json.loads(out)
    assert code == 1 and rep["total"] is False and rep["unmatched"]
    code, out, _ = call("sim", "--logic", "elb", "--from", str(DATA / "neg.abox"), "--to", str(DATA / "pos.abox"))
    assert code == 0 and ["b", "b1"] in json.loads(out)["pairs"]


def test_chase_and_entail_commands():
    code, out, _ = call("chase", "--abox", str(DATA / "cycle.abox"), "--ontology", str(DATA / "grow.ont"))
    assert code == 0 and "B" in json.loads(out)["model"]["concepts"]
    code, out, _ = call("entail", "--abox", str(DATA / "path.abox"), "--ontology", str(DATA / "grow.ont"), "--query", "B(c)")
    assert code == 0
    code, out, _ = call("entail", "--abox", str(DATA / "path.abox"), "--ontology", str(DATA / "grow.ont"), "--query", "B(e)")
    assert code == 1
    code, out, _ = call("entail", "--abox", str(DATA / "path.abox"), "--ontology", str(DATA / "backward_hand.ont"), "--concept", "B", "--at", "d")
    assert code == 0 and json.loads(out)["method"] == "bounded"


def test_gen_coloring_k4(tmp_path):
    inst = tmp_path / "k4.of"
    code, out, _ = call("gen-coloring", "--graph", str(DATA / "k4.edges"), "--protected", "", "--out", str(inst))
    assert code == 0
    code, out, _ = call("decide", "--in", str(inst), "--out", str(tmp_path / "k4.ont"))
    assert code == 0


def test_exit_codes_for_bad_input(tmp_path):
    assert call("decide", "--in", str(tmp_path / "missing.of"))[0] == 66
    assert call("frobnicate")[0] == 64
    assert call("decide")[0] == 64
    bad = tmp_path / "bad.of"
    bad.write_text("logic el\nquery-lang cq\npositive\n  A(a\n")
    code, _, err = call("decide", "--in", str(bad))
    assert code == 65 and "bad.of:4:" in err
    code, _, err = call("decide", "--in", str(DATA / "firstone.of"), "--query-lang", "aq")
    assert code == 65


def test_timings_are_separate(tmp_path):
    code, out, _ = call("decide", "--in", str(DATA / "atomic.of"), "--out", str(tmp_path / "a.ont"), "--timings")
    rep = json.loads(out)
    assert "seconds" in rep.pop("timings")
    code, out2, _ = call("decide", "--in", str(DATA / "atomic.of"), "--out", str(tmp_path / "a.ont"))
    assert rep == json.loads(out2)
