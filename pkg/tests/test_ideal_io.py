import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from syzshift.algebra import FieldSpec
from syzshift.errors import ParseError
from syzshift.ideal_io import (emit_report, format_document, parse, parse_betti, parse_polynomial,
                               print_betti, tokenize)
from syzshift.resolution import betti_table, resolve
from syzshift.shifts import analyze

from conftest import fixture_text, load_fixture, ring


def test_parse_simple():
    doc = parse("ring GF(32003)[x,y] ideal x^2, x*y")
    assert len(doc.ideal) == 2 and [f.degree() for f in doc.ideal] == [2, 2]
    assert doc.ring.field == FieldSpec(32003) and doc.ring.order == "grevlex"


def test_parse_fixture1():
    doc = load_fixture("gorenstein-h4-mixed")
    assert [f.degree() for f in doc.ideal] == [2, 2, 2, 3, 3, 3, 3]
    assert doc.expect_T == [0, 3, 4, 6, 8]


def test_parse_all_fixtures():
    for name, n in [("gorenstein-h4-pure", 16), ("gorenstein-h7", 21), ("ci-x2-y3", 2), ("zero", 0)]:
        assert len(load_fixture(name).ideal) == n


def test_field_and_order_options():
    doc = parse("ring [x, y] order lex ideal x - y")
    assert doc.ring.field == FieldSpec(32003) and doc.ring.order == "lex"
    doc = parse("ring QQ[x,y] ideal 3/2*x^2 - y^2, 2x*y")
    assert str(doc.ideal[0]) == "3/2*x^2 - y^2"
    assert str(doc.ideal[1]) == "2*x*y"
    doc = parse("ring GF(7)[x] ideal 8*x^2", field=FieldSpec(0), order="lex")
    assert doc.ring.field == FieldSpec(0) and str(doc.ideal[0]) == "8*x^2"


def test_comments_and_whitespace():
    doc = parse("# header\nring [x,y] # vars\n\n ideal\n x^2 ,  # first\n y^3\nexpect T = (0, 3, 5)")
    assert len(doc.ideal) == 2 and doc.expect_T == [0, 3, 5] and doc.expect_t is None


def test_zero_polynomial_dropped():
    doc = parse("ring [x] ideal 0, x, x - x")
    assert len(doc.ideal) == 1 and doc.dropped_zero == 2


def err(text):
    with pytest.raises(ParseError) as e:
        parse(text)
    return e.value


def test_ideal_before_ring():
    e = err("ideal x")
    assert e.kind == "syntax" and (e.line, e.column) == (1, 1) and "'ring'" in e.expected


def test_error_kinds_are_distinct():
    assert err("ring [x,y] ideal z").kind == "unknown-variable"
    assert err("ring [x] ideal x^").kind == "malformed-exponent"
    assert err("ring [x] ideal x^-1").kind == "malformed-exponent"
    assert err("ring [x] ideal x^1.5").kind == "malformed-exponent"
    assert err("ring [x] ideal x^2^3").kind == "malformed-exponent"
    assert err("ring [x] ideal x^99999").kind == "malformed-exponent"
    assert err("ring [x] ring [y] ideal x").kind == "duplicate-ring"
    assert err("ring [x] ideal x expect T = (0, 1) ring [y]").kind == "duplicate-ring"
    assert err("ring GF(4)[x] ideal x").kind == "bad-field"
    assert err("ring [x, x] ideal x").kind == "duplicate-variable"


def test_error_locations():
    e = err("ring [x, y]\nideal x^2,\n  x*q")
    assert e.kind == "unknown-variable" and (e.line, e.column) == (3, 5)
    e = err("ring [x]\nideal x y")
    assert e.kind == "syntax" and (e.line, e.column) == (2, 9)
    assert {"','", "'+'", "'-'", "'*'", "end of input"} <= set(e.expected)
    e = err("ring [x] ideal x**2")
    assert e.kind == "syntax" and e.expected == ("identifier",)
    e = err("ring [x] ideal ")
    assert e.kind == "syntax" and e.expected == ("identifier", "integer")
    e = err("ring [x] ideal x @")
    assert e.kind == "syntax" and (e.line, e.column) == (1, 18)


def test_tokenize_positions():
    toks = tokenize("ring\n  [x]")
    assert [(t.text, t.line, t.column) for t in toks[:2]] == [("ring", 1, 1), ("[", 2, 3)]


@settings(max_examples=200)
@given(st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)), st.integers(-40, 40), max_size=5))
def test_polynomial_round_trip(terms):
    R = ring("xy")
    f = R.poly(terms)
    assert parse_polynomial(str(f), R) == f


def test_document_round_trip():
    for name in ("gorenstein-h4-mixed", "gorenstein-h4-pure", "gorenstein-h7", "zero"):
        doc = load_fixture(name)
        again = parse(format_document(doc))
        assert again.ideal == doc.ideal and again.ring == doc.ring
        assert again.expect_T == doc.expect_T and again.expect_t == doc.expect_t


# -- Betti printing ------------------------------------------------------------------


def test_print_betti_zero():
    R = ring("xy")
    text = print_betti(betti_table(resolve([R.zero()], R)))
    assert text == "       0\ntotal: 1\n    0: 1\nt = (0)\nT = (0)\n"


def test_print_betti_koszul():
    R = ring("xy")
    B = betti_table(resolve([parse_polynomial("x^2", R), parse_polynomial("y^3", R)]))
    text = print_betti(B)
    assert text == ("       0 1 2\n"
                    "total: 1 2 1\n"
                    "    0: 1 . .\n"
                    "    1: . 1 .\n"
                    "    2: . 1 .\n"
                    "    3: . . 1\n"
                    "t = (0, 2, 5)\n"
                    "T = (0, 3, 5)\n")
    assert parse_betti(text) == B.entries


def test_print_betti_fixture1(fixture1):
    B = betti_table(resolve(fixture1.ideal, fixture1.ring))
    text = print_betti(B)
    assert "T = (0, 3, 4, 6, 8)\n" in text
    assert parse_betti(text) == B.entries
    totals = text.splitlines()[1].split()[1:]
    assert [int(x) for x in totals] == [sum(b for (a, _), b in B.entries.items() if a == k)
                                        for k in range(B.projdim + 1)]
    assert print_betti(B) == text


# -- reports ---------------------------------------------------------------------------


def test_report_fixture1(fixture1):
    tree = json.loads(emit_report(analyze(fixture1.ideal, fixture1.ring)))
    assert tree["schema_version"] == "1"
    assert tree["gorenstein"]["h"] == 4 and tree["gorenstein"]["c"] == 8
    assert tree["T"] == [0, 3, 4, 6, 8] and tree["projdim"] == 4 and tree["regularity"] == 4
    assert tree["betti"]["2,4"] == 12
    assert len(tree["witnesses"]) == 3 and all(w["verified"] for w in tree["witnesses"])
    assert {"theorem1", "subadditivity", "tail", "bayer_mumford", "herzog_srinivasan"} <= set(tree["inequalities"])


def test_report_zero_and_pure(fixture2):
    R = ring("xy")
    assert json.loads(emit_report(analyze([R.zero()], R)))["projdim"] == 0
    tree = json.loads(emit_report(analyze(fixture2.ideal, fixture2.ring, witnesses=False)))
    assert tree["purity"]["is_pure"] is True and tree["purity"]["shifts"] == [3, 4, 5, 8]


def test_report_deterministic(fixture1):
    a = emit_report(analyze(fixture1.ideal, fixture1.ring))
    b = emit_report(analyze(fixture1.ideal, fixture1.ring))
    assert a == b
