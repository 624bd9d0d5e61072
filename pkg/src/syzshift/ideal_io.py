"""Reading ``.ideal`` files, printing Betti tables, and JSON reports.

File grammar::

    document   := ring-decl ideal-decl [expect-decl]
    ring-decl  := "ring" [field] "[" ident ("," ident)* "]" ["order" ("grevlex" | "lex")]
    field      := "GF(" integer ")" | "QQ"            (default GF(32003))
    ideal-decl := "ideal" poly ("," poly)*
    poly       := ["+" | "-"] term (("+" | "-") term)*
    term       := [coefficient ["*"]] factor ("*" factor)* | coefficient
    coefficient:= integer ["/" integer]
    factor     := ident ["^" integer]
    expect-decl:= "expect" "T" "=" "(" ints ")" ["t" "=" "(" ints ")"]

``#`` starts a comment running to the end of the line.  The expected shift
lists start at homological degree 0, so ``T = (0, 3, 4, 6, 8)``.
"""

from __future__ import annotations

import json
import re
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .algebra import MAX_DEGREE, FieldSpec, Polynomial, RingSpec, format_polynomial
from .errors import ParseError
from .resolution import BettiTable

SCHEMA_VERSION = "1"

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<decimal>\d+\.\d*)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<sym>[()\[\],*^+\-=/])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str      # "int", "decimal", "ident", "sym", "eof"
    text: str
    line: int
    column: int

    def describe(self) -> str:
        return "end of input" if self.kind == "eof" else repr(self.text)


def tokenize(text: str) -> list:
    out = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError("syntax", f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind not in ("ws", "comment"):
            out.append(Token(kind, chunk, line, col))
        nl = chunk.count("\n")
        if nl:
            line += nl
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    out.append(Token("eof", "", line, col))
    return out


@dataclass
class InputDocument:
    ring: RingSpec
    ideal: list
    name: str | None = None
    expect_T: list | None = None
    expect_t: list | None = None
    dropped_zero: int = 0

    def check_expectations(self, t: list, T: list) -> list:
        """Mismatches as ``(label, expected, computed)``; empty when all agree."""
        out = []
        if self.expect_T is not None and list(self.expect_T) != list(T):
            out.append(("T", list(self.expect_T), list(T)))
        if self.expect_t is not None and list(self.expect_t) != list(t):
            out.append(("t", list(self.expect_t), list(t)))
        return out


class _Parser:
    def __init__(self, text: str, field: FieldSpec | None = None, order: str | None = None):
        self.toks = tokenize(text)
        self.i = 0
        self.ring: RingSpec | None = None
        self.field_override = field
        self.order_override = order

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def fail(self, expected, kind="syntax", tok=None, message=None):
        tok = tok or self.tok
        expected = tuple(sorted(expected))
        msg = message or f"unexpected {tok.describe()}"
        raise ParseError(kind, msg, tok.line, tok.column, expected)

    def at(self, text: str) -> bool:
        return self.tok.kind in ("sym", "ident") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail({repr(text)})
        t = self.tok
        self.i += 1
        return t

    def integer(self, what="integer") -> int:
        if self.tok.kind != "int":
            self.fail({what})
        v = int(self.tok.text)
        self.i += 1
        return v

    # -- declarations --------------------------------------------------------

    def document(self, name=None) -> InputDocument:
        if not self.at("ring"):
            self.fail({"'ring'"})
        self.ring_decl()
        if self.at("ring"):
            self.fail({"'ideal'"}, kind="duplicate-ring", message="a second ring declaration")
        self.expect("ideal")
        polys = [self.poly()]
        while self.at(","):
            self.i += 1
            polys.append(self.poly())
        gens = [f for f in polys if f]
        doc = InputDocument(self.ring, gens, name, dropped_zero=len(polys) - len(gens))
        if self.at("expect"):
            self.i += 1
            self.expect("T")
            self.expect("=")
            doc.expect_T = self.int_list()
            if self.at("t"):
                self.i += 1
                self.expect("=")
                doc.expect_t = self.int_list()
        if self.at("ring"):
            self.fail({"end of input"}, kind="duplicate-ring", message="a second ring declaration")
        if self.tok.kind != "eof":
            exp = {"end of input", "','", "'+'", "'-'", "'*'"}
            if doc.expect_T is None:
                exp.add("'expect'")
            self.fail(exp)
        return doc

    def ring_decl(self):
        self.expect("ring")
        fld = FieldSpec()
        if self.at("GF"):
            tok = self.tok
            self.i += 1
            self.expect("(")
            p = self.integer("prime")
            self.expect(")")
            try:
                fld = FieldSpec(p)
            except ValueError as e:
                raise ParseError("bad-field", str(e), tok.line, tok.column) from None
        elif self.at("QQ"):
            self.i += 1
            fld = FieldSpec.rationals()
        elif not self.at("["):
            self.fail({"'GF'", "'QQ'", "'['"})
        self.expect("[")
        names = []
        while True:
            tok = self.tok
            if tok.kind != "ident":
                self.fail({"identifier"})
            if tok.text in names:
                raise ParseError("duplicate-variable", f"variable {tok.text!r} declared twice",
                                 tok.line, tok.column)
            names.append(tok.text)
            self.i += 1
            if self.at(","):
                self.i += 1
                continue
            if self.at("]"):
                self.i += 1
                break
            self.fail({"','", "']'"})
        order = "grevlex"
        if self.at("order"):
            self.i += 1
            if not (self.at("grevlex") or self.at("lex")):
                self.fail({"'grevlex'", "'lex'"})
            order = self.tok.text
            self.i += 1
        self.ring = RingSpec(self.field_override or fld, names, self.order_override or order)

    def int_list(self) -> list:
        self.expect("(")
        out = [self.signed_int()]
        while self.at(","):
            self.i += 1
            out.append(self.signed_int())
        self.expect(")")
        return out

    def signed_int(self) -> int:
        neg = self.at("-")
        if neg:
            self.i += 1
        v = self.integer()
        return -v if neg else v

    # -- polynomials -----------------------------------------------------------

    def poly(self) -> Polynomial:
        R = self.ring
        total = R.zero()
        sign = 1
        if self.at("+") or self.at("-"):
            sign = -1 if self.tok.text == "-" else 1
            self.i += 1
        total = total + self.term(sign)
        while self.at("+") or self.at("-"):
            sign = -1 if self.tok.text == "-" else 1
            self.i += 1
            total = total + self.term(sign)
        return total

    def term(self, sign: int) -> Polynomial:
        R = self.ring
        coeff = Fraction(sign)
        exps = [0] * R.nvars
        seen_factor = False
        if self.tok.kind == "int":
            num = self.integer()
            den = 1
            if self.at("/"):
                self.i += 1
                tok = self.tok
                den = self.integer()
                if den == 0:
                    raise ParseError("syntax", "zero denominator", tok.line, tok.column)
            coeff *= Fraction(num, den)
            if self.at("*"):
                self.i += 1
                self.factor(exps)
                seen_factor = True
            elif self.tok.kind == "ident" and self.tok.text in self.ring.variables:
                self.factor(exps)
                seen_factor = True
        else:
            if self.tok.kind != "ident":
                self.fail({"integer", "identifier"})
            self.factor(exps)
            seen_factor = True
        while seen_factor and self.at("*"):
            self.i += 1
            self.factor(exps)
        if sum(exps) > MAX_DEGREE:
            raise ParseError("malformed-exponent", f"term degree exceeds {MAX_DEGREE}",
                             self.tok.line, self.tok.column)
        F = R.field
        if F.characteristic and coeff.denominator % F.characteristic == 0:
            tok = self.toks[self.i - 1]
            raise ParseError("syntax", f"denominator divisible by {F.characteristic}",
                             tok.line, tok.column)
        return R.poly({tuple(exps): F(coeff)})

    def factor(self, exps: list):
        tok = self.tok
        if tok.kind != "ident":
            self.fail({"identifier"})
        try:
            idx = self.ring.variables.index(tok.text)
        except ValueError:
            raise ParseError("unknown-variable", f"unknown variable {tok.text!r}",
                             tok.line, tok.column, tuple(self.ring.variables)) from None
        self.i += 1
        e = 1
        if self.at("^"):
            self.i += 1
            et = self.tok
            if et.kind == "decimal":
                raise ParseError("malformed-exponent", f"exponent must be an integer, got {et.text!r}",
                                 et.line, et.column, ("integer",))
            if et.kind != "int":
                raise ParseError("malformed-exponent", f"exponent must be a nonnegative integer, got {et.describe()}",
                                 et.line, et.column, ("integer",))
            e = int(et.text)
            self.i += 1
            if e > MAX_DEGREE:
                raise ParseError("malformed-exponent", f"exponent {e} exceeds {MAX_DEGREE}",
                                 et.line, et.column)
            nxt = self.tok
            if nxt.kind == "sym" and nxt.text in "^/" or nxt.kind == "int":
                raise ParseError("malformed-exponent", f"unexpected {nxt.describe()} after exponent",
                                 nxt.line, nxt.column)
        exps[idx] += e


def parse(text: str, name: str | None = None, *, field: FieldSpec | None = None,
          order: str | None = None) -> InputDocument:
    """Parse a document; ``field``/``order`` replace the declared ones if given."""
    return _Parser(text, field, order).document(name)


def parse_polynomial(text: str, ring: RingSpec) -> Polynomial:
    """Parse a single polynomial over ``ring``."""
    p = _Parser(text)
    p.ring = ring
    f = p.poly()
    if p.tok.kind != "eof":
        p.fail({"end of input", "'+'", "'-'", "'*'"})
    return f


def format_ring(ring: RingSpec) -> str:
    fld = "QQ" if ring.field.characteristic == 0 else f"GF({ring.field.characteristic})"
    return f"ring {fld}[{', '.join(ring.variables)}] order {ring.order}"


def format_document(doc: InputDocument) -> str:
    polys = [format_polynomial(f) for f in doc.ideal] or ["0"]
    lines = [format_ring(doc.ring), "ideal " + ",\n      ".join(polys)]
    if doc.expect_T is not None:
        e = "expect T = (" + ", ".join(map(str, doc.expect_T)) + ")"
        if doc.expect_t is not None:
            e += " t = (" + ", ".join(map(str, doc.expect_t)) + ")"
        lines.append(e)
    return "\n".join(lines) + "\n"


# -- Betti tables ----------------------------------------------------------------


def _tuple_str(xs) -> str:
    return "(" + ", ".join(str(x) for x in xs) + ")"


def print_betti(B: BettiTable) -> str:
    """Grid with columns a = 0..s and rows r = j - a; zero entries print as '.'."""
    s = B.projdim
    lo = min(j - a for a, j in B.entries)
    rows = range(lo, max(j - a for a, j in B.entries) + 1)
    totals = B.ranks()
    label_w = max(len("total:"), max(len(f"{r}:") for r in rows))
    cells = [[str(a) for a in range(s + 1)], [str(x) for x in totals]]
    for r in rows:
        cells.append([str(B[(a, a + r)]) if B[(a, a + r)] else "." for a in range(s + 1)])
    width = max(len(c) for row in cells for c in row)
    labels = [""] + ["total:"] + [f"{r}:" for r in rows]
    lines = []
    for lab, row in zip(labels, cells):
        lines.append(lab.rjust(label_w) + " " + " ".join(c.rjust(width) for c in row))
    lines.append(f"t = {_tuple_str(B.t)}")
    lines.append(f"T = {_tuple_str(B.T)}")
    return "\n".join(lines) + "\n"


def parse_betti(text: str) -> dict:
    """Inverse of the grid part of ``print_betti``: ``{(a, j): beta}``."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    out = {}
    for ln in lines[2:]:
        if ln.startswith(("t =", "T =")):
            break
        lab, _, rest = ln.partition(":")
        r = int(lab)
        for a, c in enumerate(rest.split()):
            if c != ".":
                out[(a, a + r)] = int(c)
    return out


# -- reports ----------------------------------------------------------------------


def _records(rs) -> list:
    return [asdict(r) for r in rs]


def _bound(v):
    return v if isinstance(v, str) or abs(v) < 2 ** 53 else str(v)


def analysis_tree(A, doc: InputDocument | None = None) -> dict:
    """Plain dict form of an ``Analysis``; the schema behind ``emit_report``."""
    B = A.betti
    ineq = A.inequalities
    g = A.gorenstein
    tree = {
        "schema_version": SCHEMA_VERSION,
        "ring": {"field": str(A.ring.field), "variables": list(A.ring.variables), "order": A.ring.order},
        "generators": [format_polynomial(f) for f in A.generators],
        "betti": B.as_dict(),
        "ranks": B.ranks(),
        "t": list(B.t),
        "T": list(B.T),
        "projdim": B.projdim,
        "regularity": A.regularity,
        "hilbert_consistent": A.hilbert_consistent,
        "is_monomial": A.is_monomial,
        "gorenstein": {
            "is_cm_gorenstein": g.is_cm_gorenstein, "h": g.h, "c": g.c, "duality_ok": g.duality_ok,
            "cohen_macaulay": g.cohen_macaulay, "last_rank": g.last_rank, "note": g.note,
            "duality_records": [dict(zip(("a", "c_minus_t", "T_a", "holds"), r)) for r in g.duality_records],
            "top_records": [dict(zip(("a", "T_h", "bound", "holds"), r)) for r in g.top_records],
            "tail_records": [dict(zip(("a", "T_h_minus_1", "bound", "holds"), r)) for r in g.tail_records],
        },
        "purity": {
            "is_pure": A.purity.is_pure, "shifts": A.purity.shifts,
            "corollary": [dict(zip(("n", "T_n", "bound", "holds"), r)) for r in A.purity.corollary],
        },
        "inequalities": {
            "theorem1": _records(ineq.theorem1),
            "subadditivity": _records(ineq.subadditivity),
            "tail": _records(ineq.tail),
            "bayer_mumford": [dict(asdict(r), bound=_bound(r.bound)) for r in ineq.bayer_mumford],
            "herzog_srinivasan": _records(ineq.herzog_srinivasan),
        },
        "witnesses": [{
            "n": w.n, "t": w.t, "generator": w.generator, "degree": w.degree, "bound": w.bound,
            "cycle_is_closed": w.cycle_is_closed, "lift_ok": w.lift_ok, "cycle_nonzero": w.cycle_nonzero,
            "degree_ok": w.degree_ok, "rank_argument_ok": w.rank_argument_ok, "verified": w.verified,
        } for w in A.witnesses],
        "findings": A.theorem_failures(),
        "informational": [{"a": r.a, "b": r.b, "T_sum": r.T_sum, "bound": r.bound}
                          for r in A.informational()],
    }
    if doc is not None:
        tree["name"] = doc.name
        tree["expect"] = {
            "T": doc.expect_T, "t": doc.expect_t,
            "mismatches": [dict(zip(("label", "expected", "computed"), m))
                           for m in doc.check_expectations(B.t, B.T)],
        }
    return tree


def emit_report(report) -> str:
    """Serialize an ``Analysis`` (or an already-built dict) as deterministic JSON."""
    tree = report if isinstance(report, dict) else analysis_tree(report)
    tree.setdefault("schema_version", SCHEMA_VERSION)
    return json.dumps(tree, sort_keys=True, indent=2) + "\n"
