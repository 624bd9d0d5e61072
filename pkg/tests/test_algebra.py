from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from syzshift.algebra import (ZERO, FieldSpec, RingSpec, add, compare, format_polynomial,
                              homogeneous_degree, multiply)
from syzshift.errors import DegreeError, DimensionError, RingMismatchError
from syzshift.ideal_io import parse_polynomial

from conftest import ring

GF = ring("xyz", 32003)
GF7 = ring("xyz", 7)
QQ = ring("xyz", 0)

exps3 = st.tuples(*[st.integers(0, 3)] * 3)


def poly_strategy(R):
    coeff = st.integers(-50, 50) if R.field.characteristic == 0 else st.integers(0, R.field.characteristic - 1)
    return st.dictionaries(exps3, coeff, max_size=5).map(R.poly)


def hom_poly_strategy(R):
    @st.composite
    def build(draw):
        d = draw(st.integers(0, 3))
        mons = [(a, b, d - a - b) for a in range(d + 1) for b in range(d + 1 - a)]
        chosen = draw(st.lists(st.sampled_from(mons), min_size=1, max_size=4, unique=True))
        return R.poly({m: draw(st.integers(1, 20)) for m in chosen})
    return build()


# -- field -----------------------------------------------------------------------


def test_field_rejects_composite_and_large():
    with pytest.raises(ValueError):
        FieldSpec(32004)
    with pytest.raises(ValueError):
        FieldSpec(1)
    with pytest.raises(ValueError):
        FieldSpec(2 ** 31 + 11)
    assert FieldSpec(2).characteristic == 2
    assert str(FieldSpec()) == "GF(32003)"
    assert str(FieldSpec.rationals()) == "QQ"


def test_field_arithmetic():
    F = FieldSpec(7)
    assert F(Fraction(1, 3)) == 5
    assert F.inv(3) == 5
    assert F.signed(6) == -1
    Q = FieldSpec.rationals()
    assert Q.inv(Fraction(2, 3)) == Fraction(3, 2)


def test_ring_validation():
    with pytest.raises(ValueError):
        RingSpec(FieldSpec(), [])
    with pytest.raises(ValueError):
        RingSpec(FieldSpec(), ["x", "x"])
    with pytest.raises(ValueError):
        RingSpec(FieldSpec(), ["x"], "revlex")


# -- compare ---------------------------------------------------------------------


def test_compare_examples():
    assert compare((1, 1, 0), (1, 1, 0), "grevlex") == 0
    assert compare((2, 0), (1, 1), "lex") == 1
    # x*z vs y^2 in grevlex with x > y > z
    assert compare((1, 0, 1), (0, 2, 0), "grevlex") == -1
    assert compare((1, 0, 1), (0, 2, 0), "lex") == 1


def test_compare_dimension_error():
    with pytest.raises(DimensionError):
        compare((1, 0), (1, 0, 0))


@pytest.mark.parametrize("order", ["grevlex", "lex"])
def test_packed_order_matches_compare(order):
    R = ring("xyz", order=order)
    mons = [(a, b, c) for a in range(4) for b in range(4) for c in range(4)]
    for a in mons[::3]:
        for b in mons[::5]:
            packed = (R.encode(a) > R.encode(b)) - (R.encode(a) < R.encode(b))
            assert packed == compare(a, b, order)


@pytest.mark.parametrize("order", ["grevlex", "lex"])
@settings(max_examples=300)
@given(a=exps3, b=exps3, c=exps3)
def test_order_axioms(order, a, b, c):
    # totality and antisymmetry
    assert compare(a, b, order) == -compare(b, a, order)
    assert (compare(a, b, order) == 0) == (a == b)
    # multiplicativity
    ac = tuple(x + y for x, y in zip(a, c))
    bc = tuple(x + y for x, y in zip(b, c))
    assert compare(ac, bc, order) == compare(a, b, order)
    # 1 is minimal
    assert compare((0, 0, 0), a, order) <= 0


# -- arithmetic ------------------------------------------------------------------


def test_add_examples():
    x, y, z = GF.gens()
    assert add(x * x, -(x * x)).is_zero()
    assert add(x + y, y) == x + y.scale(2)
    X = GF7.gens()[0]
    assert add(X.scale(3), X.scale(4)).is_zero()


def test_multiply_examples():
    R = ring("xyzw")
    x, y, z, w = R.gens()
    p = x * y + z
    assert multiply(p, R.constant(1)) == p
    assert multiply(x + y, x - y) == x * x - y * y
    ww = multiply(w * w, z * z)
    assert ww == w ** 2 * z ** 2 and ww.degree() == 4


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        add(GF.gens()[0], QQ.gens()[0])
    with pytest.raises(RingMismatchError):
        multiply(GF.gens()[0], GF7.gens()[0])


def test_homogeneous_degree_examples():
    R = ring("xyzw")
    x, y, z, w = R.gens()
    assert homogeneous_degree(y * y - w * z) == 2
    assert homogeneous_degree(x + y * y) is None
    assert homogeneous_degree(R.zero()) is ZERO
    assert not ZERO and ZERO is not None


def test_degree_overflow():
    with pytest.raises(DegreeError):
        GF.poly({(40000, 0, 0): 1})
    with pytest.raises(DegreeError):
        GF.poly({(-1, 0, 0): 1})


def test_terms_strictly_descending():
    x, y, z = GF.gens()
    f = x * z + y * y + x * x + z
    ms = [m for _, m in f.sorted_terms()]
    assert ms == sorted(ms, reverse=True) and len(set(ms)) == len(ms)
    assert format_polynomial(f) == "x^2 + y^2 + x*z + z"


@pytest.mark.parametrize("R", [GF, QQ], ids=["GF", "QQ"])
@settings(max_examples=1000)
@given(data=st.data())
def test_ring_axioms(R, data):
    f, g, h = (data.draw(poly_strategy(R)) for _ in range(3))
    assert (f + g) + h == f + (g + h)
    assert f + g == g + f
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    assert f * (g + h) == f * g + f * h
    assert (f - f).is_zero()
    assert f * R.constant(1) == f


@pytest.mark.parametrize("R", [GF, QQ], ids=["GF", "QQ"])
@settings(max_examples=200)
@given(data=st.data())
def test_homogeneous_degree_additive(R, data):
    f = data.draw(hom_poly_strategy(R))
    g = data.draw(hom_poly_strategy(R))
    fg = f * g
    if fg:
        assert fg.homogeneous_degree() == f.homogeneous_degree() + g.homogeneous_degree()


@pytest.mark.parametrize("R", [GF, QQ], ids=["GF", "QQ"])
@settings(max_examples=300)
@given(data=st.data())
def test_print_parse_round_trip(R, data):
    f = data.draw(poly_strategy(R))
    text = format_polynomial(f)
    g = parse_polynomial(text, R)
    assert g == f
    assert g.term_list() == f.term_list()


def test_evaluate():
    x, y, z = QQ.gens()
    f = x * x - y.scale(Fraction(1, 2)) + QQ.constant(3)
    assert f.evaluate([2, 4, 0]) == 5
