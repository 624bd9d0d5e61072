from syzshift.hilbert import (factor_one_minus_q, hilbert_function, hilbert_numerator,
                              minimalize_monomials)
from syzshift.resolution import betti_table, hilbert_consistency, ideal_hilbert_numerator, resolve

from conftest import polys, ring, tampered_table


def expand(*factors):
    out = [1]
    for f in factors:
        new = [0] * (len(out) + len(f) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(f):
                new[i + j] += a * b
        out = new
    return out


def test_principal():
    assert hilbert_numerator([(2, 0)]) == [1, 0, -1]


def test_complete_intersection():
    num = hilbert_numerator([(2, 0, 0), (0, 3, 0), (0, 0, 4)])
    assert num == expand([1, 0, -1], [1, 0, 0, -1], [1, 0, 0, 0, -1])


def test_mixed_monomials():
    # (x^2, xy): 1 - 2q^2 + q^3
    assert hilbert_numerator([(2, 0), (1, 1)]) == [1, 0, -2, 1]
    assert hilbert_numerator([]) == [1]


def test_minimalize_monomials():
    assert minimalize_monomials([(1, 1), (1, 0), (2, 0)]) == ((1, 0),)


def test_factor_and_function():
    k, rest = factor_one_minus_q(expand([1, -1], [1, -1], [1, 1]))
    assert k == 2 and rest == [1, 1]
    # S/(x^2) in k[x, y]: h(d) = 2 for d >= 1
    assert hilbert_function([1, 0, -1], 2, 5) == [1, 2, 2, 2, 2, 2]


def test_consistency_examples():
    R = ring("xy")
    I = polys(R, "x^2")
    assert ideal_hilbert_numerator(I) == [1, 0, -1]
    assert hilbert_consistency(I, betti_table(resolve(I)))
    R3 = ring("xyz")
    I = polys(R3, "x^2, y^3, z^4")
    assert hilbert_consistency(I, betti_table(resolve(I)))


def test_consistency_detects_wrong_table():
    R = ring("xy")
    I = polys(R, "x^2, y^3")
    B = betti_table(resolve(I))
    B.entries[(1, 2)] = 2
    with tampered_table():
        assert not hilbert_consistency(I, B)
