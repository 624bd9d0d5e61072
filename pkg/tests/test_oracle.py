"""Resolution pipeline against brute-force Koszul homology."""

import random

import pytest

from syzshift.resolution import betti_table, resolve

from conftest import ring
from koszul_oracle import SympyQuotient, koszul_betti, monomial_betti


def oracle_ideals(count=30, seed=2024):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(1, 3)
        gens = set()
        for _ in range(rng.randint(1, 5)):
            d = rng.randint(1, 3)
            e = [0] * n
            for _ in range(d):
                e[rng.randrange(n)] += 1
            gens.add(tuple(e))
        out.append((n, sorted(gens)))
    return out


def pipeline_betti(n, gens):
    R = ring("xyz"[:n])
    B = betti_table(resolve([R.poly({g: 1}) for g in gens], R))
    return B.entries


@pytest.mark.parametrize("n,gens", oracle_ideals())
def test_monomial_oracle(n, gens):
    assert pipeline_betti(n, gens) == monomial_betti(gens, n)


def test_sympy_route_fixture2(fixture2):
    import sympy
    syms = sympy.symbols("x y z w")
    polys = [sympy.sympify(str(f).replace("^", "**"), locals=dict(zip("xyzw", syms))) for f in fixture2.ideal]
    Q = SympyQuotient(polys, list(syms))
    B = betti_table(resolve(fixture2.ideal, fixture2.ring))
    assert koszul_betti(Q, 8) == B.entries
