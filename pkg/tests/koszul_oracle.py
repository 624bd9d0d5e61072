"""Brute-force graded Betti numbers via Koszul homology.

beta_{a,j}(S/I) = dim_k H_a(K(x_1..x_d) ⊗ S/I)_j, and the degree-j strand of
K_a ⊗ S/I is  wedge^a k^d ⊗ (S/I)_{j-a}.  Every graded piece is finite, so the
homology is plain linear algebra over GF(p).

Nothing here touches the package: monomials are exponent tuples, quotient
bases come from the monomial ideal itself or from a sympy Gröbner basis, and
ranks are computed by a separate dense elimination.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

P = 32003


def rank_mod_p(rows: list, p: int = P) -> int:
    """Rank of a dense matrix (list of lists) over GF(p)."""
    m = [[x % p for x in r] for r in rows if any(x % p for x in r)]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


@lru_cache(maxsize=None)
def monomials(deg: int, n: int) -> tuple:
    if deg < 0:
        return ()
    if n == 1:
        return ((deg,),)
    return tuple((e,) + rest for e in range(deg, -1, -1) for rest in monomials(deg - e, n - 1))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


class MonomialQuotient:
    """S/I for a monomial ideal: basis = monomials outside I, x_i acts by shifting."""

    def __init__(self, gens: list, nvars: int):
        self.gens = [tuple(g) for g in gens]
        self.n = nvars

    def basis(self, deg: int) -> list:
        return [m for m in monomials(deg, self.n) if not any(_divides(g, m) for g in self.gens)]

    def times_var(self, m: tuple, i: int) -> dict:
        u = list(m)
        u[i] += 1
        u = tuple(u)
        if any(_divides(g, u) for g in self.gens):
            return {}
        return {u: 1}


class SympyQuotient:
    """S/I for a homogeneous ideal, normal forms from a sympy Gröbner basis over GF(p)."""

    def __init__(self, polys: list, symbols: list, p: int = P):
        import sympy
        self.sympy = sympy
        self.syms = symbols
        self.n = len(symbols)
        self.p = p
        self.G = sympy.groebner(polys, *symbols, order="grevlex", modulus=p)
        self.leads = [sympy.Poly(g, *symbols, modulus=p).monoms(order="grevlex")[0] for g in self.G.exprs]
        self._nf = {}

    def basis(self, deg: int) -> list:
        return [m for m in monomials(deg, self.n) if not any(_divides(g, m) for g in self.leads)]

    def times_var(self, m: tuple, i: int) -> dict:
        u = list(m)
        u[i] += 1
        u = tuple(u)
        if u not in self._nf:
            expr = self.sympy.Mul(*[s ** e for s, e in zip(self.syms, u)])
            _, r = self.G.reduce(expr)
            poly = self.sympy.Poly(r, *self.syms, modulus=self.p)
            self._nf[u] = {mono: int(c) % self.p for mono, c in poly.terms() if int(c) % self.p}
        return self._nf[u]


def _koszul_matrix(Q, a: int, j: int, p: int) -> list:
    """Matrix of d_a : wedge^a ⊗ (S/I)_{j-a} -> wedge^{a-1} ⊗ (S/I)_{j-a+1} (rows = target)."""
    n = Q.n
    src = [(s, m) for s in itertools.combinations(range(n), a) for m in Q.basis(j - a)]
    tgt = [(s, m) for s in itertools.combinations(range(n), a - 1) for m in Q.basis(j - a + 1)]
    pos = {b: k for k, b in enumerate(tgt)}
    rows = [[0] * len(src) for _ in tgt]
    for c, (s, m) in enumerate(src):
        for r, i in enumerate(s):
            sign = -1 if r % 2 else 1
            face = s[:r] + s[r + 1:]
            for u, coef in Q.times_var(m, i).items():
                rows[pos[(face, u)]][c] = (rows[pos[(face, u)]][c] + sign * coef) % p
    return rows, len(src)


def koszul_betti(Q, max_degree: int, p: int = P) -> dict:
    """{(a, j): beta_aj} for all j <= max_degree."""
    n = Q.n
    out = {}
    for j in range(max_degree + 1):
        ranks = {}
        dims = {}
        for a in range(0, n + 2):
            if a == 0 or a > n:
                ranks[a] = 0
                dims[a] = len(Q.basis(j)) if a == 0 else 0
                continue
            rows, ncols = _koszul_matrix(Q, a, j, p)
            dims[a] = ncols
            ranks[a] = rank_mod_p(rows, p) if rows and ncols else 0
        for a in range(0, n + 1):
            b = dims[a] - ranks[a] - ranks[a + 1]
            if b:
                out[(a, j)] = b
    return out


def bayer_mumford_cap(gen_degrees: list, nvars: int) -> int:
    """``(2 T_1)^(2^(m-2)) - 1 + m`` bounds every T_n, n <= m (exponent 1 when m < 2)."""
    if not gen_degrees:
        return 0
    T1 = max(gen_degrees)
    e = 2 ** (nvars - 2) if nvars >= 2 else 1
    return (2 * T1) ** e - 1 + nvars


def monomial_betti(gens: list, nvars: int, p: int = P) -> dict:
    degs = [sum(g) for g in gens]
    return koszul_betti(MonomialQuotient(gens, nvars), bayer_mumford_cap(degs, nvars) + 1, p)
