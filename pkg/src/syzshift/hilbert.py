"""Hilbert series numerators of monomial ideals (pivot recursion)."""

from __future__ import annotations

from functools import lru_cache


def minimalize_monomials(gens) -> tuple:
    gens = sorted(set(tuple(g) for g in gens), key=lambda g: (sum(g), g))
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return tuple(sorted(out))


def _poly_add(a: list, b: list, shift: int = 0) -> list:
    n = max(len(a), len(b) + shift)
    out = [0] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i + shift] += c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def _numerator(gens: tuple) -> tuple:
    if not gens:
        return (1,)
    if any(sum(g) == 0 for g in gens):
        return (0,)
    nv = len(gens[0])
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
    # pairwise coprime generators (e.g. pure powers): product of (1 - q^deg)
    seen: set = set()
    coprime = True
    for s in supports:
        if seen & s:
            coprime = False
            break
        seen |= s
    if coprime:
        out = [1]
        for g in gens:
            d = sum(g)
            out = _poly_mul(out, [1] + [0] * (d - 1) + [-1])
        return tuple(out)
    mixed = [g for g, s in zip(gens, supports) if len(s) > 1]
    counts = [sum(1 for g in mixed if g[i]) for i in range(nv)]
    v = max(range(nv), key=lambda i: (counts[i], -i))
    exps = sorted(g[v] for g in mixed if g[v])
    e = exps[(len(exps) - 1) // 2]
    pivot = tuple(e if i == v else 0 for i in range(nv))
    plus = minimalize_monomials([g for g in gens if g[v] < e] + [pivot])
    colon = minimalize_monomials(
        [tuple(max(0, a - e) if i == v else a for i, a in enumerate(g)) for g in gens])
    # HN(I) = HN(I + p) + q^deg(p) * HN(I : p)
    return tuple(_poly_add(list(_numerator(plus)), list(_numerator(colon)), e))


def hilbert_numerator(gens) -> list:
    """Numerator ``N(q)`` with ``HS(S/I) = N(q) / (1 - q)^n`` for the monomial ideal ``I``."""
    gens = minimalize_monomials(gens)
    return list(_numerator(gens))


def factor_one_minus_q(num: list) -> tuple:
    """Split ``num = (1 - q)^k * rest`` with ``rest(1) != 0``; returns ``(k, rest)``."""
    num = list(num)
    k = 0
    while len(num) > 1 and sum(num) == 0:
        # synthetic division by (1 - q): rest_i = sum_{j<=i} num_j
        rest, acc = [], 0
        for c in num[:-1]:
            acc += c
            rest.append(acc)
        num = rest
        k += 1
    return k, num


def hilbert_function(num: list, nvars: int, upto: int) -> list:
    """Values ``H(0..upto)`` from the numerator (series expansion of N / (1-q)^n)."""
    from math import comb
    out = []
    for j in range(upto + 1):
        out.append(sum(c * comb(j - i + nvars - 1, nvars - 1)
                       for i, c in enumerate(num) if i <= j))
    return out
