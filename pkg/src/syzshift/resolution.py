"""Graded free resolutions of S/I and their Betti tables.

``free_resolution`` builds the (usually non-minimal) Schreyer resolution:
the reduced Gröbner basis of I is the first differential and, level after
level, the Schreyer syzygies of the previous level form a Gröbner basis of
the next kernel under the induced order, so no further Buchberger runs are
needed.  ``minimalize`` then cancels unit entries until none remain.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field

from .algebra import Polynomial, RingSpec
from .errors import (BudgetExceededError, ContractError, DegreeError, ImproperIdealError,
                     InternalContradictionError, RingMismatchError)
from .groebner import (DEFAULT_BUDGET, GroebnerBasis, PositionOrder, SchreyerOrder,
                       _reduce, buchberger, from_vec)
from .hilbert import factor_one_minus_q, hilbert_numerator
from .linalg import rank as matrix_rank
from .modules import GradedFreeModule, GradedMatrix, ModuleElement


@dataclass
class GradedFreeResolution:
    """``0 -> F_s -> ... -> F_1 -> F_0 = S``; ``differentials[n-1]`` is ∂_n."""

    ring: RingSpec
    differentials: list
    minimal: bool = False
    groebner: GroebnerBasis | None = field(default=None, repr=False)

    @property
    def length(self) -> int:
        return len(self.differentials)

    def module(self, n: int) -> GradedFreeModule:
        if n == 0:
            return GradedFreeModule((0,))
        if n > self.length:
            return GradedFreeModule(())
        return self.differentials[n - 1].source

    def differential(self, n: int) -> GradedMatrix:
        return self.differentials[n - 1]

    @property
    def ranks(self) -> list:
        return [self.module(n).rank for n in range(self.length + 1)]

    def generators(self) -> list:
        """The polynomials ∂_1(f_1j)."""
        if not self.differentials:
            return []
        return [col[0] for col in self.differentials[0].columns]


@dataclass
class BettiTable:
    entries: dict
    t: list
    T: list
    projdim: int

    def __getitem__(self, key) -> int:
        return self.entries.get(key, 0)

    def ranks(self) -> list:
        return [sum(b for (a, _), b in self.entries.items() if a == n) for n in range(self.projdim + 1)]

    def shifts(self, a: int) -> list:
        return sorted(j for (b, j) in self.entries if b == a)

    def k_polynomial(self) -> list:
        """``sum_a (-1)^a sum_j beta_aj q^j`` as a coefficient list."""
        top = max(j for _, j in self.entries)
        out = [0] * (top + 1)
        for (a, j), b in self.entries.items():
            out[j] += (-1) ** a * b
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return out

    def as_dict(self) -> dict:
        return {f"{a},{j}": b for (a, j), b in sorted(self.entries.items())}


# -- input validation --------------------------------------------------------


def _check_ideal(I, ring: RingSpec | None):
    gens = [f for f in I if not f.is_zero()]
    if ring is None:
        if not I:
            raise ContractError("ring is required for an empty generator list")
        ring = I[0].ring
    for f in I:
        if f.ring != ring:
            raise RingMismatchError(f"{f.ring!r} vs {ring!r}")
    for f in gens:
        hd = f.homogeneous_degree()
        if hd is None:
            raise DegreeError(f"generator is not homogeneous: {f}")
        if hd == 0:
            raise ImproperIdealError(f"generator {f} is a unit; S/I = 0")
    return gens, ring


# -- Schreyer frame ----------------------------------------------------------


def _lex_desc(ring: RingSpec, m: int) -> tuple:
    return tuple(-e for e in ring.decode(m))


def free_resolution(I, ring: RingSpec | None = None,
                    budget: int = DEFAULT_BUDGET) -> GradedFreeResolution:
    """Schreyer resolution of ``S/I``; exact, but in general not minimal."""
    gens, ring = _check_ideal(list(I), ring)
    p = ring.field.characteristic
    G = buchberger(gens, ring=ring, budget=budget)
    if not G.elements:
        return GradedFreeResolution(ring, [], minimal=True, groebner=G)

    prev_order = PositionOrder(ring, (0,))
    # level 1: the Gröbner basis, sorted lex-descending by lead monomial
    level = sorted(G.elements, key=lambda e: _lex_desc(ring, e[0]))
    differentials = []
    used = 0
    while level:
        n = len(level)
        leads = [prev_order.total(lead) for lead, _ in level]
        prev_slots = [prev_order.slot(lead) for lead, _ in level]
        differentials.append(_to_matrix(ring, level, prev_order, leads))
        tie = sorted(range(n), key=lambda k: (prev_slots[k], -k))
        ranks = [0] * n
        for r, k in enumerate(tie):
            ranks[k] = r
        order = SchreyerOrder(ring, leads, ranks)

        index: dict = {}
        for k, (lead, _) in enumerate(level):
            index.setdefault(prev_order.slot(lead), []).append((leads[k], k))
        syz = []
        groups: dict = {}
        for k in range(n):
            groups.setdefault(prev_slots[k], []).append(k)
        for members in groups.values():
            for pos, k in enumerate(members):
                cands: dict = {}
                for l in members[pos + 1:]:
                    q = ring.lcm(leads[k], leads[l]) - leads[k]
                    cands.setdefault(q, l)
                qs = list(cands)
                for q in qs:
                    if any(q2 != q and ring.divides(q2, q) for q2 in qs):
                        continue
                    used += 1
                    if used > budget:
                        raise BudgetExceededError(budget)
                    syz.append(_schreyer_syzygy(ring, level, index, prev_order, order,
                                                k, cands[q], q, p))
        syz.sort(key=lambda e: (order.comp(e[0]), _lex_desc(ring, order.total(e[0]))))
        prev_order = order
        level = syz
        if len(differentials) > ring.nvars + 1:
            raise InternalContradictionError("Schreyer frame longer than the number of variables")
    return GradedFreeResolution(ring, differentials, minimal=False, groebner=G)


def _schreyer_syzygy(ring, level, index, prev_order, order, k, l, q, p):
    """Reduce the S-pair of ``level[k]``, ``level[l]`` and return its syzygy as (lead, tail)."""
    lk, ll = order.leads[k], order.leads[l]
    L = lk + q
    ql = L - ll
    sk, sl = prev_order.shift(q), prev_order.shift(ql)
    f = {}
    for kk, cc in level[k][1]:
        f[kk + sk] = cc
    get = f.get
    for kk, cc in level[l][1]:
        nk = kk + sl
        w = get(nk, 0) - cc
        if p:
            w %= p
        if w:
            f[nk] = w
        else:
            f.pop(nk, None)
    quot = defaultdict(dict)
    if _reduce(f, level, index, prev_order, p, quot):
        raise InternalContradictionError("Schreyer S-pair did not reduce to zero")
    lead = order.key(k, q)
    vec = {lead: 1}
    other = order.key(l, ql)
    vec[other] = (p - 1) if p else -1
    for j, qd in quot.items():
        for m, c in qd.items():
            key = order.key(j, m)
            w = vec.get(key, 0) - c
            if p:
                w %= p
            if w:
                vec[key] = w
            else:
                vec.pop(key, None)
    if max(vec) != lead or vec[lead] != 1:
        raise InternalContradictionError("Schreyer syzygy has an unexpected lead term")
    tail = sorted(((key, c) for key, c in vec.items() if key != lead), reverse=True)
    return lead, tail


def _to_matrix(ring, level, prev_order, leads) -> GradedMatrix:
    cols = []
    for lead, tail in level:
        vec = dict(tail)
        vec[lead] = 1
        cols.append(from_vec(vec, prev_order, ring))
    source = GradedFreeModule(tuple(ring.degree(m) for m in leads))
    target = GradedFreeModule(tuple(prev_order.shifts))
    return GradedMatrix(ring, source, target, cols)


# -- minimalization ----------------------------------------------------------


def minimalize(F: GradedFreeResolution) -> GradedFreeResolution:
    """Cancel every unit entry (pivot by lowest degree, then position)."""
    if F.minimal:
        return F
    ring = F.ring
    field_ = ring.field
    s = F.length
    cols = [None] + [[dict(c.comps) for c in M.columns] for M in F.differentials]
    shifts = [(0,)] + [M.source.shifts for M in F.differentials]
    rowmap = [None]
    for n in range(1, s + 1):
        rm: dict = {}
        for c, col in enumerate(cols[n]):
            for r in col:
                rm.setdefault(r, set()).add(c)
        rowmap.append(rm)
    dead = [set() for _ in range(s + 1)]

    for n in range(2, s + 1):
        A, rm = cols[n], rowmap[n]
        scan = sorted(range(len(A)), key=lambda c: (shifts[n][c], c))
        for c in scan:
            if c in dead[n]:
                continue
            col = A[c]
            units = sorted(r for r, f in col.items() if f.is_constant())
            if not units:
                continue
            r = units[0]
            u = col[r].lead_coefficient()
            uinv = field_.inv(u)
            for k in sorted(rm.get(r, ()) - {c}):
                factor = A[k][r].scale(uinv)
                target = A[k]
                for i, f in col.items():
                    new = target.get(i, None)
                    upd = f * factor
                    new = -upd if new is None else new - upd
                    if new.is_zero():
                        if i in target:
                            del target[i]
                            rm[i].discard(k)
                    else:
                        if i not in target:
                            rm.setdefault(i, set()).add(k)
                        target[i] = new
                if r in target:
                    raise InternalContradictionError("pivot row not cleared")
            for i in col:
                rm[i].discard(c)
            rm.pop(r, None)
            A[c] = {}
            dead[n].add(c)
            dead[n - 1].add(r)
            # ∂_{n-1}: drop column r; ∂_{n+1}: drop row c
            below = cols[n - 1]
            if n - 1 >= 1:
                for i in below[r]:
                    rowmap[n - 1][i].discard(r)
                below[r] = {}
            if n + 1 <= s:
                for k in rowmap[n + 1].pop(c, ()):
                    del cols[n + 1][k][c]

    # renumber the surviving basis elements
    newidx = [{0: 0}]
    for n in range(1, s + 1):
        alive = [c for c in range(len(cols[n])) if c not in dead[n]]
        newidx.append({c: i for i, c in enumerate(alive)})
    differentials = []
    for n in range(1, s + 1):
        if not newidx[n]:
            break
        ren_rows = newidx[n - 1]
        new_cols = []
        for c in newidx[n]:
            col = cols[n][c]
            new_cols.append(ModuleElement(ring, {ren_rows[r]: f for r, f in col.items()}))
        src = GradedFreeModule(tuple(shifts[n][c] for c in newidx[n]))
        tgt = GradedFreeModule(tuple(shifts[n - 1][c] for c in ren_rows)) if n > 1 else GradedFreeModule((0,))
        differentials.append(GradedMatrix(ring, src, tgt, new_cols))
    return GradedFreeResolution(ring, differentials, minimal=True, groebner=F.groebner)


def is_minimal(F: GradedFreeResolution) -> bool:
    return all(not M.constant_entries() for M in F.differentials)


# -- Betti tables ------------------------------------------------------------


def betti_table(F: GradedFreeResolution) -> BettiTable:
    if not F.minimal:
        raise ContractError("betti_table needs a minimal resolution")
    entries = {(0, 0): 1}
    t, T = [0], [0]
    for a, M in enumerate(F.differentials, start=1):
        for j in M.source.shifts:
            entries[(a, j)] = entries.get((a, j), 0) + 1
        t.append(min(M.source.shifts))
        T.append(max(M.source.shifts))
    return BettiTable(entries, t, T, F.length)


def regularity(B: BettiTable) -> int:
    return max(B.T[a] - a for a in range(B.projdim + 1))


def ideal_hilbert_numerator(I, ring: RingSpec | None = None, groebner: GroebnerBasis | None = None) -> list:
    """Hilbert numerator of S/I from the lead terms of a Gröbner basis of I."""
    gens, ring = _check_ideal(list(I), ring)
    G = groebner or buchberger(gens, ring=ring)
    return hilbert_numerator([ring.decode(m) for _, m in G.lead_monomials()] or [])


def hilbert_consistency(I, B: BettiTable, ring: RingSpec | None = None,
                        groebner: GroebnerBasis | None = None) -> bool:
    num = ideal_hilbert_numerator(I, ring, groebner)
    return _trim(num) == _trim(B.k_polynomial())


def _trim(c: list) -> list:
    c = list(c)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def codimension(I, ring: RingSpec | None = None, groebner: GroebnerBasis | None = None) -> int:
    """Codimension of I: the order of (1 - q) in the Hilbert numerator."""
    k, _ = factor_one_minus_q(ideal_hilbert_numerator(I, ring, groebner))
    return k


def resolve(I, ring: RingSpec | None = None, budget: int = DEFAULT_BUDGET) -> GradedFreeResolution:
    """Minimal graded free resolution of S/I, certified by Hilbert-series consistency."""
    F = minimalize(free_resolution(I, ring, budget))
    B = betti_table(F)
    gens, ring = _check_ideal(list(I), ring)
    if not hilbert_consistency(gens, B, ring, F.groebner):
        raise InternalContradictionError("Betti table disagrees with the Hilbert series")
    return F


# -- rank exactness at a random point ------------------------------------------


def _random_point(ring: RingSpec, rng: random.Random) -> list:
    p = ring.field.characteristic
    if p:
        return [rng.randrange(1, p) for _ in range(ring.nvars)]
    return [rng.randrange(-1000, 1000) or 1 for _ in range(ring.nvars)]


def evaluated_rank(M: GradedMatrix, point, p: int) -> int:
    rows: dict = {}
    for i, col in enumerate(M.columns):
        for t, f in col.comps.items():
            v = f.evaluate(point)
            if v:
                rows.setdefault(t, {})[i] = v
    return matrix_rank(rows.values(), p)


def rank_profile(F: GradedFreeResolution, seed: int = 0, attempts: int = 5) -> list:
    """Ranks of ∂_1..∂_s at a random point where the complex is split exact.

    Exactness away from V(I) forces ``rank ∂_n + rank ∂_{n+1} = rank F_n``;
    points on V(I) (or unlucky points) are retried.
    """
    rng = random.Random(seed)
    p = F.ring.field.characteristic
    ranks = F.ranks
    for _ in range(attempts):
        point = _random_point(F.ring, rng)
        r = [evaluated_rank(M, point, p) for M in F.differentials] + [0]
        if all(r[n - 1] + r[n] == ranks[n] for n in range(1, F.length + 1)) and (not r[:-1] or r[0] == 1):
            return r[:-1]
    raise InternalContradictionError("no point found where the resolution is split exact")
