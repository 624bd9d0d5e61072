"""Buchberger's algorithm for ideals and submodules of graded free modules.

Internally a module element is a dict ``{term key: coefficient}``.  A term
key is a single int that encodes the basis index and the monomial so that
int comparison is the module order and multiplying by a monomial ``q`` is
``key + order.shift(q)``.  Two orders are provided:

* ``PositionOrder`` – position over term (lower index wins), then the ring order.
* ``SchreyerOrder`` – compare the image monomial ``m * lead(e_i)`` first, break
  ties by a per-basis-element rank.  Used on every level of a resolution.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import FIELD_MASK, Polynomial, RingSpec
from .errors import BudgetExceededError, ContractError, DimensionError
from .modules import GradedFreeModule, GradedMatrix, ModuleElement, element_degree

DEFAULT_BUDGET = 10**7


class PositionOrder:
    def __init__(self, ring: RingSpec, shifts: Sequence[int]):
        self.ring = ring
        self.shifts = tuple(shifts)
        self.rank = len(self.shifts)
        self.mb = ring.bits
        self.mmask = (1 << self.mb) - 1

    def key(self, i: int, m: int) -> int:
        return ((self.rank - 1 - i) << self.mb) | m

    def slot(self, k: int) -> int:
        return k >> self.mb

    def comp(self, k: int) -> int:
        return self.rank - 1 - (k >> self.mb)

    def total(self, k: int) -> int:
        return k & self.mmask

    def shift(self, q: int) -> int:
        return q

    def degree(self, k: int) -> int:
        return (k & FIELD_MASK) + self.shifts[self.rank - 1 - (k >> self.mb)]

    def split(self, k: int) -> tuple:
        return self.comp(k), k & self.mmask

    def describe(self) -> str:
        return f"position-over-{self.ring.order}"


class SchreyerOrder:
    """Schreyer order induced by ``leads`` (image monomials) and tie-break ``ranks``."""

    def __init__(self, ring: RingSpec, leads: Sequence[int], ranks: Sequence[int]):
        self.ring = ring
        self.leads = list(leads)
        self.ranks = list(ranks)
        self.rank = len(self.leads)
        self.cb = max(1, self.rank.bit_length())
        self.cmask = (1 << self.cb) - 1
        self.rinv = {r: i for i, r in enumerate(self.ranks)}
        self.shifts = tuple(ring.degree(m) for m in self.leads)

    def key(self, i: int, m: int) -> int:
        return ((m + self.leads[i]) << self.cb) | self.ranks[i]

    def slot(self, k: int) -> int:
        return k & self.cmask

    def comp(self, k: int) -> int:
        return self.rinv[k & self.cmask]

    def total(self, k: int) -> int:
        return k >> self.cb

    def shift(self, q: int) -> int:
        return q << self.cb

    def degree(self, k: int) -> int:
        return (k >> self.cb) & FIELD_MASK

    def split(self, k: int) -> tuple:
        i = self.rinv[k & self.cmask]
        return i, (k >> self.cb) - self.leads[i]

    def describe(self) -> str:
        return f"schreyer-{self.ring.order}"


# -- conversions ---------------------------------------------------------------


def to_vec(v: ModuleElement, order) -> dict:
    out = {}
    key = order.key
    for i, f in v.comps.items():
        for m, c in f.terms.items():
            out[key(i, m)] = c
    return out


def from_vec(vec: dict, order, ring: RingSpec) -> ModuleElement:
    comps: dict[int, dict] = {}
    split = order.split
    for k, c in vec.items():
        i, m = split(k)
        comps.setdefault(i, {})[m] = c
    return ModuleElement(ring, {i: Polynomial(ring, t) for i, t in comps.items()})


def _vec_add_scaled(acc: dict, vec: dict, c, s: int, p: int):
    """``acc += c * shift(s) * vec`` in place."""
    get = acc.get
    if p:
        for k, v in vec.items():
            nk = k + s
            w = (get(nk, 0) + c * v) % p
            if w:
                acc[nk] = w
            else:
                acc.pop(nk, None)
    else:
        for k, v in vec.items():
            nk = k + s
            w = get(nk, 0) + c * v
            if w:
                acc[nk] = w
            else:
                acc.pop(nk, None)


# -- reduction -------------------------------------------------------------------


def _reduce(f: dict, basis: list, index: dict, order, p: int, quotients=None) -> dict:
    """Fully reduce ``f`` (consumed) modulo ``basis``; return the remainder.

    ``basis[j]`` is ``(lead_key, tail)`` with lead coefficient 1 and ``tail`` a
    list of ``(key, coeff)``.  ``index`` maps slot -> ``[(lead_total, j), ...]``.
    If ``quotients`` is a list of dicts, ``quotients[j][q] += c`` records each
    step ``f -= c * q * basis[j]``.
    """
    ring = order.ring
    em, g = ring.exp_mask, ring.guard
    slot, total, shift = order.slot, order.total, order.shift
    heap = [-k for k in f]
    heapq.heapify(heap)
    push, pop = heapq.heappush, heapq.heappop
    rem = {}
    while heap:
        k = -pop(heap)
        c = f.pop(k, None)
        if c is None:
            continue
        t = total(k)
        te = (t & em) | g
        for lt, j in index.get(slot(k), ()):
            if ((te - (lt & em)) & g) == g:
                break
        else:
            rem[k] = c
            continue
        q = t - lt
        s = shift(q)
        if p:
            for kk, cc in basis[j][1]:
                nk = kk + s
                old = f.get(nk)
                if old is None:
                    f[nk] = -c * cc % p
                    push(heap, -nk)
                else:
                    v = (old - c * cc) % p
                    if v:
                        f[nk] = v
                    else:
                        del f[nk]
        else:
            for kk, cc in basis[j][1]:
                nk = kk + s
                old = f.get(nk)
                if old is None:
                    f[nk] = -c * cc
                    push(heap, -nk)
                else:
                    v = old - c * cc
                    if v:
                        f[nk] = v
                    else:
                        del f[nk]
        if quotients is not None:
            qd = quotients[j]
            v = qd.get(q, 0) + c
            if p:
                v %= p
            if v:
                qd[q] = v
            else:
                qd.pop(q, None)
    return rem


def _monic(vec: dict, field) -> tuple:
    """Return ``(lead, tail, scale)`` with the lead coefficient normalised to 1."""
    lead = max(vec)
    inv = field.inv(vec[lead])
    p = field.characteristic
    if p:
        tail = [(k, vec[k] * inv % p) for k in sorted(vec, reverse=True) if k != lead]
    else:
        tail = [(k, vec[k] * inv) for k in sorted(vec, reverse=True) if k != lead]
    return lead, tail, inv


def _as_vec(elem) -> dict:
    lead, tail = elem
    d = dict(tail)
    d[lead] = 1
    return d


@dataclass
class _Run:
    elems: list
    reps: list | None
    kept: list
    pairs_reduced: int = 0


def _combine_reps(base: dict, quot: list, reps: list, p: int, order_rep) -> dict:
    """``base - sum_j quot[j] * reps[j]`` with ``quot[j]`` a dict monomial -> coeff."""
    for j, qd in enumerate(quot):
        for q, c in qd.items():
            _vec_add_scaled(base, reps[j], -c if not p else (p - c) % p, order_rep.shift(q), p)
    return base


def _buchberger(gens: list, order, field, *, order_rep=None, max_degree=None,
                budget=DEFAULT_BUDGET, ideal=False) -> _Run:
    """Core Buchberger loop over dict vectors.

    Homogeneous input is processed degree by degree, S-pairs of a degree before
    the input generators of that degree; the indices of input generators that
    survive reduction at insertion time (``kept``) then form a minimal
    generating set.  With ``order_rep`` each basis element carries its
    expression in terms of the input generators.
    """
    p = field.characteristic
    ring = order.ring
    em, g = ring.exp_mask, ring.guard
    track = order_rep is not None
    homogeneous = all(len({order.degree(k) for k in v}) <= 1 for v in gens)
    if max_degree is not None and not homogeneous:
        raise ContractError("degree truncation needs homogeneous input")

    elems: list = []   # (lead, tail)
    totals: list = []
    slots: list = []
    index: dict = {}
    reps: list = []
    kept: list = []
    pairs = []         # heap of (deg, lcm key, i, j)
    live = set()
    pair_lcm = {}

    def divides(a, b):
        return ((((b & em) | g) - (a & em)) & g) == g

    def insert(vec, rep):
        lead, tail, inv = _monic(vec, field)
        if track:
            for k in rep:
                rep[k] = rep[k] * inv % p if p else rep[k] * inv
        j = len(elems)
        t = order.total(lead)
        s = order.slot(lead)
        # Gebauer-Moeller update
        cands = []
        for i in range(j):
            if slots[i] != s:
                continue
            L = ring.lcm(totals[i], t)
            cands.append((L, i))
        for (a, b) in list(live):
            if slots[a] != s:
                continue
            L = pair_lcm[(a, b)]
            if divides(t, L) and ring.lcm(totals[a], t) != L and ring.lcm(totals[b], t) != L:
                live.discard((a, b))
        by_lcm: dict = {}
        for L, i in cands:
            by_lcm.setdefault(L, []).append(i)
        survivors = []
        for L in sorted(by_lcm, key=lambda x: (ring.degree(x), x)):
            if any(divides(M, L) and M != L for M in by_lcm):
                continue
            group = by_lcm[L]
            if ideal and any(ring.lcm(totals[i], t) == totals[i] + t for i in group):
                continue
            survivors.append((L, min(group)))
        elems.append((lead, tail))
        totals.append(t)
        slots.append(s)
        index.setdefault(s, []).append((t, j))
        reps.append(rep)
        for L, i in survivors:
            lk = lead + order.shift(L - t)
            live.add((i, j))
            pair_lcm[(i, j)] = L
            heapq.heappush(pairs, (order.degree(lk), lk, i, j))

    gen_queue = []
    for n, v in enumerate(gens):
        if not v:
            continue
        deg = order.degree(max(v)) if homogeneous else -1
        gen_queue.append((deg, n))
    gen_queue.sort()
    gpos = 0
    reduced = 0
    while True:
        while pairs and pairs[0][2:] not in live:
            heapq.heappop(pairs)
        next_pair = pairs[0][0] if pairs else None
        next_gen = gen_queue[gpos][0] if gpos < len(gen_queue) else None
        if next_pair is None and next_gen is None:
            break
        take_pair = next_gen is None or (next_pair is not None and next_pair <= next_gen)
        deg = next_pair if take_pair else next_gen
        if max_degree is not None and deg > max_degree:
            break
        if take_pair:
            _, lk, i, j = heapq.heappop(pairs)
            live.discard((i, j))
            reduced += 1
            if reduced > budget:
                raise BudgetExceededError(budget)
            L = pair_lcm.pop((i, j))
            si = order.shift(L - totals[i])
            sj = order.shift(L - totals[j])
            f = {}
            for kk, cc in elems[i][1]:
                f[kk + si] = cc
            mp = p - 1 if p else -1
            _vec_add_scaled(f, dict(elems[j][1]), mp, sj, p)
            quot = [dict() for _ in elems] if track else None
            r = _reduce(f, elems, index, order, p, quot)
            if r:
                rep = None
                if track:
                    rep = {}
                    _vec_add_scaled(rep, reps[i], 1, order_rep.shift(L - totals[i]), p)
                    _vec_add_scaled(rep, reps[j], mp, order_rep.shift(L - totals[j]), p)
                    _combine_reps(rep, quot, reps, p, order_rep)
                insert(r, rep)
        else:
            _, n = gen_queue[gpos]
            gpos += 1
            quot = [dict() for _ in elems] if track else None
            r = _reduce(dict(gens[n]), elems, index, order, p, quot)
            if r:
                rep = None
                if track:
                    rep = {order_rep.key(n, ring.one): 1}
                    _combine_reps(rep, quot, reps, p, order_rep)
                kept.append(n)
                insert(r, rep)
    return _Run(elems, reps if track else None, kept, reduced)


def _finish(run: _Run, order, field, order_rep=None, interreduce=True) -> tuple:
    """Drop redundant elements, interreduce, and sort by lead key (ascending)."""
    ring = order.ring
    p = field.characteristic
    elems, reps = run.elems, run.reps
    alive = []
    for j, (lead, _) in enumerate(elems):
        t, s = order.total(lead), order.slot(lead)
        if any(k != j and order.slot(elems[k][0]) == s and ring.divides(order.total(elems[k][0]), t)
               and (order.total(elems[k][0]) != t or k < j) for k in range(len(elems))):
            continue
        alive.append(j)
    out_elems, out_reps = [], []
    for j in alive:
        lead, tail = elems[j]
        if interreduce and tail:
            others = [elems[k] for k in alive if k != j]
            idx: dict = {}
            for n, (ld, _) in enumerate(others):
                idx.setdefault(order.slot(ld), []).append((order.total(ld), n))
            quot = [dict() for _ in others] if reps is not None else None
            r = _reduce(dict(tail), others, idx, order, p, quot)
            tail = sorted(r.items(), reverse=True)
            if reps is not None:
                rep = dict(reps[j])
                _combine_reps(rep, quot, [reps[k] for k in alive if k != j], p, order_rep)
                out_reps.append(rep)
        elif reps is not None:
            out_reps.append(dict(reps[j]))
        out_elems.append((lead, tail))
    perm = sorted(range(len(out_elems)), key=lambda n: out_elems[n][0])
    out_elems = [out_elems[n] for n in perm]
    if reps is not None:
        out_reps = [out_reps[n] for n in perm]
    return out_elems, (out_reps if reps is not None else None)


# -- public API ------------------------------------------------------------------


@dataclass
class GroebnerBasis:
    """A Gröbner basis of a submodule of a graded free module.

    ``generators`` is a list of ``ModuleElement`` (rank-1 modules are ideals;
    see ``polynomials``).  ``representations[i]``, when tracked, expresses
    ``generators[i]`` in terms of the original input generators.
    """

    ring: RingSpec
    module: GradedFreeModule
    order: object
    elements: list
    reduced: bool
    truncated_at: int | None = None
    reps: list | None = None
    rep_order: object = None
    index: dict = field(default_factory=dict)

    def __post_init__(self):
        self.index = {}
        for j, (lead, _) in enumerate(self.elements):
            self.index.setdefault(self.order.slot(lead), []).append((self.order.total(lead), j))

    def __len__(self):
        return len(self.elements)

    @property
    def generators(self) -> list:
        return [from_vec(_as_vec(e), self.order, self.ring) for e in self.elements]

    @property
    def polynomials(self) -> list:
        return [v[0] for v in self.generators]

    @property
    def representations(self) -> list | None:
        if self.reps is None:
            return None
        return [from_vec(r, self.rep_order, self.ring) for r in self.reps]

    def lead_monomials(self) -> list:
        """``(basis index, packed monomial)`` of every lead term."""
        return [self.order.split(lead) for lead, _ in self.elements]

    @property
    def order_name(self) -> str:
        return self.order.describe()

    @classmethod
    def from_generators(cls, gens, module: GradedFreeModule | None = None, ring: RingSpec | None = None):
        """Wrap elements as-is (made monic) without completing them; for ``check_basis``."""
        ring, module, vecs, order = _prepare(gens, module, ring)
        elems = []
        for v in vecs:
            if v:
                lead, tail, _ = _monic(v, ring.field)
                elems.append((lead, tail))
        return cls(ring, module, order, elems, reduced=False)


def _prepare(gens, module, ring):
    gens = list(gens)
    if gens and isinstance(gens[0], Polynomial):
        ring = ring or gens[0].ring
        module = module or GradedFreeModule((0,))
        gens = [ModuleElement(ring, {0: f}) for f in gens]
    elif gens:
        ring = ring or gens[0].ring
    if ring is None:
        raise ContractError("ring is required for an empty generator list")
    if module is None:
        module = GradedFreeModule((0,) * (max((v.max_index() for v in gens), default=-1) + 1 or 1))
    for v in gens:
        if v.max_index() >= module.rank:
            raise DimensionError("generator outside module")
    order = PositionOrder(ring, module.shifts)
    return ring, module, [to_vec(v, order) for v in gens], order


def buchberger(gens, module: GradedFreeModule | None = None, ring: RingSpec | None = None, *,
               track: bool = False, max_degree: int | None = None,
               budget: int = DEFAULT_BUDGET) -> GroebnerBasis:
    """Reduced Gröbner basis (position-over-term order) of the span of ``gens``.

    ``gens`` may be polynomials (an ideal) or module elements of ``module``.
    With ``max_degree`` (homogeneous input only) the basis is complete only
    through that degree.
    """
    ring, module, vecs, order = _prepare(gens, module, ring)
    rep_order = PositionOrder(ring, _rep_shifts(vecs, order)) if track else None
    run = _buchberger(vecs, order, ring.field, order_rep=rep_order, max_degree=max_degree,
                      budget=budget, ideal=module.rank == 1)
    elems, reps = _finish(run, order, ring.field, rep_order)
    return GroebnerBasis(ring, module, order, elems, reduced=max_degree is None,
                         truncated_at=max_degree, reps=reps, rep_order=rep_order)


def _rep_shifts(vecs, order):
    return [order.degree(max(v)) if v else 0 for v in vecs]


@dataclass
class ReductionTrace:
    remainder: object
    quotients: list


def normal_form(v, G: GroebnerBasis) -> ReductionTrace:
    """Divide ``v`` by ``G``: ``v == sum(quotients[i] * G.generators[i]) + remainder``."""
    as_poly = isinstance(v, Polynomial)
    if as_poly:
        v = ModuleElement(v.ring, {0: v})
    if v.ring != G.ring:
        raise ContractError("element and basis live over different rings/orders")
    p = G.ring.field.characteristic
    quot = [dict() for _ in G.elements]
    r = _reduce(to_vec(v, G.order), G.elements, G.index, G.order, p, quot)
    rem = from_vec(r, G.order, G.ring)
    quotients = [Polynomial(G.ring, q) for q in quot]
    if as_poly:
        return ReductionTrace(rem[0], quotients)
    return ReductionTrace(rem, quotients)


def check_basis(G: GroebnerBasis) -> bool:
    """Certify ``G`` by reducing every S-pair (no criteria applied)."""
    ring, order = G.ring, G.order
    p = ring.field.characteristic
    els = G.elements
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            if order.slot(els[i][0]) != order.slot(els[j][0]):
                continue
            ti, tj = order.total(els[i][0]), order.total(els[j][0])
            L = ring.lcm(ti, tj)
            f = {}
            for kk, cc in els[i][1]:
                f[kk + order.shift(L - ti)] = cc
            _vec_add_scaled(f, dict(els[j][1]), p - 1 if p else -1, order.shift(L - tj), p)
            if _reduce(f, els, G.index, order, p):
                return False
    return True


def minimal_generators(gens: list, module: GradedFreeModule) -> list:
    """Indices of a minimal generating subset of homogeneous ``gens``."""
    if not gens:
        return []
    ring = gens[0].ring
    order = PositionOrder(ring, module.shifts)
    vecs = [to_vec(v, order) for v in gens]
    perm = sorted(range(len(vecs)), key=lambda n: (order.degree(max(vecs[n])) if vecs[n] else -1, n))
    run = _buchberger([vecs[n] for n in perm], order, ring.field)
    return sorted(perm[n] for n in run.kept)


def tracked_basis(M: GradedMatrix, max_degree: int | None = None,
                  budget: int = DEFAULT_BUDGET, interreduce: bool = True) -> GroebnerBasis:
    """Gröbner basis of the column span of ``M`` with representations in ``M.source``.

    ``interreduce=False`` skips tail reduction; the basis still decides
    membership and lifts, which is all the witness construction needs.
    """
    order = PositionOrder(M.ring, M.target.shifts)
    rep_order = PositionOrder(M.ring, M.source.shifts)
    vecs = [to_vec(c, order) for c in M.columns]
    run = _buchberger(vecs, order, M.ring.field, order_rep=rep_order, max_degree=max_degree,
                      budget=budget, ideal=M.target.rank == 1)
    elems, reps = _finish(run, order, M.ring.field, rep_order, interreduce)
    return GroebnerBasis(M.ring, M.target, order, elems, reduced=max_degree is None and interreduce,
                         truncated_at=max_degree, reps=reps, rep_order=rep_order)


def lift(v: ModuleElement, G: GroebnerBasis) -> ModuleElement | None:
    """Preimage of ``v`` under the matrix behind the tracked basis ``G``; None if ``v`` is not in the image."""
    p = G.ring.field.characteristic
    quot = [dict() for _ in G.elements]
    r = _reduce(to_vec(v, G.order), G.elements, G.index, G.order, p, quot)
    if r:
        return None
    acc: dict = {}
    for j, qd in enumerate(quot):
        for q, c in qd.items():
            _vec_add_scaled(acc, G.reps[j], c, G.rep_order.shift(q), p)
    return from_vec(acc, G.rep_order, G.ring)


def syzygy_basis(M: GradedMatrix, minimal: bool = True, budget: int = DEFAULT_BUDGET) -> GradedMatrix:
    """Generators of ``ker M`` as the columns of a graded matrix ``N`` with ``M∘N = 0``."""
    ring = M.ring
    p = ring.field.characteristic
    for i, col in enumerate(M.columns):
        dg = element_degree(col, M.target)
        if dg is None:
            raise ContractError(f"column {i} is not homogeneous")
    G = tracked_basis(M, budget=budget)
    order, rep_order = G.order, G.rep_order
    els = G.elements
    syz = []
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            if order.slot(els[i][0]) != order.slot(els[j][0]):
                continue
            ti, tj = order.total(els[i][0]), order.total(els[j][0])
            L = ring.lcm(ti, tj)
            f = {}
            for kk, cc in els[i][1]:
                f[kk + order.shift(L - ti)] = cc
            mp = p - 1 if p else -1
            _vec_add_scaled(f, dict(els[j][1]), mp, order.shift(L - tj), p)
            quot = [dict() for _ in els]
            if _reduce(f, els, G.index, order, p, quot):
                raise ContractError("tracked basis is not a Gröbner basis")
            rep = {}
            _vec_add_scaled(rep, G.reps[i], 1, rep_order.shift(L - ti), p)
            _vec_add_scaled(rep, G.reps[j], mp, rep_order.shift(L - tj), p)
            _combine_reps(rep, quot, G.reps, p, rep_order)
            if rep:
                syz.append(rep)
    for n, col in enumerate(M.columns):
        quot = [dict() for _ in els]
        _reduce(to_vec(col, order), els, G.index, order, p, quot)
        rep = {rep_order.key(n, ring.one): 1}
        _combine_reps(rep, quot, G.reps, p, rep_order)
        if rep:
            syz.append(rep)
    elems = [from_vec(r, rep_order, ring) for r in syz]
    degs = [rep_order.degree(max(r)) for r in syz]
    if minimal and elems:
        keep = minimal_generators(elems, M.source)
        elems = [elems[n] for n in keep]
        degs = [degs[n] for n in keep]
    perm = sorted(range(len(elems)), key=lambda n: degs[n])
    return GradedMatrix(ring, GradedFreeModule(tuple(degs[n] for n in perm)), M.source,
                        [elems[n] for n in perm])
