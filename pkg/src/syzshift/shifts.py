"""Shift inequalities on Betti tables and explicit syzygy witnesses.

The witness construction follows the inductive argument for
``t_n <= t_1 + T_{n-1}``: fix a generator ``g = ∂_1(f_11)`` of minimal degree,
keep lifts ``f_11 * f_{(n-2)i} ∈ F_{n-1}``, and form for each basis element
``f_{(n-1)t}`` the cycle

    Z_t = g * f_{(n-1)t} - sum_i r_ti * (f_11 * f_{(n-2)i})

where ``r_ti`` are the entries of ∂_{n-1}.  A nonzero ``Z_t`` lifts through
∂_n to an element of degree ``t_1 + deg f_{(n-1)t}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .algebra import RingSpec
from .errors import InternalContradictionError
from .groebner import DEFAULT_BUDGET, lift, tracked_basis
from .hilbert import factor_one_minus_q, hilbert_numerator
from .modules import ModuleElement, apply, element_degree
from .resolution import (BettiTable, GradedFreeResolution, betti_table, hilbert_consistency,
                         rank_profile, regularity, resolve)


# -- records -------------------------------------------------------------------


@dataclass
class Theorem1Record:
    n: int
    t_n: int
    bound: int
    holds: bool
    tight: bool


@dataclass
class SubadditivityRecord:
    a: int
    b: int
    T_sum: int
    bound: int
    holds: bool
    tight: bool


@dataclass
class TailRecord:
    n: int
    a: int
    T_n: int
    bound: int
    holds: bool
    tight: bool


@dataclass
class BayerMumfordRecord:
    n: int
    T_n: int
    bound: int | str
    holds: bool


@dataclass
class HerzogSrinivasanRecord:
    a: int
    T_next: int
    bound: int
    holds: bool


@dataclass
class InequalityReport:
    theorem1: list = field(default_factory=list)
    subadditivity: list = field(default_factory=list)
    tail: list = field(default_factory=list)
    bayer_mumford: list = field(default_factory=list)
    herzog_srinivasan: list = field(default_factory=list)

    def failures(self, name: str) -> list:
        return [r for r in getattr(self, name) if not r.holds]


def bayer_mumford_bound(T1: int, m: int, n: int):
    """``(2 T_1)^(2^(m-2)) - 1 + n``; the exponent is clamped to 1 for m < 2.

    Returns an int, or a string when the value is too large to be worth
    materialising (it then exceeds every representable degree anyway).
    """
    e = 2 ** (m - 2) if m >= 2 else 1
    base = 2 * T1
    if base <= 1:
        return base ** e - 1 + n
    if e * math.log2(base) > 62:
        return f"({base})^{e} - 1 + {n}"
    return base ** e - 1 + n


def check_inequalities(B: BettiTable, is_monomial: bool = False, m: int | None = None,
                       h: int | None = None) -> InequalityReport:
    """Evaluate every applicable inequality on a minimal Betti table.

    ``h`` (codimension of a Gorenstein ideal) enables the tail records for
    ``n >= h - 1``; ``m`` is the number of variables for the Bayer-Mumford bound.
    """
    rep = InequalityReport()
    s = B.projdim
    t, T = B.t, B.T
    if s == 0:
        return rep
    for n in range(1, s + 1):
        bound = t[1] + T[n - 1]
        rep.theorem1.append(Theorem1Record(n, t[n], bound, t[n] <= bound, t[n] == bound))
    for a in range(1, s + 1):
        for b in range(a, s + 1 - a):
            bound = T[a] + T[b]
            rep.subadditivity.append(
                SubadditivityRecord(a, b, T[a + b], bound, T[a + b] <= bound, T[a + b] == bound))
    if h is not None:
        for n in range(max(2, h - 1), s + 1):
            for a in range(1, n):
                bound = T[a] + T[n - a]
                rep.tail.append(TailRecord(n, a, T[n], bound, T[n] <= bound, T[n] == bound))
    if m is not None:
        for n in range(1, s + 1):
            bound = bayer_mumford_bound(T[1], m, n)
            holds = True if isinstance(bound, str) else T[n] <= bound
            rep.bayer_mumford.append(BayerMumfordRecord(n, T[n], bound, holds))
    if is_monomial:
        for a in range(1, s):
            bound = T[a] + T[1]
            rep.herzog_srinivasan.append(HerzogSrinivasanRecord(a, T[a + 1], bound, T[a + 1] <= bound))
    return rep


# -- Gorenstein and purity -------------------------------------------------------


@dataclass
class GorensteinInfo:
    is_cm_gorenstein: bool
    h: int
    c: int | None
    duality_ok: bool
    projdim: int
    last_rank: int
    cohen_macaulay: bool
    duality_records: list = field(default_factory=list)   # (a, c - t_{h-a}, T_a, holds)
    top_records: list = field(default_factory=list)       # (a, T_h, T_a + T_{h-a}, holds)
    tail_records: list = field(default_factory=list)      # (a, T_{h-1}, T_a + T_{h-1-a}, holds)
    note: str = "Gorenstein means Cohen-Macaulay with last Betti number 1"


def _codim_from_resolution(F: GradedFreeResolution) -> int:
    if F.groebner is None or not F.groebner.elements:
        return 0
    ring = F.ring
    num = hilbert_numerator([ring.decode(m) for _, m in F.groebner.lead_monomials()])
    return factor_one_minus_q(num)[0]


def detect_gorenstein(F: GradedFreeResolution, B: BettiTable, codim: int | None = None) -> GorensteinInfo:
    h = _codim_from_resolution(F) if codim is None else codim
    s = B.projdim
    last = B.ranks()[s]
    cm = s == h
    gor = s > 0 and cm and last == 1
    info = GorensteinInfo(gor, h, None, False, s, last, cm)
    if not gor:
        return info
    c = B.T[h]
    info.c = c
    keys = set(B.entries) | {(h - a, c - j) for a, j in B.entries}
    info.duality_ok = all(B[(a, j)] == B[(h - a, c - j)] for a, j in keys)
    t, T = B.t, B.T
    for a in range(1, h):
        info.duality_records.append((a, c - t[h - a], T[a], c - t[h - a] == T[a]))
        info.top_records.append((a, T[h], T[a] + T[h - a], T[h] <= T[a] + T[h - a]))
    for a in range(1, h - 1):
        info.tail_records.append((a, T[h - 1], T[a] + T[h - 1 - a], T[h - 1] <= T[a] + T[h - 1 - a]))
    return info


@dataclass
class PurityProfile:
    is_pure: bool
    shifts: list | None = None
    corollary: list = field(default_factory=list)   # (n, T_n, T_1 + T_{n-1}, holds)

    @property
    def corollary_holds(self) -> bool:
        return all(r[3] for r in self.corollary)


def detect_pure(B: BettiTable) -> PurityProfile:
    s = B.projdim
    pure = all(B.t[a] == B.T[a] for a in range(1, s + 1))
    if not pure:
        return PurityProfile(False)
    prof = PurityProfile(True, [B.T[a] for a in range(1, s + 1)])
    for n in range(2, s + 1):
        bound = B.T[1] + B.T[n - 1]
        prof.corollary.append((n, B.T[n], bound, B.T[n] <= bound))
    return prof


# -- witnesses -----------------------------------------------------------------


@dataclass
class WitnessCertificate:
    n: int
    t: int                 # 0-based index of f_{(n-1)t} in F_{n-1}
    generator: int         # 0-based index of f_11 among the columns of ∂_1
    cycle: ModuleElement   # Z in F_{n-1}
    lift: ModuleElement    # f_11 * f_{(n-1)t} in F_n
    degree: int
    bound: int             # t_1 + T_{n-1}
    cycle_is_closed: bool  # ∂_{n-1}(Z) == 0
    lift_ok: bool          # ∂_n(lift) == Z
    cycle_nonzero: bool
    degree_ok: bool        # degree == t_1 + deg f_{(n-1)t} <= bound
    rank_n: int
    rank_prev: int
    beta_prev: int
    rank_argument_ok: bool

    @property
    def verified(self) -> bool:
        return (self.cycle_is_closed and self.lift_ok and self.cycle_nonzero
                and self.degree_ok and self.rank_argument_ok)


def choose_f11(F: GradedFreeResolution) -> int:
    """Minimal-degree generator; ties broken by the larger lead term, then index."""
    cols = F.differential(1).columns
    shifts = F.module(1).shifts

    def key(i):
        return (shifts[i], -cols[i][0].lead_monomial(), i)

    return min(range(len(cols)), key=key)


class WitnessBuilder:
    """Builds the lifts ``f_11 * f_{(n-1)t}`` level by level and caches them."""

    def __init__(self, F: GradedFreeResolution, B: BettiTable | None = None,
                 budget: int = DEFAULT_BUDGET, seed: int = 0):
        if not F.minimal:
            raise InternalContradictionError("witnesses need a minimal resolution")
        self.F = F
        self.B = B or betti_table(F)
        self.budget = budget
        self.ring = F.ring
        self.f11 = choose_f11(F) if F.length else None
        self.g = F.differential(1).columns[self.f11][0] if F.length else None
        # lifts[n][i] = f_11 * f_{(n-1)i} in F_n; level 1 is f_11 itself
        self.lifts = {1: [ModuleElement.basis(self.ring, self.f11)]} if F.length else {}
        self.cycles = {}
        self._ranks = rank_profile(F, seed) if F.length else []

    def _cycles(self, n: int) -> list:
        """Z(f_11, f_{(n-1)t}) for every t."""
        F = self.F
        prev = self.lifts[n - 1]
        D = F.differential(n - 1)
        out = []
        for t in range(F.module(n - 1).rank):
            Z = ModuleElement.basis(self.ring, t) * self.g
            for i, r in D.columns[t].comps.items():
                if prev[i]:
                    Z = Z - prev[i] * r
            out.append(Z)
        return out

    def _build(self, n: int):
        for k in range(2, n + 1):
            if k in self.lifts:
                continue
            Zs = self._cycles(k)
            self.cycles[k] = Zs
            D = self.F.differential(k)
            bound = self.B.t[1] + self.B.T[k - 1]
            G = tracked_basis(D, max_degree=bound, budget=self.budget, interreduce=False)
            lifts = []
            for t, Z in enumerate(Zs):
                if not Z:
                    lifts.append(ModuleElement(self.ring))
                    continue
                u = lift(Z, G)
                if u is None:
                    raise InternalContradictionError(f"cycle Z(f_11, f_({k - 1}){t}) is not a boundary")
                lifts.append(u)
            self.lifts[k] = lifts

    def certificate(self, n: int) -> WitnessCertificate:
        F, B = self.F, self.B
        if not 2 <= n <= F.length:
            raise ValueError(f"witness step must satisfy 2 <= n <= projdim = {F.length}")
        self._build(n)
        Zs = self.cycles[n]
        try:
            t = next(i for i, Z in enumerate(Zs) if Z)
        except StopIteration:
            raise InternalContradictionError(
                f"every cycle Z(f_11, f_({n - 1})t) vanishes at step {n}") from None
        Z, u = Zs[t], self.lifts[n][t]
        prevmod = F.module(n - 1)
        deg = element_degree(Z, prevmod)
        expected = B.t[1] + prevmod.shifts[t]
        bound = B.t[1] + B.T[n - 1]
        closed = n - 1 == 0 or apply(F.differential(n - 1), Z).is_zero()
        lift_ok = apply(F.differential(n), u) == Z
        rank_n = self._ranks[n - 1]
        rank_prev = self._ranks[n - 2]
        beta_prev = prevmod.rank
        rank_ok = rank_n + rank_prev == beta_prev and rank_n > 0 and rank_prev < beta_prev
        return WitnessCertificate(
            n=n, t=t, generator=self.f11, cycle=Z, lift=u, degree=deg, bound=bound,
            cycle_is_closed=closed, lift_ok=lift_ok, cycle_nonzero=bool(Z),
            degree_ok=deg == expected and deg <= bound and B.t[n] <= deg,
            rank_n=rank_n, rank_prev=rank_prev, beta_prev=beta_prev, rank_argument_ok=rank_ok)


def construct_witness(F: GradedFreeResolution, n: int, budget: int = DEFAULT_BUDGET) -> WitnessCertificate:
    return WitnessBuilder(F, budget=budget).certificate(n)


# -- full pipeline ---------------------------------------------------------------


@dataclass
class Analysis:
    ring: RingSpec
    generators: list
    resolution: GradedFreeResolution
    betti: BettiTable
    regularity: int
    inequalities: InequalityReport
    gorenstein: GorensteinInfo
    purity: PurityProfile
    witnesses: list
    hilbert_consistent: bool
    is_monomial: bool

    def theorem_failures(self) -> list:
        """Names of proven statements that failed on this input (must be empty)."""
        out = []
        ineq = self.inequalities
        if ineq.failures("theorem1"):
            out.append("theorem1")
        if ineq.failures("tail"):
            out.append("tail")
        if ineq.failures("bayer_mumford"):
            out.append("bayer_mumford")
        if self.is_monomial and ineq.failures("herzog_srinivasan"):
            out.append("herzog_srinivasan")
        g = self.gorenstein
        if g.is_cm_gorenstein and not (g.duality_ok and all(r[3] for r in g.duality_records)
                                       and all(r[3] for r in g.top_records)
                                       and all(r[3] for r in g.tail_records)):
            out.append("gorenstein")
        if self.purity.is_pure and not self.purity.corollary_holds:
            out.append("pure")
        if not all(w.verified for w in self.witnesses):
            out.append("witness")
        if not self.hilbert_consistent:
            out.append("hilbert")
        return out

    def informational(self) -> list:
        return self.inequalities.failures("subadditivity")


def analyze(I, ring: RingSpec | None = None, *, witnesses: bool = True,
            budget: int = DEFAULT_BUDGET) -> Analysis:
    """Resolve, tabulate, and run every check on ``S/I``."""
    I = list(I)
    if ring is None:
        ring = I[0].ring
    gens = [f for f in I if f]
    F = resolve(gens, ring, budget)
    B = betti_table(F)
    consistent = hilbert_consistency(gens, B, ring, F.groebner)
    monomial = all(f.is_monomial() for f in gens)
    gor = detect_gorenstein(F, B)
    ineq = check_inequalities(B, monomial, ring.nvars, gor.h if gor.is_cm_gorenstein else None)
    certs = []
    if witnesses and F.length >= 2:
        wb = WitnessBuilder(F, B, budget)
        certs = [wb.certificate(n) for n in range(2, F.length + 1)]
    return Analysis(ring, gens, F, B, regularity(B), ineq, gor, detect_pure(B), certs,
                    consistent, monomial)
