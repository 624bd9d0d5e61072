"""Seeded random ideals and batch searches for shift-inequality violations."""

from __future__ import annotations

import logging
import random
from collections import Counter
from dataclasses import dataclass, field

from .algebra import FieldSpec, RingSpec, format_polynomial
from .errors import ContractError, InternalContradictionError, SyzShiftError
from .groebner import DEFAULT_BUDGET, minimal_generators
from .modules import GradedFreeModule, ModuleElement
from .shifts import analyze

log = logging.getLogger(__name__)

CLASSES = ("generic-monomial", "stable", "squarefree-strongly-stable", "generic-homogeneous")
MONOMIAL_CLASSES = CLASSES[:3]
# classes where full subadditivity of maximal shifts is a theorem
SUBADDITIVE_CLASSES = ("stable", "squarefree-strongly-stable")


@dataclass(frozen=True)
class SearchParams:
    nvars: int = 4
    max_degree: int = 4
    min_gens: int = 1
    max_gens: int = 5
    ideal_class: str = "generic-monomial"
    samples: int = 100
    seed: int = 0
    characteristic: int = 32003
    max_terms: int = 3           # generic-homogeneous only

    def __post_init__(self):
        if self.ideal_class not in CLASSES:
            raise ContractError(f"unknown ideal class {self.ideal_class!r}; choose from {', '.join(CLASSES)}")
        for name in ("nvars", "max_degree", "min_gens", "max_gens", "max_terms"):
            if getattr(self, name) < 1:
                raise ContractError(f"{name} must be positive")
        if self.samples < 0:
            raise ContractError("samples must be nonnegative")
        if self.min_gens > self.max_gens:
            raise ContractError("min_gens exceeds max_gens")
        if self.ideal_class == "squarefree-strongly-stable" and self.max_degree > self.nvars:
            raise ContractError("squarefree generators need max_degree <= nvars")
        try:
            FieldSpec(self.characteristic)
        except ValueError as e:
            raise ContractError(str(e)) from None

    def ring(self) -> RingSpec:
        names = [f"x{i + 1}" for i in range(self.nvars)]
        return RingSpec(FieldSpec(self.characteristic), names)


# -- exponent-vector helpers -------------------------------------------------------


def monomials_of_degree(d: int, n: int) -> list:
    """All exponent vectors of total degree ``d`` in ``n`` variables (lex-descending)."""
    if n == 1:
        return [(d,)]
    return [(e,) + rest for e in range(d, -1, -1) for rest in monomials_of_degree(d - e, n - 1)]


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def minimal_monomials(ms) -> list:
    ms = sorted(set(ms), key=lambda e: (sum(e), tuple(-x for x in e)))
    out = []
    for m in ms:
        if not any(_divides(g, m) for g in out):
            out.append(m)
    return out


def stable_closure(ms) -> list:
    """Close under ``m -> x_j * m / x_i`` for ``i`` the largest index in ``supp m`` and ``j < i``.

    Returns the minimal generators of the resulting stable ideal.
    """
    seen = set(ms)
    todo = list(seen)
    while todo:
        m = todo.pop()
        i = max((k for k, e in enumerate(m) if e), default=None)
        if i is None:
            continue
        for j in range(i):
            u = list(m)
            u[i] -= 1
            u[j] += 1
            u = tuple(u)
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return minimal_monomials(seen)


def squarefree_strongly_stable_closure(ms) -> list:
    """Close squarefree monomials under ``m -> x_j * m / x_i`` with ``x_i | m``, ``x_j ∤ m``, ``j < i``."""
    for m in ms:
        if any(e > 1 for e in m):
            raise ContractError(f"{m} is not squarefree")
    seen = set(ms)
    todo = list(seen)
    while todo:
        m = todo.pop()
        for i, e in enumerate(m):
            if not e:
                continue
            for j in range(i):
                if m[j]:
                    continue
                u = list(m)
                u[i] = 0
                u[j] = 1
                u = tuple(u)
                if u not in seen:
                    seen.add(u)
                    todo.append(u)
    return minimal_monomials(seen)


# -- sampling ---------------------------------------------------------------------


def _rng(params: SearchParams, index: int) -> random.Random:
    return random.Random(f"syzshift:{params.seed}:{index}")


def _draw_monomials(params: SearchParams, rng: random.Random, squarefree=False) -> list:
    d = params.nvars
    k = rng.randint(params.min_gens, params.max_gens)
    out = set()
    for _ in range(k):
        deg = rng.randint(1, params.max_degree)
        if squarefree:
            support = rng.sample(range(d), deg)
            out.add(tuple(1 if i in support else 0 for i in range(d)))
        else:
            out.add(rng.choice(monomials_of_degree(deg, d)))
    return sorted(out, reverse=True)


def random_ideal(params: SearchParams, index: int) -> list:
    """Minimal generators of the ``index``-th sample; depends only on ``(seed, index)``."""
    rng = _rng(params, index)
    R = params.ring()
    cls = params.ideal_class
    if cls == "generic-homogeneous":
        return _random_homogeneous(params, rng, R)
    ms = _draw_monomials(params, rng, squarefree=cls == "squarefree-strongly-stable")
    if cls == "stable":
        ms = stable_closure(ms)
    elif cls == "squarefree-strongly-stable":
        ms = squarefree_strongly_stable_closure(ms)
    else:
        ms = minimal_monomials(ms)
    return [R.poly({m: 1}) for m in ms]


def _random_homogeneous(params: SearchParams, rng: random.Random, R: RingSpec) -> list:
    p = R.field.characteristic or 101
    k = rng.randint(params.min_gens, params.max_gens)
    gens = []
    for _ in range(k):
        deg = rng.randint(1, params.max_degree)
        pool = monomials_of_degree(deg, params.nvars)
        support = rng.sample(pool, min(len(pool), rng.randint(1, params.max_terms)))
        f = R.poly({m: rng.randrange(1, p) for m in support})
        if f:
            gens.append(f)
    gens.sort(key=lambda f: f.degree())
    keep = minimal_generators([ModuleElement(R, {0: f}) for f in gens], GradedFreeModule((0,)))
    return [gens[i] for i in keep]


# -- search ------------------------------------------------------------------------


@dataclass
class Violation:
    index: int
    category: str        # "subadditivity" or "herzog_srinivasan"
    record: dict
    expected_to_hold: bool

    def as_dict(self) -> dict:
        return {"index": self.index, "category": self.category, "record": self.record,
                "expected_to_hold": self.expected_to_hold}


@dataclass
class SampleResult:
    index: int
    generators: list
    t: list
    T: list


@dataclass
class SearchReport:
    params: SearchParams
    samples: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    skipped: list = field(default_factory=list)       # (index, error message)
    theorem1_tight: Counter = field(default_factory=Counter)
    subadditivity_tight: Counter = field(default_factory=Counter)
    herzog_srinivasan_tight: Counter = field(default_factory=Counter)

    def findings(self) -> list:
        """Violations of statements known to hold for the sampled class."""
        return [v for v in self.violations if v.expected_to_hold]

    def counts(self) -> dict:
        c = Counter(v.category for v in self.violations)
        return {k: c.get(k, 0) for k in ("theorem1", "subadditivity", "herzog_srinivasan")}

    def as_dict(self) -> dict:
        p = self.params
        return {
            "params": {"nvars": p.nvars, "max_degree": p.max_degree, "min_gens": p.min_gens,
                       "max_gens": p.max_gens, "class": p.ideal_class, "samples": p.samples,
                       "seed": p.seed, "characteristic": p.characteristic},
            "analyzed": len(self.samples),
            "skipped": [{"index": i, "error": e} for i, e in self.skipped],
            "violation_counts": self.counts(),
            "violations": [v.as_dict() for v in self.violations],
            "findings": [v.as_dict() for v in self.findings()],
            "tightness": {
                "theorem1": {str(n): c for n, c in sorted(self.theorem1_tight.items())},
                "subadditivity": {f"{a},{b}": c for (a, b), c in sorted(self.subadditivity_tight.items())},
                "herzog_srinivasan": {str(a): c for a, c in sorted(self.herzog_srinivasan_tight.items())},
            },
            "samples": [{"index": s.index, "generators": s.generators, "t": s.t, "T": s.T}
                        for s in self.samples],
        }


def search(params: SearchParams, budget: int = DEFAULT_BUDGET, witnesses: bool = False) -> SearchReport:
    """Analyze every sample and collect inequality violations.

    A failure of ``t_n <= t_1 + T_{n-1}`` (or of Hilbert consistency) is a bug,
    not a counterexample, and raises ``InternalContradictionError``.
    """
    rep = SearchReport(params)
    monomial = params.ideal_class in MONOMIAL_CLASSES
    for index in range(params.samples):
        gens = random_ideal(params, index)
        try:
            A = analyze(gens, params.ring(), witnesses=witnesses, budget=budget)
        except InternalContradictionError:
            raise
        except SyzShiftError as e:
            log.warning("sample %d skipped: %s", index, e)
            rep.skipped.append((index, str(e)))
            continue
        B, ineq = A.betti, A.inequalities
        rep.samples.append(SampleResult(index, [format_polynomial(f) for f in gens], list(B.t), list(B.T)))
        bad = ineq.failures("theorem1")
        if bad or not A.hilbert_consistent:
            what = f"t_n <= t_1 + T_(n-1) fails: {bad}" if bad else "Hilbert series mismatch"
            raise InternalContradictionError(f"sample {index} ({rep.samples[-1].generators}): {what}")
        for r in ineq.theorem1:
            rep.theorem1_tight[r.n] += r.tight
        for r in ineq.subadditivity:
            rep.subadditivity_tight[(r.a, r.b)] += r.tight
            if not r.holds:
                rep.violations.append(Violation(index, "subadditivity", _plain(r),
                                                params.ideal_class in SUBADDITIVE_CLASSES))
        for r in ineq.herzog_srinivasan:
            rep.herzog_srinivasan_tight[r.a] += r.T_next == r.bound
            if not r.holds:
                rep.violations.append(Violation(index, "herzog_srinivasan", _plain(r), monomial))
    return rep


def _plain(r) -> dict:
    return dict(vars(r))

