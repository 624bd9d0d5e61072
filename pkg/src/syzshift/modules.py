"""Graded free modules ``F = ⊕ S(-j)``, their elements, and graded matrices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .algebra import ZERO, Polynomial, RingSpec
from .errors import ContractError, DimensionError, RingMismatchError


@dataclass(frozen=True)
class GradedFreeModule:
    shifts: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "shifts", tuple(self.shifts))

    @property
    def rank(self) -> int:
        return len(self.shifts)


class ModuleElement:
    """Sparse vector ``{basis index: nonzero Polynomial}``."""

    __slots__ = ("ring", "comps")

    def __init__(self, ring: RingSpec, comps: Mapping[int, Polynomial] | None = None):
        self.ring = ring
        self.comps = {i: f for i, f in (comps or {}).items() if f}

    @classmethod
    def basis(cls, ring: RingSpec, i: int) -> "ModuleElement":
        return cls(ring, {i: ring.constant(1)})

    @classmethod
    def from_list(cls, ring: RingSpec, entries: Iterable[Polynomial]) -> "ModuleElement":
        return cls(ring, dict(enumerate(entries)))

    def is_zero(self) -> bool:
        return not self.comps

    def __bool__(self):
        return bool(self.comps)

    def __getitem__(self, i: int) -> Polynomial:
        return self.comps.get(i) or self.ring.zero()

    def to_list(self, rank: int) -> list:
        return [self[i] for i in range(rank)]

    def items(self):
        return sorted(self.comps.items())

    def max_index(self) -> int:
        return max(self.comps, default=-1)

    def _check(self, other: "ModuleElement"):
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        self._check(other)
        out = dict(self.comps)
        for i, f in other.comps.items():
            out[i] = out[i] + f if i in out else f
        return ModuleElement(self.ring, out)

    def __neg__(self):
        return ModuleElement(self.ring, {i: -f for i, f in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        """Scale by a polynomial or a field scalar."""
        if isinstance(c, Polynomial):
            return ModuleElement(self.ring, {i: c * f for i, f in self.comps.items()})
        return ModuleElement(self.ring, {i: f.scale(c) for i, f in self.comps.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return self.ring == other.ring and self.comps == other.comps

    def __hash__(self):
        return hash(tuple(sorted((i, hash(f)) for i, f in self.comps.items())))

    def __repr__(self):
        if not self.comps:
            return "0"
        return " + ".join(f"({f})*e{i}" for i, f in self.items())


def element_degree(v: ModuleElement, F: GradedFreeModule):
    """Degree of a homogeneous element of ``F``; ``None`` if mixed, ``ZERO`` for 0."""
    if not v.comps:
        return ZERO
    degs = set()
    for i, f in v.comps.items():
        if i >= F.rank:
            raise DimensionError(f"component {i} outside module of rank {F.rank}")
        hd = f.homogeneous_degree()
        if hd is None:
            return None
        degs.add(hd + F.shifts[i])
    return degs.pop() if len(degs) == 1 else None


class GradedMatrix:
    """Map ``source -> target``; ``columns[i]`` is the image of the i-th source basis element."""

    def __init__(self, ring: RingSpec, source: GradedFreeModule, target: GradedFreeModule,
                 columns: list):
        if len(columns) != source.rank:
            raise DimensionError(f"{len(columns)} columns for source of rank {source.rank}")
        for col in columns:
            if col.max_index() >= target.rank:
                raise DimensionError("column entry outside target module")
        self.ring = ring
        self.source = source
        self.target = target
        self.columns = list(columns)

    @property
    def shape(self) -> tuple:
        return (self.target.rank, self.source.rank)

    def entry(self, t: int, i: int) -> Polynomial:
        return self.columns[i][t]

    def is_homogeneous(self) -> bool:
        for i, col in enumerate(self.columns):
            for t, f in col.comps.items():
                hd = f.homogeneous_degree()
                if hd is None or hd != self.source.shifts[i] - self.target.shifts[t]:
                    return False
        return True

    def constant_entries(self) -> list:
        return [(t, i) for i, col in enumerate(self.columns)
                for t, f in col.comps.items() if f.is_constant()]

    def rows(self) -> list:
        """Row-major dense copy, mostly for printing and small tests."""
        return [[self.entry(t, i) for i in range(self.source.rank)]
                for t in range(self.target.rank)]

    def __eq__(self, other):
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        return (self.ring == other.ring and self.source == other.source
                and self.target == other.target and self.columns == other.columns)

    def __repr__(self):
        return f"GradedMatrix({self.target.rank}x{self.source.rank}, source shifts {self.source.shifts})"


def identity_matrix(ring: RingSpec, F: GradedFreeModule) -> GradedMatrix:
    return GradedMatrix(ring, F, F, [ModuleElement.basis(ring, i) for i in range(F.rank)])


def matrix_from_rows(ring: RingSpec, rows: list, source_shifts=None, target_shifts=None) -> GradedMatrix:
    """Convenience constructor from a dense row-major list of polynomials.

    Missing shifts are inferred: target shifts default to 0 and each source
    shift is the degree of the column's first nonzero entry plus its row shift.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    target_shifts = tuple(target_shifts) if target_shifts is not None else (0,) * nrows
    cols = [ModuleElement(ring, {t: rows[t][i] for t in range(nrows)}) for i in range(ncols)]
    if source_shifts is None:
        source_shifts = []
        for col in cols:
            if not col:
                raise ContractError("cannot infer the shift of a zero column")
            t, f = col.items()[0]
            source_shifts.append(f.degree() + target_shifts[t])
    return GradedMatrix(ring, GradedFreeModule(tuple(source_shifts)),
                        GradedFreeModule(target_shifts), cols)


def apply(M: GradedMatrix, v: ModuleElement) -> ModuleElement:
    if v.max_index() >= M.source.rank:
        raise DimensionError(f"element index {v.max_index()} outside source of rank {M.source.rank}")
    out = ModuleElement(M.ring)
    for i, f in v.comps.items():
        out = out + M.columns[i] * f
    return out


def compose(A: GradedMatrix, B: GradedMatrix) -> GradedMatrix:
    if B.target != A.source:
        raise DimensionError(f"cannot compose: {B.target} is not {A.source}")
    return GradedMatrix(A.ring, B.source, A.target, [apply(A, col) for col in B.columns])


def compose_is_zero(A: GradedMatrix, B: GradedMatrix) -> bool:
    """True iff ``A ∘ B == 0``, checked column by column with exact arithmetic."""
    if B.target.rank != A.source.rank:
        raise DimensionError(f"cannot compose: {B.target} is not {A.source}")
    return all(apply(A, col).is_zero() for col in B.columns)
