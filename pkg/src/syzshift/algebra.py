"""Exact multivariate polynomial arithmetic over GF(p) or QQ.

A monomial is packed into one Python int laid out (low bits first) as

    [total degree : W] [exponent of x_i : W each, top bit is a guard] [order key]

The order key is a linear function of the exponents whose integer value
sorts like the ring's monomial order, so multiplying monomials is integer
addition and comparing them is integer comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DegreeError, DimensionError, RingMismatchError

W = 16
FIELD_MASK = (1 << W) - 1
MAX_DEGREE = (1 << (W - 1)) - 1
ORDERS = ("grevlex", "lex")
DEFAULT_CHARACTERISTIC = 32003


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """GF(p) when ``characteristic`` is a prime, QQ when it is 0."""

    characteristic: int = DEFAULT_CHARACTERISTIC

    def __post_init__(self):
        p = self.characteristic
        if p != 0:
            if not (2 <= p < 2**31) or not _is_prime(p):
                raise ValueError(f"GF({p}): modulus must be a prime below 2^31")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(0)

    @property
    def is_prime_field(self) -> bool:
        return self.characteristic != 0

    def __call__(self, value):
        p = self.characteristic
        if p:
            if isinstance(value, Fraction):
                return value.numerator * pow(value.denominator, -1, p) % p
            return int(value) % p
        return Fraction(value)

    def inv(self, a):
        p = self.characteristic
        if p:
            return pow(a, -1, p)
        return 1 / Fraction(a)

    def signed(self, a):
        """Representative used for printing: GF(p) elements in (-p/2, p/2]."""
        p = self.characteristic
        if p and a > p // 2:
            return a - p
        return a

    def __str__(self):
        return f"GF({self.characteristic})" if self.characteristic else "QQ"


class _ZeroMarker:
    __slots__ = ()

    def __repr__(self):
        return "ZERO"

    def __bool__(self):
        return False


ZERO = _ZeroMarker()


class RingSpec:
    """Polynomial ring ``field[variables]`` with a monomial order.

    Variable order is authoritative: ``variables[0] > variables[1] > ...``.
    """

    def __init__(self, field: FieldSpec, variables: Iterable[str], order: str = "grevlex"):
        variables = tuple(variables)
        if not variables:
            raise ValueError("a ring needs at least one variable")
        if any(not v for v in variables) or len(set(variables)) != len(variables):
            raise ValueError(f"variable names must be unique and nonempty: {variables}")
        if order not in ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        self.field = field
        self.variables = variables
        self.order = order
        self.nvars = d = len(variables)
        self.index = {v: i for i, v in enumerate(variables)}
        self._exp_shifts = [W + W * i for i in range(d)]
        self._key_shift = W * (d + 1)
        self.exp_mask = ((1 << (W * d)) - 1) << W
        self.guard = sum(1 << (s + W - 1) for s in self._exp_shifts)
        self.bits = self._key_shift + W * d
        self.one = 0

    def __eq__(self, other):
        return (
            isinstance(other, RingSpec)
            and self.field == other.field
            and self.variables == other.variables
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.field, self.variables, self.order))

    def __repr__(self):
        return f"RingSpec({self.field}[{','.join(self.variables)}], {self.order})"

    def with_order(self, order: str) -> "RingSpec":
        return RingSpec(self.field, self.variables, order)

    def with_field(self, field: FieldSpec) -> "RingSpec":
        return RingSpec(field, self.variables, self.order)

    # -- monomial encoding -------------------------------------------------

    def encode(self, exps: Iterable[int]) -> int:
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise DimensionError(f"expected {self.nvars} exponents, got {len(exps)}")
        if any(e < 0 for e in exps):
            raise DegreeError(f"negative exponent in {exps}")
        deg = sum(exps)
        if deg > MAX_DEGREE:
            raise DegreeError(f"total degree {deg} exceeds {MAX_DEGREE}")
        d = self.nvars
        key = 0
        if self.order == "grevlex":
            s = 0
            for i, e in enumerate(exps):
                s += e
                key |= s << (W * i)
        else:
            for i, e in enumerate(exps):
                key |= e << (W * (d - 1 - i))
        packed = deg
        for s, e in zip(self._exp_shifts, exps):
            packed |= e << s
        return (key << self._key_shift) | packed

    def decode(self, m: int) -> tuple:
        return tuple((m >> s) & FIELD_MASK for s in self._exp_shifts)

    @staticmethod
    def degree(m: int) -> int:
        return m & FIELD_MASK

    def divides(self, a: int, b: int) -> bool:
        em = self.exp_mask
        g = self.guard
        return ((((b & em) | g) - (a & em)) & g) == g

    def lcm(self, a: int, b: int) -> int:
        return self.encode(max(x, y) for x, y in zip(self.decode(a), self.decode(b)))

    def lex_key(self, m: int) -> tuple:
        return self.decode(m)

    # -- polynomial constructors ---------------------------------------------

    def poly(self, terms: Mapping[tuple, object] | Iterable = ()) -> "Polynomial":
        """Build a polynomial from ``{exponents: coeff}`` or ``[(coeff, exponents)]``."""
        items = terms.items() if isinstance(terms, Mapping) else ((e, c) for c, e in terms)
        out: dict[int, object] = {}
        F = self.field
        for exps, c in items:
            m = self.encode(exps)
            out[m] = out.get(m, 0) + F(c)
        return Polynomial(self, _clean(out, F.characteristic))

    def constant(self, c) -> "Polynomial":
        return self.poly({(0,) * self.nvars: c})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def var(self, name: str) -> "Polynomial":
        exps = [0] * self.nvars
        exps[self.index[name]] = 1
        return self.poly({tuple(exps): 1})

    def gens(self) -> list:
        return [self.var(v) for v in self.variables]

    def monomial_str(self, m: int) -> str:
        parts = []
        for v, e in zip(self.variables, self.decode(m)):
            if e == 1:
                parts.append(v)
            elif e > 1:
                parts.append(f"{v}^{e}")
        return "*".join(parts)


def _clean(terms: dict, p: int) -> dict:
    if p:
        return {m: c % p for m, c in terms.items() if c % p}
    return {m: c for m, c in terms.items() if c}


class Polynomial:
    """Immutable polynomial; ``terms`` maps packed monomial -> nonzero coefficient."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingSpec, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- queries -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self) -> list:
        """``[(coeff, packed monomial)]`` strictly descending in the ring order."""
        return [(self.terms[m], m) for m in sorted(self.terms, reverse=True)]

    def term_list(self) -> list:
        """``[(coeff, exponent tuple)]`` strictly descending in the ring order."""
        dec = self.ring.decode
        return [(c, dec(m)) for c, m in self.sorted_terms()]

    def lead_monomial(self) -> int:
        return max(self.terms)

    def lead_coefficient(self):
        return self.terms[max(self.terms)]

    def degree(self) -> int:
        return max((m & FIELD_MASK for m in self.terms), default=-1)

    def homogeneous_degree(self):
        if not self.terms:
            return ZERO
        degs = {m & FIELD_MASK for m in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self) -> bool:
        return len({m & FIELD_MASK for m in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(m & FIELD_MASK == 0 for m in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def evaluate(self, point):
        F = self.ring.field
        p = F.characteristic
        total = 0
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, self.ring.decode(m)):
                if e:
                    v = v * (pow(x, e, p) if p else x**e)
            total += v
        return total % p if p else total

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")
        return other

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = self.ring.constant(other)
        self._check(other)
        p = self.ring.field.characteristic
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if p:
                v %= p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.characteristic
        if p:
            return Polynomial(self.ring, {m: p - c for m, c in self.terms.items()})
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = self.ring.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        F = self.ring.field
        c = F(c)
        if not c:
            return Polynomial(self.ring, {})
        p = F.characteristic
        if p:
            return Polynomial(self.ring, {m: v * c % p for m, v in self.terms.items()})
        return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_term(self, c, m: int) -> "Polynomial":
        """Multiply by the term ``c * monomial(m)`` (``c`` already a field element)."""
        if not c:
            return Polynomial(self.ring, {})
        p = self.ring.field.characteristic
        if self.degree() + (m & FIELD_MASK) > MAX_DEGREE:
            raise DegreeError("degree overflow in product")
        if p:
            return Polynomial(self.ring, {k + m: v * c % p for k, v in self.terms.items()})
        return Polynomial(self.ring, {k + m: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, Fraction)):
                return self.scale(other)
            return NotImplemented
        self._check(other)
        if not self.terms or not other.terms:
            return Polynomial(self.ring, {})
        if self.degree() + other.degree() > MAX_DEGREE:
            raise DegreeError("degree overflow in product")
        p = self.ring.field.characteristic
        out: dict[int, object] = {}
        get = out.get
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 + m2
                out[m] = get(m, 0) + c1 * c2
        return Polynomial(self.ring, _clean(out, p))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = self.ring.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)})"


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    F = f.ring.field
    out = []
    for c, m in f.sorted_terms():
        c = F.signed(c)
        neg = c < 0
        c = -c if neg else c
        mono = f.ring.monomial_str(m)
        if not mono:
            body = str(c)
        elif c == 1:
            body = mono
        else:
            body = f"{c}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def compare(a: tuple, b: tuple, order: str = "grevlex") -> int:
    """Compare exponent vectors: -1 if a < b, 0 if equal, 1 if a > b."""
    if len(a) != len(b):
        raise DimensionError(f"exponent vectors of length {len(a)} and {len(b)}")
    if order == "grevlex":
        ka = (sum(a), tuple(-e for e in reversed(a)))
        kb = (sum(b), tuple(-e for e in reversed(b)))
    elif order == "lex":
        ka, kb = tuple(a), tuple(b)
    else:
        raise ValueError(f"unknown monomial order {order!r}")
    return (ka > kb) - (ka < kb)


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    if p.ring != q.ring:
        raise RingMismatchError(f"{p.ring!r} vs {q.ring!r}")
    return p + q


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    if p.ring != q.ring:
        raise RingMismatchError(f"{p.ring!r} vs {q.ring!r}")
    return p * q


def homogeneous_degree(p: Polynomial):
    """Common degree of a homogeneous polynomial; ``None`` if mixed, ``ZERO`` for 0."""
    return p.homogeneous_degree()
