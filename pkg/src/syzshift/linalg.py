"""Exact Gaussian elimination over GF(p) or QQ on sparse row dicts."""

from __future__ import annotations

from fractions import Fraction


def _normalize(row: dict, p: int) -> dict:
    if p:
        return {j: v % p for j, v in row.items() if v % p}
    return {j: Fraction(v) for j, v in row.items() if v}


def echelon(rows, p: int) -> list:
    """Row-reduce ``rows`` (each a dict col -> value); return the pivot rows.

    Every returned row is ``(pivot column, row dict)`` with pivot entry 1 and
    no entry in any other returned row's pivot column.
    """
    pivots: dict[int, dict] = {}
    for raw in rows:
        row = _normalize(raw, p)
        for col in sorted(pivots):
            c = row.get(col)
            if c:
                for j, v in pivots[col].items():
                    w = row.get(j, 0) - c * v
                    if p:
                        w %= p
                    if w:
                        row[j] = w
                    else:
                        row.pop(j, None)
        if not row:
            continue
        lead = min(row)
        inv = pow(row[lead], -1, p) if p else 1 / row[lead]
        row = {j: (v * inv % p if p else v * inv) for j, v in row.items()}
        for col, prow in pivots.items():
            c = prow.get(lead)
            if c:
                for j, v in row.items():
                    w = prow.get(j, 0) - c * v
                    if p:
                        w %= p
                    if w:
                        prow[j] = w
                    else:
                        prow.pop(j, None)
        pivots[lead] = row
    return sorted(pivots.items())


def rank(rows, p: int) -> int:
    return len(echelon(rows, p))


def dense_rank(matrix, p: int) -> int:
    return rank([{j: v for j, v in enumerate(r) if v} for r in matrix], p)


def reduce_vector(vec: dict, basis: list, p: int) -> dict:
    """Reduce ``vec`` against an echelon basis from :func:`echelon`."""
    vec = _normalize(vec, p)
    for col, prow in basis:
        c = vec.get(col)
        if c:
            for j, v in prow.items():
                w = vec.get(j, 0) - c * v
                if p:
                    w %= p
                if w:
                    vec[j] = w
                else:
                    vec.pop(j, None)
    return vec
