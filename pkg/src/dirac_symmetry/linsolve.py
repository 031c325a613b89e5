"""Sparse exact linear solving by fraction-free row elimination.

Rows are held as integer dictionaries; elimination uses cross-multiplied
updates followed by a gcd reduction, so no rational arithmetic happens until
back-substitution.  Pivoting is deterministic: rows are consumed in input
order and each row pivots on its leftmost nonzero column.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping

Row = dict[int, int]


def _integerize(equation: Mapping[int, Fraction], rhs: Fraction) -> tuple[Row, int]:
    scale = lcm(rhs.denominator, *(c.denominator for c in equation.values()))
    row = {col: int(c * scale) for col, c in equation.items() if c}
    return _reduce_gcd(row, int(rhs * scale))


def _reduce_gcd(row: Row, rhs: int) -> tuple[Row, int]:
    common = abs(rhs)
    for value in row.values():
        common = gcd(common, value)
        if common == 1:
            return row, rhs
    if common > 1:
        row = {col: value // common for col, value in row.items()}
        rhs //= common
    return row, rhs


def solve_sparse(
    equations: Iterable[tuple[Mapping[int, Fraction], Fraction]],
) -> dict[int, Fraction] | None:
    """One exact solution of the sparse system, or None if inconsistent.

    Free (non-pivot) unknowns are pinned to zero; the returned mapping only
    lists nonzero components.
    """
    pivots: dict[int, tuple[Row, int]] = {}
    for equation, rhs in equations:
        row, r = _integerize(equation, rhs)
        while row:
            col = min(row)
            existing = pivots.get(col)
            if existing is None:
                pivots[col] = (row, r)
                break
            prow, pr = existing
            a = row[col]
            b = prow[col]
            updated: Row = {c: b * v for c, v in row.items()}
            for c, v in prow.items():
                nv = updated.get(c, 0) - a * v
                if nv:
                    updated[c] = nv
                else:
                    updated.pop(c, None)
            row, r = _reduce_gcd(updated, b * r - a * pr)
        else:
            if r != 0:
                return None
    solution: dict[int, Fraction] = {}
    for col in sorted(pivots, reverse=True):
        row, rhs = pivots[col]
        total = Fraction(rhs)
        for c, v in row.items():
            if c != col:
                x = solution.get(c)
                if x:
                    total -= v * x
        value = total / row[col]
        if value:
            solution[col] = value
    return solution


def rational_rank(rows) -> int:
    """Rank over Q of sparse rows (mappings from orderable keys to Fractions)."""
    pivots: dict = {}
    for source in rows:
        row = {k: Fraction(v) for k, v in source.items() if v}
        while row:
            key = min(row)
            pivot = pivots.get(key)
            if pivot is None:
                pivots[key] = row
                break
            factor = row[key] / pivot[key]
            for k, v in pivot.items():
                nv = row.get(k, Fraction(0)) - factor * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return len(pivots)
