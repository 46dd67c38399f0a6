"""Exact solution of overdetermined integer linear systems."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Hashable, Mapping, Sequence


class SingularSystemError(ValueError):
    """The columns are linearly dependent, so the solution is not unique."""


class InconsistentSystemError(ValueError):
    """No exact solution exists."""


def _reduce(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        g = gcd(g, x)
    if g > 1:
        row = [x // g for x in row]
    return row


def solve_exact(columns: Sequence[Mapping[Hashable, int]], target: Mapping[Hashable, int]) -> list[Fraction]:
    """Solve ``sum_i x_i * columns[i] == target`` exactly.

    Each column and the target are sparse vectors (dicts).  Fraction-free
    Gauss-Jordan elimination over the integers; every equation, including the
    redundant ones, must be satisfied.
    """
    n = len(columns)
    keys = set(target)
    for col in columns:
        keys.update(col)
    rows = []
    for key in sorted(keys, key=repr):
        row = [int(col.get(key, 0)) for col in columns] + [int(target.get(key, 0))]
        if any(row):
            rows.append(row)

    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            raise SingularSystemError(f"column {c} is dependent on the others")
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        a = prow[c]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                b = rows[i][c]
                rows[i] = _reduce([a * x - b * y for x, y in zip(rows[i], prow)])
        pivots.append(r)
        r += 1
    for row in rows[r:]:
        if row[-1]:
            raise InconsistentSystemError("residual is nonzero")
    return [Fraction(rows[pivots[c]][-1], rows[pivots[c]][c]) for c in range(n)]
