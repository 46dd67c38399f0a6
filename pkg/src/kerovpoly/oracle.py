"""Independent ground truth for character values and free cumulants.

Nothing here touches maps or the ``(p, q)`` polynomials: characters come from
the Murnaghan-Nakayama rule on beta-sets, free cumulants from the Kerov
transition measure of the diagram.  Exact rationals throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence


@dataclass(frozen=True)
class YoungDiagram:
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        rows = tuple(int(r) for r in self.rows if r)
        if any(r < 0 for r in self.rows):
            raise ValueError("row lengths must be non-negative")
        if any(a < b for a, b in zip(rows, rows[1:])):
            raise ValueError(f"rows must be non-increasing: {rows}")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return sum(self.rows)

    def columns(self) -> tuple[int, ...]:
        return tuple(sum(1 for r in self.rows if r > j) for j in range(self.rows[0] if self.rows else 0))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.rows)) + ")"


def diagram_from_pq(p: Sequence[int], q: Sequence[int]) -> YoungDiagram:
    """Stacked rectangles: ``p_i`` rows of length ``q_i + q_{i+1} + ...``."""
    if len(p) != len(q):
        raise ValueError("p and q must have the same length")
    if any(x < 0 for x in p) or any(x < 0 for x in q):
        raise ValueError("multirectangular coordinates must be non-negative")
    rows: list[int] = []
    for i, pi in enumerate(p):
        rows.extend([sum(q[i:])] * pi)
    return YoungDiagram(tuple(rows))


@lru_cache(maxsize=None)
def _mn(beta: tuple[int, ...], mu: tuple[int, ...]) -> int:
    if not mu:
        return 1
    r, rest = mu[0], mu[1:]
    beads = set(beta)
    total = 0
    for b in beta:
        if b - r >= 0 and b - r not in beads:
            height = sum(1 for c in beta if b - r < c < b)
            new = tuple(sorted((beads - {b}) | {b - r}, reverse=True))
            total += (-1) ** height * _mn(new, rest)
    return total


def mn_character(lam: YoungDiagram, mu: Sequence[int]) -> int:
    """``chi^lam`` on the class of cycle type ``mu`` padded with fixed points.

    Border strips are removed on the beta-set: sliding a bead from ``b`` to
    ``b - r`` removes an ``r``-strip whose height is the number of beads jumped.
    """
    mu = tuple(sorted((int(x) for x in mu), reverse=True))
    if sum(mu) > lam.n:
        raise ValueError(f"|mu| = {sum(mu)} exceeds |lambda| = {lam.n}")
    mu = mu + (1,) * (lam.n - sum(mu))
    ell = len(lam.rows)
    beta = tuple(lam.rows[i] + ell - 1 - i for i in range(ell))
    return _mn(beta, mu)


def hook_length_dimension(lam: YoungDiagram) -> int:
    cols = lam.columns()
    prod = 1
    for i, r in enumerate(lam.rows):
        for j in range(r):
            prod *= (r - j - 1) + (cols[j] - i - 1) + 1
    return math.factorial(lam.n) // prod


def normalized_character(lam: YoungDiagram, mu: Sequence[int]) -> Fraction:
    """``n (n-1) ... (n-k+1) chi(mu) / chi(id)``; zero when ``|mu| > n``."""
    k = sum(mu)
    n = lam.n
    if k > n:
        return Fraction(0)
    falling = math.perm(n, k)
    value = Fraction(falling * mn_character(lam, mu), mn_character(lam, ()))
    if value.denominator != 1:
        raise ArithmeticError(f"normalized character is not an integer: {value}")
    return value


def corners(lam: YoungDiagram) -> tuple[list[int], list[int]]:
    """Contents of addable cells (minima) and removable cells (maxima) of the profile."""
    rows = list(lam.rows)
    ell = len(rows)
    addable = [rows[i] - i for i in range(ell) if i == 0 or rows[i - 1] > rows[i]]
    addable.append(-ell)
    removable = [rows[i] - 1 - i for i in range(ell) if i == ell - 1 or rows[i] > rows[i + 1]]
    return addable, removable


def transition_measure(lam: YoungDiagram) -> list[tuple[Fraction, Fraction]]:
    """Atoms ``(x, weight)`` of the transition measure."""
    xs, ys = corners(lam)
    atoms = []
    for i, x in enumerate(xs):
        num = Fraction(1)
        for y in ys:
            num *= x - y
        for j, x2 in enumerate(xs):
            if j != i:
                num /= x - x2
        atoms.append((Fraction(x), num))
    return atoms


def moments(lam: YoungDiagram, up_to: int) -> list[Fraction]:
    atoms = transition_measure(lam)
    return [sum((w * x ** r for x, w in atoms), Fraction(0)) for r in range(up_to + 1)]


def cumulants_from_moments(m: Sequence[Fraction]) -> list[Fraction]:
    """Free cumulants from moments ``m[0] = 1, m[1], ...``.

    Uses the first-block decomposition of non-crossing partitions:
    ``m_n = sum_s R_s * sum_{i_1 + ... + i_s = n - s} m_{i_1} ... m_{i_s}``.
    """
    n_max = len(m) - 1
    # conv[s][t]: sum over compositions of t into s non-negative parts of prod m_i
    conv = [[Fraction(0)] * (n_max + 1) for _ in range(n_max + 1)]
    conv[0][0] = Fraction(1)
    for s in range(1, n_max + 1):
        for t in range(n_max + 1):
            conv[s][t] = sum((conv[s - 1][t - i] * m[i] for i in range(t + 1)), Fraction(0))
    R = [Fraction(0)] * (n_max + 1)
    for n in range(1, n_max + 1):
        rest = sum((R[s] * conv[s][n - s] for s in range(1, n)), Fraction(0))
        R[n] = m[n] - rest
    return R


def free_cumulants_numeric(lam: YoungDiagram, up_to: int) -> dict[int, Fraction]:
    """``{j: R_j(lam)}`` for ``2 <= j <= up_to``."""
    if up_to < 2:
        raise ValueError("up_to must be >= 2")
    R = cumulants_from_moments(moments(lam, up_to))
    return {j: R[j] for j in range(2, up_to + 1)}
