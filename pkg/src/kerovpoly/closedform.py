"""Closed formulas and permutation counts for particular Kerov coefficients."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterator, Sequence

from .kerov import RPolynomial
from .permutations import cycles_of, normalize_cycle_type, partitions_of, representative

MAX_COUNT_K = 9


def _factorizations(mu: Sequence[int], max_k: int) -> Iterator[tuple[list, list]]:
    """``(cycles of tau, cycles of tau**-1 sigma)`` for every ``tau`` in ``S(|mu|)``."""
    sigma = representative(mu).images
    k = len(sigma)
    if k > max_k:
        raise ValueError(f"|mu| = {k} exceeds the counting cap {max_k}")
    for tau in itertools.permutations(range(1, k + 1)):
        inv = [0] * k
        for i, y in enumerate(tau, start=1):
            inv[y - 1] = i
        taubar = tuple(inv[sigma[x] - 1] for x in range(k))
        yield cycles_of(tau), cycles_of(taubar)


def _connected(a: list, b: list, k: int) -> bool:
    seen = {1}
    frontier = [1]
    blocks = [set(c) for c in a + b]
    while frontier:
        x = frontier.pop()
        for blk in blocks:
            if x in blk:
                for y in blk - seen:
                    seen.add(y)
                    frontier.append(y)
    return len(seen) == k


def linear_coefficient(mu: Sequence[int], d: int, max_k: int = MAX_COUNT_K) -> int:
    """Number of ``tau`` with ``d - 1`` cycles such that ``tau**-1 sigma`` is a ``|mu|``-cycle.

    This is the coefficient of ``R_d`` in ``K'_mu``.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    mu = normalize_cycle_type(mu)
    return sum(1 for whites, blacks in _factorizations(mu, max_k)
               if len(whites) == d - 1 and len(blacks) == 1)


def quadratic_coefficient(mu: Sequence[int], j: int, l: int, max_k: int = MAX_COUNT_K) -> Fraction:
    """Coefficient of ``R_j R_l`` in ``K'_mu`` by counting numbered two-cycle ``tau``.

    A cycle of ``tau**-1 sigma`` meeting both cycles of ``tau`` counts toward
    both thresholds.
    """
    if j < 2 or l < 2:
        raise ValueError("indices must be >= 2")
    mu = normalize_cycle_type(mu)
    k = sum(mu)
    count = 0
    for whites, blacks in _factorizations(mu, max_k):
        if len(whites) != 2 or len(blacks) != j + l - 2:
            continue
        if len(mu) >= 2 and not _connected(whites, blacks, k):
            continue
        meets = [sum(1 for b in blacks if set(b) & set(w)) for w in whites]
        for first, second in ((0, 1), (1, 0)):
            if meets[first] >= j and meets[second] >= l:
                count += 1
    value = Fraction(count, 2) if j == l else Fraction(count)
    if value.denominator != 1:
        raise ArithmeticError(f"halved count {count} is odd")
    return value


def perm_count(indices: Sequence[int]) -> int:
    """Number of distinct orderings of a multiset."""
    out = math.factorial(len(indices))
    for _, grp in itertools.groupby(sorted(indices)):
        out //= math.factorial(len(list(grp)))
    return out


def top_term_coefficient(k: int, mono: Sequence[int]) -> Fraction:
    """``(k-1)k(k+1)/24 * |Perm(j)| * prod (j_i - 1)`` for ``sum j_i = k - 1``."""
    mono = tuple(mono)
    if sum(mono) != k - 1:
        raise ValueError(f"indices must sum to k - 1 = {k - 1}")
    value = Fraction((k - 1) * k * (k + 1), 24) * perm_count(mono)
    for j in mono:
        value *= j - 1
    return value


def count_bounded_solutions(bounds: Sequence[int], total: int) -> int:
    """Integer vectors ``0 <= x_i <= bounds[i]`` with ``sum x_i == total``."""
    if total < 0:
        return 0
    ways = [1] + [0] * total
    for b in bounds:
        if b < 0:
            return 0
        nxt = [0] * (total + 1)
        for s, w in enumerate(ways):
            if w:
                for x in range(min(b, total - s) + 1):
                    nxt[s + x] += w
        ways = nxt
    return ways[total]


def two_part_top_coefficient(r: int, s: int, mono: Sequence[int]) -> Fraction:
    """``(r s / t) |Perm(j)| N(j_1 - 2, ..., j_t - 2; r - t)`` for ``sum j_i = r + s``."""
    mono = tuple(mono)
    if sum(mono) != r + s:
        raise ValueError(f"indices must sum to r + s = {r + s}")
    t = len(mono)
    return Fraction(r * s, t) * perm_count(mono) * count_bounded_solutions([j - 2 for j in mono], r - t)


def _as_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"expected an integer coefficient, got {x}")
    return int(x)


def subdominant_expansion(mu: Sequence[int]) -> RPolynomial:
    """The two highest graded parts of ``K_mu``, weights ``|mu|+l(mu)`` and ``|mu|+l(mu)-2``.

    One-part corrections use the cycle formula, pair corrections the two-part
    formula with the sign ``-1`` of a two-element block.
    """
    mu = normalize_cycle_type(mu)
    leading = [RPolynomial.R(part + 1) for part in mu]

    def rest(skip: set[int]) -> RPolynomial:
        out = RPolynomial.constant(1)
        for i, lead in enumerate(leading):
            if i not in skip:
                out = out * lead
        return out

    total = rest(set())
    for i, part in enumerate(mu):
        corr = RPolynomial({j: _as_int(top_term_coefficient(part, j))
                            for j in partitions_of(part - 1, min_part=2) if j})
        total = total + rest({i}) * corr
    for i1, i2 in itertools.combinations(range(len(mu)), 2):
        r, s = mu[i1], mu[i2]
        corr = RPolynomial({j: _as_int(two_part_top_coefficient(r, s, j))
                            for j in partitions_of(r + s, min_part=2)})
        total = total - rest({i1, i2}) * corr
    return total


def positive_kerov_from_forests(mu: Sequence[int], max_k: int = MAX_COUNT_K) -> RPolynomial:
    """``K'_mu`` assembled from forest coefficients of complete decompositions.

    For each transitive factorization the map is decomposed onto covering
    forests; a forest whose ``t`` trees each carry exactly one black vertex,
    ``t`` being the number of black vertices, contributes its coefficient times
    ``(-1)^(t-1)`` to the monomial ``prod R_(w_i + 1)``, ``w_i`` the white
    vertex counts of the trees.
    """
    from .decompose import d_full
    from .maps import BLACK, build_map, connected_components
    from .permutations import Permutation, enumerate_factorizations, is_transitive

    mu = normalize_cycle_type(mu)
    sigma = representative(mu)
    if sigma.k > max_k:
        raise ValueError(f"|mu| = {sigma.k} exceeds the counting cap {max_k}")
    terms: dict[tuple[int, ...], int] = {}
    for tau, taubar in enumerate_factorizations(sigma):
        if not is_transitive(tau, taubar):
            continue
        m = build_map(tau, taubar)
        t = len(m.black_vertices)
        for forest, coef in d_full(m).items():
            trees = connected_components(forest)
            if len(trees) != t:
                continue
            blacks = [sum(1 for v in tree.vertices if tree.color(v) == BLACK) for tree in trees]
            if any(b != 1 for b in blacks):
                continue
            mono = tuple(sorted(len(tree.vertices) for tree in trees))
            terms[mono] = terms.get(mono, 0) + (-1) ** (t - 1) * coef
    return RPolynomial(terms)
