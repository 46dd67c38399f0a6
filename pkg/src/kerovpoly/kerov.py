"""Character polynomials, free cumulants and (generalized) Kerov polynomials.

``Sigma_mu`` and ``Sigma'_mu`` are computed as polynomials in the
multirectangular coordinates ``(p, q)`` by summing ``+-N`` over the
factorizations ``tau * taubar = sigma``; free cumulants come from the
minimal factorizations of the long cycle.  The Kerov-type polynomials are
then recovered by an exact change of basis, one homogeneous weight at a time.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .linalg import InconsistentSystemError, SingularSystemError, solve_exact
from .nseries import Key, PQPolynomial, tail_series, tail_to_pq
from .permutations import (
    cycles_of, nc_to_perm, noncrossing_partitions, normalize_cycle_type, partitions_of,
    representative, set_partitions, Permutation,
)


class TruncationTooSmallError(ValueError):
    """The R-monomials are dependent at this truncation; retry with a larger m."""


class NotInRAlgebraError(ValueError):
    """The polynomial is not a combination of R-monomials of the allowed weights."""


Monomial = tuple[int, ...]


class RPolynomial:
    """Integer polynomial in the free cumulants ``R_2, R_3, ...``.

    Monomials are sorted tuples of indices, ``()`` being the constant term.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Iterable[int], int] | None = None):
        out: dict[Monomial, int] = {}
        for mono, c in (terms or {}).items():
            mono = tuple(sorted(int(j) for j in mono))
            if any(j < 2 for j in mono):
                raise ValueError(f"free cumulant indices start at 2: {mono}")
            out[mono] = out.get(mono, 0) + int(c)
        self.terms = {k: v for k, v in out.items() if v}

    @classmethod
    def R(cls, j: int) -> "RPolynomial":
        return cls({(j,): 1})

    @classmethod
    def constant(cls, c: int) -> "RPolynomial":
        return cls({(): c})

    def __add__(self, other: "RPolynomial") -> "RPolynomial":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return RPolynomial(out)

    def __neg__(self) -> "RPolynomial":
        return RPolynomial({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "RPolynomial") -> "RPolynomial":
        return self + (-other)

    def __mul__(self, other: "RPolynomial | int") -> "RPolynomial":
        if isinstance(other, int):
            return RPolynomial({k: c * other for k, c in self.terms.items()})
        out: dict[Monomial, int] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(sorted(k1 + k2))
                out[k] = out.get(k, 0) + c1 * c2
        return RPolynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RPolynomial) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def coefficient(self, indices: Iterable[int]) -> int:
        return self.terms.get(tuple(sorted(indices)), 0)

    def weight_part(self, w: int) -> "RPolynomial":
        return RPolynomial({k: c for k, c in self.terms.items() if sum(k) == w})

    def weights(self) -> list[int]:
        return sorted({sum(k) for k in self.terms})

    def max_weight(self) -> int:
        return max(self.weights(), default=0)

    def evaluate(self, values: Mapping[int, Fraction] | Sequence) -> Fraction:
        """Substitute ``R_j -> values[j]``."""
        total = Fraction(0)
        for mono, c in self.terms.items():
            term = Fraction(c)
            for j in mono:
                term *= Fraction(values[j])
            total += term
        return total

    def to_pq(self, m: int) -> PQPolynomial:
        out = PQPolynomial.zero(m)
        for mono, c in self.terms.items():
            out = out + _monomial_pq(mono, m).scale(c)
        return out

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        """Weight descending, then index tuples (largest index first) descending."""
        return sorted(self.terms.items(),
                      key=lambda kv: (sum(kv[0]), tuple(sorted(kv[0], reverse=True))), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for i, (mono, c) in enumerate(self.sorted_terms()):
            body = " ".join(f"R{j}" + (f"^{e}" if e > 1 else "")
                            for j, e in sorted(_counts(mono).items(), reverse=True))
            mag = abs(c)
            text = body if mag == 1 and body else (f"{mag} {body}" if body else str(mag))
            if i == 0:
                out.append(("-" if c < 0 else "") + text)
            else:
                out.append(("- " if c < 0 else "+ ") + text)
        return " ".join(out)

    __repr__ = __str__

    def to_json(self) -> list[dict]:
        return [{"indices": list(k), "coefficient": str(c)} for k, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "RPolynomial":
        return cls({tuple(t["indices"]): int(t["coefficient"]) for t in data})


def _counts(mono: Monomial) -> dict[int, int]:
    out: dict[int, int] = {}
    for j in mono:
        out[j] = out.get(j, 0) + 1
    return out


# -- Stanley-type sums ------------------------------------------------------

def _stanley_shard(sigma: tuple[int, ...], m: int, prime: bool, start: int, stop: int) -> dict[Key, int]:
    k = len(sigma)
    r = len(cycles_of(sigma))
    acc: dict[Key, int] = {}
    for tau in itertools.islice(itertools.permutations(range(1, k + 1)), start, stop):
        inv = [0] * k
        for i, y in enumerate(tau, start=1):
            inv[y - 1] = i
        taubar = tuple(inv[sigma[x] - 1] for x in range(k))
        whites = cycles_of(tau)
        blacks = cycles_of(taubar)
        if prime and not _transitive(whites, blacks, k):
            continue
        where = [0] * (k + 1)
        for i, c in enumerate(whites):
            for x in c:
                where[x] = i
        nbrs = [tuple(sorted({where[x] for x in c})) for c in blacks]
        exponent = len(whites) + (1 if prime else r)
        tail_series(len(whites), nbrs, m, into=acc, sign=-1 if exponent % 2 else 1)
    return acc


def _transitive(whites: list[tuple[int, ...]], blacks: list[tuple[int, ...]], k: int) -> bool:
    parent = list(range(k + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in whites + blacks:
        for x in c[1:]:
            parent[find(x)] = find(c[0])
    return len({find(x) for x in range(1, k + 1)}) <= 1


def _stanley_sum(mu: tuple[int, ...], m: int, prime: bool, jobs: int) -> PQPolynomial:
    sigma = representative(mu).images
    total = math.factorial(len(sigma))
    if jobs <= 1 or total < 720:
        return tail_to_pq(_stanley_shard(sigma, m, prime, 0, total), m)
    step = -(-total // (4 * jobs))
    bounds = [(s, min(s + step, total)) for s in range(0, total, step)]
    acc: dict[Key, int] = {}
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_stanley_shard, sigma, m, prime, a, b) for a, b in bounds]
        for f in futures:
            for key, c in f.result().items():
                acc[key] = acc.get(key, 0) + c
    return tail_to_pq(acc, m)


@lru_cache(maxsize=None)
def _sigma_cached(mu: tuple[int, ...], m: int, prime: bool, jobs: int) -> PQPolynomial:
    return _stanley_sum(mu, m, prime, jobs)


def sigma_poly(mu: Sequence[int], m: int | None = None, jobs: int = 1) -> PQPolynomial:
    """``Sigma_mu`` as a polynomial in ``p_1..p_m, q_1..q_m`` (default ``m = |mu|``).

    Each factorization contributes with sign ``(-1)^(|C(tau)| + l(mu))``.
    """
    mu = normalize_cycle_type(mu)
    m = sum(mu) if m is None else m
    if m < 1:
        raise ValueError("truncation level m must be >= 1")
    return _sigma_cached(mu, m, False, max(1, jobs))


def sigma_prime_poly(mu: Sequence[int], m: int | None = None, jobs: int = 1) -> PQPolynomial:
    """``Sigma'_mu``: the same sum restricted to transitive factorizations, sign ``(-1)^(|C(tau)|+1)``."""
    mu = normalize_cycle_type(mu)
    m = sum(mu) if m is None else m
    if m < 1:
        raise ValueError("truncation level m must be >= 1")
    return _sigma_cached(mu, m, True, max(1, jobs))


@lru_cache(maxsize=None)
def _cumulant_cached(j: int, m: int) -> PQPolynomial:
    acc: dict[Key, int] = {}
    long_cycle = Permutation.long_cycle(j - 1)
    for pi in noncrossing_partitions(j - 1):
        tau = nc_to_perm(pi)
        taubar = tau.inverse() * long_cycle
        whites = tau.cycles()
        where = {x: i for i, c in enumerate(whites) for x in c}
        nbrs = [tuple(sorted({where[x] for x in c})) for c in taubar.cycles()]
        tail_series(len(whites), nbrs, m, into=acc, sign=1 if len(pi) % 2 else -1)
    return tail_to_pq(acc, m)


def free_cumulant_poly(j: int, m: int | None = None) -> PQPolynomial:
    """``R_j`` as a sum over ``NC(j-1)`` of ``(-1)^(|pi|+1) N^pi`` (default ``m = j``)."""
    if j < 2:
        raise ValueError("free cumulants are indexed from 2")
    m = j if m is None else m
    if m < 1:
        raise ValueError("truncation level m must be >= 1")
    return _cumulant_cached(j, m)


@lru_cache(maxsize=None)
def _monomial_pq(mono: Monomial, m: int) -> PQPolynomial:
    if not mono:
        return PQPolynomial.one(m)
    if len(mono) == 1:
        return free_cumulant_poly(mono[0], m)
    return _monomial_pq(mono[:-1], m) * free_cumulant_poly(mono[-1], m)


# -- change of basis ----------------------------------------------------------

def r_monomials(weight: int, max_index: int | None = None) -> list[Monomial]:
    """R-monomials of the given weight with indices in ``[2, max_index]``."""
    top = weight if max_index is None else min(weight, max_index)
    return [tuple(sorted(p)) for p in partitions_of(weight, top, 2)]


def express_in_R(poly: PQPolynomial, max_weight: int, m: int | None = None,
                 max_index: int | None = None) -> RPolynomial:
    """The unique R-polynomial of weight ``<= max_weight`` whose expansion is ``poly``.

    Solved independently in every homogeneous degree.  Raises
    :class:`TruncationTooSmallError` when the candidate monomials are dependent
    at this truncation and :class:`NotInRAlgebraError` when no exact integer
    solution exists.
    """
    if m is not None and m != poly.m:
        poly = poly.truncate(m)
    m = poly.m
    components = poly.degree_components()
    too_high = [d for d in components if d > max_weight]
    if too_high:
        raise NotInRAlgebraError(f"components of degree {too_high} exceed max weight {max_weight}")
    terms: dict[Monomial, int] = {}
    for w in range(max_weight + 1):
        target = components.get(w, PQPolynomial.zero(m)).terms
        candidates = r_monomials(w, max_index)
        if not candidates:
            if target:
                raise NotInRAlgebraError(f"no R-monomial of weight {w} can produce the degree-{w} part")
            continue
        columns = [_monomial_pq(mono, m).terms for mono in candidates]
        try:
            solution = solve_exact(columns, target)
        except SingularSystemError as exc:
            raise TruncationTooSmallError(
                f"R-monomials of weight {w} are dependent at m={m}; use a larger m") from exc
        except InconsistentSystemError as exc:
            raise NotInRAlgebraError(f"degree-{w} part is not a combination of R-monomials") from exc
        for mono, x in zip(candidates, solution):
            if x.denominator != 1:
                raise NotInRAlgebraError(f"non-integer coefficient {x} for {mono}")
            if x:
                terms[mono] = int(x)
    result = RPolynomial(terms)
    if result.to_pq(m) != poly:
        raise NotInRAlgebraError("round trip through the PQ expansion failed")
    return result


def default_truncation(k: int) -> int:
    """Smallest m for which ``R_2..R_{k+1}`` can be independent: ``2m + 1 >= k + 1``."""
    return max(1, -(-k // 2))


def _solve_auto(mu: tuple[int, ...], prime: bool, max_weight: int, m: int | None, jobs: int) -> RPolynomial:
    k = sum(mu)
    trials = [m] if m is not None else range(default_truncation(k), k + 2)
    last: Exception | None = None
    for mm in trials:
        poly = _sigma_cached(mu, mm, prime, max(1, jobs))
        try:
            return express_in_R(poly, max_weight, max_index=k + 1)
        except TruncationTooSmallError as exc:
            last = exc
    raise last  # type: ignore[misc]


@lru_cache(maxsize=None)
def _kerov_cached(mu: tuple[int, ...], prime: bool, m: int | None, jobs: int) -> RPolynomial:
    if not mu:
        raise ValueError("mu must have at least one positive part")
    k, ell = sum(mu), len(mu)
    max_weight = k + 2 - ell if prime else k + ell
    return _solve_auto(mu, prime, max_weight, m, jobs)


def kerov_polynomial(k: int, m: int | None = None, jobs: int = 1) -> RPolynomial:
    """``K_k`` with ``Sigma_k = K_k(R_2, ..., R_{k+1})``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return _kerov_cached((k,), False, m, jobs)


def generalized_kerov(mu: Sequence[int], m: int | None = None, jobs: int = 1) -> RPolynomial:
    """``K_mu`` with ``Sigma_mu = K_mu(R_2, ..., R_{|mu|+1})``."""
    return _kerov_cached(normalize_cycle_type(mu), False, m, jobs)


def positive_kerov(mu: Sequence[int], m: int | None = None, jobs: int = 1) -> RPolynomial:
    """``K'_mu`` with ``Sigma'_mu = K'_mu(R_2, ..., R_{|mu|+1})``."""
    return _kerov_cached(normalize_cycle_type(mu), True, m, jobs)


def sigma_from_sigma_prime(mu: Sequence[int], m: int | None = None) -> RPolynomial:
    """``K_mu`` rebuilt from the ``K'`` of all sub-multisets, over set partitions of the parts."""
    mu = normalize_cycle_type(mu)
    total = RPolynomial()
    for blocks in set_partitions(range(len(mu))):
        term = RPolynomial.constant(1)
        for b in blocks:
            sign = -1 if (len(b) - 1) % 2 else 1
            term = term * positive_kerov([mu[i] for i in b], m) * sign
        total = total + term
    return total


def verify_positivity(p: RPolynomial) -> tuple[bool, list[tuple[Monomial, int]]]:
    violations = [(mono, c) for mono, c in p.sorted_terms() if c < 0]
    return not violations, violations
