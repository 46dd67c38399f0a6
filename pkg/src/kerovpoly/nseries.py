"""Exact polynomials in ``p_1..p_m, q_1..q_m`` and the graph series ``N(G)``.

``N(G)`` sums ``prod p_psi(w) * prod q_psi(b)`` over evaluations
``psi: V -> [m]`` with ``psi(b) >= psi(w)`` along every edge.  Once the
white values are fixed, each black vertex contributes an independent tail
sum ``T_j = q_j + ... + q_m`` with ``j`` the largest adjacent white value, so
the enumeration only runs over white vertices and produces one monomial in
``(p, T)`` per assignment.  Tail monomials are expanded into ``q`` at the end.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .maps import BicoloredMap

Key = tuple[tuple[int, ...], tuple[int, ...]]


class PQPolynomial:
    """Sparse integer polynomial in ``p_1..p_m`` and ``q_1..q_m``.

    Terms map ``(p_exponents, q_exponents)`` to a nonzero ``int``.
    """

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: Mapping[Key, int] | None = None):
        if m < 1:
            raise ValueError("truncation level m must be >= 1")
        self.m = m
        self.terms: dict[Key, int] = {}
        for key, c in (terms or {}).items():
            if len(key[0]) != m or len(key[1]) != m:
                raise ValueError(f"exponent vectors must have length {m}")
            if c:
                self.terms[key] = self.terms.get(key, 0) + c
        self.terms = {k: c for k, c in self.terms.items() if c}

    @classmethod
    def zero(cls, m: int) -> "PQPolynomial":
        return cls(m)

    @classmethod
    def one(cls, m: int) -> "PQPolynomial":
        return cls(m, {((0,) * m, (0,) * m): 1})

    @classmethod
    def variable(cls, name: str, i: int, m: int) -> "PQPolynomial":
        """``p_i`` or ``q_i`` (1-based)."""
        e = [0] * m
        e[i - 1] = 1
        z = (0,) * m
        return cls(m, {(tuple(e), z) if name == "p" else (z, tuple(e)): 1})

    def _check(self, other: "PQPolynomial") -> None:
        if self.m != other.m:
            raise ValueError(f"truncation mismatch: {self.m} != {other.m}")

    def __add__(self, other: "PQPolynomial") -> "PQPolynomial":
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return PQPolynomial(self.m, out)

    def __neg__(self) -> "PQPolynomial":
        return PQPolynomial(self.m, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "PQPolynomial") -> "PQPolynomial":
        return self + (-other)

    def scale(self, c: int) -> "PQPolynomial":
        return PQPolynomial(self.m, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: "PQPolynomial | int") -> "PQPolynomial":
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        out: dict[Key, int] = {}
        for (p1, q1), c1 in self.terms.items():
            for (p2, q2), c2 in other.terms.items():
                key = (tuple(a + b for a, b in zip(p1, p2)), tuple(a + b for a, b in zip(q1, q2)))
                out[key] = out.get(key, 0) + c1 * c2
        return PQPolynomial(self.m, out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, PQPolynomial) and self.m == other.m and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.m, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def degree_components(self) -> dict[int, "PQPolynomial"]:
        """Homogeneous components keyed by total degree in ``p`` and ``q``."""
        parts: dict[int, dict[Key, int]] = {}
        for key, c in self.terms.items():
            parts.setdefault(sum(key[0]) + sum(key[1]), {})[key] = c
        return {d: PQPolynomial(self.m, t) for d, t in sorted(parts.items())}

    def bidegrees(self) -> set[tuple[int, int]]:
        return {(sum(p), sum(q)) for p, q in self.terms}

    def truncate(self, m: int) -> "PQPolynomial":
        """Set ``p_i = q_i = 0`` for ``i > m``."""
        if m > self.m:
            raise ValueError("can only truncate to a smaller m")
        out = {}
        for (p, q), c in self.terms.items():
            if any(p[m:]) or any(q[m:]):
                continue
            out[(p[:m], q[:m])] = c
        return PQPolynomial(m, out)

    def to_json(self) -> list[dict]:
        return [{"p_exponents": list(p), "q_exponents": list(q), "coefficient": str(c)}
                for (p, q), c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data: Sequence[Mapping], m: int | None = None) -> "PQPolynomial":
        terms = {(tuple(t["p_exponents"]), tuple(t["q_exponents"])): int(t["coefficient"]) for t in data}
        if m is None:
            if not terms:
                raise ValueError("m is required for an empty polynomial")
            m = len(next(iter(terms))[0])
        return cls(m, terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (p, q), c in sorted(self.terms.items(), reverse=True):
            mono = [f"p{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(p) if e]
            mono += [f"q{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(q) if e]
            parts.append(f"{c}*" + "*".join(mono) if mono else str(c))
        return " + ".join(parts).replace("+ -", "- ")


def evaluate(poly: PQPolynomial, p: Sequence, q: Sequence) -> Fraction:
    """Exact substitution of rational vectors of length ``m``."""
    if len(p) != poly.m or len(q) != poly.m:
        raise ValueError(f"expected vectors of length {poly.m}")
    p = [Fraction(x) for x in p]
    q = [Fraction(x) for x in q]
    total = Fraction(0)
    for (pe, qe), c in poly.terms.items():
        term = Fraction(c)
        for x, e in zip(p, pe):
            if e:
                term *= x ** e
        for x, e in zip(q, qe):
            if e:
                term *= x ** e
        total += term
    return total


# -- N(G) -----------------------------------------------------------------

def graph_data(g: BicoloredMap) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Number of white vertices and, per black vertex, its adjacent white indices."""
    whites = g.white_vertices
    index = {v: i for i, v in enumerate(whites)}
    nbrs: dict[int, set[int]] = {b: set() for b in g.black_vertices}
    for e in g.edges:
        w, b = g.endpoints(e)
        nbrs[b].add(index[w])
    return len(whites), tuple(tuple(sorted(nbrs[b])) for b in g.black_vertices)


def tail_series(n_white: int, black_nbrs: Sequence[Sequence[int]], m: int,
                into: dict[Key, int] | None = None, sign: int = 1) -> dict[Key, int]:
    """``N`` in ``(p, T)`` coordinates, ``T_j = q_j + ... + q_m`` (0-based ``j``).

    Adds ``sign * N`` into ``into`` when given.
    """
    acc: dict[Key, int] = {} if into is None else into
    nbrs = [tuple(nb) for nb in black_nbrs]
    for psi in itertools.product(range(m), repeat=n_white):
        pe = [0] * m
        for v in psi:
            pe[v] += 1
        te = [0] * m
        for nb in nbrs:
            te[max([psi[i] for i in nb], default=0)] += 1
        key = (tuple(pe), tuple(te))
        acc[key] = acc.get(key, 0) + sign
    return acc


@lru_cache(maxsize=None)
def _tail_power(j: int, a: int, m: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Expansion of ``T_j ** a`` as ``((q_exponents, coefficient), ...)``."""
    poly: dict[tuple[int, ...], int] = {(0,) * m: 1}
    for _ in range(a):
        nxt: dict[tuple[int, ...], int] = {}
        for e, c in poly.items():
            for v in range(j, m):
                e2 = list(e)
                e2[v] += 1
                e2 = tuple(e2)
                nxt[e2] = nxt.get(e2, 0) + c
        poly = nxt
    return tuple(poly.items())


@lru_cache(maxsize=None)
def _tail_monomial(te: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    m = len(te)
    poly: dict[tuple[int, ...], int] = {(0,) * m: 1}
    for j, a in enumerate(te):
        if not a:
            continue
        nxt: dict[tuple[int, ...], int] = {}
        for e1, c1 in poly.items():
            for e2, c2 in _tail_power(j, a, m):
                e = tuple(x + y for x, y in zip(e1, e2))
                nxt[e] = nxt.get(e, 0) + c1 * c2
        poly = nxt
    return tuple(poly.items())


def tail_to_pq(tail: Mapping[Key, int], m: int) -> PQPolynomial:
    out: dict[Key, int] = {}
    for (pe, te), c in tail.items():
        if not c:
            continue
        for qe, cq in _tail_monomial(te):
            key = (pe, qe)
            out[key] = out.get(key, 0) + c * cq
    return PQPolynomial(m, out)


def n_of_graph(g: BicoloredMap, m: int) -> PQPolynomial:
    """``N(G)`` truncated to values in ``[m]``; external half-edges are ignored."""
    if m < 1:
        raise ValueError("truncation level m must be >= 1")
    n_white, nbrs = graph_data(g)
    return tail_to_pq(tail_series(n_white, nbrs, m), m)


def n_of_sum(s, m: int) -> PQPolynomial:
    """Linear extension of :func:`n_of_graph` to a ``FormalMapSum``."""
    tail: dict[Key, int] = {}
    for erased, c in s.terms.items():
        n_white, nbrs = graph_data(s.parent.without(erased))
        tail_series(n_white, nbrs, m, into=tail, sign=c)
    return tail_to_pq(tail, m)


def disjoint_union(*maps: BicoloredMap) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Graph data of a disjoint union (whites renumbered consecutively)."""
    n_white, nbrs = 0, []
    for g in maps:
        w, nb = graph_data(g)
        nbrs.extend(tuple(i + n_white for i in b) for b in nb)
        n_white += w
    return n_white, tuple(nbrs)
