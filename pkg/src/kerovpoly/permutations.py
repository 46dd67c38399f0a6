"""Permutations of [k], the absolute-length order and non-crossing partitions.

Points are 1-based.  Composition follows the right-to-left convention
``(p * q)(x) == p(q(x))``, so a factorization ``(tau, taubar)`` of ``sigma``
always satisfies ``tau * taubar == sigma`` with ``taubar = tau**-1 * sigma``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True)
class Permutation:
    """A permutation of ``{1, ..., k}`` stored in one-line form."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of [1..{len(images)}]: {images}")
        object.__setattr__(self, "images", images)

    @property
    def k(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, k: int) -> "Permutation":
        return cls(tuple(range(1, k + 1)))

    @classmethod
    def long_cycle(cls, k: int) -> "Permutation":
        """The cycle ``(1 2 ... k)``."""
        return cls(tuple(list(range(2, k + 1)) + [1])) if k else cls(())

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], k: int | None = None) -> "Permutation":
        cycles = [tuple(c) for c in cycles]
        support = [x for c in cycles for x in c]
        if len(support) != len(set(support)):
            raise ValueError(f"cycles overlap: {cycles}")
        if k is None:
            k = max(support, default=0)
        images = list(range(1, k + 1))
        for c in cycles:
            for i, x in enumerate(c):
                if not 1 <= x <= k:
                    raise ValueError(f"point {x} outside [1..{k}]")
                images[x - 1] = c[(i + 1) % len(c)]
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, k: int | None = None) -> "Permutation":
        """Parse cycle notation such as ``"(1 5)(2 7)(3)(4 8 6)"``."""
        text = text.strip()
        if not re.fullmatch(r"(\(\s*\d+(?:[\s,]+\d+)*\s*\)\s*)*", text):
            raise ValueError(f"malformed cycle notation: {text!r}")
        cycles = [[int(x) for x in re.split(r"[\s,]+", body.strip())]
                  for body in re.findall(r"\(([^)]*)\)", text)]
        return cls.from_cycles(cycles, k)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        _check_degree(self, other)
        return Permutation(tuple(self.images[y - 1] for y in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.k
        for i, y in enumerate(self.images, start=1):
            inv[y - 1] = i
        return Permutation(tuple(inv))

    def embed(self, n: int) -> "Permutation":
        """Image under ``S(k) -> S(n)``, fixing the added points."""
        if n < self.k:
            raise ValueError("cannot embed into a smaller symmetric group")
        return Permutation(self.images + tuple(range(self.k + 1, n + 1)))

    def cycles(self) -> list[tuple[int, ...]]:
        return cycles(self)

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in cycles(self)), reverse=True))

    def to_json(self) -> list[int]:
        return list(self.images)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> "Permutation":
        return cls(tuple(data))

    def __str__(self) -> str:
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles(self)) or "()"


@dataclass(frozen=True)
class NonCrossingPartition:
    """A non-crossing set partition of ``{1, ..., j}``."""

    blocks: tuple[tuple[int, ...], ...]
    j: int

    def __post_init__(self) -> None:
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks if b))
        if sorted(x for b in blocks for x in b) != list(range(1, self.j + 1)):
            raise ValueError(f"blocks do not partition [1..{self.j}]: {blocks}")
        object.__setattr__(self, "blocks", blocks)
        if has_crossing(blocks):
            raise ValueError(f"partition has a crossing: {blocks}")

    def __len__(self) -> int:
        return len(self.blocks)

    def refines(self, other: "NonCrossingPartition") -> bool:
        """Refinement order: every block of ``self`` lies inside a block of ``other``."""
        where = {x: i for i, b in enumerate(other.blocks) for x in b}
        return all(len({where[x] for x in b}) == 1 for b in self.blocks)


def _check_degree(p: Permutation, q: Permutation) -> None:
    if p.k != q.k:
        raise ValueError(f"degree mismatch: {p.k} != {q.k}")


def cycles_of(images: Sequence[int]) -> list[tuple[int, ...]]:
    """Cycles of a 1-based one-line tuple, each from its minimum, sorted by minimum."""
    seen = [False] * len(images)
    out = []
    for start in range(1, len(images) + 1):
        if seen[start - 1]:
            continue
        cyc = []
        x = start
        while not seen[x - 1]:
            seen[x - 1] = True
            cyc.append(x)
            x = images[x - 1]
        out.append(tuple(cyc))
    return out


def cycles(p: Permutation) -> list[tuple[int, ...]]:
    """Orbits of ``p`` in canonical form; fixed points are singleton cycles."""
    return cycles_of(p.images)


def absolute_length(p: Permutation) -> int:
    """Minimal number of transpositions whose product is ``p``."""
    return p.k - len(cycles(p))


def leq(p: Permutation, q: Permutation) -> bool:
    """Absolute order: ``p <= q`` iff ``l(q) == l(p) + l(p**-1 q)``."""
    _check_degree(p, q)
    return absolute_length(q) == absolute_length(p) + absolute_length(p.inverse() * q)


def has_crossing(blocks: Iterable[Iterable[int]]) -> bool:
    where = {x: i for i, b in enumerate(blocks) for x in b}
    pts = sorted(where)
    for a, b, c, d in itertools.combinations(pts, 4):
        if where[a] == where[c] and where[b] == where[d] and where[a] != where[b]:
            return True
    return False


def set_partitions(items: Sequence[int]) -> Iterator[list[list[int]]]:
    """All set partitions of ``items`` (restricted-growth order)."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def noncrossing_partitions(j: int) -> list[NonCrossingPartition]:
    """NC(j) by brute-force crossing checks over all set partitions."""
    out = [NonCrossingPartition(tuple(map(tuple, bl)), j)
           for bl in set_partitions(range(1, j + 1)) if not has_crossing(bl)]
    return sorted(out, key=lambda pi: pi.blocks)


def nc_to_perm(pi: NonCrossingPartition) -> Permutation:
    """``sigma_pi``: each point goes to the next element of its block, cyclically."""
    images = [0] * pi.j
    for b in pi.blocks:
        for i, x in enumerate(b):
            images[x - 1] = b[(i + 1) % len(b)]
    return Permutation(tuple(images))


def perm_to_nc(p: Permutation) -> NonCrossingPartition:
    if not leq(p, Permutation.long_cycle(p.k)):
        raise ValueError(f"{p} is not below the long cycle (1 ... {p.k})")
    return NonCrossingPartition(tuple(cycles(p)), p.k)


def enumerate_factorizations(sigma: Permutation) -> Iterator[tuple[Permutation, Permutation]]:
    """All pairs ``(tau, tau**-1 sigma)``, ``tau`` in lexicographic one-line order."""
    for images in itertools.permutations(range(1, sigma.k + 1)):
        tau = Permutation(images)
        yield tau, tau.inverse() * sigma


def orbits(*perms: Permutation) -> list[frozenset[int]]:
    """Orbits of ``[k]`` under the group generated by ``perms``."""
    k = perms[0].k
    for p in perms[1:]:
        _check_degree(perms[0], p)
    parent = list(range(k + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for x in range(1, k + 1):
            parent[find(x)] = find(p(x))
    groups: dict[int, set[int]] = {}
    for x in range(1, k + 1):
        groups.setdefault(find(x), set()).add(x)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def is_transitive(tau: Permutation, taubar: Permutation) -> bool:
    _check_degree(tau, taubar)
    return len(orbits(tau, taubar)) <= 1


def representative(mu: Sequence[int]) -> Permutation:
    """Consecutive cycles, largest part first: ``(4,2) -> (1 2 3 4)(5 6)``."""
    mu = normalize_cycle_type(mu)
    cycles_, start = [], 1
    for part in mu:
        cycles_.append(tuple(range(start, start + part)))
        start += part
    return Permutation.from_cycles(cycles_, start - 1)


def normalize_cycle_type(mu: Iterable[int]) -> tuple[int, ...]:
    mu = tuple(sorted((int(x) for x in mu), reverse=True))
    if any(x <= 0 for x in mu):
        raise ValueError(f"cycle type parts must be positive: {mu}")
    return mu


def partitions_of(n: int, max_part: int | None = None, min_part: int = 1) -> Iterator[tuple[int, ...]]:
    """Integer partitions of ``n`` in non-increasing form, parts in ``[min_part, max_part]``."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), min_part - 1, -1):
        for rest in partitions_of(n - first, first, min_part):
            yield (first,) + rest
