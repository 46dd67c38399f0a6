"""Edge-erasing transformations on maps and the decompositions ``D1`` and ``D``.

Every formal sum lives on a fixed parent map and is keyed by the set of
erased edge labels, so two terms are equal exactly when they are the same
submap of the parent (not merely isomorphic ones).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .maps import (
    BicoloredMap, WHITE, black_half, connected_components, edge_of, is_connected, white_half,
)

Terms = dict[frozenset[int], int]
_EMPTY: frozenset[int] = frozenset()


@dataclass(frozen=True)
class OrientedLoop:
    """Cyclic sequence of ``(edge label, white_to_black)``, rotated to start at its lowest label."""

    oriented_edges: tuple[tuple[int, bool], ...]

    def __post_init__(self) -> None:
        seq = tuple((int(e), bool(wb)) for e, wb in self.oriented_edges)
        if not seq:
            raise ValueError("a loop needs at least one edge")
        i = min(range(len(seq)), key=lambda j: seq[j][0])
        object.__setattr__(self, "oriented_edges", seq[i:] + seq[:i])

    @property
    def edges(self) -> frozenset[int]:
        return frozenset(e for e, _ in self.oriented_edges)

    def reversed(self) -> "OrientedLoop":
        return OrientedLoop(tuple((e, not wb) for e, wb in reversed(self.oriented_edges)))

    def sort_key(self) -> tuple[int, ...]:
        return tuple(sorted(self.edges))


def _halves(e: int, wb: bool) -> tuple[int, int]:
    return (white_half(e), black_half(e)) if wb else (black_half(e), white_half(e))


def is_valid_loop(m: BicoloredMap, loop: OrientedLoop) -> bool:
    seq = loop.oriented_edges
    if len({e for e, _ in seq}) != len(seq) or not all(e in m.edges for e, _ in seq):
        return False
    joints = []
    for (e1, wb1), (e2, wb2) in zip(seq, seq[1:] + seq[:1]):
        v = m.vertex_of(_halves(e1, wb1)[1])
        if v != m.vertex_of(_halves(e2, wb2)[0]):
            return False
        joints.append(v)
    return len(set(joints)) == len(joints)


def erasable_edges(loop: OrientedLoop) -> frozenset[int]:
    """Edges the loop runs through from their white end to their black end."""
    return frozenset(e for e, wb in loop.oriented_edges if wb)


@dataclass
class FormalMapSum:
    """Integer combination of submaps of ``parent`` keyed by erased edge sets."""

    parent: BicoloredMap
    terms: Terms = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.terms = {frozenset(k): v for k, v in self.terms.items() if v}

    @classmethod
    def of(cls, m: BicoloredMap) -> "FormalMapSum":
        return cls(m, {_EMPTY: 1})

    def __add__(self, other: "FormalMapSum") -> "FormalMapSum":
        if other.parent != self.parent:
            raise ValueError("formal sums over different parent maps")
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return FormalMapSum(self.parent, out)

    def __neg__(self) -> "FormalMapSum":
        return FormalMapSum(self.parent, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "FormalMapSum") -> "FormalMapSum":
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FormalMapSum) and self.parent == other.parent and self.terms == other.terms

    def coefficient(self, erased: Iterable[int]) -> int:
        return self.terms.get(frozenset(erased), 0)

    def coefficient_sum(self) -> int:
        return sum(self.terms.values())

    def items(self) -> Iterator[tuple[BicoloredMap, int]]:
        for erased, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), sorted(kv[0]))):
            yield self.parent.without(erased), c

    def to_json(self) -> list[dict]:
        return [{"erased_edge_labels": sorted(k), "coefficient": str(c)}
                for k, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))]

    @classmethod
    def from_json(cls, parent: BicoloredMap, data: Iterable[Mapping]) -> "FormalMapSum":
        return cls(parent, {frozenset(t["erased_edge_labels"]): int(t["coefficient"]) for t in data})


def _inclusion_exclusion(erasable: frozenset[int]) -> Iterator[tuple[frozenset[int], int]]:
    items = sorted(erasable)
    for r in range(1, len(items) + 1):
        sign = 1 if r % 2 else -1
        for sub in itertools.combinations(items, r):
            yield frozenset(sub), sign


def t_transform(g: "BicoloredMap | FormalMapSum", loop: OrientedLoop) -> FormalMapSum:
    """``sum over nonempty E' in E(L) of (-1)^(|E'|-1) G minus E'``, linear in ``g``."""
    s = FormalMapSum.of(g) if isinstance(g, BicoloredMap) else g
    out: Terms = {}
    for erased, c in s.terms.items():
        if not is_valid_loop(s.parent.without(erased), loop):
            raise ValueError(f"loop {loop.oriented_edges} is not a loop of every term")
        for sub, sign in _inclusion_exclusion(erasable_edges(loop)):
            key = erased | sub
            out[key] = out.get(key, 0) + sign * c
    return FormalMapSum(s.parent, out)


def admissible_loops(m: BicoloredMap) -> list[OrientedLoop]:
    """Admissible loops through the vertex carrying the single external half-edge.

    Sorted by their sorted edge labels; the first one is the canonical choice.
    """
    star = m.external_vertex()
    (x,) = m.externals
    rot = m.rotation_at(star)
    n = len(rot)
    offset = {h: (i - rot.index(x)) % n for i, h in enumerate(rot)}
    found: list[OrientedLoop] = []

    def walk(u: int, path: list[tuple[int, bool]], seen_v: set[int], first: int) -> None:
        for h in m.rotation_at(u):
            if h < 0 or h in m.externals or edge_of(h) in used:
                continue
            e = edge_of(h)
            other = h + 1 if h % 2 else h - 1
            v = m.vertex_of(other)
            step = (e, h % 2 == 1)
            if v == star:
                # loop closes with second half-edge `other`; keep the orientation (x, first, other)
                if offset[first] < offset[other]:
                    found.append(OrientedLoop(tuple(path + [step])))
            elif v not in seen_v:
                used.add(e)
                seen_v.add(v)
                walk(v, path + [step], seen_v, first)
                seen_v.discard(v)
                used.discard(e)

    for a in rot:
        if a < 0 or a in m.externals:
            continue
        e = edge_of(a)
        other = a + 1 if a % 2 else a - 1
        used = {e}
        v = m.vertex_of(other)
        walk(v, [(e, a % 2 == 1)], {star, v}, a)
    return sorted(set(found), key=OrientedLoop.sort_key)


def _product(a: Terms, b: Terms) -> Terms:
    out: Terms = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            key = ka | kb
            out[key] = out.get(key, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


class Decomposer:
    """Memoized ``D1`` and ``D`` over the submaps of one skeleton."""

    def __init__(self) -> None:
        self._d1: dict[BicoloredMap, Terms] = {}
        self._d: dict[BicoloredMap, Terms] = {}

    def d1(self, m: BicoloredMap, first: OrientedLoop | None = None) -> Terms:
        if first is None and m in self._d1:
            return self._d1[m]
        loops = admissible_loops(m)
        if first is not None and first not in loops:
            raise ValueError("requested first loop is not admissible")
        if not loops:
            result = {_EMPTY: 1}
        else:
            loop = first if first is not None else loops[0]
            result = {}
            for sub, sign in _inclusion_exclusion(erasable_edges(loop)):
                for er, c in self.d1(m.without(sub)).items():
                    key = sub | er
                    result[key] = result.get(key, 0) + sign * c
            result = {k: c for k, c in result.items() if c}
        if first is None:
            self._d1[m] = result
        return result

    def d(self, m: BicoloredMap) -> Terms:
        cached = self._d.get(m)
        if cached is not None:
            return cached
        comps = connected_components(m)
        if len(comps) > 1:
            result = {_EMPTY: 1}
            for c in comps:
                result = _product(result, self.d(c))
        elif len(m.vertices) == 1:
            result = {_EMPTY: 1}
        elif not m.externals:
            result = self.d(m.with_externals({-black_half(min(m.edges))}))
        elif len(m.externals) > 1:
            raise ValueError("at most one external half-edge per connected component")
        elif admissible_loops(m):
            result = {}
            for er, c in self.d1(m).items():
                for er2, c2 in self.d(m.without(er)).items():
                    key = er | er2
                    result[key] = result.get(key, 0) + c * c2
            result = {k: c for k, c in result.items() if c}
        else:
            result = {_EMPTY: 1}
            for leg in legs(m):
                result = _product(result, self.d(leg))
        self._d[m] = result
        return result


def legs(m: BicoloredMap) -> list[BicoloredMap]:
    """Legs hanging off the marked vertex of a loop-free (at the marked vertex) map.

    Each leg keeps, as its external half-edge, the far half of the edge that
    attached it to the marked vertex.
    """
    star = m.external_vertex()
    attach = {}
    for h in m.rotation_at(star):
        if h < 0 or h in m.externals:
            continue
        far = h + 1 if h % 2 else h - 1
        attach[m.vertex_of(far)] = far
    cut = m.without(edge_of(h) for h in attach.values()).restrict(m.vertices - {star})
    out = []
    for comp in connected_components(cut):
        roots = [v for v in comp.vertices if v in attach]
        if len(roots) != 1:
            raise ValueError("marked vertex lies on a loop; map is not of the leg form")
        out.append(comp.with_externals({attach[roots[0]]}))
    if len(out) != len(attach):
        raise ValueError("marked vertex lies on a loop; map is not of the leg form")
    return out


_DECOMPOSERS: dict = {}


def _decomposer(m: BicoloredMap) -> Decomposer:
    dec = _DECOMPOSERS.get(m.skeleton)
    if dec is None:
        if len(_DECOMPOSERS) > 4096:
            _DECOMPOSERS.clear()
        dec = _DECOMPOSERS[m.skeleton] = Decomposer()
    return dec


def d1(m: BicoloredMap, first: OrientedLoop | None = None) -> FormalMapSum:
    """The elementary decomposition ``D1`` of a map with one external half-edge.

    ``first`` forces the first admissible loop used; later steps use the
    canonical (smallest sorted labels) loop.
    """
    if len(m.externals) != 1:
        raise ValueError("D1 needs exactly one external half-edge")
    if not is_connected(m):
        raise ValueError("D1 needs a connected map")
    return FormalMapSum(m, _decomposer(m).d1(m, first))


def d_full(m: BicoloredMap) -> FormalMapSum:
    """The complete decomposition ``D`` onto covering forests."""
    for c in connected_components(m):
        if len(c.externals) > 1:
            raise ValueError("at most one external half-edge per connected component")
    return FormalMapSum(m, _decomposer(m).d(m))


def is_covering_forest(m: BicoloredMap, forest: Iterable[int]) -> bool:
    """Acyclic edge subset touching every vertex that has an edge in ``m``."""
    forest = frozenset(forest)
    if not forest <= m.edges:
        return False
    sub = m.without(m.edges - forest)
    touched = {v for e in forest for v in sub.endpoints(e)}
    needed = {v for e in m.edges for v in m.endpoints(e)}
    if not needed <= touched:
        return False
    return all(len(c.vertices) == len(c.edges) + 1 for c in connected_components(sub))


def forest_coefficient(m: BicoloredMap, forest: Iterable[int]) -> int:
    """Coefficient of the submap with edge set ``forest`` in ``D(m)``."""
    forest = frozenset(forest)
    if not is_covering_forest(m, forest):
        raise ValueError(f"{sorted(forest)} is not a covering forest without trivial trees")
    return d_full(m).coefficient(m.edges - forest)


def cumulant_multiplicity(m: BicoloredMap, forest: Iterable[int]) -> int:
    """Forest coefficient with the sign ``(-1)^(t-1)`` removed, ``t`` the number of trees."""
    if not is_connected(m):
        raise ValueError("cumulant multiplicities are defined for connected maps")
    forest = frozenset(forest)
    coef = forest_coefficient(m, forest)
    t = len(connected_components(m.without(m.edges - forest)))
    return coef if t % 2 else -coef
