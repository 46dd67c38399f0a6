"""Bicolored labeled maps stored as rotation systems.

Edge ``i`` owns two half-edges: ``2i - 1`` on its white side and ``2i`` on its
black side.  A map value is a *skeleton* (the cyclic order of every half-edge
at every vertex of the ambient map) together with the subset of vertices,
edges and external half-edges that are present.  Submaps therefore never
rebuild anything and compare by edge-set equality.

External half-edges come in two flavours, both stored in ``externals``:

* a positive id ``h``: the real half-edge ``h`` is present while its edge is
  absent (this happens to the legs produced by the full decomposition);
* a negative id ``-h``: a new half-edge inserted right after ``h`` in the
  cyclic order at ``h``'s vertex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .permutations import Permutation, cycles


WHITE, BLACK = "white", "black"


def edge_of(h: int) -> int:
    return (h + 1) // 2


def white_half(e: int) -> int:
    return 2 * e - 1


def black_half(e: int) -> int:
    return 2 * e


class Skeleton:
    """Ambient rotation system shared by a map and all of its submaps."""

    __slots__ = ("rotations", "colors", "n_edges", "_vertex_of", "_pos", "_hash")

    def __init__(self, rotations: Sequence[Sequence[int]], colors: Sequence[str]):
        self.rotations = tuple(tuple(r) for r in rotations)
        self.colors = tuple(colors)
        if len(self.rotations) != len(self.colors):
            raise ValueError("one color per vertex is required")
        halves = sorted(h for r in self.rotations for h in r)
        self.n_edges = len(halves) // 2
        if halves != list(range(1, 2 * self.n_edges + 1)):
            raise ValueError("half-edges must be exactly 1..2E")
        self._vertex_of = [0] * (2 * self.n_edges + 1)
        self._pos = [0] * (2 * self.n_edges + 1)
        for v, rot in enumerate(self.rotations):
            for i, h in enumerate(rot):
                self._vertex_of[h] = v
                self._pos[h] = i
        for e in range(1, self.n_edges + 1):
            if self.colors[self._vertex_of[white_half(e)]] != WHITE or \
                    self.colors[self._vertex_of[black_half(e)]] != BLACK:
                raise ValueError(f"edge {e} does not join a white and a black vertex")
        self._hash = hash((self.rotations, self.colors))

    def vertex_of(self, h: int) -> int:
        return self._vertex_of[abs(h)]

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return isinstance(other, Skeleton) and (self.rotations, self.colors) == (other.rotations, other.colors)

    def __hash__(self) -> int:
        return self._hash


@dataclass(frozen=True)
class BicoloredMap:
    """A (sub)map of a skeleton; labels are the edge ids themselves."""

    skeleton: Skeleton
    vertices: frozenset[int]
    edges: frozenset[int]
    externals: frozenset[int] = field(default_factory=frozenset)

    # -- structure ---------------------------------------------------------

    def color(self, v: int) -> str:
        return self.skeleton.colors[v]

    def vertex_of(self, h: int) -> int:
        return self.skeleton.vertex_of(h)

    def endpoints(self, e: int) -> tuple[int, int]:
        """``(white vertex, black vertex)`` of edge ``e``."""
        return self.vertex_of(white_half(e)), self.vertex_of(black_half(e))

    @property
    def white_vertices(self) -> list[int]:
        return sorted(v for v in self.vertices if self.color(v) == WHITE)

    @property
    def black_vertices(self) -> list[int]:
        return sorted(v for v in self.vertices if self.color(v) == BLACK)

    def is_present(self, h: int) -> bool:
        return h in self.externals or edge_of(h) in self.edges

    def rotation_at(self, v: int) -> list[int]:
        """Present half-edges at ``v`` (externals included) in cyclic order."""
        out = []
        for h in self.skeleton.rotations[v]:
            if self.is_present(h):
                out.append(h)
            if -h in self.externals:
                out.append(-h)
        return out

    def successor(self, h: int) -> int:
        rot = self.rotation_at(self.vertex_of(h))
        return rot[(rot.index(h) + 1) % len(rot)]

    def partner(self, h: int) -> int | None:
        """Other half of ``h``'s edge, or ``None`` for an external half-edge."""
        if h < 0 or h in self.externals:
            return None
        return h + 1 if h % 2 else h - 1

    def external_vertex(self) -> int:
        if len(self.externals) != 1:
            raise ValueError(f"expected exactly one external half-edge, found {len(self.externals)}")
        (x,) = self.externals
        return self.vertex_of(x)

    # -- derived maps ------------------------------------------------------

    def without(self, erased: Iterable[int]) -> "BicoloredMap":
        return BicoloredMap(self.skeleton, self.vertices, self.edges - frozenset(erased), self.externals)

    def restrict(self, vertices: Iterable[int]) -> "BicoloredMap":
        vs = frozenset(vertices)
        edges = frozenset(e for e in self.edges if set(self.endpoints(e)) <= vs)
        ext = frozenset(x for x in self.externals if self.vertex_of(x) in vs)
        return BicoloredMap(self.skeleton, vs, edges, ext)

    def with_externals(self, externals: Iterable[int]) -> "BicoloredMap":
        return BicoloredMap(self.skeleton, self.vertices, self.edges, frozenset(externals))

    def pair(self) -> tuple[Permutation, Permutation]:
        """Read back ``(tau, taubar)`` by the successor rule."""
        if self.externals or len(self.edges) != self.skeleton.n_edges:
            raise ValueError("only a complete map without external half-edges encodes a pair")
        k = self.skeleton.n_edges
        tau = [edge_of(self.successor(white_half(i))) for i in range(1, k + 1)]
        taubar = [edge_of(self.successor(black_half(i))) for i in range(1, k + 1)]
        return Permutation(tuple(tau)), Permutation(tuple(taubar))

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        vs = sorted(self.vertices)
        return {
            "vertices": [{"id": v, "color": self.color(v)} for v in vs],
            "edges": [list(self.endpoints(e)) + [e] for e in sorted(self.edges)],
            "rotations": {str(v): self.rotation_at(v) for v in vs},
            "externals": sorted(self.externals),
        }

    @classmethod
    def from_json(cls, data: dict) -> "BicoloredMap":
        vs = sorted(int(v["id"]) for v in data["vertices"])
        if vs != list(range(len(vs))):
            raise ValueError("vertex ids must be 0..V-1")
        colors = {int(v["id"]): v["color"] for v in data["vertices"]}
        rot = {int(v): [h for h in r if h > 0] for v, r in data["rotations"].items()}
        skel = Skeleton([rot.get(v, []) for v in vs], [colors[v] for v in vs])
        edges = frozenset(int(e[2]) for e in data["edges"])
        m = cls(skel, frozenset(vs), edges, frozenset(data.get("externals", ())))
        for w, b, e in data["edges"]:
            if m.endpoints(e) != (w, b):
                raise ValueError(f"edge {e} endpoints disagree with rotations")
        return m


@dataclass(frozen=True)
class Face:
    oriented_edges: tuple[tuple[int, bool], ...]  # (label, white_to_black)

    @property
    def word(self) -> tuple[int, ...]:
        return tuple(e for e, wb in self.oriented_edges if wb)


def build_map(tau: Permutation, taubar: Permutation) -> BicoloredMap:
    """The well-labeled map ``M^{tau, taubar}``: whites are cycles of ``tau``, blacks of ``taubar``."""
    if tau.k != taubar.k:
        raise ValueError(f"degree mismatch: {tau.k} != {taubar.k}")
    white = cycles(tau)
    black = cycles(taubar)
    rotations = [[white_half(i) for i in c] for c in white] + [[black_half(i) for i in c] for c in black]
    colors = [WHITE] * len(white) + [BLACK] * len(black)
    skel = Skeleton(rotations, colors)
    return BicoloredMap(skel, frozenset(range(len(colors))), frozenset(range(1, tau.k + 1)))


def faces(m: BicoloredMap) -> list[Face]:
    """Faces traced by the successor rule; external half-edges are skipped."""
    bare = m.with_externals(())
    used: set[tuple[int, bool]] = set()
    out = []
    # white-to-black is the smaller orientation
    for start in ((e, wb) for e in sorted(m.edges) for wb in (True, False)):
        if start in used:
            continue
        seq = []
        cur = start
        while cur not in used:
            used.add(cur)
            seq.append(cur)
            e, wb = cur
            second = black_half(e) if wb else white_half(e)
            nxt = bare.successor(second)
            cur = (edge_of(nxt), nxt % 2 == 1)
        out.append(Face(tuple(seq)))
    return out


def connected_components(m: BicoloredMap) -> list[BicoloredMap]:
    parent = {v: v for v in m.vertices}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in m.edges:
        w, b = m.endpoints(e)
        parent[find(w)] = find(b)
    groups: dict[int, list[int]] = {}
    for v in m.vertices:
        groups.setdefault(find(v), []).append(v)
    return [m.restrict(g) for g in sorted(groups.values(), key=min)]


def is_connected(m: BicoloredMap) -> bool:
    return len(connected_components(m)) <= 1


def is_forest(m: BicoloredMap) -> bool:
    return all(len(c.vertices) == len(c.edges) + 1 for c in connected_components(m))


def attach_external_half_edge(m: BicoloredMap) -> BicoloredMap:
    """Insert an external half-edge right after the black half of the lowest label."""
    if m.externals:
        raise ValueError("map already carries an external half-edge")
    if not m.edges:
        raise ValueError("map has no edges")
    if not is_connected(m):
        raise ValueError("map is not connected")
    return m.with_externals({-black_half(min(m.edges))})
