import itertools
import random

import pytest

from kerovpoly.maps import (
    BLACK,
    WHITE,
    BicoloredMap,
    attach_external_half_edge,
    build_map,
    connected_components,
    faces,
    is_connected,
    is_forest,
)
from kerovpoly.permutations import Permutation, cycles, nc_to_perm, noncrossing_partitions, orbits

from _util import all_perms, random_perm

FIG_TAU = Permutation.parse("(1 5)(2 7)(3)(4 8 6)")
FIG_TAUBAR = Permutation.parse("(1 7 4)(2 3 6)(5 8)")


def _cyclic_forms(seq):
    return {tuple(seq[i:] + seq[:i]) for i in range(len(seq))}


def _same_cycles(words, perm_cycles):
    canon = lambda c: min(_cyclic_forms(list(c)))
    return sorted(map(canon, words)) == sorted(map(canon, perm_cycles))


def test_path_tree():
    m = build_map(Permutation.identity(2), Permutation.parse("(1 2)"))
    assert len(m.white_vertices) == 2 and len(m.black_vertices) == 1
    assert len(m.edges) == 2 and is_forest(m) and is_connected(m)


def test_worked_example_single_face():
    m = build_map(FIG_TAU, FIG_TAUBAR)
    assert (len(m.white_vertices), len(m.black_vertices), len(m.edges)) == (4, 3, 8)
    fs = faces(m)
    assert len(fs) == 1
    assert fs[0].word in _cyclic_forms(list(range(1, 9)))


def test_star_map():
    k = 4
    m = build_map(Permutation.long_cycle(k), Permutation.identity(k))
    assert len(m.white_vertices) == 1 and len(m.black_vertices) == k
    (f,) = faces(m)
    assert f.word == (1, 2, 3, 4)


def test_single_edge_face():
    (f,) = faces(build_map(Permutation.identity(1), Permutation.identity(1)))
    assert f.word == (1,)


def test_degree_mismatch():
    with pytest.raises(ValueError):
        build_map(Permutation.identity(2), Permutation.identity(3))


@pytest.mark.parametrize("k", range(1, 6))
def test_pair_round_trip_and_orbits(k):
    for tau, taubar in itertools.product(all_perms(k), repeat=2):
        m = build_map(tau, taubar)
        assert m.pair() == (tau, taubar)
        assert len(connected_components(m)) == len(orbits(tau, taubar))


def test_faces_are_cycles_of_product_random():
    rng = random.Random(7)
    for _ in range(1000):
        k = rng.randint(1, 8)
        tau, taubar = random_perm(k, rng), random_perm(k, rng)
        fs = faces(build_map(tau, taubar))
        assert sum(len(f.word) for f in fs) == k
        assert _same_cycles([f.word for f in fs], cycles(tau * taubar))


def test_components():
    assert len(connected_components(build_map(Permutation.identity(3), Permutation.identity(3)))) == 3
    m = build_map(Permutation.parse("(1 2)", 4), Permutation.identity(4))
    comps = connected_components(m)
    assert len(comps) == 3
    assert sorted(len(c.edges) for c in comps) == [1, 1, 2]


def test_forest_detection():
    double = build_map(Permutation.parse("(1 2)"), Permutation.parse("(1 2)"))
    assert not is_forest(double)
    assert is_forest(double.without({1}))
    for pi in noncrossing_partitions(4):
        tau = nc_to_perm(pi)
        taubar = tau.inverse() * Permutation.long_cycle(4)
        assert is_forest(build_map(tau, taubar))


def test_attach_external():
    m = build_map(Permutation.long_cycle(3), Permutation.identity(3))
    mm = attach_external_half_edge(m)
    assert mm.externals == frozenset({-2})
    assert mm.color(mm.external_vertex()) == BLACK
    with pytest.raises(ValueError):
        attach_external_half_edge(mm)
    with pytest.raises(ValueError):
        attach_external_half_edge(m.without({1, 2, 3}))


def test_colors_and_endpoints():
    m = build_map(FIG_TAU, FIG_TAUBAR)
    for e in m.edges:
        w, b = m.endpoints(e)
        assert m.color(w) == WHITE and m.color(b) == BLACK


def test_json_round_trip():
    m = build_map(FIG_TAU, FIG_TAUBAR)
    assert BicoloredMap.from_json(m.to_json()) == m
