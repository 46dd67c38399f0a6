import random

import pytest

from kerovpoly.decompose import (
    FormalMapSum,
    OrientedLoop,
    admissible_loops,
    cumulant_multiplicity,
    d1,
    d_full,
    erasable_edges,
    forest_coefficient,
    is_covering_forest,
    is_valid_loop,
    t_transform,
)
from kerovpoly.maps import attach_external_half_edge, build_map, connected_components, is_connected, is_forest
from kerovpoly.nseries import n_of_graph, n_of_sum
from kerovpoly.permutations import Permutation, nc_to_perm, noncrossing_partitions

from _util import all_one_marked_maps, connected_maps_up_to_relabeling, random_perm

WORKED = build_map(Permutation.parse("(1 5)(2 7)(3)(4 8 6)"), Permutation.parse("(1 7 4)(2 3 6)(5 8)"))


def double_edge():
    return build_map(Permutation.parse("(1 2)"), Permutation.parse("(1 2)"))


def all_loops(m):
    """Every simple oriented loop, found as admissible loops for every marking."""
    bare = m.with_externals(())
    found = set()
    for h in range(1, 2 * m.skeleton.n_edges + 1):
        marked = bare.with_externals({-h})
        if not is_connected(marked.restrict({c for c in marked.vertices})):
            continue
        found.update(admissible_loops(marked))
        found.update(L.reversed() for L in admissible_loops(marked))
    return sorted(found, key=lambda L: L.oriented_edges)


def test_worked_loop_erasable_edges():
    forward = OrientedLoop(((7, False), (2, True), (6, False), (4, True)))
    assert is_valid_loop(WORKED, forward)
    assert erasable_edges(forward) == {2, 4}
    backward = forward.reversed()
    assert is_valid_loop(WORKED, backward)
    assert erasable_edges(backward) == {6, 7}


def test_loop_validation():
    assert not is_valid_loop(WORKED, OrientedLoop(((7, True), (2, True), (6, False), (4, True))))
    assert not is_valid_loop(WORKED.without({2}), OrientedLoop(((7, False), (2, True), (6, False), (4, True))))


def test_double_edge_loop():
    g = double_edge()
    loops = all_loops(g)
    assert loops and all(len(erasable_edges(L)) == 1 for L in loops)
    s = t_transform(g, loops[0])
    assert len(s.terms) == 1
    ((erased, c),) = s.terms.items()
    assert len(erased) == 1 and c == 1


def test_four_cycle_inclusion_exclusion():
    g = build_map(Permutation.parse("(1 2)(3 4)"), Permutation.parse("(1 3)(2 4)"))
    loop = next(L for L in all_loops(g) if len(L.oriented_edges) == 4)
    s = t_transform(g, loop)
    assert sorted(s.terms.values()) == [-1, 1, 1]
    assert s.coefficient(erasable_edges(loop)) == -1


def test_t_transform_preserves_n_random():
    rng = random.Random(2024)
    checked = 0
    while checked < 200:
        k = rng.randint(2, 6)
        g = build_map(random_perm(k, rng), random_perm(k, rng))
        loops = all_loops(g)
        if not loops:
            continue
        loop = rng.choice(loops)
        m = rng.randint(1, 4)
        assert n_of_sum(t_transform(g, loop), m) == n_of_graph(g, m)
        checked += 1


def test_t_transform_on_sum_is_linear():
    g = WORKED
    loop = OrientedLoop(((7, False), (2, True), (6, False), (4, True)))
    s = FormalMapSum(g, {frozenset({1}): 2, frozenset(): -1})
    once = t_transform(g, loop)
    shifted = FormalMapSum(g, {k | {1}: c for k, c in once.terms.items()})
    assert t_transform(s, loop) == shifted + shifted - once
    with pytest.raises(ValueError):
        t_transform(FormalMapSum(g, {frozenset({2}): 1}), loop)


def test_admissible_loops_tree_and_double_edge():
    tree = attach_external_half_edge(build_map(Permutation.long_cycle(3), Permutation.identity(3)))
    assert admissible_loops(tree) == []
    assert len(admissible_loops(attach_external_half_edge(double_edge()))) == 1


def test_admissible_loops_need_marked_vertex():
    # double edge between w1,b1 and a pendant edge; mark the far end of the pendant edge
    g = build_map(Permutation.parse("(1 2)(3)"), Permutation.parse("(1 2 3)"))
    assert all_loops(g)
    for h in range(1, 7):
        marked = g.with_externals({-h})
        for L in admissible_loops(marked):
            verts = {marked.vertex_of(2 * e) for e, _ in L.oriented_edges} | \
                {marked.vertex_of(2 * e - 1) for e, _ in L.oriented_edges}
            assert marked.external_vertex() in verts


@pytest.mark.parametrize("k", range(1, 5))
def test_one_orientation_admissible(k):
    for m in all_one_marked_maps(k):
        loops = admissible_loops(m)
        assert len({L.edges for L in loops}) == len(loops)


def test_d1_basics():
    tree = attach_external_half_edge(build_map(Permutation.long_cycle(3), Permutation.identity(3)))
    assert d1(tree).terms == {frozenset(): 1}
    res = d1(attach_external_half_edge(double_edge()))
    assert len(res.terms) == 1 and res.coefficient_sum() == 1
    with pytest.raises(ValueError):
        d1(double_edge())


def test_d1_result_has_no_admissible_loops():
    m = attach_external_half_edge(WORKED)
    res = d1(m)
    assert res.coefficient_sum() == 1
    for sub, _ in res.items():
        assert admissible_loops(sub) == []


@pytest.mark.parametrize("k", range(1, 5))
def test_d1_loop_choice_independence(k):
    for m in all_one_marked_maps(k):
        loops = admissible_loops(m)
        if len(loops) < 2:
            continue
        ref = d1(m)
        for L in loops[1:]:
            assert d1(m, L) == ref


@pytest.mark.parametrize("k", range(1, 5))
def test_sign_law_and_coefficient_sum(k):
    for m in connected_maps_up_to_relabeling(k):
        res = d_full(m)
        assert res.coefficient_sum() == 1
        for sub, c in res.items():
            assert is_forest(sub)
            t = len(connected_components(sub))
            assert (c > 0) == (t % 2 == 1)


def test_d_fixes_forests():
    for pi in noncrossing_partitions(5):
        tau = nc_to_perm(pi)
        m = build_map(tau, tau.inverse() * Permutation.long_cycle(5))
        assert d_full(m).terms == {frozenset(): 1}
    forest = build_map(Permutation.parse("(1 2)", 4), Permutation.parse("(3 4)", 4))
    assert d_full(forest).terms == {frozenset(): 1}


def test_d_single_vertex_and_product():
    assert d_full(WORKED.restrict({0})).terms == {frozenset(): 1}
    two = build_map(Permutation.parse("(1 2)(3 4)"), Permutation.parse("(1 2)(3 4)"))
    res = d_full(two)
    assert len(res.terms) == 1 and res.coefficient_sum() == 1


def test_worked_example_d_invariants():
    res = d_full(WORKED)
    assert res.coefficient_sum() == 1
    assert n_of_sum(res, 3) == n_of_graph(WORKED, 3)


def test_forest_helpers():
    g = double_edge()
    assert is_covering_forest(g, {1}) and is_covering_forest(g, {2})
    assert not is_covering_forest(g, {1, 2})
    assert forest_coefficient(g, {1}) + forest_coefficient(g, {2}) == 1
    assert cumulant_multiplicity(g, {1}) >= 0
    with pytest.raises(ValueError):
        forest_coefficient(g, {1, 2})


def test_json_round_trip():
    res = d_full(WORKED)
    assert FormalMapSum.from_json(WORKED, res.to_json()) == res
