import pytest

from maxleaf.digraph import build, is_2connected, normalize, reachable
from maxleaf.gen import gen_boloney, gen_t_l
from maxleaf.stnum import (reduce_indegrees, rr_numbering, split,
                           two_disjoint_root_paths, validate_numbering)
from maxleaf.bounds import topological_order

from support import two_connected_instances


def sandwich_example():
    return build(4, 0, [(0, 1), (0, 2), (1, 3), (2, 3)])


def test_numbering_on_forced_example():
    d = sandwich_example()
    num = rr_numbering(d)
    assert validate_numbering(d, num.order)
    # vertex 3 must sit strictly between its in-neighbors 1 and 2
    pos = num.position
    assert min(pos[1], pos[2]) < pos[3] < max(pos[1], pos[2])


def test_reversed_numbering_is_valid():
    d, _ = normalize(gen_t_l(3))
    num = rr_numbering(d)
    assert validate_numbering(d, num.reversed().order)


def test_validate_rejects_one_sided_vertex():
    d = sandwich_example()
    assert not validate_numbering(d, (3, 1, 2))  # both in-neighbors after 3
    assert not validate_numbering(d, (1, 2))     # not a permutation


def test_reduce_indegrees_noop_when_small():
    d, _ = normalize(gen_t_l(3))
    assert reduce_indegrees(d) == d


def test_reduce_indegrees_trims_funnel():
    d = build(5, 0, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
    assert is_2connected(d)
    red = reduce_indegrees(d)
    assert red.indeg(4) == 2
    assert is_2connected(red)
    assert red.arc_set() <= d.arc_set()


def test_reduce_indegrees_on_corpus():
    for d in two_connected_instances(20, 5, 12, seed_base=40, p_lo=0.3, p_hi=0.6):
        red = reduce_indegrees(d)
        assert is_2connected(red)
        assert all(red.indeg(v) <= 2 for v in red.vertices if v != red.root)
        assert red.arc_set() <= d.arc_set()
        # only in-arcs of high-indegree vertices were touched
        for u, v in d.arc_set() - red.arc_set():
            assert d.indeg(v) >= 3


def test_reduce_indegrees_rejects_cut():
    with pytest.raises(ValueError):
        reduce_indegrees(build(3, 0, [(0, 1), (1, 2)]))


def test_two_disjoint_root_paths():
    d = sandwich_example()
    paths = two_disjoint_root_paths(d, 3)
    assert paths is not None
    a, b = paths
    assert a[0] == b[0] == 0 and a[-1] == b[-1] == 3
    assert not (set(a[1:-1]) & set(b[1:-1]))
    path = build(3, 0, [(0, 1), (1, 2)])
    assert two_disjoint_root_paths(path, 2) is None


def test_numbering_on_families():
    for d in [gen_boloney(3), normalize(gen_t_l(3))[0], normalize(gen_t_l(4))[0]]:
        num = rr_numbering(d)
        assert validate_numbering(d, num.order)


def test_numbering_rejects_non_2connected():
    with pytest.raises(ValueError):
        rr_numbering(build(3, 0, [(0, 1), (1, 2)]))


def test_numbering_deterministic():
    d = two_connected_instances(1, 8, 12, seed_base=9)[0]
    assert rr_numbering(d).order == rr_numbering(d).order


def test_split_example():
    d = sandwich_example()
    num = rr_numbering(d)
    parts = split(d, num)
    root_arcs = {(0, 1), (0, 2)}
    assert root_arcs <= parts.forward.arc_set()
    assert root_arcs <= parts.backward.arc_set()
    assert parts.forward.arc_set() | parts.backward.arc_set() == d.arc_set()
    assert parts.forward.arc_set() & parts.backward.arc_set() == root_arcs


def test_split_two_circuit_goes_both_ways():
    d = build(3, 0, [(0, 1), (0, 2), (1, 2), (2, 1)])
    parts = split(d, rr_numbering(d))
    assert ((1, 2) in parts.forward.arc_set()) != ((1, 2) in parts.backward.arc_set())
    assert ((2, 1) in parts.forward.arc_set()) != ((2, 1) in parts.backward.arc_set())


def test_split_rejects_invalid_numbering():
    from maxleaf.stnum import RRNumbering
    d = sandwich_example()
    bad = RRNumbering((3, 1, 2), {3: 0, 1: 1, 2: 2})
    with pytest.raises(ValueError):
        split(d, bad)


def test_split_properties_on_corpus():
    for d in two_connected_instances(25, 5, 13, seed_base=600):
        num = rr_numbering(d)
        parts = split(d, num)
        for part in (parts.forward, parts.backward):
            assert topological_order(part) is not None
            assert len(reachable(part)) == d.n
            assert all(part.indeg(v) >= 1 for v in part.vertices if v != part.root)
        dr = d.outdeg(d.root)
        assert parts.forward.m + parts.backward.m == d.m + dr
        assert 2 * (max(parts.forward.m, parts.backward.m) - dr) >= d.m - dr
