"""Shared corpus builders and independent brute-force oracles for the tests."""
from __future__ import annotations

import random
from itertools import combinations

from maxleaf.digraph import RootedDigraph, build, is_2connected, normalize, reachable
from maxleaf.gen import gen_random
from maxleaf.reduce import iter_bipath4, iter_rule3
from maxleaf.digraph import cutvertices as idom_cutvertices


def random_instances(count, n_lo, n_hi, seed_base, p_lo=0.15, p_hi=0.5):
    """Deterministic stream of random normalized instances."""
    out = []
    seed = seed_base
    while len(out) < count:
        rng = random.Random(seed)
        n = rng.randint(n_lo, n_hi)
        p = rng.uniform(p_lo, p_hi)
        out.append(gen_random(n, p, seed))
        seed += 1
    return out


def random_with_chain(seed):
    """Random instance with a planted chain of 2-circuits between two vertices,
    so that the bipath contraction rule has material to work on."""
    rng = random.Random(seed)
    base = gen_random(rng.randint(4, 6), rng.uniform(0.2, 0.45), seed * 31 + 7)
    root_out = set(base.root_out())
    pool = [v for v in base.vertices if v != base.root and v not in root_out]
    if len(pool) < 2:
        pool = [v for v in base.vertices if v != base.root]
    if len(pool) < 2:
        return base
    a, b = rng.sample(sorted(pool), 2)
    t = rng.randint(3, 4)
    start = max(base.vertices) + 1
    chain = list(range(start, start + t))
    arcs = list(base.arc_set())
    prev = a
    for c in chain:
        arcs += [(prev, c), (c, prev)]
        prev = c
    arcs += [(prev, b), (b, prev)]
    d = RootedDigraph(list(base.vertices) + chain, base.root, arcs)
    d, _ = normalize(d)
    return d


def mixed_rule_corpus(count, seed_base):
    """Random instances mixed with chain-planted ones, all with n <= 10."""
    out = []
    seed = seed_base
    while len(out) < count:
        if seed % 4 == 0:
            d = random_with_chain(seed)
        else:
            rng = random.Random(seed)
            d = gen_random(rng.randint(4, 9), rng.uniform(0.15, 0.5), seed)
        if d.n <= 10:
            out.append(d)
        seed += 1
    return out


def random_oriented(n, p, seed):
    """Random instance without 2-circuits: arborescence plus one-way chords."""
    rng = random.Random(seed)
    arcs = {(rng.randrange(v), v) for v in range(1, n)}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                a, b = (u, v) if rng.random() < 0.5 else (v, u)
                if (b, a) not in arcs:
                    arcs.add((a, b))
    d, _ = normalize(build(n, 0, sorted(arcs)))
    return d


def two_connected_instances(count, n_lo, n_hi, seed_base, oriented=False,
                            p_lo=0.15, p_hi=0.5):
    """Rejection-sampled stream of 2-connected instances, deterministic in seed."""
    out = []
    seed = seed_base
    while len(out) < count:
        rng = random.Random(seed)
        n = rng.randint(n_lo, n_hi)
        p = rng.uniform(p_lo, p_hi)
        d = random_oriented(n, p, seed) if oriented else gen_random(n, p, seed)
        if d.n >= 4 and is_2connected(d):
            out.append(d)
        seed += 1
    return out


def random_undirected_graphs(count, n_hi, seed_base, p_lo=0.1, p_hi=0.6):
    """(vertices, edges) pairs of simple undirected graphs."""
    out = []
    for i in range(count):
        rng = random.Random(seed_base + i)
        n = rng.randint(2, n_hi)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < rng.uniform(p_lo, p_hi)]
        out.append((list(range(n)), edges))
    return out


# -- independent oracles -------------------------------------------------


def brute_cutvertices(d):
    """Cutvertices by removing each vertex and re-running reachability."""
    return sorted(x for x in d.vertices if x != d.root
                  and len(reachable(d, {x})) < d.n - 1)


def brute_min_vertex_cover(vertices, edges):
    """Smallest vertex cover by subset enumeration."""
    vertices = list(vertices)
    edges = list(edges)
    for size in range(len(vertices) + 1):
        for sub in combinations(vertices, size):
            s = set(sub)
            if all(u in s or v in s for u, v in edges):
                return s
    raise AssertionError("unreachable")


def all_rule_applications(d):
    """Every single rule application available on d: (kind, payload) pairs."""
    apps = [("rule1", x) for x in idom_cutvertices(d)]
    apps += [("rule3", pair) for pair in iter_rule3(d)]
    apps += [("rule2", p) for p in iter_bipath4(d)]
    return apps


def tree_ancestors(tree, v):
    anc = []
    while v in tree.parent:
        v = tree.parent[v]
        anc.append(v)
    return anc


def is_ancestor(tree, a, v):
    return a in tree_ancestors(tree, v)
