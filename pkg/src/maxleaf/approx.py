"""Constant-factor approximation for rooted maximum leaf outbranchings.

After exhausting the cutvertex rule the digraph is 2-connected and splits
into l special vertices (indegree >= 3 or a simple in-arc) and chains of
non-special vertices (h of them).  Three candidate trees are built: the two
numbering-based bounds (together worth l/30 leaves) and a tree that connects
the special vertices through as few chains as possible, leaving each unused
chain a pendant leaf (worth h - l leaves).  Since no spanning out-tree can
have more than l + 2h leaves, the best candidate is within factor 92 of the
optimum.  Kernelizing instead gives a sqrt(m/90) guarantee on the reduced
size m.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .digraph import (Outbranching, RootedDigraph, bfs_tree, classify,
                      find_cutvertex, normalize, verify_outbranching)
from .errors import InfeasibleError, InternalInvariantError
from .bounds import bound1_tree, bound2_tree
from .reduce import (NormDeleteStep, NormMergeStep, ReductionTrace,
                     apply_rule1, kernelize, large_indegree_witness, lift,
                     rule0)
from .stnum import rr_numbering


@dataclass(frozen=True)
class WeakBipath:
    """Maximal chain of non-special vertices with its special anchors."""

    vertices: tuple   # chain order, smaller end id first
    anchors: tuple    # special in-neighbor of each end

    @property
    def ends(self):
        return (self.vertices[0], self.vertices[-1])

    def __len__(self):
        return len(self.vertices)


def weak_bipaths(d, classification=None):
    """Partition of the non-special vertices into maximal chains.

    Every non-special vertex has exactly two in-neighbors, both joined to it
    by 2-circuits; anything else signals a classification bug.
    """
    cls = classification or classify(d)
    ns = cls.nonspecial
    chain_nbrs = {}
    anchor_of = {}
    for v in sorted(ns):
        nbrs = d.in_neighbors(v)
        if len(nbrs) != 2 or not all(d.has_arc(v, u) for u in nbrs):
            raise InternalInvariantError(
                f"non-special vertex {v} lacks the two-2-circuit in-neighbor shape")
        chain_nbrs[v] = [u for u in nbrs if u in ns]
        anchor_of[v] = [u for u in nbrs if u not in ns]
    paths = []
    seen = set()
    for v in sorted(ns):
        if v in seen or len(chain_nbrs[v]) == 2:
            continue
        chain = [v]
        seen.add(v)
        prev, cur = v, next((w for w in chain_nbrs[v] if w not in seen), None)
        while cur is not None:
            chain.append(cur)
            seen.add(cur)
            nxt = next((w for w in chain_nbrs[cur] if w != prev), None)
            prev, cur = cur, nxt
        if chain[-1] < chain[0]:
            chain.reverse()
        first, last = chain[0], chain[-1]
        if len(chain) == 1:
            a, b = sorted(anchor_of[v])
            anchors = (a, b)
        else:
            anchors = (anchor_of[first][0], anchor_of[last][0])
        for a in anchors:
            if a not in cls.special:
                raise InternalInvariantError(f"chain anchor {a} is not special")
        paths.append(WeakBipath(tuple(chain), anchors))
    if len(seen) != len(ns):
        raise InternalInvariantError("non-special vertices contain a 2-circuit cycle")
    return paths


def majbound_tree(d, classification=None, paths=None):
    """Out-tree with at least h - l leaves (h chains, l special vertices).

    Specials are connected greedily: a step that walks through a chain pays
    one chain and gains one special, and the root's outneighbors come free,
    so at most l - 2 chains are consumed; every untouched chain hangs as a
    pendant path contributing a leaf.
    """
    if d.n <= 2:
        return bfs_tree(d)
    cls = classification or classify(d)
    paths = paths if paths is not None else weak_bipaths(d, cls)
    specials = cls.special
    nonspecial = cls.nonspecial

    parent = {}
    reached = {d.root}
    pending = set(specials)
    while pending:
        prev = {}
        queue = deque(sorted(reached))
        target = None
        while queue and target is None:
            a = queue.popleft()
            for b in d.out_neighbors(a):
                if b in reached or b in prev:
                    continue
                prev[b] = a
                if b in pending:
                    target = b
                    break
                if b in nonspecial:
                    queue.append(b)
        if target is None:
            raise InternalInvariantError("unreached special vertex in a connected digraph")
        v = target
        chain = []
        while v not in reached:
            chain.append(v)
            v = prev[v]
        for w in reversed(chain):
            parent[w] = prev[w]
            reached.add(w)
        pending.discard(target)

    for p in paths:
        verts = p.vertices
        for i, v in enumerate(verts):
            if v in reached:
                continue
            if i > 0 and verts[i - 1] in reached:
                parent[v] = verts[i - 1]
            elif i == 0:
                parent[v] = p.anchors[0]
            else:
                raise InternalInvariantError(f"chain vertex {v} has no attachment point")
            reached.add(v)
    if len(reached) != d.n:
        raise InternalInvariantError("tree construction failed to span the digraph")
    return Outbranching(d.root, parent)


@dataclass(frozen=True)
class ApproxReport:
    """Counts, candidate trees and certified bounds on the 2-connected core."""

    l: int
    h: int
    leaves_bound1: int
    leaves_bound2: int
    leaves_majbound: int
    chosen: str
    lower: Fraction
    upper: int
    trees: dict

    @property
    def chosen_tree(self):
        return self.trees[self.chosen]

    def format(self):
        lower = str(self.lower)
        return "\n".join([
            f"l={self.l}",
            f"h={self.h}",
            f"leaves_bound1={self.leaves_bound1}",
            f"leaves_bound2={self.leaves_bound2}",
            f"leaves_majbound={self.leaves_majbound}",
            f"chosen={self.chosen}",
            f"lower={lower}",
            f"upper={self.upper}",
        ]) + "\n"


def _strip_cutvertices(d):
    """Normalize and exhaust the cutvertex rule; returns (core, trace)."""
    steps = []
    work, note = normalize(d)
    for kind, payload in note.events:
        steps.append(NormDeleteStep(payload) if kind == "del" else NormMergeStep(payload))
    while True:
        x = find_cutvertex(work)
        if x is None:
            break
        work, st = apply_rule1(work, x)
        steps.append(st)
        work, note = normalize(work)
        for kind, payload in note.events:
            steps.append(NormDeleteStep(payload) if kind == "del" else NormMergeStep(payload))
    return work, ReductionTrace(tuple(steps))


def approximate(d0):
    """Factor-92 approximation; returns (tree on the input digraph, report)."""
    if not rule0(d0):
        raise InfeasibleError("some vertex is unreachable from the root")
    core, trace = _strip_cutvertices(d0)

    if core.n <= 2:
        trivial = bfs_tree(core)
        trees = {"bound1": trivial, "bound2": trivial, "majbound": trivial}
        l = 0 if core.n == 1 else 1
        report = ApproxReport(l, 0, trivial.leaf_count, trivial.leaf_count,
                              trivial.leaf_count, "bound1", Fraction(l, 30),
                              max(l, trivial.leaf_count), trees)
        lifted = lift(trivial, trace)
        return lifted, report

    cls = classify(core)
    paths = weak_bipaths(core, cls)
    l, h = len(cls.special), len(paths)
    num = rr_numbering(core)
    t1 = bound1_tree(core, num)
    t2 = bound2_tree(core, num)
    t3 = majbound_tree(core, cls, paths)
    trees = {"bound1": t1, "bound2": t2, "majbound": t3}
    chosen = max(trees, key=lambda k: trees[k].leaf_count)
    for label in ("bound1", "bound2", "majbound"):  # earliest wins ties
        if trees[label].leaf_count == trees[chosen].leaf_count:
            chosen = label
            break
    lower = max(Fraction(l, 30), Fraction(h - l))
    upper = l + 2 * h
    best = trees[chosen]
    if Fraction(best.leaf_count) < lower:
        raise InternalInvariantError(
            f"candidate trees reached {best.leaf_count} leaves, below the certified {lower}")
    lifted = lift(best, trace)
    check = verify_outbranching(d0, lifted)
    if not check.ok:
        raise InternalInvariantError(f"lifted tree invalid: {check.reason}")
    report = ApproxReport(l, h, t1.leaf_count, t2.leaf_count, t3.leaf_count,
                          chosen, lower, upper, trees)
    return lifted, report


def approximate_each_root(d):
    """Run the approximation with every vertex as root; yields (root, tree, report)."""
    for v in d.vertices:
        cand = RootedDigraph(d.vertices, v, d.arc_set())
        if not rule0(cand):
            continue
        tree, report = approximate(cand)
        yield v, tree, report


def sqrt_opt_tree(d0):
    """Kernelize, certify the best witness the kernel machinery offers, lift.

    The lifted tree has at least floor(sqrt(m/90)) leaves where m is the
    vertex count of the reduced digraph.
    """
    if not rule0(d0):
        raise InfeasibleError("some vertex is unreachable from the root")
    reduced, trace = kernelize(d0)
    if reduced.n == 1:
        return Outbranching(reduced.root, {})
    candidates = []
    best_x = max((v for v in reduced.vertices if v != reduced.root),
                 key=lambda v: (reduced.indeg(v), -v), default=None)
    if best_x is not None and reduced.indeg(best_x) >= 1:
        candidates.append(large_indegree_witness(reduced, best_x))
    candidates.append(bfs_tree(reduced))
    if reduced.n >= 3:
        d_norm, note = normalize(reduced)
        if not note.merged:
            num = rr_numbering(d_norm)
            candidates.append(bound1_tree(d_norm, num))
            candidates.append(bound2_tree(d_norm, num))
    best = max(candidates, key=lambda t: t.leaf_count)
    floor_bound = math.isqrt(reduced.n // 90)
    if best.leaf_count < floor_bound:
        raise InternalInvariantError(
            f"kernel witness has {best.leaf_count} leaves, below sqrt({reduced.n}/90)")
    lifted = lift(best, trace)
    check = verify_outbranching(d0, lifted)
    if not check.ok:
        raise InternalInvariantError(f"lifted tree invalid: {check.reason}")
    return lifted
