"""Grouping critical simplices that share a coordinate value and are connected."""

from __future__ import annotations

from . import _graph
from .dynamics import FlowGraph, coarsen, connects, finest_decomposition
from .errors import CycleDetected, FCycle
from .mdm import critical_points, gradient
from .morse import morse_report_decomposition


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            lo, hi = sorted((ra, rb))
            self.parent[hi] = lo


def related(f, F, s, t):
    """s ~ t: some coordinate agrees and one connects to the other."""
    if s == t:
        return True
    if not any(x == y for x, y in zip(f(s), f(t))):
        return False
    return connects(F, s, t) or connects(F, t, s)


def critical_components(f, F=None):
    """Classes of the transitive closure of ``related``, sorted by least member."""
    F = F or FlowGraph(gradient(f))
    crit = critical_points(f)
    uf = _UnionFind(crit)
    for i, s in enumerate(crit):
        for t in crit[i + 1:]:
            if related(f, F, s, t):
                uf.union(s, t)
    groups = {}
    for s in crit:
        groups.setdefault(uf.find(s), []).append(s)
    return sorted((tuple(sorted(g)) for g in groups.values()), key=lambda g: g[0])


def component_graph(f, F=None):
    """(components, edges) with an edge i -> j when a member of i connects to one of j."""
    F = F or FlowGraph(gradient(f))
    comps = critical_components(f, F)
    edges = set()
    for i, ci in enumerate(comps):
        for j, cj in enumerate(comps):
            if i != j and any(connects(F, s, t) for s in ci for t in cj):
                edges.add((i, j))
    return comps, edges


def f_cycle(f, F=None):
    """A cycle of components (as lists of members), or None."""
    comps, edges = component_graph(f, F)
    succ = {i: [] for i in range(len(comps))}
    for i, j in edges:
        succ[i].append(j)
    cyc = _graph.least_cycle(range(len(comps)), succ, allow_self_loop=False)
    if cyc is None:
        return None
    return [list(comps[i]) for i in cyc]


def is_acyclic_mdm(f):
    return f_cycle(f) is None


def component_partition(f, F, M):
    """Index partition of the finest decomposition induced by the components."""
    where = {next(iter(S)): r for r, S in enumerate(M.sets)}
    return [[where[s] for s in comp] for comp in critical_components(f, F)]


def component_decomposition(f):
    """Morse decomposition whose sets are the Morse sets of the components.

    Raises FCycle when the components cannot be ordered.
    """
    F = FlowGraph(gradient(f))
    M = finest_decomposition(F)
    part = component_partition(f, F, M)
    try:
        return F, coarsen(F, M, part)
    except CycleDetected as exc:
        raise FCycle(f_cycle(f, F) or exc.witness, "the component graph has a cycle") from None


def component_inequalities(f):
    F, M = component_decomposition(f)
    return morse_report_decomposition(F, M, check=False)
