"""Independent reference implementations and random generators for the tests.

Nothing here imports the algorithms under test; only plain data types from
the package are used to build inputs.
"""

from __future__ import annotations

import random
from itertools import combinations
from pathlib import Path

import networkx as nx
import sympy

DATA = Path(__file__).parent / "data"


def all_faces(s):
    return {c for r in range(1, len(s) + 1) for c in combinations(s, r)}


def closure_oracle(simplices):
    out = set()
    for s in simplices:
        out |= all_faces(s)
    return out


def flow_edges_oracle(complex_simplices, pairs, fixed):
    """Flow edges straight from the definition of the induced map."""
    heads = {t: s for s, t in pairs.items()}
    edges = {}
    for s in complex_simplices:
        if s in fixed:
            edges[s] = all_faces(s)
        elif s in pairs:
            edges[s] = {pairs[s]}
        else:
            edges[s] = all_faces(s) - {s, heads[s]}
    return edges


def dfs_connects(edges, a, b):
    """Is there a walk of length >= 1 from a to b?"""
    stack = list(edges[a])
    seen = set()
    while stack:
        x = stack.pop()
        if x == b:
            return True
        if x in seen:
            continue
        seen.add(x)
        stack.extend(edges[x])
    return False


def hasse_digraph(complex_simplices, pairs):
    g = nx.DiGraph()
    g.add_nodes_from(complex_simplices)
    for b in complex_simplices:
        if len(b) < 2:
            continue
        for i in range(len(b)):
            a = b[:i] + b[i + 1:]
            if pairs.get(a) == b:
                g.add_edge(a, b)
            else:
                g.add_edge(b, a)
    return g


def acyclic_oracle(complex_simplices, pairs):
    return nx.is_directed_acyclic_graph(hasse_digraph(complex_simplices, pairs))


def betti_oracle(simplices, sub=()):
    """Relative Betti numbers via sympy ranks of dense boundary matrices."""
    L = set(simplices)
    A = set(sub)
    cells = {}
    for s in L - A:
        cells.setdefault(len(s) - 1, []).append(s)
    for v in cells.values():
        v.sort()
    top = max((len(s) - 1 for s in L), default=-1)
    ranks = {}
    for p in range(1, top + 1):
        rows = cells.get(p - 1, [])
        cols = cells.get(p, [])
        if not rows or not cols:
            ranks[p] = 0
            continue
        idx = {s: i for i, s in enumerate(rows)}
        m = sympy.zeros(len(rows), len(cols))
        for j, s in enumerate(cols):
            for i in range(len(s)):
                f = s[:i] + s[i + 1:]
                if f in idx:
                    m[idx[f], j] = (-1) ** i
        ranks[p] = m.rank()
    return [len(cells.get(p, [])) - ranks.get(p, 0) - ranks.get(p + 1, 0) for p in range(top + 1)]


def random_complex(rng, max_simplices=30, max_vertices=7):
    """Closure of a few random simplices, capped in size."""
    while True:
        n = rng.randint(3, max_vertices)
        tops = []
        for _ in range(rng.randint(1, 6)):
            d = rng.choice([0, 1, 1, 2, 2, 2, 3])
            d = min(d, n - 1)
            tops.append(tuple(sorted(rng.sample(range(n), d + 1))))
        K = closure_oracle(tops)
        if len(K) <= max_simplices:
            return sorted(K)


def random_acyclic_matching(rng, K):
    """Greedy random matching that keeps the modified Hasse diagram acyclic."""
    Kset = set(K)
    cand = [(s[:i] + s[i + 1:], s) for s in K if len(s) > 1 for i in range(len(s))]
    rng.shuffle(cand)
    used = set()
    pairs = {}
    g = hasse_digraph(K, {})
    for a, b in cand:
        if a in used or b in used or a not in Kset:
            continue
        g.remove_edge(b, a)
        g.add_edge(a, b)
        if nx.is_directed_acyclic_graph(g):
            pairs[a] = b
            used |= {a, b}
        else:
            g.remove_edge(a, b)
            g.add_edge(b, a)
    return pairs


def random_matching(rng, K):
    """Random matching with no acyclicity guarantee."""
    cand = [(s[:i] + s[i + 1:], s) for s in K if len(s) > 1 for i in range(len(s))]
    rng.shuffle(cand)
    used = set()
    pairs = {}
    for a, b in cand:
        if a in used or b in used:
            continue
        if rng.random() < 0.8:
            pairs[a] = b
            used |= {a, b}
    return pairs


def cyclic_matching(K):
    """A matching with a closed V-path around a cycle of the 1-skeleton, if any."""
    g = nx.Graph()
    g.add_nodes_from(s[0] for s in K if len(s) == 1)
    g.add_edges_from(s for s in K if len(s) == 2)
    cycles = nx.cycle_basis(g)
    if not cycles:
        return None
    cyc = cycles[0]
    pairs = {}
    for i, v in enumerate(cyc):
        w = cyc[(i + 1) % len(cyc)]
        pairs[(v,)] = tuple(sorted((v, w)))
    return pairs


def free_pairs(K):
    Kset = set(K)
    out = []
    for s in K:
        cof = [t for t in Kset if len(t) == len(s) + 1 and set(s) <= set(t)]
        if len(cof) == 1:
            out.append((s, cof[0]))
    return sorted(out)


def rng(seed):
    return random.Random(seed)
