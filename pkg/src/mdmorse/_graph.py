"""Small directed-graph kernel shared by the field, flow and component code.

Graphs are plain dicts mapping a node to an iterable of successors. Nodes
must be mutually comparable so that every result can be made deterministic.
"""

from __future__ import annotations

import heapq
from collections import deque


def strongly_connected_components(nodes, succ):
    """Tarjan's algorithm, iterative. Returns a list of frozensets."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    out = []
    counter = 0
    for root in sorted(nodes):
        if root in index:
            continue
        work = [(root, iter(sorted(succ.get(root, ()))))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(sorted(succ.get(w, ())))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                out.append(frozenset(comp))
    return out


def cyclic_components(nodes, succ):
    """SCCs that carry a cycle: size at least two, or a self-loop."""
    comps = []
    for comp in strongly_connected_components(nodes, succ):
        if len(comp) > 1:
            comps.append(comp)
        else:
            (v,) = comp
            if v in succ.get(v, ()):
                comps.append(comp)
    return comps


def reachable(start, succ, include_start=False):
    """Nodes reachable from ``start``; by default only via walks of length >= 1."""
    seen = set()
    queue = deque(succ.get(start, ()))
    while queue:
        v = queue.popleft()
        if v in seen:
            continue
        seen.add(v)
        queue.extend(w for w in succ.get(v, ()) if w not in seen)
    if include_start:
        seen.add(start)
    return seen


def reachable_from_set(starts, succ):
    """Nodes reachable from any node of ``starts`` by walks of length >= 0."""
    seen = set(starts)
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for w in succ.get(v, ()):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def reverse(succ):
    pred = {v: [] for v in succ}
    for v, ws in succ.items():
        for w in ws:
            pred.setdefault(w, []).append(v)
    return pred


def induced(succ, keep):
    return {v: [w for w in succ.get(v, ()) if w in keep] for v in keep}


def shortest_cycle_through(start, succ, allow_self_loop=True):
    """Shortest closed walk start -> ... -> start, ties broken by sorted successors.

    Returns the list of nodes without repeating the start at the end, or None.
    """
    nbrs = sorted(succ.get(start, ()))
    if allow_self_loop and start in nbrs:
        return [start]
    parent = {}
    queue = deque()
    for w in nbrs:
        if w == start or w in parent:
            continue
        parent[w] = start
        queue.append(w)
    while queue:
        v = queue.popleft()
        for w in sorted(succ.get(v, ())):
            if w == start:
                path = [v]
                while path[-1] != start:
                    path.append(parent[path[-1]])
                return path[::-1]
            if w not in parent:
                parent[w] = v
                queue.append(w)
    return None


def least_cycle(nodes, succ, allow_self_loop=True):
    """Canonical cycle witness: the shortest cycle through the least cyclic node."""
    for v in sorted(nodes):
        cyc = shortest_cycle_through(v, succ, allow_self_loop)
        if cyc is not None:
            return cyc
    return None


def topological_order(nodes, succ):
    """Kahn's algorithm with a min-heap, so ties go to the least node.

    Raises ValueError when the graph has a cycle.
    """
    indeg = {v: 0 for v in nodes}
    for v in nodes:
        for w in succ.get(v, ()):
            if w in indeg:
                indeg[w] += 1
    heap = [v for v, d in indeg.items() if d == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in succ.get(v, ()):
            if w in indeg:
                indeg[w] -= 1
                if indeg[w] == 0:
                    heapq.heappush(heap, w)
    if len(order) != len(indeg):
        raise ValueError("graph has a cycle")
    return order


def transitive_reduction(nodes, edges):
    """Hasse edges of the transitive closure of an acyclic relation."""
    succ = {v: set() for v in nodes}
    for a, b in edges:
        succ[a].add(b)
    reach = {v: reachable(v, succ) for v in nodes}
    out = set()
    for a in nodes:
        for b in reach[a]:
            if not any(b in reach[c] for c in reach[a] if c != b):
                out.add((a, b))
    return out
