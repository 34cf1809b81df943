"""Combinatorial flows, invariant sets and Morse decompositions."""

from __future__ import annotations

import threading
from dataclasses import dataclass

from . import _graph
from .complex import exit_set, faces_of, is_subcomplex
from .errors import CycleDetected, InvalidPartition, NotInvariant


class FlowGraph:
    """The multivalued map induced by a discrete vector field, as a digraph.

    A fixed point maps to its closure (so it has a self-loop), a head maps to
    its proper faces except its own tail, and a tail maps to its head.
    """

    def __init__(self, field):
        self.field = field
        self.complex = field.complex
        succ = {}
        for s in self.complex:
            if s in field.fixed:
                succ[s] = tuple(sorted(faces_of(s)))
            elif s in field.pairs:
                succ[s] = (field.pairs[s],)
            else:
                tail = field.preimage(s)
                succ[s] = tuple(sorted(f for f in faces_of(s) if f != s and f != tail))
        self.succ = succ
        self._reach = {}
        self._lock = threading.Lock()

    def __iter__(self):
        return iter(self.complex)

    def successors(self, s):
        return self.succ[s]

    def edges(self):
        return [(s, t) for s in self.complex for t in self.succ[s]]

    def reach(self, s):
        """Simplices reachable from ``s`` along a walk of length at least one."""
        r = self._reach.get(s)
        if r is None:
            r = frozenset(_graph.reachable(s, self.succ))
            with self._lock:
                self._reach.setdefault(s, r)
        return r

    def predecessors(self):
        return _graph.reverse(self.succ)


def flow_of(field):
    return FlowGraph(field)


def connects(F, sigma, tau):
    return tau in F.reach(sigma)


def connects_sets(F, A, B):
    """True when some member of A connects to some member of B."""
    B = frozenset(B)
    return any(F.reach(a) & B for a in A)


def _recurrent_within(F, A):
    """Members of A lying on a full solution inside A."""
    A = frozenset(A)
    sub = _graph.induced(F.succ, A)
    cyc = set().union(*_graph.cyclic_components(A, sub)) if A else set()
    forward = _graph.reachable_from_set(cyc, sub)
    backward = _graph.reachable_from_set(cyc, _graph.reverse(sub))
    return forward & backward


def has_full_solution_through(F, sigma, A):
    """A bi-infinite walk through ``sigma`` that stays in ``A``."""
    A = frozenset(A)
    if sigma not in A:
        return False
    return sigma in _recurrent_within(F, A)


def invariant_part(F, A):
    """The largest invariant subset of A."""
    return frozenset(_recurrent_within(F, A))


def is_invariant(F, S):
    S = frozenset(S)
    return _recurrent_within(F, S) == S


def is_isolated_invariant(F, S):
    S = frozenset(S)
    if not is_invariant(F, S):
        return False
    ex = exit_set(S)
    if not is_subcomplex(ex):
        return False
    for y in ex:
        if not any(t in S for t in F.succ[y]):
            continue
        # some x in S must reach y in one step
        for x in S:
            if y in F.succ[x]:
                return False
    return True


def chain_recurrent_set(F):
    return frozenset(s for s in F.complex if s in F.reach(s))


def basic_set_list(F):
    """Cyclic SCCs sorted by their least simplex."""
    comps = _graph.cyclic_components(list(F.complex), F.succ)
    return sorted(comps, key=min)


def label_of(S):
    """Canonical label of a set of simplices: its least member."""
    return min(S)


def is_acyclic_flow(F):
    """No cycles besides the self-loops of fixed points."""
    return all(len(b) == 1 and next(iter(b)) in F.field.fixed for b in basic_set_list(F))


def connecting_set(F, A_src, A_dst):
    """Simplices lying on a walk from A_src to A_dst (both invariant)."""
    for A in (A_src, A_dst):
        if not is_invariant(F, A):
            raise NotInvariant(f"{sorted(A)[:3]}... is not invariant")
    src = frozenset(A_src)
    dst = frozenset(A_dst)
    fwd = set()
    for a in src:
        fwd |= F.reach(a)
    return frozenset(s for s in fwd if F.reach(s) & dst)


@dataclass(frozen=True)
class MorseDecomposition:
    """Indexed family of sets with a partial order stored as Hasse edges.

    ``edges`` holds pairs (hi, lo): the set ``hi`` sits above ``lo``, so
    solutions may run from M_hi down to M_lo.
    """

    sets: tuple
    edges: frozenset

    def __len__(self):
        return len(self.sets)

    def below(self, r):
        """Indices strictly below ``r``."""
        succ = {i: [] for i in range(len(self.sets))}
        for hi, lo in self.edges:
            succ[hi].append(lo)
        return _graph.reachable(r, succ)

    def leq(self, r, r2):
        return r == r2 or r in self.below(r2)

    def labels(self):
        return [label_of(s) for s in self.sets]


def _set_graph(F, sets):
    """r2 -> r when M_r2 connects to M_r (r2 != r)."""
    edges = set()
    for i, a in enumerate(sets):
        for j, b in enumerate(sets):
            if i != j and connects_sets(F, a, b):
                edges.add((i, j))
    return edges


def finest_decomposition(F):
    """Basic sets ordered by reachability: the finest Morse decomposition."""
    sets = tuple(basic_set_list(F))
    edges = _set_graph(F, sets)
    return MorseDecomposition(sets, frozenset(_graph.transitive_reduction(range(len(sets)), edges)))


basic_sets = finest_decomposition


def morse_set(F, M, I):
    """Union of connecting sets between members of M indexed by I."""
    I = sorted(set(I))
    members = [M.sets[r] for r in I]
    src = frozenset().union(*members) if members else frozenset()
    fwd = set()
    for a in src:
        fwd |= F.reach(a)
    return frozenset(s for s in fwd if F.reach(s) & src)


def _check_partition(n, partition):
    blocks = [frozenset(b) for b in partition]
    seen = set()
    for b in blocks:
        if not b:
            raise InvalidPartition("empty block")
        if b & seen:
            raise InvalidPartition(f"index {min(b & seen)} in two blocks")
        bad = [r for r in b if not (isinstance(r, int) and 0 <= r < n)]
        if bad:
            raise InvalidPartition(f"unknown index {bad[0]}")
        seen |= b
    if len(seen) != n:
        raise InvalidPartition(f"indices {sorted(set(range(n)) - seen)} not covered")
    return sorted(blocks, key=min)


def block_graph(F, M, partition):
    """Edges between blocks induced by connections of member sets."""
    blocks = _check_partition(len(M.sets), partition)
    where = {r: i for i, b in enumerate(blocks) for r in b}
    member_edges = _set_graph(F, M.sets)
    edges = {(where[a], where[b]) for a, b in member_edges if where[a] != where[b]}
    return blocks, edges


def coarsen(F, M, partition):
    """Merge the member sets of each block into one Morse set.

    Blocks are re-indexed by their least member index. Raises CycleDetected
    with a block-level witness when the blocks are not linearly orderable.
    """
    blocks, edges = block_graph(F, M, partition)
    succ = {i: [] for i in range(len(blocks))}
    for a, b in edges:
        succ[a].append(b)
    cyc = _graph.least_cycle(range(len(blocks)), succ, allow_self_loop=False)
    if cyc is not None:
        witness = [sorted(blocks[i]) for i in cyc]
        raise CycleDetected(witness, f"blocks form a cycle: {witness}")
    sets = tuple(morse_set(F, M, b) for b in blocks)
    return MorseDecomposition(sets, frozenset(_graph.transitive_reduction(range(len(blocks)), edges)))


def is_morse_decomposition(F, sets, order_edges):
    """Check a candidate family; returns (ok, reason).

    ``order_edges`` is a relation of pairs (hi, lo) whose reflexive-transitive
    closure must be a partial order compatible with the flow.
    """
    sets = [frozenset(s) for s in sets]
    n = len(sets)
    seen = set()
    for i, s in enumerate(sets):
        if not s:
            return False, f"set {i} is empty"
        if s & seen:
            return False, f"set {i} overlaps an earlier set"
        seen |= s
        if not is_isolated_invariant(F, s):
            return False, f"set {i} is not an isolated invariant set"
    for b in basic_set_list(F):
        hits = [i for i, s in enumerate(sets) if b <= s]
        if len(hits) != 1:
            return False, f"basic set {label_of(b)} is contained in {len(hits)} sets"
    for i, s in enumerate(sets):
        if connecting_set(F, s, s) != s:
            return False, f"set {i} differs from its self-connecting set"
    succ = {i: set() for i in range(n)}
    for hi, lo in order_edges:
        if not (0 <= hi < n and 0 <= lo < n):
            return False, f"order edge ({hi}, {lo}) out of range"
        if hi != lo:
            succ[hi].add(lo)
    if _graph.least_cycle(range(n), succ, allow_self_loop=False) is not None:
        return False, "order is not antisymmetric"
    below = {i: _graph.reachable(i, succ) for i in range(n)}
    for a, b in _set_graph(F, sets):
        if b not in below[a]:
            return False, f"set {a} connects to set {b} but is not above it"
    return True, "ok"
