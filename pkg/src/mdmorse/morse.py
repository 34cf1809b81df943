"""Morse counts, Morse inequalities, collapses and the sublevel decomposition."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dc_field

from .complex import SimplicialComplex, elementary_collapse, is_subcomplex
from .dynamics import (
    FlowGraph,
    connecting_set,
    is_isolated_invariant,
    is_morse_decomposition,
)
from .errors import (
    CyclicField,
    FixedPointOutside,
    MdmError,
    NotCancellable,
    NotCompatible,
    NotIsolatedInvariant,
    NotSubcomplex,
)
from .field import cancel_critical_pair, closed_vpath, require_acyclic
from .homology import betti, conley_index, divide_by_one_plus_t, poly_sub
from .mdm import check_levels, critical_points, gradient, in_q_box, sublevel


@dataclass
class MorseReport:
    counts: list
    betti: list
    quotient: list
    strong: list
    weak: list
    euler_ok: bool
    euler_characteristic: int

    @property
    def holds(self):
        return all(self.strong) and all(self.weak) and self.euler_ok and all(c >= 0 for c in self.quotient)

    def to_dict(self):
        return {
            "counts": self.counts,
            "betti": self.betti,
            "quotient": self.quotient,
            "strong": self.strong,
            "weak": self.weak,
            "euler": self.euler_ok,
            "euler_characteristic": self.euler_characteristic,
            "holds": self.holds,
        }


def morse_report(counts, betti_numbers):
    """Compare Morse counts against Betti numbers.

    Raises NotDivisible if the difference of the two polynomials is not a
    multiple of 1 + t, which cannot happen for valid inputs.
    """
    n = max(len(counts), len(betti_numbers))
    m = list(counts) + [0] * (n - len(counts))
    b = list(betti_numbers) + [0] * (n - len(betti_numbers))
    q = divide_by_one_plus_t(poly_sub(m, b))
    strong = []
    for p in range(n):
        lhs = sum((-1) ** (p - j) * m[j] for j in range(p + 1))
        rhs = sum((-1) ** (p - j) * b[j] for j in range(p + 1))
        strong.append(lhs >= rhs)
    weak = [m[p] >= b[p] for p in range(n)]
    chi_m = sum((-1) ** p * x for p, x in enumerate(m))
    chi_b = sum((-1) ** p * x for p, x in enumerate(b))
    return MorseReport(m, b, q, strong, weak, chi_m == chi_b, chi_b)


def critical_counts(f):
    counts = [0] * (f.complex.dim + 1)
    for s in critical_points(f):
        counts[len(s) - 1] += 1
    return counts


morse_counts = critical_counts


def morse_report_points(f):
    """Inequalities with m_p = number of critical p-simplices."""
    return morse_report(critical_counts(f), betti(f.complex))


def decomposition_counts(F, M):
    top = F.complex.dim
    counts = [0] * (top + 1)
    for S in M.sets:
        for p, x in enumerate(conley_index(F, S, top=top)):
            counts[p] += x
    return counts


def morse_report_decomposition(F, M, check=True):
    """Inequalities with m_p = sum of the p-th Conley-index Betti numbers."""
    if check:
        ok, reason = is_morse_decomposition(F, M.sets, M.edges)
        if not ok:
            raise NotIsolatedInvariant(reason)
    return morse_report(decomposition_counts(F, M), betti(F.complex))


@dataclass(frozen=True)
class CollapseSequence:
    start: frozenset
    steps: tuple

    def __len__(self):
        return len(self.steps)

    def result(self):
        return self.start.difference(*[set(st) for st in self.steps]) if self.steps else self.start

    def serialize(self, fmt=None):
        fmt = fmt or (lambda s: " ".join(map(str, s)))
        return "".join(f"collapse {fmt(s)} -> {fmt(t)}\n" for s, t in self.steps)


def replay(start, steps):
    """Apply a collapse sequence step by step, checking each one is legal."""
    K = SimplicialComplex(start)
    for s, t in steps:
        K = elementary_collapse(K, s, t)
    return K.simplices


def collapse_to(K_from, L, V):
    """Collapse K_from onto L using the pairs of an acyclic field V.

    Each step removes the least simplex of K_from \\ L that no remaining
    simplex flows into, together with its V-image. L must be a V-compatible
    subcomplex of K_from, and K_from \\ L must contain no fixed points.
    """
    K_from = frozenset(K_from)
    L = frozenset(L)
    if not L <= K_from:
        raise NotSubcomplex("target is not contained in the source")
    for X in (K_from, L):
        if not is_subcomplex(X):
            raise NotSubcomplex("source and target must be closed under faces")
        if not V.is_compatible(X):
            raise NotCompatible("source and target must be V-compatible")
    region = K_from - L
    fixed = sorted(x for x in region if x in V.fixed)
    if fixed:
        raise FixedPointOutside(fixed[0])
    cyc = closed_vpath(V, within=K_from)
    if cyc is not None:
        raise CyclicField(cyc)
    F = FlowGraph(V)
    indeg = {x: 0 for x in K_from}
    for x in K_from:
        for y in F.succ[x]:
            if y != x and y in indeg:
                indeg[y] += 1
    heap = [x for x in region if indeg[x] == 0]
    heapq.heapify(heap)
    alive = set(K_from)
    steps = []
    while heap:
        s = heapq.heappop(heap)
        if s not in alive or indeg[s] != 0:
            continue
        t = V.pairs[s]
        steps.append((s, t))
        for x in (s, t):
            alive.discard(x)
            for y in F.succ[x]:
                if y != x and y in alive:
                    indeg[y] -= 1
                    if indeg[y] == 0 and y in region:
                        heapq.heappush(heap, y)
    if alive != L:
        raise MdmError("collapse got stuck; the field is not a gradient on this region")
    return CollapseSequence(K_from, tuple(steps))


@dataclass
class ExtendedDecomposition:
    lower: frozenset
    upper: frozenset
    critical: list
    A: frozenset
    M: frozenset
    B: frozenset
    field: object
    flow: object = dc_field(repr=False)

    def check(self):
        """Names of the structural properties that fail (empty when all hold)."""
        bad = []
        parts = [self.lower, self.A, self.M, self.B]
        if sum(len(p) for p in parts) != len(self.upper) or frozenset().union(*parts) != self.upper:
            bad.append("partition")
        for name, X in [("lower", self.lower), ("upper", self.upper),
                        ("lower+A", self.lower | self.A),
                        ("lower+A+M", self.lower | self.A | self.M)]:
            if not is_subcomplex(X):
                bad.append(f"closed:{name}")
        for name, X in [("A", self.A), ("M", self.M), ("B", self.B)]:
            if not self.field.is_compatible(X):
                bad.append(f"compatible:{name}")
        crit = set(self.field.fixed)
        if crit & (self.A | self.B):
            bad.append("regular:A+B")
        if self.M and not is_isolated_invariant(self.flow, self.M):
            bad.append("M isolated invariant")
        if betti(self.upper) != betti(self.lower | self.A | self.M, top=_dim(self.upper)):
            bad.append("homology:upper")
        return bad

    def collapse_upper(self):
        """upper collapses onto lower + A + M."""
        return collapse_to(self.upper, self.lower | self.A | self.M, self.field)

    def collapse_lower(self):
        """lower + A collapses onto lower."""
        return collapse_to(self.lower | self.A, self.lower, self.field)

    def conley(self):
        if not self.M:
            return [0] * (self.field.complex.dim + 1)
        return conley_index(self.flow, self.M)


def _dim(ss):
    return max((len(s) - 1 for s in ss), default=-1)


def extended_decomposition(f, a, b):
    """Split K(b) into K(a), A, M(I) and B for the critical cells I in Q_a^b."""
    a, b = check_levels(f, a, b)
    V = gradient(f)
    F = FlowGraph(V)
    lower = sublevel(f, a)
    upper = sublevel(f, b)
    crit = [s for s in critical_points(f) if in_q_box(f(s), a, b)]
    I = frozenset(crit)
    M = connecting_set(F, I, I) if I else frozenset()
    reaches = {s for s in upper if F.reach(s) & I}
    A = frozenset(s for s in upper - lower if s not in reaches)
    B = frozenset(s for s in upper - M if s in reaches)
    return ExtendedDecomposition(lower, upper, crit, A, M, B, V, F)


def sublevel_collapse(f, a, b):
    """Collapse K(b) onto K(a) after cancelling the critical cells between them.

    Critical pairs in K(b) \\ K(a) are cancelled one at a time, always taking
    the least cancellable pair (by dimension, then lexicographically). Returns
    (sequence, cancelled pairs, modified field). Raises NotCancellable when
    critical cells remain that cannot be cancelled; then no collapse along
    this field exists.
    """
    a, b = check_levels(f, a, b)
    V = gradient(f)
    lower = sublevel(f, a)
    upper = sublevel(f, b)
    region = upper - lower
    cancelled = []
    while True:
        crit = sorted((x for x in region if x in V.fixed), key=lambda x: (len(x), x))
        if not crit:
            break
        done = False
        for s in crit:
            for t in crit:
                if len(t) != len(s) + 1:
                    continue
                try:
                    V2 = cancel_critical_pair(V, s, t)
                except NotCancellable:
                    continue
                V = V2
                cancelled.append((s, t))
                done = True
                break
            if done:
                break
        if not done:
            raise NotCancellable(f"critical cells {crit} cannot be cancelled")
    require_acyclic(V)
    return collapse_to(upper, lower, V), cancelled, V


def finest_report(F):
    """Report for the decomposition into basic sets."""
    from .dynamics import finest_decomposition

    return morse_report_decomposition(F, finest_decomposition(F), check=False)
