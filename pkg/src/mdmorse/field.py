"""Discrete vector fields on simplicial complexes."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import _graph
from .complex import SimplicialComplex, is_face
from .errors import (
    CoverageGap,
    CyclicField,
    NotCancellable,
    NotCofacet,
    NotInjective,
    Overlap,
)


@dataclass(frozen=True)
class DiscreteVectorField:
    """A partial matching ``tail -> head`` plus explicit fixed points.

    Every simplex of ``complex`` is exactly one of: a tail, a head, fixed.
    Use :func:`build_field` to construct a validated instance.
    """

    complex: SimplicialComplex
    pairs: dict
    fixed: frozenset
    _heads: dict = dc_field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self._heads is None:
            object.__setattr__(self, "_heads", {t: s for s, t in self.pairs.items()})

    def __eq__(self, other):
        if not isinstance(other, DiscreteVectorField):
            return NotImplemented
        return (self.complex == other.complex and self.pairs == other.pairs
                and self.fixed == other.fixed)

    def __hash__(self):
        return hash((self.complex, frozenset(self.pairs.items()), self.fixed))

    def in_domain(self, s):
        return s in self.pairs or s in self.fixed

    def is_head(self, s):
        return s in self._heads

    def image(self, s):
        """V(s), or None when s is not in the domain."""
        if s in self.fixed:
            return s
        return self.pairs.get(s)

    def preimage(self, s):
        """V^-1(s), or None when s is not in the image."""
        if s in self.fixed:
            return s
        return self._heads.get(s)

    def plus(self, s):
        return self.image(s) if self.in_domain(s) else s

    def minus(self, s):
        return s if self.in_domain(s) else self._heads[s]

    def is_compatible(self, simplices):
        """True when every pair lies entirely inside or entirely outside the set."""
        a = frozenset(simplices)
        return all((s in a) == (t in a) for s, t in self.pairs.items())

    def sorted_pairs(self):
        return sorted(self.pairs.items())

    def restricted_to(self, simplices):
        """The field induced on a compatible subcomplex."""
        from .complex import subcomplex

        sub = subcomplex(self.complex, simplices)
        if not self.is_compatible(sub.simplices):
            from .errors import NotCompatible
            raise NotCompatible("set is not V-compatible")
        pairs = {s: t for s, t in self.pairs.items() if s in sub}
        return DiscreteVectorField(sub, pairs, frozenset(x for x in self.fixed if x in sub))


def build_field(K, pairs, fixed=None):
    """Validate and build a field.

    ``pairs`` is an iterable of (tail, head) or a dict. When ``fixed`` is None
    every simplex not covered by a pair becomes a fixed point.
    """
    items = list(pairs.items()) if isinstance(pairs, dict) else [tuple(p) for p in pairs]
    tails = {}
    heads = {}
    for s, t in items:
        for x in (s, t):
            if x not in K:
                raise CoverageGap(f"{x} is not in the complex")
        if len(t) != len(s) + 1 or not is_face(s, t):
            raise NotCofacet(f"{t} is not a cofacet of {s}")
        if s in tails and tails[s] != t:
            raise NotInjective(f"{s} is paired twice")
        if t in heads and heads[t] != s:
            raise NotInjective(f"{t} is the head of {heads[t]} and {s}")
        tails[s] = t
        heads[t] = s
    both = set(tails) & set(heads)
    if both:
        raise Overlap(f"{min(both)} is both a tail and a head")
    if fixed is None:
        fixed_set = frozenset(x for x in K if x not in tails and x not in heads)
    else:
        fixed_set = frozenset(fixed)
        for x in fixed_set:
            if x not in K:
                raise CoverageGap(f"{x} is not in the complex")
            if x in tails or x in heads:
                raise Overlap(f"{x} is fixed and also paired")
        for x in K:
            if x not in tails and x not in heads and x not in fixed_set:
                raise CoverageGap(f"{x} is neither paired nor fixed")
    return DiscreteVectorField(K, dict(sorted(tails.items())), fixed_set)


def plus(V, s):
    return V.plus(s)


def minus(V, s):
    return V.minus(s)


def is_v_compatible(V, simplices):
    return V.is_compatible(simplices)


def modified_hasse(V):
    """Hasse diagram with paired edges pointing up and every other face edge down."""
    K = V.complex
    succ = {x: [] for x in K}
    for b in K:
        for a in K.facets(b):
            if V.pairs.get(a) == b:
                succ[a].append(b)
            else:
                succ[b].append(a)
    return succ


def closed_vpath(V, within=None):
    """A closed V-path as [a0, b0, a1, b1, ...], or None if the field is acyclic.

    With ``within``, only paths inside that set of simplices are considered.
    """
    succ = modified_hasse(V)
    nodes = list(V.complex)
    if within is not None:
        keep = frozenset(within)
        succ = _graph.induced(succ, keep)
        nodes = sorted(keep)
    comps = _graph.cyclic_components(nodes, succ)
    if not comps:
        return None
    candidates = set().union(*comps) & set(V.pairs)
    return _graph.least_cycle(sorted(candidates), succ, allow_self_loop=False)


def is_acyclic_field(V):
    return closed_vpath(V) is None


def require_acyclic(V):
    cyc = closed_vpath(V)
    if cyc is not None:
        raise CyclicField(cyc)


def gradient_paths(V, tau, sigma):
    """All V-paths that leave ``tau`` through a facet and end at ``sigma``.

    Each path is returned as [a0, b0, a1, ..., a_r] with a_r == sigma, where
    a0 is a facet of tau, b_i = V(a_i) and a_{i+1} is a facet of b_i other
    than a_i. The field must be acyclic.
    """
    require_acyclic(V)
    K = V.complex
    memo = {}

    def paths_from(a):
        if a in memo:
            return memo[a]
        out = []
        if a == sigma:
            out.append([a])
        b = V.pairs.get(a)
        if b is not None:
            for a2 in K.facets(b):
                if a2 != a:
                    out.extend([a, b] + p for p in paths_from(a2))
        memo[a] = out
        return out

    result = []
    for a0 in K.facets(tau):
        result.extend(paths_from(a0))
    return result


def cancel_critical_pair(V, sigma, tau):
    """Reverse the unique gradient path between two fixed points.

    ``sigma`` and ``tau`` must be fixed, with dim tau = dim sigma + 1, and
    exactly one V-path must run from the boundary of tau to sigma. The
    returned field is acyclic again and has two fewer fixed points.
    """
    if sigma not in V.fixed or tau not in V.fixed:
        raise NotCancellable(f"{sigma} and {tau} must both be fixed")
    if len(tau) != len(sigma) + 1:
        raise NotCancellable(f"{tau} is not one dimension above {sigma}")
    paths = gradient_paths(V, tau, sigma)
    if len(paths) != 1:
        raise NotCancellable(f"{len(paths)} gradient paths from {tau} to {sigma}")
    path = paths[0]
    alphas = path[0::2]
    betas = path[1::2]
    pairs = {s: t for s, t in V.pairs.items() if s not in alphas}
    heads_above = [tau] + betas
    for a, b in zip(alphas, heads_above):
        pairs[a] = b
    fixed = V.fixed - {sigma, tau}
    return build_field(V.complex, pairs, fixed)
