"""Finite abstract simplicial complexes.

A simplex is a strictly ascending tuple of non-negative ints. Tuples already
compare lexicographically, which is the iteration order used everywhere.
"""

from __future__ import annotations

from itertools import combinations

from .errors import InvalidSimplex, MissingFace, NotCofacet, NotFreeFace, NotSubcomplex


def simplex(vertices):
    """Canonicalize an iterable of vertices into a simplex tuple."""
    vs = tuple(sorted(vertices))
    if not vs:
        raise InvalidSimplex("a simplex needs at least one vertex")
    for v in vs:
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise InvalidSimplex(f"bad vertex {v!r}")
    if len(set(vs)) != len(vs):
        raise InvalidSimplex(f"repeated vertex in {vertices!r}")
    return vs


def dim(s):
    return len(s) - 1


def facets_of(s):
    """Codimension-one faces of ``s`` (empty for a vertex)."""
    if len(s) == 1:
        return []
    return [s[:i] + s[i + 1:] for i in range(len(s))]


def faces_of(s):
    """All nonempty faces of ``s``, including ``s``."""
    return [c for r in range(1, len(s) + 1) for c in combinations(s, r)]


def is_face(a, b):
    return set(a) <= set(b)


def closure(simplices):
    """Smallest face-closed superset."""
    out = set()
    for s in simplices:
        if s not in out:
            out.update(faces_of(s))
    return frozenset(out)


def exit_set(simplices):
    return closure(simplices) - frozenset(simplices)


def euler_characteristic(simplices):
    return sum((-1) ** (len(s) - 1) for s in simplices)


def is_subcomplex(simplices):
    s = frozenset(simplices)
    return all(f in s for x in s for f in facets_of(x))


class SimplicialComplex:
    """An immutable face-closed set of simplices with facet/cofacet indexes."""

    def __init__(self, simplices):
        ss = frozenset(simplices)
        self._cofacets = {x: [] for x in ss}
        for x in sorted(ss):
            for f in facets_of(x):
                if f not in ss:
                    raise MissingFace(x, f)
                self._cofacets[f].append(x)
        self.simplices = ss
        self._order = sorted(ss)

    def __contains__(self, s):
        return s in self.simplices

    def __iter__(self):
        return iter(self._order)

    def __len__(self):
        return len(self._order)

    def __eq__(self, other):
        if isinstance(other, SimplicialComplex):
            return self.simplices == other.simplices
        return NotImplemented

    def __hash__(self):
        return hash(self.simplices)

    def __repr__(self):
        return f"SimplicialComplex({len(self)} simplices, dim {self.dim})"

    @property
    def dim(self):
        return max((len(s) - 1 for s in self._order), default=-1)

    @property
    def vertices(self):
        return sorted(s[0] for s in self._order if len(s) == 1)

    def of_dim(self, p):
        return [s for s in self._order if len(s) == p + 1]

    def facets(self, s):
        return facets_of(s)

    def cofacets(self, s):
        return list(self._cofacets[s])

    def is_subcomplex(self, simplices):
        return is_subcomplex(simplices)

    def euler_characteristic(self):
        return sum((-1) ** (len(s) - 1) for s in self._order)

    def is_free_face(self, sigma, tau):
        return sigma in self and tau in self._cofacets.get(sigma, ()) and len(self._cofacets[sigma]) == 1


def build_complex(simplices, close=False):
    """Build a complex, rejecting missing faces unless ``close`` is set."""
    ss = [simplex(s) for s in simplices]
    if close:
        ss = closure(ss)
    return SimplicialComplex(ss)


def elementary_collapse(K, sigma, tau):
    """Remove a free face and its unique cofacet."""
    if sigma not in K or tau not in K:
        raise NotFreeFace(f"{sigma} or {tau} is not in the complex")
    if len(tau) != len(sigma) + 1 or not is_face(sigma, tau):
        raise NotCofacet(f"{tau} is not a cofacet of {sigma}")
    if not K.is_free_face(sigma, tau):
        raise NotFreeFace(f"{sigma} has cofacets {K.cofacets(sigma)}")
    return SimplicialComplex(K.simplices - {sigma, tau})


def subcomplex(K, simplices):
    ss = frozenset(simplices)
    if not ss <= K.simplices:
        raise NotSubcomplex("set is not contained in the complex")
    if not is_subcomplex(ss):
        raise NotSubcomplex("set is not closed under faces")
    return SimplicialComplex(ss)
