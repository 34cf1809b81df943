"""Multidimensional discrete Morse functions.

Values are tuples of ``Fraction``. The partial order on values is the
componentwise one: ``u <= v`` iff every coordinate is <=, and ``u < v`` iff
``u <= v`` and ``u != v``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import _graph
from .complex import closure
from .errors import ArityMismatch, CoverageGap, NotValidated, OrderViolation
from .field import build_field, modified_hasse, require_acyclic


def as_value(v):
    if isinstance(v, (int, Fraction, str)):
        v = (v,)
    return tuple(Fraction(x) for x in v)


def _same_arity(*vs):
    n = len(vs[0])
    if any(len(v) != n for v in vs):
        raise ArityMismatch(f"vectors of different lengths: {[len(v) for v in vs]}")


def vleq(u, v):
    _same_arity(u, v)
    return all(a <= b for a, b in zip(u, v))


def vlt(u, v):
    return vleq(u, v) and u != v


vec_leq = vleq
vec_lneq = vlt


def in_q_box(v, a, b):
    """v in Q_a^b: below b but not below a."""
    _same_arity(v, a, b)
    return vleq(v, b) and any(x > y for x, y in zip(v, a))


CONDITIONS = {
    1: "more than one cofacet with a value not above",
    2: "more than one facet with a value not below",
    3: "a cofacet outside H is not strictly above",
    4: "a facet outside T is not strictly below",
}


@dataclass(frozen=True)
class Violation:
    simplex: tuple
    condition: int
    others: tuple

    @property
    def reason(self):
        return CONDITIONS[self.condition]

    def __str__(self):
        return f"condition {self.condition} at {self.simplex} ({self.reason}): {list(self.others)}"


class MdmFunction:
    """A map from the simplices of a complex to vectors in Q^k."""

    def __init__(self, K, values, k=None):
        vals = {s: as_value(v) for s, v in values.items()}
        if k is None:
            k = len(next(iter(vals.values()))) if vals else 1
        for s in K:
            if s not in vals:
                raise CoverageGap(f"no value for {s}")
        for s, v in vals.items():
            if s not in K:
                raise CoverageGap(f"{s} is not in the complex")
            if len(v) != k:
                raise ArityMismatch(f"{s} has {len(v)} coordinates, expected {k}")
        self.complex = K
        self.values = vals
        self.k = k
        self._violations = None

    def __call__(self, s):
        return self.values[s]

    def __repr__(self):
        return f"MdmFunction({len(self.values)} simplices, k={self.k})"

    def component(self, i):
        """The i-th coordinate as a scalar function."""
        return MdmFunction(self.complex, {s: (v[i],) for s, v in self.values.items()}, 1)

    def lower_cofacets(self, s):
        v = self.values[s]
        return [b for b in self.complex.cofacets(s) if vleq(self.values[b], v)]

    def upper_facets(self, s):
        v = self.values[s]
        return [a for a in self.complex.facets(s) if vleq(v, self.values[a])]

    def violations(self):
        if self._violations is None:
            self._violations = tuple(_violations(self))
        return self._violations

    def is_valid(self):
        return not self.violations()

    def require_valid(self):
        if self.violations():
            raise NotValidated(self.violations())


def _violations(f):
    out = []
    for s in f.complex:
        v = f.values[s]
        H = f.lower_cofacets(s)
        T = f.upper_facets(s)
        if len(H) > 1:
            out.append(Violation(s, 1, tuple(H)))
        if len(T) > 1:
            out.append(Violation(s, 2, tuple(T)))
        bad = [b for b in f.complex.cofacets(s) if b not in H and not vlt(v, f.values[b])]
        if bad:
            out.append(Violation(s, 3, tuple(bad)))
        bad = [a for a in f.complex.facets(s) if a not in T and not vlt(f.values[a], v)]
        if bad:
            out.append(Violation(s, 4, tuple(bad)))
    return out


def validate_mdm(f):
    """List of violated conditions; empty means f is an mdm function."""
    return list(f.violations())


def critical_points(f):
    f.require_valid()
    return [s for s in f.complex if not f.lower_cofacets(s) and not f.upper_facets(s)]


def gradient(f):
    """The gradient field: s -> b whenever b is the unique lower cofacet of s."""
    f.require_valid()
    pairs = {}
    for s in f.complex:
        H = f.lower_cofacets(s)
        if H:
            pairs[s] = H[0]
    return build_field(f.complex, pairs)


def combine_component_gradients(*fields):
    """Keep the arrows shared by all fields; everything else becomes fixed."""
    if not fields:
        raise ValueError("need at least one field")
    K = fields[0].complex
    common = {s: t for s, t in fields[0].pairs.items()
              if all(F.pairs.get(s) == t for F in fields[1:])}
    return build_field(K, common)


def sublevel(f, a):
    a = as_value(a)
    if len(a) != f.k:
        raise ArityMismatch(f"level has {len(a)} coordinates, expected {f.k}")
    return closure(s for s, v in f.values.items() if vleq(v, a))


def check_levels(f, a, b):
    a = as_value(a)
    b = as_value(b)
    for x in (a, b):
        if len(x) != f.k:
            raise ArityMismatch(f"level has {len(x)} coordinates, expected {f.k}")
    if not vlt(a, b):
        raise OrderViolation(f"{_fmt(a)} is not strictly below {_fmt(b)}")
    return a, b


def _fmt(v):
    return "(" + ", ".join(str(x) for x in v) + ")"


def field_to_mdm(V, k=1, seed=None):
    """An mdm function (g_1, ..., g_k) whose gradient is V.

    Each g_i numbers the simplices along a linear extension of the modified
    Hasse diagram, with arrows pointing from larger to smaller values. With
    ``seed`` each coordinate gets its own random extension; otherwise all
    coordinates use the lexicographically least one.
    """
    require_acyclic(V)
    succ = modified_hasse(V)
    nodes = list(V.complex)
    rng = random.Random(seed) if seed is not None else None
    coords = []
    for _ in range(k):
        order = _extension(nodes, succ, rng)
        n = len(order)
        # sources of the diagram come first in the order and get the top values
        coords.append({s: Fraction(n - i) for i, s in enumerate(order)})
    f = MdmFunction(V.complex, {s: tuple(c[s] for c in coords) for s in nodes}, k)
    assert f.is_valid(), f.violations()
    assert gradient(f) == V
    return f


def _extension(nodes, succ, rng):
    if rng is None:
        return _graph.topological_order(nodes, succ)
    indeg = {v: 0 for v in nodes}
    for v in nodes:
        for w in succ[v]:
            indeg[w] += 1
    ready = sorted(v for v in nodes if indeg[v] == 0)
    order = []
    while ready:
        v = ready.pop(rng.randrange(len(ready)))
        order.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    return order
