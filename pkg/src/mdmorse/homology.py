"""Exact simplicial homology of pairs, Conley indices and Poincare polynomials.

Ranks over Q use fraction-free integer elimination. Ranks over GF(2) use
rows packed into Python ints.
"""

from __future__ import annotations

from math import gcd

from .complex import closure, exit_set, facets_of, is_subcomplex
from .errors import NotClosed, NotDivisible, NotIsolatedInvariant, NotNested


def boundary_matrix(L, A, p):
    """Sparse boundary d_p : C_p(L, A) -> C_{p-1}(L, A).

    Returns (rows, cols, entries) where ``entries`` maps column index to a
    dict {row index: coefficient}; rows are (p-1)-simplices of L \\ A and
    columns are p-simplices of L \\ A, both sorted.
    """
    cols = sorted(s for s in L if len(s) == p + 1 and s not in A)
    rows = sorted(s for s in L if len(s) == p and s not in A) if p > 0 else []
    where = {s: i for i, s in enumerate(rows)}
    entries = {}
    for j, s in enumerate(cols):
        col = {}
        for i, f in enumerate(facets_of(s)):
            if f in where:
                col[where[f]] = -1 if i % 2 else 1
        entries[j] = col
    return rows, cols, entries


def rank_rational(columns):
    """Rank over Q of a sparse integer matrix given as a list of {row: value} dicts."""
    pivots = {}
    rank = 0
    for col in columns:
        v = {r: c for r, c in col.items() if c}
        while v:
            r = max(v)
            if r not in pivots:
                pivots[r] = v
                rank += 1
                break
            pv = pivots[r]
            a, b = v[r], pv[r]
            g = gcd(a, b)
            ma, mb = b // g, a // g
            new = {}
            for key in set(v) | set(pv):
                x = ma * v.get(key, 0) - mb * pv.get(key, 0)
                if x:
                    new[key] = x
            cg = 0
            for x in new.values():
                cg = gcd(cg, x)
            if cg > 1:
                new = {key: x // cg for key, x in new.items()}
            v = new
    return rank


def rank_gf2(columns):
    pivots = {}
    rank = 0
    for col in columns:
        v = 0
        for r, c in col.items():
            if c % 2:
                v |= 1 << r
        while v:
            top = v.bit_length() - 1
            if top not in pivots:
                pivots[top] = v
                rank += 1
                break
            v ^= pivots[top]
    return rank


def _rank(L, A, p, field):
    if p <= 0:
        return 0
    _, _, entries = boundary_matrix(L, A, p)
    cols = [entries[j] for j in range(len(entries))]
    return rank_gf2(cols) if field == "gf2" else rank_rational(cols)


def betti_pair(L, A=frozenset(), field="Q", top=None):
    """Betti numbers of the relative pair (L, A), as a list indexed by degree.

    L and A must be face-closed with A inside L. The list runs up to ``top``
    (default: dim L).
    """
    L = frozenset(L)
    A = frozenset(A)
    if not is_subcomplex(L) or not is_subcomplex(A):
        raise NotClosed("both sets must be closed under faces")
    if not A <= L:
        raise NotNested("the subcomplex is not contained in the complex")
    d = max((len(s) - 1 for s in L), default=-1)
    if top is None:
        top = d
    ranks = {p: _rank(L, A, p, field) for p in range(0, d + 2)}
    out = []
    for p in range(top + 1):
        n = sum(1 for s in L if len(s) == p + 1 and s not in A)
        out.append(n - ranks.get(p, 0) - ranks.get(p + 1, 0))
    return out


def betti(K, field="Q", top=None):
    simplices = K.simplices if hasattr(K, "simplices") else K
    return betti_pair(simplices, frozenset(), field, top)


def boundary_squared_is_zero(L, A=frozenset(), p=2):
    """Sanity check d_{p-1} d_p = 0 for the pair."""
    _, _, hi = boundary_matrix(L, A, p)
    lo_rows, lo_cols, lo = boundary_matrix(L, A, p - 1)
    mid_rows, _, _ = boundary_matrix(L, A, p)
    col_of = {s: j for j, s in enumerate(lo_cols)}
    for col in hi.values():
        acc = {}
        for r, c in col.items():
            j = col_of[mid_rows[r]]
            for r2, c2 in lo[j].items():
                acc[r2] = acc.get(r2, 0) + c * c2
        if any(acc.values()):
            return False
    return True


def conley_index(F, S, field="Q", top=None):
    """Betti numbers of (Cl S, Ex S) for an isolated invariant set S."""
    from .dynamics import is_isolated_invariant

    S = frozenset(S)
    if not is_isolated_invariant(F, S):
        raise NotIsolatedInvariant("the set is not an isolated invariant set")
    if top is None:
        top = F.complex.dim
    return betti_pair(closure(S), exit_set(S), field, top)


def poly_of(betti_numbers):
    return poly_trim(betti_numbers)


def poly_sub_div(lhs, rhs):
    """(lhs - rhs) / (1 + t), exact."""
    return divide_by_one_plus_t(poly_sub(lhs, rhs))


def poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return poly_trim(x - y for x, y in zip(a, b))


def divide_by_one_plus_t(d):
    """Exact quotient of d(t) by (1 + t); raises NotDivisible otherwise."""
    d = poly_trim(d)
    if not d:
        return []
    q = []
    prev = 0
    for x in d[:-1]:
        prev = x - prev
        q.append(prev)
    if d[-1] != prev:
        raise NotDivisible(f"{d} is not a multiple of 1 + t")
    return poly_trim(q)


def poly_str(c, var="t"):
    c = poly_trim(c)
    if not c:
        return "0"
    parts = []
    for i, x in enumerate(c):
        if x == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        coef = str(x) if (i == 0 or abs(x) != 1) else ("-" if x < 0 else "")
        parts.append(f"{coef}{mono}")
    return " + ".join(parts).replace("+ -", "- ")
