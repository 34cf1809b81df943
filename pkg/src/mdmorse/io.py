"""Text formats, JSON rendering and DOT export.

Function files hold one simplex per line, ``v0 v1 ... | x1 ... xk``. Field
files hold ``pair <tail> -> <head>`` and ``fix <simplex>`` lines. In both,
``#`` starts a comment. Vertices are either all non-negative integers, or
arbitrary tokens numbered in natural sort order (so ``P2`` precedes ``P10``).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .complex import SimplicialComplex, facets_of
from .errors import MdmError, ParseError
from .field import build_field
from .mdm import MdmFunction

_INT = re.compile(r"^\d+$")


def _natural(token):
    # digits and non-digits alternate after the split, so keys stay comparable
    return [int(p) if i % 2 else p for i, p in enumerate(re.split(r"(\d+)", token))]


class Labels:
    """Two-way map between vertex tokens and integer vertices."""

    def __init__(self, names=None):
        self.names = list(names) if names is not None else None
        self.index = {n: i for i, n in enumerate(self.names)} if self.names is not None else None

    @classmethod
    def from_tokens(cls, tokens):
        tokens = list(tokens)
        if all(_INT.match(t) for t in tokens):
            return cls(None)
        return cls(sorted(set(tokens), key=_natural))

    def vertex(self, token, line=None):
        if self.index is None:
            if not _INT.match(token):
                raise ParseError(f"expected an integer vertex, got {token!r}", line)
            return int(token)
        if token not in self.index:
            raise ParseError(f"unknown vertex {token!r}", line)
        return self.index[token]

    def simplex(self, tokens, line=None):
        if not tokens:
            raise ParseError("empty simplex", line)
        vs = [self.vertex(t, line) for t in tokens]
        if len(set(vs)) != len(vs):
            raise ParseError(f"repeated vertex in {' '.join(tokens)}", line)
        return tuple(sorted(vs))

    def name(self, v):
        return str(v) if self.names is None else self.names[v]

    def fmt(self, s):
        return " ".join(self.name(v) for v in s)


def _lines(text):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def parse_number(tok, line=None):
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad number {tok!r}", line) from None


@dataclass
class Bundle:
    complex: SimplicialComplex
    labels: Labels
    function: MdmFunction | None = None
    field: object = None


def _check_closed(simplices, labels, lines):
    ss = set(simplices)
    for s in sorted(ss):
        for f in facets_of(s):
            if f not in ss:
                raise ParseError(f"face {labels.fmt(f)} of {labels.fmt(s)} is missing", lines.get(s))
    return SimplicialComplex(ss)


def parse_function(text):
    rows = []
    for no, line in _lines(text):
        if line.count("|") != 1:
            raise ParseError("expected 'vertices | values'", no)
        left, right = line.split("|")
        rows.append((no, left.split(), right.split()))
    if not rows:
        raise ParseError("no simplices")
    labels = Labels.from_tokens(t for _, vs, _ in rows for t in vs)
    k = len(rows[0][2])
    if k == 0:
        raise ParseError("no values", rows[0][0])
    values = {}
    where = {}
    for no, vs, xs in rows:
        s = labels.simplex(vs, no)
        if s in values:
            raise ParseError(f"duplicate simplex {labels.fmt(s)}", no)
        if len(xs) != k:
            raise ParseError(f"expected {k} values, got {len(xs)}", no)
        values[s] = tuple(parse_number(x, no) for x in xs)
        where[s] = no
    K = _check_closed(values, labels, where)
    return Bundle(K, labels, MdmFunction(K, values, k))


def parse_field(text, labels=None):
    rows = []
    for no, line in _lines(text):
        head, _, rest = line.partition(" ")
        if head == "pair":
            if rest.count("->") != 1:
                raise ParseError("expected 'pair <tail> -> <head>'", no)
            tail, tip = rest.split("->")
            rows.append((no, "pair", tail.split(), tip.split()))
        elif head == "fix":
            rows.append((no, "fix", rest.split(), None))
        else:
            raise ParseError(f"unknown directive {head!r}", no)
    if not rows:
        raise ParseError("no simplices")
    toks = []
    for _, _, a, b in rows:
        toks.extend(a)
        toks.extend(b or [])
    if labels is None:
        labels = Labels.from_tokens(toks)
    pairs = []
    fixed = []
    seen = {}
    for no, kind, a, b in rows:
        cells = [labels.simplex(a, no)] + ([labels.simplex(b, no)] if b is not None else [])
        for c in cells:
            if c in seen:
                raise ParseError(f"simplex {labels.fmt(c)} listed twice", no)
            seen[c] = no
        if kind == "pair":
            pairs.append(tuple(cells))
        else:
            fixed.append(cells[0])
    K = _check_closed(seen, labels, seen)
    try:
        V = build_field(K, pairs, fixed)
    except MdmError as exc:
        raise ParseError(str(exc)) from None
    return Bundle(K, labels, None, V)


def parse_any(text):
    """Function file or field file, decided by the first directive."""
    for _, line in _lines(text):
        if line.startswith("pair ") or line.startswith("fix "):
            return parse_field(text)
        return parse_function(text)
    raise ParseError("empty input")


def load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_any(text)


def parse_complex(text):
    """Complex-only file: one simplex per line, faces may be omitted."""
    rows = [(no, line.split()) for no, line in _lines(text)]
    labels = Labels.from_tokens(t for _, vs in rows for t in vs)
    return [labels.simplex(vs, no) for no, vs in rows], labels


def parse_simplex_list(text, labels):
    out = []
    for no, line in _lines(text):
        out.append(labels.simplex(line.split(), no))
    return out


def parse_partition(text, labels):
    """Blocks, one per line; members separated by commas, each a simplex."""
    blocks = []
    for no, line in _lines(text):
        blocks.append([labels.simplex(m.split(), no) for m in line.split(",") if m.strip()])
    return blocks


def parse_level(text, k=None):
    toks = [t for t in re.split(r"[,\s]+", text.strip()) if t]
    if not toks:
        raise ParseError(f"bad level {text!r}")
    v = tuple(parse_number(t) for t in toks)
    if k is not None and len(v) != k:
        raise ParseError(f"level {text!r} has {len(v)} coordinates, expected {k}")
    return v


def fmt_value(v):
    return [str(x) for x in v]


def format_function(f, labels):
    lines = []
    for s in f.complex:
        lines.append(f"{labels.fmt(s)} | {' '.join(str(x) for x in f(s))}")
    return "\n".join(lines) + "\n"


def format_field(V, labels):
    lines = [f"pair {labels.fmt(s)} -> {labels.fmt(t)}" for s, t in V.sorted_pairs()]
    lines += [f"fix {labels.fmt(s)}" for s in sorted(V.fixed)]
    return "\n".join(lines) + "\n"


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True)


def _q(s):
    return '"' + s.replace('"', '\\"') + '"'


def flow_dot(F, labels):
    V = F.field
    out = ["digraph flow {"]
    for s in F.complex:
        shape = "doublecircle" if s in V.fixed else "ellipse"
        out.append(f"  {_q(labels.fmt(s))} [shape={shape}];")
    for s in F.complex:
        for t in F.succ[s]:
            if t == s:
                continue
            style = "solid" if V.pairs.get(s) == t else "dashed"
            out.append(f"  {_q(labels.fmt(s))} -> {_q(labels.fmt(t))} [style={style}];")
    out.append("}")
    return "\n".join(out) + "\n"


def hasse_dot(names, edges, title="hasse"):
    out = [f"digraph {title} {{"]
    for i, n in enumerate(names):
        out.append(f"  n{i} [label={_q(n)}];")
    for a, b in sorted(edges):
        out.append(f"  n{a} -> n{b};")
    out.append("}")
    return "\n".join(out) + "\n"

