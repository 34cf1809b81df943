"""Command-line front end.

Every command reads one input file (function file or field file) and prints
deterministic JSON, except ``flow --dot`` and the ``--text`` variants. Exit
status: 0 on success, 1 on a domain error, 2 on a parse error.
"""

from __future__ import annotations

import argparse
import sys

from . import components as comp
from . import dynamics as dyn
from . import io
from .errors import CycleDetected, FCycle, MdmError, ParseError
from .field import closed_vpath
from .homology import betti_pair, conley_index, poly_str
from .mdm import critical_points, field_to_mdm, gradient, sublevel
from .morse import (
    critical_counts,
    extended_decomposition,
    morse_report_decomposition,
    morse_report_points,
    sublevel_collapse,
)


class DomainFailure(Exception):
    """A command ran but its verdict is negative; carries the JSON payload."""

    def __init__(self, payload):
        self.payload = payload
        super().__init__(payload.get("error"))


def _need_function(b):
    if b.function is None:
        raise MdmError("this command needs a function file")
    return b.function


def _field(b):
    if b.field is not None:
        return b.field
    return gradient(b.function)


def _flow(b):
    return dyn.FlowGraph(_field(b))


def _names(b, ss):
    return [b.labels.fmt(s) for s in sorted(ss)]


def cmd_validate(b, args):
    if b.function is not None:
        bad = b.function.violations()
        out = {
            "kind": "function",
            "simplices": len(b.complex),
            "arity": b.function.k,
            "valid": not bad,
            "violations": [
                {"simplex": b.labels.fmt(v.simplex), "condition": v.condition,
                 "reason": v.reason, "others": _names(b, v.others)}
                for v in bad
            ],
        }
        if bad:
            out["error"] = "not a multidimensional discrete Morse function"
            raise DomainFailure(out)
        return out
    cyc = closed_vpath(b.field)
    out = {
        "kind": "field",
        "simplices": len(b.complex),
        "valid": cyc is None,
        "closed_path": [b.labels.fmt(s) for s in cyc] if cyc else None,
    }
    if cyc:
        out["error"] = "the field has a closed V-path"
        raise DomainFailure(out)
    return out


def cmd_gradient(b, args):
    f = _need_function(b)
    V = gradient(f)
    if args.text:
        return io.format_field(V, b.labels)
    return {
        "pairs": [[b.labels.fmt(s), b.labels.fmt(t)] for s, t in V.sorted_pairs()],
        "fixed": _names(b, V.fixed),
    }


def cmd_critical(b, args):
    f = _need_function(b)
    crit = critical_points(f)
    return {
        "critical": [{"simplex": b.labels.fmt(s), "dim": len(s) - 1, "value": io.fmt_value(f(s))}
                     for s in crit],
        "counts": critical_counts(f),
    }


def cmd_flow(b, args):
    F = _flow(b)
    if args.dot:
        return io.flow_dot(F, b.labels)
    return {
        "edges": [[b.labels.fmt(s), b.labels.fmt(t)] for s, t in F.edges()],
    }


def _basic_sets_payload(b, F, M):
    return [
        {"index": i, "label": b.labels.fmt(dyn.label_of(S)), "simplices": _names(b, S)}
        for i, S in enumerate(M.sets)
    ]


def cmd_basic_sets(b, args):
    F = _flow(b)
    M = dyn.finest_decomposition(F)
    if args.dot:
        return io.hasse_dot([b.labels.fmt(dyn.label_of(S)) for S in M.sets], M.edges, "basic_sets")
    return {
        "basic_sets": _basic_sets_payload(b, F, M),
        "order": sorted([list(e) for e in M.edges]),
        "acyclic": dyn.is_acyclic_flow(F),
    }


def cmd_conley(b, args):
    F = _flow(b)
    with open(args.set, encoding="utf-8") as fh:
        S = frozenset(io.parse_simplex_list(fh.read(), b.labels))
    missing = [s for s in S if s not in b.complex]
    if missing:
        raise ParseError(f"{b.labels.fmt(min(missing))} is not in the complex")
    return {"set": _names(b, S), "conley_index": conley_index(F, S)}


def cmd_morse_decomp(b, args):
    F = _flow(b)
    M = dyn.finest_decomposition(F)
    if args.partition:
        with open(args.partition, encoding="utf-8") as fh:
            blocks = io.parse_partition(fh.read(), b.labels)
        where = {s: r for r, S in enumerate(M.sets) for s in S}
        part = []
        for blk in blocks:
            idx = []
            for s in blk:
                if s not in where:
                    raise MdmError(f"{b.labels.fmt(s)} is not in any basic set")
                idx.append(where[s])
            part.append(sorted(set(idx)))
        try:
            M = dyn.coarsen(F, M, part)
        except CycleDetected as exc:
            raise DomainFailure({
                "error": "the partition induces a cycle",
                "cycle": [[b.labels.fmt(dyn.label_of(M.sets[r])) for r in blk] for blk in exc.witness],
            }) from None
    if args.dot:
        return io.hasse_dot([b.labels.fmt(dyn.label_of(S)) for S in M.sets], M.edges, "morse")
    return {
        "morse_sets": _basic_sets_payload(b, F, M),
        "order": sorted([list(e) for e in M.edges]),
        "conley_indices": [conley_index(F, S) for S in M.sets],
    }


def cmd_sublevel(b, args):
    f = _need_function(b)
    a = io.parse_level(args.at, f.k)
    S = sublevel(f, a)
    top = b.complex.dim
    return {"at": io.fmt_value(a), "simplices": _names(b, S), "betti": betti_pair(S, top=top)}


def cmd_collapse(b, args):
    f = _need_function(b)
    a = io.parse_level(args.a, f.k)
    c = io.parse_level(args.b, f.k)
    seq, cancelled, _ = sublevel_collapse(f, a, c)
    if args.text:
        return seq.serialize(b.labels.fmt)
    return {
        "steps": [[b.labels.fmt(s), b.labels.fmt(t)] for s, t in seq.steps],
        "cancelled": [[b.labels.fmt(s), b.labels.fmt(t)] for s, t in cancelled],
    }


def cmd_extended(b, args):
    f = _need_function(b)
    a = io.parse_level(args.a, f.k)
    c = io.parse_level(args.b, f.k)
    E = extended_decomposition(f, a, c)
    top = b.complex.dim
    return {
        "a": io.fmt_value(a),
        "b": io.fmt_value(c),
        "I": _names(b, E.critical),
        "A": _names(b, E.A),
        "M": _names(b, E.M),
        "B": _names(b, E.B),
        "lower": _names(b, E.lower),
        "betti_before": betti_pair(E.lower, top=top),
        "betti_after": betti_pair(E.upper, top=top),
        "conley_index": E.conley(),
        "collapse_upper": [[b.labels.fmt(s), b.labels.fmt(t)] for s, t in E.collapse_upper().steps],
        "collapse_lower": [[b.labels.fmt(s), b.labels.fmt(t)] for s, t in E.collapse_lower().steps],
        "checks_failed": E.check(),
    }


def cmd_components(b, args):
    f = _need_function(b)
    comps, edges = comp.component_graph(f)
    names = [", ".join(b.labels.fmt(s) for s in c) for c in comps]
    if args.dot:
        return io.hasse_dot(names, edges, "components")
    cyc = comp.f_cycle(f)
    return {
        "components": [[b.labels.fmt(s) for s in c] for c in comps],
        "edges": sorted([list(e) for e in edges]),
        "acyclic": cyc is None,
        "cycle": [[b.labels.fmt(s) for s in c] for c in cyc] if cyc else None,
    }


def _report_payload(rep):
    d = rep.to_dict()
    d["quotient_polynomial"] = poly_str(rep.quotient)
    return d


def cmd_inequalities(b, args):
    if b.function is None:
        F = _flow(b)
        return _report_payload(morse_report_decomposition(F, dyn.finest_decomposition(F), check=False))
    f = b.function
    if args.components:
        try:
            rep = comp.component_inequalities(f)
        except FCycle as exc:
            raise DomainFailure({
                "error": "the component graph has a cycle",
                "cycle": [[b.labels.fmt(s) for s in c] for c in exc.witness],
            }) from None
        return _report_payload(rep)
    return _report_payload(morse_report_points(f))


def cmd_close(args, out):
    from .complex import closure

    with open(args.input, encoding="utf-8") as fh:
        simplices, labels = io.parse_complex(fh.read())
    lines = [labels.fmt(s) for s in sorted(closure(simplices))]
    out.write("\n".join(lines) + "\n")
    return 0


def cmd_mdm_from_field(b, args):
    V = _field(b)
    f = field_to_mdm(V, args.k)
    if args.text:
        return io.format_function(f, b.labels)
    return {
        "k": args.k,
        "values": [{"simplex": b.labels.fmt(s), "value": io.fmt_value(f(s))} for s in f.complex],
    }


def _attach_field(bundle, args):
    if bundle.function is None:
        raise ParseError("--field needs a function file as input")
    with open(args.field, encoding="utf-8") as fh:
        fb = io.parse_field(fh.read(), bundle.labels)
    if fb.complex != bundle.complex:
        raise ParseError("the field and the function live on different complexes")
    if not args.allow_field_mismatch and fb.field != gradient(bundle.function):
        raise MdmError("the field differs from the gradient of the function")
    bundle.field = fb.field


def build_parser():
    p = argparse.ArgumentParser(prog="mdmorse", description="Multidimensional discrete Morse tools")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("input", help="function file or field file")
        sp.add_argument("--field", help="explicit field file for a function file")
        sp.add_argument("--allow-field-mismatch", action="store_true",
                        help="accept a field that differs from the gradient")
        sp.set_defaults(fn=fn)
        return sp

    sp = sub.add_parser("close", help="print the closure of a complex-only file")
    sp.add_argument("input")
    sp.set_defaults(fn=None)

    add("validate", cmd_validate, "check the mdm conditions or field acyclicity")
    add("gradient", cmd_gradient, "gradient field of a function").add_argument("--text", action="store_true")
    add("critical", cmd_critical, "critical simplices")
    add("flow", cmd_flow, "flow digraph").add_argument("--dot", action="store_true")
    add("basic-sets", cmd_basic_sets, "basic sets and their order").add_argument("--dot", action="store_true")
    sp = add("conley", cmd_conley, "Conley index of a set")
    sp.add_argument("--set", required=True, help="file with one simplex per line")
    sp = add("morse-decomp", cmd_morse_decomp, "Morse decomposition, optionally coarsened")
    sp.add_argument("--partition", help="file with one block per line")
    sp.add_argument("--dot", action="store_true")
    add("sublevel", cmd_sublevel, "sublevel complex").add_argument("--at", required=True)
    for name, fn, help_ in [("collapse", cmd_collapse, "collapse K(b) onto K(a)"),
                            ("extended", cmd_extended, "decomposition of K(b) relative to K(a)")]:
        sp = add(name, fn, help_)
        sp.add_argument("--a", required=True)
        sp.add_argument("--b", required=True)
        if name == "collapse":
            sp.add_argument("--text", action="store_true")
    add("components", cmd_components, "critical components").add_argument("--dot", action="store_true")
    add("inequalities", cmd_inequalities, "Morse inequalities").add_argument("--components", action="store_true")
    sp = add("mdm-from-field", cmd_mdm_from_field, "function with a given gradient")
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--text", action="store_true")
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.fn is None:
            return cmd_close(args, out)
        bundle = io.load(args.input)
        if args.field:
            _attach_field(bundle, args)
        result = args.fn(bundle, args)
    except ParseError as exc:
        out.write(io.dumps({"error": str(exc), "kind": "parse"}) + "\n")
        return 2
    except DomainFailure as exc:
        out.write(io.dumps(exc.payload) + "\n")
        return 1
    except MdmError as exc:
        out.write(io.dumps({"error": str(exc), "kind": type(exc).__name__}) + "\n")
        return 1
    except OSError as exc:
        out.write(io.dumps({"error": f"{exc.filename}: {exc.strerror}", "kind": "parse"}) + "\n")
        return 2
    out.write(result if isinstance(result, str) else io.dumps(result) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
