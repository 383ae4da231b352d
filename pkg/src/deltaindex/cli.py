"""Command line: ring-info, ideal-op, gr, delta, index, ulrich-check, audit-paper."""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

from .approximation import index_of_ideal, is_parameter_ideal, mcm_approximation
from .audits import audit_sessions, audit_suite, quartic_example_audit, summarize
from .bases import IdealHandle
from .graded import (
    a_invariant,
    assoc_graded,
    is_cohen_macaulay,
    linear_hsop,
    ord_and_initial_form,
    reg_via_membership,
    regularity,
)
from .rings import Ideal, ideal_module, syzygy_module
from .session import SCHEMA, SUITE, SessionError, resolve_session
from .ulrich import is_ulrich

IDEAL_KINDS = ("membership", "sum", "product", "intersect", "quotient", "power", "equality",
               "containment", "colength", "min-gens", "order", "initial-form")


class UsageError(ValueError):
    pass


def _jsonable(v):
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _session(args):
    if not args.session:
        raise UsageError("--session is required for this command")
    s = resolve_session(args.session)
    if args.max_steps is not None:
        s.ring.max_steps = args.max_steps
    return s


def _ideal(session, args, flag="ideal"):
    spec = getattr(args, flag)
    if spec is None:
        raise UsageError(f"--{flag.replace('_', '-')} is required for this command")
    return session.ideal(spec)


def _ideal_summary(I: Ideal) -> dict:
    return {"generators": [str(g) for g in I.gens], "mu": I.min_gens(), "colength": I.colength(),
            "m_primary": I.is_m_primary()}


def cmd_ring_info(args) -> dict:
    s = _session(args)
    return {"ring": s.ring.info(),
            "ideals": {k: _ideal_summary(I) for k, I in sorted(s.ideals.items())},
            "assertions": dict(sorted(s.assertions.items()))}


def cmd_ideal_op(args) -> dict:
    s = _session(args)
    kind = args.kind
    name, A = _ideal(s, args)
    out = {"kind": kind, "ideal": name}

    def other():
        oname, B = _ideal(s, args, "other")
        out["other"] = oname
        return B

    if kind == "membership":
        if args.element is None:
            raise UsageError("--element is required for membership")
        out["element"] = args.element
        out["result"] = A.contains(s.element(args.element))
    elif kind in ("sum", "product", "intersect", "quotient"):
        B = other()
        res = {"sum": lambda: A + B, "product": lambda: A * B,
               "intersect": lambda: A.intersect(B), "quotient": lambda: A.quotient(B)}[kind]()
        out["result"] = [str(g) for g in res.minimalized().gens]
    elif kind == "power":
        out["exponent"] = args.exponent
        out["result"] = [str(g) for g in (A ** args.exponent).gens]
    elif kind == "equality":
        out["result"] = A == other()
    elif kind == "containment":
        out["result"] = A.issubset(other())
    elif kind == "colength":
        out["result"] = A.colength()
    elif kind == "min-gens":
        out["result"] = A.min_gens()
    elif kind == "order":
        out["result"] = A.order()
    elif kind == "initial-form":
        if args.element is None:
            raise UsageError("--element is required for initial-form")
        G = assoc_graded(s.ring, A)
        n, form = ord_and_initial_form(s.element(args.element), G)
        out["element"] = args.element
        out["result"] = {"order": n, "initial_form": str(form)}
    return out


def cmd_gr(args) -> dict:
    s = _session(args)
    name, I = _ideal(s, args)
    G = assoc_graded(s.ring, I)
    cert = linear_hsop(G, args.seed)
    out = {"ideal": name, "variables": list(G.ring.names), "degrees": G.degree_map,
           "relations": [str(f) for f in G.relations], "hilbert_series": str(G.hilbert_series),
           "dim": G.dim, "hsop": cert.to_dict(G), "cohen_macaulay": is_cohen_macaulay(G, args.seed)}
    if out["cohen_macaulay"]:
        out["a_invariant"] = a_invariant(G, args.seed)
        out["regularity"] = regularity(G, args.seed)
        out["reg_via_membership"] = reg_via_membership(s.ring, I, G.lift(cert))
    return out


def cmd_delta(args) -> dict:
    s = _session(args)
    name, I = _ideal(s, args)
    R = s.ring
    if args.of == "quotient":
        M = R.cyclic(I ** args.power)
        label = f"R/({name})^{args.power}" if args.power != 1 else f"R/{name}"
    else:
        M = ideal_module(I ** args.power)
        label = f"({name})^{args.power}" if args.power != 1 else name
    Om, _ = syzygy_module(M, args.n)
    cert = mcm_approximation(Om, args.seed)
    return {"module": label, "n": args.n, "delta": cert.delta, "certificate": cert.summary(),
            "parameter_ideal": is_parameter_ideal(I)}


def cmd_index(args) -> dict:
    s = _session(args)
    name, I = _ideal(s, args)
    rep = index_of_ideal(s.ring, I, args.method, args.bound, args.seed)
    out = rep.to_dict()
    out["ideal_name"] = name
    return out


def _is_quartic_example(s, I) -> bool:
    R = s.ring
    if list(R.names) != ["x", "y"]:
        return False
    if not R.L_handle.equals(IdealHandle(R.S, [R.poly("x^4")])):
        return False
    return I == R.ideal(["x^2", "y"])


def cmd_ulrich_check(args) -> dict:
    s = _session(args)
    name, I = _ideal(s, args)
    cert = is_ulrich(I, args.seed, args.bound)
    out = {"ideal_name": name, **cert.to_dict()}
    if _is_quartic_example(s, I):
        out["records"] = quartic_example_audit(args.seed, args.bound)
    return out


def cmd_audit_paper(args) -> dict:
    if args.session:
        names = [n.strip() for n in args.session.split(",") if n.strip()]
        sessions = [resolve_session(n) for n in names]
        include = all(n.removesuffix(".json") in SUITE for n in names)
        return audit_sessions(sessions, args.seed, args.bound, include_example=include)
    return audit_suite(args.seed, args.bound)


COMMANDS = {
    "ring-info": (cmd_ring_info, "ring invariants and the named ideals of a session"),
    "ideal-op": (cmd_ideal_op, "ideal arithmetic, membership and counting"),
    "gr": (cmd_gr, "associated graded ring: presentation, Hilbert series, CM, a, reg"),
    "delta": (cmd_delta, "delta invariant of R/I^l (or of I^l) and its syzygies"),
    "index": (cmd_index, "index of an ideal by delta search and by regularity"),
    "ulrich-check": (cmd_ulrich_check, "Ulrich certificate for an ideal"),
    "audit-paper": (cmd_audit_paper, "full audit over the bundled rings or given sessions"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--session", help="session JSON file, or a bundled ring name: " + ", ".join(SUITE))
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--bound", type=int, default=8, help="cap on powers searched")
    common.add_argument("--max-steps", type=int, default=None, help="resolution length cap (default d+2)")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--timing", action="store_true", help="add wall-clock time to the report")

    parser = argparse.ArgumentParser(prog="deltaindex", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name in ("ideal-op", "gr", "delta", "index", "ulrich-check"):
            p.add_argument("--ideal", help="ideal name from the session, or a literal '(f, g)'")
        if name == "ideal-op":
            p.add_argument("--kind", choices=IDEAL_KINDS, required=True)
            p.add_argument("--other", help="second ideal for binary operations")
            p.add_argument("--element", help="polynomial for membership or initial-form")
            p.add_argument("--exponent", type=int, default=2)
        if name == "delta":
            p.add_argument("--n", type=int, default=0, help="syzygy index")
            p.add_argument("--power", type=int, default=1)
            p.add_argument("--of", choices=("quotient", "ideal"), default="quotient")
        if name == "index":
            p.add_argument("--method", choices=("delta_search", "regularity", "both"), default="both")
    return parser


def _records(result) -> list:
    return result.get("records", []) if isinstance(result, dict) else []


def render_text(doc: dict) -> str:
    lines = [f"{doc['command']} (seed {doc['seed']}, bound {doc['bound']})"]
    result = doc["result"]
    recs = _records(result)
    for key, value in result.items():
        if key in ("records", "summary"):
            continue
        lines.append(f"  {key}: {json.dumps(value, sort_keys=True)}")
    for r in recs:
        tail = f"  [{r['reason']}]" if "reason" in r else ""
        lines.append(f"  {r['verdict'].upper():<12} {r['check']}  {r['ring']}  {r['target']}{tail}")
    if recs:
        summ = summarize(recs)
        lines.append("  summary: " + ", ".join(f"{k} {v}" for k, v in summ.items()))
        if summ["discrepancy"]:
            lines.append(f"  NOTE: {summ['discrepancy']} discrepancy record(s): machine verdict differs from a claim")
    if "timing" in doc:
        lines.append(f"  time: {doc['timing']['seconds']:.3f}s")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    func = COMMANDS[args.command][0]
    start = time.perf_counter()
    try:
        result = func(args)
    except (SessionError, UsageError, ValueError) as exc:
        print(f"deltaindex {args.command}: error: {exc}", file=sys.stderr)
        return 2
    echo = {k: v for k, v in sorted(vars(args).items()) if k not in ("format", "timing")}
    doc = {"schema": SCHEMA, "command": args.command, "arguments": echo, "seed": args.seed,
           "bound": args.bound, "result": _jsonable(result)}
    if args.timing:
        doc["timing"] = {"seconds": time.perf_counter() - start}
    if args.format == "json":
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        print(render_text(doc))
    recs = _records(result)
    if any(r["verdict"] == "fail" for r in recs):
        return 1
    if any(r["verdict"] == "discrepancy" for r in recs):
        print("note: discrepancy record(s) present; see report", file=sys.stderr)
    return 0
