"""
Command-line interface.

Every verb prints a short text summary, or with ``--json`` a report::

    {"schema": 1, "verb": ..., "inputs": {...}, "result": {...},
     "resources": {"wall_time": ..., ...}}

Exit status: 0 for a definitive answer, 2 when a limit or an unknown
verdict prevents one, 1 for usage, parse and precondition errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Any, Optional, Sequence

from . import corpus
from .braids import braid_presentation, check_optimality, combinatorial_distance, named_diagram
from .completeness import (
    CHECK_LIMITS,
    Completeness,
    CompletionStatus,
    CubeStatus,
    PreconditionError,
    check_completeness,
    complete_presentation,
    cube_condition,
)
from .decision import (
    Answer,
    equivalent_group,
    equivalent_monoid,
    left_gcd,
    phi_orbit,
    reduce_fraction,
    right_lcm,
)
from .diagram import reversing_diagram
from .export import export_grid, lattice_to_dot, lattice_to_json, trace_to_json
from .garside import NotGarsideError, divisors, find_garside_candidate, normal_form
from .presentation import Presentation, PresentationSyntaxError, inverse, parse_presentation
from .reversing import (
    DEFAULT_LIMITS,
    GridError,
    Limits,
    NotComplementedError,
    Status,
    build_grid,
    reverse_left,
    reverse_right,
    reversing_complexity,
)

SCHEMA_VERSION = 1
EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


# -- helpers -----------------------------------------------------------------


def _presentation(args) -> Presentation:
    if args.braid is not None:
        return braid_presentation(args.braid)
    if args.presentation is None:
        raise UsageError("a presentation is needed: -p FILE or --braid N")
    src = args.presentation
    if not os.path.exists(src) and src in corpus.NAMES:
        return corpus.load(src)
    with open(src, encoding="utf-8") as fh:
        return parse_presentation(fh.read())


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"option -{n} is required for {args.verb}")


def _fmt(p: Presentation, w) -> str:
    return p.format(w) if w else ""


def _outcome(p: Presentation, out, trace: bool) -> dict:
    data: dict[str, Any] = {
        "status": out.status.value,
        "steps": out.steps,
        "total_steps": out.total_steps,
    }
    if out.terminal is not None:
        data["terminal"] = _fmt(p, out.terminal)
    if out.numerator is not None:
        data["numerator"] = _fmt(p, out.numerator)
        data["denominator"] = _fmt(p, out.denominator)
    if out.stuck_pairs:
        data["stuck_pairs"] = [[p.name(s), p.name(t)] for s, t in out.stuck_pairs]
    if out.limit:
        data["limit"] = out.limit
    if trace and out.trace is not None:
        data["trace"] = json.loads(trace_to_json(p, out.trace))
    return data


def _cube(p: Presentation, rep) -> dict:
    data: dict[str, Any] = {
        "triple": [_fmt(p, w) for w in rep.triple],
        "status": rep.status.value,
    }
    if rep.witness is not None:
        data["witness"] = [_fmt(p, rep.witness[0]), _fmt(p, rep.witness[1])]
    if rep.residual is not None:
        data["residual"] = _fmt(p, rep.residual)
    if rep.residual_terminal is not None:
        data["residual_terminal"] = _fmt(p, rep.residual_terminal)
    if rep.limit:
        data["limit"] = rep.limit
    return data


def _verdict_code(status) -> int:
    return EXIT_UNKNOWN if status is Answer.UNKNOWN else EXIT_OK


# -- verbs -------------------------------------------------------------------


def cmd_check(args, p, limits):
    v = check_completeness(p, args.mode, limits)
    result = {
        "status": v.status.value,
        "method": v.method,
        "checked": v.checked,
        "failing": [_cube(p, r) for r in v.failing],
    }
    if v.weights is not None:
        result["weights"] = list(v.weights)
    if v.closed_set is not None:
        result["closed_set"] = sorted(_fmt(p, w) for w in v.closed_set)
    if v.reason:
        result["reason"] = v.reason
    text = f"{v.status.value}" + (f" ({v.method})" if v.method else "")
    if v.failing:
        text += "; failing triples: " + ", ".join(
            "(" + ", ".join(_fmt(p, w) for w in r.triple) + ")" for r in v.failing
        )
    return result, text, EXIT_UNKNOWN if v.status is Completeness.UNKNOWN else EXIT_OK


def cmd_reverse(args, p, limits):
    _need(args, "w")
    w = p.signed(args.w)
    fn = reverse_right if args.side == "right" else reverse_left
    out = fn(p, w, args.strategy, limits, trace=args.trace)
    result = _outcome(p, out, args.trace)
    text = f"{out.status.value} after {out.steps} nontrivial steps ({out.total_steps} in all)"
    if out.terminal is not None:
        text += f": {_fmt(p, out.terminal) or 'ε'}"
    if out.stuck_pairs:
        s, t = out.stuck_pairs[0]
        text += f"; stuck on ({p.name(s)}, {p.name(t)})"
    if args.trace and out.trace:
        text += "\n" + "\n".join(_fmt(p, x) or "ε" for x in out.trace)
    return result, text, EXIT_UNKNOWN if out.status is Status.LIMIT_EXCEEDED else EXIT_OK


def cmd_complete(args, p, limits):
    res = complete_presentation(p, limits, require_homogeneous=not args.force)
    added = [f"{_fmt(p, r.lhs)} = {_fmt(p, r.rhs)}" for r in res.added]
    result = {
        "status": res.status.value,
        "added": added,
        "rounds": res.rounds,
        "presentation": res.final.serialize(),
    }
    if res.reason:
        result["reason"] = res.reason
    text = f"{res.status.value}; added: " + ("; ".join(added) if added else "nothing")
    return result, text, EXIT_OK if res.status is CompletionStatus.COMPLETED else EXIT_UNKNOWN


def cmd_cube(args, p, limits):
    if len(args.words) != 3:
        raise UsageError("cube needs three words")
    u, u1, u2 = (p.word(x) for x in args.words)
    rep = cube_condition(p, u, u1, u2, limits)
    result = _cube(p, rep)
    text = rep.status.value
    if rep.witness is not None and rep.status is CubeStatus.FAILS:
        text += f"; witness {_fmt(p, rep.witness[0])} / {_fmt(p, rep.witness[1])}"
    return result, text, EXIT_UNKNOWN if rep.status is CubeStatus.UNKNOWN else EXIT_OK


def cmd_wp_monoid(args, p, limits):
    _need(args, "u", "v")
    v = equivalent_monoid(p, p.word(args.u), p.word(args.v), limits)
    return v.to_dict(), v.status.value, _verdict_code(v.status)


def cmd_wp_group(args, p, limits):
    _need(args, "w")
    v = equivalent_group(p, p.signed(args.w), args.variant, limits)
    return v.to_dict(), v.status.value, _verdict_code(v.status)


def cmd_lcm(args, p, limits):
    _need(args, "u", "v")
    u, v = p.word(args.u), p.word(args.v)
    out = reverse_right(p, inverse(u) + v, "leftmost", limits)
    if out.status is Status.LIMIT_EXCEEDED:
        return {"status": "Unknown", "limit": out.limit}, "Unknown (limit)", EXIT_UNKNOWN
    lcm = right_lcm(p, u, v, limits)
    if lcm is None:
        return {"status": "None"}, "no common right-multiple", EXIT_OK
    return {"status": "Found", "lcm": _fmt(p, lcm)}, _fmt(p, lcm) or "ε", EXIT_OK


def cmd_gcd(args, p, limits):
    _need(args, "u", "v")
    g = left_gcd(p, p.word(args.u), p.word(args.v), limits)
    if g is None:
        return {"status": "Unknown"}, "Unknown", EXIT_UNKNOWN
    return {"status": "Found", "gcd": _fmt(p, g)}, _fmt(p, g) or "ε", EXIT_OK


def cmd_fraction(args, p, limits):
    _need(args, "w")
    r = reduce_fraction(p, p.signed(args.w), limits)
    if r is None:
        return {"status": "Unknown"}, "Unknown", EXIT_UNKNOWN
    d, n = r
    return ({"status": "Found", "denominator": _fmt(p, d), "numerator": _fmt(p, n)},
            f"({_fmt(p, d) or 'ε'})^-1 ({_fmt(p, n) or 'ε'})", EXIT_OK)


def _delta(args, p, limits):
    if args.delta is not None:
        return p.word(args.delta)
    d = find_garside_candidate(p, limits)
    if d is None:
        raise NotGarsideError("no Garside element found within limits")
    return d


def cmd_nf(args, p, limits):
    _need(args, "w")
    delta = _delta(args, p, limits)
    nf = normal_form(p, delta, p.word(args.w), limits)
    return ({"delta": _fmt(p, nf.delta), "factors": [_fmt(p, f) for f in nf.factors],
             "normal_form": nf.format(p)}, nf.format(p), EXIT_OK)


def cmd_garside(args, p, limits):
    d = find_garside_candidate(p, limits)
    if d is None:
        return {"status": "Unknown"}, "no Garside element found within limits", EXIT_UNKNOWN
    lattice = divisors(p, d, limits)
    result = {"status": "Found", "delta": _fmt(p, d), "divisors": len(lattice),
              "elements": [_fmt(p, w) for w in lattice.elements]}
    return result, f"Δ = {_fmt(p, d)}; {len(lattice)} divisors", EXIT_OK


def cmd_braid_dist(args, p, limits):
    _need(args, "u", "v")
    n = args.braid or p.rank + 1
    u, v = p.word(args.u), p.word(args.v)
    dist = combinatorial_distance(n, u, v, limits)
    comp = reversing_complexity(braid_presentation(n), u, v, limits)
    result = {"distance": dist, "reversing_complexity": comp}
    text = f"distance {dist}, reversing complexity {comp}"
    return result, text, EXIT_OK if dist is not None else EXIT_UNKNOWN


def _family(text: Optional[str]):
    if text is None:
        return None
    out = []
    for item in text.split(","):
        a, _, b = item.strip().partition("-")
        out.append((int(a), int(b)))
    return out


def cmd_braid_opt(args, p, limits):
    _need(args, "u", "v")
    n = args.braid or p.rank + 1
    v = check_optimality(n, p.word(args.u), p.word(args.v), _family(args.family), limits)
    text = v.status + (f", distance {v.distance}" if v.distance is not None else f" ({v.reason})")
    return v.to_dict(), text, EXIT_OK if v.optimal else EXIT_UNKNOWN


def cmd_phi(args, p, limits):
    _need(args, "u", "v")
    rep = phi_orbit(p, p.word(args.u), p.word(args.v), limits, args.max_iter)
    text = rep.status + (f" of length {rep.cycle.length} from step {rep.cycle.entry}" if rep.cycle else "")
    return rep.to_dict(p), text, EXIT_OK if rep.status == "Cycle" else EXIT_UNKNOWN


def cmd_export(args, p, limits):
    if args.kind == "lattice":
        delta = _delta(args, p, limits)
        lattice = divisors(p, delta, limits)
        body = lattice_to_dot(lattice) if args.format == "dot" else lattice_to_json(lattice)
    elif args.kind == "grid":
        _need(args, "u", "v")
        body = export_grid(build_grid(p, p.word(args.u), p.word(args.v), limits), args.format)
    else:
        if args.w is None:
            _need(args, "u", "v")
            w = inverse(p.word(args.u)) + p.word(args.v)
        else:
            w = p.signed(args.w)
        d = reversing_diagram(p, w, limits=limits)
        if args.kind == "named":
            d = named_diagram(args.braid or p.rank + 1, d)
        body = export_grid(d, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(body)
    return {"format": args.format, "kind": args.kind, "output": args.output or "-", "text": body}, body.rstrip("\n"), EXIT_OK


VERBS = {
    "check": (cmd_check, "decide completeness by the cube condition"),
    "reverse": (cmd_reverse, "reverse a signed word"),
    "complete": (cmd_complete, "run the completion procedure"),
    "cube": (cmd_cube, "check the cube condition on three words"),
    "wp-monoid": (cmd_wp_monoid, "decide equivalence of two positive words"),
    "wp-group": (cmd_wp_group, "decide whether a signed word represents 1"),
    "lcm": (cmd_lcm, "right-lcm of two words"),
    "gcd": (cmd_gcd, "left-gcd of two words"),
    "fraction": (cmd_fraction, "reduced fraction D^-1 N of a signed word"),
    "nf": (cmd_nf, "right-normal form of a positive word"),
    "garside": (cmd_garside, "find a Garside element and its divisors"),
    "braid-dist": (cmd_braid_dist, "combinatorial distance of braid words"),
    "braid-opt": (cmd_braid_opt, "optimality certificate for a braid reversing diagram"),
    "phi": (cmd_phi, "iterate Phi(u, v) = (v\\u, u\\v)"),
    "export": (cmd_export, "DOT or JSON rendering of grids, diagrams and lattices"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-p", "--presentation", help="presentation file (or corpus name)")
    common.add_argument("--braid", type=int, metavar="N", help="use the N-strand braid presentation")
    common.add_argument("-w", help="signed word (inverses as upper case or -name)")
    common.add_argument("-u", help="first positive word")
    common.add_argument("-v", help="second positive word")
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--limits", help="steps=N,len=L,frontier=F")
    common.add_argument("--trace", action="store_true", help="include reversing traces")

    parser = _Parser(prog="wordrev", description="Subword reversing for presented monoids and groups.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    parsers = {}
    for verb, (_, help_text) in VERBS.items():
        parsers[verb] = sub.add_parser(verb, parents=[common], help=help_text)
    parsers["check"].add_argument("--mode", default="auto", choices=["auto", "homogeneous-letters", "closed-set"])
    parsers["reverse"].add_argument("--strategy", default="leftmost", choices=["leftmost", "exhaustive-first"])
    parsers["reverse"].add_argument("--side", default="right", choices=["right", "left"])
    parsers["complete"].add_argument("--force", action="store_true", help="allow non-homogeneous input")
    parsers["cube"].add_argument("words", nargs="*", help="the three words u, u', u''")
    parsers["wp-group"].add_argument("--variant", default="right-right", choices=["right-right", "right-left"])
    parsers["nf"].add_argument("--delta", help="Garside element (found automatically when omitted)")
    parsers["braid-opt"].add_argument("--family", help="strand pairs such as 1-2,2-3 (all subsets when omitted)")
    parsers["phi"].add_argument("--max-iter", type=int, default=64)
    parsers["export"].add_argument("--kind", default="grid", choices=["grid", "diagram", "named", "lattice"])
    parsers["export"].add_argument("--format", default="dot", choices=["dot", "json"])
    parsers["export"].add_argument("--delta", help="Garside element for --kind lattice")
    parsers["export"].add_argument("-o", "--output", help="write to a file instead of the report")
    return parser


def run(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        limits = Limits.parse(args.limits) if args.limits else (
            CHECK_LIMITS if args.verb in ("check", "complete", "cube") else DEFAULT_LIMITS
        )
        p = _presentation(args)
        started = time.perf_counter()
        result, text, code = VERBS[args.verb][0](args, p, limits)
        elapsed = time.perf_counter() - started
    except UsageError as exc:
        print(f"wordrev: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (PresentationSyntaxError, PreconditionError, NotComplementedError, NotGarsideError,
            GridError, OSError, ValueError, RuntimeError) as exc:
        print(f"wordrev: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.json:
        inputs = {k: getattr(args, k) for k in ("presentation", "braid", "w", "u", "v", "limits")}
        inputs = {k: v for k, v in inputs.items() if v is not None}
        report = {
            "schema": SCHEMA_VERSION,
            "verb": args.verb,
            "inputs": inputs,
            "result": result,
            "exit_code": code,
            "resources": {
                "wall_time": round(elapsed, 6),
                "limits": {"steps": limits.max_steps, "len": limits.max_word_length,
                           "frontier": limits.max_frontier},
            },
        }
        print(json.dumps(report, sort_keys=True, ensure_ascii=False), file=stdout)
    else:
        print(text, file=stdout)
    return code


def main() -> None:
    sys.exit(run())
