"""Command-line front end.

Every subcommand prints one JSON object (``--format text`` prints
``key: value`` lines instead).  Exit codes: 0 success, 1 domain error,
2 parse error, 3 a negative Prüfer verdict.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from .errors import ParseError, VlabError
from .fields import parse_field
from .gauss import GaussPoint, compare_rings, gauss_val, is_residually_transcendental
from .intring import int_member
from .literals import parse_poly, parse_poly_or_ratfunc
from .prufer import decide_prufer
from .sequences import DEFAULT_WINDOW, classify_window, parse_family, pseudo_limit_set
from .sets import closure, parse_desc
from .values import INF, parse_value, render_value

SCHEMA = "vlab/1"


def _window() -> int:
    raw = os.environ.get("VLAB_WINDOW")
    if raw is None:
        return DEFAULT_WINDOW
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"VLAB_WINDOW must be an integer, got {raw!r}") from None


def _gamma(text: str):
    g = parse_value(text)
    if g is INF:
        raise ParseError("gamma must be finite")
    return g


def cmd_val(args):
    F = parse_field(args.field)
    x = F.parse_element(args.elem)
    return {"field": F.spec, "elem": str(x), "value": render_value(F.valuation(x))}, 0


def cmd_gauss(args):
    F = parse_field(args.field)
    P = GaussPoint(F, F.parse_element(args.alpha), _gamma(args.gamma))
    f = parse_poly_or_ratfunc(F, args.poly)
    return {
        "field": F.spec,
        "alpha": str(P.alpha),
        "gamma": render_value(P.gamma),
        "poly": str(f),
        "value": render_value(gauss_val(P, f)),
        "residually_transcendental": is_residually_transcendental(P),
    }, 0


def cmd_order(args):
    F = parse_field(args.field)
    P1 = GaussPoint(F, F.parse_element(args.alpha1), _gamma(args.gamma1))
    P2 = GaussPoint(F, F.parse_element(args.alpha2), _gamma(args.gamma2))
    return {"field": F.spec, "order": compare_rings(P1, P2).value}, 0


def cmd_closure(args):
    F = parse_field(args.field)
    S = parse_desc(F, args.set)
    return {"field": F.spec, "set": S.render(), "closure": closure(S).render()}, 0


def cmd_classify(args):
    F = parse_field(args.field)
    fam = parse_family(F, args.seq)
    rep = classify_window(fam, args.window)
    return {
        "field": F.spec,
        "family": fam.render(),
        "window": args.window,
        "kind": rep.kind.value,
        "gaps": [render_value(g) for g in rep.gaps],
        "consistent": rep.consistent,
        "reasons": list(rep.reasons),
    }, 0


def cmd_member(args):
    F = parse_field(args.field)
    S = parse_desc(F, args.set)
    f = parse_poly(F, args.poly)
    v = int_member(S, f, args.window)
    out = {"field": F.spec, "set": S.render(), "poly": str(f), "member": v.member, "criterion": v.criterion}
    if v.witness is not None:
        s, val = v.witness
        out["witness"] = {"s": str(s), "value": render_value(val)}
    if v.window_certified is not None:
        out["window_certified"] = v.window_certified
    return out, 0


def cmd_prufer(args):
    F = parse_field(args.field)
    S = parse_desc(F, args.set)
    v = decide_prufer(S, args.window)
    out = {
        "field": F.spec,
        "set": S.render(),
        "prufer": v.prufer,
        "rule": v.rule,
        "certificate": v.certificate.as_dict(),
        "caveats": list(v.caveats),
    }
    return out, 0 if v.prufer else 3


def cmd_limitset(args):
    F = parse_field(args.field)
    fam = parse_family(F, args.seq)
    home = fam.ext or F
    alpha = home.parse_element(args.alpha)
    b = pseudo_limit_set(fam, alpha, args.window)
    return {"field": F.spec, "family": fam.render(), "alpha": str(alpha), "limit_set": b.render()}, 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vlab", description="Exact valuation theory on K(X).")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--field", required=True, help="field spec, e.g. qp:5, tadic, hahn")
        p.set_defaults(fn=fn)
        return p

    p = add("val", cmd_val, "valuation of an element")
    p.add_argument("--elem", required=True)

    p = add("gauss", cmd_gauss, "v_{alpha,gamma} of a polynomial or rational function")
    p.add_argument("--alpha", required=True)
    p.add_argument("--gamma", required=True)
    p.add_argument("--poly", required=True)

    p = add("order", cmd_order, "compare two rings V_{alpha,gamma} on K[X]")
    for k in ("alpha1", "gamma1", "alpha2", "gamma2"):
        p.add_argument(f"--{k}", required=True)

    p = add("closure", cmd_closure, "polynomial closure of a description")
    p.add_argument("--set", required=True)

    window = _window()
    for name, fn, help_ in (
        ("classify", cmd_classify, "classify a sequence family on a window"),
        ("member", cmd_member, "decide f in Int(S,V)"),
        ("prufer", cmd_prufer, "decide whether Int(S,V) is Prüfer"),
        ("limitset", cmd_limitset, "pseudo-limit set of a family around alpha"),
    ):
        p = add(name, fn, help_)
        p.add_argument("--window", type=int, default=window)
        if name in ("classify", "limitset"):
            p.add_argument("--seq", required=True)
        else:
            p.add_argument("--set", required=True)
        if name == "member":
            p.add_argument("--poly", required=True)
        if name == "limitset":
            p.add_argument("--alpha", required=True)
    return ap


def _emit(obj: dict, fmt: str, stream):
    if fmt == "json":
        stream.write(json.dumps(obj, ensure_ascii=False, separators=(",", ":")) + "\n")
        return
    for k, v in obj.items():
        stream.write(f"{k}: {v if isinstance(v, str) else json.dumps(v, ensure_ascii=False)}\n")


_VALUE_OPTS = {
    "--field", "--elem", "--alpha", "--gamma", "--poly", "--set", "--seq", "--window",
    "--alpha1", "--gamma1", "--alpha2", "--gamma2", "--format",
}


def _glue_values(argv: List[str]) -> List[str]:
    """Turn ``--poly -X+2`` into ``--poly=-X+2`` so argparse keeps negative literals."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: Optional[List[str]] = None) -> int:
    argv = _glue_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = build_parser().parse_args(argv)
    except ParseError as exc:
        sys.stderr.write(f"vlab: {exc}\n")
        return 2
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        out, code = args.fn(args)
    except ParseError as exc:
        sys.stderr.write(f"vlab: parse error: {exc}\n")
        return 2
    except (VlabError, ArithmeticError, TypeError, ValueError) as exc:
        sys.stderr.write(f"vlab: {type(exc).__name__}: {exc}\n")
        return 1
    _emit({"schema": SCHEMA, "command": args.command, **out}, args.format, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
