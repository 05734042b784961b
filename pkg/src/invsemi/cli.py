"""Command line for invsemi.

Exit status: 0 success, 1 unreadable or malformed input, 2 precondition
failure, 3 a bounded computation could not certify its answer.
"""
from __future__ import annotations

import argparse
import os
import sys

from . import bicyclic, brandt, howson, io, monogenic
from .eggbox import boxes, emit_eggbox_dot, emit_eggbox_text, label
from .errors import CertificationError, ParseError, PreconditionError
from .finite import closure, greens

BOUND_ENV = "INVSEMI_BOUND"
EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_CERTIFICATION = 0, 1, 2, 3


def _bound(args, fallback):
    """Resolve the bound: flag, then environment, then ``fallback``."""
    if args.bound is not None:
        return args.bound, "flag"
    env = os.environ.get(BOUND_ENV)
    if env is not None:
        try:
            value = int(env)
        except ValueError:
            raise ParseError(f"{BOUND_ENV}={env!r} is not an integer") from None
        if value < 1:
            raise ParseError(f"{BOUND_ENV} must be positive")
        return value, "env"
    return fallback, "default"


def _word_json(word):
    return [[i, s] for i, s in word]


def cmd_closure(args):
    gens = io.semigroup_from_json(io.load_arg(args.semigroup))
    S = closure(gens)
    return {
        "degree": S.degree,
        "generators": [io.pi_to_json(g) for g in S.generators],
        "size": len(S),
        "elements": [{"element": io.pi_to_json(a), "word": _word_json(S.generator_words[a])}
                     for a in S.elements],
    }


def _classes(cs):
    return [[io.pi_to_json(a) for a in c] for c in cs]


def cmd_greens(args):
    S = closure(io.semigroup_from_json(io.load_arg(args.semigroup)))
    G = greens(S)
    return {
        "size": len(S),
        "r_classes": _classes(G.r_classes),
        "l_classes": _classes(G.l_classes),
        "h_classes": _classes(G.h_classes),
        "d_classes": _classes(G.d_classes),
        "j_order": sorted([i, j] for i, j in G.j_order),
        "idempotents": [io.pi_to_json(e) for e in G.idempotents],
        "kernel": G.kernel,
    }


def cmd_eggbox(args):
    S = closure(io.semigroup_from_json(io.load_arg(args.semigroup)))
    if args.format == "dot":
        return emit_eggbox_dot(S)
    if args.format == "text":
        return emit_eggbox_text(S)
    return {"d_classes": [
        {"index": b["index"], "kernel": b["kernel"],
         "cells": [[{"group": c["group"], "elements": [label(a) for a in c["elements"]]} for c in row]
                   for row in b["cells"]]}
        for b in boxes(S)]}


def cmd_intersect(args):
    B = io.brandt_from_json(io.load_arg(args.brandt))
    U = io.brandt_elements_from_json(io.load_arg(args.u), B)
    V = io.brandt_elements_from_json(io.load_arg(args.v), B)
    res = brandt.intersect(B, U, V)
    return {
        "brandt": io.brandt_to_json(B),
        "generators": [io.brandt_element_to_json(a) for a in res.generators],
        "factors": [{"rows": list(f.rows), "base_row": f.base_row, "subgroup": list(f.subgroup),
                     "transversal": [io.brandt_element_to_json(f.transversal[j]) for j in f.rows]}
                    for f in res.factors],
        "contains_zero": res.contains_zero,
        "empty": res.empty,
    }


def cmd_howson(args):
    S = closure(io.semigroup_from_json(io.load_arg(args.semigroup)))
    U = io.element_list_from_json(io.load_arg(args.u), "/u")
    V = io.element_list_from_json(io.load_arg(args.v), "/v")
    res = howson.intersect_fg(S, U, V)
    cu, cv = closure(U), closure(V)
    G = greens(S)
    blocks = []
    for b in res.blocks:
        blocks.append({
            "class_id": b.class_index,
            "class_size": len(G.d_classes[b.class_index]),
            "is_kernel": b.is_kernel,
            "generators": [io.pi_to_json(a) for a in b.generators],
            "provenance_words": [{"u": _word_json(cu.generator_words[a]),
                                  "v": _word_json(cv.generator_words[a])} for a in b.generators],
        })
    return {
        "semigroup": {"degree": S.degree, "size": len(S)},
        "u_generators": [io.pi_to_json(a) for a in cu.generators],
        "v_generators": [io.pi_to_json(a) for a in cv.generators],
        "blocks": blocks,
        "generators": [io.pi_to_json(a) for a in res.generators],
        "intersection_size": len(set(cu.elements) & set(cv.elements)),
        "empty": res.empty,
    }


def cmd_bicyclic_summary(args):
    gens, file_bound = io.bicyclic_gens_from_json(io.load_arg(args.gens))
    if args.bound is None and file_bound is not None:
        N, source = file_bound, "file"
    else:
        N, source = _bound(args, bicyclic.DEFAULT_BOUND)
    s = bicyclic.structural_summary(gens, N, args.cap)
    out = {
        "gens": [io.bicyclic_to_json(p) for p in s.gens],
        "has_nonidempotent": s.has_nonidempotent,
        "k": s.k, "m": s.m,
        "residues": list(s.residues),
        "low_idempotents": list(s.low_idempotents),
        "bound": N, "bound_source": source, "cap": args.cap,
    }
    if s.has_nonidempotent:
        out["finite_generating_set"] = [io.bicyclic_to_json(p)
                                        for p in bicyclic.finite_generating_set(gens, N, args.cap)]
    return out


def cmd_bicyclic_intersect(args):
    U, bu = io.bicyclic_gens_from_json(io.load_arg(args.u))
    V, bv = io.bicyclic_gens_from_json(io.load_arg(args.v))
    N, source = _bound(args, bicyclic.DEFAULT_BOUND)
    res = bicyclic.intersect(U, V, N, args.cap)
    return {
        "u": [io.bicyclic_to_json(p) for p in sorted(set(U))],
        "v": [io.bicyclic_to_json(p) for p in sorted(set(V))],
        "generators": [io.bicyclic_to_json(p) for p in res.generators],
        "case": res.case,
        "equalized": None if res.u is None else {"u": list(res.u), "v": list(res.v)},
        "witness_idempotent": res.witness_idempotent,
        "empty": res.empty,
        "bound": N, "bound_source": source, "cap": args.cap,
        "certified": f"bounded closure equality on [0,{N}]^2",
    }


def _nf_json(f):
    return [f[0], *f[1:]]


def cmd_monogenic_eq(args):
    pres = io.presentation_from_json(io.load_arg(args.presentation), "/presentation")
    u = io.words_from_json(args.u, "/u")[0]
    v = io.words_from_json(args.v, "/v")[0]
    cap = pres.default_cap if args.cap is None else args.cap
    equal = monogenic.quotient_equal(pres, u, v, method=args.method, cap=cap)
    return {
        "presentation": io.presentation_to_json(pres),
        "u": u, "v": v,
        "triples": {"u": list(monogenic.eval_word(u)), "v": list(monogenic.eval_word(v))},
        "normal_forms": {"u": _nf_json(monogenic.normal_form(pres, monogenic.eval_word(u))),
                         "v": _nf_json(monogenic.normal_form(pres, monogenic.eval_word(v)))},
        "equal": equal,
        "method": args.method,
        "cap": cap,
    }


def cmd_monogenic_intersect(args):
    pres = io.presentation_from_json(io.load_arg(args.presentation), "/presentation")
    U = io.words_from_json(io.load_arg(args.u) if args.u.strip()[:1] == "[" else args.u, "/u")
    V = io.words_from_json(io.load_arg(args.v) if args.v.strip()[:1] == "[" else args.v, "/v")
    fallback = monogenic.FREE_BOUND if pres.variant == "free" else monogenic.DEFAULT_BOUND
    N, source = _bound(args, fallback)
    res = monogenic.intersect_fg(pres, U, V, N, args.cap)
    return {
        "presentation": io.presentation_to_json(pres),
        "u": sorted(set(U)), "v": sorted(set(V)),
        "generators": list(res.generators),
        "finite_part": list(res.finite_part),
        "kernel": res.kernel,
        "empty": res.empty,
        "certified": res.certified,
        "bound": N, "bound_source": source, "cap": args.cap,
    }


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="invsemi", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        sp.add_argument("--output", "-o", help="write the report here (atomically)")
        return sp

    for name, func, help_ in [("closure", cmd_closure, "enumerate <generators>"),
                              ("greens", cmd_greens, "Green's relations")]:
        add(name, func, help_).add_argument("--semigroup", required=True)
    sp = add("eggbox", cmd_eggbox, "egg-box diagram")
    sp.add_argument("--semigroup", required=True)
    sp.add_argument("--format", choices=["json", "dot", "text"], default="json")

    sp = add("intersect", cmd_intersect, "intersect two subsemigroups of a Brandt semigroup")
    sp.add_argument("--brandt", required=True)
    sp.add_argument("--u", required=True)
    sp.add_argument("--v", required=True)

    sp = add("howson", cmd_howson, "per-J-class intersection report in a finite semigroup")
    sp.add_argument("--semigroup", required=True)
    sp.add_argument("--u", required=True)
    sp.add_argument("--v", required=True)

    sp = add("bicyclic-summary", cmd_bicyclic_summary, "structure of <gens> in B")
    sp.add_argument("--gens", required=True)
    sp.add_argument("--bound", type=int)
    sp.add_argument("--cap", type=int, default=bicyclic.DEFAULT_CAP)

    sp = add("bicyclic-intersect", cmd_bicyclic_intersect, "intersect two subsemigroups of B")
    sp.add_argument("--u", required=True)
    sp.add_argument("--v", required=True)
    sp.add_argument("--bound", type=int)
    sp.add_argument("--cap", type=int, default=bicyclic.DEFAULT_CAP)

    sp = add("monogenic-eq", cmd_monogenic_eq, "word equality in a monogenic quotient")
    sp.add_argument("--presentation", required=True)
    sp.add_argument("--u", required=True)
    sp.add_argument("--v", required=True)
    sp.add_argument("--method", choices=["normal_form", "saturation"], default="normal_form")
    sp.add_argument("--cap", type=int)

    sp = add("monogenic-intersect", cmd_monogenic_intersect, "intersect in a monogenic quotient")
    sp.add_argument("--presentation", required=True)
    sp.add_argument("--u", required=True, help="word, JSON list of words, or file")
    sp.add_argument("--v", required=True)
    sp.add_argument("--bound", type=int)
    sp.add_argument("--cap", type=int, default=bicyclic.DEFAULT_CAP)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    args = build_parser().parse_args(argv)
    if getattr(args, "bound", None) is not None and args.bound < 1:
        print("error: --bound must be positive", file=stderr)
        return EXIT_PARSE
    try:
        result = args.func(args)
    except ParseError as e:
        print(f"parse error at {e}", file=stderr)
        return EXIT_PARSE
    except CertificationError as e:
        print(f"certification failed: {e}", file=stderr)
        return EXIT_CERTIFICATION
    except PreconditionError as e:
        print(f"precondition failed: {e}", file=stderr)
        return EXIT_PRECONDITION
    text = result if isinstance(result, str) else io.dumps({"command": args.command, **result})
    if args.output:
        io.write_atomic(args.output, text)
    else:
        stdout.write(text)
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
