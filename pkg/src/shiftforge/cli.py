"""Command-line surface.

Every command loads a JSON spec, runs bounded checks, and emits a
deterministic JSON report (and optionally a DOT graph).  Exit codes:
0 all checks passed, 1 a verified violation with a witness, 2 the
bounds ran out before a definite answer.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from .blockops import (
    OneBlockOp,
    check_inverse_semigroup_axioms,
    classify_semigroup,
    continuity_check,
    verify_closure,
)
from .cosets import class_families, coset_law_check, tau_bijection
from .decomposition import decompose, is_fractal
from .embedding import monoid_from_spec, verify_chain_hypotheses, verify_embedding
from .errors import DepthExhausted, ParseError, ShiftforgeError
from .shifts import MarkovCoset, shift_from_descriptor

REPORT_VERSION = 1

PASS, VIOLATION, INCONCLUSIVE = 0, 1, 2


def _default_bound() -> int:
    env = os.environ.get("SHIFTFORGE_DEFAULT_BOUND")
    return int(env) if env else 16


def load_spec(path: str):
    """(kind, name, object) where kind is 'shift' or 'monoid'."""
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"not valid JSON: {exc}", "/")
    name = doc.get("name", os.path.basename(path))
    if "shift" in doc:
        return "shift", name, shift_from_descriptor(doc["shift"])
    if "monoid" in doc:
        return "monoid", name, monoid_from_spec(doc["monoid"])
    raise ParseError("spec must contain a 'shift' or a 'monoid'", "/")


def emit_dot(p, bound: int) -> str:
    """Transition graph on the first ``bound`` letters, stable order."""
    letters = [a for a in p.alphabet.first(bound) if p.letter_allowed(a)]
    enc = p.alphabet.encode
    lines = ["digraph shift {"]
    for a in letters:
        lines.append(f'  "{enc(a)}";')
    for a in letters:
        for b in letters:
            ok = p.window_allowed((a, b)) if p.m == 1 else p.block_allowed((a, b))
            if ok:
                lines.append(f'  "{enc(a)}" -> "{enc(b)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    if hasattr(x, "to_json"):
        try:
            return _jsonable(x.to_json())
        except TypeError:
            pass
    return repr(x)


def _cmd_verify(args, kind, name, obj, rng):
    if kind == "monoid":
        report = verify_chain_hypotheses(obj)
        out = {"hypotheses": report}
        code = PASS if report["ok"] else VIOLATION
        if report["ok"]:
            emb = verify_embedding(obj)
            out["embedding"] = emb
            code = PASS if emb["ok"] else VIOLATION
        return code, out
    p = obj
    out = {}
    code = PASS
    if getattr(p.alphabet, "is_group", False):
        op = OneBlockOp(p.alphabet)
        closure = verify_closure(p, op, rng, pair_samples=50, bound=args.bound)
        out["closure"] = closure
        if not closure["closed"]:
            return VIOLATION, out
        laws = coset_law_check(p, args.n, args.k, rng, n_triples=50, bound=args.bound)
        out["coset_laws"] = laws
        if not laws["ok"]:
            code = VIOLATION if laws.get("violations") else INCONCLUSIVE
    if isinstance(p, MarkovCoset):
        bad = p.hom.check_hom(args.bound)
        out["hom_check"] = {"ok": bad is None, "witness": bad}
        if bad is not None:
            code = VIOLATION
    return code, out


def _cmd_classify(args, kind, name, obj, rng):
    if kind == "monoid":
        return PASS, {"inverse_monoid": obj.check_inverse_monoid()}
    cls = obj.classify(bound=args.bound)
    out = {"shift": cls}
    if getattr(obj.alphabet, "is_group", False):
        out["semigroup"] = classify_semigroup(obj, OneBlockOp(obj.alphabet))
    return PASS, out


def _parse_block(args, p):
    if args.block is None:
        return (p.alphabet.identity,) * max(args.n, 1)
    raw = json.loads(args.block)
    return tuple(p.alphabet.from_json(v) for v in raw)


def _cmd_followers(args, kind, name, p, rng):
    if kind != "shift":
        raise ParseError("'followers' needs a shift spec", "/")
    word = _parse_block(args, p)
    res = p.follower_set(word, args.k, args.bound)
    pre = p.predecessor_set(word, args.k, args.bound)
    out = {
        "word": [p.alphabet.to_json(a) for a in word],
        "followers": {
            "elements": _jsonable(res.elements),
            "complete": res.complete,
            "cardinality": res.cardinality(),
        },
        "predecessors": {
            "elements": _jsonable(pre.elements),
            "complete": pre.complete,
            "cardinality": pre.cardinality(),
        },
    }
    code = PASS if (res.complete and pre.complete) else INCONCLUSIVE
    return code, out


def _cmd_classes(args, kind, name, p, rng):
    if kind != "shift":
        raise ParseError("'classes' needs a shift spec", "/")
    fam = class_families(p, args.n, args.k, args.bound)
    tau = tau_bijection(p, args.n, args.k, rng, bound=args.bound)
    out = {
        "follower_count": fam["follower_count"],
        "predecessor_count": fam["predecessor_count"],
        "followers_pairwise_disjoint": fam["followers_pairwise_disjoint"],
        "follower_class_sizes": sorted(
            len(c["set"].elements) for c in fam["follower_classes"]
        ),
        "tau": _jsonable(tau),
    }
    return (PASS if tau.get("ok") else VIOLATION), out


def _cmd_op_check(args, kind, name, p, rng):
    if kind != "shift":
        raise ParseError("'op-check' needs a shift spec", "/")
    op = OneBlockOp(p.alphabet)
    out = {
        "closure": verify_closure(p, op, rng, pair_samples=50, bound=args.bound),
        "axioms": _jsonable(check_inverse_semigroup_axioms(p, op, rng, n_checks=200)),
        "classification": classify_semigroup(p, op),
        "continuity": _jsonable(continuity_check(p, op, rng, bound=args.bound)),
    }
    bad = (not out["closure"]["closed"]) or (not out["axioms"]["ok"])
    return (VIOLATION if bad else PASS), out


def _cmd_decompose(args, kind, name, p, rng):
    if kind != "shift" or not isinstance(p, MarkovCoset):
        raise ParseError("'decompose' needs a coset-transition shift spec", "/")
    try:
        res = decompose(p, depth=args.depth, bound=args.bound)
    except DepthExhausted as exc:
        return INCONCLUSIVE, {"error": str(exc),
                              "fractal_check": is_fractal(p, args.depth, args.bound).to_json()}
    out = {
        "phi_steps": res.phi_steps,
        "theta_steps": res.theta_steps,
        "factor_orders": res.factor_orders(),
        "fractal_alphabet_order": res.fractal.alphabet.order(),
        "fractal_report": res.fractal_report.to_json(),
        "section_log": _jsonable(res.section_log),
        "trace": _jsonable(res.trace),
        "forward": {"memory": res.forward.memory, "anticipation": res.forward.anticipation},
        "inverse": {"memory": res.inverse.memory, "anticipation": res.inverse.anticipation},
    }
    stage_ok = all(
        all(v is not False for v in t["checks"].values() if isinstance(v, bool))
        for t in res.trace
    )
    return (PASS if stage_ok else VIOLATION), out


def _cmd_embed(args, kind, name, s, rng):
    if kind != "monoid":
        raise ParseError("'embed' needs a monoid spec", "/")
    report = verify_chain_hypotheses(s)
    out = {"hypotheses": _jsonable(report)}
    if not report["ok"]:
        return VIOLATION, out
    emb = verify_embedding(s)
    out["embedding"] = _jsonable(emb)
    return (PASS if emb["ok"] else VIOLATION), out


def _cmd_graph(args, kind, name, p, rng):
    if kind != "shift":
        raise ParseError("'graph' needs a shift spec", "/")
    dot = emit_dot(p, args.bound)
    path = args.emit_dot or args.out
    if path:
        with open(path, "w") as fh:
            fh.write(dot)
    else:
        sys.stdout.write(dot)
    return PASS, {"nodes": min(args.bound, p.alphabet.order() or args.bound),
                  "dot_path": path}


_COMMANDS = {
    "verify": _cmd_verify,
    "classify": _cmd_classify,
    "followers": _cmd_followers,
    "classes": _cmd_classes,
    "op-check": _cmd_op_check,
    "decompose": _cmd_decompose,
    "embed": _cmd_embed,
    "graph": _cmd_graph,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="shiftforge",
                                 description="bounded verification of shift-space structure")
    sub = ap.add_subparsers(dest="command", required=True)
    for cmd in _COMMANDS:
        sp = sub.add_parser(cmd)
        sp.add_argument("--spec", required=True)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--bound", type=int, default=_default_bound())
        sp.add_argument("--depth", type=int, default=8)
        sp.add_argument("--k", type=int, default=1)
        sp.add_argument("--n", type=int, default=1)
        sp.add_argument("--block", default=None,
                        help="JSON list of letters for followers/predecessors")
        sp.add_argument("--emit-dot", dest="emit_dot", default=None)
        sp.add_argument("--out", default=None)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.bound <= 0 or args.depth <= 0:
        print("bounds must be positive", file=sys.stderr)
        return INCONCLUSIVE
    try:
        kind, name, obj = load_spec(args.spec)
        rng = random.Random(args.seed)
        code, body = _COMMANDS[args.command](args, kind, name, obj, rng)
    except ShiftforgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return VIOLATION
    if args.command == "graph":
        # the DOT text is the deliverable; no JSON wrapper on stdout
        return code
    report = {
        "version": REPORT_VERSION,
        "command": args.command,
        "spec": name,
        "seed": args.seed,
        "bounds": {"bound": args.bound, "depth": args.depth, "k": args.k, "n": args.n},
        "exit_code": code,
        "result": _jsonable(body),
    }
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
