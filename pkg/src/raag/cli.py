"""Command line front end.

Exit status: 0 yes or solved, 1 no, 2 input error, 3 resource guard exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import slp as _slp
from .conjugacy import ccp_decide, out_word_problem, rsccp_solve
from .ctrace import CompressedTrace, ccore, is_trivial, r_reduce
from .errors import ContractError, ResourceError, ValidationError
from .progression import ArithProgression
from .session import Session, load_session
from .slp import DEFAULT_GUARD, WordBackend
from .tracematch import find_occurrences, is_factor

YES, NO, INPUT_ERROR, RESOURCE_ERROR = 0, 1, 2, 3
SHOW_LIMIT = 200

COMPOSITION_NOTE = (
    "Generator words compose outermost first: 'tau sigma' maps x to tau(sigma(x))."
)


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="infile", required=True, help="session file")
    common.add_argument("--backend", choices=("reference", "compressed"), default="reference")
    common.add_argument("--guard", type=int, default=DEFAULT_GUARD, help="largest word the backend may expand")
    common.add_argument("--format", choices=("text", "structured"), default="text")

    p = argparse.ArgumentParser(prog="raag", description="Compressed words in graph groups.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in (("nf", "normal form of an element"), ("wp", "is the element trivial?"), ("core", "cyclic core")):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("--target", required=True)
    sp = sub.add_parser("match", parents=[common], help="is the pattern trace a factor of the text trace?")
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--text", required=True)
    sp = sub.add_parser("conj", parents=[common], help="are two elements conjugate?")
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp = sub.add_parser("rsccp", parents=[common], help="one conjugator for all letters")
    sp.add_argument("--map", required=True, help="a=NAME,b=NAME,...")
    sp = sub.add_parser("out", parents=[common], help="is a word over generators an inner automorphism?",
                        description=COMPOSITION_NOTE)
    sp.add_argument("--table", help="session file with gen blocks (default: --in)")
    sp.add_argument("--word", required=True, help="generator names, e.g. \"tau tau\"")
    return p


def _word_repr(s, limit: int = SHOW_LIMIT) -> Optional[str]:
    if len(s) > limit:
        return None
    return _slp.slp_text(s) or "1"


def _progression_points(p: ArithProgression) -> list:
    return [list(p.init.counts), list(p.delta.counts), p.steps]


def merge_occurrences(singles: list, periodic: Optional[ArithProgression]) -> list:
    """Fold single occurrences into neighbouring progression steps where they fit."""
    pts = sorted(singles, key=lambda q: q.counts)
    if periodic is None:
        if not pts:
            return []
        if len(pts) >= 2:
            delta = [b - a for a, b in zip(pts[0].counts, pts[1].counts)]
            if all([b - a for a, b in zip(x.counts, y.counts)] == delta for x, y in zip(pts, pts[1:])):
                return [ArithProgression.make(pts[0].support, pts[0].counts, delta, len(pts) - 1)]
        return [ArithProgression.make(q.support, q.counts, [0] * len(q.counts), 0) for q in pts]
    prog = periodic
    rest = set(pts)
    changed = True
    while changed:
        changed = False
        d = prog.delta.counts if prog.steps else None
        for q in list(rest):
            if q in prog:
                rest.discard(q)
                changed = True
                continue
            if d is None:
                continue
            before = tuple(a - b for a, b in zip(prog.init.counts, d))
            after = tuple(a + b for a, b in zip(prog.last.counts, d))
            if q.counts == before:
                prog = ArithProgression.make(prog.support, before, d, prog.steps + 1)
            elif q.counts == after:
                prog = ArithProgression.make(prog.support, prog.init.counts, d, prog.steps + 1)
            else:
                continue
            rest.discard(q)
            changed = True
    out = [prog]
    out += [ArithProgression.make(q.support, q.counts, [0] * len(q.counts), 0) for q in sorted(rest, key=lambda q: q.counts)]
    return out


def _dispatch(args, sess: Session, b: WordBackend) -> tuple[int, dict, list]:
    alpha = sess.alphabet
    if alpha is None:
        raise ValidationError("session declares no alphabet")

    def ct(name):
        return CompressedTrace(sess.get(name), alpha)

    cmd = args.command
    lines: list = []
    if cmd in ("nf", "core"):
        x = ct(args.target)
        res = r_reduce(x, b) if cmd == "nf" else ccore(x, b)
        rep = {"length": len(res), "word": _word_repr(res.slp), "slp": res.slp.to_text(f"{cmd.upper()}_{args.target}")}
        lines.append(f"{cmd}({args.target}) = {rep['word'] if rep['word'] is not None else '<too long to show>'}")
        lines.append(f"length {len(res)}")
        return YES, rep, lines
    if cmd == "wp":
        ok = is_trivial(ct(args.target), b)
        lines.append(f"{args.target} is {'trivial' if ok else 'not trivial'}")
        return (YES if ok else NO), {}, lines
    if cmd == "match":
        p, t = ct(args.pattern), ct(args.text)
        ok = is_factor(p, t, alpha, b)
        rep: dict = {"occurrences": []}
        lines.append(f"{args.pattern} {'is' if ok else 'is not'} a factor of {args.text}")
        if ok and len(p) >= 2:
            for comp, name, singles, periodic in find_occurrences(p, t, alpha, b):
                support = [str(x) for x in comp]
                progs = merge_occurrences(singles, periodic)
                rep["occurrences"].append({
                    "nonterminal": name,
                    "support": support,
                    "progressions": [_progression_points(q) for q in progs],
                    "single": [list(q.counts) for q in singles],
                    "periodic": _progression_points(periodic) if periodic is not None else None,
                })
                lines.append(f"at {name} over ({','.join(support)}): " + " ".join(str(q) for q in progs))
        return (YES if ok else NO), rep, lines
    if cmd == "conj":
        ok = ccp_decide(ct(args.left), ct(args.right), b)
        lines.append(f"{args.left} and {args.right} are {'conjugate' if ok else 'not conjugate'}")
        return (YES if ok else NO), {}, lines
    if cmd == "rsccp":
        inst = {}
        for item in args.map.split(","):
            if "=" not in item:
                raise ValidationError(f"--map entries look like a=NAME, got {item!r}")
            k, v = (s.strip() for s in item.split("=", 1))
            inst[alpha.base_of(k)] = ct(v)
        sol = rsccp_solve(inst, b, alpha)
        if sol is None:
            lines.append("no solution")
            return NO, {}, lines
        rep = {"length": len(sol), "word": _word_repr(sol), "slp": sol.to_text("SOL")}
        lines.append(f"solution s = {rep['word'] if rep['word'] is not None else '<too long to show>'}")
        lines.append(sol.to_text("SOL"))
        return YES, rep, lines
    if cmd == "out":
        table = sess.table()
        if args.table:
            extra = load_session(args.table, Session(alphabet=alpha))
            for name, gens in extra.table().generators.items():
                table.generators[name] = gens
        ok = out_word_problem(table, args.word.split(), b)
        lines.append(f"'{args.word}' is {'inner' if ok else 'not inner'}")
        return (YES if ok else NO), {}, lines
    raise ValidationError(f"unknown command {cmd!r}")


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return YES if e.code == 0 else INPUT_ERROR
    status, rep, lines, error = INPUT_ERROR, {}, [], None
    try:
        if args.guard <= 0:
            raise ValidationError("--guard must be positive")
        b = WordBackend(args.backend, args.guard)
        sess = load_session(args.infile)
        status, rep, lines = _dispatch(args, sess, b)
    except ResourceError as e:
        status, error = RESOURCE_ERROR, str(e)
    except (ValidationError, ContractError, ValueError, KeyError, IndexError) as e:
        status, error = INPUT_ERROR, str(e)
    answer = {YES: "yes", NO: "no", INPUT_ERROR: "input-error", RESOURCE_ERROR: "resource-error"}[status]
    if args.format == "structured":
        doc = {"command": args.command, "answer": answer, "status": status}
        if error:
            doc["error"] = error
        doc.update(rep)
        print(json.dumps(doc, indent=2), file=out)
    else:
        if error:
            print(f"error: {error}", file=out)
        else:
            print(answer.upper(), file=out)
            for line in lines:
                print(line, file=out)
    return status


def main() -> None:
    sys.exit(run())
