"""Command-line front end.

Exit codes: 0 success or equal, 1 distinct or not-found, 2 parse error,
3 precondition failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import oracle, residual
from .action import BasisKey
from .presentation import (
    GraphParseError,
    ValidationError,
    fc_violation,
    is_spherical_even,
    parse_graph,
    validate,
)
from .splitter import CanonicalForm, SemidirectElement, normal_form, polyfree_tower, psi, words_equal
from .words import Word, WordParseError, format_word, inverse, parse_word

OK, NEGATIVE, PARSE_ERROR, PRECONDITION = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load_graph(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", PARSE_ERROR) from None
    try:
        return parse_graph(text)
    except GraphParseError as exc:
        raise CliError(f"{path}: {exc}", PARSE_ERROR) from None


def _word(graph, text: str) -> Word:
    try:
        w = parse_word(text)
    except WordParseError as exc:
        raise CliError(f"word {text!r}: {exc}", PARSE_ERROR) from None
    for letter in w:
        if letter.gen not in graph.vertex_set:
            raise CliError(f"word {text!r}: unknown generator {letter.gen}", PARSE_ERROR)
    return w


def _require(graph):
    try:
        validate(graph)
    except ValidationError as exc:
        raise CliError(str(exc), PRECONDITION) from None
    tri = fc_violation(graph)
    if tri is not None:
        raise CliError("not of FC type: triangle " + " ".join(tri), PRECONDITION)


# -- JSON encodings ------------------------------------------------------------

def _free_json(omega):
    return [[str(k) if isinstance(k, BasisKey) else k, e] for k, e in omega]


def _form_json(cf: CanonicalForm):
    if cf.z is None:
        return None
    return {"z": cf.z, "g1": _form_json(cf.g1), "omega": _free_json(cf.omega)}


def _semidirect_json(e: SemidirectElement):
    return {"z": e.z, "g1": format_word(e.g1.word()), "omega": _free_json(e.omega),
            "text": str(e)}


# -- commands ----------------------------------------------------------------------

def cmd_check(args):
    graph = _load_graph(args.graph)
    try:
        validate(graph)
    except ValidationError as exc:
        return {"even": False, "error": str(exc)}, f"even: no\n{exc}", PRECONDITION
    tri = fc_violation(graph)
    spherical = is_spherical_even(graph)
    report = {"even": True, "fc": tri is None, "spherical": spherical}
    lines = ["even: yes"]
    if tri is None:
        lines.append("fc: yes")
    else:
        report["triangle"] = list(tri)
        lines.append("fc: no (triangle " + " ".join(tri) + ")")
    lines.append(f"spherical: {'yes' if spherical else 'no'}")
    return report, "\n".join(lines), OK if tri is None else PRECONDITION


def cmd_nf(args):
    graph = _load_graph(args.graph)
    _require(graph)
    w = _word(graph, args.word)
    cf = normal_form(graph, w)
    report = {"normal_form": str(cf), "form": _form_json(cf), "trivial": cf.is_trivial()}
    lines = [str(cf)]
    if args.oracle:
        verdict = oracle.bfs_trivial(graph, w)
        report["oracle"] = verdict
        lines.append(f"oracle: {verdict}")
    return report, "\n".join(lines), OK


def cmd_eq(args):
    graph = _load_graph(args.graph)
    _require(graph)
    w1, w2 = _word(graph, args.word1), _word(graph, args.word2)
    equal = words_equal(graph, w1, w2)
    verdict = "equal" if equal else "distinct"
    report = {"verdict": verdict}
    lines = [verdict]
    if args.oracle:
        o = oracle.bfs_trivial(graph, w1 + inverse(w2))
        report["oracle"] = o
        lines.append(f"oracle: {o}")
    return report, "\n".join(lines), OK if equal else NEGATIVE


def cmd_tower(args):
    graph = _load_graph(args.graph)
    _require(graph)
    tower = polyfree_tower(graph)
    stages = [{"vertex": z, "rank": "infinite" if r == math.inf else r} for z, r in tower.stages]
    return {"stages": stages}, str(tower), OK


def cmd_split(args):
    graph = _load_graph(args.graph)
    _require(graph)
    sp = residual.amalgam_split(graph)
    if sp is None:
        return {"complete": True}, "complete", OK
    sets = {name: sorted(getattr(sp, name)) for name in ("X", "Y", "Z")}
    text = "\n".join(f"{name}: {' '.join(vs)}".rstrip() for name, vs in sets.items())
    return {"complete": False, "pair": [sp.s, sp.t], **sets}, text, OK


def cmd_separate(args):
    graph = _load_graph(args.graph)
    _require(graph)
    w = _word(graph, args.word)
    try:
        got = residual.separate(graph, w, args.max_degree)
    except ValueError as exc:
        raise CliError(str(exc), PRECONDITION) from None
    if isinstance(got, residual.FiniteWitness):
        return got.to_json(), str(got), OK
    return {"result": got}, got, NEGATIVE


def cmd_act(args):
    graph = _load_graph(args.graph)
    _require(graph)
    if not graph.vertices:
        raise CliError("the empty graph has no splitting", PRECONDITION)
    if args.at is not None and args.at not in graph.vertex_set:
        raise CliError(f"unknown vertex {args.at}", PARSE_ERROR)
    w = _word(graph, args.word)
    e = psi(graph, w, z=args.at)
    return _semidirect_json(e), str(e), OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="evenartin", description="Word problem tools for even Artin groups of FC type.")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--oracle", action="store_true", help="also run the brute-force triviality search (nf, eq)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, *words, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("graph")
        for w in words:
            sp.add_argument(w)
        sp.set_defaults(func=func)
        return sp

    add("check", cmd_check, help="validate a graph and report even/FC verdicts")
    add("nf", cmd_nf, "word", help="print the canonical normal form of a word")
    add("eq", cmd_eq, "word1", "word2", help="decide equality of two words")
    add("tower", cmd_tower, help="print the poly-free tower")
    add("split", cmd_split, help="print the amalgam splitting")
    sp = add("separate", cmd_separate, "word", help="find a finite quotient separating a word")
    sp.add_argument("--max-degree", type=int, default=5)
    sp = add("act", cmd_act, "word", help="print the image in the semidirect product")
    sp.add_argument("--at", metavar="VERTEX")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, text, code = args.func(args)
    except CliError as exc:
        if args.format == "json":
            print(json.dumps({"error": str(exc), "exit": exc.code}, sort_keys=True))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return exc.code
    if args.format == "json":
        print(json.dumps(report, sort_keys=True))
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
