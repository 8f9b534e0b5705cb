"""Command-line interface.

Every command prints one JSON report (or writes it to ``-o``) and exits
with 0 on success, 1 when a certificate is refuted and 2 on errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
import time

from . import __version__
from .collapsing import Truncation, build_matching_digraph, verify_scheme
from .dot import cayley_to_dot, matching_to_dot
from .errors import MonoidCollapseError
from .homology import bar_complex_oracle, homology_of_complex
from .monoid import (
    enumerate_elements,
    f1_certificate,
    finite_elements,
    multiply,
    right_cayley_graph,
    two_sided_cayley_graph,
    weak_orbits,
)
from .morse import DEFAULT_FLOW_FUEL, build_resolution, trivialize
from .nerve import Variant
from .presentation import parse_presentation, presentation_of
from .rewriting import check_complete, critical_pairs, knuth_bendix

SCHEMA = 1
OK, REFUTED, ERROR = 0, 1, 2


class UsageError(MonoidCollapseError):
    code = "usage_error"


class Refuted(Exception):
    """A certificate was computed and came out negative."""

    def __init__(self, results):
        super().__init__("refuted")
        self.results = results


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _group(h):
    return {"group": str(h), "betti": h.betti, "torsion": list(h.torsion)}


def _pair(pair, rs):
    return {
        "source": rs.format(pair.source),
        "left": rs.format(pair.left_result),
        "right": rs.format(pair.right_result),
        "overlap_kind": pair.overlap_kind,
        "rules": [rs.format_rule(rs.rules[i]) for i in pair.rules],
    }


def _write_text(path, text):
    """Write ``text`` to ``path`` atomically."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _complete_system(pres):
    """Certified system, or a refutation carrying the failing critical pair."""
    rs = check_complete(pres.system())
    if not rs.certified:
        raise Refuted({
            "completeness": rs.completeness.status,
            "witness": _pair(rs.completeness.witness, rs),
        })
    return rs


def cmd_check(pres, args):
    rs = check_complete(pres.system())
    results = {
        "completeness": rs.completeness.status,
        "rules": [rs.format_rule(r) for r in rs.rules],
        "critical_pairs": len(critical_pairs(rs)),
    }
    if not rs.certified:
        results["witness"] = _pair(rs.completeness.witness, rs)
        raise Refuted(results)
    return results


def cmd_complete(pres, args):
    rs = knuth_bendix(pres.system(), fuel=args.fuel)
    completed = presentation_of(rs, pres.generators)
    elements, finite = enumerate_elements(rs, args.bound)
    results = {
        "completeness": rs.completeness.status,
        "rules": [rs.format_rule(r) for r in rs.rules],
        "presentation": completed.serialize(),
        "normal_forms_up_to_bound": len(elements),
        "finite": finite,
    }
    if args.write:
        _write_text(args.write, completed.serialize())
    return results


def cmd_resolution(pres, args):
    rs = _complete_system(pres)
    res = build_resolution(rs, args.max_dim, args.side, fuel=args.fuel)
    return {
        "ranks": res.ranks,
        "basis": [[_cell(c, rs) for c in layer] for layer in res.basis],
        "boundaries": {str(n): res.format_boundary(n) for n in range(1, res.max_dim + 1)},
        "certificate": {
            "property": f"{args.side}-FP",
            "through_dim": args.max_dim,
            "ranks": res.ranks,
            "d_squared_zero": True,
            "finitely_many_cells": True,
        },
    }


def _cell(c, rs):
    return "(" + ", ".join(rs.format(w) for w in c) + ")"


def cmd_homology(pres, args):
    rs = _complete_system(pres)
    res = build_resolution(rs, args.max_dim + 1, Variant.LEFT, fuel=args.fuel)
    cx = trivialize(res)
    return {
        "ranks": res.ranks[: args.max_dim + 1],
        "homology": {str(n): _group(homology_of_complex(cx, n)) for n in range(args.max_dim + 1)},
    }


def cmd_oracle(pres, args):
    rs = _complete_system(pres)
    cx = bar_complex_oracle(rs, args.max_dim + 1)
    return {
        "elements": len(finite_elements(rs)),
        "ranks": cx.ranks[: args.max_dim + 1],
        "homology": {str(n): _group(homology_of_complex(cx, n)) for n in range(args.max_dim + 1)},
    }


def cmd_verify(pres, args):
    rs = _complete_system(pres)
    t = Truncation(args.max_dim, args.length_bound)
    report = verify_scheme(rs, t, args.side, samples=args.samples, paths=args.paths,
                           seed=args.seed)
    results = report.to_dict()
    if args.dot:
        g = build_matching_digraph(rs, args.dot_dim, t)
        _write_text(args.dot, matching_to_dot(g, rs))
    if not report.ok:
        raise Refuted(results)
    return results


def _generator_words(pres, rs, text):
    if text:
        words = []
        for piece in text.split(","):
            try:
                words.append(rs.alphabet.parse(piece.replace("·", " ")))
            except KeyError as exc:
                raise UsageError(f"unknown symbol {exc.args[0]!r} in --gens") from None
        return words
    if pres.generators is not None:
        return list(pres.generators)
    return None


def cmd_cayley(pres, args):
    rs = _complete_system(pres)
    gens = _generator_words(pres, rs, args.gens)
    if args.two_sided:
        g = two_sided_cayley_graph(rs, gens, args.bound)
    else:
        g = right_cayley_graph(rs, gens, args.bound)
    orbits = weak_orbits(g)
    fmt = (lambda v: f"({rs.format(v[0])}, {rs.format(v[1])})") if args.two_sided else rs.format
    results = {
        "two_sided": args.two_sided,
        "vertices": len(g.vertices),
        "arcs": len(g.arcs),
        "bounded": g.bounded,
        "weak_orbits": len(orbits.classes),
        "orbits": [sorted(fmt(v) for v in c) for c in orbits.classes],
    }
    if args.two_sided:
        products = []
        for c in orbits.classes:
            prods = {multiply(l, r, rs) for l, r in c}
            products.append(sorted(rs.format(p) for p in prods))
        results["orbit_products"] = products
    if args.dot:
        _write_text(args.dot, cayley_to_dot(g, rs))
    return results


def cmd_f1(pres, args):
    rs = _complete_system(pres)
    gens = _generator_words(pres, rs, args.gens)
    cert = f1_certificate(rs, gens, args.bound)
    results = {
        "verdict": cert.verdict,
        "witness": None if cert.witness is None else rs.format(cert.witness),
        "evidence": cert.evidence,
        "generators": None if gens is None else [rs.format(w) for w in gens],
    }
    if cert.verdict == "disconnected":
        raise Refuted(results)
    return results


COMMANDS = {
    "check": cmd_check,
    "complete": cmd_complete,
    "resolution": cmd_resolution,
    "homology": cmd_homology,
    "verify": cmd_verify,
    "cayley": cmd_cayley,
    "oracle": cmd_oracle,
    "f1": cmd_f1,
}


def build_parser():
    p = _Parser(prog="monoid-collapse", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, help_):
        c = sub.add_parser(name, help=help_)
        c.add_argument("file", help="presentation file")
        c.add_argument("-o", "--output", help="write the JSON report here instead of stdout")
        return c

    command("check", "certify completeness of the rewriting system")
    c = command("complete", "run Knuth-Bendix completion")
    c.add_argument("--fuel", type=int, default=500, help="maximum number of rule additions")
    c.add_argument("--bound", type=int, default=8, help="word length for counting normal forms")
    c.add_argument("--write", help="also write the completed presentation to this file")
    c = command("resolution", "free resolution from the collapsing scheme")
    c.add_argument("--side", choices=["left", "right", "bi"], default="left")
    c.add_argument("--max-dim", type=int, default=3)
    c.add_argument("--fuel", type=int, default=DEFAULT_FLOW_FUEL)
    c = command("homology", "integral homology of the monoid")
    c.add_argument("--max-dim", type=int, default=3)
    c.add_argument("--fuel", type=int, default=DEFAULT_FLOW_FUEL)
    c = command("verify", "check the collapsing-scheme laws on a truncation")
    c.add_argument("--max-dim", type=int, default=3)
    c.add_argument("--length-bound", type=int, default=6)
    c.add_argument("--side", choices=["trivial", "left", "right", "bi"], default="bi")
    c.add_argument("--samples", type=int, default=50)
    c.add_argument("--paths", type=int, default=25)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--dot", help="write the matching digraph in DOT format")
    c.add_argument("--dot-dim", type=int, default=1)
    c = command("cayley", "right or two-sided Cayley digraph and its weak orbits")
    c.add_argument("--two-sided", action="store_true")
    c.add_argument("--bound", type=int, default=3)
    c.add_argument("--gens", help="comma-separated generator words")
    c.add_argument("--dot", help="write the digraph in DOT format")
    c = command("oracle", "homology from the normalized bar complex (finite monoids)")
    c.add_argument("--max-dim", type=int, default=3)
    c = command("f1", "weak connectivity of the right Cayley graph")
    c.add_argument("--gens", help="comma-separated generator words")
    c.add_argument("--bound", type=int, default=4)
    return p


def _parameters(args):
    skip = {"command", "file", "output"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def execute(argv):
    """Run one command.  Returns ``(report dict, exit status, output path)``."""
    start = time.perf_counter()
    report = {"schema": SCHEMA, "command": None, "input": None, "parameters": {}}
    output = None
    try:
        args = build_parser().parse_args(argv)
        output = args.output
        report["command"] = args.command
        report["parameters"] = _parameters(args)
        with open(args.file, "rb") as fh:
            raw = fh.read()
        report["input"] = {"path": args.file, "sha256": hashlib.sha256(raw).hexdigest()}
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise UsageError(f"input is not UTF-8: {exc}") from None
        pres = parse_presentation(text, path=args.file)
        report["results"] = COMMANDS[args.command](pres, args)
        report["status"] = "ok"
        code = OK
    except Refuted as exc:
        report["results"] = exc.results
        report["status"] = "refuted"
        code = REFUTED
    except MonoidCollapseError as exc:
        report["status"] = "error"
        report["error"] = {"code": exc.code, "message": str(exc), "details": exc.details()}
        code = ERROR
    except OSError as exc:
        report["status"] = "error"
        report["error"] = {"code": "io_error", "message": str(exc),
                           "details": {"path": exc.filename}}
        code = ERROR
    except RecursionError:
        report["status"] = "error"
        report["error"] = {"code": "recursion_limit", "message": "recursion limit exceeded",
                           "details": {}}
        code = ERROR
    report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    return report, code, output


def render(report):
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False, default=str) + "\n"


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    if any(a in ("-h", "--help", "--version") for a in argv):
        try:
            build_parser().parse_args(argv)  # prints and exits
        except UsageError:
            pass
    report, code, output = execute(argv)
    text = render(report)
    if output:
        try:
            _write_text(output, text)
        except OSError as exc:
            sys.stderr.write(f"cannot write {output}: {exc}\n")
            sys.stdout.write(text)
            return ERROR
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
