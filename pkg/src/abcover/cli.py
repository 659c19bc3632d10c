"""Command-line front end.

Every subcommand reads a graph JSON file (or ``fixture:<name>``), prints one
canonical JSON report (CSV for ``floquet``) and exits with a stable code:
0 ok / nothing found, 10 finding present or identity failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .bgvm import bgvm_candidate_lambdas, bgvm_search, compare_ab_vs_uni, candidate_report
from .combinatorics import (MatchingPolynomials, PreconditionError, enumerate_degree2_subgraphs,
                            matching_poly_enum)
from .decomposition import bridge_block_decomposition, classify_block
from .flatband import (DisconnectedGraphError, flatband_polynomial, heilmann_lieb_check,
                       verify_charpoly_expansion, verify_moebius_identity)
from .floquet import UnsupportedInput, floquet_csv
from .generators import CorpusSpec, canonical_json, named_fixture, write_corpus
from .graph import (GraphError, MissingWeightError, WeightError, ZeroWeightError,
                    graph_from_json)
from .rational import MalformedRational, parse_rational

EXIT_OK = 0
EXIT_FOUND = 10
EXIT_INPUT = 2

IDENTITIES = ("recursion", "charpoly", "moebius", "prop_a2", "heilmann_lieb")

# most specific first: the first matching class names the error
_ERRORS = (
    (MalformedRational, "malformed_rational"),
    (MissingWeightError, "missing_weight"),
    (ZeroWeightError, "zero_weight"),
    (DisconnectedGraphError, "disconnected_graph"),
    (UnsupportedInput, "unsupported_input"),
    (PreconditionError, "precondition_failed"),
    (GraphError, "invalid_graph"),
    (WeightError, "invalid_weights"),
    (json.JSONDecodeError, "invalid_json"),
    (OSError, "unreadable_input"),
    (KeyError, "unknown_fixture"),
)




def load_graph(arg: str):
    if arg.startswith("fixture:"):
        return named_fixture(arg.split(":", 1)[1])
    data = json.loads(Path(arg).read_text())
    return graph_from_json(data)


def _emit(obj) -> None:
    sys.stdout.write(canonical_json(obj) + "\n")


def _cmd_flatbands(a) -> int:
    g, w = load_graph(a.graph)
    rep = flatband_polynomial(g, w, early_exit=not a.all_gammas)
    _emit(rep.to_json())
    return EXIT_FOUND if rep.has_flat_bands else EXIT_OK


def _cmd_matchpoly(a) -> int:
    g, w = load_graph(a.graph)
    deleted = sorted({int(x) for x in a.delete.split(",") if x.strip()}) if a.delete else []
    mask = 0
    for v in deleted:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range")
        mask |= 1 << v
    p = MatchingPolynomials(g, w)(g.all_vertices & ~mask)
    _emit({"poly": str(p), "coeffs": p.to_json()["coeffs"], "deleted": deleted})
    return EXIT_OK


def _cmd_deg2(a) -> int:
    g, _ = load_graph(a.graph)
    gammas = enumerate_degree2_subgraphs(g)
    out = {"count": len(gammas)}
    if a.list:
        out["subgraphs"] = [x.to_json() for x in gammas]
    _emit(out)
    return EXIT_OK


def _cmd_decompose(a) -> int:
    g, _ = load_graph(a.graph)
    dec = bridge_block_decomposition(g)
    out = dec.to_json()
    if a.d is not None:
        out["block_types"] = [classify_block(g, b, a.d).value for b in dec.blocks]
    _emit(out)
    return EXIT_OK


def _cmd_floquet(a) -> int:
    g, w = load_graph(a.graph)
    lam = parse_rational(a.check_lambda) if a.check_lambda is not None else None
    sys.stdout.write(floquet_csv(g, w, a.samples, a.seed, lam))
    return EXIT_OK


def _cmd_bgvm(a) -> int:
    g, w = load_graph(a.graph)
    if a.all:
        cands = bgvm_candidate_lambdas(g, w, a.max_size)
        _emit({"candidates": [c.to_json() for _, c in cands], "max_size": a.max_size})
        return EXIT_OK
    res = bgvm_search(g, w, parse_rational(a.lam), a.max_size)
    out = res.to_json()
    out["lambda"] = str(parse_rational(a.lam))
    _emit(out)
    return EXIT_OK


def _cmd_verify(a) -> int:
    g, w = load_graph(a.graph)
    ident = a.identity
    if ident == "recursion":
        ok = MatchingPolynomials(g, w)() == matching_poly_enum(g, w)
    elif ident == "charpoly":
        ok = verify_charpoly_expansion(g, w)
    elif ident == "moebius":
        ok = verify_moebius_identity(g, w)
    elif ident == "prop_a2":
        ok = candidate_report(g, w).holds
    else:
        ok = heilmann_lieb_check(g, w)
    _emit({"identity": ident, "pass": ok})
    return EXIT_OK if ok else EXIT_FOUND


def _cmd_gen(a) -> int:
    spec = CorpusSpec.from_json(json.loads(Path(a.spec).read_text()))
    files = write_corpus(spec, a.out)
    _emit({"out": str(a.out), "files": files, "spec": spec.to_json()})
    return EXIT_OK


def _cmd_compare(a) -> int:
    g, w = load_graph(a.graph)
    _emit(compare_ab_vs_uni(g, w, max_size=a.max_size).to_json())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="abcover", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--threads", type=int, default=1,
                   help="cap on internal parallelism (kernels are single-threaded)")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_cmd(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("graph", help="graph JSON path or fixture:<name>")
        sp.set_defaults(fn=fn)
        return sp

    sp = graph_cmd("flatbands", _cmd_flatbands, "flat-band polynomial and its roots")
    sp.add_argument("--all-gammas", action="store_true",
                    help="do not stop once the gcd reaches 1")
    sp = graph_cmd("matchpoly", _cmd_matchpoly, "matching polynomial")
    sp.add_argument("--delete", help="comma-separated vertices to delete first")
    sp = graph_cmd("deg2", _cmd_deg2, "degree-2 subgraphs")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--count", action="store_true", help="only the count (default)")
    mode.add_argument("--list", action="store_true")
    sp = graph_cmd("decompose", _cmd_decompose, "bridges and bridge-blocks")
    sp.add_argument("--d", type=int, help="also label blocks Type I / Type II for this d")
    sp = graph_cmd("floquet", _cmd_floquet, "sample spectra of H(z) on the torus (CSV)")
    sp.add_argument("--samples", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--check-lambda", help="p/q; adds a min_dist column")
    sp = graph_cmd("bgvm", _cmd_bgvm, "Aomoto-set certificates")
    mode = sp.add_mutually_exclusive_group(required=True)
    mode.add_argument("--lambda", dest="lam", help="p/q")
    mode.add_argument("--all", action="store_true")
    sp.add_argument("--max-size", type=int)
    sp = graph_cmd("verify", _cmd_verify, "check one exact identity")
    sp.add_argument("--identity", choices=IDENTITIES, required=True)
    sp = graph_cmd("compare", _cmd_compare, "abelian vs universal cover eigenvalues")
    sp.add_argument("--max-size", type=int)
    sp = sub.add_parser("gen", help="write a seeded corpus")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--out", required=True)
    sp.set_defaults(fn=_cmd_gen)
    return p


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    if args.threads < 1:
        _emit({"error": "invalid_argument", "message": "--threads must be >= 1"})
        return EXIT_INPUT
    try:
        return args.fn(args)
    except Exception as exc:  # noqa: BLE001 - mapped to a named error below
        for cls, name in _ERRORS:
            if isinstance(exc, cls):
                _emit({"error": name, "message": str(exc)})
                return EXIT_INPUT
        raise


def main() -> None:
    # output is never colored, so NO_COLOR is honored trivially
    sys.exit(run())


if __name__ == "__main__":
    main()
