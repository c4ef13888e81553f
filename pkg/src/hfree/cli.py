"""Command-line front end: every library capability behind one binary.

Each subcommand maps to exactly one library operation and emits a JSON
certificate on standard output.  Exit codes are uniform: 0 for a
positive verdict (module exists, relations hold, system satisfiable so
far as the solver can tell), 1 for a definitive negative verdict
(Empty, Unsat, Obstructed, failed relations), and 2 for usage or input
errors, with a diagnostic naming the offending field on standard error.
"""

import argparse
import json
import sys

from . import __version__
from .cartan import GCMError, load_gcm
from .classify import (RestrictionError, decide, refute_affine_loop,
                       restriction_obstruction, search_rank2)
from .exactpoly import ContextMismatch, parse_poly
from .idealsolve import PolySystem
from .modfam import FamilyError, HFreeModule, build_family
from .verify import relation_residuals, simplicity_probe


class InputError(Exception):
    """Malformed input; the message names the offending field or file."""


def _emit(payload, fmt):
    payload = dict(payload)
    payload["version"] = __version__
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for key in sorted(payload):
            print("%s: %s" % (key, json.dumps(payload[key], sort_keys=True)))


def _load_json(path, what):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError("%s: cannot read %r: %s" % (what, path, exc))
    except json.JSONDecodeError as exc:
        raise InputError("%s: %r is not valid JSON: %s" % (what, path, exc))


def _params_arg(text):
    """Parameter dict given inline as JSON or as a path to a JSON file."""
    text = text.strip()
    if text.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError("params: not valid JSON: %s" % exc)
    else:
        obj = _load_json(text, "params")
    if not isinstance(obj, dict):
        raise InputError("params: expected a JSON object")
    return obj


def _cmd_classify(args):
    try:
        g = load_gcm(args.gcm)
    except OSError as exc:
        raise InputError("gcm: cannot read %r: %s" % (args.gcm, exc))
    except json.JSONDecodeError as exc:
        raise InputError("gcm: %r is not valid JSON: %s" % (args.gcm, exc))
    result = decide(g)
    _emit(result.to_json(), args.format)
    return 0 if result.verdict == "Nonempty" else 1


def _cmd_build(args):
    params = _params_arg(args.params)
    module = build_family(args.family, params)
    _emit(module.to_json(), args.format)
    return 0


def _cmd_verify(args):
    obj = _load_json(args.module, "module")
    module = HFreeModule.from_json(obj)
    report = relation_residuals(module)
    _emit(report.to_json(), args.format)
    return 0 if report.holds else 1


def _cmd_probe(args):
    obj = _load_json(args.module, "module")
    module = HFreeModule.from_json(obj)
    try:
        poly = parse_poly(module.context, args.poly)
    except (ValueError, ContextMismatch) as exc:
        raise InputError("poly: %s" % exc)
    trace = simplicity_probe(module, poly, max_steps=args.max_steps)
    _emit(trace.to_json(), args.format)
    return 0 if trace.success else 1


def _cmd_search_rank2(args):
    result = search_rank2(args.r, args.s, bound=args.bound)
    _emit(result.to_json(), args.format)
    return 0 if result.verdict == "SatKnownFamily" else 1


def _cmd_refute_affine(args):
    verdict = refute_affine_loop(args.k, args.j, bound=args.bound)
    _emit({"verdict": verdict, "k": args.k, "j": args.j,
           "bound": args.bound}, args.format)
    return 1 if verdict == "Unsat" else 0


def _cmd_obstruct(args):
    try:
        g = load_gcm(args.gcm)
    except OSError as exc:
        raise InputError("gcm: cannot read %r: %s" % (args.gcm, exc))
    except json.JSONDecodeError as exc:
        raise InputError("gcm: %r is not valid JSON: %s" % (args.gcm, exc))
    parts = args.restrict.split(",")
    if len(parts) != 2:
        raise InputError("restrict: expected two comma-separated vertices")
    try:
        pair = (int(parts[0]), int(parts[1]))
    except ValueError:
        raise InputError("restrict: vertices must be integers")
    result = restriction_obstruction(g, args.gen, args.var, pair)
    _emit(result.to_json(), args.format)
    return 1 if result.status == "Obstructed" else 0


def _cmd_groebner(args):
    obj = _load_json(args.system, "system")
    try:
        system = PolySystem.from_json(obj)
    except (KeyError, ValueError, ContextMismatch) as exc:
        raise InputError("system: %s" % exc)
    result = system.solve()
    _emit(result.to_json(), args.format)
    return 1 if result.unsat else 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="hfree",
        description="Exact certificates for rank-one-over-the-Cartan modules.")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="existence verdict for a GCM")
    p.add_argument("gcm", help="path to a JSON file with a 'matrix' field")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("build", help="construct a cataloged module")
    p.add_argument("--family", required=True, choices=("A", "B2", "C", "sl2z"))
    p.add_argument("--params", required=True,
                   help="JSON object inline or a path to one")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("verify", help="check all defining relations")
    p.add_argument("module", help="path to a serialized module")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("probe-simplicity",
                       help="reduce a polynomial to a nonzero constant")
    p.add_argument("module", help="path to a serialized module")
    p.add_argument("--poly", required=True, help="polynomial text")
    p.add_argument("--max-steps", type=int, default=200)
    p.set_defaults(func=_cmd_probe)

    p = sub.add_parser("search-rank2",
                       help="bounded shape search on a rank-2 GCM")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--bound", type=int, default=3)
    p.set_defaults(func=_cmd_search_rank2)

    p = sub.add_parser("refute-affine",
                       help="bounded refutation for the loop algebra")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--bound", type=int, default=2)
    p.set_defaults(func=_cmd_refute_affine)

    p = sub.add_parser("obstruct",
                       help="compare degree signatures of two restrictions")
    p.add_argument("gcm", help="path to a JSON file with a 'matrix' field")
    p.add_argument("--gen", type=int, required=True,
                   help="surviving generator (1-based)")
    p.add_argument("--var", type=int, required=True,
                   help="Cartan variable to measure degrees in (1-based)")
    p.add_argument("--restrict", required=True,
                   help="two removed vertices, e.g. 3,1")
    p.set_defaults(func=_cmd_obstruct)

    p = sub.add_parser("groebner", help="reduced basis of a polynomial system")
    p.add_argument("system", help="path to a serialized system")
    p.set_defaults(func=_cmd_groebner)

    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (InputError, GCMError, FamilyError, RestrictionError,
            ContextMismatch, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
