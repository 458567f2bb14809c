"""Command-line front end.

Exit codes: ``eval`` returns 0 true, 1 false, 2 undefined; every command
returns 3 for an invalid model, point or file, 4 for a formula that does not
parse or bind, 5 for bad usage.  Verdicts go to stdout, diagnostics to
stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import gallery
from .complex import SimplexError
from .enumeration import EnumerationSpec
from .formula import FormulaBindingError, FormulaSyntaxError, check_binding, parse
from .harness import SCHEMAS, SUITES, run_suite, search_counterexample
from .io import (ModelFormatError, dump_json, is_kripke_json, kripke_from_json, kripke_to_json,
                 load_json, model_from_json, model_to_json)
from .kripke import NotLocalEpistemicError, UnknownStateError, eval3_k, kappa, sigma, validate_kripke
from .semantics import TruthValue, eval3

EXIT_CODE = {TruthValue.TRUE: 0, TruthValue.FALSE: 1, TruthValue.UNDEFINED: 2}
EXIT_INVALID = 3
EXIT_FORMULA = 4
EXIT_USAGE = 5


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load(path, want_kripke=None):
    """Load either model kind; ``want_kripke`` forces one."""
    try:
        data = load_json(path)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(EXIT_INVALID, f"cannot read {path}: {exc}")
    kripke = is_kripke_json(data) if want_kripke is None else want_kripke
    try:
        if kripke:
            return kripke_from_json(data, Path(path).stem)
        return model_from_json(data, Path(path).stem)
    except (ModelFormatError, KeyError, TypeError, ValueError) as exc:
        raise CliError(EXIT_INVALID, f"invalid model {path}: {exc}")


def _formula(text, model):
    try:
        f = parse(text)
        check_binding(f, model.agents, model.variables)
    except (FormulaSyntaxError, FormulaBindingError) as exc:
        raise CliError(EXIT_FORMULA, str(exc))
    return f


def _kripke_ok(m):
    problems = validate_kripke(m)
    if problems:
        raise CliError(EXIT_INVALID, "not a local epistemic model: " + "; ".join(problems))


def _evaluate(args):
    m = _load(args.model, True if args.kripke else None)
    f = _formula(args.formula, m)
    if hasattr(m, "states"):
        _kripke_ok(m)
        try:
            return eval3_k(m, args.at, f)
        except UnknownStateError as exc:
            raise CliError(EXIT_INVALID, str(exc.args[0]))
    point = [v.strip() for v in args.at.split(",") if v.strip()]
    try:
        return eval3(m, point, f)
    except SimplexError as exc:
        raise CliError(EXIT_INVALID, str(exc))


def cmd_eval(args):
    value = _evaluate(args)
    print(value.value)
    return EXIT_CODE[value]


def cmd_defined(args):
    value = _evaluate(args)
    print("defined" if value.defined else "undefined")
    return 0 if value.defined else 2


def cmd_validate(args):
    try:
        data = load_json(args.model)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(EXIT_INVALID, f"cannot read {args.model}: {exc}")
    if is_kripke_json(data):
        m = _load(args.model, True)
        problems = validate_kripke(m)
    else:
        try:
            model_from_json(data)
            problems = []
        except ModelFormatError as exc:
            problems = [str(exc)]
    if problems:
        for p in problems:
            print(p, file=sys.stderr)
        print("invalid")
        return EXIT_INVALID
    print("valid")
    return 0


def cmd_convert(args):
    m = _load(args.input)
    out = Path(args.output)
    mapping_path = Path(args.mapping) if args.mapping else out.with_suffix(".mapping.json")
    if args.to == "kripke":
        if hasattr(m, "states"):
            raise CliError(EXIT_INVALID, "input is already a Kripke model")
        k, mapping = kappa(m)
        dump_json(kripke_to_json(k), out)
        pairs = [{"facet": sorted(f), "state": s} for f, s in mapping.items()]
    else:
        if not hasattr(m, "states"):
            raise CliError(EXIT_INVALID, "input is already a simplicial model")
        try:
            c, mapping = sigma(m)
        except NotLocalEpistemicError as exc:
            raise CliError(EXIT_INVALID, str(exc))
        dump_json(model_to_json(c), out)
        pairs = [{"state": s, "facet": sorted(f)} for s, f in mapping.items()]
    dump_json({"direction": args.to, "pairs": pairs}, mapping_path)
    print(f"wrote {out} and {mapping_path}")
    return 0


def _spec(args):
    try:
        return EnumerationSpec(agent_count=args.agents, max_facets=args.max_facets,
                               max_formula_depth=args.depth, sample=args.sample, seed=args.seed)
    except ValueError as exc:
        raise CliError(EXIT_USAGE, str(exc))


def cmd_check(args):
    report = run_suite(args.suite, _spec(args), workers=args.workers)
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        print(report.summary())
        for v in report.violations:
            print(f"  {v.check}: {v.formula} at {v.point}: expected {v.expected}, got {v.actual}")
    return 0 if report.passed else 1


def cmd_search(args):
    schema = SCHEMAS.get(args.schema, args.schema)
    try:
        from .formula import parse_schema
        parse_schema(schema)
    except FormulaSyntaxError as exc:
        raise CliError(EXIT_FORMULA, str(exc))
    ce = search_counterexample(schema, _spec(args))
    if ce is None:
        print("none found within bounds")
        return 1
    if args.json:
        print(json.dumps(ce.to_json(), indent=2))
    else:
        inst = ", ".join(f"{k}={v}" for k, v in ce.to_json()["instantiation"].items())
        print(f"witness: {ce.to_json()['formula']} is false at {sorted(ce.witness.point)}"
              f" ({inst})")
        print(json.dumps(ce.to_json()["model"]))
    return 0


def write_examples(out_dir) -> dict:
    """Write every bundled model and ``manifest.json``; returns the manifest."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = {}
    for name, build in gallery.SIMPLICIAL.items():
        dump_json(model_to_json(build()), out / f"{name}.json")
        files[name] = {"file": f"{name}.json", "kind": "simplicial"}
    for name, build in gallery.KRIPKE.items():
        dump_json(kripke_to_json(build()), out / f"{name}.json")
        files[name] = {"file": f"{name}.json", "kind": "kripke",
                       "proper": name not in gallery.IMPROPER}
    manifest = {
        "models": files,
        "evaluations": [
            {"model": m, "point": p, "formula": f, "expected": e, "source": s}
            for m, p, f, e, s in gallery.MANIFEST
        ] + [
            {"model": m, "state": st, "formula": f, "expected": e, "source": s}
            for m, st, f, e, s in gallery.KRIPKE_MANIFEST
        ],
        "roundtrips": [{"model": n, "isomorphic": True} for n in files
                       if n not in gallery.IMPROPER],
        "counts": dict(gallery.COUNTS),
    }
    dump_json(manifest, out / "manifest.json")
    return manifest


def cmd_examples(args):
    try:
        write_examples(args.out_dir)
    except OSError as exc:
        raise CliError(EXIT_INVALID, f"cannot write examples: {exc}")
    print(f"wrote bundled models to {args.out_dir}")
    return 0


def build_parser():
    p = _Parser(prog="simpepist", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("validate", help="check a model file")
    v.add_argument("model")
    v.set_defaults(run=cmd_validate)

    for name, fn, text in (("eval", cmd_eval, "three-valued verdict"),
                           ("defined", cmd_defined, "definability only")):
        e = sub.add_parser(name, help=text)
        e.add_argument("model")
        e.add_argument("formula")
        e.add_argument("--at", required=True,
                       help="comma-separated vertex ids, or a state id with --kripke")
        e.add_argument("--kripke", action="store_true", help="treat the model as a Kripke model")
        e.set_defaults(run=fn)

    c = sub.add_parser("convert", help="translate between simplicial and Kripke models")
    c.add_argument("--to", choices=("kripke", "simplicial"), required=True)
    c.add_argument("input")
    c.add_argument("output")
    c.add_argument("--mapping", help="where to write facet/state pairs")
    c.set_defaults(run=cmd_convert)

    for name, fn in (("check", cmd_check), ("search", cmd_search)):
        s = sub.add_parser(name, help="run a property suite" if name == "check"
                           else "look for a counterexample to a schema")
        if name == "check":
            s.add_argument("--suite", choices=SUITES, required=True)
            s.add_argument("--workers", type=int, default=None)
        else:
            s.add_argument("--schema", required=True,
                           help=f"one of {', '.join(SCHEMAS)} or a schema text")
        s.add_argument("--agents", type=int, default=3)
        s.add_argument("--max-facets", type=int, default=2)
        s.add_argument("--depth", type=int, default=2)
        s.add_argument("--sample", type=int, default=None)
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--json", action="store_true")
        s.set_defaults(run=fn)

    x = sub.add_parser("examples", help="write the bundled models and manifest")
    x.add_argument("out_dir")
    x.set_defaults(run=cmd_examples)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
