"""Command-line entry point.

Exit status: 0 success, 1 domain error, 2 resource error, 3 verification
failure, 64 usage error, 74 I/O error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__, config
from .containers import build_containers, fingerprint, random_independent_set
from .construction import (
    SampleConfig,
    build_coloring_instance,
    build_piercing_instance,
    build_ramsey_instance,
    run_trials,
    sampled_boxes,
    trial_rng,
)
from .dnc import dnc_color, dnc_pierce
from .errors import DomainError, ResourceError, VerificationError
from .family import generate_family
from .geometry import FamilyParams
from .graph import build_biclique_decomposition, build_graph, build_graph_naive
from .io import REPORT_SCHEMA, FamilyDocument, dimacs_text, dumps, load_family, sha256_file, sha256_text
from .solvers import chromatic_number, max_clique, max_independent_set, min_piercing, verify_certificate
from .verify import verify_suite

EXIT_OK, EXIT_DOMAIN, EXIT_RESOURCE, EXIT_VERIFY, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3, 64, 74

BUDGET_FLAGS = {
    "max_blocks": "BOXBLOCKS_MAX_BLOCKS",
    "max_mis": "BOXBLOCKS_MAX_MIS_N",
    "max_pierce": "BOXBLOCKS_MAX_PIERCE_N",
    "max_chromatic": "BOXBLOCKS_MAX_CHROMATIC_N",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}")


def _params(args) -> FamilyParams:
    return FamilyParams(args.d, args.s, args.k)


def _report(kind: str, body: dict) -> dict:
    return {"schema": REPORT_SCHEMA, "report": kind, "version": __version__, **body}


class _Run:
    """Collects written artifacts and emits the run manifest."""

    def __init__(self, args, argv):
        self.args = args
        self.argv = argv
        self.outputs = {}
        self.inputs = {}
        for name in ("input", "base"):
            path = getattr(args, name, None)
            if path:
                self.inputs[path] = sha256_file(path)

    def write(self, text: str, path: str | None):
        if path and path != "-":
            with open(path, "w") as fh:
                fh.write(text)
            self.outputs[path] = sha256_text(text)
        else:
            sys.stdout.write(text)
            self.outputs["<stdout>"] = sha256_text(text)

    def manifest(self):
        path = getattr(self.args, "manifest", None)
        out = getattr(self.args, "output", None)
        if not path and out and out != "-":
            path = out + ".manifest.json"
        if not path:
            return
        params = {k: (str(v) if isinstance(v, Fraction) else v) for k, v in sorted(vars(self.args).items())
                  if k not in ("func", "manifest")}
        doc = {
            "schema": "boxblocks.manifest/1",
            "command": " ".join(a for a in (self.args.command, getattr(self.args, "sub", None)) if a),
            "argv": self.argv,
            "params": params,
            "seed": getattr(self.args, "seed", None),
            "version": __version__,
            "budgets": config.defaults(),
            "inputs": self.inputs,
            "outputs": self.outputs,
        }
        with open(path, "w") as fh:
            fh.write(dumps(doc))


def cmd_gen_family(args, run):
    fam = generate_family(_params(args))
    run.write(dumps(FamilyDocument.from_family(fam, args.form).to_json()), args.output)
    return EXIT_OK


def cmd_graph(args, run):
    doc = load_family(args.input)
    boxes = doc.realized()
    g = build_graph(boxes)
    body = {"n": g.n, "m": g.edge_count, "max_degree": max((g.degree(v) for v in range(g.n)), default=0)}
    if args.check_naive:
        body["naive_agrees"] = build_graph_naive(boxes).rows == g.rows
    run.write(dumps(_report("graph", body)), args.output)
    return EXIT_OK


def cmd_decompose(args, run):
    doc = load_family(args.input)
    fam = doc.block_family()
    dec = build_biclique_decomposition(fam)
    P = fam.params
    parts = [{"t": list(p.t), "u": list(p.u), "w_block": {"t": list(p.w_block.t), "p": list(p.w_block.p)},
              "X": list(p.X), "Y": list(p.Y)} for p in dec.parts]
    body = {"q": dec.q, "bound": P.num_types**2 * P.M // P.s, "edges": sum(len(p.X) * len(p.Y) for p in dec.parts),
            "parts": parts}
    run.write(dumps(_report("decomposition", body)), args.output)
    return EXIT_OK


QUANTITY = {"clique": "omega", "mis": "alpha", "pierce": "tau", "chromatic": "chi"}


def cmd_solve(args, run):
    doc = load_family(args.input)
    boxes = doc.realized()
    g = build_graph(boxes)
    if args.sub == "clique":
        cert = max_clique(g, boxes=boxes)
    elif args.sub == "mis":
        cert = max_independent_set(g)
    elif args.sub == "pierce":
        cert = min_piercing(boxes)
    else:
        cert = chromatic_number(g)
    verify_certificate(cert, graph=g if cert.kind != "piercing" else None, boxes=boxes)
    rec = cert.to_record()
    body = {QUANTITY[args.sub]: cert.value, **rec}
    run.write(dumps(_report("solve", body)), args.output)
    return EXIT_OK


def cmd_containers(args, run):
    doc = load_family(args.input)
    if doc.params is None:
        raise DomainError("containers need a block family (M comes from the header)")
    M = doc.params.M if args.M is None else args.M
    g = build_graph(doc.realized())
    rng = trial_rng(args.seed, 0)
    sets = [random_independent_set(g, rng) for _ in range(args.sets)]
    coll = build_containers(g, M, sets)
    rows = []
    for I in sets:
        r = fingerprint(g, I, M)
        row = {"I": I, "S": list(r.S), "fS_size": len(r.fS), "container_size": len(r.container),
               "covered": set(I) <= r.container}
        if args.trace:
            row["trace"] = [{"vertex": s.vertex, "in_I": s.in_I, "removed": s.removed} for s in r.trace]
        rows.append(row)
    P = doc.params
    body = {"M": M, "sets": rows, "distinct_containers": len(coll.containers), "max_fingerprint": coll.max_fingerprint,
            "compliant": P.s >= P.num_types**3, "fingerprint_bound": str(Fraction(P.M * P.num_types**3, P.s)),
            "container_bound": 3 * P.M if P.s >= P.num_types**3 else None}
    run.write(dumps(_report("containers", body)), args.output)
    return EXIT_OK


def cmd_trials(args, run):
    rep = run_trials(_params(args), SampleConfig(args.p, args.seed, args.trials))
    run.write(dumps(rep.to_record()), args.output)
    return EXIT_OK


def _write_family(run, boxes, params, path):
    if path:
        run.write(dumps(FamilyDocument.from_boxes(boxes, params).to_json()), path)


def _base_boxes(args):
    if args.base:
        return load_family(args.base).realized()
    return sampled_boxes(_params(args), SampleConfig(args.p, args.seed, 1))


def cmd_construct(args, run):
    if args.sub == "piercing":
        X, stats = build_piercing_instance(args.k_target, _params(args), SampleConfig(args.p, args.seed, 1),
                                           max_attempts=args.attempts)
        from .graph import family_boxes

        _write_family(run, family_boxes(X), X.params, args.family_out)
    elif args.sub == "ramsey":
        boxes, stats = build_ramsey_instance(args.n, _base_boxes(args), args.multiplicity)
        _write_family(run, boxes, None, args.family_out)
    else:
        boxes, stats = build_coloring_instance(_base_boxes(args), args.omega_cap, args.n)
        _write_family(run, boxes, None, args.family_out)
    run.write(dumps(_report(f"construct-{args.sub}", {"stats": stats})), args.output)
    return EXIT_OK


def cmd_dnc(args, run):
    boxes = load_family(args.input).realized()
    cert = dnc_pierce(boxes) if args.sub == "pierce" else dnc_color(boxes)
    run.write(dumps(_report(f"dnc-{args.sub}", cert.to_record())), args.output)
    return EXIT_OK


def cmd_export(args, run):
    doc = load_family(args.input)
    if args.sub == "dimacs":
        run.write(dimacs_text(build_graph(doc.realized())), args.output)
    else:
        run.write(dumps(doc.convert(args.form).to_json()), args.output)
    return EXIT_OK


def cmd_verify(args, run):
    doc = load_family(args.input, strict=False)
    rep = verify_suite(doc, seed=args.seed)
    run.write(dumps(rep), args.output)
    return EXIT_OK if rep["ok"] else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="boxblocks", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def common(sp, inp=False, seed=False):
        sp.add_argument("-o", "--output", help="report path (default stdout)")
        sp.add_argument("--manifest", help="run manifest path (default <output>.manifest.json)")
        for flag in BUDGET_FLAGS:
            sp.add_argument("--" + flag.replace("_", "-"), dest=flag, type=int, help="resource budget override")
        if inp:
            sp.add_argument("-i", "--input", required=True, help="family document")
        if seed:
            sp.add_argument("--seed", type=int, required=True)

    def fam(sp, required=True):
        sp.add_argument("-d", type=int, required=required)
        sp.add_argument("-s", type=int, required=required)
        sp.add_argument("-k", type=int, required=required)

    sp = sub.add_parser("gen-family", help="generate the full block family")
    fam(sp)
    sp.add_argument("--form", choices=("symbolic", "explicit"), default="symbolic")
    common(sp)
    sp.set_defaults(func=cmd_gen_family)

    sp = sub.add_parser("graph", help="intersection graph summary")
    sp.add_argument("--check-naive", action="store_true")
    common(sp, inp=True)
    sp.set_defaults(func=cmd_graph)

    sp = sub.add_parser("decompose", help="biclique decomposition")
    common(sp, inp=True)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("solve", help="exact solvers")
    ss = sp.add_subparsers(dest="sub", parser_class=_Parser)
    ss.required = True
    for name in QUANTITY:
        x = ss.add_parser(name)
        common(x, inp=True)
        x.set_defaults(func=cmd_solve)

    sp = sub.add_parser("containers", help="fingerprints of random independent sets")
    sp.add_argument("--sets", type=int, default=100)
    sp.add_argument("--M", type=int, default=None, help="override M (default from header)")
    sp.add_argument("--trace", action="store_true")
    common(sp, inp=True, seed=True)
    sp.set_defaults(func=cmd_containers)

    sp = sub.add_parser("trials", help="random subsampling trials")
    fam(sp)
    sp.add_argument("-p", type=_fraction, required=True)
    sp.add_argument("--trials", type=int, default=100)
    common(sp, seed=True)
    sp.set_defaults(func=cmd_trials)

    sp = sub.add_parser("construct", help="lower-bound instance builders")
    ss = sp.add_subparsers(dest="sub", parser_class=_Parser)
    ss.required = True
    x = ss.add_parser("piercing")
    fam(x)
    x.add_argument("-p", type=_fraction, required=True)
    x.add_argument("--k-target", type=int, required=True)
    x.add_argument("--attempts", type=int, default=100)
    x.add_argument("--family-out")
    common(x, seed=True)
    x.set_defaults(func=cmd_construct)
    for name in ("ramsey", "coloring"):
        x = ss.add_parser(name)
        fam(x, required=False)
        x.add_argument("-p", type=_fraction, default=Fraction(1))
        x.add_argument("--base", help="base family document (default: sample the block family)")
        x.add_argument("-n", type=int, required=(name == "ramsey"), default=None)
        if name == "ramsey":
            x.add_argument("--multiplicity", type=int)
        else:
            x.add_argument("--omega-cap", type=int, required=True)
        x.add_argument("--family-out")
        common(x, seed=True)
        x.set_defaults(func=cmd_construct)

    sp = sub.add_parser("dnc", help="divide-and-conquer piercing / coloring")
    ss = sp.add_subparsers(dest="sub", parser_class=_Parser)
    ss.required = True
    for name in ("pierce", "color"):
        x = ss.add_parser(name)
        common(x, inp=True)
        x.set_defaults(func=cmd_dnc)

    sp = sub.add_parser("export", help="DIMACS graph or family document")
    ss = sp.add_subparsers(dest="sub", parser_class=_Parser)
    ss.required = True
    x = ss.add_parser("dimacs")
    common(x, inp=True)
    x.set_defaults(func=cmd_export)
    x = ss.add_parser("family")
    x.add_argument("--form", choices=("symbolic", "explicit"), default="explicit")
    common(x, inp=True)
    x.set_defaults(func=cmd_export)

    sp = sub.add_parser("verify", help="run the invariant suite on a family document")
    sp.add_argument("--seed", type=int, default=0)
    common(sp, inp=True)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    saved = {}
    for flag, var in BUDGET_FLAGS.items():
        value = getattr(args, flag, None)
        if value is not None:
            saved[var] = os.environ.get(var)
            os.environ[var] = str(value)
    try:
        run = _Run(args, argv)
        code = args.func(args, run)
        run.manifest()
        return code
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (KeyError, json.JSONDecodeError) as exc:
        print(f"domain error: malformed document ({exc})", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    finally:
        for var, old in saved.items():
            if old is None:
                os.environ.pop(var, None)
            else:
                os.environ[var] = old


if __name__ == "__main__":
    sys.exit(main())
