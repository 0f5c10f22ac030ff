"""Command-line front end.

Subcommands: degree, lift, check, build, recover, roundtrip, morphism,
table-dump.  All I/O is JSON with exact 'p/q' scalars; reports embed the
tool version, seed, and budgets, and identical invocations produce
byte-identical output.

Exit codes: 0 success / check passed; 1 counterexample, failed check, or
round-trip mismatch; 2 parse error; 3 no lifting found (input not dissident
within budget); 4 ambiguous kernel; 5 parity violation (solver bug signal).
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .builtins import BUILTINS, load_builtin
from .dissident import (
    DissidentMap,
    DissidentTriple,
    MatrixQuadruple,
    dissidence_falsify,
    quadruple_to_triple,
    random_quadruple,
)
from .exact import Matrix
from .lifting import (
    AmbiguousKernel,
    NoLiftingFound,
    OddnessViolation,
    solve_lifting_scan,
    verify_lifting,
)
from .octonion import NotQuadratic, NotUnital, g2_check, structure_table
from .qda import (
    AlgebraPresentation,
    BadDimension,
    IndefiniteForm,
    IrrationalGram,
    algebra_morphism_check,
    division_check,
    make_qda,
    quadratic_check,
    recover_triple,
)
from .serialize import (
    ParseError,
    algebra_to_json,
    canonical_json,
    lifting_to_json,
    load_typed_file,
    matrix_to_json,
    tensor_to_json,
    triple_to_json,
    vector_to_json,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_NO_LIFTING = 3
EXIT_AMBIGUOUS = 4
EXIT_PARITY = 5


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _degree_bound(text):
    value = int(text)
    if not 1 <= value <= 5:
        raise argparse.ArgumentTypeError("must be between 1 and 5")
    return value


def _add_common(sub, budgets=True):
    sub.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    sub.add_argument("--json-out", metavar="PATH", help="also write the report to PATH")
    if budgets:
        sub.add_argument("--trials", type=_positive_int, default=1000,
                         help="dissidence / division budget (default 1000)")
        sub.add_argument("--samples", type=_positive_int, default=64,
                         help="pointwise validation samples (default 64)")
        sub.add_argument("--max-degree", type=_degree_bound, default=5,
                         help="largest candidate degree scanned (default 5)")


def _add_input_flags(sub):
    sub.add_argument("--input", metavar="PATH",
                     help="kinded JSON input (map, triple, or quadruple)")
    sub.add_argument("--builtin", choices=sorted(BUILTINS),
                     help="use an embedded input")
    sub.add_argument("--quadruple", metavar="random|PATH",
                     help="'random' (from --seed) or a quadruple JSON path")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="divalg",
        description="Exact computations with dissident maps, their liftings, "
                    "and the quadratic division algebras they generate.",
    )
    parser.add_argument("--version", action="version", version=f"divalg {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("degree", help="degree of a dissident map via the minimal lifting")
    _add_input_flags(p)
    _add_common(p)

    p = subs.add_parser("lift", help="compute and verify the lifting of the projective map")
    _add_input_flags(p)
    p.add_argument("--emit", metavar="PATH", help="write the bare lifting JSON to PATH")
    _add_common(p)

    p = subs.add_parser("check", help="run one exact or sampled check")
    p.add_argument("--what", required=True,
                   choices=["division", "quadratic", "dissident", "g2"])
    _add_input_flags(p)
    p.add_argument("--matrix", metavar="PATH", help="matrix JSON (for --what g2)")
    _add_common(p)

    p = subs.add_parser("build", help="build the algebra of a triple or quadruple")
    p.add_argument("--triple", metavar="PATH", help="triple JSON path")
    _add_input_flags(p)
    p.add_argument("--emit", metavar="PATH", help="write the bare algebra JSON to PATH")
    _add_common(p)

    p = subs.add_parser("recover", help="recover the triple of a quadratic presentation")
    p.add_argument("--input", metavar="PATH", help="algebra JSON path")
    p.add_argument("--builtin", choices=["octonions", "quaternions"])
    p.add_argument("--emit", metavar="PATH", help="write the bare triple JSON to PATH")
    _add_common(p)

    p = subs.add_parser("roundtrip", help="build then recover; exit 0 iff exactly equal")
    _add_input_flags(p)
    _add_common(p)

    p = subs.add_parser("morphism", help="check a triple or algebra morphism")
    p.add_argument("--kind", required=True, choices=["triple", "algebra"])
    p.add_argument("--src", required=True, metavar="PATH|builtin")
    p.add_argument("--dst", required=True, metavar="PATH|builtin")
    p.add_argument("--f", required=True, metavar="PATH", help="matrix JSON of the map")
    _add_common(p)

    p = subs.add_parser("table-dump", help="dump a structure-constant tensor")
    p.add_argument("--builtin", choices=["octonions", "quaternions"], default="octonions")
    p.add_argument("--emit", metavar="PATH", help="write the bare tensor JSON to PATH")
    _add_common(p, budgets=False)
    return parser


# ---------------------------------------------------------------------------
# input plumbing


def _load_any_map_input(args):
    """Resolve --input/--builtin/--quadruple to (eta, triple_or_None, description)."""
    picked = [x for x in (args.input, args.builtin, args.quadruple) if x]
    if len(picked) != 1:
        raise ParseError("give exactly one of --input, --builtin, --quadruple")
    if args.builtin:
        obj = load_builtin(args.builtin)
        desc = {"builtin": args.builtin}
    elif args.quadruple:
        if args.quadruple == "random":
            obj = random_quadruple(args.seed)
            desc = {"quadruple": "random", "seed": args.seed}
        else:
            obj = load_typed_file(args.quadruple)
            if not isinstance(obj, MatrixQuadruple):
                raise ParseError("--quadruple file must carry kind matrix_quadruple")
            desc = {"path": args.quadruple}
    else:
        obj = load_typed_file(args.input)
        desc = {"path": args.input}
    if isinstance(obj, MatrixQuadruple):
        triple = quadruple_to_triple(obj)
        return triple.eta, triple, desc
    if isinstance(obj, DissidentTriple):
        return obj.eta, obj, desc
    if isinstance(obj, DissidentMap):
        return obj, None, desc
    raise ParseError("input does not describe a dissident map, triple, or quadruple")


def _load_algebra_input(args):
    picked = [x for x in (getattr(args, "input", None), args.builtin,
                          getattr(args, "quadruple", None),
                          getattr(args, "triple", None)) if x]
    if len(picked) != 1:
        raise ParseError("give exactly one input source")
    if args.builtin:
        obj = load_builtin(args.builtin)
        desc = {"builtin": args.builtin}
        if isinstance(obj, DissidentTriple):
            return make_qda(obj), desc
        if isinstance(obj, MatrixQuadruple):
            return make_qda(quadruple_to_triple(obj)), desc
        if isinstance(obj, AlgebraPresentation):
            return obj, desc
        raise ParseError(f"builtin {args.builtin} is not an algebra source")
    if getattr(args, "quadruple", None):
        if args.quadruple == "random":
            q = random_quadruple(args.seed)
            return make_qda(quadruple_to_triple(q)), {"quadruple": "random", "seed": args.seed}
        q = load_typed_file(args.quadruple)
        if not isinstance(q, MatrixQuadruple):
            raise ParseError("--quadruple file must carry kind matrix_quadruple")
        return make_qda(quadruple_to_triple(q)), {"path": args.quadruple}
    if getattr(args, "triple", None):
        t = load_typed_file(args.triple)
        if not isinstance(t, DissidentTriple):
            raise ParseError("--triple file must carry kind dissident_triple")
        return make_qda(t), {"path": args.triple}
    obj = load_typed_file(args.input)
    if isinstance(obj, AlgebraPresentation):
        return obj, {"path": args.input}
    if isinstance(obj, DissidentTriple):
        return make_qda(obj), {"path": args.input}
    if isinstance(obj, MatrixQuadruple):
        return make_qda(quadruple_to_triple(obj)), {"path": args.input}
    raise ParseError("input does not describe an algebra")


def _header(args, command, extra_budgets=None):
    budgets = {}
    for key in ("trials", "samples", "max_degree"):
        if hasattr(args, key):
            budgets[key] = getattr(args, key)
    budgets.update(extra_budgets or {})
    return {
        "tool": "divalg",
        "version": __version__,
        "command": command,
        "seed": getattr(args, "seed", None),
        "budgets": budgets,
    }


def _emit(report, args, emit_doc=None):
    text = canonical_json(report)
    sys.stdout.write(text)
    if getattr(args, "json_out", None):
        with open(args.json_out, "w", encoding="utf-8") as fh:
            fh.write(text)
    if emit_doc is not None and getattr(args, "emit", None):
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write(canonical_json(emit_doc))


# ---------------------------------------------------------------------------
# commands


def cmd_degree(args, emit_lifting=False):
    eta, triple, desc = _load_any_map_input(args)
    report = _header(args, "lift" if emit_lifting else "degree")
    report["input"] = desc
    report["n"] = eta.n
    witness = dissidence_falsify(eta, args.trials, args.seed)
    report["dissidence"] = {
        "trials": args.trials,
        "counterexample": None if witness is None else {
            "v": vector_to_json(witness[0]),
            "w": vector_to_json(witness[1]),
        },
    }
    if witness is not None:
        report["error"] = "input is not dissident; no lifting exists"
        _emit(report, args)
        return EXIT_NO_LIFTING
    try:
        lifting, scan = solve_lifting_scan(
            eta, samples=args.samples, seed=args.seed, max_degree=args.max_degree
        )
    except NoLiftingFound as exc:
        report["error"] = str(exc)
        _emit(report, args)
        return EXIT_NO_LIFTING
    except AmbiguousKernel as exc:
        report["error"] = str(exc)
        _emit(report, args)
        return EXIT_AMBIGUOUS
    report["scan"] = scan
    report["degree"] = lifting.degree
    report["lifting"] = lifting_to_json(lifting)
    report["verification"] = verify_lifting(eta, lifting, samples=args.samples, seed=args.seed)
    if eta.n == 7 and lifting.degree % 2 == 0:
        report["error"] = f"even degree {lifting.degree} on R^7 (parity violation)"
        _emit(report, args)
        return EXIT_PARITY
    _emit(report, args, emit_doc=lifting_to_json(lifting) if emit_lifting else None)
    return EXIT_OK


def cmd_lift(args):
    return cmd_degree(args, emit_lifting=True)


def cmd_check(args):
    report = _header(args, "check")
    report["what"] = args.what
    if args.what == "g2":
        if not args.matrix:
            raise ParseError("--what g2 needs --matrix PATH")
        m = load_typed_file(args.matrix)
        if not isinstance(m, Matrix):
            raise ParseError("--matrix file must carry kind matrix")
        report["input"] = {"path": args.matrix}
        ok = g2_check(m)
        report["pass"] = ok
        _emit(report, args)
        return EXIT_OK if ok else EXIT_FAIL

    if args.what == "dissident":
        eta, _, desc = _load_any_map_input(args)
        report["input"] = desc
        witness = dissidence_falsify(eta, args.trials, args.seed)
        report["pass"] = witness is None
        report["counterexample"] = None if witness is None else {
            "v": vector_to_json(witness[0]),
            "w": vector_to_json(witness[1]),
        }
        report["note"] = ("no counterexample in budget; consistent with dissident"
                          if witness is None else "exact witness found")
        _emit(report, args)
        return EXIT_OK if witness is None else EXIT_FAIL

    alg, desc = _load_algebra_input(args)
    report["input"] = desc
    if args.what == "quadratic":
        try:
            ok = quadratic_check(alg)
        except NotUnital as exc:
            raise ParseError(f"presentation is not unital: {exc}") from exc
        report["pass"] = ok
        _emit(report, args)
        return EXIT_OK if ok else EXIT_FAIL

    witness = division_check(alg, args.trials, args.seed)
    report["pass"] = witness is None
    report["counterexample"] = None if witness is None else vector_to_json(witness)
    report["note"] = ("no singular multiplication operator in budget; "
                      "sampled, not certified" if witness is None
                      else "exact witness: det L_a = 0 or det R_a = 0")
    _emit(report, args)
    return EXIT_OK if witness is None else EXIT_FAIL


def cmd_build(args):
    alg, desc = _load_algebra_input(args)
    report = _header(args, "build")
    report["input"] = desc
    doc = algebra_to_json(alg)
    report["result"] = doc
    _emit(report, args, emit_doc=doc)
    return EXIT_OK


def cmd_recover(args):
    picked = [x for x in (args.input, args.builtin) if x]
    if len(picked) != 1:
        raise ParseError("give exactly one of --input, --builtin")
    if args.builtin:
        alg = load_builtin(args.builtin)
        desc = {"builtin": args.builtin}
    else:
        alg = load_typed_file(args.input)
        if not isinstance(alg, AlgebraPresentation):
            raise ParseError("recover needs an algebra JSON")
        desc = {"path": args.input}
    report = _header(args, "recover")
    report["input"] = desc
    try:
        triple = recover_triple(alg)
    except IrrationalGram as exc:
        report["error"] = "orthonormalization leaves the rationals"
        report["certificate"] = {
            "orthogonal_basis": [vector_to_json(v) for v in exc.basis],
            "diagonal_norms": vector_to_json(exc.diagonal),
        }
        _emit(report, args)
        return EXIT_FAIL
    except (NotQuadratic, IndefiniteForm, BadDimension, NotUnital) as exc:
        report["error"] = f"{type(exc).__name__}: {exc}"
        _emit(report, args)
        return EXIT_FAIL
    doc = triple_to_json(triple)
    report["result"] = doc
    _emit(report, args, emit_doc=doc)
    return EXIT_OK


def cmd_roundtrip(args):
    eta, triple, desc = _load_any_map_input(args)
    if triple is None:
        triple = DissidentTriple(eta.n, Matrix.zeros(eta.n, eta.n), eta)
    report = _header(args, "roundtrip")
    report["input"] = desc
    algebra = make_qda(triple)
    try:
        recovered = recover_triple(algebra)
    except (NotQuadratic, IndefiniteForm, BadDimension, NotUnital, IrrationalGram) as exc:
        report["error"] = f"{type(exc).__name__}: {exc}"
        _emit(report, args)
        return EXIT_FAIL
    match = recovered == triple
    report["match"] = match
    if not match:
        report["diff"] = {
            "xi_original": matrix_to_json(triple.xi),
            "xi_recovered": matrix_to_json(recovered.xi),
            "eta_original": tensor_to_json(triple.eta.tensor),
            "eta_recovered": tensor_to_json(recovered.eta.tensor),
        }
    _emit(report, args)
    return EXIT_OK if match else EXIT_FAIL


def _load_side(source, kind):
    if source in BUILTINS:
        obj = load_builtin(source)
        if kind == "algebra" and isinstance(obj, DissidentTriple):
            obj = make_qda(obj)
        if kind == "triple" and isinstance(obj, MatrixQuadruple):
            obj = quadruple_to_triple(obj)
        return obj
    return load_typed_file(source)


def cmd_morphism(args):
    report = _header(args, "morphism")
    report["kind"] = args.kind
    f = load_typed_file(args.f)
    if not isinstance(f, Matrix):
        raise ParseError("--f must be a matrix JSON")
    src = _load_side(args.src, args.kind)
    dst = _load_side(args.dst, args.kind)
    report["input"] = {"src": args.src, "dst": args.dst, "f": args.f}
    if args.kind == "triple":
        if not isinstance(src, DissidentTriple) or not isinstance(dst, DissidentTriple):
            raise ParseError("triple morphism needs dissident_triple inputs")
        from .dissident import triple_morphism_check

        ok = triple_morphism_check(src, dst, f)
    else:
        if isinstance(src, DissidentTriple):
            src = make_qda(src)
        if isinstance(dst, DissidentTriple):
            dst = make_qda(dst)
        if not isinstance(src, AlgebraPresentation) or not isinstance(dst, AlgebraPresentation):
            raise ParseError("algebra morphism needs algebra inputs")
        ok = algebra_morphism_check(src, dst, f)
    report["pass"] = ok
    _emit(report, args)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_table_dump(args):
    dim = 8 if args.builtin == "octonions" else 4
    table = structure_table(dim)
    report = _header(args, "table-dump")
    doc = {"kind": "structure_table", "dim": dim, "tensor": tensor_to_json(table)}
    report["result"] = doc
    _emit(report, args, emit_doc=doc)
    return EXIT_OK


_HANDLERS = {
    "degree": cmd_degree,
    "lift": cmd_lift,
    "check": cmd_check,
    "build": cmd_build,
    "recover": cmd_recover,
    "roundtrip": cmd_roundtrip,
    "morphism": cmd_morphism,
    "table-dump": cmd_table_dump,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except ParseError as exc:
        sys.stdout.write(canonical_json({"error": f"parse error: {exc}"}))
        return EXIT_PARSE
    except OddnessViolation as exc:
        sys.stdout.write(canonical_json({"error": str(exc)}))
        return EXIT_PARITY


if __name__ == "__main__":
    sys.exit(main())
