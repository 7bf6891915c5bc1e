"""Command-line interface: ``tdlc COMMAND PROJECT [options]``.

Exit codes: 0 success, 1 a checked property fails, 2 input error,
3 domain error or budget exceeded.
"""
import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import geometry, serialize
from .amalgam import normal_form, word_str
from .chains import chain_homotopy_check
from .errors import InputError, TdlcError
from .filling import filling_norm, isoperimetric_scan, verify_filling, zero_dim_distortion
from .smallcancel import check_cprime, is_trivial_in_quotient, search_relators, symmetrize

EXIT_OK, EXIT_VIOLATED, EXIT_INPUT, EXIT_DOMAIN = 0, 1, 2, 3


@dataclass
class Project:
    ctx: object
    relators: list
    lam: Fraction
    radius: int
    max_loop_len: int
    max_vertices: int
    workers: int
    search: dict = None

    def symmetrized(self):
        return symmetrize(self.ctx, self.relators)


def _resolve(value, base):
    # a string names a JSON file relative to the project file
    if isinstance(value, str):
        return serialize.load_json(base / value)
    return value


def load_project(path):
    path = Path(path)
    data = serialize.load_json(path)
    if not isinstance(data, dict):
        raise InputError("project file must hold a JSON object")
    base = path.parent
    try:
        parts = {k: _resolve(data[k], base) for k in ("A", "B", "C", "iota_A", "iota_B")}
    except KeyError as e:
        raise InputError(f"project is missing {e}") from None
    try:
        ctx = serialize.context_from_json(parts)
    except TdlcError as e:
        raise InputError(f"bad group data: {e}") from None
    except ValueError as e:
        raise InputError(str(e)) from None
    lam = serialize.parse_rational(data.get("lambda", "1/6"))
    budgets = data.get("budgets", {})
    search = data.get("search")
    rel = data.get("relators", [])
    if isinstance(rel, str) and rel.endswith(".json"):
        rel = serialize.load_json(base / rel)
    relators = serialize.relators_from_json(ctx, rel)
    if search is not None and not relators:
        search = dict(search)
        found = search_relators(ctx, int(search["length"]), serialize.parse_rational(search.get("lambda", lam)),
                                seed=int(search.get("seed", 0)), attempts=int(search.get("attempts", 1000)))
        if found is None:
            raise InputError("relator search found nothing within its attempt budget")
        relators = [found[0]]
        search["attempt"] = found[3]
    return Project(ctx, relators, lam, int(data.get("radius", 6)), int(data.get("max_loop_len", 12)),
                   int(budgets.get("max_vertices", geometry.MAX_VERTICES)), int(data.get("workers", 1)), search)


def _words(ctx, R):
    return [word_str(ctx, r) for r in R]


def cmd_reduce(p, args):
    w = serialize.parse_word(p.ctx, args.word)
    nf = normal_form(p.ctx, w)
    out = {"input": args.word, "normal_form": word_str(p.ctx, nf), "letters": serialize.word_to_json(nf),
           "trivial": not nf}
    if args.quotient:
        out["trivial_in_quotient"] = is_trivial_in_quotient(p.symmetrized(), nf)
    return out, EXIT_OK


def cmd_symmetrize(p, args):
    R = p.symmetrized()
    out = {"count": len(R), "relators": _words(p.ctx, R)}
    if p.search is not None:
        out["search"] = p.search
    return out, EXIT_OK


def cmd_check_smallcancel(p, args):
    lam = serialize.parse_rational(args.lam) if args.lam else p.lam
    rep = check_cprime(p.symmetrized(), lam)
    out = serialize.to_jsonable(rep)
    if rep.witness:
        out["witness"] = {k: (word_str(p.ctx, v) if isinstance(v, tuple) else v) for k, v in rep.witness.items()}
    return out, EXIT_OK if rep.satisfied else EXIT_VIOLATED


def _radius(p, args):
    return args.radius if args.radius is not None else p.radius


def _ball(p, args, kind):
    r = _radius(p, args)
    if kind == "tree":
        return geometry.bass_serre_ball(p.ctx, r, p.max_vertices)
    if kind == "quotient":
        return geometry.cayley_abels_ball(p.ctx, p.symmetrized(), r, p.max_vertices)
    return geometry.presentation_complex_ball(p.ctx, p.symmetrized(), r, p.max_vertices)


def _ball_json(p, B):
    G = getattr(B, "graph", B)
    out = serialize.complex_to_json(B.complex)
    out["labels"] = [[f, word_str(p.ctx, s)] for f, s in G.labels]
    out["dist"] = list(G.dist)
    out["base"] = G.base
    out["radius"] = G.radius
    if hasattr(B, "relators"):
        out["face_relators"] = _words(p.ctx, B.relators)
    return out


def _build(kind):
    def run(p, args):
        B = _ball(p, args, kind)
        if args.format == "edges":
            return getattr(B, "graph", B).edge_list_text(), EXIT_OK
        return _ball_json(p, B), EXIT_OK
    return run


def _default_kind(p):
    return "complex" if p.relators else "tree"


def cmd_check_c6(p, args):
    rep = geometry.check_c6_complex(_ball(p, args, "complex"))
    return rep, EXIT_OK if rep.satisfied else EXIT_VIOLATED


def cmd_delta(p, args):
    kind = args.ball or ("quotient" if p.relators else "tree")
    B = _ball(p, args, kind)
    return {"ball": kind, "radius": _radius(p, args), "vertices": B.n_vertices,
            "delta": geometry.four_point_delta(B)}, EXIT_OK


def _complex_for(p, args):
    if args.complex:
        return serialize.complex_from_json(serialize.load_json(args.complex))
    return _ball(p, args, _default_kind(p)).complex


def cmd_fill(p, args):
    X = _complex_for(p, args)
    c = serialize.chain_from_json(serialize.load_json(args.chain))
    res = filling_norm(X, c)
    out = serialize.to_jsonable(res)
    out["dual"] = {str(i): serialize.rational(y) for i, y in sorted(res.dual.items())}
    out["verified"] = verify_filling(X, c, res)
    return out, EXIT_OK


def cmd_scan(p, args):
    X = _complex_for(p, args)
    n = args.max_len or p.max_loop_len
    rep = isoperimetric_scan(X, n, workers=args.workers or p.workers)
    if args.csv:
        return rep.csv(), EXIT_OK
    out = {"max_len": n, "max_ratio": rep.max_ratio, "loop_count": rep.loop_count,
           "infeasible": len(rep.infeasible),
           "per_length": {str(k): {"ratio": v[0], "fill": v[2], "loop": v[1]}
                          for k, v in sorted(rep.per_length.items())}}
    return out, EXIT_OK


def cmd_zero_dim(p, args):
    kind = args.ball or ("quotient" if p.relators else "tree")
    B = _ball(p, args, kind)
    rows = zero_dim_distortion(B, B.base)
    if args.csv:
        lines = ["vertex,distance,fill,l1"] + [f"{r.vertex},{r.distance},{r.value},{r.l1}" for r in rows]
        return "\n".join(lines) + "\n", EXIT_OK
    return {"ball": kind, "max_value": max(r.value for r in rows), "rows": rows}, EXIT_OK


def cmd_homotopy_check(p, args):
    data = serialize.load_json(args.maps)
    try:
        fam = {k: serialize.family_from_json(data.get(k, {})) for k in ("f", "g", "h", "d_src", "d_dst")}
    except AttributeError:
        raise InputError("maps file must hold a JSON object") from None
    try:
        C = chain_homotopy_check(fam["f"], fam["g"], fam["h"], fam["d_src"], fam["d_dst"], data.get("n"))
    except TdlcError as e:
        return {"valid": False, "error": type(e).__name__, "message": str(e)}, EXIT_VIOLATED
    return {"valid": True, "C": C}, EXIT_OK


COMMANDS = {
    "reduce": cmd_reduce,
    "symmetrize": cmd_symmetrize,
    "check-smallcancel": cmd_check_smallcancel,
    "build-tree": _build("tree"),
    "build-quotient": _build("quotient"),
    "build-complex": _build("complex"),
    "check-c6": cmd_check_c6,
    "delta": cmd_delta,
    "fill": cmd_fill,
    "scan": cmd_scan,
    "zero-dim": cmd_zero_dim,
    "homotopy-check": cmd_homotopy_check,
}


def build_parser():
    ap = argparse.ArgumentParser(prog="tdlc", description="Amalgams, small cancellation and filling norms.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("project", help="project JSON file")
        return sp

    sp = add("reduce", "print the normal form of a word")
    sp.add_argument("word", help='letters such as "A1 B2 A3"')
    sp.add_argument("--quotient", action="store_true", help="also decide triviality modulo the relators")
    add("symmetrize", "print the symmetrized relator set")
    sp = add("check-smallcancel", "check the C'(lambda) condition")
    sp.add_argument("--lambda", dest="lam", help="overrides the project value")
    for name in ("build-tree", "build-quotient", "build-complex"):
        sp = add(name, "build a ball and print it")
        sp.add_argument("--radius", type=int)
        sp.add_argument("--format", choices=["json", "edges"], default="json")
    sp = add("check-c6", "check the C'(1/6) condition on the presentation complex ball")
    sp.add_argument("--radius", type=int)
    sp = add("delta", "four-point hyperbolicity constant of a ball")
    sp.add_argument("--radius", type=int)
    sp.add_argument("--ball", choices=["tree", "quotient"])
    sp = add("fill", "filling norm of a chain")
    sp.add_argument("chain", help='chain JSON {"deg": d, "coeffs": {...}}')
    sp.add_argument("--complex", help="complex JSON file (default: the project ball)")
    sp.add_argument("--radius", type=int)
    sp = add("scan", "isoperimetric scan over combinatorial loops")
    sp.add_argument("--complex", help="complex JSON file (default: the project ball)")
    sp.add_argument("--radius", type=int)
    sp.add_argument("--max-len", type=int)
    sp.add_argument("--workers", type=int)
    sp.add_argument("--csv", action="store_true")
    sp = add("zero-dim", "0-dimensional distortion table from the base vertex")
    sp.add_argument("--radius", type=int)
    sp.add_argument("--ball", choices=["tree", "quotient"])
    sp.add_argument("--csv", action="store_true")
    sp = sub.add_parser("homotopy-check", help="verify a chain homotopy and report its constant")
    sp.add_argument("maps", help='JSON with "f", "g", "h", "d_src", "d_dst" families')
    return ap


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        p = load_project(args.project) if hasattr(args, "project") else None
        result, code = COMMANDS[args.command](p, args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except TdlcError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    out.write(result if isinstance(result, str) else serialize.dumps(result))
    return code


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
