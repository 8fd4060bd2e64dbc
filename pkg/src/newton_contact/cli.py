"""Command-line interface: ``newton-contact <command> -f input.txt``.

Every command prints a JSON envelope ``{"manifest": ..., "result": ...}``
(or a short text summary with ``--text``).  Exit status is 0 on success,
2 when a verdict is Unknown and 1 on errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import __version__
from .classify import classify
from .contact import order_of_contact
from .curves import parse_curve
from .fixtures import run_selftest
from .gaussian import INF, ext_to_json
from .hypersurface import (DEFAULT_IMPROVE_CAP, HypothesisError, compute_type, improve_coordinate,
                           iterate_improvement, normalize, rho1_on_coordinate)
from .mixedpoly import face_part, principal_part
from .nondegen import SearchOptions, Status, check_all, check_face
from .oracle import DEFAULT_PALETTE, SearchConfig, env_workers, formula_crosscheck, sup_contact_lower_bound
from .parser import ParseError, parse
from .plotting import diagram_csv, render_diagram
from .polyhedron import of, regular_face
from .report import RunManifest, digest, dumps, envelope

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


# ---------------------------------------------------------------------------
# input helpers


def _read_input(args) -> str:
    if getattr(args, "expr", None):
        return args.expr
    if not getattr(args, "file", None):
        raise UsageError("an input is required: -f FILE or -e EXPR")
    if args.file == "-":
        return sys.stdin.read()
    with open(args.file, encoding="utf-8") as fh:
        return fh.read()


def _strip(text: str) -> str:
    lines = [ln.split("#", 1)[0] for ln in text.splitlines()]
    return " ".join(ln.strip() for ln in lines if ln.strip())


def _is_surface(F) -> bool:
    return "w" in F.names


def _surface(args, text):
    r = parse(text)
    w_index = args.w_index - 1 if getattr(args, "w_index", None) else None
    return normalize(r, w_index, expression=text)


def _function(args, text):
    """``F`` itself, or the normalized ``F`` when the input is a surface with ``w``."""
    P = parse(text)
    if _is_surface(P) or getattr(args, "w_index", None):
        return _surface(args, text).F
    return P


def _parse_points(spec: str):
    pts = []
    for chunk in spec.split(";"):
        chunk = chunk.strip()
        if chunk:
            pts.append(tuple(int(x) for x in chunk.replace(" ", ",").split(",") if x))
    return pts


def _parse_palette(spec: str):
    if spec in (None, "", "default"):
        return DEFAULT_PALETTE
    out = []
    for item in spec.split(","):
        p = parse(item.strip(), names=("t",))
        if not p.is_zero() and set(p.terms) != {((0,), (0,))}:
            raise UsageError(f"palette entries must be constants, got {item!r}")
        out.append(p.coefficient((0,), (0,)))
    return tuple(out)


def _options(args) -> SearchOptions:
    return SearchOptions(
        max_exp=getattr(args, "search_exp", 12) or 12,
        grid=getattr(args, "grid", "small") or "small",
        assert_psh=bool(getattr(args, "assert_psh", False)),
        workers=_workers(args),
    )


def _workers(args) -> int:
    w = getattr(args, "workers", None)
    return w if w else env_workers()


def _oracle_config(args, **overrides) -> SearchConfig:
    cfg = SearchConfig(
        max_exponent=getattr(args, "max_exp", 6) or 6,
        palette=_parse_palette(getattr(args, "palette", "default")),
        jet_degree=max(getattr(args, "jet_degree", 12) or 12, getattr(args, "max_exp", 6) or 6),
        max_curves=getattr(args, "max_curves", 10 ** 6) or 10 ** 6,
        reg_only=bool(getattr(args, "reg_only", False)),
        workers=_workers(args),
    )
    return cfg.with_(**overrides) if overrides else cfg


def _options_json(opts: SearchOptions) -> dict:
    return opts.to_json()


# ---------------------------------------------------------------------------
# commands; each returns (result dict, config dict, permutation, exit code, text lines)


def cmd_parse(args, text):
    P = parse(text)
    return {"canonical": P.to_text(), "polynomial": P.to_json(), "real": P.is_real(),
            "degree": P.degree(), "terms": len(P)}, {}, None, EXIT_OK, [P.to_text()]


def cmd_polyhedron(args, text):
    F = _function(args, text)
    P = of(F)
    return P.to_json(), {}, None, EXIT_OK, [f"vertices: {list(P.vertices)}",
                                            f"facets: {P.facets}"]


def cmd_diagram(args, text, manifest_outputs):
    F = _function(args, text)
    P = of(F)
    result = P.to_json()
    if args.svg:
        render_diagram(P, args.svg, title=args.title)
        manifest_outputs.append((args.svg, "svg"))
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(diagram_csv(P))
        manifest_outputs.append((args.csv, "csv"))
    lines = [diagram_csv(P).rstrip("\n")]
    return result, {"svg": bool(args.svg), "csv": bool(args.csv)}, None, EXIT_OK, lines


def cmd_rho(args, text):
    F = _function(args, text)
    P = of(F) if not F.is_zero() else None
    rho = P.rho if P else (INF,) * F.nvars
    rho1 = max(rho)
    perm = tuple(sorted(range(F.nvars), key=lambda j: (-(rho[j] if rho[j] != INF else 10 ** 18), j)))
    result = {"rho": [ext_to_json(x) for x in rho], "rho1": ext_to_json(rho1),
              "convenient": bool(P and P.convenient())}
    return result, {}, perm, EXIT_OK, [f"rho = {result['rho']}, rho1 = {result['rho1']}"]


def cmd_faces(args, text):
    F = _function(args, text)
    P = of(F)
    faces = []
    for f in P.bounded_faces:
        entry = f.to_json()
        entry["regular"] = regular_face(f)
        entry["part"] = face_part(F, f).to_text()
        faces.append(entry)
    lines = [f"{e['vertices']} normal {e['normal']} level {e['level']} regular {e['regular']}" for e in faces]
    return {"faces": faces}, {}, None, EXIT_OK, lines


def _select_face(P, args):
    if args.face:
        return P.face_with_vertices(_parse_points(args.face))
    if args.normal:
        a = _parse_points(args.normal)[0]
        _, face = P.support_min(a)
        return face
    return None


def cmd_part(args, text):
    F = _function(args, text)
    P = of(F)
    face = _select_face(P, args)
    if face is None:
        part = principal_part(F)
        result = {"face": None, "part": part.to_text(), "polynomial": part.to_json()}
    else:
        part = face_part(F, face)
        result = {"face": [list(v) for v in face.vertices], "part": part.to_text(), "polynomial": part.to_json()}
    return result, {}, None, EXIT_OK, [part.to_text()]


def cmd_contact(args, text):
    F = _function(args, text) if not args.raw else parse(text)
    curve = parse_curve(args.curve)
    rep = order_of_contact(F, curve)
    out = rep.to_json()
    out["curve"] = curve.to_text()
    return out, {"curve": args.curve}, None, EXIT_OK, [
        f"ord(F o gamma) = {out['ord_composed']}, O = {out['contact_order']}, "
        f"l = {out['l_lower_bound']}, d = {out['distance']}, tight = {out['tight']}"]


def cmd_nondegen(args, text):
    F = _function(args, text) if not args.raw else parse(text)
    opts = _options(args)
    if args.face:
        P = of(F)
        v = check_face(F, P.face_with_vertices(_parse_points(args.face)), opts)
    else:
        v = check_all(F, opts)
    code = EXIT_UNKNOWN if v.status is Status.UNKNOWN else EXIT_OK
    line = v.status.value + (f" witness {v.witness.curve.to_text()} on {v.witness.face}" if v.witness else "")
    return v.to_json(), _options_json(opts), None, code, [line]


def cmd_type(args, text):
    M = _surface(args, text)
    opts = _options(args)
    cfg = _oracle_config(args)
    result = {"surface": M.to_json()}
    if args.improve:
        asc = iterate_improvement(M, opts, args.cap, cfg)
        result["ascent"] = {k: v for k, v in asc.to_json().items() if k != "type"}
        rep = asc.report
        M = asc.final
    else:
        rep = compute_type(M, opts, cfg, True if args.oracle_bounds else None)
    if args.oracle_bounds and rep.verdict.status is Status.NONDEGENERATE:
        res = sup_contact_lower_bound(M.defining_polynomial(), cfg)
        rep.notes.append(f"oracle lower bound {ext_to_json(res.best)} at {res.curve}")
    result["type"] = rep.to_json()
    code = EXIT_UNKNOWN if rep.verdict.status is Status.UNKNOWN else EXIT_OK
    config = {"search": _options_json(opts), "oracle": cfg.to_json(), "improve": bool(args.improve)}
    lines = [f"rho1 = {ext_to_json(rep.rho1)}", f"verdict = {rep.verdict.status.value}",
             f"delta1 = {ext_to_json(rep.delta1)}", f"delta1 lower bound = {ext_to_json(rep.delta1_lb)}",
             f"regular type lower bound = {ext_to_json(rep.delta1_reg_lb)}"] + rep.notes
    return result, config, rep.permutation, code, lines


def cmd_normalize(args, text):
    M = _surface(args, text)
    _, _, perm = rho1_on_coordinate(M)
    return M.to_json(), {}, perm, EXIT_OK, [f"change: {M.change or 'none'}", f"F = {M.F.to_text()}"]


def cmd_improve(args, text):
    M = _surface(args, text)
    opts = _options(args)
    if args.iterate:
        asc = iterate_improvement(M, opts, args.cap, _oracle_config(args))
        code = EXIT_OK if asc.terminated else EXIT_UNKNOWN
        return asc.to_json(), {"search": _options_json(opts), "cap": args.cap}, asc.report.permutation, code, [
            f"{len(asc.steps)} step(s); {asc.reason}; F = {asc.final.F.to_text()}"]
    step = improve_coordinate(M, opts)
    if step is None:
        return {"step": None, "reason": "no qualifying witness through a top axis vertex"}, \
            {"search": _options_json(opts)}, None, EXIT_UNKNOWN, ["no improving change found"]
    return {"step": step.to_json()}, {"search": _options_json(opts)}, None, EXIT_OK, [
        "substitution: " + ", ".join(f"z{j + 1} = {m.to_text()}" for j, m in enumerate(step.maps)),
        f"rho1: {ext_to_json(step.rho1_before)} -> {ext_to_json(step.rho1_after)}",
        f"F = {step.result.F.to_text()}"]


def cmd_classify(args, text):
    F = _function(args, text)
    opts = _options(args)
    rep = classify(F, opts)
    out = rep.to_json()
    return out, _options_json(opts), None, EXIT_OK, [f"{k}: {v}" for k, v in out["flags"].items()] + [
        f"bounded facets: {rep.bounded_facets}", f"verdict: {rep.verdict}"]


def cmd_oracle(args, text):
    r = parse(text)
    cfg = _oracle_config(args)
    res = sup_contact_lower_bound(r, cfg)
    out = res.to_json()
    if args.crosscheck:
        F = _function(args, text)
        out["crosscheck"] = formula_crosscheck(F, cfg.with_(reg_only=False)).to_json()
    lines = [f"best = {out['best']} at {out['curve']}", f"infinite_flag = {out['infinite_flag']}"]
    return out, cfg.to_json(), None, EXIT_OK, lines


def cmd_selftest(args, text):
    results = run_selftest()
    rows = [{"fixture": r.fixture, "check": r.check, "passed": r.passed, "detail": r.detail} for r in results]
    width = max(len(r.fixture) for r in results)
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.fixture:<{width}}  {r.check}  ({r.detail})" for r in results]
    ok = all(r.passed for r in results)
    return {"checks": rows, "passed": ok}, {}, None, EXIT_OK if ok else EXIT_ERROR, lines


COMMANDS = {
    "parse": cmd_parse, "polyhedron": cmd_polyhedron, "diagram": cmd_diagram, "rho": cmd_rho,
    "faces": cmd_faces, "part": cmd_part, "contact": cmd_contact, "nondegen": cmd_nondegen,
    "type": cmd_type, "normalize": cmd_normalize, "improve": cmd_improve, "classify": cmd_classify,
    "oracle": cmd_oracle, "selftest": cmd_selftest,
}


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="newton-contact",
                description="Newton polyhedra, nondegeneracy and contact orders of real hypersurfaces.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", metavar="command", parser_class=_Parser)

    def add(name, help_text, inputs=True):
        sp = sub.add_parser(name, help=help_text, description=help_text)
        if inputs:
            g = sp.add_mutually_exclusive_group()
            g.add_argument("-f", "--file", help="input file with one expression ('-' for stdin)")
            g.add_argument("-e", "--expr", help="inline expression")
            sp.add_argument("--w-index", type=int, default=None,
                            help="1-based index of the w variable (default: w, else the last variable)")
        sp.add_argument("-o", "--output", help="write the JSON envelope here instead of stdout")
        sp.add_argument("--text", action="store_true", help="print a short text summary instead of JSON")
        return sp

    def search(sp):
        sp.add_argument("--assert-psh", action="store_true",
                        help="assert that F is plurisubharmonic (enables the rotation certificate)")
        sp.add_argument("--search-exp", type=int, default=12, help="exponent bound for witness directions")
        sp.add_argument("--grid", choices=("small", "wide"), default="small", help="torus sample grid")
        sp.add_argument("--workers", type=int, default=None,
                        help="worker processes (default: NEWTON_CONTACT_THREADS or 1)")

    def oracle(sp):
        sp.add_argument("--max-exp", type=int, default=6, help="largest exponent per component")
        sp.add_argument("--palette", default="default", help="comma-separated coefficients or 'default'")
        sp.add_argument("--jet-degree", type=int, default=12, help="largest degree of a second jet term")
        sp.add_argument("--max-curves", type=int, default=10 ** 6, help="cap on monomial curves")

    add("parse", "parse an expression and print its canonical expansion")
    add("polyhedron", "Newton polyhedron: vertices, facets, bounded faces")
    sp = add("diagram", "Newton diagram with optional SVG (two variables) and CSV output")
    sp.add_argument("--svg", help="SVG file to write")
    sp.add_argument("--csv", help="CSV file to write")
    sp.add_argument("--title", default=None, help="figure title")
    add("rho", "axis intercepts rho_j and rho_1")
    add("faces", "bounded faces with determining vectors and regularity")
    sp = add("part", "face part of F (principal part when no face is given)")
    sp.add_argument("--face", help="face vertices, e.g. '4,0;2,1'")
    sp.add_argument("--normal", help="a positive vector; its minimizing face is used")
    sp = add("contact", "order of contact of a curve")
    sp.add_argument("--curve", required=True, help="curve literal such as '(t^2, t^3)'")
    sp.add_argument("--raw", action="store_true", help="use the input as is, without normalizing a surface")
    sp = add("nondegen", "nondegeneracy verdict with certificate or witness")
    sp.add_argument("--face", help="check one face given by its vertices")
    sp.add_argument("--raw", action="store_true", help="use the input as is, without normalizing a surface")
    search(sp)
    sp = add("type", "rho_1, verdict and type bounds of a model surface")
    sp.add_argument("--improve", action="store_true", help="run the coordinate ascent first")
    sp.add_argument("--oracle-bounds", action="store_true", help="always run the curve oracle")
    sp.add_argument("--cap", type=int, default=DEFAULT_IMPROVE_CAP, help="ascent iteration cap")
    search(sp)
    oracle(sp)
    add("normalize", "remove pure terms by a change of w")
    sp = add("improve", "one coordinate change raising rho_1 (or iterate with --iterate)")
    sp.add_argument("--iterate", action="store_true", help="repeat until nondegenerate or stuck")
    sp.add_argument("--cap", type=int, default=DEFAULT_IMPROVE_CAP, help="iteration cap")
    search(sp)
    oracle(sp)
    sp = add("classify", "structural recognizers")
    search(sp)
    sp = add("oracle", "brute-force lower bound on contact orders")
    oracle(sp)
    sp.add_argument("--reg-only", action="store_true", help="only curves of order 1")
    sp.add_argument("--crosscheck", action="store_true", help="also check the Newton bounds curve by curve")
    sp.add_argument("--workers", type=int, default=None,
                    help="worker processes (default: NEWTON_CONTACT_THREADS or 1)")
    add("selftest", "recompute the known facts about the bundled examples", inputs=False)
    return p


def _config_echo(args) -> dict:
    skip = {"command", "file", "expr", "output", "text", "svg", "csv"}
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in skip or k == "workers":
            continue
        out[k] = v
    return out


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"newton-contact: error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except SystemExit as e:  # --help and --version
        return int(e.code or 0)
    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_ERROR
    try:
        if args.command == "selftest":
            text = ""
        else:
            text = _strip(_read_input(args))
            if not text:
                raise UsageError("the input is empty")
        outputs = []
        fn = COMMANDS[args.command]
        if args.command == "diagram":
            result, config, perm, code, lines = fn(args, text, outputs)
        else:
            result, config, perm, code, lines = fn(args, text)
        manifest = RunManifest(args.command, digest(text.encode("utf-8")), {"args": _config_echo(args), **config},
                               perm)
        for path, kind in outputs:
            manifest.add_output(path, kind)
        payload = dumps(envelope(manifest, result))
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(payload)
            manifest_note = f"wrote {args.output}"
        else:
            manifest_note = None
        if args.text:
            print("\n".join(lines))
            if manifest_note:
                print(manifest_note)
        elif not args.output:
            sys.stdout.write(payload)
        return code
    except UsageError as e:
        print(f"newton-contact: error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except ParseError as e:
        print(f"newton-contact: parse error: {e}", file=sys.stderr)
        if e.text:
            print(f"  {e.text}\n  {' ' * e.position}^", file=sys.stderr)
        return EXIT_ERROR
    except (HypothesisError, ValueError, KeyError, ArithmeticError, OSError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"newton-contact: error: {msg}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
