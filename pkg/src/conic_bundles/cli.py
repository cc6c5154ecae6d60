"""Command-line interface: ``conic-bundles <command> ...``.

Exit codes: 0 computed, 1 usage or input error, 2 computation limit reached.
"""
from __future__ import annotations

import argparse
import json
import sys

from .arith import QuadElem, format_rational, normalize_discriminant, parse_quad, parse_rational
from .brauer import (
    ConicBundleData,
    FiberDatum,
    base_change_locus,
    brauer_quotient,
    classify_nonsurjective,
    critical_extensions_four_fibers,
    problematic_set_M,
    restriction_map,
)
from .errors import ComputationLimitError, ConicBundleError, DegenerateInputError, ParseError
from .factor import factor_over_Q, set_seed
from .local import DEFAULT_MAX_DEPTH, DEFAULT_PRECISION, Place, hilbert_symbol, splitting_type
from .obstruction import (
    bm_obstruction_quadratic,
    chatelet_local_solvable,
    hasse_verdict,
    parity_criterion,
)
from .poly import Poly, is_squarefree


# ---------------------------------------------------------------------------
# surface files

def _rational(value, path):
    if not isinstance(value, str):
        raise ParseError("malformed-rational", f"expected a rational string, got {value!r}", path)
    try:
        return parse_rational(value)
    except ValueError as exc:
        raise ParseError("malformed-rational", str(exc), path) from None


def _poly(items, path) -> Poly:
    if not isinstance(items, list) or not items:
        raise ParseError("bad-schema", "expected a nonempty coefficient array", path)
    return Poly([_rational(c, f"{path}[{i}]") for i, c in enumerate(items)])


def _alpha(obj, point: Poly, path):
    if isinstance(obj, str):
        return _rational(obj, path)
    if isinstance(obj, list):
        return _poly(obj, path)
    if isinstance(obj, dict):
        try:
            return parse_quad(obj)
        except (KeyError, ValueError, TypeError) as exc:
            raise ParseError("malformed-rational", f"bad quadratic element: {exc}", path) from None
    raise ParseError("bad-schema", "alpha must be a rational string, a coefficient array or {x, y, d}", path)


def parse_surface(text: str) -> ConicBundleData:
    """Parse and validate a surface description (JSON, numbers as strings)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("bad-schema", f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("kind") not in ("chatelet", "general"):
        raise ParseError("bad-schema", 'expected an object with "kind": "chatelet" or "general"', "$.kind")
    label = doc.get("label")
    if doc["kind"] == "chatelet":
        for key in ("a", "c", "f"):
            if key not in doc:
                raise ParseError("bad-schema", f"missing field {key!r}", f"$.{key}")
        a = _rational(doc["a"], "$.a")
        c = _rational(doc["c"], "$.c")
        f = _poly(doc["f"], "$.f")
        if a == 0 or c == 0:
            raise ParseError("degenerate", "a and c must be nonzero", "$.a" if a == 0 else "$.c")
        if f.degree not in (3, 4):
            raise ParseError("bad-degree", f"f has degree {f.degree}, expected 3 or 4", "$.f")
        if not is_squarefree(f):
            raise ParseError("not-squarefree", "f has a repeated factor", "$.f")
        try:
            return ConicBundleData.chatelet(a, c, f, label)
        except DegenerateInputError as exc:
            raise ParseError("square-a", str(exc), "$.a") from None
    points = doc.get("points")
    if not isinstance(points, list):
        raise ParseError("bad-schema", 'general surfaces need a "points" array', "$.points")
    data = []
    for i, item in enumerate(points):
        path = f"$.points[{i}]"
        if not isinstance(item, dict) or "poly" not in item or "alpha" not in item:
            raise ParseError("bad-schema", 'each point needs "poly" and "alpha"', path)
        P = _poly(item["poly"], f"{path}.poly")
        if P.degree < 1 or P.degree > 4:
            raise ParseError("bad-degree", "closed points must have degree 1 to 4", f"{path}.poly")
        P = P.monic()
        if not factor_over_Q(P).is_irreducible():
            raise ParseError("reducible-point", f"{P} is reducible over Q", f"{path}.poly")
        alpha = _alpha(item["alpha"], P, f"{path}.alpha")
        try:
            data.append(FiberDatum.make(P, alpha))
        except DegenerateInputError as exc:
            raise ParseError("bad-residue", str(exc), f"{path}.alpha") from None
    try:
        return ConicBundleData.general(data, label)
    except DegenerateInputError as exc:
        msg = str(exc)
        code = "norm-product" if "product" in msg else ("square-residue" if "square" in msg else "degenerate")
        raise ParseError(code, msg, "$.points") from None


def load_surface(path: str) -> ConicBundleData:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError("bad-schema", f"cannot read {path}: {exc.strerror}") from None
    return parse_surface(text)


# ---------------------------------------------------------------------------
# commands (each returns (report dict, human text, exit code))

def _ext(args, required=False):
    if args.ext is None:
        if required:
            raise UsageError("--ext is required for this command")
        return None
    return normalize_discriminant(args.ext)


class UsageError(Exception):
    pass


def cmd_analyze(args):
    X = load_surface(args.file)
    v = hasse_verdict(X, _ext(args), args.max_depth, args.precision)
    rep = v.to_json()
    lines = [f"conclusion: {v.conclusion}", f"field: {v.over}",
             f"citations: {', '.join(v.citations) or '-'}", f"conditionality: {v.conditionality}"]
    bm = v.details.get("bm")
    if bm:
        lines.append(f"generator: {bm['generator']}")
        lines.append(f"total invariant sum: {{{', '.join(bm['total'])}}}")
    for row in v.places:
        if "solvable" in row:
            lines.append(f"  {row['place']}: {'local points' if row['solvable'] else 'no local points'}")
        else:
            lines.append(f"  {row['place']}: {{{', '.join(row['value_set'])}}}")
    code = 2 if v.details.get("limit_reached") else 0
    return rep, "\n".join(lines), code


def cmd_brauer(args):
    X = load_surface(args.file)
    d = _ext(args)
    S = X.locus if d is None else base_change_locus(X.locus, d)[0]
    bq = brauer_quotient(S)
    rep = bq.to_json()
    rep["field"] = "Q" if d is None else f"Q(sqrt({d}))"
    rep["locus"] = [fd.to_json() for fd in S]
    lines = [f"field: {rep['field']}",
             "singular locus: " + ", ".join(f"{fd.point} (alpha = {fd.alpha_str()})" for fd in S),
             f"Br(X)/Br_0(X) = (Z/2)^{bq.dimension}"]
    lines += [f"  generator {g.to_json()['epsilon']}: {g}" for g in bq.generators]
    return rep, "\n".join(lines), 0


def cmd_restriction(args):
    X = load_surface(args.file)
    d = _ext(args, required=True)
    r = restriction_map(X.locus, d)
    rep = r.to_json()
    if X.geometric_fiber_count == 4:
        rep["classification"] = classify_nonsurjective(X, d)
    lines = [f"restriction to Q(sqrt({d})): (Z/2)^{r.source.quotient_dim} -> (Z/2)^{r.target.quotient_dim}",
             f"surjective: {str(r.surjective).lower()}", f"injective: {str(r.injective).lower()}"]
    if "classification" in rep:
        lines.append(f"classification: {rep['classification']}")
    return rep, "\n".join(lines), 0


def cmd_critical(args):
    X = load_surface(args.file)
    crit = sorted(critical_extensions_four_fibers(X))
    return {"critical": crit}, "critical quadratic fields: " + (", ".join(f"Q(sqrt({d}))" for d in crit) or "none"), 0


def cmd_problematic(args):
    X = load_surface(args.file)
    M = sorted(problematic_set_M(X))
    return {"problematic": M}, "problematic quadratic fields: " + (", ".join(f"Q(sqrt({d}))" for d in M) or "none"), 0


def cmd_local(args):
    X = load_surface(args.file)
    if X.kind != "chatelet":
        raise UsageError("local solvability is implemented for Chatelet surfaces")
    v = Place.coerce(args.place)
    d = _ext(args)
    if d is not None and splitting_type(d, v) != "split":
        rep = {"place": str(v), "field": f"Q(sqrt({d}))", "solvable": True, "witness": "inf",
               "note": "non-split: every conic has points over the quadratic completion"}
        return rep, f"local points exist over Q(sqrt({d})) at places above {v} (non-split)", 0
    r = chatelet_local_solvable(X.a, X.c, X.f, v, args.max_depth)
    rep = r.to_json()
    rep["field"] = "Q" if d is None else f"Q(sqrt({d}))"
    if r.solvable:
        text = f"local points exist\nplace: {v}\nwitness t = {rep['witness']}"
    else:
        text = f"no local points\nplace: {v}"
    return rep, text, 0


def cmd_obstruction(args):
    X = load_surface(args.file)
    d = _ext(args, required=True)
    r = bm_obstruction_quadratic(X, d, args.max_depth, args.precision)
    rep = r.to_json()
    lines = [f"result: {r.result}", f"reason: {r.reason}"]
    if r.generator:
        lines.append(f"generator: {r.generator}")
    for p in r.places:
        lines.append(f"  {p.place}: {{{', '.join(str(x) for x in sorted(p.value_set, key=lambda x: x.half))}}}")
    if r.places:
        lines.append(f"total: {{{', '.join(rep['total'])}}}")
    return rep, "\n".join(lines), 2 if r.limit_reached else 0


def cmd_parity(args):
    val = parity_criterion(_arg_rational(args.a), _arg_rational(args.c), args.disc)
    return {"value": str(val)}, str(val), 0


def cmd_hilbert(args):
    val = hilbert_symbol(_arg_rational(args.a), _arg_rational(args.b), Place.coerce(args.place))
    return {"value": str(val)}, str(val), 0


def _arg_rational(text):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a canonical JSON report")
    common.add_argument("--precision", type=int, default=DEFAULT_PRECISION, help="p-adic digits")
    common.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH, help="disc subdivision cap")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized factoring steps")
    parser = _Parser(prog="conic-bundles", description="Arithmetic of conic bundle surfaces over Q.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def surface_cmd(name, func, help_text, ext=False, ext_required=False):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("file", help="surface description (JSON)")
        if ext:
            p.add_argument("--ext", type=int, required=ext_required, help="d for L = Q(sqrt d)")
        p.set_defaults(func=func)
        return p

    surface_cmd("analyze", cmd_analyze, "Hasse-principle verdict", ext=True)
    surface_cmd("brauer", cmd_brauer, "Brauer quotient Br(X)/Br_0(X)", ext=True)
    surface_cmd("restriction", cmd_restriction, "restriction map to Q(sqrt d)", ext=True, ext_required=True)
    surface_cmd("critical", cmd_critical, "critical quadratic fields (four fibers)")
    surface_cmd("problematic", cmd_problematic, "problematic quadratic fields M")
    p = surface_cmd("local", cmd_local, "local solvability at one place", ext=True)
    p.add_argument("--place", required=True, help="a prime or 'real'")
    surface_cmd("obstruction", cmd_obstruction, "Brauer-Manin obstruction over Q(sqrt d)",
                ext=True, ext_required=True)
    p = sub.add_parser("parity", parents=[common], help="parity criterion for (a, c) and Q(sqrt d)")
    p.add_argument("--a", required=True)
    p.add_argument("--c", required=True)
    p.add_argument("--disc", type=int, required=True)
    p.set_defaults(func=cmd_parity)
    p = sub.add_parser("hilbert", parents=[common], help="Hilbert symbol (a, b)_v")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--place", required=True)
    p.set_defaults(func=cmd_hilbert)
    return parser


def render_json(report) -> str:
    return json.dumps(report, sort_keys=True, indent=2)


def run_command(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors (and --help) this way
        return exc.code if isinstance(exc.code, int) else 1
    set_seed(args.seed)
    try:
        report, text, code = args.func(args)
    except ParseError as exc:
        if args.json:
            out.write(render_json({"error": exc.code, "path": exc.path, "message": exc.message}) + "\n")
        err.write(f"error: {exc}\n")
        return 1
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 1
    except ComputationLimitError as exc:
        err.write(f"computation limit reached: {exc}\n")
        return 2
    except ConicBundleError as exc:
        err.write(f"error: {exc}\n")
        return 1
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return 1
    out.write((render_json(report) if args.json else text) + "\n")
    return code


def main(argv=None) -> int:
    return run_command(argv)


if __name__ == "__main__":
    sys.exit(main())
