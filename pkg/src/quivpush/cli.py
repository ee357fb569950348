"""Command-line surface: classify, pushout, union, verify, eval, proptest.

Every command prints a deterministic JSON certificate (command echo, input
digests, per-check verdicts with witnesses) so reruns on identical inputs
are byte identical.  Exit codes: 0 pass, 1 check failed, 2 parse error,
3 precondition refused.
"""

from __future__ import annotations

import argparse
import os
import re
import sys

from .fields import QQ, FieldError, field_from_name
from .graph import (Graph, GraphError, IncompatibleOverlap, Path,
                    intersection_graph, union_graph, validate_graph)
from .morphism import (GraphHom, HomError, classify_hom, is_admissible,
                       validate_hom)
from .pushout import (PreconditionError, check_theorem_preconditions,
                      path_pushout_compare, pushout_square)
from .path_algebra import PAElement, pa_unit, verify_path_pullback
from .leavitt import (l_unit, normal_form, verify_leavitt_pullback,
                      vertex_monomial, monomial_element)
from .proptest import SUITES, run_suite
from . import jsonio

VERSION = "quivpush 0.1.0"

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_REFUSED = 3


class Certificate:
    def __init__(self, argv):
        self.obj = {"version": VERSION, "command": list(argv),
                    "inputs": [], "params": {}, "checks": []}

    def add_input(self, path):
        self.obj["inputs"].append({"path": path, "sha256": jsonio.file_digest(path)})

    def param(self, key, value):
        self.obj["params"][key] = value

    def check(self, name, ok, **extra):
        entry = {"name": name, "ok": bool(ok)}
        entry.update(extra)
        self.obj["checks"].append(entry)
        return ok

    def extra(self, key, value):
        self.obj[key] = value

    def finish(self, stream=None):
        self.obj["ok"] = all(c["ok"] for c in self.obj["checks"])
        (stream or sys.stdout).write(jsonio.canonical_dumps(self.obj))
        return EXIT_OK if self.obj["ok"] else EXIT_CHECK_FAILED


_TOKEN = re.compile(r"\s*(chi\[[^\]]*\]|\d+(?:/\d+)?|[+\-*])\s*")


class ExprError(ValueError):
    pass


def _tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExprError(f"bad token at column {pos + 1}: {text[pos:pos + 10]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


def _parse_component(comp, g: Graph):
    ghost = comp.endswith("*")
    name = comp[:-1] if ghost else comp
    if not name:
        raise ExprError("empty id inside chi[...]")
    return name, ghost


def parse_element(text, g: Graph, field=QQ, leavitt=False):
    """Parse a linear combination like '3/2*chi[e1.e2] - chi[v]'.

    Ghost markers (chi[e*]) force Leavitt mode; bare coefficients multiply
    the unit.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ExprError("empty expression")
    atoms = []   # (sign, coef-string or None, chi-literal or None)
    i = 0
    while i < len(tokens):
        sign = 1
        while i < len(tokens) and tokens[i] in "+-":
            if tokens[i] == "-":
                sign = -sign
            i += 1
        coef = None
        if i < len(tokens) and re.fullmatch(r"\d+(?:/\d+)?", tokens[i]):
            coef = tokens[i]
            i += 1
            if i < len(tokens) and tokens[i] == "*":
                i += 1
        chi = None
        if i < len(tokens) and tokens[i].startswith("chi["):
            chi = tokens[i][4:-1]
            i += 1
        if coef is None and chi is None:
            raise ExprError("expected a coefficient or chi[...] term")
        atoms.append((sign, coef, chi))
    if any(chi and "*" in chi for _, _, chi in atoms):
        leavitt = True

    def term_element(sign, coef, chi):
        scalar = field.one if coef is None else field.parse(coef)
        if sign < 0:
            scalar = -scalar
        if chi is None:
            unit = l_unit(g, field) if leavitt else pa_unit(g, field)
            return unit.scale(scalar)
        comps = [c for c in chi.split(".") if c]
        if not comps:
            raise ExprError("empty chi[...]")
        parsed = [_parse_component(c, g) for c in comps]
        if len(parsed) == 1 and not parsed[0][1]:
            name = parsed[0][0]
            if name in g.vertices and name in g.edges:
                raise ExprError(f"id {name!r} is both a vertex and an edge; "
                                "qualify it with an edge path")
            if name in g.vertices:
                if leavitt:
                    return monomial_element(g, vertex_monomial(name), field, scalar)
                return PAElement(g, field, {Path.at(name): scalar})
        for name, _ in parsed:
            if name not in g.edges:
                if name in g.vertices:
                    raise ExprError(f"vertex {name!r} cannot appear inside an edge path")
                raise ExprError(f"unknown edge {name!r}")
        if leavitt:
            letters = [name + "*" if ghost else name for name, ghost in parsed]
            return normal_form(g, letters, scalar, field)
        edges = [name for name, _ in parsed]
        return PAElement(g, field, {Path.of(edges): scalar})

    total = None
    for sign, coef, chi in atoms:
        elem = term_element(sign, coef, chi)
        total = elem if total is None else total + elem
    return total, leavitt


def element_literal(elem) -> str:
    if elem.is_zero():
        return "0"
    parts = []
    for mono, c in elem.sorted_terms():
        parts.append(f"{c}*chi[{mono}]")
    return " + ".join(parts)


def _load_hom_checked(cert, path) -> GraphHom:
    cert.add_input(path)
    h = jsonio.load_hom(path)
    for side, graph in (("domain", h.domain), ("codomain", h.codomain)):
        problems = validate_graph(graph)
        if problems:
            raise jsonio.FormatError(f"{side} graph invalid: {'; '.join(problems)}", path)
    return h


def cmd_classify(args, argv):
    cert = Certificate(argv)
    h = _load_hom_checked(cert, args.hom)
    problems = validate_hom(h)
    cert.check("valid_hom", not problems, violations=problems)
    if problems:
        return cert.finish()
    cls = classify_hom(h)
    cert.check("classification", True, injective=cls.injective,
               surjective=cls.surjective, proper=cls.proper,
               target_bijective=cls.target_bijective, regular=cls.regular,
               category=cls.category)
    if cls.injective:
        report = is_admissible(h)
        cert.check("admissible", True, admissible=report.admissible,
                   strongly=report.strongly,
                   witnesses={k: list(v) if isinstance(v, (list, tuple)) else v
                              for k, v in report.witnesses.items()})
    else:
        cert.check("admissible", True, admissible=False,
                   note="not injective; admissibility undefined")
    return cert.finish()


def cmd_pushout(args, argv):
    cert = Certificate(argv)
    f = _load_hom_checked(cert, args.left)
    g = _load_hom_checked(cert, args.right)
    if f.domain != g.domain:
        raise PreconditionError("shared-domain", "hom files must share their domain graph")
    po = pushout_square(f, g)
    flags = check_theorem_preconditions(f, g, po)
    cert.param("check_h", args.check_h)
    for name, value in flags.as_dict().items():
        cert.check(f"flag_{name}", True, value=value)
    report = path_pushout_compare(f, g, args.check_h, po)
    cert.check("h_bijective_up_to_N", True, value=report.bijective,
               injective=report.injective, surjective=report.surjective,
               missing=list(report.missing), collisions=list(report.collisions))
    obj = jsonio.pushout_to_obj(po)
    cert.extra("pushout", obj)
    if args.output:
        jsonio.save_json(args.output, obj)
        cert.param("output", args.output)
    return cert.finish()


def cmd_union(args, argv):
    cert = Certificate(argv)
    cert.add_input(args.left)
    cert.add_input(args.right)
    f_graph = jsonio.load_graph(args.left)
    g_graph = jsonio.load_graph(args.right)
    for path, graph in ((args.left, f_graph), (args.right, g_graph)):
        problems = validate_graph(graph)
        if problems:
            raise jsonio.FormatError("; ".join(problems), path)
    try:
        u = union_graph(f_graph, g_graph)
        inter = intersection_graph(f_graph, g_graph)
    except IncompatibleOverlap as exc:
        raise PreconditionError("compatible-overlap", str(exc))
    cert.extra("union", jsonio.graph_to_obj(u))
    cert.extra("intersection", jsonio.graph_to_obj(inter))
    for name, sub, sup in (("inter_in_left", inter, f_graph),
                           ("inter_in_right", inter, g_graph),
                           ("left_in_union", f_graph, u),
                           ("right_in_union", g_graph, u)):
        report = is_admissible(GraphHom.inclusion(sub, sup))
        cert.check(f"admissible_{name}", True, admissible=report.admissible,
                   strongly=report.strongly)
    if args.output:
        jsonio.save_json(args.output, jsonio.graph_to_obj(u))
        cert.param("output", args.output)
    return cert.finish()


def cmd_verify(args, argv):
    cert = Certificate(argv)
    f = _load_hom_checked(cert, args.left)
    g = _load_hom_checked(cert, args.right)
    field = field_from_name(args.field)
    cert.param("field", args.field)
    cert.param("max_degree", args.max_degree)
    if f.domain != g.domain:
        raise PreconditionError("shared-domain", "hom files must share their domain graph")
    if args.leavitt:
        report = verify_leavitt_pullback(f, g, args.max_degree, field)
        cert.check("kernel_intersection", report.kerint_ok)
        cert.check("surjectivity", report.surjectivity_ok)
        cert.check("kernel_correspondence", report.kernel_ok)
        cert.check("breakarrow", report.breakarrow_ok)
        cert.check("commutes", report.commutes_ok)
        cert.check("window_cross_check", report.window_consistent(),
                   excluded_columns=report.excluded_columns,
                   windows=[{"degree": w.degree, "dim_window": w.dim_window,
                             "dim_image": w.dim_image, "dim_fiber": w.dim_fiber,
                             "leakage": w.leakage} for w in report.window_checks])
        if report.failures:
            cert.extra("failures", [list(map(str, item)) for item in report.failures])
    else:
        report = verify_path_pullback(f, g, args.max_degree)
        cert.param("mode", "EXACT" if report.exact else f"TRUNCATED({args.max_degree})")
        for deg in report.degrees:
            cert.check(f"degree_{deg.degree}", deg.ok,
                       dim_pushout=deg.dim_pushout, dim_image=deg.dim_image,
                       dim_fiber=deg.dim_fiber, commutes=deg.commutes,
                       injective=deg.injective, surjective=deg.surjective)
    return cert.finish()


def cmd_eval(args, argv):
    cert = Certificate(argv)
    cert.add_input(args.graph)
    g = jsonio.load_graph(args.graph)
    problems = validate_graph(g)
    if problems:
        raise jsonio.FormatError("; ".join(problems), args.graph)
    field = field_from_name(args.field)
    cert.param("field", args.field)
    try:
        elem, leavitt = parse_element(args.expression, g, field, args.leavitt)
    except ExprError as exc:
        raise jsonio.FormatError(str(exc), "<expression>")
    cert.param("mode", "leavitt" if leavitt else "path-algebra")
    cert.check("evaluated", True, result=element_literal(elem),
               terms=len(elem.terms))
    return cert.finish()


def cmd_proptest(args, argv):
    if args.suite not in SUITES:
        print(f"unknown suite {args.suite!r}; choose from {sorted(SUITES)}",
              file=sys.stderr)
        return EXIT_PARSE
    seed = args.seed if args.seed is not None else int(os.environ.get("QP_SEED", "0"))
    lines = []
    passes, failures = run_suite(args.suite, seed, args.cases, emit=lines.append)
    for line in lines:
        print(line)
    print(f"suite {args.suite}: {passes}/{args.cases} passed (seed {seed})")
    return EXIT_OK if not failures else EXIT_CHECK_FAILED


def build_parser():
    parser = argparse.ArgumentParser(prog="quivpush",
                                     description="Exact graph-algebra pushout/pullback toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a homomorphism file")
    p.add_argument("hom")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("pushout", help="pushout of two homs with a shared domain")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--check-h", type=int, default=4, dest="check_h",
                   help="truncation for the path comparison map")
    p.add_argument("-o", "--output", default=None, help="write the pushout graph JSON here")
    p.set_defaults(func=cmd_pushout)

    p = sub.add_parser("union", help="union/intersection of two graph files")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("-o", "--output", default=None, help="write the union graph JSON here")
    p.set_defaults(func=cmd_union)

    p = sub.add_parser("verify", help="verify a pushout-to-pullback theorem instance")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--path", action="store_true")
    mode.add_argument("--leavitt", action="store_true")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--max-degree", type=int, default=4, dest="max_degree")
    p.add_argument("--field", default="q", help="'q' or 'fp:<prime>'")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("eval", help="evaluate an algebra element over a graph file")
    p.add_argument("graph")
    p.add_argument("expression")
    p.add_argument("--leavitt", action="store_true")
    p.add_argument("--field", default="q")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("proptest", help="run a seeded randomized suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--cases", type=int, default=100)
    p.set_defaults(func=cmd_proptest)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, argv)
    except jsonio.FormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FieldError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (GraphError, HomError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
