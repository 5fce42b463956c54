"""Command-line front end.

Exit codes: 0 decided/verified, 1 negative verdict, 2 unknown within the
integer search bound, 3 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path
from typing import Any

from toricalg.charfun import (
    DEFAULT_BOUND,
    CharMatrix,
    almost_complex_check,
    buchstaber_decision,
    is_characteristic,
    orientation_from_lambda,
    sigma_equals_wedge,
    verify_sigma_factorization_gf2,
)
from toricalg.complex import (
    Orientation,
    SimplePolytope,
    boundary_complex,
    coherent_orientation,
    expand,
    mask_of,
)
from toricalg.cyclic import cyclic_dual_polytope
from toricalg.decompose import (
    check_certificate_identities,
    color,
    coloring_problems,
    is_product_polytope,
    joswig_check,
)
from toricalg.exterior import wedge_linear_forms
from toricalg.facering import (
    Ring,
    SquareFreePolynomial,
    polynomial_of_complex,
    product_mod_ideal,
    sigma,
)
from toricalg.formats import PolytopeDocument, load_polytope, parse_matrix, serialize_document

EXIT_OK, EXIT_NO, EXIT_UNKNOWN, EXIT_ERROR = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse's own exit code 2 means "unknown" here
        raise UsageError(message)


def _threads() -> int:
    raw = os.environ.get("TORICALG_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"TORICALG_THREADS must be an integer, got {raw!r}") from None


def _braces(vertices) -> str:
    return "{" + ",".join(str(v) for v in vertices) + "}"


def _matrix_rows(L: CharMatrix) -> list[list[int]]:
    return [list(r) for r in L.rows]


def _orientation_text(o: Orientation) -> list[str]:
    return ["<" + ",".join(str(v) for v in s) + ">" for s in o.oriented_simplices()]


def _header(name: str, p: SimplePolytope) -> dict[str, Any]:
    return {"polytope": name, "n": p.n, "m": p.m, "vertices": len(p.vertices)}


def cmd_sigma(args, p: SimplePolytope) -> tuple[dict, int]:
    k = boundary_complex(p)
    degree = args.degree or p.n
    return {"degree": degree, "sigma": str(sigma(k, degree))}, EXIT_OK


def cmd_decompose(args, p: SimplePolytope) -> tuple[dict, int]:
    k = boundary_complex(p)
    verdict = is_product_polytope(p)
    sig = sigma(k, p.n)
    lifted = [_lift(polynomial_of_complex(f.complex), f.vertices, p.m) for f in verdict.factors]
    product = product_mod_ideal(lifted, k)
    if product != sig:
        raise AssertionError("factor product does not reproduce sigma_n")
    report = {
        "sigma": str(sig),
        "verdict": "product" if verdict.is_product else "indecomposable",
        "factors": " | ".join(_braces(f.vertices) for f in verdict.factors),
        "factorization": "".join(f"({f})" for f in lifted),
        "product_matches_sigma": True,
    }
    return report, EXIT_OK


def _lift(f: SquareFreePolynomial, vertices: tuple[int, ...], m: int) -> SquareFreePolynomial:
    """Move a factor polynomial back onto the original facet labels."""
    support = mask_of(vertices)
    return SquareFreePolynomial.from_terms(f.ring, m, ((expand(t, support), c) for t, c in f.terms.items()))


def cmd_color(args, p: SimplePolytope) -> tuple[dict, int]:
    top = args.colors or p.n
    if top < p.n:
        raise UsageError(f"--colors must be at least n = {p.n}")
    table = {}
    last = None
    for l in range(p.n, top + 1):
        cert = color(p, l)
        if cert is not None:
            if coloring_problems(p, cert) or not check_certificate_identities(p, cert):
                raise AssertionError(f"{l}-coloring certificate failed re-verification")
            table[str(l)] = " | ".join(_braces(c) for c in cert.classes())
        else:
            table[str(l)] = "none"
        last = cert
    report: dict[str, Any] = {"colorings": table}
    if p.n >= 2:
        report["even_two_faces"] = joswig_check(p)
    return report, EXIT_OK if last is not None else EXIT_NO


def _verify_integer(p, L, o) -> None:
    if not is_characteristic(p, L) or not sigma_equals_wedge(p, L, o):
        raise AssertionError("integer certificate failed re-verification")


def cmd_buchstaber(args, p: SimplePolytope) -> tuple[dict, int]:
    field = Ring.parse(args.field)
    verdict = buchstaber_decision(p, field, args.bound, _threads())
    report: dict[str, Any] = {
        "field": field.value,
        "s_equals_m_minus_n": verdict.status,
        "reason": verdict.reason,
        "search_nodes": verdict.search.nodes,
        "search_leaves": verdict.search.leaves,
    }
    if field is Ring.INTEGERS:
        report["bound"] = args.bound
    if verdict.matrix is not None:
        if not is_characteristic(p, verdict.matrix):
            raise AssertionError("certificate matrix failed re-verification")
        if verdict.orientation is not None:
            _verify_integer(p, verdict.matrix, verdict.orientation)
            report["orientation"] = _orientation_text(verdict.orientation)
        report["matrix"] = _matrix_rows(verdict.matrix)
    code = {"yes": EXIT_OK, "no": EXIT_NO, "unknown": EXIT_UNKNOWN}[verdict.status]
    return report, code


def _load_matrix(args) -> CharMatrix:
    if not args.matrix:
        raise UsageError("--matrix FILE is required")
    return parse_matrix(Path(args.matrix).read_text())


def cmd_acs(args, p: SimplePolytope) -> tuple[dict, int]:
    L = _load_matrix(args)
    k = boundary_complex(p)
    cycle = almost_complex_check(p, L)
    o = orientation_from_lambda(p, L)
    _verify_integer(p, L, o)
    wedge = wedge_linear_forms(L.lambdas(), k)
    report = {
        "wedge": str(wedge),
        "wedge_in_sphere_orientation": {
            "<" + ",".join(map(str, s)) + ">": c
            for s, c in wedge.in_orientation(coherent_orientation(k)).items()
        },
        "cycle": cycle,
        "orientation": _orientation_text(o),
    }
    return report, EXIT_OK if cycle else EXIT_NO


def cmd_verify_char(args, p: SimplePolytope) -> tuple[dict, int]:
    L = _load_matrix(args)
    result = is_characteristic(p, L)
    report: dict[str, Any] = {
        "ring": L.ring.value,
        "characteristic": result.ok,
        "failing_vertices": [_braces(v) for v in result.failing],
    }
    if result.ok and L.k == p.n:
        if L.ring is Ring.GF2:
            report["sigma_factorization"] = verify_sigma_factorization_gf2(p, L)
        else:
            o = orientation_from_lambda(p, L)
            _verify_integer(p, L, o)
            report["orientation"] = _orientation_text(o)
            report["sigma_equals_wedge"] = True
    return report, EXIT_OK if result.ok else EXIT_NO


def cmd_cyclic(args) -> tuple[dict, int]:
    p = cyclic_dual_polytope(args.n, args.m)
    doc = PolytopeDocument.of(f"cyclic:{args.n}:{args.m}", p)
    return {
        "polytope": doc.name,
        "n": p.n,
        "m": p.m,
        "vertices": len(p.vertices),
        "document": serialize_document(doc).rstrip("\n").split("\n"),
    }, EXIT_OK


COMMANDS = {
    "sigma": cmd_sigma,
    "decompose": cmd_decompose,
    "color": cmd_color,
    "buchstaber": cmd_buchstaber,
    "acs": cmd_acs,
    "verify-char": cmd_verify_char,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="toricalg", description="Face-ring decisions for simple polytopes.")
    parser.add_argument("--json", action="store_true", help="emit one JSON object")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def poly(name: str, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.add_argument("polytope", help="built-in name (prism, cube:3, cyclic:4:7, ...) or document path")
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        return sp

    poly("sigma", "elementary symmetric polynomial of K_P").add_argument("--degree", type=int)
    poly("decompose", "product decomposition")
    poly("color", "colorability table").add_argument("--colors", type=int, help="largest color count")
    sp = poly("buchstaber", "decide s(P) = m - n")
    sp.add_argument("--field", default="f2", choices=["f2", "z"])
    sp.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    poly("acs", "invariant almost complex structure test").add_argument("--matrix")
    poly("verify-char", "check a characteristic matrix").add_argument("--matrix")
    sp = sub.add_parser("cyclic", help="dual of the cyclic polytope C^n(m)")
    sp.add_argument("n", type=int)
    sp.add_argument("m", type=int)
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    return parser


def _render_text(report: dict[str, Any]) -> str:
    lines = []
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(f"{key}:")
            lines += [f"  {k}: {_scalar(v)}" for k, v in value.items()]
        elif isinstance(value, list) and value and isinstance(value[0], (list, str)):
            lines.append(f"{key}:")
            lines += [f"  {_scalar(v)}" for v in value]
        else:
            lines.append(f"{key}: {_scalar(value)}")
    return "\n".join(lines) + "\n"


def _scalar(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return " ".join(str(x) for x in v)
    return str(v)


def run_command(argv: list[str]) -> tuple[int, str]:
    """Run one command; returns (exit code, report text)."""
    start = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        if args.command == "cyclic":
            body, code = cmd_cyclic(args)
            report = body
        else:
            p = load_polytope(args.polytope)
            body, code = COMMANDS[args.command](args, p)
            report = {**_header(args.polytope, p), **body}
    except (UsageError, ValueError, OSError) as exc:
        return EXIT_ERROR, f"error: {exc}\n"
    report["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    if getattr(args, "json", False):
        return code, json.dumps(report) + "\n"
    return code, _render_text(report)


def main(argv: list[str] | None = None) -> int:
    code, text = run_command(sys.argv[1:] if argv is None else argv)
    (sys.stderr if code == EXIT_ERROR else sys.stdout).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
