"""Polytope documents, matrix files and the built-in polytope library.

Polytope document::

    # comment
    polytope prism n=3 m=5
    facets F1 F2 F3 F4 F5        (optional)
    v 1 2 3
    v 1 2 4
    ...

Matrix file: first line ``<ring> <k> <m>`` (ring ``Z`` or ``F2``), then k rows
of m integers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations, product
from pathlib import Path

from toricalg.charfun import CharMatrix
from toricalg.complex import SimplePolytope, validate_polytope
from toricalg.cyclic import cyclic_dual_polytope
from toricalg.facering import Ring


class DocumentError(ValueError):
    def __init__(self, errors: list[str]):
        super().__init__("\n".join(errors))
        self.errors = errors


@dataclass(frozen=True)
class PolytopeDocument:
    name: str
    n: int
    m: int
    vertices: tuple[tuple[int, ...], ...]
    facet_names: tuple[str, ...] | None = None

    def polytope(self) -> SimplePolytope:
        return SimplePolytope.from_lists(self.n, self.m, self.vertices)

    @classmethod
    def of(cls, name: str, p: SimplePolytope) -> PolytopeDocument:
        return cls(name, p.n, p.m, tuple(tuple(sorted(v)) for v in p.vertices))


_HEADER = re.compile(r"^polytope\s+(\S+)\s+n=(\d+)\s+m=(\d+)$")


def parse_document(text: str) -> PolytopeDocument:
    errors = []
    header = None
    names = None
    vertices: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            match = _HEADER.match(line)
            if not match:
                errors.append(f"line {lineno}: expected 'polytope <name> n=<n> m=<m>'")
                break
            header = (match.group(1), int(match.group(2)), int(match.group(3)))
            continue
        word, *rest = line.split()
        if word == "facets":
            if names is not None:
                errors.append(f"line {lineno}: duplicate facets line")
            names = tuple(rest)
        elif word == "v":
            try:
                vertices.append(tuple(int(x) for x in rest))
            except ValueError:
                errors.append(f"line {lineno}: vertex entries must be integers")
        else:
            errors.append(f"line {lineno}: unknown record {word!r}")
    if header is None and not errors:
        errors.append("line 1: missing 'polytope' header")
    if errors:
        raise DocumentError(errors)
    name, n, m = header
    if names is not None and len(names) != m:
        errors.append(f"facets line names {len(names)} facets, expected {m}")
    if errors:
        raise DocumentError(errors)
    return PolytopeDocument(name, n, m, tuple(vertices), names)


def serialize_document(doc: PolytopeDocument) -> str:
    lines = [f"polytope {doc.name} n={doc.n} m={doc.m}"]
    if doc.facet_names is not None:
        lines.append("facets " + " ".join(doc.facet_names))
    lines += ["v " + " ".join(str(i) for i in v) for v in doc.vertices]
    return "\n".join(lines) + "\n"


def parse_polytope(text: str) -> SimplePolytope:
    """Parse and validate a polytope document."""
    doc = parse_document(text)
    p = doc.polytope()
    problems = validate_polytope(p)
    if problems:
        raise DocumentError(problems)
    return p


def simplex(n: int) -> SimplePolytope:
    return SimplePolytope.from_lists(n, n + 1, combinations(range(1, n + 2), n))


def cube(n: int) -> SimplePolytope:
    """Facet i is opposite facet i + n."""
    return SimplePolytope.from_lists(
        n, 2 * n, (tuple(i + n * s for i, s in enumerate(bits, 1)) for bits in product((0, 1), repeat=n))
    )


def polygon(m: int) -> SimplePolytope:
    if m < 3:
        raise ValueError(f"a polygon needs at least 3 edges, got {m}")
    return SimplePolytope.from_lists(2, m, ((i, i % m + 1) for i in range(1, m + 1)))


PRISM = SimplePolytope.from_lists(
    3, 5, [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 5), (2, 4, 5), (3, 4, 5)]
)

# prism with one vertex truncated; facet 6 is the new triangle
CUT_PRISM = SimplePolytope.from_lists(
    3,
    6,
    [(1, 2, 3), (1, 2, 4), (1, 3, 6), (1, 4, 6), (3, 4, 6), (2, 3, 5), (2, 4, 5), (3, 4, 5)],
)


def builtin(spec: str) -> SimplePolytope:
    """Resolve ``simplex:n``, ``cube:n``, ``prism``, ``cutprism``, ``square``,
    ``polygon:m`` or ``cyclic:n:m``."""
    name, *args = spec.split(":")
    try:
        nums = [int(a) for a in args]
    except ValueError:
        raise ValueError(f"bad parameters in {spec!r}") from None
    table = {
        ("prism", 0): lambda: PRISM,
        ("cutprism", 0): lambda: CUT_PRISM,
        ("square", 0): lambda: polygon(4),
        ("cube", 0): lambda: cube(3),
        ("cube", 1): lambda: cube(nums[0]),
        ("simplex", 1): lambda: simplex(nums[0]),
        ("polygon", 1): lambda: polygon(nums[0]),
        ("cyclic", 2): lambda: cyclic_dual_polytope(nums[0], nums[1]),
    }
    make = table.get((name, len(nums)))
    if make is None:
        raise ValueError(f"unknown built-in polytope {spec!r}")
    return make()


def load_polytope(source: str) -> SimplePolytope:
    """A built-in name or a path to a polytope document."""
    path = Path(source)
    if path.is_file():
        return parse_polytope(path.read_text())
    return builtin(source)


def parse_matrix(text: str) -> CharMatrix:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise DocumentError(["empty matrix file"])
    head = lines[0].split()
    if len(head) != 3:
        raise DocumentError(["line 1: expected '<ring> <k> <m>'"])
    try:
        ring = Ring.parse(head[0])
        k, m = int(head[1]), int(head[2])
        rows = [[int(x) for x in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise DocumentError([str(exc)]) from None
    errors = []
    if len(rows) != k:
        errors.append(f"expected {k} rows, found {len(rows)}")
    errors += [f"row {i}: expected {m} entries, found {len(r)}" for i, r in enumerate(rows, 1) if len(r) != m]
    if errors:
        raise DocumentError(errors)
    try:
        return CharMatrix.from_rows(ring, rows)
    except ValueError as exc:
        raise DocumentError([str(exc)]) from None


def format_matrix(L: CharMatrix) -> str:
    return str(L) + "\n"
