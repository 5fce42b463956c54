"""Square-free polynomials over Z or GF(2) and the Stanley-Reisner face ring.

A reduced polynomial is its own representative in the polynomial ring: its
terms simply avoid the non-faces of the complex, so there is no separate
quotient type.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from toricalg.complex import SimplicialComplex, indices, mask_of, popcount
from toricalg.linalg import checked


class Ring(enum.Enum):
    INTEGERS = "Z"
    GF2 = "F2"

    @classmethod
    def parse(cls, text: str) -> Ring:
        key = text.strip().lower()
        if key in ("z", "int", "integers"):
            return cls.INTEGERS
        if key in ("f2", "gf2", "z2", "mod2"):
            return cls.GF2
        raise ValueError(f"unknown ring {text!r}")

    def normalize(self, c: int) -> int:
        return c & 1 if self is Ring.GF2 else checked(c)


class NotNicePolynomial(ValueError):
    pass


def _accumulate(ring: Ring, pairs: Iterable[tuple[int, int]]) -> dict[int, int]:
    acc: dict[int, int] = {}
    for mask, c in pairs:
        acc[mask] = ring.normalize(acc.get(mask, 0) + c)
    return {mask: c for mask, c in acc.items() if c}


def format_terms(terms: Mapping[int, int], sep: str = "") -> str:
    """Canonical text: terms by ascending mask, ``x<i>`` ascending within a term."""
    if not terms:
        return "0"
    parts = []
    for n, mask in enumerate(sorted(terms)):
        c = terms[mask]
        mono = sep.join(f"x{i}" for i in indices(mask))
        mag = abs(c)
        if not mono:
            body = str(mag)
        else:
            body = mono if mag == 1 else f"{mag}{mono}"
        if n == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


_TERM = re.compile(r"([+-])?\s*(\d*)\s*((?:x\d+\s*\*?\s*)*)")


def parse_terms(text: str) -> list[tuple[int, list[int]]]:
    """Parse ``x1x2 - 2x3 + 1`` style text into (coefficient, variables) pairs."""
    s = text.replace(" ", "")
    if s in ("", "0"):
        return []
    out = []
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at {s[pos:]!r}")
        sign, coef, mono = m.groups()
        if not coef and not mono:
            raise ValueError(f"empty term at {s[pos:]!r}")
        c = int(coef) if coef else 1
        if sign == "-":
            c = -c
        variables = [int(v) for v in re.findall(r"x(\d+)", mono)]
        out.append((c, variables))
        pos = m.end()
    return out


@dataclass(frozen=True, eq=True)
class SquareFreePolynomial:
    ring: Ring
    num_vars: int
    terms: Mapping[int, int]

    def __post_init__(self) -> None:
        full = (1 << self.num_vars) - 1
        for mask, c in self.terms.items():
            if c == 0:
                raise ValueError("zero coefficient stored")
            if mask & ~full:
                raise ValueError(f"support {indices(mask)} exceeds {self.num_vars} variables")
            if self.ring is Ring.GF2 and c != 1:
                raise ValueError("GF(2) coefficients must be 1")

    __hash__ = None  # type: ignore[assignment]

    @classmethod
    def from_terms(
        cls, ring: Ring, num_vars: int, pairs: Iterable[tuple[int, int]]
    ) -> SquareFreePolynomial:
        """Sum (mask, coefficient) pairs, dropping whatever cancels."""
        return cls(ring, num_vars, _accumulate(ring, pairs))

    @classmethod
    def from_monomials(
        cls, ring: Ring, num_vars: int, monomials: Iterable[Iterable[int]], coef: int = 1
    ) -> SquareFreePolynomial:
        return cls.from_terms(ring, num_vars, ((mask_of(mono), coef) for mono in monomials))

    @classmethod
    def parse(cls, text: str, num_vars: int, ring: Ring = Ring.INTEGERS) -> SquareFreePolynomial:
        pairs = []
        for c, variables in parse_terms(text):
            if len(set(variables)) != len(variables):
                raise ValueError(f"term {variables} is not square-free")
            pairs.append((mask_of(variables), c))
        return cls.from_terms(ring, num_vars, pairs)

    @classmethod
    def zero(cls, ring: Ring, num_vars: int) -> SquareFreePolynomial:
        return cls(ring, num_vars, {})

    @classmethod
    def one(cls, ring: Ring, num_vars: int) -> SquareFreePolynomial:
        return cls(ring, num_vars, {0: 1})

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {popcount(mask) for mask in self.terms}

    def __add__(self, other: SquareFreePolynomial) -> SquareFreePolynomial:
        _check_compatible(self, other)
        return SquareFreePolynomial.from_terms(
            self.ring, self.num_vars, [*self.terms.items(), *other.terms.items()]
        )

    def scale(self, c: int) -> SquareFreePolynomial:
        return SquareFreePolynomial.from_terms(
            self.ring, self.num_vars, ((mask, c * v) for mask, v in self.terms.items())
        )

    def __str__(self) -> str:
        return format_terms(self.terms)


def _check_compatible(f, g) -> None:
    if f.ring is not g.ring:
        raise ValueError(f"ring mismatch: {f.ring.value} vs {g.ring.value}")
    if f.num_vars != g.num_vars:
        raise ValueError(f"variable count mismatch: {f.num_vars} vs {g.num_vars}")


@dataclass(frozen=True)
class LinearForm:
    ring: Ring
    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.ring is Ring.GF2 and any(c not in (0, 1) for c in self.coefficients):
            raise ValueError("GF(2) linear form needs 0/1 coefficients")

    @classmethod
    def of(cls, ring: Ring, coefficients: Sequence[int]) -> LinearForm:
        if ring is Ring.GF2:
            coefficients = [c & 1 for c in coefficients]
        return cls(ring, tuple(coefficients))

    @property
    def num_vars(self) -> int:
        return len(self.coefficients)

    def to_polynomial(self) -> SquareFreePolynomial:
        return SquareFreePolynomial.from_terms(
            self.ring, self.num_vars, ((1 << j, c) for j, c in enumerate(self.coefficients))
        )

    def __str__(self) -> str:
        return str(self.to_polynomial())


def _check_complex(f: SquareFreePolynomial, k: SimplicialComplex) -> None:
    if f.num_vars != k.num_vertices:
        raise ValueError(
            f"polynomial has {f.num_vars} variables but complex has {k.num_vertices} vertices"
        )


def reduce_mod_ideal(f: SquareFreePolynomial, k: SimplicialComplex) -> SquareFreePolynomial:
    """Drop every term whose support is a non-face of ``k``."""
    _check_complex(f, k)
    return SquareFreePolynomial(
        f.ring, f.num_vars, {mask: c for mask, c in f.terms.items() if mask == 0 or k.is_face(mask)}
    )


def sigma(k: SimplicialComplex, i: int, ring: Ring = Ring.INTEGERS) -> SquareFreePolynomial:
    """Degree-``i`` elementary symmetric polynomial of the face ring of ``k``."""
    if not 1 <= i <= k.dim + 1:
        raise ValueError(f"degree {i} outside 1..{k.dim + 1}")
    return SquareFreePolynomial(ring, k.num_vertices, {f: 1 for f in k.faces_of_size(i)})


def multiply_mod_ideal(
    f: SquareFreePolynomial, g: SquareFreePolynomial, k: SimplicialComplex | None = None
) -> SquareFreePolynomial:
    """Product where repeated variables vanish and, given ``k``, non-face terms too."""
    _check_compatible(f, g)
    if k is not None:
        _check_complex(f, k)
    pairs = []
    for a, ca in f.terms.items():
        for b, cb in g.terms.items():
            if a & b:
                continue
            s = a | b
            if k is not None and s and not k.is_face(s):
                continue
            pairs.append((s, ca * cb))
    return SquareFreePolynomial.from_terms(f.ring, f.num_vars, pairs)


def product_mod_ideal(
    factors: Iterable[SquareFreePolynomial], k: SimplicialComplex, ring: Ring | None = None
) -> SquareFreePolynomial:
    factors = list(factors)
    result = SquareFreePolynomial.one(ring or factors[0].ring, k.num_vertices)
    for f in factors:
        result = multiply_mod_ideal(result, f, k)
    return result


def polynomial_of_complex(k: SimplicialComplex, ring: Ring = Ring.INTEGERS) -> SquareFreePolynomial:
    """Sum of the monomials of the maximal faces."""
    return SquareFreePolynomial(ring, k.num_vertices, {f: 1 for f in k.maximal_faces})


def nice_problems(f: SquareFreePolynomial) -> list[str]:
    problems = []
    bad = sorted(mask for mask, c in f.terms.items() if c != 1)
    if bad:
        problems.append("coefficients other than 1 on " + ", ".join(format_terms({b: 1}) for b in bad))
    if 0 in f.terms:
        problems.append("constant term present")
    supports = sorted(f.terms, key=popcount)
    for i, a in enumerate(supports):
        for b in supports[i + 1 :]:
            if a and a & b == a:
                problems.append(f"{format_terms({a: 1})} divides {format_terms({b: 1})}")
    if f.is_zero():
        problems.append("zero polynomial")
    return problems


def complex_of_nice_polynomial(f: SquareFreePolynomial) -> SimplicialComplex:
    problems = nice_problems(f)
    if problems:
        raise NotNicePolynomial("; ".join(problems))
    return SimplicialComplex(f.num_vars, frozenset(f.terms))


def elementary_symmetric(
    lambdas: Sequence[SquareFreePolynomial], up_to: int, k: SimplicialComplex
) -> list[SquareFreePolynomial]:
    """``[e_0, ..., e_up_to]`` of the given elements, computed in the face ring of ``k``."""
    ring = lambdas[0].ring
    e = [SquareFreePolynomial.one(ring, k.num_vertices)]
    e += [SquareFreePolynomial.zero(ring, k.num_vertices) for _ in range(up_to)]
    for lam in lambdas:
        for i in range(up_to, 0, -1):
            e[i] = e[i] + multiply_mod_ideal(e[i - 1], lam, k)
    return e


def verify_symmetric_identity(
    k: SimplicialComplex, lambdas: Sequence[LinearForm], up_to: int
) -> dict[int, bool]:
    """For each degree ``i <= up_to``, whether sigma_i(lambda_1..lambda_l) equals sigma(k, i)."""
    if not lambdas:
        raise ValueError("need at least one linear form")
    ring = lambdas[0].ring
    for lam in lambdas:
        if lam.ring is not ring:
            raise ValueError("linear forms over different rings")
        if lam.num_vars != k.num_vertices:
            raise ValueError(f"linear form has {lam.num_vars} coefficients, expected {k.num_vertices}")
    polys = [lam.to_polynomial() for lam in lambdas]
    e = elementary_symmetric(polys, up_to, k)
    return {i: e[i] == sigma(k, i, ring) for i in range(1, up_to + 1)}


def monomials_of_degree(m: int, i: int) -> list[int]:
    return [mask_of(c) for c in combinations(range(1, m + 1), i)]
