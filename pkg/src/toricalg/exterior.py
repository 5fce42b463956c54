"""Stanley-Reisner exterior face ring over Z (anticommutative) or GF(2).

Elements are stored in canonical form: each coefficient multiplies the
monomial whose factors appear in ascending vertex order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from toricalg.complex import Orientation, SimplicialComplex, indices, mask_of, permutation_sign, popcount
from toricalg.facering import LinearForm, Ring, SquareFreePolynomial, _accumulate, format_terms
from toricalg.linalg import det


@dataclass(frozen=True, eq=True)
class ExteriorElement:
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
    def from_terms(cls, ring: Ring, num_vars: int, pairs: Iterable[tuple[int, int]]) -> ExteriorElement:
        return cls(ring, num_vars, _accumulate(ring, pairs))

    @classmethod
    def from_oriented(
        cls, ring: Ring, num_vars: int, monomials: Iterable[tuple[int, Sequence[int]]]
    ) -> ExteriorElement:
        """From (coefficient, ordered factors) pairs, e.g. ``(1, (3, 2))`` for x3^x2.

        A monomial with a repeated factor is zero.
        """
        pairs = []
        for c, factors in monomials:
            seq = list(factors)
            if len(set(seq)) != len(seq):
                continue
            pairs.append((mask_of(seq), c * permutation_sign(seq)))
        return cls.from_terms(ring, num_vars, pairs)

    @classmethod
    def from_linear_form(cls, form: LinearForm) -> ExteriorElement:
        return cls.from_terms(
            form.ring, form.num_vars, ((1 << j, c) for j, c in enumerate(form.coefficients))
        )

    @classmethod
    def zero(cls, ring: Ring, num_vars: int) -> ExteriorElement:
        return cls(ring, num_vars, {})

    @classmethod
    def one(cls, ring: Ring, num_vars: int) -> ExteriorElement:
        return cls(ring, num_vars, {0: 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: ExteriorElement) -> ExteriorElement:
        _check_compatible(self, other)
        return ExteriorElement.from_terms(
            self.ring, self.num_vars, [*self.terms.items(), *other.terms.items()]
        )

    def __neg__(self) -> ExteriorElement:
        return self.scale(-1)

    def __sub__(self, other: ExteriorElement) -> ExteriorElement:
        return self + (-other)

    def scale(self, c: int) -> ExteriorElement:
        return ExteriorElement.from_terms(
            self.ring, self.num_vars, ((mask, c * v) for mask, v in self.terms.items())
        )

    def reduce(self) -> ExteriorElement:
        """The same element with coefficients taken mod 2."""
        return ExteriorElement.from_terms(Ring.GF2, self.num_vars, self.terms.items())

    def coefficient(self, face: Iterable[int]) -> int:
        return self.terms.get(mask_of(face), 0)

    def in_orientation(self, orientation: Orientation) -> dict[tuple[int, ...], int]:
        """Coefficients relative to the oriented simplices of ``orientation``."""
        signs = orientation.as_dict()
        out = {}
        for mask, c in self.terms.items():
            s = signs.get(mask)
            if s is None:
                raise ValueError(f"orientation does not cover {indices(mask)}")
            seq = list(indices(mask))
            if s < 0:
                seq[0], seq[1] = seq[1], seq[0]
            out[tuple(seq)] = c * s
        return out

    def to_polynomial(self) -> SquareFreePolynomial:
        return SquareFreePolynomial(self.ring, self.num_vars, dict(self.terms))

    def __str__(self) -> str:
        return format_terms(self.terms)


def _check_compatible(a, b) -> None:
    if a.ring is not b.ring:
        raise ValueError(f"ring mismatch: {a.ring.value} vs {b.ring.value}")
    if a.num_vars != b.num_vars:
        raise ValueError(f"variable count mismatch: {a.num_vars} vs {b.num_vars}")


def merge_sign(a: int, b: int) -> int:
    """Sign of sorting the concatenation of ascending monomials ``a`` then ``b``."""
    swaps = 0
    rest = b
    while rest:
        low = rest & -rest
        swaps += popcount(a & ~(low - 1) & ~low)
        rest ^= low
    return -1 if swaps % 2 else 1


def wedge(a: ExteriorElement, b: ExteriorElement, k: SimplicialComplex | None = None) -> ExteriorElement:
    """Wedge product; given ``k`` the result is taken modulo its non-faces."""
    _check_compatible(a, b)
    if k is not None and k.num_vertices != a.num_vars:
        raise ValueError(f"complex has {k.num_vertices} vertices, element has {a.num_vars}")
    gf2 = a.ring is Ring.GF2
    pairs = []
    for x, cx in a.terms.items():
        for y, cy in b.terms.items():
            if x & y:
                continue
            s = x | y
            if k is not None and s and not k.is_face(s):
                continue
            c = cx * cy
            if not gf2 and merge_sign(x, y) < 0:
                c = -c
            pairs.append((s, c))
    return ExteriorElement.from_terms(a.ring, a.num_vars, pairs)


def wedge_all(elements: Iterable[ExteriorElement], k: SimplicialComplex | None = None) -> ExteriorElement:
    elements = list(elements)
    result = ExteriorElement.one(elements[0].ring, elements[0].num_vars)
    for e in elements:
        result = wedge(result, e, k)
    return result


def boundary(a: ExteriorElement) -> ExteriorElement:
    """Alternating-sign differential on ascending monomials.

    A single variable maps to the unit, so the differential is the augmented one.
    """
    gf2 = a.ring is Ring.GF2
    pairs = []
    for mask, c in a.terms.items():
        for pos, v in enumerate(indices(mask)):
            sign = -1 if (pos % 2 and not gf2) else 1
            pairs.append((mask & ~(1 << (v - 1)), sign * c))
    return ExteriorElement.from_terms(a.ring, a.num_vars, pairs)


def is_cycle(a: ExteriorElement) -> bool:
    return boundary(a).is_zero()


def oriented_sigma_n(
    k: SimplicialComplex, orientation: Orientation, ring: Ring = Ring.INTEGERS
) -> ExteriorElement:
    """Sum of the oriented top monomials of ``k``."""
    signs = orientation.as_dict()
    if set(signs) != set(k.maximal_faces):
        raise ValueError("orientation is not defined on exactly the maximal faces")
    if not k.is_pure():
        raise ValueError("oriented top symmetric polynomial needs a pure complex")
    return ExteriorElement.from_terms(ring, k.num_vertices, signs.items())


def _forms_checked(lambdas: Sequence[LinearForm], k: SimplicialComplex) -> Ring:
    if len(lambdas) != k.dim + 1:
        raise ValueError(f"need exactly {k.dim + 1} linear forms, got {len(lambdas)}")
    ring = lambdas[0].ring
    for lam in lambdas:
        if lam.ring is not ring:
            raise ValueError("linear forms over different rings")
        if lam.num_vars != k.num_vertices:
            raise ValueError(f"linear form has {lam.num_vars} coefficients, expected {k.num_vertices}")
    return ring


def wedge_linear_forms(lambdas: Sequence[LinearForm], k: SimplicialComplex) -> ExteriorElement:
    """lambda_1 ^ ... ^ lambda_n in the exterior face ring of ``k`` by direct expansion."""
    _forms_checked(lambdas, k)
    return wedge_all((ExteriorElement.from_linear_form(lam) for lam in lambdas), k)


def wedge_by_minors(lambdas: Sequence[LinearForm], k: SimplicialComplex) -> ExteriorElement:
    """The same product as a sum of det(Lambda_a) x_a over top faces ``a``.

    Columns of Lambda_a are taken in ascending vertex order.
    """
    ring = _forms_checked(lambdas, k)
    n = len(lambdas)
    pairs = []
    for face in k.faces_of_size(n):
        cols = [i - 1 for i in indices(face)]
        minor = [[lam.coefficients[j] for j in cols] for lam in lambdas]
        pairs.append((face, det(minor)))
    return ExteriorElement.from_terms(ring, k.num_vertices, pairs)
