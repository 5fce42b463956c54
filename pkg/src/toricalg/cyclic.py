"""Combinatorics of cyclic polytopes C^n(m) and their simple duals."""

from __future__ import annotations

from itertools import combinations
from math import comb

from toricalg.complex import SimplePolytope


def gale_evenness(subset: tuple[int, ...], m: int) -> bool:
    """Gale's test: any two points outside ``subset`` enclose an even number of its points."""
    inside = set(subset)
    outside = [i for i in range(1, m + 1) if i not in inside]
    for a, b in zip(outside, outside[1:]):
        if sum(1 for x in subset if a < x < b) % 2:
            return False
    return True


def gale_facets(n: int, m: int) -> list[tuple[int, ...]]:
    """Facets of C^n(m) as ascending n-subsets of the curve points 1..m."""
    if n < 2 or m <= n:
        raise ValueError(f"cyclic polytope needs m > n >= 2, got n={n}, m={m}")
    return [s for s in combinations(range(1, m + 1), n) if gale_evenness(s, m)]


def cyclic_dual_polytope(n: int, m: int) -> SimplePolytope:
    """The simple polytope dual to C^n(m): facets are curve points, vertices are Gale facets."""
    return SimplePolytope.from_lists(n, m, gale_facets(n, m))


def faces_of_size(n: int, m: int, size: int) -> set[tuple[int, ...]]:
    """All ``size``-subsets lying in some facet of C^n(m)."""
    out: set[tuple[int, ...]] = set()
    for facet in gale_facets(n, m):
        out.update(combinations(facet, size))
    return out


def three_face_criterion(n: int, m: int, quad: tuple[int, ...]) -> bool:
    """Whether ``quad`` passes the two-case test for 3-faces of C^n(m).

    Either the quad spans the curve ends around an adjacent middle pair, or it
    is two adjacent pairs.
    """
    if n < 4:
        raise ValueError("the 3-face test applies for n >= 4")
    q = tuple(quad)
    if len(q) != 4 or len(set(q)) != 4 or list(q) != sorted(q) or q[0] < 1 or q[-1] > m:
        raise ValueError(f"expected 4 ascending distinct points in 1..{m}, got {quad}")
    i1, i2, i3, i4 = q
    return (i1 == 1 and i4 == m and i3 - i2 == 1) or (i2 - i1 == 1 and i4 - i3 == 1)


def criterion_quads(n: int, m: int) -> set[tuple[int, ...]]:
    return {q for q in combinations(range(1, m + 1), 4) if three_face_criterion(n, m, q)}


def cyclic_facet_count(n: int, m: int) -> int:
    """Closed-form number of facets of C^n(m)."""
    h = n // 2
    if n % 2 == 0:
        return m * comb(m - h, h) // (m - h)
    return 2 * comb(m - h - 1, h)


def pigeonhole_obstructed(m: int, k: int) -> bool:
    """Whether 2m distinct nonzero vectors cannot fit in GF(2)^k.

    For cyclic duals with n >= 4 every GF(2) characteristic map sends the m
    facets and the m sums of cyclically adjacent facets to 2m distinct
    nonzero vectors, so this rules the map out.
    """
    return 2 * m > 2**k - 1
