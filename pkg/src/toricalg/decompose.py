"""Product decomposition of polytopal spheres and facet colorings."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from toricalg.complex import (
    SimplePolytope,
    SimplicialComplex,
    boundary_complex,
    check_polytope,
    expand,
    indices,
    join,
    mask_of,
    restrict,
)
from toricalg.facering import LinearForm, Ring, product_mod_ideal, sigma, verify_symmetric_identity


def minimal_nonfaces(k: SimplicialComplex) -> list[tuple[int, ...]]:
    """Inclusion-minimal non-faces, as sorted 1-based tuples."""
    faces = k.faces | {0}
    found = set()
    for f in faces:
        for v in range(k.num_vertices):
            bit = 1 << v
            if f & bit:
                continue
            s = f | bit
            if s in faces or s in found:
                continue
            if all((s & ~(1 << (u - 1))) in faces for u in indices(s)):
                found.add(s)
    return sorted((indices(s) for s in found), key=lambda t: (len(t), t))


@dataclass(frozen=True)
class JoinFactor:
    vertices: tuple[int, ...]
    complex: SimplicialComplex


def join_factors(k: SimplicialComplex) -> list[JoinFactor]:
    """Finest join decomposition of ``k``; a single factor means ``k`` is not a join.

    Two vertices end up in the same factor exactly when they are linked by a
    chain of minimal non-faces.  Vertices in no minimal non-face are cone
    points and form one-vertex factors.
    """
    m = k.num_vertices
    parent = list(range(m))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for nf in minimal_nonfaces(k):
        first = nf[0] - 1
        for v in nf[1:]:
            parent[find(v - 1)] = find(first)
    groups: dict[int, int] = {}
    for v in range(m):
        groups[find(v)] = groups.get(find(v), 0) | (1 << v)
    parts = sorted(groups.values(), key=lambda g: g & -g)
    factors = [JoinFactor(indices(g), restrict(k, g)) for g in parts]
    if reassemble(factors, m) != k.maximal_faces:
        raise AssertionError("join factors do not reconstruct the complex")
    return factors


def reassemble(factors: list[JoinFactor], m: int) -> frozenset[int]:
    """Maximal faces of the join of ``factors`` in the original labelling."""
    faces = {0}
    for fac in factors:
        support = mask_of(fac.vertices)
        faces = {a | expand(b, support) for a in faces for b in fac.complex.maximal_faces}
    return frozenset(faces)


@dataclass(frozen=True)
class ProductVerdict:
    is_product: bool
    factors: list[JoinFactor]

    def partition(self) -> list[tuple[int, ...]]:
        return [f.vertices for f in self.factors]


def is_product_polytope(p: SimplePolytope) -> ProductVerdict:
    factors = join_factors(boundary_complex(p))
    return ProductVerdict(len(factors) >= 2, factors)


def join_all(complexes: list[SimplicialComplex]) -> SimplicialComplex:
    result = complexes[0]
    for c in complexes[1:]:
        result = join(result, c)
    return result


@dataclass(frozen=True)
class ColoringCertificate:
    num_colors: int
    colors: tuple[int, ...]  # colors[i] is the color of facet i + 1

    def classes(self) -> list[tuple[int, ...]]:
        return [
            tuple(f + 1 for f, c in enumerate(self.colors) if c == col)
            for col in range(1, self.num_colors + 1)
        ]


def facet_adjacency(k: SimplicialComplex) -> list[int]:
    """Neighbour mask of each vertex of ``k`` (0-based list)."""
    adj = [0] * k.num_vertices
    for f in k.maximal_faces:
        for v in indices(f):
            adj[v - 1] |= f & ~(1 << (v - 1))
    return adj


def coloring_problems(p: SimplePolytope, cert: ColoringCertificate) -> list[str]:
    k = boundary_complex(p)
    problems = []
    if len(cert.colors) != p.m:
        return [f"certificate colors {len(cert.colors)} facets, polytope has {p.m}"]
    if any(not 1 <= c <= cert.num_colors for c in cert.colors):
        problems.append("color out of range")
    for i, j in combinations(range(1, p.m + 1), 2):
        if cert.colors[i - 1] == cert.colors[j - 1] and k.is_face(mask_of((i, j))):
            problems.append(f"adjacent facets {i} and {j} share color {cert.colors[i - 1]}")
    unused = set(range(1, cert.num_colors + 1)) - set(cert.colors)
    if unused:
        problems.append(f"colors {sorted(unused)} unused")
    return problems


def color(p: SimplePolytope, num_colors: int) -> ColoringCertificate | None:
    """Lexicographically smallest proper coloring using every one of ``num_colors`` colors.

    ``None`` means the exhaustive search found none.
    """
    check_polytope(p)
    if num_colors < p.n:
        raise ValueError(f"{num_colors} colors cannot color a simple {p.n}-polytope")
    m = p.m
    if num_colors > m:
        return None
    adj = facet_adjacency(boundary_complex(p))
    colors = [0] * m

    # Colors enter in order of first use: the lexicographically smallest
    # surjective coloring is always of this form.
    def place(i: int, used: int) -> bool:
        if i == m:
            return used == num_colors
        if num_colors - used > m - i:
            return False
        blocked = {colors[j] for j in range(i) if adj[i] >> j & 1}
        for c in range(1, min(used + 1, num_colors) + 1):
            if c in blocked:
                continue
            colors[i] = c
            if place(i + 1, max(used, c)):
                return True
        colors[i] = 0
        return False

    if not place(0, 0):
        return None
    return ColoringCertificate(num_colors, tuple(colors))


def coloring_to_lambdas(cert: ColoringCertificate, ring: Ring = Ring.INTEGERS) -> list[LinearForm]:
    """One linear form per color: the sum of the variables of its facets."""
    return [
        LinearForm.of(ring, [1 if c == col else 0 for c in cert.colors])
        for col in range(1, cert.num_colors + 1)
    ]


def two_faces(p: SimplePolytope) -> list[tuple[tuple[int, ...], int]]:
    """2-faces as (facets cutting it out, number of its vertices)."""
    check_polytope(p)
    k = boundary_complex(p)
    out = []
    for s in combinations(range(1, p.m + 1), p.n - 2):
        mask = mask_of(s)
        if s and not k.is_face(mask):
            continue
        count = sum(1 for v in p.vertex_masks if v & mask == mask)
        if count >= 3:
            out.append((s, count))
    return out


def joswig_check(p: SimplePolytope) -> bool:
    """Whether every 2-face has an even number of edges."""
    if p.n < 2:
        raise ValueError("2-faces need n >= 2")
    return all(count % 2 == 0 for _, count in two_faces(p))


def check_certificate_identities(p: SimplePolytope, cert: ColoringCertificate) -> bool:
    """The face-ring identities a coloring certificate must satisfy.

    With ``n`` colors the color forms multiply to sigma_n; with more colors
    their n-th elementary symmetric function equals sigma_n.
    """
    k = boundary_complex(p)
    lambdas = coloring_to_lambdas(cert)
    if cert.num_colors == p.n:
        prod = product_mod_ideal([lam.to_polynomial() for lam in lambdas], k)
        if prod != sigma(k, p.n):
            return False
    return verify_symmetric_identity(k, lambdas, p.n)[p.n]
