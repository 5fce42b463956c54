"""Simple polytopes, their polytopal spheres, and simplicial-complex primitives.

Vertex sets are int bitmasks: vertex ``i`` (1-based, as users see it) is bit
``i - 1``.  All public constructors accept 1-based index collections.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator

MAX_VERTICES = 64


class InvalidPolytope(ValueError):
    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = problems


class NotPseudomanifold(ValueError):
    pass


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << (i - 1)
    return mask


def indices(mask: int) -> tuple[int, ...]:
    """1-based ascending indices of the bits set in ``mask``."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def lex_key(mask: int) -> tuple[int, ...]:
    return indices(mask)


@dataclass(frozen=True)
class SimplicialComplex:
    """A complex on vertices ``1..num_vertices`` given by its maximal faces.

    ``labels`` optionally records the original names of the vertices when the
    complex was cut out of a bigger one (links, restrictions, join factors).
    """

    num_vertices: int
    maximal_faces: frozenset[int]
    labels: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        m = self.num_vertices
        if m < 1:
            raise ValueError("complex needs at least one vertex")
        if m > MAX_VERTICES:
            raise ValueError(f"at most {MAX_VERTICES} vertices supported, got {m}")
        full = (1 << m) - 1
        union = 0
        for f in self.maximal_faces:
            if f == 0:
                raise ValueError("empty maximal face")
            if f & ~full:
                raise ValueError(f"face {indices(f)} has vertices outside [{m}]")
            union |= f
        if union != full:
            ghosts = indices(full & ~union)
            raise ValueError(f"ghost vertices {list(ghosts)} lie in no face")
        faces = sorted(self.maximal_faces, key=popcount)
        for i, a in enumerate(faces):
            for b in faces[i + 1 :]:
                if a & b == a:
                    raise ValueError(f"{indices(a)} is contained in {indices(b)}")
        if self.labels is not None and len(self.labels) != m:
            raise ValueError("labels must name every vertex")

    @classmethod
    def from_faces(cls, m: int, faces: Iterable[Iterable[int]]) -> SimplicialComplex:
        """Build from arbitrary generating faces (1-based); keeps only the maximal ones."""
        return cls(m, maximal_only(mask_of(f) for f in faces))

    @property
    def dim(self) -> int:
        return max(popcount(f) for f in self.maximal_faces) - 1

    def sorted_facets(self) -> list[int]:
        return sorted(self.maximal_faces, key=lex_key)

    def is_face(self, mask: int) -> bool:
        return any(mask & f == mask for f in self.maximal_faces)

    @cached_property
    def faces(self) -> frozenset[int]:
        """Every nonempty face."""
        out: set[int] = set()
        for f in self.maximal_faces:
            out.update(submasks(f))
        out.discard(0)
        return frozenset(out)

    def faces_of_size(self, size: int) -> list[int]:
        return sorted(f for f in self.faces if popcount(f) == size)

    def f_vector(self) -> list[int]:
        counts = [0] * (self.dim + 1)
        for f in self.faces:
            counts[popcount(f) - 1] += 1
        return counts

    def is_pure(self) -> bool:
        return len({popcount(f) for f in self.maximal_faces}) == 1

    def relabel(self, labels: tuple[int, ...]) -> SimplicialComplex:
        return SimplicialComplex(self.num_vertices, self.maximal_faces, labels)

    def as_lists(self) -> list[list[int]]:
        return [list(indices(f)) for f in self.sorted_facets()]


def maximal_only(masks: Iterable[int]) -> frozenset[int]:
    uniq = sorted(set(masks), key=popcount, reverse=True)
    kept: list[int] = []
    for f in uniq:
        if not any(f & g == f for g in kept):
            kept.append(f)
    return frozenset(kept)


def compress(mask: int, support: int) -> int:
    """Re-index the bits of ``mask`` onto positions 0.. of the bits of ``support``."""
    out = 0
    pos = 0
    bit = 0
    while support >> bit:
        if (support >> bit) & 1:
            if (mask >> bit) & 1:
                out |= 1 << pos
            pos += 1
        bit += 1
    return out


def expand(mask: int, support: int) -> int:
    """Inverse of :func:`compress`."""
    out = 0
    pos = 0
    bit = 0
    while support >> bit:
        if (support >> bit) & 1:
            if (mask >> pos) & 1:
                out |= 1 << bit
            pos += 1
        bit += 1
    return out


def restrict(k: SimplicialComplex, vertices: int) -> SimplicialComplex:
    """Full subcomplex on ``vertices`` (a mask), relabelled onto 1..|vertices|."""
    faces = maximal_only(f & vertices for f in k.maximal_faces if f & vertices)
    compressed = frozenset(compress(f, vertices) for f in faces)
    return SimplicialComplex(popcount(vertices), compressed, _labels(k, vertices))


def _labels(k: SimplicialComplex, vertices: int) -> tuple[int, ...]:
    idx = indices(vertices)
    if k.labels is None:
        return idx
    return tuple(k.labels[i - 1] for i in idx)


def join(k1: SimplicialComplex, k2: SimplicialComplex) -> SimplicialComplex:
    """Join, with the vertices of ``k2`` shifted past those of ``k1``."""
    shift = k1.num_vertices
    faces = frozenset(a | (b << shift) for a in k1.maximal_faces for b in k2.maximal_faces)
    return SimplicialComplex(k1.num_vertices + k2.num_vertices, faces)


def link(k: SimplicialComplex, v: int) -> SimplicialComplex:
    """Link of vertex ``v`` (1-based), relabelled onto its neighbours in ascending order.

    The link of a vertex that is itself a maximal face is empty and rejected.
    """
    if not 1 <= v <= k.num_vertices:
        raise ValueError(f"{v} is not a vertex of the complex")
    bit = 1 << (v - 1)
    star = [f for f in k.maximal_faces if f & bit]
    neighbours = 0
    for f in star:
        neighbours |= f & ~bit
    if not neighbours:
        raise ValueError(f"vertex {v} has an empty link")
    faces = maximal_only(f & ~bit for f in star)
    compressed = frozenset(compress(f, neighbours) for f in faces)
    return SimplicialComplex(popcount(neighbours), compressed, _labels(k, neighbours))


def pseudomanifold_problems(k: SimplicialComplex) -> list[str]:
    """Reasons ``k`` is not a connected closed pseudomanifold (empty if it is)."""
    problems = []
    if not k.is_pure():
        return ["complex is not pure"]
    if k.dim == 0:
        # S^0 is the only 0-dimensional closed pseudomanifold we accept
        if len(k.maximal_faces) != 2:
            problems.append("0-dimensional complex must have exactly two points")
        return problems
    ridges: dict[int, list[int]] = {}
    for f in k.maximal_faces:
        for v in indices(f):
            ridges.setdefault(f & ~(1 << (v - 1)), []).append(f)
    for r, owners in sorted(ridges.items()):
        if len(owners) != 2:
            problems.append(f"ridge {list(indices(r))} lies in {len(owners)} maximal faces")
    if not problems and not _dual_connected(k, ridges):
        problems.append("dual graph is disconnected")
    return problems


def _dual_connected(k: SimplicialComplex, ridges: dict[int, list[int]]) -> bool:
    adj: dict[int, set[int]] = {f: set() for f in k.maximal_faces}
    for owners in ridges.values():
        for a, b in combinations(owners, 2):
            adj[a].add(b)
            adj[b].add(a)
    start = next(iter(adj))
    seen = {start}
    queue = deque([start])
    while queue:
        for g in adj[queue.popleft()]:
            if g not in seen:
                seen.add(g)
                queue.append(g)
    return len(seen) == len(adj)


@dataclass(frozen=True)
class Orientation:
    """Sign per maximal face, relative to the ascending order of its vertices."""

    signs: tuple[tuple[int, int], ...]

    @classmethod
    def from_dict(cls, signs: dict[int, int]) -> Orientation:
        for s in signs.values():
            if s not in (1, -1):
                raise ValueError(f"orientation sign must be +1 or -1, got {s}")
        return cls(tuple(sorted(signs.items(), key=lambda kv: lex_key(kv[0]))))

    @classmethod
    def from_oriented(cls, simplices: Iterable[Iterable[int]]) -> Orientation:
        """From explicitly ordered simplices such as ``[(1, 2), (1, 4), (3, 2), (4, 3)]``."""
        signs = {}
        for simplex in simplices:
            seq = list(simplex)
            signs[mask_of(seq)] = permutation_sign(seq)
        return cls.from_dict(signs)

    def as_dict(self) -> dict[int, int]:
        return dict(self.signs)

    def __getitem__(self, face: int) -> int:
        return self.as_dict()[face]

    def domain(self) -> frozenset[int]:
        return frozenset(f for f, _ in self.signs)

    def flipped(self) -> Orientation:
        return Orientation(tuple((f, -s) for f, s in self.signs))

    def oriented_simplices(self) -> list[tuple[int, ...]]:
        out = []
        for f, s in self.signs:
            seq = list(indices(f))
            if s < 0:
                seq[0], seq[1] = seq[1], seq[0]
            out.append(tuple(seq))
        return out


def permutation_sign(seq: list[int]) -> int:
    """Sign of the permutation sorting ``seq`` (entries must be distinct)."""
    if len(set(seq)) != len(seq):
        raise ValueError(f"repeated vertex in {seq}")
    inversions = sum(1 for i, j in combinations(range(len(seq)), 2) if seq[i] > seq[j])
    return -1 if inversions % 2 else 1


def induced_sign(face: int, vertex_bit: int) -> int:
    """Sign with which the ascending face induces its ridge missing ``vertex_bit``."""
    position = popcount(face & (vertex_bit - 1))
    return -1 if position % 2 else 1


def is_coherent(k: SimplicialComplex, orientation: Orientation) -> bool:
    signs = orientation.as_dict()
    seen: dict[int, int] = {}
    for f, s in signs.items():
        for v in indices(f):
            bit = 1 << (v - 1)
            r = f & ~bit
            val = s * induced_sign(f, bit)
            if r in seen:
                if seen.pop(r) != -val:
                    return False
            else:
                seen[r] = val
    return not seen


def coherent_orientation(k: SimplicialComplex, flip: bool = False) -> Orientation:
    """The coherent orientation with +1 on the lexicographically first maximal face.

    ``flip=True`` returns the other one.
    """
    problems = pseudomanifold_problems(k)
    if problems:
        raise NotPseudomanifold("; ".join(problems))
    if k.dim == 0:
        # induced "ridges" are the empty face; opposite points carry opposite signs
        first, second = k.sorted_facets()
        signs = {first: 1, second: -1}
    else:
        owners: dict[int, list[int]] = {}
        for f in k.maximal_faces:
            for v in indices(f):
                owners.setdefault(f & ~(1 << (v - 1)), []).append(f)
        anchor = k.sorted_facets()[0]
        signs = {anchor: 1}
        queue = deque([anchor])
        while queue:
            f = queue.popleft()
            for v in indices(f):
                bit = 1 << (v - 1)
                r = f & ~bit
                g = next(h for h in owners[r] if h != f)
                want = -signs[f] * induced_sign(f, bit) * induced_sign(g, g & ~r)
                if g in signs:
                    if signs[g] != want:
                        raise NotPseudomanifold("complex is not orientable")
                else:
                    signs[g] = want
                    queue.append(g)
    o = Orientation.from_dict(signs)
    return o.flipped() if flip else o


@dataclass(frozen=True)
class SimplePolytope:
    """Facet-vertex incidence of a simple ``n``-polytope with ``m`` facets.

    Each vertex is the frozenset of the (1-based) facets through it.
    """

    n: int
    m: int
    vertices: tuple[frozenset[int], ...]

    @classmethod
    def from_lists(cls, n: int, m: int, vertices: Iterable[Iterable[int]]) -> SimplePolytope:
        return cls(n, m, tuple(frozenset(v) for v in vertices))

    @property
    def vertex_masks(self) -> list[int]:
        return [mask_of(v) for v in self.vertices]


def validate_polytope(p: SimplePolytope) -> list[str]:
    """Every violated invariant of ``p``; an empty list means ``p`` is accepted."""
    problems: list[str] = []
    if p.n < 1:
        problems.append(f"dimension must be positive, got {p.n}")
    if p.m < 1:
        problems.append(f"facet count must be positive, got {p.m}")
    if p.m > MAX_VERTICES:
        problems.append(f"at most {MAX_VERTICES} facets supported, got {p.m}")
    if not p.vertices:
        problems.append("polytope has no vertices")
    if problems:
        return problems
    structural = False
    for idx, v in enumerate(p.vertices, 1):
        bad = sorted(i for i in v if not 1 <= i <= p.m)
        if not v:
            problems.append(f"vertex {idx} is empty")
            structural = True
        if bad:
            problems.append(f"vertex {idx} has facet indices {bad} outside 1..{p.m}")
            structural = True
        if len(v) != p.n:
            problems.append(f"vertex {idx} meets {len(v)} facets, expected {p.n} (not simple)")
            structural = True
    seen: dict[frozenset[int], int] = {}
    for idx, v in enumerate(p.vertices, 1):
        if v in seen:
            problems.append(f"vertex {idx} duplicates vertex {seen[v]}")
            structural = True
        else:
            seen.setdefault(v, idx)
    used = set().union(*p.vertices)
    missing = sorted(set(range(1, p.m + 1)) - used)
    if missing:
        problems.append(f"facets {missing} contain no vertex")
        structural = True
    if structural:
        return problems
    k = SimplicialComplex(p.m, frozenset(p.vertex_masks))
    problems.extend(pseudomanifold_problems(k))
    return problems


def check_polytope(p: SimplePolytope) -> None:
    problems = validate_polytope(p)
    if problems:
        raise InvalidPolytope(problems)


def boundary_complex(p: SimplePolytope) -> SimplicialComplex:
    """The polytopal sphere K_P: vertices are facets, maximal faces are polytope vertices."""
    check_polytope(p)
    return SimplicialComplex(p.m, frozenset(p.vertex_masks))
