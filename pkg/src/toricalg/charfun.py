"""Characteristic matrices: validation, exhaustive search, and the decisions built on them."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, product
from math import gcd
from typing import Sequence

from toricalg.complex import (
    Orientation,
    SimplePolytope,
    boundary_complex,
    check_polytope,
    coherent_orientation,
    indices,
    mask_of,
)
from toricalg.exterior import (
    ExteriorElement,
    is_cycle,
    oriented_sigma_n,
    wedge_all,
    wedge_by_minors,
    wedge_linear_forms,
)
from toricalg.facering import LinearForm, Ring, sigma
from toricalg.linalg import det, gf2_rank

DEFAULT_BOUND = 3


class NotCharacteristic(ValueError):
    pass


@dataclass(frozen=True)
class CharMatrix:
    """A k x m matrix whose column j is the vector assigned to facet j."""

    ring: Ring
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.rows or not self.rows[0]:
            raise ValueError("matrix must be nonempty")
        width = len(self.rows[0])
        if any(len(r) != width for r in self.rows):
            raise ValueError("matrix rows have different lengths")
        if self.ring is Ring.GF2 and any(x not in (0, 1) for r in self.rows for x in r):
            raise ValueError("GF(2) matrix entries must be 0 or 1")
        zero = [j + 1 for j in range(width) if not any(r[j] for r in self.rows)]
        if zero:
            raise ValueError(f"zero columns {zero}")

    @classmethod
    def from_rows(cls, ring: Ring, rows: Sequence[Sequence[int]]) -> CharMatrix:
        return cls(ring, tuple(tuple(r) for r in rows))

    @classmethod
    def from_columns(cls, ring: Ring, columns: Sequence[Sequence[int]]) -> CharMatrix:
        return cls(ring, tuple(zip(*columns)))

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return len(self.rows[0])

    def column(self, j: int) -> tuple[int, ...]:
        """Column of facet ``j`` (1-based)."""
        return tuple(r[j - 1] for r in self.rows)

    def submatrix(self, facets: Sequence[int]) -> list[list[int]]:
        return [[r[j - 1] for j in facets] for r in self.rows]

    def mod2(self) -> CharMatrix:
        return CharMatrix.from_rows(Ring.GF2, [[x & 1 for x in r] for r in self.rows])

    def lambdas(self) -> list[LinearForm]:
        return [LinearForm.of(self.ring, r) for r in self.rows]

    def __str__(self) -> str:
        head = f"{self.ring.value} {self.k} {self.m}"
        return "\n".join([head, *(" ".join(str(x) for x in r) for r in self.rows)])


def _column_bits(col: Sequence[int]) -> int:
    out = 0
    for x in col:
        out = (out << 1) | (x & 1)
    return out


@dataclass(frozen=True)
class CharReport:
    ok: bool
    failing: list[tuple[int, ...]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def is_characteristic(p: SimplePolytope, L: CharMatrix) -> CharReport:
    """Check the basis condition at every vertex; reports the failing vertices.

    Over GF(2) the n columns at a vertex must have rank n (any k >= n).  Over Z
    only square matrices are accepted and each vertex minor must be +-1.
    """
    check_polytope(p)
    if L.m != p.m:
        raise ValueError(f"matrix has {L.m} columns, polytope has {p.m} facets")
    if L.k < p.n:
        raise ValueError(f"matrix has {L.k} rows, need at least {p.n}")
    if L.ring is Ring.INTEGERS and L.k != p.n:
        raise ValueError("integer characteristic matrices must have exactly n rows")
    failing = []
    for v in sorted(tuple(sorted(v)) for v in p.vertices):
        if L.ring is Ring.GF2:
            good = gf2_rank([_column_bits(L.column(j)) for j in v]) == p.n
        else:
            good = abs(det(L.submatrix(v))) == 1
        if not good:
            failing.append(v)
    return CharReport(not failing, failing)


@dataclass(frozen=True)
class SearchResult:
    matrix: CharMatrix | None
    nodes: int
    leaves: int
    bound: int | None = None

    @property
    def found(self) -> bool:
        return self.matrix is not None


class _Plan:
    """Facet order, gauge and per-facet vertex checks shared by both searches."""

    def __init__(self, p: SimplePolytope, k: int):
        check_polytope(p)
        self.p = p
        self.k = k
        gauge_vertex = min(tuple(sorted(v)) for v in p.vertices)
        self.gauge = {f: i for i, f in enumerate(gauge_vertex)}
        self.free = [f for f in range(1, p.m + 1) if f not in self.gauge]
        position = {f: -1 for f in self.gauge}
        position.update({f: i for i, f in enumerate(self.free)})
        # at free facet i, the assigned part of each vertex through it
        self.checks: list[list[tuple[int, ...]]] = []
        for i, f in enumerate(self.free):
            group = []
            for v in p.vertices:
                if f in v:
                    group.append(tuple(sorted(g for g in v if position[g] <= i)))
            self.checks.append(group)


def _backtrack(plan: _Plan, cols: dict[int, object], candidates, ok, first_only=None):
    nodes = leaves = 0
    last = len(plan.free) - 1

    def go(i: int) -> bool:
        nonlocal nodes, leaves
        if i > last:
            return True
        f = plan.free[i]
        options = candidates if not (i == 0 and first_only is not None) else [candidates[first_only]]
        for c in options:
            nodes += 1
            if i == last:
                leaves += 1
            cols[f] = c
            if all(ok([cols[g] for g in group], len(group)) for group in plan.checks[i]):
                if go(i + 1):
                    return True
        del cols[f]
        return False

    found = go(0)
    return found, nodes, leaves


def _gf2_candidates(k: int) -> list[int]:
    return list(range(1, 2**k))


def _gf2_ok(columns: list[int], size: int) -> bool:
    return gf2_rank(columns) == size


def _gf2_branch(p: SimplePolytope, k: int, branch: int | None):
    plan = _Plan(p, k)
    cols: dict[int, object] = {f: 1 << (k - 1 - i) for f, i in plan.gauge.items()}
    found, nodes, leaves = _backtrack(plan, cols, _gf2_candidates(k), _gf2_ok, branch)
    if not found:
        return None, nodes, leaves
    columns = [[(cols[f] >> (k - 1 - r)) & 1 for r in range(k)] for f in range(1, p.m + 1)]
    return CharMatrix.from_columns(Ring.GF2, columns), nodes, leaves


def _run_branches(fn, args, branches: int, threads: int):
    """Run ``fn(*args, branch)`` for every root branch; the lowest successful branch wins."""
    if threads <= 1 or branches <= 1:
        return fn(*args, None)
    with ProcessPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(fn, *zip(*[(*args, b) for b in range(branches)])))
    nodes = sum(r[1] for r in results)
    leaves = sum(r[2] for r in results)
    for matrix, _, _ in results:
        if matrix is not None:
            return matrix, nodes, leaves
    return None, nodes, leaves


def find_char_gf2(p: SimplePolytope, k: int, threads: int = 1) -> SearchResult:
    """Lexicographically smallest gauge-fixed GF(2) characteristic matrix with ``k`` rows.

    The facets of the lexicographically first vertex get e_1..e_n; the other
    facets range over all nonzero vectors.  ``matrix is None`` is a proof that
    none exists.
    """
    if k < p.n:
        raise ValueError(f"need k >= n = {p.n}, got {k}")
    free = p.m - p.n
    matrix, nodes, leaves = _run_branches(_gf2_branch, (p, k), 2**k - 1 if free else 1, threads)
    return SearchResult(matrix, nodes, leaves)


def _entry_key(x: int) -> tuple[int, bool]:
    return abs(x), x > 0


def _int_candidates(n: int, bound: int) -> list[tuple[int, ...]]:
    values = sorted(range(-bound, bound + 1), key=_entry_key)
    out = []
    for vec in product(values, repeat=n):
        if any(vec) and gcd(*vec) == 1:
            out.append(vec)
    return out


def _primitive(columns: list[tuple[int, ...]], size: int) -> bool:
    """Whether the columns extend to a unimodular basis (gcd of maximal minors is 1)."""
    n = len(columns[0])
    if size == n:
        return abs(det([list(r) for r in zip(*columns)])) == 1
    g = 0
    for rows in combinations(range(n), size):
        g = gcd(g, det([[c[r] for c in columns] for r in rows]))
        if g == 1:
            return True
    return False


def _int_branch(p: SimplePolytope, bound: int, branch: int | None):
    n = p.n
    plan = _Plan(p, n)
    cols: dict[int, object] = {
        f: tuple(1 if r == i else 0 for r in range(n)) for f, i in plan.gauge.items()
    }
    found, nodes, leaves = _backtrack(plan, cols, _int_candidates(n, bound), _primitive, branch)
    if not found:
        return None, nodes, leaves
    return CharMatrix.from_columns(Ring.INTEGERS, [cols[f] for f in range(1, p.m + 1)]), nodes, leaves


def find_char_int(p: SimplePolytope, bound: int = DEFAULT_BOUND, threads: int = 1) -> SearchResult:
    """Gauge-fixed integer characteristic matrix with entries in [-B, B], B = 1..bound.

    Entries are tried in the order 0, -1, 1, -2, 2, ...  A ``None`` matrix only
    means nothing exists within the bound.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    total_nodes = total_leaves = 0
    for b in range(1, bound + 1):
        branches = len(_int_candidates(p.n, b)) if p.m > p.n else 1
        matrix, nodes, leaves = _run_branches(_int_branch, (p, b), branches, threads)
        total_nodes += nodes
        total_leaves += leaves
        if matrix is not None:
            return SearchResult(matrix, total_nodes, total_leaves, b)
    return SearchResult(None, total_nodes, total_leaves, bound)


def _require_integer_square(p: SimplePolytope, L: CharMatrix) -> None:
    if L.ring is not Ring.INTEGERS or L.k != p.n:
        raise ValueError("expected an integer matrix with n rows")
    report = is_characteristic(p, L)
    if not report:
        raise NotCharacteristic(f"basis condition fails at vertices {report.failing}")


def orientation_from_lambda(p: SimplePolytope, L: CharMatrix) -> Orientation:
    """Orient each top simplex by the sign of its minor, so that sigma_n equals the wedge."""
    _require_integer_square(p, L)
    return Orientation.from_dict({mask_of(v): det(L.submatrix(sorted(v))) for v in p.vertices})


def almost_complex_check(p: SimplePolytope, L: CharMatrix) -> bool:
    """Whether lambda_1 ^ ... ^ lambda_n is a cycle in the exterior face ring."""
    _require_integer_square(p, L)
    k = boundary_complex(p)
    cycle = is_cycle(wedge_linear_forms(L.lambdas(), k))
    sphere = coherent_orientation(k).as_dict()
    signs = {det(L.submatrix(indices(a))) * s for a, s in sphere.items()}
    if cycle != (len(signs) == 1):
        raise AssertionError("cycle test and sign test disagree")
    return cycle


def sigma_equals_wedge(p: SimplePolytope, L: CharMatrix, orientation: Orientation) -> bool:
    k = boundary_complex(p)
    return oriented_sigma_n(k, orientation) == wedge_linear_forms(L.lambdas(), k)


def verify_sigma_factorization_gf2(p: SimplePolytope, L: CharMatrix) -> bool:
    """Whether the row forms multiply to sigma_n in the GF(2) exterior face ring."""
    if L.k != p.n:
        raise ValueError(f"factorization check needs exactly n = {p.n} rows, got {L.k}")
    if L.m != p.m:
        raise ValueError(f"matrix has {L.m} columns, polytope has {p.m} facets")
    k = boundary_complex(p)
    forms = [ExteriorElement.from_linear_form(lam) for lam in L.mod2().lambdas()]
    product_ = wedge_all(forms, k)
    return product_.to_polynomial() == sigma(k, p.n, Ring.GF2)


def cyclic_claim_vectors(L: CharMatrix) -> list[tuple[int, ...]]:
    """Facet columns followed by sums of cyclically adjacent columns, over GF(2)."""
    cols = [L.column(j) for j in range(1, L.m + 1)]
    sums = [
        tuple((a + b) & 1 for a, b in zip(cols[i], cols[(i + 1) % L.m])) for i in range(L.m)
    ]
    return [tuple(x & 1 for x in c) for c in cols] + sums


@dataclass(frozen=True)
class BuchstaberVerdict:
    """Whether s(P) = m - n over the given field.

    ``status`` is "yes", "no" or "unknown" (integer search exhausted its bound).
    """

    field: Ring
    status: str
    matrix: CharMatrix | None
    orientation: Orientation | None
    search: SearchResult
    reason: str


def buchstaber_decision(
    p: SimplePolytope, field: Ring, bound: int = DEFAULT_BOUND, threads: int = 1
) -> BuchstaberVerdict:
    check_polytope(p)
    real = find_char_gf2(p, p.n, threads)
    if field is Ring.GF2:
        if real.found:
            return BuchstaberVerdict(field, "yes", real.matrix, None, real, "GF(2) characteristic matrix found")
        return BuchstaberVerdict(field, "no", None, None, real, "exhaustive GF(2) search found none")
    if not real.found:
        # s_C <= s_R, so no integer matrix can exist either
        return BuchstaberVerdict(field, "no", None, None, real, "no GF(2) characteristic matrix exists")
    found = find_char_int(p, bound, threads)
    if found.found:
        o = orientation_from_lambda(p, found.matrix)
        return BuchstaberVerdict(
            field, "yes", found.matrix, o, found, f"integer characteristic matrix with |entries| <= {found.bound}"
        )
    return BuchstaberVerdict(field, "unknown", None, None, found, f"nothing found with |entries| <= {bound}")


def minors_agree(p: SimplePolytope, L: CharMatrix) -> bool:
    """Both routes to lambda_1 ^ ... ^ lambda_n give the same element."""
    k = boundary_complex(p)
    return wedge_linear_forms(L.lambdas(), k) == wedge_by_minors(L.lambdas(), k)
