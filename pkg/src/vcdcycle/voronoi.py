"""Perfect quadratic forms and their top-dimensional cones.

A perfect form is pinned down by its minimal vectors; the associated tile
is the cone spanned by the rank-1 forms of those vectors.  This module
reconstructs forms from vector data, enumerates minimal vectors exactly,
computes tile facets and face lattices through the double description
machinery, and finds tile stabilizers inside SL_n(Z) by a pruned
backtracking search.  The built-in datasets cover ranks 2 through 5.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, floor, isqrt
from typing import Iterable, Optional, Sequence

from . import data
from .dd import cone_facets
from .exactq import (
    ExactMatrix,
    Q,
    as_q,
    int_rank,
    pairing_row,
    primitive_normalize,
    rank1_vec,
    vec_sym,
    vec_trace,
)
from .polytope import PointConfiguration, project_to_affine_span
from .sharbly import GroupElement, vector_set_maps

IntVector = tuple[int, ...]


@dataclass(frozen=True)
class PerfectForm:
    name: str
    n: int
    gram: tuple[tuple[Q, ...], ...]
    min_value: Q
    min_vectors: tuple[IntVector, ...]  # one per +- pair, as given


@dataclass(frozen=True)
class Tile:
    """Oriented top-dimensional cone of a perfect form."""

    form: PerfectForm
    ray_vectors: tuple[IntVector, ...]  # primitive v, label = position
    rays: tuple[IntVector, ...]  # upper-triangle coordinates of v v^t
    section_points: tuple[tuple[Q, ...], ...]  # trace-1 scalings of the rays
    orientation: int = 1

    @property
    def n(self) -> int:
        return self.form.n

    @property
    def labels(self) -> range:
        return range(len(self.ray_vectors))


def rank1(v: Sequence[int]) -> ExactMatrix:
    """The symmetric rank-1 form v v^t."""
    v = tuple(v)
    if all(x == 0 for x in v):
        raise ValueError("rank-1 form of the zero vector")
    n = len(v)
    return ExactMatrix.from_rows([[v[i] * v[j] for j in range(n)] for i in range(n)])


def normalize_to_section(v_prime: Sequence, n: Optional[int] = None) -> tuple[Q, ...]:
    """Scale a nonzero positive semidefinite ray to trace 1.

    Takes upper-triangle coordinates; the trace section meets every ray of
    the cone of nonzero positive semidefinite forms, unlike any single
    coordinate hyperplane.
    """
    vec = tuple(as_q(x) for x in v_prime)
    if n is None:
        n = _rank_from_veclen(len(vec))
    t = vec_trace(vec, n)
    if t <= 0:
        raise ValueError("ray has nonpositive trace")
    return tuple(x / t for x in vec)


def _rank_from_veclen(d: int) -> int:
    n = (isqrt(8 * d + 1) - 1) // 2
    if n * (n + 1) // 2 != d:
        raise ValueError("not a symmetric-matrix coordinate vector")
    return n


# ---------------------------------------------------------------------------
# minimal vectors (exact ellipsoid enumeration)


def _ldl(gram: Sequence[Sequence[Q]]):
    """LDL^t decomposition; raises unless positive definite."""
    n = len(gram)
    d = [Q(0)] * n
    u = [[Q(0)] * n for _ in range(n)]
    for i in range(n):
        s = as_q(gram[i][i]) - sum(d[k] * u[k][i] * u[k][i] for k in range(i))
        if s <= 0:
            raise ValueError("form is not positive definite")
        d[i] = s
        u[i][i] = Q(1)
        for j in range(i + 1, n):
            t = as_q(gram[i][j]) - sum(d[k] * u[k][i] * u[k][j] for k in range(i))
            u[i][j] = t / d[i]
    return d, u


def _sqrt_floor(x: Q) -> int:
    if x < 0:
        return -1
    return isqrt(x.numerator * x.denominator) // x.denominator


def minimal_vectors(gram) -> tuple[Q, tuple[IntVector, ...]]:
    """Exact minimum of the form over nonzero integer vectors, with all
    attaining vectors up to sign."""
    rows = gram.row_list() if isinstance(gram, ExactMatrix) else [
        [as_q(x) for x in r] for r in gram
    ]
    n = len(rows)
    d, u = _ldl(rows)
    bound = min(rows[i][i] for i in range(n))
    found: list[tuple[Q, IntVector]] = []

    x = [0] * n

    def descend(i: int, remaining: Q) -> None:
        # Q(x) = sum_k d_k (x_k + sum_{j>k} u_kj x_j)^2, filled from the top
        c = sum(u[i][j] * x[j] for j in range(i + 1, n))
        s = _sqrt_floor(remaining / d[i])
        xmin = floor(-c) - s - 1
        xmax = ceil(-c) + s + 1
        for xi in range(xmin, xmax + 1):
            term = d[i] * (xi + c) ** 2
            if term > remaining:
                continue
            x[i] = xi
            if i == 0:
                if any(x):
                    value = bound - (remaining - term)
                    found.append((value, tuple(x)))
            else:
                descend(i - 1, remaining - term)
        x[i] = 0

    descend(n - 1, bound)
    if not found:
        raise AssertionError("no nonzero vector within the diagonal bound")
    mv = min(v for v, _ in found)
    attain = set()
    for v, vec in found:
        if v == mv:
            attain.add(primitive_normalize(vec))
    return mv, tuple(sorted(attain))


def form_from_minvecs(vectors: Iterable[Sequence[int]], name: str = "") -> PerfectForm:
    """The unique form with value 2 on the given vectors, verified perfect.

    Errors when the rank-1 forms fail to span, the solved form is not
    positive definite, or extra minimal vectors exist.
    """
    vs = tuple(primitive_normalize(v) for v in vectors)
    n = len(vs[0])
    dsym = n * (n + 1) // 2
    rows = [pairing_row(v) for v in vs]
    if int_rank(rows) < dsym:
        raise ValueError("rank-1 forms of the vectors do not span")
    from .exactq import solve

    sol = solve([[Q(x) for x in r] for r in rows], [Q(2)] * len(vs))
    if sol is None:
        raise ValueError("no form takes equal values on the vectors")
    gram = tuple(tuple(r) for r in vec_sym(sol, n))
    _ldl(gram)  # positive definiteness
    mv, attain = minimal_vectors(gram)
    if mv != 2 or set(attain) != {primitive_normalize(v) for v in vs}:
        raise ValueError("solved form is not perfect with the given vectors")
    return PerfectForm(name, n, gram, mv, vs)


# ---------------------------------------------------------------------------
# tiles


def tile_of(form: PerfectForm) -> Tile:
    rays = tuple(rank1_vec(v) for v in form.min_vectors)
    d = form.n * (form.n + 1) // 2
    if int_rank(rays) != d:
        raise ValueError("form is not perfect: rays do not span")
    section = tuple(normalize_to_section(r, form.n) for r in rays)
    return Tile(form, tuple(form.min_vectors), rays, section)


def tile_facets(tile: Tile) -> list[tuple[frozenset, IntVector]]:
    """Facets of the tile as (ray label set, inward functional).

    The functional is the upper-triangle coordinate vector of a symmetric
    matrix that is nonnegative against every ray and zero exactly on the
    facet's rays.
    """
    gens = [pairing_row(v) for v in tile.ray_vectors]
    return cone_facets(gens)


@dataclass(frozen=True)
class FaceLattice:
    """All faces of a tile, as ray label sets with cone dimensions."""

    faces: dict  # frozenset -> dim
    top: frozenset

    def dim(self, face: frozenset) -> int:
        return self.faces[face]


def face_lattice(tile: Tile) -> FaceLattice:
    facets = [set(f) for f, _ in tile_facets(tile)]
    top = frozenset(tile.labels)
    seen = {top}
    frontier = {frozenset(f) for f in facets}
    seen |= frontier
    while frontier:
        nxt = set()
        for face in frontier:
            for f in facets:
                g = face & f
                if g and g not in seen:
                    nxt.add(frozenset(g))
        seen |= nxt
        frontier = nxt
    faces = {}
    for face in seen:
        rays = [tile.rays[i] for i in sorted(face)]
        faces[face] = int_rank(rays)
    return FaceLattice(faces, top)


def minimal_face(lattice: FaceLattice, labels: Iterable[int]) -> frozenset:
    """Intersection of all faces containing the given ray labels."""
    s = frozenset(labels)
    if not s <= lattice.top:
        raise ValueError("labels are not rays of the tile")
    best = lattice.top
    for face in lattice.faces:
        if s <= face and face < best:
            best = face
    return best


# ---------------------------------------------------------------------------
# stabilizers


def stabilizer(tile: Tile) -> list[GroupElement]:
    """All g in SL_n(Z) with g . tile = tile.

    Search over sign-respecting bijections of the minimal vectors, pruned
    by the pairwise form values; every candidate matrix is verified to be
    integral with determinant one and to permute the rays.
    """
    return sorted(vector_set_maps(tile.ray_vectors, tile.ray_vectors, tile.n))


# ---------------------------------------------------------------------------
# datasets


@dataclass(frozen=True)
class DatasetEntry:
    name: str
    n: int
    vectors: tuple[IntVector, ...]
    aux: dict


def builtin_dataset(n: int) -> list[DatasetEntry]:
    """The embedded reference data for rank n (2 through 5), bit-exact."""
    if n not in data.FORMS:
        raise ValueError(f"no built-in data for rank {n}")
    out = []
    for name, vectors in data.FORMS[n]:
        aux: dict = {}
        if name == "D4":
            aux["triangulation"] = data.D4_TRIANGULATION
        if name == "D5":
            aux["facet"] = data.D5_FACET_F
            aux["facet_triangulations"] = (
                data.D5_F_TRIANGULATION_1,
                data.D5_F_TRIANGULATION_2,
            )
            aux["facet_flip_circuit"] = data.D5_F_CIRCUIT_LOCAL
            aux["facet_flip_sides"] = (
                data.D5_F_T_PLUS_LOCAL,
                data.D5_F_T_MINUS_LOCAL,
            )
        out.append(DatasetEntry(name, n, tuple(tuple(v) for v in vectors), aux))
    return out


def builtin_form(name: str) -> PerfectForm:
    for n, entries in data.FORMS.items():
        for ename, vectors in entries:
            if ename == name:
                return form_from_minvecs(vectors, name)
    raise ValueError(f"unknown form {name!r}")


def builtin_tile(name: str) -> Tile:
    return tile_of(builtin_form(name))


# ---------------------------------------------------------------------------
# section polytopes


def section_configuration(
    tile: Tile, labels: Optional[Sequence[int]] = None
) -> tuple[PointConfiguration, list[int]]:
    """The section polytope of a tile face as a full-dimensional
    configuration in its own affine span.

    Points appear in ascending ray-label order; the returned list maps the
    configuration labels back to tile labels.
    """
    sel = sorted(labels) if labels is not None else list(tile.labels)
    pts = [tile.section_points[i] for i in sel]
    coords = project_to_affine_span(pts)
    config = PointConfiguration.from_points(coords)
    return config, sel
