"""Exact combinatorics of rational point configurations.

Convex hull facets, placing and lifted triangulations, regularity
witnesses, circuits with their sign partitions, bistellar flips, and the
antisymmetrized gluing identities that relate a flip to the difference of
the two triangulations it connects.  All geometry is exact; validity and
regularity come with rational witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional, Sequence

from . import lp
from .dd import cone_facets
from .exactq import Q, as_q, int_det, int_rank, nullspace, solve, vec_q
from .sharbly import AntisymSum

Simplex = frozenset  # of point labels
Triangulation = frozenset  # of Simplex
LiftingHeights = dict  # label -> Fraction


class DegenerateConfiguration(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class PointConfiguration:
    """Labeled exact points; label i is position i."""

    ambient_dim: int
    points: tuple[tuple[Q, ...], ...]

    @staticmethod
    def from_points(points: Sequence[Sequence]) -> "PointConfiguration":
        pts = tuple(vec_q(p) for p in points)
        if not pts:
            raise ValueError("empty point configuration")
        dim = len(pts[0])
        if any(len(p) != dim for p in pts):
            raise ValueError("points of mixed ambient dimension")
        return PointConfiguration(dim, pts)

    @property
    def labels(self) -> range:
        return range(len(self.points))

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class Circuit:
    """Minimal affine dependence with its sign partition."""

    labels: frozenset
    positive_part: frozenset
    negative_part: frozenset
    dependence: tuple[tuple[int, int], ...]  # (label, integer coefficient)

    def coefficient(self, label: int) -> int:
        for l, c in self.dependence:
            if l == label:
                return c
        raise KeyError(label)


@dataclass(frozen=True)
class Flip:
    """Exchange of the two triangulations of a circuit inside a larger one.

    `link` is the set of label sets coned onto the circuit simplices; the
    removed simplices are exactly {(Z - w) | L : w in removed_part, L in
    link} and the inserted ones use the opposite part.
    """

    circuit: Circuit
    removed_part: frozenset
    removed: Triangulation
    inserted: Triangulation
    link: frozenset  # of frozensets of labels outside the circuit

    @property
    def inserted_part(self) -> frozenset:
        parts = (self.circuit.positive_part, self.circuit.negative_part)
        return parts[1] if self.removed_part == parts[0] else parts[0]


# ---------------------------------------------------------------------------
# integer coordinates


@lru_cache(maxsize=None)
def _int_points(config: PointConfiguration) -> tuple[tuple[int, ...], ...]:
    """All points scaled by one common denominator (a similarity)."""
    l = 1
    for p in config.points:
        for x in p:
            l = l * x.denominator // gcd(l, x.denominator)
    return tuple(tuple(int(x * l) for x in p) for p in config.points)


def _homog(config: PointConfiguration) -> list[tuple[int, ...]]:
    return [(1,) + p for p in _int_points(config)]


def config_affine_dim(config: PointConfiguration, labels=None) -> int:
    pts = _int_points(config)
    sel = list(labels) if labels is not None else list(config.labels)
    base = pts[sel[0]]
    diffs = [[x - y for x, y in zip(pts[i], base)] for i in sel[1:]]
    return int_rank(diffs) if diffs else 0


def _require_full_dim(config: PointConfiguration) -> None:
    if config_affine_dim(config) != config.ambient_dim:
        raise DegenerateConfiguration(
            "configuration is not full-dimensional in its ambient space"
        )


def _simplex_det(config: PointConfiguration, simplex: Iterable[int]) -> int:
    pts = _int_points(config)
    labels = sorted(simplex)
    base = pts[labels[0]]
    rows = [[x - y for x, y in zip(pts[i], base)] for i in labels[1:]]
    return int_det(rows)


def simplex_orientation(config: PointConfiguration, simplex: Iterable[int]) -> int:
    """Sign of the ordered simplex (labels ascending) in the ambient space."""
    d = _simplex_det(config, simplex)
    return (d > 0) - (d < 0)


# ---------------------------------------------------------------------------
# hulls


def convex_hull_facets(config: PointConfiguration):
    """All facets as (vertex label set, inward integer functional).

    The functional (c, a_1, ..., a_m) satisfies c + a.x >= 0 on the
    configuration, with equality exactly on the facet's points.
    """
    _require_full_dim(config)
    facets = cone_facets(_homog(config))
    return [(tight, normal) for tight, normal in facets]


def _boundary_faces(triangulation: Triangulation) -> dict:
    """Codimension-1 faces lying in exactly one simplex, with that simplex."""
    count: dict[frozenset, list] = {}
    for s in triangulation:
        for v in s:
            f = s - {v}
            count.setdefault(f, []).append(s)
    return {f: ss[0] for f, ss in count.items() if len(ss) == 1}


def _face_functional(pts, face_labels: Sequence[int]):
    """Primitive normal n and offset with n.x = n.p0 on the face."""
    labels = sorted(face_labels)
    base = pts[labels[0]]
    diffs = [[as_q(x - y) for x, y in zip(pts[i], base)] for i in labels[1:]]
    kernel = nullspace(diffs)
    if len(kernel) != 1:
        raise DegenerateConfiguration("face does not span a hyperplane")
    from .exactq import primitive_normalize

    normal = primitive_normalize(kernel[0])
    offset = sum(a * b for a, b in zip(normal, base))
    return normal, offset


def placing_triangulation(
    config: PointConfiguration,
    order: Optional[Sequence[int]] = None,
    return_witness: bool = True,
):
    """Triangulation by placing points in the given label order.

    Regular by construction; when `return_witness` is set, a witness
    height vector is also returned.
    """
    _require_full_dim(config)
    pts = _int_points(config)
    m = config.ambient_dim
    order = list(order) if order is not None else list(config.labels)
    if sorted(order) != list(config.labels):
        raise ValueError("order must be a permutation of the labels")

    initial: list[int] = []
    rows: list = []
    for i in order:
        base = pts[initial[0]] if initial else None
        cand = rows + (
            [[x - y for x, y in zip(pts[i], base)]] if initial else []
        )
        if not initial:
            initial.append(i)
            continue
        if int_rank(cand) > len(rows):
            rows = cand
            initial.append(i)
        if len(initial) == m + 1:
            break
    if len(initial) < m + 1:
        raise DegenerateConfiguration("no full-dimensional initial simplex")

    tri = {frozenset(initial)}
    used = set(initial)
    for i in order:
        if i in used:
            continue
        used.add(i)
        boundary = _boundary_faces(frozenset(tri))
        new_simplices = []
        for face, parent in boundary.items():
            normal, offset = _face_functional(pts, face)
            apex = next(iter(parent - face))
            inward = sum(a * b for a, b in zip(normal, pts[apex])) - offset
            value = sum(a * b for a, b in zip(normal, pts[i])) - offset
            if inward < 0:
                inward, value = -inward, -value
            if value < 0:  # strictly visible
                new_simplices.append(face | {i})
        tri.update(new_simplices)
    result = frozenset(tri)
    if not return_witness:
        return result
    witness = is_regular(config, result, check=False)
    if witness is None:
        raise AssertionError("placing triangulation has no height witness")
    return result, witness


def _hull_volume_scaled(config: PointConfiguration) -> int:
    tri = placing_triangulation(config, return_witness=False)
    return sum(abs(_simplex_det(config, s)) for s in tri)


def hull_volume_scaled(config: PointConfiguration) -> int:
    """Hull volume times m! in the configuration's integer scale."""
    return _hull_volume_scaled(config)


# ---------------------------------------------------------------------------
# validity


def _proper_pair_lp(config: PointConfiguration, s1: Simplex, s2: Simplex) -> bool:
    """True when conv(s1) and conv(s2) meet in conv(s1 & s2)."""
    pts = _int_points(config)
    common = s1 & s2
    a1, a2 = sorted(s1), sorted(s2)
    m = config.ambient_dim
    n1, n2 = len(a1), len(a2)
    rows = []
    for c in range(m):
        rows.append(
            [Q(pts[i][c]) for i in a1] + [Q(-pts[j][c]) for j in a2]
        )
    rows.append([Q(1)] * n1 + [Q(0)] * n2)
    rows.append([Q(0)] * n1 + [Q(1)] * n2)
    rhs = [Q(0)] * m + [Q(1), Q(1)]
    objective = [Q(1) if i not in common else Q(0) for i in a1] + [Q(0)] * n2
    status, value, _ = lp.simplex_max(objective, rows, rhs)
    if status == lp.INFEASIBLE:
        return True  # hulls disjoint
    if status != lp.OPTIMAL:
        return False
    return value == 0


def is_valid_triangulation(config: PointConfiguration, triangulation) -> bool:
    """Exact validity: full-dimensional simplices, volume additivity, and
    pairwise intersection in common faces."""
    try:
        _require_full_dim(config)
    except DegenerateConfiguration:
        return False
    tri = [frozenset(s) for s in triangulation]
    if len(set(tri)) != len(tri) or not tri:
        return False
    m = config.ambient_dim
    labels = set(config.labels)
    dets = {}
    for s in tri:
        if len(s) != m + 1 or not s <= labels:
            return False
        d = _simplex_det(config, s)
        if d == 0:
            return False
        dets[s] = abs(d)
    if sum(dets.values()) != _hull_volume_scaled(config):
        return False
    pts = _int_points(config)
    tri_list = sorted(tri, key=sorted)
    for i in range(len(tri_list)):
        for j in range(i + 1, len(tri_list)):
            s1, s2 = tri_list[i], tri_list[j]
            common = s1 & s2
            if len(common) == m:  # shared wall: strict opposite sides
                normal, offset = _face_functional(pts, common)
                a = next(iter(s1 - common))
                b = next(iter(s2 - common))
                va = sum(x * y for x, y in zip(normal, pts[a])) - offset
                vb = sum(x * y for x, y in zip(normal, pts[b])) - offset
                if va * vb >= 0:
                    return False
            elif not _proper_pair_lp(config, s1, s2):
                return False
    return True


# ---------------------------------------------------------------------------
# regularity


def _barycentric(config: PointConfiguration, simplex: Sequence[int], label: int):
    """Affine coordinates of a point with respect to a full simplex."""
    pts = _int_points(config)
    labels = sorted(simplex)
    cols = [[Q(1)] + [Q(x) for x in pts[i]] for i in labels]
    mat = [list(r) for r in zip(*cols)]
    rhs = [Q(1)] + [Q(x) for x in pts[label]]
    sol = solve(mat, rhs)
    if sol is None:
        raise DegenerateConfiguration("degenerate simplex in triangulation")
    return dict(zip(labels, sol))


def is_regular(
    config: PointConfiguration, triangulation, check: bool = True
) -> Optional[LiftingHeights]:
    """Witness heights when the triangulation is regular, else None.

    The witness lifts every point strictly above the affine span of every
    lifted simplex it does not belong to (scaled to a margin of 1).
    """
    tri = [frozenset(s) for s in triangulation]
    if check and not is_valid_triangulation(config, tri):
        raise ValueError("not a valid triangulation")
    nlab = len(config.points)
    rows = []
    rhs = []
    for s in tri:
        for w in config.labels:
            if w in s:
                continue
            lam = _barycentric(config, sorted(s), w)
            row = [Q(0)] * nlab
            row[w] = Q(1)
            for l, c in lam.items():
                row[l] -= c
            rows.append(row)
            rhs.append(Q(1))
    if not rows:  # a single simplex: any heights work
        return {i: Q(0) for i in range(nlab)}
    sol = lp.feasible_ge(rows, rhs)
    if sol is None:
        return None
    return {i: sol[i] for i in range(nlab)}


def lift_triangulation(config: PointConfiguration, heights) -> Triangulation:
    """Lower-hull triangulation induced by generic heights."""
    _require_full_dim(config)
    pts = _int_points(config)
    m = config.ambient_dim
    hs = [as_q(heights[i]) for i in config.labels]
    l = 1
    for h in hs:
        l = l * h.denominator // gcd(l, h.denominator)
    hint = [int(h * l) for h in hs]
    lifted = [(1,) + p + (hint[i],) for i, p in enumerate(pts)]
    base = lifted[0]
    diffs = [[x - y for x, y in zip(q, base)] for q in lifted[1:]]
    if int_rank(diffs) == m:  # affine heights: flat lift
        if len(config.points) == m + 1:
            return frozenset({frozenset(config.labels)})
        raise DegenerateConfiguration("heights are not generic")
    facets = cone_facets(lifted)
    tri = set()
    for tight, normal in facets:
        if normal[-1] <= 0:  # not a lower facet
            continue
        if len(tight) != m + 1:
            raise DegenerateConfiguration("heights are not generic")
        tri.add(frozenset(tight))
    result = frozenset(tri)
    if sum(abs(_simplex_det(config, s)) for s in result) != _hull_volume_scaled(
        config
    ):
        raise DegenerateConfiguration("heights are not generic")
    return result


# ---------------------------------------------------------------------------
# circuits and flips


def affine_dependence(
    config: PointConfiguration, labels: Optional[Iterable[int]] = None
) -> Circuit:
    """The circuit carried by points with exactly one affine dependence."""
    sel = sorted(labels) if labels is not None else list(config.labels)
    pts = _int_points(config)
    cols = [(1,) + pts[i] for i in sel]
    mat = [[Q(x) for x in row] for row in zip(*cols)]
    kernel = nullspace(mat)
    if len(kernel) == 0:
        raise ValueError("points are affinely independent")
    if len(kernel) > 1:
        raise ValueError("more than one affine dependence")
    from .exactq import primitive_normalize

    coeffs = list(primitive_normalize(kernel[0]))
    if any(c == 0 for c in coeffs):
        raise ValueError("dependence does not involve every point")
    if coeffs[0] < 0:
        coeffs = [-c for c in coeffs]
    dep = tuple(zip(sel, coeffs))
    pos = frozenset(l for l, c in dep if c > 0)
    neg = frozenset(l for l, c in dep if c < 0)
    return Circuit(frozenset(sel), pos, neg, dep)


def gkz_two_triangulations(z: Circuit):
    """The two triangulations of a circuit's hull."""
    t_plus = frozenset(frozenset(z.labels - {w}) for w in z.positive_part)
    t_minus = frozenset(frozenset(z.labels - {w}) for w in z.negative_part)
    return t_plus, t_minus


def _circuit_of(config: PointConfiguration, labels: Iterable[int]) -> Optional[Circuit]:
    """The unique circuit inside a label set with a 1-dim dependence space."""
    sel = sorted(labels)
    pts = _int_points(config)
    cols = [(1,) + pts[i] for i in sel]
    mat = [[Q(x) for x in row] for row in zip(*cols)]
    kernel = nullspace(mat)
    if len(kernel) != 1:
        return None
    support = [sel[i] for i, c in enumerate(kernel[0]) if c != 0]
    if len(support) < 3:
        return None
    return affine_dependence(config, support)


def _flip_from_circuit(
    config: PointConfiguration, tri: Triangulation, z: Circuit
) -> Optional[Flip]:
    """The flip supported on circuit z in tri, if the star decomposes."""
    for part in (z.positive_part, z.negative_part):
        star: dict[int, set] = {w: set() for w in part}
        covered = set()
        for s in tri:
            for w in part:
                if z.labels - {w} <= s:
                    star[w].add(frozenset(s - (z.labels - {w})))
                    covered.add(s)
                    break
        if any(not v for v in star.values()):
            continue
        links = list(star.values())
        if any(l != links[0] for l in links[1:]):
            continue
        link = frozenset(links[0])
        removed = frozenset(
            frozenset((z.labels - {w}) | f) for w in part for f in link
        )
        if removed != frozenset(covered) or not removed <= tri:
            continue
        other = z.negative_part if part == z.positive_part else z.positive_part
        inserted = frozenset(
            frozenset((z.labels - {w}) | f) for w in other for f in link
        )
        if any(_simplex_det(config, s) == 0 for s in inserted):
            continue
        return Flip(z, part, removed, inserted, link)
    return None


def supported_flips(config: PointConfiguration, triangulation) -> list[Flip]:
    """All flips applicable to the triangulation (result validity checked)."""
    tri = frozenset(frozenset(s) for s in triangulation)
    m = config.ambient_dim
    candidates: dict[frozenset, Circuit] = {}

    wall_owner: dict[frozenset, list] = {}
    for s in tri:
        for v in s:
            wall_owner.setdefault(s - {v}, []).append(s)
    for wall, owners in wall_owner.items():
        if len(owners) == 2:
            z = _circuit_of(config, owners[0] | owners[1])
            if z is not None:
                candidates[z.labels] = z
    for s in tri:
        for w in config.labels:
            if w in s:
                continue
            z = _circuit_of(config, set(s) | {w})
            if z is not None and w in z.labels:
                candidates.setdefault(z.labels, z)

    flips = []
    seen = set()
    for z in candidates.values():
        f = _flip_from_circuit(config, tri, z)
        if f is None:
            continue
        key = (f.removed, f.inserted)
        if key in seen:
            continue
        seen.add(key)
        new_tri = (tri - f.removed) | f.inserted
        if is_valid_triangulation(config, new_tri):
            flips.append(f)
    flips.sort(key=lambda f: sorted(map(sorted, f.removed)))
    return flips


def apply_flip(config: PointConfiguration, triangulation, flip: Flip) -> Triangulation:
    tri = frozenset(frozenset(s) for s in triangulation)
    if not flip.removed <= tri:
        raise ValueError("flip's removed simplices are not in the triangulation")
    out = (tri - flip.removed) | flip.inserted
    if not is_valid_triangulation(config, out):
        raise ValueError("flip result is not a valid triangulation")
    return out


def _canon_tri(tri: Triangulation) -> tuple:
    return tuple(sorted(tuple(sorted(s)) for s in tri))


def enumerate_regular_triangulations(
    config: PointConfiguration, budget: int = 10000
) -> list[Triangulation]:
    """All regular triangulations: flip closure from a placing start."""
    start, _ = placing_triangulation(config)
    found = {_canon_tri(start): start}
    queue = [start]
    while queue:
        cur = queue.pop(0)
        for f in supported_flips(config, cur):
            nxt = (cur - f.removed) | f.inserted
            key = _canon_tri(nxt)
            if key in found:
                continue
            if is_regular(config, nxt, check=False) is None:
                continue
            found[key] = nxt
            queue.append(nxt)
            if len(found) > budget:
                raise BudgetExceeded("triangulation enumeration budget exceeded")
    return [found[k] for k in sorted(found)]


def flip_path(
    config: PointConfiguration, t1, t2, budget: int = 10000
) -> list[Flip]:
    """A shortest flip sequence from t1 to t2 through regular triangulations."""
    t1 = frozenset(frozenset(s) for s in t1)
    t2 = frozenset(frozenset(s) for s in t2)
    for t in (t1, t2):
        if is_regular(config, t, check=False) is None:
            raise ValueError("endpoint triangulation is not regular")
    if t1 == t2:
        return []
    start = _canon_tri(t1)
    target = _canon_tri(t2)
    parents: dict[tuple, Optional[tuple]] = {start: None}
    tris = {start: t1}
    queue = [start]
    while queue:
        key = queue.pop(0)
        cur = tris[key]
        for f in supported_flips(config, cur):
            nxt = (cur - f.removed) | f.inserted
            nkey = _canon_tri(nxt)
            if nkey in parents:
                continue
            if is_regular(config, nxt, check=False) is None:
                continue
            parents[nkey] = (key, f)
            tris[nkey] = nxt
            if nkey == target:
                path = []
                k = nkey
                while parents[k] is not None:
                    k, f = parents[k]
                    path.append(f)
                return list(reversed(path))
            queue.append(nkey)
            if len(parents) > budget:
                raise BudgetExceeded("flip path budget exceeded")
    raise ValueError("no flip path found between the triangulations")


# ---------------------------------------------------------------------------
# gluing identities


@dataclass(frozen=True)
class FlipIdentityCertificate:
    """Verified relation between a flip and its triangulation difference.

    Per link facet L, with circuit z_1 < ... < z_p, the alternating partial
    sum e_L * sum_i (-1)^i (z_1, ..., ^z_i, ..., z_p, L) equals the oriented
    removed-minus-inserted sum of the simplices joined with L.
    """

    signs: tuple[tuple[tuple[int, ...], int], ...]  # (sorted link facet, e)
    valid: bool


def _oriented_sum(config: PointConfiguration, simplices) -> AntisymSum:
    out = AntisymSum()
    for s in simplices:
        labels = sorted(s)
        sign = simplex_orientation(config, labels)
        if sign == 0:
            raise ValueError("degenerate simplex")
        out.add([config.points[i] for i in labels], sign)
    return out


def verify_flip_identity(config: PointConfiguration, flip: Flip) -> FlipIdentityCertificate:
    """Check the alternating-sum identity of a flip, link facet by link facet."""
    zlabels = sorted(flip.circuit.labels)
    p = len(zlabels)
    signs = []
    ok = True
    for link_facet in sorted(flip.link, key=sorted):
        lf = sorted(link_facet)
        lhs = AntisymSum()
        for i in range(p):
            tup = [config.points[l] for l in zlabels[:i] + zlabels[i + 1 :] + lf]
            lhs.add(tup, (-1) ** (i + 1))
        removed = [s for s in flip.removed if s - flip.circuit.labels == link_facet]
        inserted = [s for s in flip.inserted if s - flip.circuit.labels == link_facet]
        rhs = _oriented_sum(config, removed) - _oriented_sum(config, inserted)
        if lhs == rhs:
            signs.append((tuple(lf), 1))
        elif lhs.scale(-1) == rhs:
            signs.append((tuple(lf), -1))
        else:
            ok = False
            break
    if not ok:
        raise ValueError("flip identity fails for both signs")
    return FlipIdentityCertificate(tuple(signs), True)


def triangulation_difference(config: PointConfiguration, t1, t2) -> AntisymSum:
    """Oriented simplex sum of t1 minus that of t2."""
    return _oriented_sum(config, t1) - _oriented_sum(config, t2)


def flip_identity_sum(config: PointConfiguration, flip: Flip,
                      cert: FlipIdentityCertificate) -> AntisymSum:
    """The signed alternating sums of a verified flip, totalled over links."""
    zlabels = sorted(flip.circuit.labels)
    p = len(zlabels)
    out = AntisymSum()
    for lf, e in cert.signs:
        for i in range(p):
            tup = [config.points[l] for l in zlabels[:i] + zlabels[i + 1 :] + list(lf)]
            out.add(tup, e * (-1) ** (i + 1))
    return out


# ---------------------------------------------------------------------------
# affine span projection (for configurations presented inside a larger space)


def project_to_affine_span(points: Sequence[Sequence]) -> list[tuple[Q, ...]]:
    """Coordinates of the points inside their own affine span.

    Affine relations, convexity and orientation classes are preserved;
    the projection basis is chosen deterministically.
    """
    from .exactq import int_rows

    pts = [vec_q(p) for p in points]
    base = pts[0]
    basis: list[tuple] = []
    rows: list = []
    for p in pts[1:]:
        d = [x - y for x, y in zip(p, base)]
        if int_rank(int_rows(rows + [d])) > len(rows):
            rows.append(d)
            basis.append(tuple(d))
    k = len(basis)
    mat = [list(col) for col in zip(*basis)] if basis else []
    out = []
    for p in pts:
        rhs = [x - y for x, y in zip(p, base)]
        if k == 0:
            out.append(())
            continue
        sol = solve(mat, rhs)
        if sol is None:
            raise AssertionError("point outside its own affine span")
        out.append(tuple(sol))
    return out
