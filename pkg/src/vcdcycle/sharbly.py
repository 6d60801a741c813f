"""The sharbly chain complex over SL_n(Z), with exact coinvariant reduction.

A basic generator is a list of nonzero primitive integer column vectors,
modulo permutation signs, rescaling of the individual vectors, and the
vanishing of lists that do not span Q^n.  Chains carry rational
coefficients.  Reduction modulo SL_n(Z) is realized by an orbit dictionary:
representatives are found by a backtracking search over signed vector
bijections, pruned by the invariant pairing of each vector list against the
adjugate of its own covariance form.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, NamedTuple, Optional, Sequence

from .exactq import (
    Q,
    int_det,
    int_rank,
    mat_vec_int,
    primitive_normalize,
    rank1_vec,
)

IntVector = tuple[int, ...]
GroupElement = tuple[IntVector, ...]  # integer matrix rows, det +1


class BasicSharbly(NamedTuple):
    n: int
    vectors: tuple[IntVector, ...]

    @property
    def degree(self) -> int:
        return len(self.vectors) - self.n


ZERO = "zero"


def canonicalize(vectors: Sequence[Sequence], n: Optional[int] = None):
    """Canonical form of a symbol: ZERO, or (sign, BasicSharbly).

    Vectors are primitively normalized, sorted, and the permutation sign
    recorded.  The symbol is zero when two normalized vectors coincide or
    when the vectors do not span Q^n.
    """
    vs = [primitive_normalize(v) for v in vectors]
    if n is None:
        n = len(vs[0])
    if any(len(v) != n for v in vs):
        raise ValueError("vectors of mixed dimension")
    if len(set(vs)) != len(vs):
        return ZERO
    if int_rank(vs) < n:
        return ZERO
    order = sorted(range(len(vs)), key=lambda i: vs[i])
    sign = _perm_sign(order)
    return sign, BasicSharbly(n, tuple(vs[i] for i in order))


def _perm_sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# ---------------------------------------------------------------------------
# chains


class SharblyChain:
    """Formal Q-linear combination of canonical basic sharblies."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict[BasicSharbly, Q]] = None):
        self.terms: dict[BasicSharbly, Q] = dict(terms or {})

    def add(self, basic: BasicSharbly, coeff) -> None:
        c = self.terms.get(basic, Q(0)) + coeff
        if c == 0:
            self.terms.pop(basic, None)
        else:
            self.terms[basic] = c

    def add_symbol(self, vectors: Sequence[Sequence], coeff) -> None:
        res = canonicalize(vectors)
        if res is ZERO:
            return
        sign, basic = res
        self.add(basic, sign * Fraction(coeff))

    def __add__(self, other: "SharblyChain") -> "SharblyChain":
        out = SharblyChain(self.terms)
        for b, c in other.terms.items():
            out.add(b, c)
        return out

    def __sub__(self, other: "SharblyChain") -> "SharblyChain":
        out = SharblyChain(self.terms)
        for b, c in other.terms.items():
            out.add(b, -c)
        return out

    def scale(self, a) -> "SharblyChain":
        a = Fraction(a)
        if a == 0:
            return SharblyChain()
        return SharblyChain({b: c * a for b, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, SharblyChain) and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"SharblyChain({len(self.terms)} terms)"


def boundary_basic(basic: BasicSharbly) -> SharblyChain:
    if basic.degree < 1:
        raise ValueError("boundary is defined for degree >= 1")
    out = SharblyChain()
    vs = basic.vectors
    for i in range(len(vs)):
        out.add_symbol(vs[:i] + vs[i + 1 :], (-1) ** i)  # (-1)^{i+1}, 1-based
    return out


def boundary(chain: SharblyChain) -> SharblyChain:
    out = SharblyChain()
    for basic, coeff in chain.terms.items():
        for b, c in boundary_basic(basic).terms.items():
            out.add(b, c * coeff)
    return out


# ---------------------------------------------------------------------------
# equivalence under SL_n(Z)
#
# For a vector list A = (a_1, ..., a_m) put S(A) = sum a_i a_i^t.  For
# g in GL_n(Z) and sign flips, S(gA) = g S(A) g^t, so det S is invariant
# and the pairing N(i, j) = a_i^t adj(S(A)) a_j transforms by the sign
# flips alone.  These integers prune the bijection search exactly.


@lru_cache(maxsize=None)
def _pair_data(vectors: tuple[IntVector, ...], n: int):
    s = [[0] * n for _ in range(n)]
    for v in vectors:
        for i in range(n):
            for j in range(n):
                s[i][j] += v[i] * v[j]
    dets = int_det(s)
    adj = _adjugate(s)
    m = len(vectors)
    av = [mat_vec_int(adj, v) for v in vectors]
    npair = [[sum(x * y for x, y in zip(av[i], vectors[j])) for j in range(m)]
             for i in range(m)]
    row_keys = tuple(
        (npair[i][i], tuple(sorted(abs(npair[i][j]) for j in range(m))))
        for i in range(m)
    )
    global_key = (n, m, dets, tuple(sorted(row_keys)))
    return npair, row_keys, global_key


def _adjugate(a: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(a)
    if n == 1:
        return [[1]]
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1 :] for r, row in enumerate(a) if r != i]
            out[j][i] = (-1) ** (i + j) * int_det(minor)
    return out


def invariant_key(vectors: Sequence[IntVector], n: int):
    """Equivalence-invariant fingerprint of a primitive vector list."""
    vs = tuple(sorted(primitive_normalize(v) for v in vectors))
    return _pair_data(vs, n)[2]


def _independent_base(vectors: Sequence[IntVector], n: int) -> list[int]:
    base: list[int] = []
    rows: list[IntVector] = []
    for i, v in enumerate(vectors):
        if int_rank(rows + [v]) > len(rows):
            base.append(i)
            rows.append(v)
            if len(base) == n:
                return base
    raise ValueError("vectors do not span Q^n")


def vector_set_maps(
    vs_a: Sequence[IntVector],
    vs_b: Sequence[IntVector],
    n: int,
) -> Iterator[GroupElement]:
    """All g in SL_n(Z) with g {±vs_a} = {±vs_b}, as matrix rows.

    Both inputs must be lists of distinct primitive vectors of equal length.
    """
    vs_a = tuple(vs_a)
    vs_b = tuple(vs_b)
    m = len(vs_a)
    if m != len(vs_b):
        return
    na, rka, gka = _pair_data(tuple(sorted(vs_a)), n)
    nb, rkb, gkb = _pair_data(tuple(sorted(vs_b)), n)
    if gka != gkb:
        return
    sa = sorted(vs_a)
    sb = sorted(vs_b)
    b_index = {v: i for i, v in enumerate(sb)}

    base = _independent_base(sa, n)
    cand = [
        [j for j in range(m) if rkb[j] == rka[i]]
        for i in base
    ]
    order = sorted(range(n), key=lambda k: len(cand[k]))
    basemat = [sa[base[k]] for k in range(n)]

    assign_j = [-1] * n
    assign_s = [0] * n
    used = set()

    def backtrack(pos: int) -> Iterator[GroupElement]:
        if pos == n:
            yield from _complete(
                sa, sb, b_index, base, basemat, assign_j, assign_s, n, m
            )
            return
        k = order[pos]
        i = base[k]
        for j in cand[k]:
            if j in used:
                continue
            ok = True
            for prev in range(pos):
                kp = order[prev]
                ip = base[kp]
                jp = assign_j[kp]
                if abs(na[i][ip]) != abs(nb[j][jp]):
                    ok = False
                    break
            if not ok:
                continue
            for s in (1, -1):
                good = True
                for prev in range(pos):
                    kp = order[prev]
                    ip, jp, sp = base[kp], assign_j[kp], assign_s[kp]
                    if na[i][ip] != s * sp * nb[j][jp]:
                        good = False
                        break
                if not good:
                    continue
                assign_j[k] = j
                assign_s[k] = s
                used.add(j)
                yield from backtrack(pos + 1)
                used.discard(j)
        assign_j[order[pos]] = -1

    yield from backtrack(0)


def _complete(sa, sb, b_index, base, basemat, assign_j, assign_s, n, m):
    from .exactq import _rref, Q as QQ  # late import to avoid cycle noise

    # solve g . basemat[k] = s_k * image_k, i.e. A^t X = B^t with X = g^t
    aug = [
        [QQ(x) for x in basemat[k]]
        + [QQ(assign_s[k] * y) for y in sb[assign_j[k]]]
        for k in range(n)
    ]
    red, pivots = _rref(aug)
    if pivots != list(range(n)):
        return
    g_rows = []
    for r in range(n):
        row = []
        for c in range(n):
            x = red[c][n + r]  # g[r][c] = (g^t)[c][r]
            if x.denominator != 1:
                return
            row.append(int(x))
        g_rows.append(tuple(row))
    g = tuple(g_rows)
    if int_det(g) != 1:
        return
    # verify the full set maps correctly
    seen = set()
    for v in sa:
        w = mat_vec_int(g, v)
        for x in w:
            if x != 0:
                if x < 0:
                    w = tuple(-y for y in w)
                else:
                    w = tuple(w)
                break
        j = b_index.get(w)
        if j is None or j in seen:
            return
        seen.add(j)
    yield g


def act(g: GroupElement, basic: BasicSharbly):
    """g . basic, canonicalized: ZERO or (sign, BasicSharbly)."""
    return canonicalize([mat_vec_int(g, v) for v in basic.vectors], basic.n)


def equivalences(
    a: BasicSharbly, b: BasicSharbly, want_sign: Optional[int] = None
) -> Iterator[tuple[GroupElement, int]]:
    """All (g, s) with g.a = s.b in the sharbly module."""
    if a.n != b.n or len(a.vectors) != len(b.vectors):
        return
    for g in vector_set_maps(a.vectors, b.vectors, a.n):
        res = act(g, a)
        if res is ZERO:
            continue
        sign, c = res
        if c != b:
            continue
        if want_sign is None or sign == want_sign:
            yield g, sign


def equivalent(a: BasicSharbly, b: BasicSharbly) -> Optional[tuple[GroupElement, int]]:
    """Some g in SL_n(Z) and sign s with g.a = s.b, if one exists."""
    for hit in equivalences(a, b):
        return hit
    return None


def self_negation_witness(a: BasicSharbly) -> Optional[GroupElement]:
    for g, _ in equivalences(a, a, want_sign=-1):
        return g
    return None


# ---------------------------------------------------------------------------
# coinvariants


@dataclass(frozen=True)
class OrbitClass:
    class_id: int
    rep: BasicSharbly
    is_zero: bool
    witness: Optional[GroupElement]  # g with g.rep = -rep when is_zero


@dataclass
class OrbitDictionary:
    """Orbit representatives keyed by invariant fingerprints.

    get-or-insert is atomic; independent boundary terms may be
    canonicalized concurrently.
    """

    classes: list[OrbitClass] = field(default_factory=list)
    by_key: dict = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)
    # per-basic cache of (class_id, sign, witness g mapping basic -> rep)
    _memo: dict = field(default_factory=dict, repr=False)

    def canonical_with_witness(
        self, a: BasicSharbly
    ) -> tuple[OrbitClass, int, GroupElement]:
        """(class, sign, g) with g.a = sign * class.rep."""
        with self._lock:
            hit = self._memo.get(a)
            if hit is not None:
                cid, sign, g = hit
                return self.classes[cid], sign, g
            key = invariant_key(a.vectors, a.n)
            for idx in self.by_key.get(key, ()):  # full check on collisions
                rep = self.classes[idx].rep
                found = equivalent(a, rep)
                if found is not None:
                    g, sign = found
                    self._memo[a] = (idx, sign, g)
                    return self.classes[idx], sign, g
            witness = self_negation_witness(a)
            cls = OrbitClass(len(self.classes), a, witness is not None, witness)
            self.classes.append(cls)
            self.by_key.setdefault(key, []).append(cls.class_id)
            ident = tuple(
                tuple(1 if i == j else 0 for j in range(a.n)) for i in range(a.n)
            )
            self._memo[a] = (cls.class_id, 1, ident)
            return cls, 1, ident


def orbit_canonical(a: BasicSharbly, odict: OrbitDictionary) -> tuple[OrbitClass, int]:
    cls, sign, _ = odict.canonical_with_witness(a)
    return cls, sign


def project_coinvariants(
    chain: SharblyChain, odict: OrbitDictionary
) -> dict[OrbitClass, Q]:
    """Image of a chain in the coinvariants: class -> coefficient.

    Self-negating classes and zero sums are dropped.
    """
    sums: dict[int, Q] = {}
    classes: dict[int, OrbitClass] = {}
    for basic, coeff in chain.terms.items():
        cls, sign = orbit_canonical(basic, odict)
        classes[cls.class_id] = cls
        sums[cls.class_id] = sums.get(cls.class_id, Q(0)) + sign * coeff
    out: dict[OrbitClass, Q] = {}
    for cid, total in sums.items():
        cls = classes[cid]
        if cls.is_zero or total == 0:
            continue
        out[cls] = total
    return out


# ---------------------------------------------------------------------------
# oriented top cones


def sharbly_of_cone(
    vectors: Sequence[Sequence], orientation: int = 1
) -> tuple[int, BasicSharbly]:
    """Basic sharbly of a top simplicial cone, signed by orientation.

    The returned pair (sign, basic) satisfies: sign * basic equals the
    symbol whose vector order gives the rank-1 forms positive determinant
    in the upper-triangle coordinates, times the orientation datum.
    """
    res = canonicalize(vectors)
    if res is ZERO:
        raise ValueError("rays are dependent or fail to span")
    _, basic = res
    n = basic.n
    d = n * (n + 1) // 2
    if len(basic.vectors) != d:
        raise ValueError("a top cone needs n(n+1)/2 rays")
    dmat = [rank1_vec(v) for v in basic.vectors]
    dval = int_det(dmat)
    if dval == 0:
        raise ValueError("rays are dependent in the space of forms")
    sign = 1 if dval > 0 else -1
    if orientation not in (1, -1):
        raise ValueError("orientation datum must be +-1")
    return orientation * sign, basic


# ---------------------------------------------------------------------------
# antisymmetrized tuples of points (shared with the polytope identities)

Point = tuple[Q, ...]


def antisym_term(points: Sequence[Point]) -> Optional[tuple[int, tuple[Point, ...]]]:
    """Canonical (sign, sorted tuple), or None for a repeated point."""
    pts = [tuple(Fraction(x) for x in p) for p in points]
    if len(set(pts)) != len(pts):
        return None
    order = sorted(range(len(pts)), key=lambda i: pts[i])
    return _perm_sign(order), tuple(pts[i] for i in order)


class AntisymSum:
    """Formal Q-sum of antisymmetrized point tuples."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict] = None):
        self.terms: dict[tuple[Point, ...], Q] = dict(terms or {})

    def add(self, points: Sequence[Point], coeff) -> None:
        t = antisym_term(points)
        if t is None:
            return
        sign, key = t
        c = self.terms.get(key, Q(0)) + sign * Fraction(coeff)
        if c == 0:
            self.terms.pop(key, None)
        else:
            self.terms[key] = c

    def __add__(self, other: "AntisymSum") -> "AntisymSum":
        out = AntisymSum(self.terms)
        for k, c in other.terms.items():
            cc = out.terms.get(k, Q(0)) + c
            if cc == 0:
                out.terms.pop(k, None)
            else:
                out.terms[k] = cc
        return out

    def scale(self, a) -> "AntisymSum":
        a = Fraction(a)
        if a == 0:
            return AntisymSum()
        return AntisymSum({k: c * a for k, c in self.terms.items()})

    def __sub__(self, other: "AntisymSum") -> "AntisymSum":
        return self + other.scale(-1)

    def boundary(self) -> "AntisymSum":
        out = AntisymSum()
        for key, coeff in self.terms.items():
            for i in range(len(key)):
                out.add(key[:i] + key[i + 1 :], (-1) ** i * coeff)
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, AntisymSum) and self.terms == other.terms

    def __repr__(self) -> str:
        return f"AntisymSum({len(self.terms)} terms)"
