"""Sign and degeneracy certificates on the cocycle side.

The pairing that detects the fundamental class assigns a top symbol the
signed volume of its section simplex.  Nothing here evaluates a volume:
degenerate symbols (flipons) are in the kernel, and every other term of a
correctly oriented cycle must carry a positive sign, so positivity of the
pairing is certified from orientation signs and exact rank computations
alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Optional, Sequence

from .exactq import (
    Q,
    as_q,
    det,
    int_rank,
    rank1_vec,
    vec_trace,
)
from .sharbly import BasicSharbly


def _rank_from_veclen(d: int) -> int:
    n = (isqrt(8 * d + 1) - 1) // 2
    if n * (n + 1) // 2 != d:
        raise ValueError("not a symmetric-matrix coordinate vector")
    return n


@dataclass(frozen=True)
class OrientedSectionSimplex:
    """Ordered trace-1 section points (upper-triangle coordinates)."""

    points: tuple[tuple[Q, ...], ...]

    @property
    def proper(self) -> bool:
        from .exactq import affine_dim

        return affine_dim(self.points) == len(self.points) - 1


def epsilon(points: Sequence[Sequence], n: Optional[int] = None) -> int:
    """Orientation sign of d ordered section points; 0 when degenerate.

    The sign is the determinant sign of the point coordinates themselves:
    the section simplex inherits the orientation of the cone frame rooted
    at the origin, which makes the sign of an oriented top cone's section
    equal +1.
    """
    pts = [tuple(as_q(x) for x in p) for p in points]
    d = len(pts[0])
    if n is None:
        n = _rank_from_veclen(d)
    if len(pts) != d:
        raise ValueError("need exactly as many points as coordinates")
    for p in pts:
        if vec_trace(p, n) != 1:
            raise ValueError("point is not on the trace-1 section")
    dv = det(pts)
    return (dv > 0) - (dv < 0)


def section_points(basic: BasicSharbly) -> tuple[tuple[Q, ...], ...]:
    """Trace-1 scalings of the rank-1 forms of the symbol's vectors."""
    from .voronoi import normalize_to_section

    return tuple(
        normalize_to_section(rank1_vec(v), basic.n) for v in basic.vectors
    )


def is_flipon(basic: BasicSharbly) -> bool:
    """True when the section points span affine dimension at most d - 2.

    Equivalent to linear dependence of the rank-1 forms, hence to the
    vanishing of the orientation sign; exact rank test.
    """
    n = basic.n
    d = n * (n + 1) // 2
    if len(basic.vectors) != d:
        raise ValueError("flipon test applies to top symbols only")
    rows = [rank1_vec(v) for v in basic.vectors]
    return int_rank(rows) < d


@dataclass(frozen=True)
class TermVerdict:
    rep: tuple[tuple[int, ...], ...]
    coefficient: Q
    verdict: str  # "flipon" | "proper-positive" | "proper-negative"
    sign: int


@dataclass(frozen=True)
class PositivityCertificate:
    """Positivity of the volume pairing, term by term.

    Valid when every non-degenerate term contributes a positive multiple
    of a positive volume and at least one such term exists.
    """

    verdicts: tuple[TermVerdict, ...]
    valid: bool


def mu_sign_certificate(z) -> PositivityCertificate:
    """Classify each coinvariant term of a cycle chain.

    Flipon terms contribute nothing; every other term must have
    coefficient times orientation sign positive.
    """
    verdicts = []
    proper_positive = 0
    ok = True
    items = sorted(z.coin.items(), key=lambda kv: kv[0].class_id)
    for cls, coeff in items:
        rep = cls.rep
        if is_flipon(rep):
            verdicts.append(TermVerdict(rep.vectors, coeff, "flipon", 0))
            continue
        sign = epsilon(section_points(rep), rep.n)
        if coeff * sign > 0:
            verdicts.append(TermVerdict(rep.vectors, coeff, "proper-positive", sign))
            proper_positive += 1
        else:
            verdicts.append(TermVerdict(rep.vectors, coeff, "proper-negative", sign))
            ok = False
    valid = ok and proper_positive >= 1
    return PositivityCertificate(tuple(verdicts), valid)


def euclidean_volume_section(simplex: OrientedSectionSimplex) -> Q:
    """Squared Euclidean volume of a proper section simplex.

    The square keeps the value rational; degenerate input is an error.
    """
    pts = simplex.points
    k = len(pts) - 1
    base = pts[0]
    edges = [[x - y for x, y in zip(p, base)] for p in pts[1:]]
    gram = [[sum(a * b for a, b in zip(u, v)) for v in edges] for u in edges]
    g = det(gram)
    if g == 0:
        raise ValueError("degenerate section simplex")
    fact = 1
    for i in range(2, k + 1):
        fact *= i
    return g / (fact * fact)
