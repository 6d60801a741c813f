"""Built-in form and triangulation data for ranks 2 through 5.

Minimal-vector matrices are stored column by column, bit-exact; the
rank-4 tile subdivision and the rank-5 facet data keep their original
vertex labels.  Nothing here is computed: these tuples are the reference
inputs the verification pipeline runs against.
"""

from __future__ import annotations


def _an_vectors(n: int) -> tuple[tuple[int, ...], ...]:
    """Minimal vectors of the root form: e_i and e_i - e_j (i < j)."""
    vs = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        vs.append(tuple(e))
    for i in range(n):
        for j in range(i + 1, n):
            e = [0] * n
            e[i], e[j] = 1, -1
            vs.append(tuple(e))
    return tuple(vs)


A2_VECTORS = _an_vectors(2)
A3_VECTORS = _an_vectors(3)
A4_VECTORS = _an_vectors(4)
A5_VECTORS = _an_vectors(5)

D4_VECTORS = (
    (-1, -1, 0, 1),
    (-1, 0, -1, 1),
    (-1, 0, 0, 0),
    (-1, 0, 0, 1),
    (-1, 0, 1, 0),
    (-1, 1, 0, 0),
    (0, -1, -1, 1),
    (0, -1, 0, 0),
    (0, -1, 0, 1),
    (0, -1, 1, 0),
    (0, 0, -1, 0),
    (0, 0, -1, 1),
)

A5P3_VECTORS = (
    (1, 1, 1, 1, 1),
    (0, 1, 1, 1, 1),
    (1, 0, 1, 1, 1),
    (0, 0, 1, 0, 1),
    (0, 0, 1, 1, 0),
    (0, 0, 1, 0, 0),
    (1, 1, 0, 1, 1),
    (0, 1, 0, 0, 1),
    (1, 0, 0, 0, 1),
    (0, 0, 0, 0, 1),
    (0, 1, 0, 1, 0),
    (0, 1, 0, 0, 0),
    (1, 0, 0, 1, 0),
    (0, 0, 0, 1, 0),
    (1, 0, 0, 0, 0),
)

D5_VECTORS = (
    (0, 0, 0, 1, 0),
    (1, 0, 0, -1, 0),
    (0, 1, 0, -1, 0),
    (0, 0, 1, -1, 0),
    (0, 0, 1, 1, -1),
    (0, 1, 0, 1, -1),
    (1, 0, 0, 1, -1),
    (0, 0, 0, 1, -1),
    (1, 0, 0, 0, -1),
    (0, 1, 0, 0, -1),
    (1, 1, 0, 0, -1),
    (0, 0, 1, 0, -1),
    (1, 0, 1, 0, -1),
    (0, 1, 1, 0, -1),
    (0, 0, 1, 0, 0),
    (1, 0, -1, 0, 0),
    (0, 1, -1, 0, 0),
    (0, 1, 0, 0, 0),
    (1, -1, 0, 0, 0),
    (1, 0, 0, 0, 0),
)

# 16-cone subdivision of the rank-4 non-simplicial tile, by column labels.
D4_TRIANGULATION = (
    (0, 1, 2, 3, 4, 5, 6, 7, 8, 10),
    (0, 1, 3, 4, 5, 6, 7, 8, 9, 10),
    (0, 1, 2, 4, 5, 6, 7, 8, 9, 10),
    (0, 1, 2, 3, 4, 5, 7, 8, 9, 10),
    (1, 2, 3, 4, 5, 6, 7, 8, 10, 11),
    (1, 3, 4, 5, 6, 7, 8, 9, 10, 11),
    (1, 2, 4, 5, 6, 7, 8, 9, 10, 11),
    (1, 2, 3, 4, 5, 7, 8, 9, 10, 11),
    (0, 1, 2, 3, 4, 6, 7, 8, 10, 11),
    (0, 1, 3, 4, 6, 7, 8, 9, 10, 11),
    (0, 1, 2, 4, 6, 7, 8, 9, 10, 11),
    (0, 1, 2, 3, 4, 7, 8, 9, 10, 11),
    (0, 1, 2, 3, 4, 5, 7, 8, 9, 11),
    (0, 1, 2, 4, 5, 6, 7, 8, 9, 11),
    (0, 1, 3, 4, 5, 6, 7, 8, 9, 11),
    (0, 1, 2, 3, 4, 5, 6, 7, 8, 11),
)

# A 16-vertex non-simplicial facet of the rank-5 tile with 20 rays,
# by ray labels, and two of its three regular triangulations.
D5_FACET_F = (0, 1, 3, 4, 5, 6, 7, 8, 9, 11, 12, 13, 14, 15, 18, 19)

D5_F_TRIANGULATION_1 = (
    (0, 1, 3, 4, 5, 6, 7, 8, 9, 11, 12, 13, 14, 18),
    (0, 1, 3, 4, 5, 6, 7, 8, 9, 11, 13, 14, 15, 18),
    (0, 1, 3, 4, 5, 6, 7, 9, 11, 12, 13, 14, 18, 19),
    (0, 1, 3, 4, 5, 6, 7, 9, 11, 13, 14, 15, 18, 19),
    (0, 1, 3, 4, 5, 6, 8, 9, 11, 12, 13, 14, 15, 18),
    (0, 1, 3, 4, 5, 6, 9, 11, 12, 13, 14, 15, 18, 19),
    (0, 1, 3, 5, 6, 7, 8, 9, 11, 12, 13, 14, 18, 19),
    (0, 1, 3, 5, 6, 7, 8, 9, 11, 13, 14, 15, 18, 19),
    (0, 1, 3, 5, 6, 8, 9, 11, 12, 13, 14, 15, 18, 19),
    (0, 1, 4, 5, 6, 7, 8, 9, 11, 12, 13, 14, 18, 19),
    (0, 1, 4, 5, 6, 7, 8, 9, 11, 13, 14, 15, 18, 19),
    (0, 1, 4, 5, 6, 8, 9, 11, 12, 13, 14, 15, 18, 19),
    (1, 3, 4, 5, 6, 7, 8, 9, 11, 12, 13, 14, 15, 18),
    (1, 3, 4, 5, 6, 7, 9, 11, 12, 13, 14, 15, 18, 19),
    (1, 3, 5, 6, 7, 8, 9, 11, 12, 13, 14, 15, 18, 19),
    (1, 4, 5, 6, 7, 8, 9, 11, 12, 13, 14, 15, 18, 19),
)

D5_F_TRIANGULATION_2 = (
    (0, 1, 3, 4, 5, 6, 7, 8, 9, 11, 12, 13, 15, 18),
    (0, 1, 3, 4, 5, 6, 7, 8, 9, 12, 13, 14, 15, 18),
    (0, 1, 3, 4, 5, 6, 7, 9, 11, 12, 13, 15, 18, 19),
    (0, 1, 3, 4, 5, 6, 7, 9, 12, 13, 14, 15, 18, 19),
    (0, 1, 3, 4, 5, 7, 8, 9, 11, 12, 13, 14, 15, 18),
    (0, 1, 3, 4, 5, 7, 9, 11, 12, 13, 14, 15, 18, 19),
    (0, 1, 3, 5, 6, 7, 8, 9, 11, 12, 13, 15, 18, 19),
    (0, 1, 3, 5, 6, 7, 8, 9, 12, 13, 14, 15, 18, 19),
    (0, 1, 3, 5, 7, 8, 9, 11, 12, 13, 14, 15, 18, 19),
    (0, 1, 4, 5, 6, 7, 8, 9, 11, 12, 13, 15, 18, 19),
    (0, 1, 4, 5, 6, 7, 8, 9, 12, 13, 14, 15, 18, 19),
    (0, 1, 4, 5, 7, 8, 9, 11, 12, 13, 14, 15, 18, 19),
    (0, 3, 4, 5, 6, 7, 8, 9, 11, 12, 13, 14, 15, 18),
    (0, 3, 4, 5, 6, 7, 9, 11, 12, 13, 14, 15, 18, 19),
    (0, 3, 5, 6, 7, 8, 9, 11, 12, 13, 14, 15, 18, 19),
    (0, 4, 5, 6, 7, 8, 9, 11, 12, 13, 14, 15, 18, 19),
)

# The single flip between the two triangulations above, in the facet's own
# labels 0..15 (sorted order of the ray labels): the circuit and the two
# triangulation sides of the exchanged region.
D5_F_CIRCUIT_LOCAL = (0, 1, 5, 6, 9, 10, 12, 13)

D5_F_T_PLUS_LOCAL = (
    (0, 1, 5, 6, 9, 10, 13),
    (0, 1, 5, 6, 10, 12, 13),
    (0, 1, 6, 9, 10, 12, 13),
    (0, 5, 6, 9, 10, 12, 13),
)

D5_F_T_MINUS_LOCAL = (
    (0, 1, 5, 6, 9, 10, 12),
    (0, 1, 5, 6, 9, 12, 13),
    (0, 1, 5, 9, 10, 12, 13),
    (1, 5, 6, 9, 10, 12, 13),
)

FORMS = {
    2: (("A2", A2_VECTORS),),
    3: (("A3", A3_VECTORS),),
    4: (("A4", A4_VECTORS), ("D4", D4_VECTORS)),
    5: (("A5", A5_VECTORS), ("A5+3", A5P3_VECTORS), ("D5", D5_VECTORS)),
}
