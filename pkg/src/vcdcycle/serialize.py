"""JSON encodings for chains, cycles, triangulations and certificates.

Rationals serialize as "p/q" (or "p" when the denominator is one); vectors
and matrices as nested integer lists; triangulations as sorted lists of
sorted label lists.  parse(serialize(x)) is the identity on every payload.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .cycle import BoundaryCertificate, CycleChain, TermProvenance
from .exactq import q_parse, q_str
from .sharbly import BasicSharbly, OrbitDictionary, SharblyChain, project_coinvariants


def chain_to_json(chain: SharblyChain) -> list:
    out = []
    for basic, coeff in sorted(chain.terms.items(), key=lambda kv: kv[0].vectors):
        out.append({"vectors": [list(v) for v in basic.vectors], "coeff": q_str(coeff)})
    return out


def chain_from_json(items: Iterable, n: int | None = None) -> SharblyChain:
    chain = SharblyChain()
    for item in items:
        vectors = [tuple(int(x) for x in v) for v in item["vectors"]]
        chain.add_symbol(vectors, q_parse(item["coeff"]))
    return chain


def matrix_to_json(rows) -> list:
    return [[int(x) for x in r] for r in rows]


def matrix_from_json(rows) -> tuple:
    return tuple(tuple(int(x) for x in r) for r in rows)


def triangulation_to_json(tri) -> list:
    return sorted(sorted(s) for s in tri)


def triangulation_from_json(items) -> frozenset:
    return frozenset(frozenset(int(x) for x in s) for s in items)


def circuit_to_json(circuit) -> dict:
    return {
        "labels": sorted(circuit.labels),
        "positive": sorted(circuit.positive_part),
        "negative": sorted(circuit.negative_part),
    }


def cycle_to_json(z: CycleChain) -> dict:
    return {
        "n": z.n,
        "chain": chain_to_json(z.raw),
        "stabilizer_orders": dict(sorted(z.stabilizer_orders.items())),
        "provenance": [
            {
                "tile": p.tile,
                "simplex": list(p.simplex),
                "weight": q_str(p.weight),
                "sign": p.sign,
                "vectors": [list(v) for v in p.basic.vectors],
            }
            for p in z.provenance
        ],
        "classes": [
            {
                "class_id": cls.class_id,
                "rep": [list(v) for v in cls.rep.vectors],
                "coeff": q_str(coeff),
                "is_zero": cls.is_zero,
                "witness_g": matrix_to_json(cls.witness) if cls.witness else None,
            }
            for cls, coeff in sorted(z.coin.items(), key=lambda kv: kv[0].class_id)
        ],
    }


def cycle_from_json(doc: dict) -> CycleChain:
    n = int(doc["n"])
    raw = chain_from_json(doc["chain"], n)
    provenance = []
    for p in doc["provenance"]:
        provenance.append(
            TermProvenance(
                p["tile"],
                tuple(int(x) for x in p["simplex"]),
                q_parse(p["weight"]),
                int(p["sign"]),
                BasicSharbly(n, tuple(tuple(int(x) for x in v) for v in p["vectors"])),
            )
        )
    odict = OrbitDictionary()
    coin = project_coinvariants(raw, odict)
    return CycleChain(
        n,
        raw,
        provenance,
        odict,
        coin,
        {k: int(v) for k, v in doc.get("stabilizer_orders", {}).items()},
    )


def boundary_certificate_to_json(cert: BoundaryCertificate, z: CycleChain) -> dict:
    return {
        "n": cert.n,
        "chain": chain_to_json(z.raw),
        "terms": [
            {
                "id": t.term_id,
                "tile": t.tile,
                "simplex": list(t.simplex),
                "vectors": [list(v) for v in t.vectors],
                "coeff": q_str(t.coeff),
            }
            for t in cert.terms
        ],
        "interior_pairs": [list(p) for p in cert.interior_pairs],
        "accounts": [
            {
                "kind": a.kind,
                "rep": [list(v) for v in a.rep],
                "witness": matrix_to_json(a.witness) if a.witness else None,
                "members": [
                    {
                        "id": tid,
                        "contribution": q_str(contrib),
                        "to_rep": matrix_to_json(g),
                        "sign": sign,
                        "self_witness": matrix_to_json(w) if w else None,
                    }
                    for tid, contrib, g, sign, w in a.members
                ],
            }
            for a in cert.accounts
        ],
        "residual": [
            {"rep": [list(v) for v in rep], "total": q_str(total)}
            for rep, total in cert.residual
        ],
        "valid": cert.valid,
    }


def positivity_certificate_to_json(cert) -> dict:
    return {
        "verdicts": [
            {
                "rep": [list(v) for v in v.rep],
                "coeff": q_str(v.coefficient),
                "verdict": v.verdict,
                "sign": v.sign,
            }
            for v in cert.verdicts
        ],
        "valid": cert.valid,
    }


def points_to_json(points) -> list:
    return [[q_str(Fraction(x)) for x in p] for p in points]


def points_from_json(items) -> list:
    return [tuple(q_parse(x) for x in p) for p in items]


def form_to_json(form) -> dict:
    return {
        "name": form.name,
        "n": form.n,
        "gram": [[q_str(x) for x in row] for row in form.gram],
        "min_vectors": [list(v) for v in form.min_vectors],
    }
