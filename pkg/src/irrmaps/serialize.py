"""Canonical JSON and CSV emission for counting polynomials.

The JSON layout is byte-stable across runs: monomials in graded
lexicographic order, the symmetric-basis view sorted by partition, all
numbers as decimal strings (arbitrary precision), fixed separators.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .pipeline import CountPolynomial, face_generators, to_m_basis
from .ring import MultiPoly

CSV_HEADER = "genus,n,b,degrees,value_num,value_den,method"


def emit_polynomial_json(count: CountPolynomial) -> str:
    monomials = [
        {"exps": list(exps), "num": str(c.numerator), "den": str(c.denominator)}
        for exps, c in count.poly.sorted_terms()
    ]
    mlambda = []
    for lam, coeff in sorted(to_m_basis(count).items(),
                             key=lambda kv: (sum(kv[0]), kv[0])):
        entry = {
            "lambda": list(lam),
            "coeff_in_b": [
                {"exp": exps[0], "num": str(c.numerator), "den": str(c.denominator)}
                for exps, c in coeff.sorted_terms()
            ],
        }
        mlambda.append(entry)
    doc = {
        "genus": count.genus,
        "n": count.nfaces,
        "generators": list(count.gens),
        "monomials": monomials,
        "mlambda": mlambda,
    }
    return json.dumps(doc, separators=(",", ":"))


def parse_polynomial_json(text: str) -> CountPolynomial:
    doc = json.loads(text)
    gens = tuple(doc["generators"])
    if gens != face_generators(doc["n"]):
        raise ValueError(f"unexpected generator list {gens}")
    terms = {
        tuple(entry["exps"]): Fraction(int(entry["num"]), int(entry["den"]))
        for entry in doc["monomials"]
    }
    return CountPolynomial(doc["genus"], doc["n"], gens, MultiPoly(gens, terms))


def count_csv_rows(rows) -> str:
    """Rows of (genus, n, b, degrees, value: Fraction, method) as CSV text."""
    out = [CSV_HEADER]
    for genus, n, b, degrees, value, method in rows:
        degs = " ".join(str(d) for d in degrees)
        out.append(f"{genus},{n},{b},{degs},{value.numerator},{value.denominator},{method}")
    return "\n".join(out) + "\n"
