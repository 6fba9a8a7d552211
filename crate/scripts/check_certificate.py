#!/usr/bin/env python3
"""Independent checker for a length certificate written by `pythagoras witness`.

Usage: check_certificate.py CERT.json [CERT.json ...]
Exits 0 when every certificate checks out.
"""
import json
import sys
from math import comb


def monomials(n, e):
    # graded lex: x1^e first
    if n == 1:
        return [(e,)]
    return [(a,) + rest for a in range(e, -1, -1) for rest in monomials(n - 1, e - a)]


def rank_mod(rows, p):
    rows = [[x % p for x in r] for r in rows]
    rank, cols = 0, len(rows[0]) if rows else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], p - 2, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def check(cert):
    n, d, s = cert["n"], cert["d"], cert["s"]
    basis = [[int(x) for x in v] for v in cert["basis"]]
    witness = [int(x) for x in cert["witness"]]
    md, m2d = monomials(n, d), monomials(n, 2 * d)
    index = {m: i for i, m in enumerate(m2d)}
    b = len(basis)
    assert len(cert["points"]) == s, "point count"
    assert b == cert["length"] == len(md) - s, "length"
    assert cert["injectivity_rank"] == comb(b + 1, 2), "injectivity rank"

    square_sum = [0] * len(m2d)
    for v in basis:
        for i, x in enumerate(v):
            for j, y in enumerate(v):
                square_sum[index[tuple(a + c for a, c in zip(md[i], md[j]))]] += x * y
    assert square_sum == witness, "witness is not the sum of squares"

    def value(mono, pt):
        out = 1
        for c, a in zip(pt, mono):
            out *= c**a
        return out

    evals = [[value(m, pt) for m in md] for pt in cert["points"]]
    for v in basis:
        for row in evals:
            assert sum(x * y for x, y in zip(v, row)) == 0, "basis form does not vanish"

    products = []
    for i in range(b):
        for j in range(i, b):
            row = [0] * len(m2d)
            for a, x in enumerate(basis[i]):
                for c, y in enumerate(basis[j]):
                    row[index[tuple(u + w for u, w in zip(md[a], md[c]))]] += x * y
            products.append(row)
    assert cert["primes"], "no primes"
    for p in cert["primes"]:
        assert rank_mod(evals, p) == s, "evaluation rank mod %d" % p
        assert rank_mod(products, p) == comb(b + 1, 2), "product rank mod %d" % p


def main(paths):
    ok = True
    for path in paths:
        with open(path) as f:
            cert = json.load(f)
        try:
            check(cert)
            print("ok %s: length %d" % (path, cert["length"]))
        except AssertionError as e:
            ok = False
            print("FAIL %s: %s" % (path, e))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
