"""Independent brute-force oracles used to freeze expected values.

Nothing here imports the package's evaluation code.
"""

from __future__ import annotations

import itertools
from math import comb

import sympy


def block_monomials(n: int, k: int):
    """All exponent tuples of length n+1 summing to k (any order)."""
    return [c for c in itertools.product(range(k + 1), repeat=n + 1) if sum(c) == k]


def all_monomials(blocks, e):
    parts = [block_monomials(n, k) for n, k in zip(blocks, e)]
    for combo in itertools.product(*parts):
        yield tuple(x for part in combo for x in part)


def divides(g, m):
    return all(a <= b for a, b in zip(g, m))


def brute_hilbert(blocks, gens, e):
    """Count monomials of degree e divisible by no generator."""
    return sum(1 for m in all_monomials(blocks, e) if not any(divides(g, m) for g in gens))


def sympy_quotient_hilbert(blocks, polys, e):
    """dim (R/(polys))_e by a sympy rank computation.

    ``polys`` are lists of (coeff, exps) terms.
    """
    basis = list(all_monomials(blocks, e))
    index = {m: i for i, m in enumerate(basis)}
    rows = []
    for terms in polys:
        deg = [sum(terms[0][1][o:o + n + 1]) for o, n in _offsets(blocks)]
        rest = [a - b for a, b in zip(e, deg)]
        if any(r < 0 for r in rest):
            continue
        for u in all_monomials(blocks, rest):
            row = [0] * len(basis)
            for c, exps in terms:
                row[index[tuple(a + b for a, b in zip(u, exps))]] += c
            rows.append(row)
    if not rows:
        return len(basis)
    return len(basis) - sympy.Matrix(rows).rank()


def _offsets(blocks):
    out, o = [], 0
    for n in blocks:
        out.append((o, n))
        o += n + 1
    return out


def brute_macaulay(alpha, d):
    """All strictly decreasing kappa sequences with sum C(k_j, j) = alpha (small search)."""
    hits = []
    top = d + alpha + 1
    for ks in itertools.combinations(range(top, -1, -1), d):
        if sum(comb(k, j) for k, j in zip(ks, range(d, 0, -1))) == alpha:
            hits.append(ks)
    return hits
