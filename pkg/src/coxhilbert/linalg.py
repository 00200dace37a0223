"""Exact and modular rank of sparse integer matrices.

Rows are ``dict[int, int]`` mapping column index to a nonzero integer
coefficient.  The exact path does fraction-free elimination with content
normalisation, so every intermediate stays an integer row.
"""

from __future__ import annotations

import random
from math import gcd
from typing import Iterable

import numpy as np

from . import kernels

SparseRow = dict[int, int]


def _primitive(row: SparseRow) -> SparseRow:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    return {c: v // g for c, v in row.items()}


def split_unit_rows(rows: Iterable[SparseRow]) -> tuple[set[int], list[SparseRow]]:
    """Separate single-entry rows (which pivot their column outright).

    Returns the set of killed columns and the remaining rows with those
    columns removed.  Empty rows are dropped.
    """
    killed: set[int] = set()
    rest: list[SparseRow] = []
    for row in rows:
        if len(row) == 1:
            killed.add(next(iter(row)))
        elif row:
            rest.append(row)
    reduced = []
    for row in rest:
        r = {c: v for c, v in row.items() if c not in killed}
        if r:
            reduced.append(r)
    return killed, reduced


def exact_rank(rows: Iterable[SparseRow]) -> int:
    """Rank over the rationals of a sparse integer matrix."""
    killed, rest = split_unit_rows(rows)
    return len(killed) + _eliminate(rest)


def _eliminate(rows: list[SparseRow]) -> int:
    pivots: dict[int, SparseRow] = {}
    rows = sorted(rows, key=len)
    for row in rows:
        row = _primitive(dict(row))
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                pivots[c] = row
                break
            a, b = prow[c], row[c]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            new = {k: fa * v for k, v in row.items()}
            for k, v in prow.items():
                w = new.get(k, 0) - fb * v
                if w:
                    new[k] = w
                else:
                    new.pop(k, None)
            row = _primitive(new) if new else new
    return len(pivots)


def dense_exact_rank(matrix: list[list[int]]) -> int:
    """Bareiss fraction-free rank of a small dense integer matrix.

    Kept separate from :func:`exact_rank` so the sparse path can be checked
    against an independent implementation.
    """
    a = [list(map(int, r)) for r in matrix]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    rank = 0
    prev = 1
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if a[r][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for r in range(rank + 1, rows):
            for k in range(c + 1, cols):
                a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) // prev
            a[r][c] = 0
        prev = a[rank][c]
        rank += 1
        if rank == rows:
            break
    return rank


def random_prime(rng: random.Random | None = None) -> int:
    """A random prime in ``(2**30, 2**31)``."""
    from sympy import randprime

    rng = rng or random.SystemRandom()
    lo = 2**30 + rng.randrange(2**29)
    return int(randprime(lo, 2**31))


def modular_rank(rows: list[SparseRow], p: int) -> int:
    """Rank over GF(p).  A lower bound for the rational rank."""
    killed, rest = split_unit_rows([{c: v % p for c, v in r.items() if v % p} for r in rows])
    if not rest:
        return len(killed)
    cols = sorted({c for r in rest for c in r})
    index = {c: i for i, c in enumerate(cols)}
    mat = np.zeros((len(rest), len(cols)), dtype=np.int64)
    for i, row in enumerate(rest):
        for c, v in row.items():
            mat[i, index[c]] = v % p
    return len(killed) + kernels.rank_mod_p(mat, p)
