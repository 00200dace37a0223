"""Hot numeric kernels with a numba path and a pure-numpy fallback.

Set ``COXHILBERT_DISABLE_NUMBA=1`` before import to force the numpy path.
Both implementations are always importable as ``numpy_impl`` and (when numba
is installed) ``numba_impl`` so they can be compared directly.

All arrays are ``int64``.  Exponent matrices hold one monomial per row.
"""

from __future__ import annotations

import os
from functools import lru_cache
from math import comb
from types import SimpleNamespace

import numpy as np

_DISABLE = os.environ.get("COXHILBERT_DISABLE_NUMBA", "").strip().lower() in {
    "1",
    "true",
    "yes",
    "on",
}

try:
    import numba
except ImportError:  # pragma: no cover - numba is an optional accelerator
    numba = None


# ---------------------------------------------------------------------------
# numpy fallback
# ---------------------------------------------------------------------------


@lru_cache(maxsize=4096)
def _compositions_np(total: int, parts: int) -> np.ndarray:
    """All exponent vectors of length ``parts`` summing to ``total``.

    Rows come out in lexicographically decreasing order.
    """
    if parts == 1:
        return np.array([[total]], dtype=np.int64)
    chunks = []
    for first in range(total, -1, -1):
        tail = _compositions_np(total - first, parts - 1)
        head = np.full((tail.shape[0], 1), first, dtype=np.int64)
        chunks.append(np.hstack([head, tail]))
    return np.vstack(chunks)


def _divisor_matrix_np(mons: np.ndarray, gens: np.ndarray) -> np.ndarray:
    if gens.shape[0] == 0:
        return np.zeros((mons.shape[0], 0), dtype=np.bool_)
    return np.all(mons[:, None, :] >= gens[None, :, :], axis=2)


def _divisible_mask_np(mons: np.ndarray, gens: np.ndarray) -> np.ndarray:
    out = np.zeros(mons.shape[0], dtype=np.bool_)
    if gens.shape[0] == 0:
        return out
    # chunked to keep the broadcast temporary bounded
    step = max(1, 4_000_000 // max(1, gens.shape[0] * max(1, mons.shape[1])))
    for start in range(0, mons.shape[0], step):
        block = mons[start : start + step]
        out[start : start + step] = np.any(
            np.all(block[:, None, :] >= gens[None, :, :], axis=2), axis=1
        )
    return out


def _rank_mod_p_np(mat: np.ndarray, p: int) -> int:
    a = np.array(mat, dtype=np.int64) % p
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(a[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, c]), p - 2, p)
        a[rank] = (a[rank] * inv) % p
        below = a[rank + 1 :, c].copy()
        hit = np.nonzero(below)[0]
        if hit.size:
            # entries stay below 2**31, so products fit in int64
            factors = below[hit].reshape(-1, 1)
            a[rank + 1 + hit] = (a[rank + 1 + hit] - factors * a[rank]) % p
        rank += 1
    return rank


numpy_impl = SimpleNamespace(
    compositions=_compositions_np,
    divisor_matrix=_divisor_matrix_np,
    divisible_mask=_divisible_mask_np,
    rank_mod_p=_rank_mod_p_np,
    name="numpy",
)


# ---------------------------------------------------------------------------
# numba path
# ---------------------------------------------------------------------------

numba_impl = None

if numba is not None:
    njit = numba.njit

    @njit(cache=True, nogil=True)
    def _compositions_nb(total, parts, count):
        out = np.zeros((count, parts), dtype=np.int64)
        a = np.zeros(parts, dtype=np.int64)
        a[0] = total
        row = 0
        while True:
            out[row, :] = a
            row += 1
            # rightmost nonzero entry strictly before the last slot
            i = parts - 2
            while i >= 0 and a[i] == 0:
                i -= 1
            if i < 0:
                break
            a[i] -= 1
            tail = 1
            for k in range(i + 1, parts):
                tail += a[k]
                a[k] = 0
            a[i + 1] = tail
        return out

    @njit(cache=True, nogil=True)
    def _divisor_matrix_nb(mons, gens):
        d, n = mons.shape
        g = gens.shape[0]
        out = np.zeros((d, g), dtype=np.bool_)
        for r in range(d):
            for k in range(g):
                ok = True
                for j in range(n):
                    if mons[r, j] < gens[k, j]:
                        ok = False
                        break
                out[r, k] = ok
        return out

    @njit(cache=True, nogil=True)
    def _divisible_mask_nb(mons, gens):
        d, n = mons.shape
        g = gens.shape[0]
        out = np.zeros(d, dtype=np.bool_)
        for r in range(d):
            for k in range(g):
                ok = True
                for j in range(n):
                    if mons[r, j] < gens[k, j]:
                        ok = False
                        break
                if ok:
                    out[r] = True
                    break
        return out

    @njit(cache=True, nogil=True)
    def _rank_mod_p_nb(mat, p):
        a = mat.copy()
        rows, cols = a.shape
        for r in range(rows):
            for c in range(cols):
                a[r, c] %= p
        rank = 0
        for c in range(cols):
            if rank == rows:
                break
            piv = -1
            for r in range(rank, rows):
                if a[r, c] != 0:
                    piv = r
                    break
            if piv < 0:
                continue
            if piv != rank:
                for k in range(cols):
                    tmp = a[rank, k]
                    a[rank, k] = a[piv, k]
                    a[piv, k] = tmp
            # modular inverse by exponentiation; p < 2**31 keeps products in int64
            base = a[rank, c]
            e = p - 2
            inv = 1
            while e > 0:
                if e & 1:
                    inv = (inv * base) % p
                base = (base * base) % p
                e >>= 1
            for k in range(c, cols):
                a[rank, k] = (a[rank, k] * inv) % p
            for r in range(rank + 1, rows):
                f = a[r, c]
                if f != 0:
                    for k in range(c, cols):
                        a[r, k] = (a[r, k] - f * a[rank, k]) % p
            rank += 1
        return rank

    def _compositions_numba(total: int, parts: int) -> np.ndarray:
        return _compositions_nb(total, parts, comb(total + parts - 1, parts - 1))

    def _rank_mod_p_numba(mat: np.ndarray, p: int) -> int:
        if mat.shape[0] == 0 or mat.shape[1] == 0:
            return 0
        return int(_rank_mod_p_nb(np.ascontiguousarray(mat, dtype=np.int64), np.int64(p)))

    numba_impl = SimpleNamespace(
        compositions=_compositions_numba,
        divisor_matrix=_divisor_matrix_nb,
        divisible_mask=_divisible_mask_nb,
        rank_mod_p=_rank_mod_p_numba,
        name="numba",
    )


active = numpy_impl if (_DISABLE or numba_impl is None) else numba_impl
USING_NUMBA = active is numba_impl


@lru_cache(maxsize=1024)
def _compositions_cached(total: int, parts: int) -> np.ndarray:
    out = active.compositions(total, parts)
    out.setflags(write=False)
    return out


def compositions(total: int, parts: int) -> np.ndarray:
    """Exponent vectors of ``parts`` entries summing to ``total``, lex-decreasing.

    The returned array is shared and read-only.
    """
    if parts < 1 or total < 0:
        raise ValueError("need parts >= 1 and total >= 0")
    return _compositions_cached(int(total), int(parts))


def divisor_matrix(mons: np.ndarray, gens: np.ndarray) -> np.ndarray:
    """Boolean ``(len(mons), len(gens))`` table: does ``gens[k]`` divide ``mons[r]``."""
    if gens.shape[0] == 0 or mons.shape[0] == 0:
        return np.zeros((mons.shape[0], gens.shape[0]), dtype=np.bool_)
    return active.divisor_matrix(mons, gens)


def divisible_mask(mons: np.ndarray, gens: np.ndarray) -> np.ndarray:
    """Rows of ``mons`` divisible by at least one row of ``gens``."""
    if gens.shape[0] == 0 or mons.shape[0] == 0:
        return np.zeros(mons.shape[0], dtype=np.bool_)
    return active.divisible_mask(mons, gens)


def rank_mod_p(mat: np.ndarray, p: int) -> int:
    """Rank of an integer matrix over GF(p), ``p < 2**31``."""
    if p >= 2**31:
        raise ValueError("prime must be below 2**31 to keep products in int64")
    if mat.shape[0] == 0 or mat.shape[1] == 0:
        return 0
    return active.rank_mod_p(mat, p)
