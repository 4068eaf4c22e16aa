"""Hot enumeration kernels with numba and pure-numpy backends.

Two operations dominate oracle runtime and exist in both backends:

* ``min_weight``: minimum Hamming weight over all nonzero codewords m*G,
  by full message enumeration (the minimum-distance oracle).
* ``spans``: whether every column of B lies in the column space of A
  (the repair-set rank test), via Gaussian elimination.

Backend selection lives in :mod:`cooplrc.backend`; set ``COOPLRC_NO_NUMBA=1``
to force the numpy path.
"""

from __future__ import annotations

import numpy as np

from .backend import USE_NUMBA, njit
from .errors import BudgetExceeded
from .field import Field

# ---------------------------------------------------------------------------
# Loop kernels (numba-compiled when available)
# ---------------------------------------------------------------------------


def _min_weight_prime_loop(G, p, total):
    k, n = G.shape
    digits = np.zeros(k, dtype=np.int64)
    cw = np.zeros(n, dtype=np.int64)
    best = n + 1
    for _ in range(total - 1):
        i = 0
        while True:
            digits[i] += 1
            for j in range(n):
                cw[j] = (cw[j] + G[i, j]) % p
            if digits[i] < p:
                break
            digits[i] = 0
            i += 1
        w = 0
        for j in range(n):
            if cw[j] != 0:
                w += 1
        if w < best:
            best = w
    return best


def _min_weight_table_loop(G, q, add_t, mul_t, neg_t, total):
    k, n = G.shape
    digits = np.zeros(k, dtype=np.int64)
    cw = np.zeros(n, dtype=np.int64)
    best = n + 1
    for _ in range(total - 1):
        i = 0
        while True:
            old = digits[i]
            new = old + 1
            if new == q:
                new = 0
            digits[i] = new
            # scaling is true field multiplication, so update by the
            # difference new*G[i] - old*G[i] rather than adding G[i]
            for j in range(n):
                gij = G[i, j]
                delta = add_t[mul_t[new, gij], neg_t[mul_t[old, gij]]]
                cw[j] = add_t[cw[j], delta]
            if new != 0:
                break
            i += 1
        w = 0
        for j in range(n):
            if cw[j] != 0:
                w += 1
        if w < best:
            best = w
    return best


def _inv_mod(a, p):
    # extended Euclid, a != 0 mod p
    t, new_t = 0, 1
    r, new_r = p, a % p
    while new_r != 0:
        quot = r // new_r
        t, new_t = new_t, t - quot * new_t
        r, new_r = new_r, r - quot * new_r
    return t % p


def _spans_prime_loop(A, B, p):
    k, g = A.shape
    s = B.shape[1]
    A = A.copy()
    B = B.copy()
    row = 0
    for col in range(g):
        piv = -1
        for r in range(row, k):
            if A[r, col] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != row:
            for j in range(g):
                A[piv, j], A[row, j] = A[row, j], A[piv, j]
            for j in range(s):
                B[piv, j], B[row, j] = B[row, j], B[piv, j]
        inv = _inv_mod(A[row, col], p)
        for r in range(row + 1, k):
            if A[r, col] != 0:
                f = (A[r, col] * inv) % p
                for j in range(col, g):
                    A[r, j] = (A[r, j] - f * A[row, j]) % p
                for j in range(s):
                    B[r, j] = (B[r, j] - f * B[row, j]) % p
        row += 1
        if row == k:
            break
    for r in range(row, k):
        for j in range(s):
            if B[r, j] != 0:
                return False
    return True


def _spans_table_loop(A, B, add_t, mul_t, inv_t, neg_t):
    k, g = A.shape
    s = B.shape[1]
    A = A.copy()
    B = B.copy()
    row = 0
    for col in range(g):
        piv = -1
        for r in range(row, k):
            if A[r, col] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != row:
            for j in range(g):
                A[piv, j], A[row, j] = A[row, j], A[piv, j]
            for j in range(s):
                B[piv, j], B[row, j] = B[row, j], B[piv, j]
        inv = inv_t[A[row, col]]
        for r in range(row + 1, k):
            if A[r, col] != 0:
                f = mul_t[A[r, col], inv]
                for j in range(col, g):
                    A[r, j] = add_t[A[r, j], neg_t[mul_t[f, A[row, j]]]]
                for j in range(s):
                    B[r, j] = add_t[B[r, j], neg_t[mul_t[f, B[row, j]]]]
        row += 1
        if row == k:
            break
    for r in range(row, k):
        for j in range(s):
            if B[r, j] != 0:
                return False
    return True


if USE_NUMBA:
    _inv_mod = njit(cache=True)(_inv_mod)
    _min_weight_prime = njit(cache=True)(_min_weight_prime_loop)
    _min_weight_table = njit(cache=True)(_min_weight_table_loop)
    _spans_prime = njit(cache=True)(_spans_prime_loop)
    _spans_table = njit(cache=True)(_spans_table_loop)
else:
    # ------------------------------------------------------------------
    # Pure-numpy fallbacks: chunked batch enumeration / vectorized rows.
    # ------------------------------------------------------------------

    _CHUNK = 1 << 13

    def _min_weight_prime(G, p, total):
        k, n = G.shape
        powers = p ** np.arange(k, dtype=np.int64)
        best = n + 1
        for start in range(1, total, _CHUNK):
            idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
            M = (idx[:, None] // powers[None, :]) % p
            C = (M @ G) % p
            best = min(best, int(np.count_nonzero(C, axis=1).min()))
        return best

    def _min_weight_table(G, q, add_t, mul_t, neg_t, total):
        k, n = G.shape
        powers = q ** np.arange(k, dtype=np.int64)
        best = n + 1
        for start in range(1, total, _CHUNK):
            idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
            M = (idx[:, None] // powers[None, :]) % q
            C = np.zeros((len(idx), n), dtype=np.int64)
            for i in range(k):
                C = add_t[C, mul_t[M[:, i][:, None], G[i][None, :]]]
            best = min(best, int(np.count_nonzero(C, axis=1).min()))
        return best

    def _spans_prime(A, B, p):
        k, g = A.shape
        A = A.copy()
        B = B.copy()
        row = 0
        for col in range(g):
            nz = np.nonzero(A[row:, col])[0]
            if len(nz) == 0:
                continue
            piv = row + int(nz[0])
            if piv != row:
                A[[piv, row]] = A[[row, piv]]
                B[[piv, row]] = B[[row, piv]]
            f = (A[row + 1 :, col] * _inv_mod(int(A[row, col]), p)) % p
            A[row + 1 :] = (A[row + 1 :] - f[:, None] * A[row]) % p
            B[row + 1 :] = (B[row + 1 :] - f[:, None] * B[row]) % p
            row += 1
            if row == k:
                break
        return not np.any(B[row:])

    def _spans_table(A, B, add_t, mul_t, inv_t, neg_t):
        k, g = A.shape
        A = A.copy()
        B = B.copy()
        row = 0
        for col in range(g):
            nz = np.nonzero(A[row:, col])[0]
            if len(nz) == 0:
                continue
            piv = row + int(nz[0])
            if piv != row:
                A[[piv, row]] = A[[row, piv]]
                B[[piv, row]] = B[[row, piv]]
            f = mul_t[A[row + 1 :, col], inv_t[A[row, col]]]
            A[row + 1 :] = add_t[A[row + 1 :], neg_t[mul_t[f[:, None], A[row]]]]
            B[row + 1 :] = add_t[B[row + 1 :], neg_t[mul_t[f[:, None], B[row]]]]
            row += 1
            if row == k:
                break
        return not np.any(B[row:])


# ---------------------------------------------------------------------------
# Dispatchers
# ---------------------------------------------------------------------------

_ENUM_CAP = 2**24


_TABLE_CACHE: dict[Field, tuple] = {}


def _field_tables(field: Field):
    cached = _TABLE_CACHE.get(field)
    if cached is not None:
        return cached
    add_t, mul_t = field.dense_tables()
    inv_t = np.zeros(field.q, dtype=np.int64)
    neg_t = np.zeros(field.q, dtype=np.int64)
    for a in range(field.q):
        neg_t[a] = field.neg(a)
        if a:
            inv_t[a] = field.inv(a)
    _TABLE_CACHE[field] = (add_t, mul_t, inv_t, neg_t)
    return _TABLE_CACHE[field]


def min_weight(G: np.ndarray, field: Field, cap: int = _ENUM_CAP) -> int:
    """Minimum weight over nonzero codewords of the row space of G.

    G must have full row rank for the enumeration to range over distinct
    codewords; repeated codewords would not change the minimum anyway.
    """
    k = G.shape[0]
    total = field.q**k
    if total > cap:
        raise BudgetExceeded(f"codeword enumeration {field.q}^{k} exceeds cap {cap}")
    if k == 0:
        raise ValueError("zero-dimensional code has no nonzero codeword")
    G = np.ascontiguousarray(G, dtype=np.int64)
    if field.m == 1:
        return int(_min_weight_prime(G, field.p, total))
    add_t, mul_t, _, neg_t = _field_tables(field)
    return int(_min_weight_table(G, field.q, add_t, mul_t, neg_t, total))


def spans(G: np.ndarray, basis_cols, target_cols, field: Field) -> bool:
    """True iff every G[:, target] column is in the span of G[:, basis]."""
    A = np.ascontiguousarray(G[:, list(basis_cols)], dtype=np.int64)
    B = np.ascontiguousarray(G[:, list(target_cols)], dtype=np.int64)
    if B.shape[1] == 0:
        return True
    if A.shape[1] == 0:
        return not np.any(B)
    if field.m == 1:
        return bool(_spans_prime(A, B, field.p))
    add_t, mul_t, inv_t, neg_t = _field_tables(field)
    return bool(_spans_table(A, B, add_t, mul_t, inv_t, neg_t))
