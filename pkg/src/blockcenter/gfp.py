"""Row-vector linear algebra over a prime field GF(p) on numpy int64 arrays."""

from __future__ import annotations

import numpy as np

__all__ = ["rref", "rank", "left_kernel", "solve_left", "in_row_space", "as_gf"]


def as_gf(m, p: int, cols: int | None = None) -> np.ndarray:
    a = np.array(m, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size or cols is None else a.reshape(0, cols)
    if a.size == 0 and cols is not None:
        a = a.reshape(0, cols)
    return a % p


def _inv(x: int, p: int) -> int:
    return pow(int(x), -1, p)


def rref(m, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with zero rows dropped, and the pivot columns."""
    a = as_gf(m, p).copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        if a[r, c] != 1:
            a[r] = (a[r] * _inv(a[r, c], p)) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            if p == 2:
                a[hit] ^= a[r]
            else:
                a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(m, p: int) -> int:
    return len(rref(m, p)[1])


def left_kernel(m, p: int) -> np.ndarray:
    """Basis rows of ``{x : x @ m == 0 (mod p)}`` in reduced echelon form."""
    a = as_gf(m, p)
    n = a.shape[0]
    aug = np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1)
    r, piv = rref(aug, p)
    k = a.shape[1]
    rows = [i for i, c in enumerate(piv) if c >= k]
    return rref(r[rows, k:], p)[0] if rows else np.zeros((0, n), dtype=np.int64)


def solve_left(m, b, p: int) -> np.ndarray | None:
    """Some ``x`` with ``x @ m == b``, or ``None``."""
    a = as_gf(m, p)
    bb = as_gf(b, p).reshape(-1)
    n = a.shape[0]
    aug = np.concatenate([a.T, bb.reshape(-1, 1)], axis=1)
    r, piv = rref(aug, p)
    if n in piv:
        return None
    x = np.zeros(n, dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = r[i, n]
    return x


def in_row_space(v, m, p: int) -> bool:
    a = as_gf(m, p)
    if a.shape[0] == 0:
        return not np.any(as_gf(v, p))
    return rank(np.vstack([a, as_gf(v, p)]), p) == rank(a, p)
