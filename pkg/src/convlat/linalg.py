"""Gaussian elimination over explicit finite fields.

Matrices are int64 arrays of shape (m, n, r) holding field coordinates.
GF(2) systems take a packed-bit path (64 columns per machine word).
"""

from __future__ import annotations

import numpy as np

from .ff import Field, FieldElem


def _elem(F: Field, v: np.ndarray) -> FieldElem:
    return FieldElem(F, tuple(int(c) for c in v))


def _inv_arr(F: Field, v: np.ndarray) -> np.ndarray:
    return np.array(_elem(F, v).inverse().coeffs, dtype=np.int64)


def rref(F: Field, A: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = np.array(A, dtype=np.int64) % F.p
    m, n = A.shape[:2]
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.flatnonzero(np.any(A[row:, col], axis=1))
        if len(nz) == 0:
            continue
        piv = row + nz[0]
        if piv != row:
            A[[row, piv]] = A[[piv, row]]
        A[row] = F.arr_mul(A[row], _inv_arr(F, A[row, col])[None, :])
        others = np.flatnonzero(np.any(A[:, col], axis=1))
        others = others[others != row]
        if len(others):
            f = A[others, col]
            A[others] = (A[others] - F.arr_mul(f[:, None, :], A[row][None, :, :])) % F.p
        pivots.append(col)
        row += 1
    return A, pivots


def rank(F: Field, A: np.ndarray) -> int:
    if F.p == 2 and F.r == 1:
        return gf2_rank(np.asarray(A)[..., 0])
    return len(rref(F, A)[1])


def nullspace(F: Field, A: np.ndarray) -> np.ndarray:
    """Basis (k, n, r) of {x : A x = 0}."""
    A = np.asarray(A)
    n = A.shape[1]
    if F.p == 2 and F.r == 1:
        return gf2_nullspace(A[..., 0])[..., None]
    R, pivots = rref(F, A)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n, F.r), np.int64)
    for k, c in enumerate(free):
        basis[k, c, 0] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-R[i, c]) % F.p
    return basis


def solve(F: Field, A: np.ndarray, b: np.ndarray) -> tuple[np.ndarray | None, np.ndarray | None]:
    """(x, None) with A x = b, or (None, y) with y A = 0 and y.b = 1."""
    A = np.asarray(A)
    b = np.asarray(b)
    if F.p == 2 and F.r == 1:
        x, y = gf2_solve(A[..., 0], b[..., 0])
        return (None if x is None else x[:, None]), (None if y is None else y[:, None])
    m, n = A.shape[:2]
    aug = np.concatenate([A, b[:, None, :]], axis=1)
    R, pivots = rref(F, aug)
    if n not in pivots:
        x = np.zeros((n, F.r), np.int64)
        for i, pc in enumerate(pivots):
            x[pc] = R[i, n]
        return x, None
    left = nullspace(F, np.transpose(A, (1, 0, 2)))
    for y in left:
        dot = F.arr_mul(y, b).sum(axis=0) % F.p
        if dot.any():
            return None, F.arr_mul(y, _inv_arr(F, dot)[None, :])
    raise AssertionError("inconsistent system without a separating functional")


# ---------------------------------------------------------------- GF(2) bits


def _pack(A01: np.ndarray) -> np.ndarray:
    m, n = A01.shape
    words = (n + 63) // 64
    padded = np.zeros((m, words * 64), np.uint8)
    padded[:, :n] = A01 & 1
    return np.packbits(padded, axis=1, bitorder="little").view("<u8").reshape(m, words)


def _unpack(W: np.ndarray, n: int) -> np.ndarray:
    m = W.shape[0]
    if m == 0:
        return np.zeros((0, n), dtype=np.int64)
    bytes_ = np.ascontiguousarray(W.astype("<u8")).view(np.uint8).reshape(m, -1)
    return np.unpackbits(bytes_, axis=1, bitorder="little")[:, :n].astype(np.int64)


def _bit(W: np.ndarray, col: int) -> np.ndarray:
    return (W[:, col >> 6] >> np.uint64(col & 63)) & np.uint64(1)


def _gf2_eliminate(W: np.ndarray, ncols: int) -> tuple[np.ndarray, list[int]]:
    """In-place RREF on packed rows, restricted to the first ncols columns."""
    m = W.shape[0]
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row == m:
            break
        bits = _bit(W[row:], col)
        nz = np.flatnonzero(bits)
        if len(nz) == 0:
            continue
        piv = row + nz[0]
        if piv != row:
            W[[row, piv]] = W[[piv, row]]
        hit = np.flatnonzero(_bit(W, col))
        hit = hit[hit != row]
        if len(hit):
            W[hit] ^= W[row]
        pivots.append(col)
        row += 1
    return W, pivots


def gf2_rank(A01: np.ndarray) -> int:
    A01 = np.asarray(A01, dtype=np.int64)
    return len(_gf2_eliminate(_pack(A01 & 1), A01.shape[1])[1])


def gf2_nullspace(A01: np.ndarray) -> np.ndarray:
    A01 = np.asarray(A01, dtype=np.int64) & 1
    m, n = A01.shape
    W, pivots = _gf2_eliminate(_pack(A01), n)
    R = _unpack(W[: len(pivots)], n)
    pset = set(pivots)
    free = [c for c in range(n) if c not in pset]
    basis = np.zeros((len(free), n), np.int64)
    for k, c in enumerate(free):
        basis[k, c] = 1
        if pivots:
            basis[k, pivots] = R[:, c]
    return basis


def gf2_solve(A01: np.ndarray, b01: np.ndarray) -> tuple[np.ndarray | None, np.ndarray | None]:
    """(x, None) with A x = b over GF(2), or (None, y) with y A = 0, y.b = 1.

    Row operations are tracked on an identity block so an inconsistent
    system yields its separating functional directly.
    """
    A01 = np.asarray(A01, dtype=np.int64) & 1
    b01 = np.asarray(b01, dtype=np.int64) & 1
    m, n = A01.shape
    aug = np.concatenate([A01, b01[:, None], np.eye(m, dtype=np.int64)], axis=1)
    W, pivots = _gf2_eliminate(_pack(aug), n)
    full = _unpack(W, n + 1 + m)
    rk = len(pivots)
    bad = np.flatnonzero(full[rk:, n]) + rk
    if len(bad):
        return None, full[bad[0], n + 1 :]
    x = np.zeros(n, np.int64)
    x[pivots] = full[:rk, n]
    return x, None
