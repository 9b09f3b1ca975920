"""Dense exact linear algebra over F_q on numpy arrays of element codes.

Row convention throughout: ``nullspace(F, M)`` returns the vectors ``v`` with
``M @ v == 0``; use ``left_nullspace`` for ``v @ M == 0``.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from typing import Any

import numpy as np

from .field import FieldDescriptor


def as_codes(M) -> np.ndarray:
    return np.array(M, dtype=np.int64, ndmin=2) if np.size(M) else np.zeros((0, 0), dtype=np.int64)


def rref(F: FieldDescriptor, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns.

    Pivot entries are 1 and pivot columns are otherwise zero, so the result is
    the unique canonical form of the row space.
    """
    R = np.array(M, dtype=np.int64, copy=True)
    if R.ndim != 2:
        R = R.reshape(len(R), -1)
    nrows, ncols = R.shape
    pivots: list[int] = []
    prime = F.e == 1
    p = F.p
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        nz = np.flatnonzero(R[row:, col])
        if nz.size == 0:
            continue
        r = row + int(nz[0])
        if r != row:
            R[[row, r]] = R[[r, row]]
        lead = int(R[row, col])
        if lead != 1:
            if prime:
                R[row] = R[row] * pow(lead, p - 2, p) % p
            else:
                R[row] = F.mul_table[R[row], F.inv_table[lead]]
        factors = R[:, col].copy()
        factors[row] = 0
        targets = np.flatnonzero(factors)
        if targets.size:
            if prime:
                R[targets] = (R[targets] - factors[targets, None] * R[row][None, :]) % p
            else:
                scaled = F.mul_table[factors[targets, None], R[row][None, :]]
                R[targets] = F.sub_table[R[targets], scaled]
        pivots.append(col)
        row += 1
    return R[: len(pivots)], pivots


def rank(F: FieldDescriptor, M) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


def nullspace(F: FieldDescriptor, M, ncols: int | None = None) -> np.ndarray:
    """Canonical (RREF) basis of ``{v : M v = 0}`` as rows."""
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        n = ncols if ncols is not None else (M.shape[1] if M.ndim == 2 else 0)
        return np.eye(n, dtype=np.int64)
    R, pivots = rref(F, M)
    n = M.shape[1]
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for r, pc in enumerate(pivots):
            basis[k, pc] = F.neg(int(R[r, fc]))
    if len(basis):
        basis = rref(F, basis)[0]
    return basis


def left_nullspace(F: FieldDescriptor, M) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    return nullspace(F, M.T, ncols=M.shape[0])


def matmul(F: FieldDescriptor, A, B) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if F.e == 1:
        return (A @ B) % F.p
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for k in range(A.shape[1]):
        out = F.add_table[out, F.mul_table[A[:, k, None], B[None, k, :]]]
    return out


def matpow(F: FieldDescriptor, A, k: int) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    result = np.eye(A.shape[0], dtype=np.int64)
    base = A
    while k:
        if k & 1:
            result = matmul(F, result, base)
        k >>= 1
        if k:
            base = matmul(F, base, base)
    return result


def lincomb(F: FieldDescriptor, coeffs: Sequence[int], arrays: Sequence[np.ndarray]) -> np.ndarray:
    """``sum(c * A)`` over F_q for same-shape arrays."""
    out = np.zeros_like(np.asarray(arrays[0], dtype=np.int64))
    for c, A in zip(coeffs, arrays):
        if c:
            out = F.add_table[out, F.mul_table[int(c), np.asarray(A, dtype=np.int64)]]
    return out


def in_span(F: FieldDescriptor, v, rows) -> bool:
    rows = np.asarray(rows, dtype=np.int64).reshape(-1, np.size(v)) if np.size(rows) else None
    v = np.asarray(v, dtype=np.int64).reshape(1, -1)
    if rows is None:
        return not v.any()
    return rank(F, np.vstack([rows, v])) == rank(F, rows)


def charpoly(F: FieldDescriptor, M) -> list[int]:
    """Coefficients of ``det(tI - M)``, constant term first (monic, length n+1).

    Similarity reduction to upper Hessenberg form followed by the standard
    three-term recurrence on leading principal minors.
    """
    H = np.array(M, dtype=np.int64, copy=True)
    n = H.shape[0]
    add, sub, mul, inv = F.add_table, F.sub_table, F.mul_table, F.inv_table
    for m in range(1, n - 1):
        nz = np.flatnonzero(H[m:, m - 1])
        if nz.size == 0:
            continue
        i = m + int(nz[0])
        if i != m:
            H[[i, m]] = H[[m, i]]
            H[:, [i, m]] = H[:, [m, i]]
        t_inv = inv[H[m, m - 1]]
        for i in range(m + 1, n):
            u = int(mul[H[i, m - 1], t_inv])
            if u == 0:
                continue
            H[i] = sub[H[i], mul[u, H[m]]]
            H[:, m] = add[H[:, m], mul[u, H[:, i]]]

    # polys[k] = char poly of leading k x k block, as code lists (constant first)
    def poly_sub(a, b):
        size = max(len(a), len(b))
        a = a + [0] * (size - len(a))
        b = b + [0] * (size - len(b))
        return [int(sub[x, y]) for x, y in zip(a, b)]

    def poly_scale(c, a):
        return [int(mul[c, x]) for x in a]

    polys = [[1]]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        # (t - h_kk) * prev
        shifted = [0] + prev
        cur = poly_sub(shifted, poly_scale(int(H[k - 1, k - 1]), prev + [0]))
        prod = 1
        for i in range(k - 1, 0, -1):
            prod = int(mul[prod, H[i, i - 1]])
            if prod == 0:
                break
            coef = int(mul[prod, H[i - 1, k - 1]])
            if coef:
                cur = poly_sub(cur, poly_scale(coef, polys[i - 1]))
        polys.append(cur[: k + 1] + [0] * (k + 1 - len(cur)))
    return polys[n]


def berkowitz(
    matrix: Sequence[Sequence[Any]], zero: Any, one: Any, mul: Callable[[Any, Any], Any] | None = None
) -> list[Any]:
    """Division-free characteristic polynomial ``det(tI - M)``.

    Works over any commutative ring whose elements support ``+``, ``-`` and
    ``*`` (``mul`` overrides the product). Returns coefficients highest power
    first: ``[1, c_1, ..., c_n]``.
    """
    mul = mul or (lambda a, b: a * b)
    n = len(matrix)
    if n == 0:
        return [one]
    coeffs = [one, zero - matrix[0][0]]
    for r in range(1, n):
        a = matrix[r][r]
        row = [matrix[r][j] for j in range(r)]
        col = [matrix[i][r] for i in range(r)]
        sub = [[matrix[i][j] for j in range(r)] for i in range(r)]
        toeplitz = [one, zero - a]
        vec = col
        for _ in range(r):
            dot = zero
            for x, y in zip(row, vec):
                dot = dot + mul(x, y)
            toeplitz.append(zero - dot)
            vec = [_dot(sub_row, vec, zero, mul) for sub_row in sub]
        new = []
        for k in range(r + 2):
            acc = zero
            for j in range(min(k, r) + 1):
                acc = acc + mul(toeplitz[k - j], coeffs[j])
            new.append(acc)
        coeffs = new
    return coeffs


def _dot(u, v, zero, mul):
    acc = zero
    for x, y in zip(u, v):
        acc = acc + mul(x, y)
    return acc
