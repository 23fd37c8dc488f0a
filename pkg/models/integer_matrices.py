"""
Integer Matrices
Smith normal form, integer kernels and integer solving on numpy object arrays
"""
from typing import Optional, Sequence, Tuple

import numpy as np
from sympy import Matrix


def as_int_matrix(m, shape: Optional[Tuple[int, int]] = None) -> np.ndarray:
    """Copy into an object-dtype array of Python ints"""
    a = np.array(m, dtype=object)
    if shape is not None:
        a = a.reshape(shape)
    if a.ndim != 2:
        raise ValueError("expected a 2-dimensional matrix")
    return np.vectorize(int, otypes=[object])(a) if a.size else a


def identity(n: int) -> np.ndarray:
    a = np.zeros((n, n), dtype=object)
    for i in range(n):
        a[i, i] = 1
    return a


def matrix_power(a: np.ndarray, k: int) -> np.ndarray:
    result = identity(a.shape[0])
    for _ in range(k):
        result = result.dot(a)
    return result


def _swap_rows(a: np.ndarray, i: int, j: int) -> None:
    if i != j:
        a[[i, j], :] = a[[j, i], :]


def _swap_cols(a: np.ndarray, i: int, j: int) -> None:
    if i != j:
        a[:, [i, j]] = a[:, [j, i]]


def smith_normal_form(m, check: bool = False) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return unimodular U, V and diagonal D with U m V = D and d_i | d_(i+1)"""
    a = as_int_matrix(m)
    rows, cols = a.shape
    u = identity(rows)
    v = identity(cols)
    t = 0
    while t < min(rows, cols):
        nonzero = [(abs(a[i, j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i, j] != 0]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        _swap_rows(a, t, pi)
        _swap_rows(u, t, pi)
        _swap_cols(a, t, pj)
        _swap_cols(v, t, pj)

        while True:
            pivot = a[t, t]
            dirty = False
            for i in range(t + 1, rows):
                q = a[i, t] // pivot
                if q:
                    a[i, :] = a[i, :] - q * a[t, :]
                    u[i, :] = u[i, :] - q * u[t, :]
                dirty = dirty or a[i, t] != 0
            for j in range(t + 1, cols):
                q = a[t, j] // pivot
                if q:
                    a[:, j] = a[:, j] - q * a[:, t]
                    v[:, j] = v[:, j] - q * v[:, t]
                dirty = dirty or a[t, j] != 0
            if not dirty:
                # pivot must divide the rest of the block
                bad = [(i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i, j] % pivot != 0]
                if not bad:
                    break
                i, _ = bad[0]
                a[t, :] = a[t, :] + a[i, :]
                u[t, :] = u[t, :] + u[i, :]
                continue
            # a smaller remainder appeared in row t or column t; move it to the pivot
            candidates = [(abs(a[i, t]), i, t) for i in range(t, rows) if a[i, t] != 0]
            candidates += [(abs(a[t, j]), t, j) for j in range(t, cols) if a[t, j] != 0]
            _, pi, pj = min(candidates)
            _swap_rows(a, t, pi)
            _swap_rows(u, t, pi)
            _swap_cols(a, t, pj)
            _swap_cols(v, t, pj)

        if a[t, t] < 0:
            a[t, :] = -a[t, :]
            u[t, :] = -u[t, :]
        t += 1

    if check and not verify_snf(m, u, a, v):
        raise ArithmeticError("Smith normal form postcondition failed")
    return u, a, v


def verify_snf(m, u: np.ndarray, d: np.ndarray, v: np.ndarray) -> bool:
    """Check U m V = D, D diagonal with a divisibility chain, U and V unimodular"""
    m = as_int_matrix(m)
    if not np.array_equal(u.dot(m).dot(v), d):
        return False
    rows, cols = d.shape
    for i in range(rows):
        for j in range(cols):
            if i != j and d[i, j] != 0:
                return False
    diag = [d[i, i] for i in range(min(rows, cols))]
    for x, y in zip(diag, diag[1:]):
        if x == 0 and y != 0:
            return False
        if x != 0 and y % x != 0:
            return False
    return abs(determinant(u)) == 1 and abs(determinant(v)) == 1


def determinant(a: np.ndarray) -> int:
    """Exact integer determinant by fraction-free elimination"""
    if a.shape[0] == 0:
        return 1
    return int(Matrix(a.tolist()).det(method="bareiss"))


def diagonal(d: np.ndarray) -> Sequence[int]:
    return [d[i, i] for i in range(min(d.shape))]


def rank(d: np.ndarray) -> int:
    return sum(1 for x in diagonal(d) if x != 0)


def integer_kernel(m) -> np.ndarray:
    """Columns form a basis of the integer kernel of m"""
    a = as_int_matrix(m)
    _, d, v = smith_normal_form(a)
    return v[:, rank(d):]


def integer_solve(m, b) -> Optional[np.ndarray]:
    """An integer x with m x = b, or None"""
    a = as_int_matrix(m)
    u, d, v = smith_normal_form(a)
    rhs = u.dot(np.array(b, dtype=object).reshape(-1))
    r = rank(d)
    y = np.zeros(a.shape[1], dtype=object)
    for i in range(rhs.shape[0]):
        if i < r:
            if rhs[i] % d[i, i] != 0:
                return None
            y[i] = rhs[i] // d[i, i]
        elif rhs[i] != 0:
            return None
    return v.dot(y)
