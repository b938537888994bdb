# -*- coding: utf-8 -*-
"""
Dense matrices over the Gaussian rationals QQ(i).

Everything here stays in dense DomainMatrix format so that equality compares entries, not storage.
"""

from typing import Any, Iterable, List, Sequence

import numpy as np
from sympy import QQ, QQ_I, Rational
from sympy.polys.matrices import DomainMatrix

from hecke.errors import PreconditionError

ZERO = QQ_I(0, 0)
ONE = QQ_I(1, 0)


def element(value: Any) -> Any:
    return QQ_I.convert(value)


def conj(z: Any) -> Any:
    return QQ_I(z.x, -z.y)


def from_rows(rows: Sequence[Sequence[Any]]) -> DomainMatrix:
    rows = [[element(v) for v in row] for row in rows]
    n = len(rows)
    m = len(rows[0]) if rows else 0
    return DomainMatrix(rows, (n, m), QQ_I)


def zeros(n: int, m: int = None) -> DomainMatrix:
    m = n if m is None else m
    return DomainMatrix([[ZERO] * m for _ in range(n)], (n, m), QQ_I)


def identity(n: int) -> DomainMatrix:
    return DomainMatrix([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], (n, n), QQ_I)


def unit_matrix(n: int, m: int, i: int, j: int) -> DomainMatrix:
    rows = [[ZERO] * m for _ in range(n)]
    rows[i][j] = ONE
    return DomainMatrix(rows, (n, m), QQ_I)


def unit_vector(n: int, i: int) -> List[Any]:
    return [ONE if k == i else ZERO for k in range(n)]


def permutation(images: Sequence[int]) -> DomainMatrix:
    """Matrix sending basis vector e_x to e_{images[x]}."""
    n = len(images)
    rows = [[ZERO] * n for _ in range(n)]
    for x, y in enumerate(images):
        rows[y][x] = ONE
    return DomainMatrix(rows, (n, n), QQ_I)


def dagger(m: DomainMatrix) -> DomainMatrix:
    return m.transpose().applyfunc(conj, QQ_I).to_dense()


def scale(m: DomainMatrix, c: Any) -> DomainMatrix:
    return m.scalarmul(element(c)).to_dense()


def equal(a: DomainMatrix, b: DomainMatrix) -> bool:
    return a.shape == b.shape and a.to_list() == b.to_list()


def is_zero(m: DomainMatrix) -> bool:
    return all(v == ZERO for row in m.to_list() for v in row)


def matrix_trace(m: DomainMatrix) -> Any:
    rows = m.to_list()
    return sum((rows[i][i] for i in range(min(m.shape))), ZERO)


def total(matrices: Iterable[DomainMatrix], n: int, m: int = None) -> DomainMatrix:
    out = zeros(n, m)
    for mat in matrices:
        out = out + mat
    return out


def extract(m: DomainMatrix, rows: Sequence[int], cols: Sequence[int]) -> DomainMatrix:
    return m.extract(list(rows), list(cols)).to_dense()


def embed(block: DomainMatrix, rows: Sequence[int], cols: Sequence[int], n: int) -> DomainMatrix:
    """n x n matrix with `block` placed at the given rows and columns."""
    out = [[ZERO] * n for _ in range(n)]
    data = block.to_list()
    for a, i in enumerate(rows):
        for b, j in enumerate(cols):
            out[i][j] = data[a][b]
    return DomainMatrix(out, (n, n), QQ_I)


def column_basis(m: DomainMatrix) -> DomainMatrix:
    return m.columnspace().to_dense()


def range_projection(columns: DomainMatrix) -> DomainMatrix:
    """Orthogonal projection onto the column space: B (B* B)^-1 B* for a basis B."""
    basis = column_basis(columns)
    if basis.shape[1] == 0:
        return zeros(columns.shape[0])
    gram = (dagger(basis) * basis).to_dense()
    return (basis * gram.inv() * dagger(basis)).to_dense()


def commutes(a: DomainMatrix, b: DomainMatrix) -> bool:
    return equal(a * b, b * a)


def is_projection(p: DomainMatrix) -> bool:
    return equal(p * p, p) and equal(dagger(p), p)


def is_psd_exact(m: DomainMatrix) -> bool:
    """
    Positive semidefiniteness of a Hermitian matrix from its characteristic polynomial.

    det(lambda - M) = sum c_k lambda^k has only nonnegative roots iff (-1)^(n-k) c_k >= 0 for all k.
    """
    if not equal(dagger(m), m):
        raise PreconditionError("matrix is not Hermitian")
    coeffs = m.to_dense().charpoly()
    n = len(coeffs) - 1
    for i, c in enumerate(coeffs):
        k = n - i
        if c.y != 0:
            raise PreconditionError("characteristic polynomial of a Hermitian matrix must be real")
        if (c.x if (n - k) % 2 == 0 else -c.x) < 0:
            return False
    return True


def to_complex(m: DomainMatrix) -> np.ndarray:
    rows = m.to_list()
    return np.array(
        [[complex(float(v.x), float(v.y)) for v in row] for row in rows], dtype=complex
    ).reshape(m.shape)


def to_complex_scalar(z: Any) -> complex:
    return complex(float(z.x), float(z.y))


def from_complex_scalar(z: complex, max_denominator: int = 10 ** 12) -> Any:
    """Nearest Gaussian rational with bounded denominators; used for floating results kept in series."""
    re = Rational(z.real).limit_denominator(max_denominator)
    im = Rational(z.imag).limit_denominator(max_denominator)
    return QQ_I(QQ.convert(re), QQ.convert(im))


def block_matrix(blocks: List[List[DomainMatrix]]) -> DomainMatrix:
    rows: List[List[Any]] = []
    for block_row in blocks:
        lists = [b.to_list() for b in block_row]
        for r in range(block_row[0].shape[0]):
            rows.append([v for part in lists for v in part[r]])
    return from_rows(rows)
