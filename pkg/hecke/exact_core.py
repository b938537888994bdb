#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Exact arithmetic in PGL2(Q).

Every group element is a ProjectiveMatrix: the primitive integer representative of its projective
class with the first nonzero entry (in the order a, b, c, d) positive. Coset labels are Hermite
forms: upper-triangular for right cosets Gamma*x, lower-triangular for left cosets x*Gamma.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Any, Dict, Iterable, Sequence, Tuple

import numpy as np
from sympy import QQ, ZZ, igcd, ilcm

try:
    from sympy.core.intfunc import igcdex
except ImportError:  # sympy < 1.13
    from sympy.core.numbers import igcdex
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from hecke.errors import NotInvertibleError, PreconditionError
from hecke.utils import parse_rational

# Double cosets of PSL2(Z) in PGL2(Q) are classified by (divisor index, determinant sign)
DoubleCosetKey = Tuple[int, int]


@dataclass(frozen=True, order=True)
class ProjectiveMatrix:
    """Canonical integer representative [[a, b], [c, d]] of an element of PGL2(Q)."""

    a: int
    b: int
    c: int
    d: int

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def det_sign(self) -> int:
        return 1 if self.det > 0 else -1

    def entries(self) -> Tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, other: "ProjectiveMatrix") -> "ProjectiveMatrix":
        return multiply(self, other)

    def inverse(self) -> "ProjectiveMatrix":
        return inverse(self)

    def transpose(self) -> "ProjectiveMatrix":
        return canonicalize((self.a, self.c, self.b, self.d))

    def is_identity(self) -> bool:
        return self == IDENTITY

    def __str__(self) -> str:
        return f"{self.a} {self.b} {self.c} {self.d}"

    def to_json(self) -> Dict[str, str]:
        return {"a": str(self.a), "b": str(self.b), "c": str(self.c), "d": str(self.d)}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "ProjectiveMatrix":
        return canonicalize([parse_rational(data[k]) for k in ("a", "b", "c", "d")])

    @classmethod
    def from_text(cls, text: str) -> "ProjectiveMatrix":
        tokens = text.replace(",", " ").split()
        if len(tokens) != 4:
            raise PreconditionError(f"expected four entries 'a b c d', got {text!r}")
        return canonicalize([parse_rational(t) for t in tokens])


def _flatten(raw: Any) -> Sequence[Any]:
    if isinstance(raw, ProjectiveMatrix):
        return raw.entries()
    items = list(raw)
    if len(items) == 2 and all(isinstance(row, (list, tuple)) for row in items):
        items = [items[0][0], items[0][1], items[1][0], items[1][1]]
    if len(items) != 4:
        raise PreconditionError("a 2x2 matrix needs exactly four entries")
    return items


def canonicalize(raw: Any) -> ProjectiveMatrix:
    """Content-one, sign-normalized integer representative of a nonsingular rational 2x2 matrix."""
    entries = [QQ.convert(parse_rational(e) if isinstance(e, str) else e) for e in _flatten(raw)]
    if entries[0] * entries[3] - entries[1] * entries[2] == 0:
        raise NotInvertibleError("matrix")
    scale = reduce(ilcm, (int(e.denominator) for e in entries), 1)
    ints = [int(e.numerator) * (scale // int(e.denominator)) for e in entries]
    content = reduce(igcd, (abs(v) for v in ints), 0)
    ints = [v // content for v in ints]
    lead = next(v for v in ints if v != 0)
    if lead < 0:
        ints = [-v for v in ints]
    return ProjectiveMatrix(*ints)


def multiply(x: ProjectiveMatrix, y: ProjectiveMatrix) -> ProjectiveMatrix:
    return canonicalize((
        x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
        x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d,
    ))


def inverse(x: ProjectiveMatrix) -> ProjectiveMatrix:
    # adjugate; the determinant is a projective scalar
    return canonicalize((x.d, -x.b, -x.c, x.a))


def product(elements: Iterable[ProjectiveMatrix]) -> ProjectiveMatrix:
    return reduce(multiply, elements, IDENTITY)


def is_in_gamma(x: ProjectiveMatrix) -> bool:
    return x.det == 1


def hnf_rep_right(x: ProjectiveMatrix) -> ProjectiveMatrix:
    """Label of the right coset Gamma*x: [[alpha, beta], [0, delta]], alpha > 0, 0 <= beta < |delta|."""
    a, b, c, d = x.entries()
    u, v, g = igcdex(a, c)
    if g < 0:
        u, v, g = -u, -v, -g
    # [[u, v], [-c/g, a/g]] lies in SL2(Z)
    alpha = g
    beta = u * b + v * d
    delta = (-c // g) * b + (a // g) * d
    beta %= abs(delta)
    return ProjectiveMatrix(alpha, beta, 0, delta)


def hnf_rep_left(x: ProjectiveMatrix) -> ProjectiveMatrix:
    """Label of the left coset x*Gamma: the transpose of the right label of x^T."""
    r = hnf_rep_right(ProjectiveMatrix(x.a, x.c, x.b, x.d))
    return ProjectiveMatrix(r.a, 0, r.b, r.d)


def smith_divisors(x: ProjectiveMatrix) -> Tuple[int, int]:
    """Invariant factors (d1, d2) of the integer matrix, d1 | d2."""
    m = DomainMatrix([[ZZ(x.a), ZZ(x.b)], [ZZ(x.c), ZZ(x.d)]], (2, 2), ZZ)
    d1, d2 = invariant_factors(m)
    return abs(int(d1)), abs(int(d2))


def divisor_index(x: ProjectiveMatrix) -> int:
    """d2/d1 of the Smith form of the primitive matrix; 1 exactly on PGL2(Z)."""
    # content one forces d1 = 1, so d2 = |det|
    return abs(x.det)


def double_coset_key(x: ProjectiveMatrix) -> DoubleCosetKey:
    return (divisor_index(x), x.det_sign)


def diag(p: int, q: int) -> ProjectiveMatrix:
    return canonicalize((p, 0, 0, q))


IDENTITY = ProjectiveMatrix(1, 0, 0, 1)
S = canonicalize((0, -1, 1, 0))
T = ProjectiveMatrix(1, 1, 0, 1)
T_INV = ProjectiveMatrix(1, -1, 0, 1)
GAMMA_GENERATORS: Tuple[ProjectiveMatrix, ...] = (S, T, T_INV)


def random_gamma(rng: np.random.Generator, max_word: int = 12) -> ProjectiveMatrix:
    """Random word in S, T, T^-1 of length at most max_word."""
    length = int(rng.integers(0, max_word + 1))
    picks = rng.integers(0, len(GAMMA_GENERATORS), size=length)
    return product(GAMMA_GENERATORS[int(i)] for i in picks)


def random_matrix(rng: np.random.Generator, bound: int = 50) -> ProjectiveMatrix:
    """Random nonsingular integer matrix with entries bounded by `bound` in absolute value."""
    while True:
        a, b, c, d = (int(v) for v in rng.integers(-bound, bound + 1, size=4))
        if a * d - b * c != 0:
            return canonicalize((a, b, c, d))
