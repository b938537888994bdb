#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Hecke operators on integer q-expansions of level-one modular forms.

(T_p f)_n = a_{np} + p^(k-1) * a_{n/p}, the second term only when p | n.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from pydantic import BaseModel
from sympy import QQ, isprime

import config
from hecke import utils
from hecke.errors import PreconditionError

logger = utils.setup_logger()


@dataclass(frozen=True)
class QSeries:
    """sum_{n=1}^{N} a_n q^n of weight k; coeffs[0] is a_1."""

    weight: int
    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise PreconditionError("a q-series needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(int(a) for a in self.coeffs))

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    def a(self, n: int) -> int:
        return self.coeffs[n - 1]

    def truncate(self, n: int) -> "QSeries":
        return QSeries(self.weight, self.coeffs[:n])

    def __add__(self, other: "QSeries") -> "QSeries":
        _check_weight(self, other)
        n = min(self.precision, other.precision)
        return QSeries(self.weight, [x + y for x, y in zip(self.coeffs[:n], other.coeffs[:n])])

    def scale(self, c: int) -> "QSeries":
        return QSeries(self.weight, [c * a for a in self.coeffs])

    def to_json(self) -> dict:
        return {"weight": self.weight, "coeffs": [str(a) for a in self.coeffs]}


def _check_weight(f: QSeries, g: QSeries) -> None:
    if f.weight != g.weight:
        raise PreconditionError(f"weight mismatch: {f.weight} vs {g.weight}")


def _truncated_product(x: List[int], y: List[int], n: int) -> List[int]:
    out = [0] * n
    for i, xi in enumerate(x[:n]):
        if xi:
            for j, yj in enumerate(y[: n - i]):
                out[i + j] += xi * yj
    return out


def _euler_product(n: int) -> List[int]:
    """prod_{m>=1} (1 - q^m) mod q^n by the pentagonal number theorem."""
    out = [0] * n
    k = 0
    while True:
        hit = False
        for j in ((k * (3 * k - 1)) // 2, (k * (3 * k + 1)) // 2) if k else (0,):
            if j < n:
                out[j] = -1 if k % 2 else 1
                hit = True
        if not hit:
            return out
        k += 1


def delta_qexp(n: Optional[int] = None) -> QSeries:
    """q * prod (1 - q^m)^24, weight 12, first n coefficients."""
    n = config.settings.QEXP_PRECISION if n is None else n
    if n < 1:
        raise PreconditionError(f"precision must be positive, got {n}")
    eta = _euler_product(n)
    power = [1] + [0] * (n - 1)
    base, exponent = eta, 24
    while exponent:
        if exponent & 1:
            power = _truncated_product(power, base, n)
        base = _truncated_product(base, base, n)
        exponent >>= 1
    return QSeries(12, power[:n])


def _check_prime(p: int) -> None:
    if not isprime(p):
        raise PreconditionError(f"{p} is not prime")


def hecke_Tp(f: QSeries, p: int) -> QSeries:
    """T_p f on the first floor(N/p) coefficients."""
    _check_prime(p)
    n_out = f.precision // p
    if n_out < 1:
        raise PreconditionError(f"precision {f.precision} too small for p={p}")
    scale = p ** (f.weight - 1)
    coeffs = []
    for n in range(1, n_out + 1):
        value = f.a(n * p)
        if n % p == 0:
            value += scale * f.a(n // p)
        coeffs.append(value)
    return QSeries(f.weight, coeffs)


def hecke_Tp_squared(f: QSeries, p: int) -> QSeries:
    """T_{p^2} = T_p o T_p - p^(k-1) Id."""
    tt = hecke_Tp(hecke_Tp(f, p), p)
    return tt + f.truncate(tt.precision).scale(-(p ** (f.weight - 1)))


class EigenResult(BaseModel):
    p: int
    eigenvalue: Optional[str] = None
    checked_up_to: int
    mismatch_index: Optional[int] = None

    @property
    def is_eigenvector(self) -> bool:
        return self.eigenvalue is not None


def eigenvalue_from_image(f: QSeries, image: QSeries, p: int) -> EigenResult:
    if f.a(1) == 0:
        raise PreconditionError("a_1 must be nonzero")
    lam = QQ(image.a(1), f.a(1))
    for n in range(1, image.precision + 1):
        if lam * f.a(n) != image.a(n):
            logger.debug(f"not an eigenvector for p={p}: first mismatch at n={n}")
            return EigenResult(p=p, checked_up_to=image.precision, mismatch_index=n)
    return EigenResult(p=p, eigenvalue=utils.format_rational(lam), checked_up_to=image.precision)


def eigenvalue_of(f: QSeries, p: int) -> EigenResult:
    """lambda with T_p f = lambda f on every comparable coefficient, or the first mismatch index."""
    return eigenvalue_from_image(f, hecke_Tp(f, p), p)


def hecke_relation_holds(f: QSeries, p: int) -> bool:
    """lambda_p^2 == lambda_{p^2} + p^(k-1) for an eigenform f."""
    lam_p = eigenvalue_of(f, p)
    lam_p2 = eigenvalue_from_image(f, hecke_Tp_squared(f, p), p)
    if not (lam_p.is_eigenvector and lam_p2.is_eigenvector):
        return False
    a = utils.parse_rational(lam_p.eigenvalue)
    b = utils.parse_rational(lam_p2.eigenvalue)
    return a * a == b + p ** (f.weight - 1)
