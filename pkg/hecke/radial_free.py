#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Radial algebra of the d-regular tree and the moment criterion for candidate elements X
supported on a double coset Gamma*sigma_p*Gamma.

The radial elements chi_n (sums of the vertices at distance n, seen from the root) satisfy
    chi_1 * chi_1 = chi_2 + d * chi_0,    chi_1 * chi_n = chi_{n+1} + (d - 1) * chi_{n-1}  (n >= 2),
the same recursion as T_p * T_{p^n} in the Hecke algebra of PGL2(Z[1/p]) with d = p + 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel
from sympy import QQ, QQ_I

import config
from hecke import exact_core, utils
from hecke.coset_engine import LEFT, DoubleCoset, decompose, hecke_product
from hecke.errors import CapExceededError, PreconditionError
from hecke.exact_core import IDENTITY, ProjectiveMatrix

logger = utils.setup_logger()


@dataclass
class RadialElement:
    """Finite combination sum_n coeffs[n] * chi_n on the d-regular tree."""

    degree: int
    coeffs: Dict[int, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.degree < 2:
            raise PreconditionError(f"tree degree must be at least 2, got {self.degree}")
        self.coeffs = {n: QQ.convert(c) for n, c in self.coeffs.items() if c}

    @classmethod
    def chi(cls, degree: int, n: int = 1) -> "RadialElement":
        return cls(degree, {n: 1})

    @classmethod
    def unit(cls, degree: int) -> "RadialElement":
        return cls(degree, {0: 1})

    def coefficient(self, n: int) -> Any:
        return self.coeffs.get(n, QQ(0))

    def __add__(self, other: "RadialElement") -> "RadialElement":
        _check_degree(self, other)
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = out.get(n, QQ(0)) + c
        return RadialElement(self.degree, out)

    def scale(self, c: Any) -> "RadialElement":
        c = QQ.convert(c)
        return RadialElement(self.degree, {n: c * v for n, v in self.coeffs.items()})

    def __mul__(self, other: "RadialElement") -> "RadialElement":
        return radial_multiply(self, other)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RadialElement) and other.degree == self.degree and other.coeffs == self.coeffs


def _check_degree(x: RadialElement, y: RadialElement) -> None:
    if x.degree != y.degree:
        raise PreconditionError(f"degree mismatch: {x.degree} vs {y.degree}")


def _chi1_times(y: RadialElement) -> RadialElement:
    d = y.degree
    out: Dict[int, Any] = {}
    for n, c in y.coeffs.items():
        out[n + 1] = out.get(n + 1, QQ(0)) + c
        if n == 1:
            out[0] = out.get(0, QQ(0)) + d * c
        elif n >= 2:
            out[n - 1] = out.get(n - 1, QQ(0)) + (d - 1) * c
    return RadialElement(d, out)


def _chi_times(m: int, y: RadialElement) -> RadialElement:
    # chi_m = chi_1 chi_{m-1} - c_m chi_{m-2} with c_2 = d, c_m = d - 1 afterwards
    prev, cur = y, _chi1_times(y)
    if m == 0:
        return prev
    for k in range(2, m + 1):
        c = y.degree if k == 2 else y.degree - 1
        prev, cur = cur, _chi1_times(cur) + prev.scale(-c)
    return cur


def radial_multiply(x: RadialElement, y: RadialElement) -> RadialElement:
    _check_degree(x, y)
    out = RadialElement(x.degree)
    for m, c in x.coeffs.items():
        out = out + _chi_times(m, y).scale(c)
    return out


def chi1_power(degree: int, n: int) -> RadialElement:
    out = RadialElement.unit(degree)
    for _ in range(n):
        out = _chi1_times(out)
    return out


def kesten_moment(degree: int, n: int) -> int:
    """tau(chi_1^n): closed walks of length n at the root of the d-regular tree."""
    if n < 0:
        raise PreconditionError(f"moment order must be nonnegative, got {n}")
    c = chi1_power(degree, n).coefficient(0)
    return int(c.numerator) // int(c.denominator)


def closed_walk_count(degree: int, n: int) -> int:
    """
    Count closed walks by walking the tree itself.

    Vertices are reduced words in `degree` involutions (no letter repeated twice in a row), which is
    the d-regular tree as a Cayley graph.
    """

    @lru_cache(maxsize=None)
    def walks(vertex: Tuple[int, ...], remaining: int) -> int:
        if len(vertex) > remaining:
            return 0
        if remaining == 0:
            return 1
        total = 0
        for letter in range(degree):
            if vertex and vertex[-1] == letter:
                total += walks(vertex[:-1], remaining - 1)
            else:
                total += walks(vertex + (letter,), remaining - 1)
        return total

    return walks((), n)


def hecke_power(p: int, n: int) -> Dict[exact_core.DoubleCosetKey, int]:
    """Expansion of T_p^n in the basis of double cosets, via hecke_product."""
    t_p = DoubleCoset.from_index(p)
    classes: Dict[Any, DoubleCoset] = {t_p.key: t_p}
    identity = DoubleCoset.from_index(1)
    classes[identity.key] = identity
    current: Dict[Any, int] = {identity.key: 1}
    for step in range(n):
        nxt: Dict[Any, int] = {}
        for key, coeff in current.items():
            for term in hecke_product(classes[key], t_p, classes):
                nxt[term.coset.key] = nxt.get(term.coset.key, 0) + coeff * term.mult
        current = {k: v for k, v in nxt.items() if v}
        logger.debug(f"T_{p}^{step + 1}: {len(current)} classes")
    return dict(sorted(current.items()))


class SupportedGroupElement:
    """Finitely supported function on PGL2(Q) with exact complex-rational values (group-algebra element)."""

    def __init__(self, support: Optional[Dict[ProjectiveMatrix, Any]] = None):
        self.support: Dict[ProjectiveMatrix, Any] = {}
        for g, c in (support or {}).items():
            c = QQ_I.convert(c)
            if c:
                self.support[exact_core.canonicalize(g)] = c

    @classmethod
    def delta(cls, g: ProjectiveMatrix, coeff: Any = 1) -> "SupportedGroupElement":
        return cls({g: coeff})

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[ProjectiveMatrix, Any]]) -> "SupportedGroupElement":
        out: Dict[ProjectiveMatrix, Any] = {}
        for g, c in terms:
            g = exact_core.canonicalize(g)
            out[g] = out.get(g, QQ_I(0, 0)) + QQ_I.convert(c)
        return cls(out)

    @classmethod
    def from_json(cls, items: Sequence[Dict[str, Any]]) -> "SupportedGroupElement":
        """[{"matrix": "a b c d", "coeff": {"re": "p/q", "im": "r/s"}}, ...]"""
        return cls.from_terms(
            (ProjectiveMatrix.from_text(item["matrix"]), utils.parse_gaussian(item.get("coeff", 1)))
            for item in items
        )

    def to_json(self) -> List[Dict[str, Any]]:
        return [
            {"matrix": str(g), "coeff": utils.format_gaussian(c)}
            for g, c in sorted(self.support.items())
        ]

    def coefficient(self, g: ProjectiveMatrix) -> Any:
        return self.support.get(g, QQ_I(0, 0))

    def __len__(self) -> int:
        return len(self.support)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SupportedGroupElement) and other.support == self.support

    def __add__(self, other: "SupportedGroupElement") -> "SupportedGroupElement":
        out = dict(self.support)
        for g, c in other.support.items():
            out[g] = out.get(g, QQ_I(0, 0)) + c
        return SupportedGroupElement(out)

    def scale(self, c: Any) -> "SupportedGroupElement":
        c = QQ_I.convert(c)
        return SupportedGroupElement({g: c * v for g, v in self.support.items()})

    def adjoint(self) -> "SupportedGroupElement":
        return SupportedGroupElement(
            {exact_core.inverse(g): QQ_I(c.x, -c.y) for g, c in self.support.items()}
        )

    def is_self_adjoint(self) -> bool:
        return self == self.adjoint()

    def restrict(self, keep: Callable[[ProjectiveMatrix], bool]) -> "SupportedGroupElement":
        return SupportedGroupElement({g: c for g, c in self.support.items() if keep(g)})

    def double_coset_keys(self) -> set:
        return {exact_core.double_coset_key(g) for g in self.support}

    def __str__(self) -> str:
        return " + ".join(f"({utils.format_gaussian(c)})[{g}]" for g, c in sorted(self.support.items())) or "0"


def convolve(x: SupportedGroupElement, y: SupportedGroupElement, cap: Optional[int] = None) -> SupportedGroupElement:
    """(x*y)(g) = sum over ab = g of x(a) y(b)."""
    cap = cap or config.settings.CONVOLUTION_CAP
    out: Dict[ProjectiveMatrix, Any] = {}
    for a, ca in x.support.items():
        for b, cb in y.support.items():
            g = exact_core.multiply(a, b)
            out[g] = out.get(g, QQ_I(0, 0)) + ca * cb
            if len(out) > cap:
                raise CapExceededError("convolution support", cap, [len(x), len(y), len(out)])
    return SupportedGroupElement(out)


def powers(x: SupportedGroupElement, n: int, cap: Optional[int] = None) -> List[SupportedGroupElement]:
    """[x^0, x^1, ..., x^n]."""
    cap = cap or config.settings.CONVOLUTION_CAP
    out = [SupportedGroupElement.delta(IDENTITY)]
    trajectory: List[int] = []
    for _ in range(n):
        try:
            out.append(convolve(out[-1], x, cap))
        except CapExceededError as exc:
            raise CapExceededError("convolution power", cap, trajectory + exc.trajectory[-1:]) from exc
        trajectory.append(len(out[-1]))
    return out


def moment_of_X(x: SupportedGroupElement, n: int, cap: Optional[int] = None) -> Any:
    """
    tau(x^n): the identity coefficient of the n-th convolution power.

    Returned as a QQ_I domain element, so compare against QQ_I(k, 0) or read `.x` and `.y`;
    a plain integer never compares equal.
    """
    if n < 0:
        raise PreconditionError(f"moment order must be nonnegative, got {n}")
    if n == 0:
        return QQ_I(1, 0)
    cap = cap or config.settings.CONVOLUTION_CAP
    half = powers(x, n - 1, cap)[-1]
    # only the identity coefficient of half * x is needed
    total = QQ_I(0, 0)
    for g, c in half.support.items():
        total += c * x.coefficient(exact_core.inverse(g))
    return total


def involution_representatives(p: int) -> List[ProjectiveMatrix]:
    """
    p + 1 involutions of determinant p, one in each left coset x*Gamma of Gamma*diag(1, p)*Gamma.

    [[j, -(j^2 + p)], [1, -j]] for j = 0..p-1 and [[0, 1], [-p, 0]]; their images of the standard
    lattice are the p + 1 index-p sublattices, so the group they generate is the free product of
    p + 1 copies of Z/2 and the tree walks of degree p + 1 are its reduced words.
    """
    if p < 2:
        raise PreconditionError(f"p must be at least 2, got {p}")
    reps = [exact_core.canonicalize((j, -(j * j + p), 1, -j)) for j in range(p)]
    reps.append(exact_core.canonicalize((0, 1, -p, 0)))
    return reps


def coset_representative_sum(p: int) -> SupportedGroupElement:
    """Self-adjoint X = sum of the involutive coset representatives of Gamma*sigma_p*Gamma."""
    return SupportedGroupElement({t: 1 for t in involution_representatives(p)})


class MomentRow(BaseModel):
    n: int
    moment: Dict[str, str]
    radial: str
    equal: bool


class CriterionReport(BaseModel):
    degree: int
    index: int
    n_max: int
    rows: List[MomentRow]
    extends: bool
    first_failure: Optional[int] = None
    truncated: bool = True


def _single_class(x: SupportedGroupElement) -> exact_core.DoubleCosetKey:
    keys = x.double_coset_keys()
    if len(keys) != 1:
        raise PreconditionError(f"support must lie in one double coset, found classes {sorted(keys)}")
    return next(iter(keys))


def criterion_check(x: SupportedGroupElement, n_max: int, cap: Optional[int] = None) -> CriterionReport:
    """
    Compare tau(X^n) with tau(chi_1^n) for n <= n_max.

    The tree degree is the number of cosets Gamma*s in the supporting double coset (p + 1 for index p).
    """
    if not x.is_self_adjoint():
        raise PreconditionError("X must be self-adjoint")
    key = _single_class(x)
    dc = DoubleCoset(next(iter(x.support)))
    degree = len(decompose(dc, LEFT))
    rows: List[MomentRow] = []
    first_failure = None
    for n, power in enumerate(powers(x, n_max, cap)):
        moment = power.coefficient(IDENTITY)
        radial = kesten_moment(degree, n)
        equal = moment == QQ_I(radial, 0)
        if not equal and first_failure is None:
            first_failure = n
            logger.info(f"criterion fails at n={n}: {utils.format_gaussian(moment)} vs {radial}")
        rows.append(MomentRow(n=n, moment=utils.format_gaussian(moment), radial=str(radial), equal=equal))
    return CriterionReport(
        degree=degree, index=key[0], n_max=n_max, rows=rows,
        extends=first_failure is None, first_failure=first_failure,
    )


class CosetKind(str, Enum):
    GAMMA_X = "Gamma x"
    X_GAMMA = "x Gamma"
    DOUBLE = "Gamma x Gamma"


CosetLabel = Tuple[CosetKind, ProjectiveMatrix]


def _membership(label: CosetLabel) -> Callable[[ProjectiveMatrix], bool]:
    kind, rep = label
    if kind == CosetKind.GAMMA_X:
        target = exact_core.hnf_rep_right(rep)
        return lambda g: exact_core.hnf_rep_right(g) == target
    if kind == CosetKind.X_GAMMA:
        target = exact_core.hnf_rep_left(rep)
        return lambda g: exact_core.hnf_rep_left(g) == target
    target = exact_core.double_coset_key(rep)
    return lambda g: exact_core.double_coset_key(g) == target


def support_projections(x: SupportedGroupElement, labels: Sequence[CosetLabel]) -> SupportedGroupElement:
    """Restriction of x to the union of the given cosets / double cosets."""
    tests = [_membership(label) for label in labels]
    return x.restrict(lambda g: any(test(g) for test in tests))


def _exponent(index: int, p: int) -> Optional[int]:
    if index == 1:
        return 0
    if p < 2:
        return None
    e = 0
    while index % p == 0:
        index //= p
        e += 1
    return e if index == 1 else None


class RadialFamily:
    """The projections X_e of X^e onto Gamma*sigma_{p^e}*Gamma, and their coset pieces X_{Gamma s}."""

    def __init__(self, x: SupportedGroupElement, cap: Optional[int] = None):
        key = _single_class(x)
        self.x = x
        self.p = key[0]
        self.sign = key[1]
        self.cap = cap
        self._layers: List[SupportedGroupElement] = [SupportedGroupElement.delta(IDENTITY)]
        self._powers: List[SupportedGroupElement] = [SupportedGroupElement.delta(IDENTITY)]

    def layer(self, e: int) -> SupportedGroupElement:
        while len(self._powers) <= e:
            self._powers.append(convolve(self._powers[-1], self.x, self.cap))
            n = len(self._powers) - 1
            target = (self.p ** n, self.sign ** n)
            self._layers.append(
                self._powers[-1].restrict(lambda g, t=target: exact_core.double_coset_key(g) == t)
            )
        return self._layers[e]

    def exponent_of(self, sigma: ProjectiveMatrix) -> Optional[int]:
        index, sign = exact_core.double_coset_key(sigma)
        e = _exponent(index, self.p)
        if e is None or sign != self.sign ** e:
            return None
        return e

    def double_part(self, sigma: ProjectiveMatrix) -> SupportedGroupElement:
        e = self.exponent_of(sigma)
        return SupportedGroupElement() if e is None else self.layer(e)

    def coset_part(self, sigma: ProjectiveMatrix) -> SupportedGroupElement:
        e = self.exponent_of(sigma)
        if e is None:
            return SupportedGroupElement()
        return support_projections(self.layer(e), [(CosetKind.GAMMA_X, sigma)])


def multiplicativity_check_part3(
    x: SupportedGroupElement, sigma1: ProjectiveMatrix, sigma2: ProjectiveMatrix, cap: Optional[int] = None
) -> bool:
    """X_{Gamma s1 Gamma} X_{Gamma s2} == sum_j X_{Gamma s1 r_j s2} over Gamma s1 Gamma = U Gamma s1 r_j."""
    family = RadialFamily(x, cap)
    lhs = convolve(family.double_part(sigma1), family.coset_part(sigma2), cap)
    rhs = SupportedGroupElement()
    for s in decompose(DoubleCoset(sigma1), LEFT):
        rhs = rhs + family.coset_part(exact_core.multiply(s, sigma2))
    equal = lhs == rhs
    if not equal:
        logger.debug(f"part (3) mismatch for {sigma1} / {sigma2}: {lhs} vs {rhs}")
    return equal
