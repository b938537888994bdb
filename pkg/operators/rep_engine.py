#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Representation engine on finite models.

A Koopman space X of a finite group G, on which Gamma acts freely, with a Gamma-fundamental domain F
gives l2(X) = l2(Gamma) (x) L for the wandering subspace L = l2(F). Operators are then encoded as
operator-coefficient series:

    S(A)   = sum_{theta in A} rho(theta^-1) (x) P_L pi(theta) P_L
    S_p(A) = sum_{theta in A} rho(theta^-1) (x) P_L pi(theta) p P_L
    iota(Y) = sum_{gamma} rho(gamma^-1) (x) P_L pi(gamma) Y P_L      (Y commuting with pi(Gamma))

Blocks are indexed by F: block[a][b] is the matrix entry between f_a and f_b.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from sympy import QQ_I
from sympy.polys.matrices import DomainMatrix

from hecke import utils
from hecke.errors import ConsistencyError, PreconditionError
from operators import linalg
from operators.finite_model import FiniteHeckePair, FiniteModel, KoopmanSpace
from operators.series import (
    OperatorSeries,
    cond_expect_product,
    epsilon_tilde,
    series_adjoint,
    series_multiply,
)

logger = utils.setup_logger()


class WanderingDecomposition:
    """Koopman space X with a Gamma-fundamental domain F; L = l2(F) is Gamma-wandering and generating."""

    def __init__(self, space: KoopmanSpace, domain: Sequence[int]):
        self.space = space
        self.model: FiniteModel = space.model
        self.pair = FiniteHeckePair(self.model)
        self.domain: List[int] = list(domain)
        self.size = space.size
        self.dim = len(self.domain)
        self._validate()
        self._position = {f: a for a, f in enumerate(self.domain)}

    def _validate(self) -> None:
        model, space = self.model, self.space
        for x in range(self.size):
            stabilizer = [c for c in model.gamma if space.action[c][x] == x]
            if len(stabilizer) > 1:
                raise PreconditionError(
                    f"Gamma does not act freely: point {x} is fixed by {[model.labels[c] for c in stabilizer]}"
                )
        hits: Dict[FrozenSet[int], List[int]] = {}
        for f in self.domain:
            if not 0 <= f < self.size:
                raise PreconditionError(f"point {f} is not in X")
            hits.setdefault(space.gamma_orbit(f), []).append(f)
        for orbit, points in hits.items():
            if len(points) > 1:
                raise PreconditionError(f"F meets the Gamma-orbit {sorted(orbit)} more than once: {points}")
        if len(hits) * len(model.gamma) != self.size:
            missed = [x for x in range(self.size) if space.gamma_orbit(x) not in hits]
            raise PreconditionError(f"F misses the Gamma-orbit {sorted(space.gamma_orbit(missed[0]))}")

    def position(self, x: int) -> Optional[int]:
        return self._position.get(x)

    @lru_cache(maxsize=None)
    def pi(self, g: int) -> DomainMatrix:
        return linalg.permutation(self.space.action[g])

    def projection_L(self) -> DomainMatrix:
        rows = [[linalg.ONE if (i == j and i in self._position) else linalg.ZERO for j in range(self.size)]
                for i in range(self.size)]
        return linalg.from_rows(rows)

    def act_inverse(self, g: int, x: int) -> int:
        return self.space.action[self.model.inv[g]][x]

    def block(self, theta: int, p_rows: Optional[List[List[Any]]] = None) -> DomainMatrix:
        """P_L pi(theta) p P_L on F; entry [a][b] = p[theta^-1 f_a][f_b]."""
        rows = []
        for fa in self.domain:
            source = self.act_inverse(theta, fa)
            if p_rows is None:
                rows.append([linalg.ONE if source == fb else linalg.ZERO for fb in self.domain])
            else:
                rows.append([p_rows[source][fb] for fb in self.domain])
        return linalg.from_rows(rows)

    def check_wandering(self) -> bool:
        """pi(gamma) L orthogonal to L for gamma != e, and sum_gamma pi(gamma) P_L pi(gamma)^-1 = 1."""
        p_l = self.projection_L()
        for c in self.model.gamma:
            if c != self.model.identity and not linalg.is_zero(p_l * self.pi(c) * p_l):
                return False
        total = linalg.total(
            (self.pi(c) * p_l * self.pi(self.model.inv[c]) for c in self.model.gamma), self.size
        )
        return linalg.equal(total, linalg.identity(self.size))

    def __repr__(self) -> str:
        return f"WanderingDecomposition({self.model.name} on {self.space.name}, dim L={self.dim})"


def build_koopman_model(
    model: FiniteModel, action: Sequence[Sequence[int]], domain: Sequence[int], name: str = "X"
) -> Tuple[KoopmanSpace, WanderingDecomposition]:
    space = KoopmanSpace(model, action, name)
    return space, WanderingDecomposition(space, domain)


def regular_decomposition(model: FiniteModel) -> WanderingDecomposition:
    """X = G with left translation; F = the model's coset transversal."""
    return WanderingDecomposition(KoopmanSpace.regular(model), model.reps)


@dataclass
class SubrepProjection:
    matrix: DomainMatrix
    commutes_with_G: bool

    @property
    def rows(self) -> List[List[Any]]:
        return self.matrix.to_list()

    @classmethod
    def of(cls, wd: WanderingDecomposition, matrix: DomainMatrix) -> "SubrepProjection":
        matrix = matrix.to_dense()
        if not linalg.is_projection(matrix):
            raise PreconditionError("p must be a self-adjoint idempotent")
        model = wd.model
        if not all(linalg.commutes(matrix, wd.pi(c)) for c in model.gamma):
            raise PreconditionError("p must commute with pi(Gamma)")
        on_g = all(linalg.commutes(matrix, wd.pi(g)) for g in range(model.order))
        return cls(matrix, on_g)

    def complement(self, wd: WanderingDecomposition) -> "SubrepProjection":
        return SubrepProjection.of(wd, linalg.identity(wd.size) - self.matrix)


def identity_projection(wd: WanderingDecomposition) -> SubrepProjection:
    return SubrepProjection(linalg.identity(wd.size), True)


def invariant_projection(wd: WanderingDecomposition) -> SubrepProjection:
    """Projection onto the G-fixed vectors: the average of pi(g)."""
    avg = linalg.scale(linalg.total((wd.pi(g) for g in range(wd.model.order)), wd.size),
                       QQ_I(1, 0) / QQ_I(wd.model.order, 0))
    return SubrepProjection.of(wd, avg)


def cyclic_projection(
    wd: WanderingDecomposition, vectors: Sequence[Sequence[Any]], over_gamma: bool = False
) -> SubrepProjection:
    """Projection onto span{pi(g) v}: g over G, or over Gamma only when over_gamma is set."""
    elements = wd.model.gamma if over_gamma else range(wd.model.order)
    columns: List[List[Any]] = []
    for v in vectors:
        v = [linalg.element(c) for c in v]
        if len(v) != wd.size:
            raise PreconditionError(f"vector has length {len(v)}, expected {wd.size}")
        for g in elements:
            image = [linalg.ZERO] * wd.size
            for x, c in enumerate(v):
                image[wd.space.action[g][x]] = c
            columns.append(image)
    spanning = linalg.from_rows([list(row) for row in zip(*columns)])
    return SubrepProjection.of(wd, linalg.range_projection(spanning))


def random_vector(size: int, rng: np.random.Generator, bound: int = 3) -> List[Any]:
    return [QQ_I(int(rng.integers(-bound, bound + 1)), int(rng.integers(-bound, bound + 1))) for _ in range(size)]


def build_S(a: Iterable[int], wd: WanderingDecomposition) -> OperatorSeries:
    """S(A) = sum_{theta in A} rho(theta^-1) (x) P_L pi(theta) P_L"""
    inv = wd.model.inv
    return OperatorSeries(wd.pair, wd.dim, {inv[theta]: wd.block(theta) for theta in set(a)})


def build_S_p(a: Iterable[int], sp: SubrepProjection, wd: WanderingDecomposition) -> OperatorSeries:
    """S_p(A) = sum_{theta in A} rho(theta^-1) (x) P_L pi(theta) p P_L"""
    inv = wd.model.inv
    rows = sp.rows
    return OperatorSeries(wd.pair, wd.dim, {inv[theta]: wd.block(theta, rows) for theta in set(a)})


def commutes_with_gamma(x: DomainMatrix, wd: WanderingDecomposition) -> bool:
    rows = x.to_list()
    action = wd.space.action
    for c in wd.model.gamma:
        perm = action[c]
        for i in range(wd.size):
            for j in range(wd.size):
                if rows[perm[i]][perm[j]] != rows[i][j]:
                    return False
    return True


def _require_commutant(x: DomainMatrix, wd: WanderingDecomposition) -> None:
    if x.shape != (wd.size, wd.size):
        raise PreconditionError(f"operator has shape {x.shape}, expected {wd.size}x{wd.size}")
    if not commutes_with_gamma(x, wd):
        raise PreconditionError("operator does not commute with pi(Gamma)")


def commutant_series(y: DomainMatrix, wd: WanderingDecomposition) -> OperatorSeries:
    """iota(Y) = sum_gamma rho(gamma^-1) (x) P_L pi(gamma) Y P_L for Y in pi(Gamma)'."""
    _require_commutant(y, wd)
    rows = y.to_list()
    inv = wd.model.inv
    return OperatorSeries(wd.pair, wd.dim, {inv[c]: wd.block(c, rows) for c in wd.model.gamma})


def build_p_series(sp: SubrepProjection, wd: WanderingDecomposition) -> OperatorSeries:
    """sum_gamma rho(gamma) (x) P_L pi(gamma^-1) p P_L; an idempotent supported in Gamma."""
    series = commutant_series(sp.matrix, wd)
    if series_multiply(series, series) != series:
        raise ConsistencyError("p-series is not idempotent")
    return series


def psi_adjoint_action(a: Iterable[int], x: DomainMatrix, wd: WanderingDecomposition) -> DomainMatrix:
    """sum_i pi(v_i) X pi(v_i)^-1 over A = U v_i Gamma, for X commuting with pi(Gamma)."""
    _require_commutant(x, wd)
    rows = x.to_list()
    n = wd.size
    out = [[linalg.ZERO] * n for _ in range(n)]
    for v in wd.model.left_coset_reps(a):
        back = wd.space.action[wd.model.inv[v]]
        for i in range(n):
            bi = back[i]
            for j in range(n):
                out[i][j] += rows[bi][back[j]]
    return linalg.from_rows(out)


def random_commutant_element(
    sp: SubrepProjection, wd: WanderingDecomposition, rng: np.random.Generator, bound: int = 3
) -> DomainMatrix:
    """p (sum_gamma pi(gamma) Y pi(gamma)^-1) p for a random Gaussian-integer Y."""
    n = wd.size
    y = [random_vector(n, rng, bound) for _ in range(n)]
    avg = [[linalg.ZERO] * n for _ in range(n)]
    for c in wd.model.gamma:
        perm = wd.space.action[c]
        for i in range(n):
            for j in range(n):
                avg[perm[i]][perm[j]] += y[i][j]
    return (sp.matrix * linalg.from_rows(avg) * sp.matrix).to_dense()


@dataclass
class TheoremReport:
    adjointed: bool
    literal: bool
    literal_applicable: bool


def theorem_expectation_report(
    sp: SubrepProjection, wd: WanderingDecomposition, a: Iterable[int], x: DomainMatrix
) -> TheoremReport:
    """
    Evaluate E(S_p(A) iota(X) S_p(A)*) and E(S_p(A) iota(X) S_p(A)) against iota(Psi_A(X)).

    A must be a union of left cosets v*Gamma. The unadjointed form is expected to agree only when
    A = A^-1.
    """
    a = frozenset(a)
    model = wd.model
    if model.set_product(a, model.gamma) != a:
        raise PreconditionError("A must be a union of left cosets v*Gamma")
    _require_commutant(x, wd)
    if not linalg.equal((sp.matrix * x * sp.matrix).to_dense(), x):
        raise PreconditionError("X must be compressed by p")
    s_p = build_S_p(a, sp, wd)
    middle = series_multiply(s_p, commutant_series(x, wd))
    expected = commutant_series(psi_adjoint_action(a, x, wd), wd)
    adjointed = cond_expect_product(middle, series_adjoint(s_p)) == expected
    literal = cond_expect_product(middle, s_p) == expected
    return TheoremReport(adjointed, literal, model.inverse_set(a) == a)


def verify_theorem_expectation(
    sp: SubrepProjection, wd: WanderingDecomposition, a: Iterable[int], x: DomainMatrix
) -> bool:
    return theorem_expectation_report(sp, wd, a, x).adjointed


def classical_hecke_operator(a: Iterable[int], wd: WanderingDecomposition) -> DomainMatrix:
    """
    Matrix of f -> sum_i pi(v_i) f on Gamma-invariant functions (A = U v_i Gamma), in the basis of
    Gamma-orbit indicators of the points of F.
    """
    n = len(wd.domain)
    out = [[linalg.ZERO] * n for _ in range(n)]
    reps = wd.model.left_coset_reps(a)
    for b, fb in enumerate(wd.domain):
        image = [0] * wd.size
        for y in wd.space.gamma_orbit(fb):
            for v in reps:
                image[wd.space.action[v][y]] += 1
        for i, fa in enumerate(wd.domain):
            out[i][b] = linalg.element(image[fa])
    return linalg.from_rows(out)


def _tensor_domain(wd: WanderingDecomposition) -> List[int]:
    n = wd.size
    return [f * n + y for f in wd.domain for y in range(n)]


def tensor_model_check(a: Iterable[int], x: DomainMatrix, wd: WanderingDecomposition) -> bool:
    """
    Psi_A(X) computed directly agrees with epsilon_tilde(S(A)) in the Koopman model on X x X.

    Operators on l2(X) are vectors on X x X; conjugation by pi(g) becomes the diagonal action,
    Gamma-commuting operators become Gamma-invariant vectors, determined by their values on F x X.
    """
    a = frozenset(a)
    n = wd.size
    product_space = wd.space.product_space()
    wd_k = WanderingDecomposition(product_space, _tensor_domain(wd))
    rows = x.to_list()
    restricted = linalg.from_rows([[rows[pt // n][pt % n]] for pt in wd_k.domain])
    image_on_f = (epsilon_tilde(build_S(a, wd_k)) * restricted).to_dense().to_list()
    lifted = [[linalg.ZERO] * n for _ in range(n)]
    for k, pt in enumerate(wd_k.domain):
        for c in wd.model.gamma:
            q = product_space.action[c][pt]
            lifted[q // n][q % n] += image_on_f[k][0]
    return linalg.equal(linalg.from_rows(lifted), psi_adjoint_action(a, x, wd))
