# -*- coding: utf-8 -*-
"""
Operator-coefficient series sum_g rho(g) (x) A_g over a group, with rho(a) rho(b) = rho(ba).

Keys are group elements of any HeckePair (ids of a finite model, or projective matrices);
coefficients are dense square blocks over QQ(i).
"""

from __future__ import annotations

from typing import Any, Callable, Dict, Hashable, Iterable, Optional, Tuple

import numpy as np
from sympy import QQ_I
from sympy.polys.matrices import DomainMatrix

from hecke.errors import PreconditionError
from hecke.hecke_pair import HeckePair
from operators import linalg


class OperatorSeries:
    def __init__(self, pair: HeckePair, block_dim: int, blocks: Optional[Dict[Hashable, DomainMatrix]] = None):
        self.pair = pair
        self.block_dim = block_dim
        self.blocks: Dict[Hashable, DomainMatrix] = {}
        for g, block in (blocks or {}).items():
            if block.shape != (block_dim, block_dim):
                raise PreconditionError(f"block at {g} has shape {block.shape}, expected {block_dim}x{block_dim}")
            block = block.to_dense()
            if not linalg.is_zero(block):
                self.blocks[g] = block

    @classmethod
    def unit(cls, pair: HeckePair, block_dim: int, block: Optional[DomainMatrix] = None) -> "OperatorSeries":
        """1 (x) block (identity block by default)."""
        return cls(pair, block_dim, {pair.identity: block if block is not None else linalg.identity(block_dim)})

    @classmethod
    def from_terms(cls, pair: HeckePair, block_dim: int, terms: Iterable[Tuple[Hashable, DomainMatrix]]) -> "OperatorSeries":
        acc: Dict[Hashable, DomainMatrix] = {}
        for g, block in terms:
            acc[g] = acc[g] + block if g in acc else block.to_dense()
        return cls(pair, block_dim, acc)

    def block(self, g: Hashable) -> DomainMatrix:
        return self.blocks.get(g, linalg.zeros(self.block_dim))

    @property
    def support(self) -> list:
        return sorted(self.blocks, key=str)

    def __add__(self, other: "OperatorSeries") -> "OperatorSeries":
        _check(self, other)
        return OperatorSeries.from_terms(self.pair, self.block_dim, [*self.blocks.items(), *other.blocks.items()])

    def __sub__(self, other: "OperatorSeries") -> "OperatorSeries":
        return self + other.scale(-1)

    def scale(self, c: Any) -> "OperatorSeries":
        return OperatorSeries(self.pair, self.block_dim, {g: linalg.scale(b, c) for g, b in self.blocks.items()})

    def __mul__(self, other: "OperatorSeries") -> "OperatorSeries":
        return series_multiply(self, other)

    def map_blocks(self, fn: Callable[[DomainMatrix], DomainMatrix]) -> "OperatorSeries":
        return OperatorSeries(self.pair, self.block_dim, {g: fn(b) for g, b in self.blocks.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OperatorSeries) or other.block_dim != self.block_dim:
            return False
        if set(self.blocks) != set(other.blocks):
            return False
        return all(linalg.equal(b, other.blocks[g]) for g, b in self.blocks.items())

    def __repr__(self) -> str:
        return f"OperatorSeries(support={len(self.blocks)}, block_dim={self.block_dim})"


def _check(x: OperatorSeries, y: OperatorSeries) -> None:
    if x.block_dim != y.block_dim:
        raise PreconditionError(f"block dimension mismatch: {x.block_dim} vs {y.block_dim}")


def series_multiply(x: OperatorSeries, y: OperatorSeries) -> OperatorSeries:
    """(rho(a) (x) A)(rho(b) (x) B) = rho(ba) (x) AB"""
    _check(x, y)
    pair = x.pair
    terms = []
    for a, block_a in x.blocks.items():
        for b, block_b in y.blocks.items():
            terms.append((pair.multiply(b, a), (block_a * block_b).to_dense()))
    return OperatorSeries.from_terms(pair, x.block_dim, terms)


def series_adjoint(x: OperatorSeries) -> OperatorSeries:
    """Block at g is the conjugate transpose of the block at g^-1."""
    return OperatorSeries(x.pair, x.block_dim, {x.pair.inverse(g): linalg.dagger(b) for g, b in x.blocks.items()})


def epsilon_tilde(x: OperatorSeries) -> DomainMatrix:
    """Sum of all blocks."""
    return linalg.total(x.blocks.values(), x.block_dim)


def cond_expect_gamma(x: OperatorSeries) -> OperatorSeries:
    """Restriction of the support to Gamma."""
    return OperatorSeries(x.pair, x.block_dim, {g: b for g, b in x.blocks.items() if x.pair.in_gamma(g)})


def trace(x: OperatorSeries, normalized: bool) -> Any:
    """Trace of the identity block, divided by block_dim when normalized."""
    value = linalg.matrix_trace(x.block(x.pair.identity))
    return value / linalg.element(x.block_dim) if normalized else value


def random_series(
    pair: HeckePair, block_dim: int, support: Iterable[Hashable], rng: np.random.Generator, bound: int = 5
) -> OperatorSeries:
    """Series with small random Gaussian-integer blocks on the given support."""
    blocks = {}
    for g in support:
        re = rng.integers(-bound, bound + 1, size=(block_dim, block_dim))
        im = rng.integers(-bound, bound + 1, size=(block_dim, block_dim))
        blocks[g] = linalg.from_rows(
            [[QQ_I(int(re[i, j]), int(im[i, j])) for j in range(block_dim)] for i in range(block_dim)]
        )
    return OperatorSeries(pair, block_dim, blocks)


def cond_expect_product(x: OperatorSeries, y: OperatorSeries) -> OperatorSeries:
    """E(x*y) without forming the blocks of x*y that fall outside Gamma."""
    _check(x, y)
    pair = x.pair
    terms = []
    for a, block_a in x.blocks.items():
        for b, block_b in y.blocks.items():
            g = pair.multiply(b, a)
            if pair.in_gamma(g):
                terms.append((g, (block_a * block_b).to_dense()))
    return OperatorSeries.from_terms(pair, x.block_dim, terms)
