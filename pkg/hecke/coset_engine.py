#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Coset engine: decompositions of double cosets by BFS closure over canonical labels,
Hecke-algebra structure constants, unimodularity and the Hecke action on finite windows.
"""

from __future__ import annotations

import threading
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Any, Dict, Hashable, List, Optional, Sequence, Set, Tuple

import pandas as pd

import config
from hecke import exact_core, utils
from hecke.errors import CapExceededError, ConsistencyError, PreconditionError
from hecke.hecke_pair import MODULAR_PAIR, HeckePair

logger = utils.setup_logger()

LEFT = "left"
RIGHT = "right"


class DoubleCoset:
    """Gamma*sigma*Gamma with lazily computed, lock-protected coset decompositions."""

    def __init__(self, base: Any, pair: HeckePair = MODULAR_PAIR, cap: Optional[int] = None):
        self.pair = pair
        self.base = base
        self.key: Hashable = pair.double_coset_key(base)
        self.cap = cap or config.settings.COSET_CAP
        self._lock = threading.Lock()
        self._reps: Dict[str, List[Any]] = {}

    @classmethod
    def from_index(cls, n: int, sign: int = 1, cap: Optional[int] = None) -> "DoubleCoset":
        """Gamma*diag(1, n)*Gamma, or its negative-determinant partner when sign = -1."""
        if n < 1:
            raise PreconditionError(f"divisor index must be positive, got {n}")
        return cls(exact_core.canonicalize((1, 0, 0, sign * n)), MODULAR_PAIR, cap)

    @property
    def index(self) -> Any:
        """Divisor index for the modular pair; the raw key otherwise."""
        return self.key[0] if isinstance(self.key, tuple) else self.key

    @property
    def left_reps(self) -> List[Any]:
        return decompose(self, LEFT)

    @property
    def right_reps(self) -> List[Any]:
        return decompose(self, RIGHT)

    def contains(self, x: Any) -> bool:
        return self.pair.double_coset_key(x) == self.key

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DoubleCoset) and other.pair is self.pair and other.key == self.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"DoubleCoset(key={self.key}, base={self.base})"


def decompose(dc: DoubleCoset, side: str = LEFT) -> List[Any]:
    """
    Complete list of coset labels covering dc.

    side="left" gives the labels of the cosets Gamma*x (Gamma multiplies on the left),
    side="right" the labels of x*Gamma. Computed once per side and cached on dc.
    """
    if side not in (LEFT, RIGHT):
        raise PreconditionError(f"side must be 'left' or 'right', got {side!r}")
    with dc._lock:
        cached = dc._reps.get(side)
        if cached is None:
            cached = _closure(dc, side)
            dc._reps[side] = cached
    return list(cached)


def _closure(dc: DoubleCoset, side: str) -> List[Any]:
    pair = dc.pair
    if side == LEFT:
        label = pair.right_label
        step = lambda r, g: pair.multiply(r, g)
    else:
        label = pair.left_label
        step = lambda r, g: pair.multiply(g, r)

    start = label(dc.base)
    seen: Set[Any] = {start}
    order: List[Any] = [start]
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for g in pair.gamma_generators:
            nxt = label(step(current, g))
            if nxt in seen:
                continue
            if pair.double_coset_key(nxt) != dc.key:
                raise ConsistencyError(f"label {nxt} left the double coset {dc.key}")
            seen.add(nxt)
            order.append(nxt)
            queue.append(nxt)
            if len(seen) > dc.cap:
                raise CapExceededError("coset closure", dc.cap, [len(seen)])
    logger.debug(f"decompose {dc.key} ({side}): {len(order)} cosets")
    return sorted(order, key=_sort_key)


def _sort_key(x: Any):
    return x.entries() if isinstance(x, exact_core.ProjectiveMatrix) else x


def unimodularity_check(sigma: Any, pair: HeckePair = MODULAR_PAIR) -> bool:
    dc = DoubleCoset(sigma, pair)
    return len(decompose(dc, LEFT)) == len(decompose(dc, RIGHT))


@dataclass
class HeckeTerm:
    coset: DoubleCoset
    mult: int


def _class_representative(pair: HeckePair, items: Sequence[Any]) -> Any:
    return min(items, key=_sort_key)


def hecke_product(
    dc1: DoubleCoset, dc2: DoubleCoset, classes: Optional[Dict[Hashable, DoubleCoset]] = None
) -> List[HeckeTerm]:
    """
    Structure constants of [dc1]*[dc2] in the Hecke algebra, as (double coset, multiplicity).

    `classes` is an optional key -> DoubleCoset cache so repeated products reuse decompositions.
    """
    if dc1.pair is not dc2.pair:
        raise PreconditionError("double cosets belong to different Hecke pairs")
    pair = dc1.pair
    counts: Counter = Counter()
    witnesses: Dict[Hashable, List[Any]] = {}
    for s in decompose(dc1, LEFT):
        for t in decompose(dc2, LEFT):
            st = pair.multiply(s, t)
            key = pair.double_coset_key(st)
            counts[key] += 1
            witnesses.setdefault(key, []).append(st)

    terms: List[HeckeTerm] = []
    for key in counts:
        target = classes.get(key) if classes is not None else None
        if target is None:
            target = DoubleCoset(_class_representative(pair, witnesses[key]), pair, dc1.cap)
            if classes is not None:
                classes[key] = target
        size = len(decompose(target, LEFT))
        mult, rest = divmod(counts[key], size)
        if rest:
            raise ConsistencyError(
                f"non-integral multiplicity {counts[key]}/{size} for class {key}; coset labels are inconsistent"
            )
        terms.append(HeckeTerm(target, mult))
    terms.sort(key=lambda term: term.coset.key)
    return terms


def hecke_product_support(dc1: DoubleCoset, dc2: DoubleCoset) -> Set[Hashable]:
    """The set product (Gamma a Gamma)(Gamma b Gamma) without multiplicities, as double-coset keys."""
    pair = dc1.pair
    return {
        pair.double_coset_key(pair.multiply(s, t))
        for s in decompose(dc1, LEFT)
        for t in decompose(dc2, LEFT)
    }


def product_as_dict(terms: Sequence[HeckeTerm]) -> Dict[Hashable, int]:
    return {term.coset.key: term.mult for term in terms}


@dataclass
class CosetWindow:
    """Ordered, duplicate-free list of right-coset labels Gamma*x: a finite piece of l2(Gamma\\G)."""

    labels: List[Any]
    pair: HeckePair = field(default=MODULAR_PAIR, repr=False)

    def __post_init__(self):
        if not self.labels:
            raise PreconditionError("coset window must be nonempty")
        self.labels = [self.pair.right_label(x) for x in self.labels]
        if len(set(self.labels)) != len(self.labels):
            raise PreconditionError("coset window labels must be distinct")
        self._position = {label: i for i, label in enumerate(self.labels)}

    def __len__(self) -> int:
        return len(self.labels)

    def position(self, label: Any) -> Optional[int]:
        return self._position.get(label)

    @classmethod
    def closure(cls, moves: DoubleCoset, depth: int, start: Any = None) -> "CosetWindow":
        """Labels reachable from Gamma*start by at most `depth` applications of the Hecke moves."""
        pair = moves.pair
        start = pair.identity if start is None else start
        reps = decompose(moves, LEFT)
        labels = [pair.right_label(start)]
        seen = set(labels)
        frontier = list(labels)
        for _ in range(depth):
            nxt = []
            for w in frontier:
                for s in reps:
                    image = pair.right_label(pair.multiply(s, w))
                    if image not in seen:
                        seen.add(image)
                        labels.append(image)
                        nxt.append(image)
            frontier = nxt
        return cls(labels, pair)


@dataclass
class HeckeMatrix:
    labels: List[Any]
    matrix: List[List[int]]
    overflow: List[int]

    def to_frame(self) -> pd.DataFrame:
        names = [str(label) for label in self.labels]
        return pd.DataFrame(self.matrix, index=names, columns=names)


def hecke_matrix(dc: DoubleCoset, window: CosetWindow) -> HeckeMatrix:
    """
    Matrix of [dc] acting on the window.

    M[i][j] counts the cosets Gamma*s_k of dc with Gamma*s_k*w_j = Gamma*w_i; images leaving the
    window are tallied per column in `overflow`.
    """
    pair = dc.pair
    n = len(window)
    matrix = [[0] * n for _ in range(n)]
    overflow = [0] * n
    reps = decompose(dc, LEFT)
    for j, w in enumerate(window.labels):
        for s in reps:
            i = window.position(pair.right_label(pair.multiply(s, w)))
            if i is None:
                overflow[j] += 1
            else:
                matrix[i][j] += 1
    return HeckeMatrix(list(window.labels), matrix, overflow)
