#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Finite Hecke pairs (G, Gamma) given by a multiplication table.

Elements are integer ids. Built-in models come from sympy permutation groups with elements sorted
by array form, so the identity always has id 0.
"""

from __future__ import annotations

import json
from functools import cached_property
from itertools import product
from pathlib import Path
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Set, Union

from pydantic import BaseModel
from sympy.combinatorics import Permutation, PermutationGroup

from hecke import utils
from hecke.errors import PreconditionError

logger = utils.setup_logger()


class FiniteModelFile(BaseModel):
    """Wire format {"order", "mul", "gamma", "reps"} plus optional name and element labels."""

    order: int
    mul: List[List[int]]
    gamma: List[int]
    reps: Optional[List[int]] = None
    name: Optional[str] = None
    labels: Optional[List[str]] = None


class FiniteModel:
    """A finite group with a subgroup Gamma and a transversal of the right cosets Gamma*g."""

    def __init__(
        self,
        mul: Sequence[Sequence[int]],
        gamma: Iterable[int],
        reps: Optional[Sequence[int]] = None,
        name: str = "model",
        labels: Optional[Sequence[str]] = None,
    ):
        self.name = name
        self.mul: List[List[int]] = [list(row) for row in mul]
        self.order = len(self.mul)
        self.labels = list(labels) if labels else [str(g) for g in range(self.order)]
        self._validate_table()
        self.identity = self._find_identity()
        self.inv = [next(h for h in range(self.order) if self.mul[g][h] == self.identity) for g in range(self.order)]
        self.gamma: List[int] = sorted(set(gamma))
        self.gamma_set: FrozenSet[int] = frozenset(self.gamma)
        self._validate_gamma()
        self.coset_index: List[int] = [0] * self.order
        default_reps = sorted({min(self.right_coset(g)) for g in range(self.order)})
        self.reps: List[int] = list(reps) if reps is not None else default_reps
        self._validate_reps()

    @property
    def wandering_dim(self) -> int:
        return len(self.reps)

    def _validate_table(self) -> None:
        n = self.order
        if n == 0 or any(len(row) != n for row in self.mul):
            raise PreconditionError("multiplication table must be square and nonempty")
        for row in self.mul:
            if sorted(row) != list(range(n)):
                raise PreconditionError("multiplication table rows must be permutations of the ids")
        for a, b, c in product(range(n), repeat=3):
            if self.mul[self.mul[a][b]][c] != self.mul[a][self.mul[b][c]]:
                raise PreconditionError(f"multiplication table is not associative at ({a}, {b}, {c})")

    def _find_identity(self) -> int:
        for e in range(self.order):
            if all(self.mul[e][g] == g == self.mul[g][e] for g in range(self.order)):
                return e
        raise PreconditionError("multiplication table has no identity")

    def _validate_gamma(self) -> None:
        if self.identity not in self.gamma_set:
            raise PreconditionError("Gamma must contain the identity")
        for a in self.gamma:
            if self.inv[a] not in self.gamma_set:
                raise PreconditionError(f"Gamma is not closed under inverses at {self.labels[a]}")
            for b in self.gamma:
                if self.mul[a][b] not in self.gamma_set:
                    raise PreconditionError(f"Gamma is not closed under products at {self.labels[a]}, {self.labels[b]}")

    def _validate_reps(self) -> None:
        cosets: Dict[FrozenSet[int], int] = {}
        for i, r in enumerate(self.reps):
            coset = self.right_coset(r)
            if coset in cosets:
                raise PreconditionError(
                    f"representatives {self.labels[self.reps[cosets[coset]]]} and {self.labels[r]} share a coset"
                )
            cosets[coset] = i
        if len(cosets) * len(self.gamma) != self.order:
            raise PreconditionError("representatives do not cover every right coset")
        for coset, i in cosets.items():
            for g in coset:
                self.coset_index[g] = i

    def multiply(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def product(self, *elements: int) -> int:
        out = self.identity
        for g in elements:
            out = self.mul[out][g]
        return out

    def right_coset(self, g: int) -> FrozenSet[int]:
        """Gamma*g"""
        return frozenset(self.mul[c][g] for c in self.gamma)

    def left_coset(self, g: int) -> FrozenSet[int]:
        """g*Gamma"""
        return frozenset(self.mul[g][c] for c in self.gamma)

    def double_coset(self, g: int) -> FrozenSet[int]:
        return frozenset(self.mul[self.mul[a][g]][b] for a in self.gamma for b in self.gamma)

    def set_product(self, *parts: Iterable[int]) -> FrozenSet[int]:
        """A*B*... as a set."""
        out: Set[int] = {self.identity}
        for part in parts:
            part = list(part)
            out = {self.mul[x][y] for x in out for y in part}
        return frozenset(out)

    def inverse_set(self, a: Iterable[int]) -> FrozenSet[int]:
        return frozenset(self.inv[g] for g in a)

    @cached_property
    def double_coset_reps(self) -> List[int]:
        return sorted({min(self.double_coset(g)) for g in range(self.order)})

    def left_coset_reps(self, a: Iterable[int]) -> List[int]:
        """Minimal representatives v_i of a = U v_i*Gamma (a must be right-Gamma-invariant)."""
        return sorted({min(self.left_coset(g)) for g in a})

    def right_coset_reps(self, a: Iterable[int]) -> List[int]:
        return sorted({min(self.right_coset(g)) for g in a})

    def to_file(self) -> FiniteModelFile:
        return FiniteModelFile(
            order=self.order, mul=self.mul, gamma=self.gamma, reps=self.reps, name=self.name, labels=self.labels
        )

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.to_file().model_dump_json(indent=2))

    @classmethod
    def from_file(cls, data: FiniteModelFile) -> "FiniteModel":
        if data.order != len(data.mul):
            raise PreconditionError(f"order {data.order} does not match the table size {len(data.mul)}")
        return cls(data.mul, data.gamma, data.reps, data.name or "model", data.labels)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "FiniteModel":
        return cls.from_file(FiniteModelFile.model_validate(json.loads(Path(path).read_text())))

    @classmethod
    def from_permutations(
        cls, name: str, generators: Sequence[Permutation], gamma_generators: Sequence[Permutation]
    ) -> "FiniteModel":
        """Model of <generators> with Gamma = <gamma_generators>; product g*h means h first, then g."""
        group = PermutationGroup(list(generators))
        elements = sorted(group.generate(), key=lambda perm: perm.array_form)
        index = {tuple(perm.array_form): i for i, perm in enumerate(elements)}
        # sympy composes left to right: (h*g)(x) = g(h(x))
        mul = [[index[tuple((h * g).array_form)] for h in elements] for g in elements]
        size = group.degree
        gamma_group = PermutationGroup([Permutation(perm.array_form, size=size) for perm in gamma_generators])
        gamma = [index[tuple(Permutation(perm.array_form, size=size).array_form)] for perm in gamma_group.generate()]
        labels = [_cycle_label(perm) for perm in elements]
        logger.debug(f"built model {name}: |G|={len(elements)}, |Gamma|={len(gamma)}")
        return cls(mul, gamma, name=name, labels=labels)

    def element(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError as exc:
            raise PreconditionError(f"unknown element {label!r} in model {self.name}") from exc

    def generate(self, generators: Iterable[int]) -> FrozenSet[int]:
        """Subgroup generated by the given ids."""
        out: Set[int] = {self.identity}
        frontier = [self.identity]
        generators = list(generators)
        while frontier:
            nxt = []
            for g in frontier:
                for s in generators:
                    h = self.mul[g][s]
                    if h not in out:
                        out.add(h)
                        nxt.append(h)
            frontier = nxt
        return frozenset(out)

    def __repr__(self) -> str:
        return f"FiniteModel({self.name}, |G|={self.order}, |Gamma|={len(self.gamma)})"


def _cycle_label(perm: Permutation) -> str:
    cycles = perm.cyclic_form
    if not cycles:
        return "e"
    return "".join("(" + "".join(str(i + 1) for i in cycle) + ")" for cycle in cycles)


class FiniteHeckePair:
    """A FiniteModel seen through the HeckePair protocol; labels are minimal ids of the cosets."""

    def __init__(self, model: FiniteModel):
        self.model = model
        self.name = model.name
        m = model
        self._right = [min(m.right_coset(g)) for g in range(m.order)]
        self._left = [min(m.left_coset(g)) for g in range(m.order)]
        self._double = [min(m.double_coset(g)) for g in range(m.order)]

    @property
    def identity(self) -> int:
        return self.model.identity

    @property
    def gamma_generators(self) -> Sequence[int]:
        return self.model.gamma

    def multiply(self, x: int, y: int) -> int:
        return self.model.mul[x][y]

    def inverse(self, x: int) -> int:
        return self.model.inv[x]

    def in_gamma(self, x: int) -> bool:
        return x in self.model.gamma_set

    def right_label(self, x: int) -> int:
        return self._right[x]

    def left_label(self, x: int) -> int:
        return self._left[x]

    def double_coset_key(self, x: int) -> Hashable:
        return self._double[x]

    def to_json(self, x: int) -> str:
        return self.model.labels[x]


class KoopmanSpace:
    """A finite G-set X: action[g][x] is g.x."""

    def __init__(self, model: FiniteModel, action: Sequence[Sequence[int]], name: str = "X"):
        self.model = model
        self.name = name
        self.action = [list(row) for row in action]
        if len(self.action) != model.order:
            raise PreconditionError("action table needs one row per group element")
        self.size = len(self.action[0])
        for g, row in enumerate(self.action):
            if sorted(row) != list(range(self.size)):
                raise PreconditionError(f"element {model.labels[g]} does not act by a permutation")
        for g, h in product(range(model.order), repeat=2):
            gh = model.mul[g][h]
            if any(self.action[gh][x] != self.action[g][self.action[h][x]] for x in range(self.size)):
                raise PreconditionError(f"action is not a left action at ({model.labels[g]}, {model.labels[h]})")
        if any(self.action[model.identity][x] != x for x in range(self.size)):
            raise PreconditionError("identity must act trivially")

    @classmethod
    def regular(cls, model: FiniteModel) -> "KoopmanSpace":
        """X = G with left translation."""
        return cls(model, [list(row) for row in model.mul], name="G")

    @classmethod
    def quotient(cls, model: FiniteModel, subgroup: Iterable[int], name: str = "G/K") -> "KoopmanSpace":
        """X = G/K (left cosets gK) with g.(hK) = ghK."""
        k = sorted(set(subgroup))
        points: List[FrozenSet[int]] = []
        seen: Dict[FrozenSet[int], int] = {}
        for g in range(model.order):
            coset = frozenset(model.mul[g][c] for c in k)
            if coset not in seen:
                seen[coset] = len(points)
                points.append(coset)
        action = [
            [seen[frozenset(model.mul[g][h] for h in coset)] for coset in points]
            for g in range(model.order)
        ]
        return cls(model, action, name=name)

    def product_space(self) -> "KoopmanSpace":
        """X x X with the diagonal action; the point (x, y) has id x*|X| + y."""
        n = self.size
        action = [
            [row[x] * n + row[y] for x in range(n) for y in range(n)]
            for row in self.action
        ]
        return KoopmanSpace(self.model, action, name=f"{self.name}x{self.name}")

    def gamma_orbit(self, x: int) -> FrozenSet[int]:
        return frozenset(self.action[c][x] for c in self.model.gamma)

    def default_domain(self) -> List[int]:
        """Smallest point of each Gamma-orbit."""
        return sorted({min(self.gamma_orbit(x)) for x in range(self.size)})


def _perm(cycles: Sequence[Sequence[int]], size: int) -> Permutation:
    return Permutation([[i - 1 for i in cycle] for cycle in cycles], size=size)


def s3_a3() -> FiniteModel:
    return FiniteModel.from_permutations(
        "S3/A3", [_perm([[1, 2]], 3), _perm([[1, 2, 3]], 3)], [_perm([[1, 2, 3]], 3)]
    )


def s3_c2() -> FiniteModel:
    return FiniteModel.from_permutations(
        "S3/<(12)>", [_perm([[1, 2]], 3), _perm([[1, 2, 3]], 3)], [_perm([[1, 2]], 3)]
    )


def s4_s3() -> FiniteModel:
    return FiniteModel.from_permutations(
        "S4/S3", [_perm([[1, 2]], 4), _perm([[1, 2, 3, 4]], 4)], [_perm([[1, 2]], 4), _perm([[1, 2, 3]], 4)]
    )


def d4_c2() -> FiniteModel:
    """Symmetries of the square with Gamma generated by one reflection."""
    rotation = _perm([[1, 2, 3, 4]], 4)
    reflection = _perm([[2, 4]], 4)
    return FiniteModel.from_permutations("D4/<s>", [rotation, reflection], [reflection])


BUILTIN_MODELS = {
    "s3_a3": s3_a3,
    "s3_c2": s3_c2,
    "s4_s3": s4_s3,
    "d4_c2": d4_c2,
}


# Subgroups K with G = K * Gamma and K n Gamma = {e}: Gamma acts simply transitively on G/K
WANDERING_COMPLEMENTS = {
    "s3_a3": ["(12)"],
    "s3_c2": ["(123)"],
    "s4_s3": ["(1234)"],
    "d4_c2": ["(1234)"],
}


def wandering_complement(key: str, model: FiniteModel) -> Optional[FrozenSet[int]]:
    labels = WANDERING_COMPLEMENTS.get(key)
    if labels is None:
        return None
    return model.generate(model.element(label) for label in labels)


def builtin_model(key: str) -> FiniteModel:
    try:
        return BUILTIN_MODELS[key]()
    except KeyError as exc:
        raise PreconditionError(f"unknown model {key!r}; choose from {sorted(BUILTIN_MODELS)}") from exc


def resolve_model(name: str) -> FiniteModel:
    """A built-in key or a path to a JSON model file."""
    if name in BUILTIN_MODELS:
        return builtin_model(name)
    path = Path(name)
    if not path.exists():
        raise PreconditionError(f"no built-in model or file named {name!r}")
    return FiniteModel.load(path)
