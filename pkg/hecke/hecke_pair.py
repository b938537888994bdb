#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Hecke pairs (G, Gamma) as seen by the coset engine.

The engine never inspects elements directly; it only needs the group law, generators of Gamma,
canonical labels for the cosets Gamma*x and x*Gamma, and a key classifying Gamma*x*Gamma.
"""

from __future__ import annotations

from typing import Any, Hashable, Protocol, Sequence, runtime_checkable

from hecke import exact_core
from hecke.exact_core import ProjectiveMatrix


@runtime_checkable
class HeckePair(Protocol):
    name: str

    @property
    def identity(self) -> Any: ...

    @property
    def gamma_generators(self) -> Sequence[Any]: ...

    def multiply(self, x: Any, y: Any) -> Any: ...

    def inverse(self, x: Any) -> Any: ...

    def in_gamma(self, x: Any) -> bool: ...

    def right_label(self, x: Any) -> Any:
        """Canonical label of Gamma*x."""

    def left_label(self, x: Any) -> Any:
        """Canonical label of x*Gamma."""

    def double_coset_key(self, x: Any) -> Hashable: ...

    def to_json(self, x: Any) -> Any: ...


class ModularHeckePair:
    """PSL2(Z) inside PGL2(Q)."""

    name = "PSL2(Z) < PGL2(Q)"

    @property
    def identity(self) -> ProjectiveMatrix:
        return exact_core.IDENTITY

    @property
    def gamma_generators(self) -> Sequence[ProjectiveMatrix]:
        return exact_core.GAMMA_GENERATORS

    def multiply(self, x: ProjectiveMatrix, y: ProjectiveMatrix) -> ProjectiveMatrix:
        return exact_core.multiply(x, y)

    def inverse(self, x: ProjectiveMatrix) -> ProjectiveMatrix:
        return exact_core.inverse(x)

    def in_gamma(self, x: ProjectiveMatrix) -> bool:
        return exact_core.is_in_gamma(x)

    def right_label(self, x: ProjectiveMatrix) -> ProjectiveMatrix:
        return exact_core.hnf_rep_right(x)

    def left_label(self, x: ProjectiveMatrix) -> ProjectiveMatrix:
        return exact_core.hnf_rep_left(x)

    def double_coset_key(self, x: ProjectiveMatrix) -> exact_core.DoubleCosetKey:
        return exact_core.double_coset_key(x)

    def to_json(self, x: ProjectiveMatrix) -> dict:
        return x.to_json()


MODULAR_PAIR = ModularHeckePair()
