# -*- coding: utf-8 -*-
"""
phi0(g) = mu(gF n F) / mu(F) and the coset pairing psi0(s1, s2) = sum_gamma phi0(s1 gamma s2).
"""

from __future__ import annotations

import math
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel
from scipy import integrate, linalg as sla

import config
from geometry import hyperbolic
from geometry.hyperbolic import FUNDAMENTAL_DOMAIN, HyperbolicPolygon, area, intersect, tile_cover
from hecke import exact_core, utils
from hecke.coset_engine import LEFT, RIGHT, DoubleCoset, decompose
from hecke.exact_core import ProjectiveMatrix

logger = utils.setup_logger()


class GeometryValue(BaseModel):
    value: float
    raw: float
    tolerance: float
    tiles: int


def phi0_raw(g: ProjectiveMatrix) -> float:
    """mu(gF n F)"""
    return area(intersect(hyperbolic.tile(g), FUNDAMENTAL_DOMAIN))


def phi0(g: ProjectiveMatrix) -> float:
    return phi0_raw(g) / hyperbolic.area_F()


def phi0_value(g: ProjectiveMatrix) -> GeometryValue:
    raw = phi0_raw(g)
    return GeometryValue(
        value=raw / hyperbolic.area_F(), raw=raw, tolerance=config.settings.AREA_TOL, tiles=1 if raw > 0 else 0
    )


def psi_candidates(s1: ProjectiveMatrix, s2: ProjectiveMatrix) -> List[ProjectiveMatrix]:
    """
    gamma with s1 gamma s2 F meeting F: some tile delta F of s2 F must land on a tile eps F of s1^-1 F,
    so gamma = eps delta^-1.
    """
    left = tile_cover(hyperbolic.tile(exact_core.inverse(s1))).tiles
    right = tile_cover(hyperbolic.tile(s2)).tiles
    return sorted({exact_core.multiply(eps, exact_core.inverse(delta)) for eps in left for delta in right})


def psi0_terms(s1: ProjectiveMatrix, s2: ProjectiveMatrix) -> List[Tuple[ProjectiveMatrix, float]]:
    terms = []
    for gamma in psi_candidates(s1, s2):
        value = phi0(exact_core.product([s1, gamma, s2]))
        if value > 0:
            terms.append((gamma, value))
    return terms


def psi0(s1: ProjectiveMatrix, s2: ProjectiveMatrix) -> float:
    return float(sum(value for _, value in psi0_terms(s1, s2)))


def psi0_value(s1: ProjectiveMatrix, s2: ProjectiveMatrix) -> GeometryValue:
    terms = psi0_terms(s1, s2)
    total = float(sum(value for _, value in terms))
    return GeometryValue(
        value=total, raw=total * hyperbolic.area_F(), tolerance=config.settings.PARTITION_TOL, tiles=len(terms)
    )


def double_coset_mass(sigma: ProjectiveMatrix) -> Tuple[float, float]:
    """
    sum of phi0 over Gamma sigma Gamma, once through its left cosets (psi0(s, e)) and once through its
    right cosets (psi0(e, s)).
    """
    dc = DoubleCoset(sigma)
    by_left = sum(psi0(s, exact_core.IDENTITY) for s in decompose(dc, RIGHT))
    by_right = sum(psi0(exact_core.IDENTITY, s) for s in decompose(dc, LEFT))
    return float(by_left), float(by_right)


def partition_sum(g: ProjectiveMatrix) -> Tuple[float, float]:
    """(sum over tiles of area(gamma F n gF), area(F))"""
    return tile_cover(hyperbolic.tile(g)).total, hyperbolic.area_F()


def gram_psd_check(
    f: Callable[[ProjectiveMatrix], float], elements: Sequence[ProjectiveMatrix], tol: Optional[float] = None
) -> Tuple[float, bool]:
    """Minimum eigenvalue of [f(g_i^-1 g_j)] and whether it clears -tol."""
    tol = config.settings.PSD_TOL if tol is None else tol
    gram = np.array(
        [[f(exact_core.multiply(exact_core.inverse(gi), gj)) for gj in elements] for gi in elements], dtype=float
    )
    gram = (gram + gram.T) / 2
    smallest = float(sla.eigvalsh(gram)[0])
    return smallest, smallest >= -tol


def psi_gram_psd_check(elements: Sequence[ProjectiveMatrix], tol: Optional[float] = None) -> Tuple[float, bool]:
    """Minimum eigenvalue of [psi0(g_i^-1, g_j)]."""
    tol = config.settings.PSD_TOL if tol is None else tol
    gram = np.array([[psi0(exact_core.inverse(gi), gj) for gj in elements] for gi in elements], dtype=float)
    gram = (gram + gram.T) / 2
    smallest = float(sla.eigvalsh(gram)[0])
    return smallest, smallest >= -tol


def area_F_quadrature() -> float:
    """Double integral of y^-2 over F, integrated in y analytically."""
    value, _ = integrate.quad(lambda x: 1.0 / math.sqrt(1.0 - x * x), -0.5, 0.5, epsabs=1e-13, epsrel=1e-13)
    return value


def sample_F(n: int, rng: np.random.Generator) -> np.ndarray:
    """n points of F distributed by the hyperbolic measure, by rejection on the x-marginal."""
    out: List[np.ndarray] = []
    have = 0
    while have < n:
        batch = max(2 * (n - have), 1024)
        x = rng.uniform(-0.5, 0.5, size=batch)
        floor = np.sqrt(1.0 - x * x)
        keep = rng.uniform(size=batch) < math.sqrt(3) / (2 * floor)
        x, floor = x[keep], floor[keep]
        y = floor / rng.uniform(size=len(x))
        out.append(x + 1j * y)
        have += len(x)
    return np.concatenate(out)[:n]


def phi0_monte_carlo(
    g: ProjectiveMatrix, samples: int, rng: np.random.Generator
) -> Tuple[float, float]:
    """(estimate, standard error) of phi0(g) as the fraction of F whose image under g stays in F."""
    z = sample_F(samples, rng)
    if g.det < 0:
        z = np.conj(z)
    a, b, c, d = (float(v) for v in g.entries())
    w = (a * z + b) / (c * z + d)
    tol = config.settings.MEMBERSHIP_TOL
    hits = (np.abs(w.real) <= 0.5 + tol) & (np.abs(w) >= 1 - tol)
    estimate = float(hits.mean())
    return estimate, math.sqrt(max(estimate * (1 - estimate), 1e-300) / samples)


def polygon_area_invariant(poly: HyperbolicPolygon, g: ProjectiveMatrix) -> float:
    """Relative change of area under g."""
    before = area(poly)
    return abs(area(poly.transform(g)) - before) / before
