# -*- coding: utf-8 -*-
"""
Compression of p(R(Gamma) (x) B(L))p onto R(Gamma).

    Phi(pmp) = E_N(p)^{-1/2} E_N(pmp) E_N(p)^{-1/2}

with E_N the trace-preserving expectation onto R(Gamma) (x) 1: blocks are replaced by their traces.
Group-algebra elements are realized as |Gamma| x |Gamma| matrices M(x)[h', h] = x(h^-1 h'), which turns the
series product into the matrix product; coefficients are read back from the column of the identity.
Only the inverse square root is floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Hashable, List, Optional, Sequence

import numpy as np

import config
from hecke import utils
from hecke.errors import ExpectationNotInvertibleError, PreconditionError
from operators import linalg
from operators.finite_model import FiniteHeckePair
from operators.rep_engine import SubrepProjection, WanderingDecomposition, build_S_p
from operators.series import OperatorSeries, series_multiply

logger = utils.setup_logger()


def expectation_N(x: OperatorSeries) -> OperatorSeries:
    """E_N: every block replaced by its (unnormalized) trace, as a 1x1 block."""
    return OperatorSeries(
        x.pair, 1, {g: linalg.from_rows([[linalg.matrix_trace(b)]]) for g, b in x.blocks.items()}
    )


def _elements(pair: FiniteHeckePair, over: str) -> List[int]:
    if not isinstance(pair, FiniteHeckePair):
        raise PreconditionError("matrix realizations need a finite model")
    return list(pair.model.gamma) if over == "gamma" else list(range(pair.model.order))


def scalar_coefficients(x: OperatorSeries) -> Dict[Hashable, complex]:
    if x.block_dim != 1:
        raise PreconditionError(f"expected scalar coefficients, got block dimension {x.block_dim}")
    return {g: linalg.to_complex_scalar(b.to_list()[0][0]) for g, b in x.blocks.items()}


def regular_matrix(coeffs: Dict[Hashable, complex], pair: FiniteHeckePair, over: str = "gamma") -> np.ndarray:
    """M(x)[h', h] = x(h^-1 h'); M(x) M(y) = M(xy) for rho(a) rho(b) = rho(ba)."""
    elements = _elements(pair, over)
    index = {g: i for i, g in enumerate(elements)}
    model = pair.model
    out = np.zeros((len(elements), len(elements)), dtype=complex)
    for h in elements:
        h_inv = model.inv[h]
        for h2 in elements:
            out[index[h2], index[h]] = coeffs.get(model.mul[h_inv][h2], 0.0)
    return out


def coefficients_of(matrix: np.ndarray, pair: FiniteHeckePair, over: str = "gamma") -> Dict[int, complex]:
    elements = _elements(pair, over)
    e = elements.index(pair.identity)
    return {g: complex(matrix[i, e]) for i, g in enumerate(elements)}


def scalar_series(coeffs: Dict[Hashable, complex], pair: FiniteHeckePair) -> OperatorSeries:
    """Scalar series sum_g c_g rho(g), coefficients rationalized."""
    return OperatorSeries(
        pair, 1, {g: linalg.from_rows([[linalg.from_complex_scalar(c)]]) for g, c in coeffs.items()}
    )


def inverse_square_root(m: np.ndarray, tol: Optional[float] = None) -> np.ndarray:
    tol = config.settings.INVERTIBILITY_TOL if tol is None else tol
    hermitian = (m + m.conj().T) / 2
    w, v = np.linalg.eigh(hermitian)
    if w.min() <= tol:
        raise ExpectationNotInvertibleError(float(w.min()))
    return (v * (1.0 / np.sqrt(w))) @ v.conj().T


@dataclass
class Compression:
    """Phi for a fixed p: caches E_N(p)^{-1/2} in the matrix realization."""

    p_series: OperatorSeries
    zeta_inv_sqrt: np.ndarray
    over: str = "gamma"

    @classmethod
    def build(cls, p_series: OperatorSeries, over: str = "gamma", tol: Optional[float] = None) -> "Compression":
        zeta = regular_matrix(scalar_coefficients(expectation_N(p_series)), p_series.pair, over)
        return cls(p_series, inverse_square_root(zeta, tol), over)

    def compress(self, m: OperatorSeries) -> OperatorSeries:
        return series_multiply(series_multiply(self.p_series, m), self.p_series)

    def matrix(self, pmp: OperatorSeries) -> np.ndarray:
        """Phi(pmp) in the matrix realization; pmp must already be compressed."""
        middle = regular_matrix(scalar_coefficients(expectation_N(pmp)), pmp.pair, self.over)
        return self.zeta_inv_sqrt @ middle @ self.zeta_inv_sqrt

    def __call__(self, pmp: OperatorSeries) -> OperatorSeries:
        return scalar_series(coefficients_of(self.matrix(pmp), pmp.pair, self.over), pmp.pair)


def phi_compression(
    p_series: OperatorSeries, m: OperatorSeries, tol: Optional[float] = None
) -> OperatorSeries:
    """Phi(pmp) as a scalar series over Gamma."""
    phi = Compression.build(p_series, tol=tol)
    return phi(phi.compress(m))


def multiplicativity_defect(phi: Compression, a: OperatorSeries, b: OperatorSeries) -> float:
    """max |Phi(pap) Phi(pbp) - Phi(pap pbp)|"""
    pap, pbp = phi.compress(a), phi.compress(b)
    left = phi.matrix(pap) @ phi.matrix(pbp)
    right = phi.matrix(series_multiply(pap, pbp))
    return float(np.max(np.abs(left - right)))


def is_multiplicative(phi: Compression, a: OperatorSeries, b: OperatorSeries, tol: Optional[float] = None) -> bool:
    tol = config.settings.MULTIPLICATIVITY_TOL if tol is None else tol
    defect = multiplicativity_defect(phi, a, b)
    if defect > tol:
        logger.debug(f"compression not multiplicative: defect {defect:.3e}")
    return defect <= tol


def convex_average(
    zeta: OperatorSeries, unitaries: Sequence[int], weights: Sequence[float]
) -> Dict[int, complex]:
    """sum_i w_i rho(g_i) zeta rho(g_i)^-1 for group elements g_i and positive weights summing to 1."""
    if len(unitaries) != len(weights) or not unitaries:
        raise PreconditionError("need one positive weight per unitary")
    if any(w <= 0 for w in weights) or abs(sum(weights) - 1.0) > 1e-12:
        raise PreconditionError("weights must be positive and sum to 1")
    pair = zeta.pair
    out: Dict[int, complex] = {}
    for g, w in zip(unitaries, weights):
        g_inv = pair.inverse(g)
        for h, value in scalar_coefficients(zeta).items():
            # rho(g) rho(h) rho(g^-1) = rho(g^-1 h g)
            key = pair.multiply(pair.multiply(g_inv, h), g)
            out[key] = out.get(key, 0.0) + w * value
    return out


def direct_expectation(a: Sequence[int], sp: SubrepProjection, wd: WanderingDecomposition) -> Dict[int, complex]:
    """sum_{theta in A} rho(theta^-1) Tr(P_L pi(theta) p), traces taken on the whole of l2(X)."""
    p_l = wd.projection_L()
    out: Dict[int, complex] = {}
    for theta in set(a):
        value = linalg.matrix_trace((p_l * wd.pi(theta) * sp.matrix).to_dense())
        if value != linalg.ZERO:
            out[wd.model.inv[theta]] = linalg.to_complex_scalar(value)
    return out


def prop_ep_consistency(
    a: Sequence[int], sp: SubrepProjection, wd: WanderingDecomposition, phi: Compression, tol: Optional[float] = None
) -> bool:
    """
    Phi(S_p(A)) equals zeta^{-1/2} (sum_{theta in A} rho(theta^-1) Tr(P_L pi(theta) p)) zeta^{-1/2}
    with zeta = E_N(p). Both sides are realized over all of G, since A need not lie in Gamma.
    """
    tol = config.settings.MULTIPLICATIVITY_TOL if tol is None else tol
    pair = wd.pair
    on_group = phi if phi.over == "group" else Compression.build(phi.p_series, over="group")
    image = scalar_coefficients(on_group(build_S_p(a, sp, wd)))

    zeta = regular_matrix(scalar_coefficients(expectation_N(phi.p_series)), pair, "group")
    root = inverse_square_root(zeta)
    closed = coefficients_of(root @ regular_matrix(direct_expectation(a, sp, wd), pair, "group") @ root, pair, "group")
    defect = max(abs(image.get(g, 0.0) - value) for g, value in closed.items())
    if defect > tol:
        logger.debug(f"Phi(S_p(A)) differs from the trace formula by {defect:.3e}")
    return defect <= tol
