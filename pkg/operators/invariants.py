# -*- coding: utf-8 -*-
"""
Gamma-invariant vectors, the coset scalar product and wandering-vector functions.

Everything here assumes p commutes with the whole of pi(G); Gamma-invariant vectors carry the inner
product of their restrictions to the fundamental domain F.
"""

from __future__ import annotations

from typing import Any, Dict, Iterable, List, Optional, Sequence

from sympy.polys.matrices import DomainMatrix

from hecke import utils
from hecke.coset_engine import DoubleCoset, hecke_product
from hecke.errors import PreconditionError
from operators import linalg
from operators.finite_model import FiniteModel, KoopmanSpace
from operators.rep_engine import (
    SubrepProjection,
    WanderingDecomposition,
    build_S_p,
)
from operators.series import epsilon_tilde

logger = utils.setup_logger()


def _require_g_invariant(sp: SubrepProjection) -> None:
    if not sp.commutes_with_G:
        raise PreconditionError("p must commute with pi(G) for Gamma-invariant vectors")


def _apply(m: DomainMatrix, v: Sequence[Any]) -> List[Any]:
    rows = m.to_list()
    return [sum((r[j] * v[j] for j in range(len(v))), linalg.ZERO) for r in rows]


def invariant_lift_phi(l: Sequence[Any], sp: SubrepProjection, wd: WanderingDecomposition) -> List[Any]:
    """Phi(l) = sum_gamma pi(gamma) p l, for l in L given by its coordinates on F."""
    _require_g_invariant(sp)
    if len(l) != wd.dim:
        raise PreconditionError(f"vector in L has length {len(l)}, expected {wd.dim}")
    v = [linalg.ZERO] * wd.size
    for a, f in enumerate(wd.domain):
        v[f] = linalg.element(l[a])
    pv = _apply(sp.matrix, v)
    out = [linalg.ZERO] * wd.size
    for c in wd.model.gamma:
        perm = wd.space.action[c]
        for x, value in enumerate(pv):
            out[perm[x]] += value
    return out


def is_gamma_invariant(v: Sequence[Any], wd: WanderingDecomposition) -> bool:
    return all(v[wd.space.action[c][x]] == v[x] for c in wd.model.gamma for x in range(wd.size))


def gamma_inner_product(u: Sequence[Any], v: Sequence[Any], wd: WanderingDecomposition) -> Any:
    return sum((u[f] * linalg.conj(v[f]) for f in wd.domain), linalg.ZERO)


def gram_A(a: Iterable[int], sp: SubrepProjection, wd: WanderingDecomposition) -> DomainMatrix:
    """A(A) = epsilon_tilde(S_p(A)) = sum_{theta in A} P_L pi(theta) p P_L"""
    return epsilon_tilde(build_S_p(a, sp, wd))


def lift_matrix(sp: SubrepProjection, wd: WanderingDecomposition) -> DomainMatrix:
    """Columns Phi(e_f) for f in F, as vectors on X."""
    columns = [invariant_lift_phi(linalg.unit_vector(wd.dim, b), sp, wd) for b in range(wd.dim)]
    return linalg.from_rows([list(row) for row in zip(*columns)])


def phi_star_phi(sp: SubrepProjection, wd: WanderingDecomposition) -> DomainMatrix:
    lifts = lift_matrix(sp, wd).to_list()
    n = wd.dim
    return linalg.from_rows(
        [[gamma_inner_product([row[b] for row in lifts], [row[a] for row in lifts], wd) for b in range(n)]
         for a in range(n)]
    )


def hecke_on_invariants(a: Iterable[int], v: Sequence[Any], wd: WanderingDecomposition) -> List[Any]:
    """Classical double-coset operator: v -> sum_i pi(v_i) v over A = U v_i Gamma."""
    out = [linalg.ZERO] * wd.size
    for rep in wd.model.left_coset_reps(a):
        perm = wd.space.action[rep]
        for x, value in enumerate(v):
            out[perm[x]] += value
    return out


def intertwines(a: Iterable[int], sp: SubrepProjection, wd: WanderingDecomposition) -> bool:
    """T(A) Phi = Phi A(A) on every basis vector of L."""
    a = frozenset(a)
    image = gram_A(a, sp, wd).to_list()
    for b in range(wd.dim):
        left = hecke_on_invariants(a, invariant_lift_phi(linalg.unit_vector(wd.dim, b), sp, wd), wd)
        right = invariant_lift_phi([row[b] for row in image], sp, wd)
        if left != right:
            return False
    return True


def lift_trace(a: Iterable[int], sp: SubrepProjection, wd: WanderingDecomposition) -> Any:
    """Trace of the classical operator T(A) on the image of Phi."""
    a = frozenset(a)
    basis = linalg.column_basis(lift_matrix(sp, wd))
    if basis.shape[1] == 0:
        return linalg.ZERO
    columns = basis.to_list()
    r = basis.shape[1]
    images = [hecke_on_invariants(a, [row[k] for row in columns], wd) for k in range(r)]
    t_basis = linalg.from_rows([list(row) for row in zip(*images)])
    b_star = linalg.dagger(basis)
    coords = (b_star * basis).to_dense().inv() * b_star * t_basis
    return linalg.matrix_trace(coords.to_dense())


def lift_trace_identity(a: Iterable[int], sp: SubrepProjection, wd: WanderingDecomposition) -> bool:
    """Tr(T(A) on invariants) equals Tr A(A)."""
    a = frozenset(a)
    return lift_trace(a, sp, wd) == linalg.matrix_trace(gram_A(a, sp, wd))


# ---------------------------------------------------------------------------
# Coset scalar product
# ---------------------------------------------------------------------------

def cosets_scalar_product(
    s1: int, s2: int, s3: int, s4: int, sp: SubrepProjection, wd: WanderingDecomposition
) -> DomainMatrix:
    """sum over theta in s3*Gamma*s1 intersected with s4*Gamma*s2 of P_L pi(theta) p P_L"""
    _require_g_invariant(sp)
    model = wd.model
    support = model.set_product([s3], model.gamma, [s1]) & model.set_product([s4], model.gamma, [s2])
    rows = sp.rows
    return linalg.total((wd.block(theta, rows) for theta in support), wd.dim)


def right_coset_operator(s: int, sp: SubrepProjection, wd: WanderingDecomposition) -> DomainMatrix:
    """T0(Gamma*s)"""
    return gram_A(wd.model.right_coset(s), sp, wd)


def left_coset_operator(s: int, sp: SubrepProjection, wd: WanderingDecomposition) -> DomainMatrix:
    """T0(s*Gamma)"""
    return gram_A(wd.model.left_coset(s), sp, wd)


def scalar_product_property_one(s1: int, s2: int, sp: SubrepProjection, wd: WanderingDecomposition) -> bool:
    left = cosets_scalar_product(s1, s1, s2, s2, sp, wd)
    right = left_coset_operator(s2, sp, wd) * right_coset_operator(s1, sp, wd)
    return linalg.equal(left, right.to_dense())


def scalar_product_invariant(
    s: Sequence[int], gammas: Sequence[int], sp: SubrepProjection, wd: WanderingDecomposition
) -> bool:
    """Value unchanged under s1 -> g1 s1, s2 -> g2 s2, s3 -> s3 g3, s4 -> s4 g4 for g_i in Gamma."""
    s1, s2, s3, s4 = s
    g1, g2, g3, g4 = gammas
    if not all(g in wd.model.gamma_set for g in gammas):
        raise PreconditionError("shifts must lie in Gamma")
    mul = wd.model.mul
    moved = cosets_scalar_product(mul[g1][s1], mul[g2][s2], mul[s3][g3], mul[s4][g4], sp, wd)
    return linalg.equal(moved, cosets_scalar_product(s1, s2, s3, s4, sp, wd))


def scalar_product_gram(elements: Sequence[int], sp: SubrepProjection, wd: WanderingDecomposition) -> DomainMatrix:
    """Block matrix [T0(Gamma g_i)* T0(Gamma g_j)]_{ij}, built from the scalar product."""
    inv = wd.model.inv
    return linalg.block_matrix(
        [[cosets_scalar_product(gj, gj, inv[gi], inv[gi], sp, wd) for gj in elements] for gi in elements]
    )


def trace_gram(elements: Sequence[int], sp: SubrepProjection, wd: WanderingDecomposition) -> DomainMatrix:
    inv = wd.model.inv
    return linalg.from_rows(
        [[linalg.matrix_trace(cosets_scalar_product(gj, gj, inv[gi], inv[gi], sp, wd)) for gj in elements]
         for gi in elements]
    )


# ---------------------------------------------------------------------------
# Wandering-vector function t(theta) = <pi(theta) eta, eta>
# ---------------------------------------------------------------------------

def line_decomposition(model: FiniteModel, subgroup: Iterable[int]) -> WanderingDecomposition:
    """Koopman model on G/K; one-dimensional wandering space when Gamma acts simply transitively."""
    space = KoopmanSpace.quotient(model, subgroup)
    wd = WanderingDecomposition(space, space.default_domain())
    if wd.dim != 1:
        raise PreconditionError(f"Gamma has {wd.dim} orbits on G/K; a one-dimensional L needs exactly one")
    return wd


def wandering_function(wd: WanderingDecomposition, shift: Optional[int] = None) -> List[Any]:
    """
    t(theta) for every theta in G, with eta the indicator of the single point of F.

    With shift = gamma0 the vector is pi(gamma0) eta instead.
    """
    if wd.dim != 1:
        raise PreconditionError(f"wandering space has dimension {wd.dim}, expected 1")
    point = wd.domain[0]
    if shift is not None:
        if shift not in wd.model.gamma_set:
            raise PreconditionError("shift must lie in Gamma")
        point = wd.space.action[shift][point]
    return [linalg.ONE if wd.space.action[theta][point] == point else linalg.ZERO for theta in range(wd.model.order)]


def t_restricts_to_delta(t: Sequence[Any], wd: WanderingDecomposition) -> bool:
    e = wd.model.identity
    return all(t[c] == (linalg.ONE if c == e else linalg.ZERO) for c in wd.model.gamma)


def t_positive_definite(t: Sequence[Any], wd: WanderingDecomposition, elements: Optional[Sequence[int]] = None) -> bool:
    model = wd.model
    elements = list(range(model.order)) if elements is None else list(elements)
    gram = linalg.from_rows([[t[model.mul[model.inv[gi]][gj]] for gj in elements] for gi in elements])
    return linalg.is_psd_exact(gram)


def t_partition_of_unity(t: Sequence[Any], wd: WanderingDecomposition) -> bool:
    """sum_gamma |t(gamma g)|^2 = 1 for every g."""
    model = wd.model
    for g in range(model.order):
        total = sum((t[model.mul[c][g]] * linalg.conj(t[model.mul[c][g]]) for c in model.gamma), linalg.ZERO)
        if total != linalg.ONE:
            return False
    return True


def t_double_coset_values(t: Sequence[Any], wd: WanderingDecomposition) -> Dict[int, Any]:
    """Double-coset key -> sum of t over the double coset."""
    model = wd.model
    return {
        rep: sum((t[theta] for theta in model.double_coset(rep)), linalg.ZERO)
        for rep in model.double_coset_reps
    }


def t_multiplicative(t: Sequence[Any], wd: WanderingDecomposition) -> bool:
    """The double-coset sums of t form a character of the Hecke algebra."""
    values = t_double_coset_values(t, wd)
    cosets = {rep: DoubleCoset(rep, wd.pair) for rep in values}
    for r1, c1 in cosets.items():
        for r2, c2 in cosets.items():
            combined = sum(
                (linalg.element(term.mult) * values[term.coset.key] for term in hecke_product(c1, c2)), linalg.ZERO
            )
            if combined != values[r1] * values[r2]:
                logger.debug(f"t is not multiplicative at ({r1}, {r2})")
                return False
    return True
