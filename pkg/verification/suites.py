#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Acceptance suites
Each runner takes a seed and returns a list of CheckResult; a check passes with zero failures.
"""

from typing import Callable, Iterable, List, Optional

import config
from hecke import constants, exact_core, modular_qexp, radial_free, utils
from hecke.coset_engine import (
    LEFT,
    RIGHT,
    CosetWindow,
    DoubleCoset,
    decompose,
    hecke_matrix,
    hecke_product,
    product_as_dict,
    unimodularity_check,
)
from hecke.errors import ExpectationNotInvertibleError
from operators import compression, invariants, linalg, rep_engine
from operators.finite_model import BUILTIN_MODELS, FiniteModel, builtin_model, wandering_complement
from operators.series import OperatorSeries, epsilon_tilde, random_series, series_adjoint
from verification.scheduler import CheckResult

logger = utils.setup_logger()


def _result(check: str, outcomes: Iterable[bool], model: str = "-", detail: str = "") -> CheckResult:
    outcomes = list(outcomes)
    failures = sum(1 for ok in outcomes if not ok)
    return CheckResult(check=check, model=model, cases=len(outcomes), failures=failures, detail=detail)


# ---------------------------------------------------------------------------
# Exact suites
# ---------------------------------------------------------------------------

def structure_constants_hold(p: int, n: int) -> bool:
    """T_p T_p = T_{p^2} + (p+1) T_1 and T_p T_{p^n} = T_{p^{n+1}} + p T_{p^{n-1}} for n >= 2."""
    t_p = DoubleCoset.from_index(p)
    got = product_as_dict(hecke_product(t_p, DoubleCoset.from_index(p ** n)))
    if n == 1:
        expected = {(p * p, 1): 1, (1, 1): p + 1}
    else:
        expected = {(p ** (n + 1), 1): 1, (p ** (n - 1), 1): p}
    return got == expected


def run_cosets_suite(seed: int) -> List[CheckResult]:
    rng = utils.make_rng(seed)
    checks = []

    counts = []
    for p in constants.COSET_COUNT_PRIMES:
        dc = DoubleCoset(exact_core.diag(1, p))
        counts.append(len(decompose(dc, LEFT)) == len(decompose(dc, RIGHT)) == p + 1)
    checks.append(_result("coset_counts", counts))

    checks.append(_result(
        "structure_constants",
        [structure_constants_hold(p, n)
         for p in constants.STRUCTURE_CONSTANT_PRIMES
         for n in range(1, constants.STRUCTURE_CONSTANT_MAX_N + 1)],
    ))

    sigmas = [exact_core.random_matrix(rng, constants.UNIMODULAR_ENTRY_BOUND) for _ in range(config.settings.RANDOM_CASES)]
    checks.append(_result("unimodularity", [unimodularity_check(s) for s in sigmas]))
    return checks


def run_radial_suite(seed: int) -> List[CheckResult]:
    hecke_vs_kesten = [
        radial_free.hecke_power(p, n).get((1, 1), 0) == radial_free.kesten_moment(p + 1, n)
        for p in constants.RADIAL_PRIMES
        for n in range(constants.RADIAL_MAX_N + 1)
    ]
    walks = [
        radial_free.kesten_moment(d, n) == radial_free.closed_walk_count(d, n)
        for d in constants.TREE_DEGREES
        for n in range(constants.TREE_WALK_MAX_N + 1)
    ]
    return [_result("hecke_power_vs_kesten", hecke_vs_kesten), _result("kesten_vs_tree_walks", walks)]


def run_qexp_suite(seed: int) -> List[CheckResult]:
    delta = modular_qexp.delta_qexp(config.settings.QEXP_PRECISION)
    eigen = []
    for p, expected in constants.DELTA_EIGENVALUES.items():
        result = modular_qexp.eigenvalue_of(delta, p)
        eigen.append(result.eigenvalue == str(expected))
    relation = [modular_qexp.hecke_relation_holds(delta, p) for p in constants.HECKE_RELATION_PRIMES]
    return [_result("delta_eigenvalues", eigen), _result("hecke_relation", relation)]


def perturbed_representative_sum(p: int) -> radial_free.SupportedGroupElement:
    """The involution sum with the first coefficient doubled; self-adjoint, but not radial."""
    reps = radial_free.involution_representatives(p)
    return radial_free.SupportedGroupElement({t: (2 if i == 0 else 1) for i, t in enumerate(reps)})


def run_criterion_suite(seed: int) -> List[CheckResult]:
    p, n_max = constants.CRITERION_PRIME, constants.CRITERION_NMAX
    x = radial_free.coset_representative_sum(p)
    report = radial_free.criterion_check(x, n_max)
    scaled = radial_free.criterion_check(x.scale(2), n_max)
    perturbed = radial_free.criterion_check(perturbed_representative_sum(p), n_max)
    sigma = exact_core.diag(1, p)
    part3 = [
        radial_free.multiplicativity_check_part3(x, sigma, sigma),
        radial_free.multiplicativity_check_part3(x, sigma, exact_core.IDENTITY),
    ]
    return [
        _result("criterion_extends", [report.extends], detail=f"n_max={n_max}"),
        _result("criterion_scaled_fails", [not scaled.extends], detail=f"first failure n={scaled.first_failure}"),
        _result("criterion_perturbed_fails", [not perturbed.extends], detail=f"first failure n={perturbed.first_failure}"),
        _result("part3_multiplicative", part3),
        _result("part3_perturbed_fails", [
            not radial_free.multiplicativity_check_part3(perturbed_representative_sum(p), sigma, sigma)
        ]),
    ]


# ---------------------------------------------------------------------------
# Finite models
# ---------------------------------------------------------------------------

def _left_coset_reps(model: FiniteModel) -> List[int]:
    return sorted({min(model.left_coset(g)) for g in range(model.order)})


def _combination(terms, build: Callable[[frozenset], OperatorSeries], zero: OperatorSeries) -> OperatorSeries:
    out = zero
    for term in terms:
        out = out + build(term.coset.base).scale(term.mult)
    return out


def _is_abelian(model: FiniteModel) -> bool:
    return all(model.mul[a][b] == model.mul[b][a] for a in model.gamma for b in model.gamma)


def _trace_gram_elements(model: FiniteModel) -> List[int]:
    try:
        return [model.element(label) for label in ("e", "(12)", "(13)", "(123)")]
    except ValueError:
        return list(range(min(4, model.order)))


def finite_model_checks(
    model: FiniteModel, seed: int, cases: Optional[int] = None, key: Optional[str] = None
) -> List[CheckResult]:
    """Every operator identity on one finite model; `key` selects the built-in wandering complement."""
    cases = config.settings.RANDOM_CASES if cases is None else cases
    rng = utils.make_rng(seed)
    name = model.name
    wd = rep_engine.regular_decomposition(model)
    pair = wd.pair
    dcs = {rep: model.double_coset(rep) for rep in model.double_coset_reps}
    s_of = {rep: rep_engine.build_S(a, wd) for rep, a in dcs.items()}
    zero = OperatorSeries(pair, wd.dim)
    checks: List[CheckResult] = []

    # S is a *-morphism on cosets and on the Hecke algebra
    coset_products = []
    for s1 in _left_coset_reps(model):
        for s2 in model.reps:
            left = rep_engine.build_S(model.left_coset(s1), wd) * rep_engine.build_S(model.right_coset(s2), wd)
            coset_products.append(left == rep_engine.build_S(model.set_product([s1], model.gamma, [s2]), wd))
    checks.append(_result("S_coset_products", coset_products, name))

    adjoints = [
        series_adjoint(rep_engine.build_S(model.right_coset(s), wd))
        == rep_engine.build_S(model.left_coset(model.inv[s]), wd)
        for s in model.reps
    ]
    checks.append(_result("S_adjoint", adjoints, name))

    hecke_products, characters, psi_products = [], [], []
    build_dc = lambda base: s_of[pair.double_coset_key(base)]
    for r1 in dcs:
        for r2 in dcs:
            terms = hecke_product(DoubleCoset(r1, pair), DoubleCoset(r2, pair))
            product = s_of[r1] * s_of[r2]
            hecke_products.append(product == _combination(terms, build_dc, zero))
            characters.append(linalg.equal(
                epsilon_tilde(product), (epsilon_tilde(s_of[r1]) * epsilon_tilde(s_of[r2])).to_dense()
            ))
            x = rep_engine.random_commutant_element(rep_engine.identity_projection(wd), wd, rng)
            composed = rep_engine.psi_adjoint_action(dcs[r1], rep_engine.psi_adjoint_action(dcs[r2], x, wd), wd)
            expected = linalg.total(
                (linalg.scale(rep_engine.psi_adjoint_action(dcs[t.coset.key], x, wd), t.mult) for t in terms), wd.size
            )
            psi_products.append(linalg.equal(composed, expected))
    checks.append(_result("S_hecke_products", hecke_products, name))
    checks.append(_result("epsilon_tilde_character", characters, name))
    checks.append(_result("psi_structure_constants", psi_products, name))

    # classical double-coset operators
    window = CosetWindow(list(model.reps), pair)
    classical = []
    for rep, a in dcs.items():
        block = epsilon_tilde(s_of[rep])
        classical.append(linalg.equal(block, rep_engine.classical_hecke_operator(a, wd)))
        matrix = hecke_matrix(DoubleCoset(rep, pair), window).matrix
        classical.append(linalg.equal(block, linalg.from_rows(matrix)))
    checks.append(_result("classical_hecke_operator", classical, name))

    # expectation theorem
    sp_gamma = rep_engine.cyclic_projection(wd, [rep_engine.random_vector(wd.size, rng)], over_gamma=True)
    projections = [rep_engine.identity_projection(wd), sp_gamma]
    reps = list(dcs)
    theorem = []
    for i in range(cases):
        sp = projections[i % 2]
        a = dcs[reps[i % len(reps)]]
        x = rep_engine.random_commutant_element(sp, wd, rng)
        report = rep_engine.theorem_expectation_report(sp, wd, a, x)
        theorem.append(report.adjointed and (report.literal or not report.literal_applicable))
    checks.append(_result("expectation_theorem", theorem, name))

    tensor = [
        rep_engine.tensor_model_check(a, rep_engine.random_commutant_element(projections[0], wd, rng), wd)
        for a in dcs.values()
    ]
    checks.append(_result("tensor_model", tensor, name))

    # p commuting with G
    sp_g = rep_engine.invariant_projection(wd).complement(wd)
    p_series = rep_engine.build_p_series(sp_g, wd)
    central = [p_series * s == s * p_series for s in s_of.values()]
    a_gamma = epsilon_tilde(p_series)
    central.append(linalg.equal((a_gamma * a_gamma).to_dense(), a_gamma))
    checks.append(_result("p_series_central", central, name))

    lifts = [linalg.equal(invariants.phi_star_phi(sp_g, wd), invariants.gram_A(model.gamma, sp_g, wd))]
    lifts += [invariants.intertwines(a, sp_g, wd) for a in dcs.values()]
    lifts += [invariants.lift_trace_identity(a, sp_g, wd) for a in dcs.values()]
    checks.append(_result("invariant_lift", lifts, name))

    # coset scalar product
    property_one = [
        invariants.scalar_product_property_one(s1, s2, sp_g, wd)
        for s1 in range(model.order) for s2 in range(model.order)
    ]
    checks.append(_result("scalar_product_property_one", property_one, name))
    invariance = []
    for _ in range(min(cases, 20)):
        s = [int(v) for v in rng.integers(0, model.order, size=4)]
        shifts = [model.gamma[int(v)] for v in rng.integers(0, len(model.gamma), size=4)]
        invariance.append(invariants.scalar_product_invariant(s, shifts, sp_g, wd))
    checks.append(_result("scalar_product_invariance", invariance, name))
    gram_elements = sorted(set(model.reps) | set(range(min(4, model.order))))
    checks.append(_result("scalar_product_gram_psd", [
        linalg.is_psd_exact(invariants.scalar_product_gram(gram_elements, sp_g, wd)),
        linalg.is_psd_exact(invariants.trace_gram(_trace_gram_elements(model), sp_g, wd)),
    ], name))

    checks.extend(compression_checks(model, wd, rng, cases))
    if key is not None:
        checks.extend(wandering_checks(model, key))
    return checks


def compression_checks(model: FiniteModel, wd, rng, cases: int) -> List[CheckResult]:
    name = model.name
    if not _is_abelian(model):
        return [CheckResult(check="compression_multiplicative", model=name, cases=0, failures=0,
                            detail="skipped: Gamma is not abelian")]
    phi = sp = None
    for _ in range(5):
        sp = rep_engine.cyclic_projection(wd, [rep_engine.random_vector(wd.size, rng)], over_gamma=True)
        try:
            phi = compression.Compression.build(rep_engine.build_p_series(sp, wd))
            break
        except ExpectationNotInvertibleError as e:
            logger.debug(f"retrying compression with another vector: {e}")
    if phi is None:
        return [CheckResult(check="compression_multiplicative", model=name, cases=1, failures=1,
                            detail="no invertible expectation found")]
    outcomes = []
    for _ in range(min(cases, 20)):
        a = random_series(wd.pair, wd.dim, model.gamma, rng, bound=3)
        b = random_series(wd.pair, wd.dim, model.gamma, rng, bound=3)
        outcomes.append(compression.is_multiplicative(phi, a, b))
    ep = [
        compression.prop_ep_consistency(sorted(model.double_coset(rep)), sp, wd, phi)
        for rep in model.double_coset_reps
    ]
    return [
        _result("compression_multiplicative", outcomes, name),
        _result("compression_trace_formula", ep, name),
    ]


def wandering_checks(model: FiniteModel, key: str) -> List[CheckResult]:
    subgroup = wandering_complement(key, model)
    if subgroup is None:
        return []
    wd = invariants.line_decomposition(model, subgroup)
    outcomes = []
    for shift in [None] + list(model.gamma):
        t = invariants.wandering_function(wd, shift)
        outcomes.extend([
            invariants.t_restricts_to_delta(t, wd),
            invariants.t_positive_definite(t, wd),
            invariants.t_partition_of_unity(t, wd),
            invariants.t_multiplicative(t, wd),
        ])
    return [_result("wandering_function", outcomes, model.name)]


def run_finite_suite(seed: int) -> List[CheckResult]:
    checks: List[CheckResult] = []
    for key in BUILTIN_MODELS:
        model = builtin_model(key)
        logger.info(f"finite suite: {model}")
        checks.extend(finite_model_checks(model, seed, key=key))
    return checks


# ---------------------------------------------------------------------------
# Hyperbolic geometry
# ---------------------------------------------------------------------------

def random_element(rng, max_index: int, max_word: int = 4) -> exact_core.ProjectiveMatrix:
    """gamma1 diag(1, n) gamma2 with n <= max_index."""
    n = int(rng.integers(1, max_index + 1))
    return exact_core.product([
        exact_core.random_gamma(rng, max_word), exact_core.diag(1, n), exact_core.random_gamma(rng, max_word)
    ])


def run_hyperbolic_suite(seed: int) -> List[CheckResult]:
    from geometry import hyperbolic, phi

    rng = utils.make_rng(seed)
    settings = config.settings
    checks = []

    raw = hyperbolic.area_F()
    checks.append(_result("area_F", [
        abs(raw - phi.area_F_quadrature()) <= settings.AREA_TOL,
        abs(phi.phi0(exact_core.IDENTITY) - 1.0) <= settings.AREA_TOL,
    ], detail=f"area={raw:.12f}"))
    checks.append(_result("phi0_generators", [
        phi.phi0(exact_core.T) <= settings.AREA_TOL, phi.phi0(exact_core.S) <= settings.AREA_TOL
    ]))

    partition = []
    for _ in range(constants.PARTITION_SAMPLES):
        total, area_f = phi.partition_sum(random_element(rng, constants.PARTITION_MAX_INDEX))
        partition.append(abs(total - area_f) <= settings.PARTITION_TOL * area_f)
    checks.append(_result("partition_of_unity", partition))

    gram = []
    for _ in range(constants.GRAM_SUBSETS):
        elements = [random_element(rng, constants.GRAM_MAX_INDEX, 3) for _ in range(constants.GRAM_SUBSET_SIZE)]
        gram.append(phi.gram_psd_check(phi.phi0, elements)[1])
    checks.append(_result("phi0_gram_psd", gram))

    orders = []
    for p in (2, 3):
        by_left, by_right = phi.double_coset_mass(exact_core.diag(1, p))
        orders.append(abs(by_left - by_right) <= settings.PARTITION_TOL and abs(by_left - (p + 1)) <= settings.PARTITION_TOL)
    checks.append(_result("psi0_summation_orders", orders))

    family = [exact_core.IDENTITY] + decompose(DoubleCoset.from_index(2), RIGHT)
    checks.append(_result("psi0_gram_psd", [phi.psi_gram_psd_check(family)[1]]))

    sigma = exact_core.diag(1, 2)
    estimate, stderr = phi.phi0_monte_carlo(sigma, 1_000_000, rng)
    checks.append(_result("phi0_monte_carlo", [abs(estimate - phi.phi0(sigma)) <= 4 * stderr],
                          detail=f"estimate={estimate:.5f} stderr={stderr:.1e}"))
    return checks
