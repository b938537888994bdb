import pytest

from hecke.coset_engine import DoubleCoset, hecke_product
from hecke.errors import PreconditionError
from operators import linalg, rep_engine
from operators.finite_model import KoopmanSpace
from operators.rep_engine import (
    SubrepProjection,
    WanderingDecomposition,
    build_S,
    regular_decomposition,
)
from operators.series import OperatorSeries, epsilon_tilde, series_adjoint


@pytest.fixture
def wd(s3_c2):
    return regular_decomposition(s3_c2)


def test_regular_decomposition(wd, s3_c2):
    assert wd.dim == 3
    assert wd.size == 6
    assert wd.check_wandering()


def test_domain_must_meet_every_orbit_once(s3_c2):
    space = KoopmanSpace.regular(s3_c2)
    gamma_partner = s3_c2.mul[s3_c2.element("(12)")][0]
    with pytest.raises(PreconditionError, match="more than once"):
        WanderingDecomposition(space, [0, gamma_partner, 1])
    with pytest.raises(PreconditionError, match="misses"):
        WanderingDecomposition(space, s3_c2.reps[:2])


def test_gamma_must_act_freely(s3_a3):
    space = KoopmanSpace.quotient(s3_a3, s3_a3.gamma)
    with pytest.raises(PreconditionError, match="freely"):
        WanderingDecomposition(space, [0])


def test_S_on_cosets(wd, s3_c2):
    for s1 in range(s3_c2.order):
        for s2 in s3_c2.reps:
            product = build_S(s3_c2.left_coset(s1), wd) * build_S(s3_c2.right_coset(s2), wd)
            assert product == build_S(s3_c2.set_product([s1], s3_c2.gamma, [s2]), wd)
    for s in s3_c2.reps:
        assert series_adjoint(build_S(s3_c2.right_coset(s), wd)) == build_S(s3_c2.left_coset(s3_c2.inv[s]), wd)


def test_S_on_the_hecke_algebra(wd, s3_c2):
    pair = wd.pair
    s_of = {rep: build_S(s3_c2.double_coset(rep), wd) for rep in s3_c2.double_coset_reps}
    for r1 in s_of:
        for r2 in s_of:
            expected = OperatorSeries(pair, wd.dim)
            for term in hecke_product(DoubleCoset(r1, pair), DoubleCoset(r2, pair)):
                expected = expected + s_of[term.coset.key].scale(term.mult)
            assert s_of[r1] * s_of[r2] == expected


def test_epsilon_tilde_is_the_classical_operator(wd, s3_c2):
    for rep in s3_c2.double_coset_reps:
        a = s3_c2.double_coset(rep)
        assert linalg.equal(epsilon_tilde(build_S(a, wd)), rep_engine.classical_hecke_operator(a, wd))
    # the identity class acts as the identity
    assert linalg.equal(rep_engine.classical_hecke_operator(s3_c2.gamma, wd), linalg.identity(3))


def test_projections(wd):
    inv = rep_engine.invariant_projection(wd)
    assert inv.commutes_with_G
    assert linalg.matrix_trace(inv.matrix) == linalg.element(1)
    assert linalg.matrix_trace(inv.complement(wd).matrix) == linalg.element(5)
    gamma_span = rep_engine.cyclic_projection(wd, [linalg.unit_vector(6, 0)], over_gamma=True)
    assert not gamma_span.commutes_with_G
    assert linalg.matrix_trace(gamma_span.matrix) == linalg.element(2)


def test_projection_preconditions(wd, s3_c2):
    with pytest.raises(PreconditionError, match="idempotent"):
        SubrepProjection.of(wd, linalg.scale(linalg.identity(6), 2))
    # the projection onto one point does not commute with Gamma
    with pytest.raises(PreconditionError, match="commute"):
        SubrepProjection.of(wd, linalg.unit_matrix(6, 6, 0, 0))


def test_p_series_is_an_idempotent_in_gamma(wd, s3_c2):
    sp = rep_engine.invariant_projection(wd).complement(wd)
    p_series = rep_engine.build_p_series(sp, wd)
    assert set(p_series.support) <= s3_c2.gamma_set
    assert p_series * p_series == p_series
    for rep in s3_c2.double_coset_reps:
        s = build_S(s3_c2.double_coset(rep), wd)
        assert p_series * s == s * p_series


def test_expectation_theorem(wd, s3_c2, rng):
    projections = [
        rep_engine.identity_projection(wd),
        rep_engine.cyclic_projection(wd, [rep_engine.random_vector(6, rng)], over_gamma=True),
    ]
    for sp in projections:
        for rep in s3_c2.double_coset_reps:
            x = rep_engine.random_commutant_element(sp, wd, rng)
            report = rep_engine.theorem_expectation_report(sp, wd, s3_c2.double_coset(rep), x)
            assert report.adjointed
            # every double coset of S3 over <(12)> is its own inverse
            assert report.literal_applicable
            assert report.literal


def test_expectation_theorem_on_a_non_symmetric_set(s4_s3, rng):
    wd = regular_decomposition(s4_s3)
    sp = rep_engine.identity_projection(wd)
    a = s4_s3.left_coset(s4_s3.element("(1234)"))
    x = rep_engine.random_commutant_element(sp, wd, rng)
    report = rep_engine.theorem_expectation_report(sp, wd, a, x)
    assert report.adjointed
    assert not report.literal_applicable


def test_expectation_theorem_preconditions(wd, s3_c2, rng):
    sp = rep_engine.identity_projection(wd)
    x = rep_engine.random_commutant_element(sp, wd, rng)
    with pytest.raises(PreconditionError, match="left cosets"):
        rep_engine.theorem_expectation_report(sp, wd, [s3_c2.element("(123)")], x)
    with pytest.raises(PreconditionError, match="commute"):
        rep_engine.theorem_expectation_report(sp, wd, s3_c2.gamma, linalg.unit_matrix(6, 6, 0, 1))
    with pytest.raises(PreconditionError, match="shape"):
        rep_engine.commutant_series(linalg.identity(3), wd)


def test_tensor_model(wd, s3_c2, rng):
    sp = rep_engine.identity_projection(wd)
    for rep in s3_c2.double_coset_reps:
        x = rep_engine.random_commutant_element(sp, wd, rng)
        assert rep_engine.tensor_model_check(s3_c2.double_coset(rep), x, wd)
