import pytest

from hecke.errors import PreconditionError
from operators import invariants, linalg, rep_engine
from operators.finite_model import builtin_model, wandering_complement
from operators.rep_engine import regular_decomposition


@pytest.fixture
def wd(s3_c2):
    return regular_decomposition(s3_c2)


@pytest.fixture
def sp(wd):
    return rep_engine.invariant_projection(wd).complement(wd)


def test_lift_is_gamma_invariant(wd, sp):
    for b in range(wd.dim):
        lifted = invariants.invariant_lift_phi(linalg.unit_vector(wd.dim, b), sp, wd)
        assert invariants.is_gamma_invariant(lifted, wd)


def test_lift_needs_a_g_invariant_projection(wd):
    gamma_span = rep_engine.cyclic_projection(wd, [linalg.unit_vector(6, 0)], over_gamma=True)
    with pytest.raises(PreconditionError, match="commute with pi"):
        invariants.invariant_lift_phi([1, 0, 0], gamma_span, wd)


def test_lift_rejects_wrong_length(wd, sp):
    with pytest.raises(PreconditionError, match="expected 3"):
        invariants.invariant_lift_phi([1, 0], sp, wd)


def test_phi_star_phi(wd, sp, s3_c2):
    assert linalg.equal(invariants.phi_star_phi(sp, wd), invariants.gram_A(s3_c2.gamma, sp, wd))


@pytest.mark.parametrize("key", ["s3_c2", "s4_s3", "d4_c2"])
def test_hecke_operators_on_invariants(key):
    model = builtin_model(key)
    wd = regular_decomposition(model)
    sp = rep_engine.invariant_projection(wd).complement(wd)
    for rep in model.double_coset_reps:
        a = model.double_coset(rep)
        assert invariants.intertwines(a, sp, wd)
        assert invariants.lift_trace_identity(a, sp, wd)


def test_scalar_product_property_one(wd, sp, s3_c2):
    for s1 in range(s3_c2.order):
        for s2 in range(s3_c2.order):
            assert invariants.scalar_product_property_one(s1, s2, sp, wd)


def test_scalar_product_invariance(wd, sp, s3_c2, rng):
    for _ in range(10):
        s = [int(v) for v in rng.integers(0, 6, size=4)]
        shifts = [s3_c2.gamma[int(v)] for v in rng.integers(0, 2, size=4)]
        assert invariants.scalar_product_invariant(s, shifts, sp, wd)
    outside = s3_c2.element("(123)")
    with pytest.raises(PreconditionError, match="Gamma"):
        invariants.scalar_product_invariant([0, 0, 0, 0], [outside, 0, 0, 0], sp, wd)


def test_scalar_product_grams_are_psd(wd, sp, s3_c2):
    elements = [s3_c2.element(label) for label in ("e", "(12)", "(13)", "(123)")]
    assert linalg.is_psd_exact(invariants.scalar_product_gram(elements, sp, wd))
    assert linalg.is_psd_exact(invariants.trace_gram(elements, sp, wd))


@pytest.mark.parametrize("key", ["s3_a3", "s3_c2", "s4_s3", "d4_c2"])
def test_wandering_function(key):
    model = builtin_model(key)
    wd = invariants.line_decomposition(model, wandering_complement(key, model))
    assert wd.dim == 1
    for shift in [None] + list(model.gamma):
        t = invariants.wandering_function(wd, shift)
        assert invariants.t_restricts_to_delta(t, wd)
        assert invariants.t_positive_definite(t, wd)
        assert invariants.t_partition_of_unity(t, wd)
        assert invariants.t_multiplicative(t, wd)


def test_wandering_function_values(s3_a3):
    k = wandering_complement("s3_a3", s3_a3)
    wd = invariants.line_decomposition(s3_a3, k)
    t = invariants.wandering_function(wd)
    # t is the indicator of the stabilizer of the base point, here K itself
    assert {g for g in range(6) if t[g] == linalg.ONE} == set(k)


def test_line_decomposition_needs_one_orbit(s3_a3):
    with pytest.raises(PreconditionError, match="exactly one"):
        invariants.line_decomposition(s3_a3, [s3_a3.identity])


def test_shift_must_lie_in_gamma(s3_a3):
    wd = invariants.line_decomposition(s3_a3, wandering_complement("s3_a3", s3_a3))
    with pytest.raises(PreconditionError, match="shift"):
        invariants.wandering_function(wd, s3_a3.element("(12)"))
