import pytest
from sympy import QQ_I

from hecke import exact_core, radial_free
from hecke.coset_engine import LEFT, DoubleCoset, decompose
from hecke.errors import CapExceededError, PreconditionError
from hecke.exact_core import IDENTITY, ProjectiveMatrix, diag
from hecke.radial_free import (
    CosetKind,
    RadialElement,
    SupportedGroupElement,
    coset_representative_sum,
    criterion_check,
    kesten_moment,
    moment_of_X,
    multiplicativity_check_part3,
    support_projections,
)


@pytest.mark.parametrize("n, expected", [(0, 1), (1, 0), (2, 4), (3, 0), (4, 28), (6, 232)])
def test_kesten_moments_degree_four(n, expected):
    assert kesten_moment(4, n) == expected


@pytest.mark.parametrize("degree", [3, 4, 5, 6])
def test_kesten_counts_tree_walks(degree):
    for n in range(11):
        assert kesten_moment(degree, n) == radial_free.closed_walk_count(degree, n)


def test_kesten_rejects_negative_order():
    with pytest.raises(PreconditionError):
        kesten_moment(3, -1)


def test_chi_recursion():
    d = 5
    chi1 = RadialElement.chi(d)
    assert chi1 * chi1 == RadialElement(d, {2: 1, 0: d})
    assert chi1 * RadialElement.chi(d, 2) == RadialElement(d, {3: 1, 1: d - 1})
    assert RadialElement.unit(d) * chi1 == chi1


def test_radial_multiplication_is_commutative():
    x = RadialElement(4, {0: 2, 1: -1, 3: 5})
    y = RadialElement(4, {1: 3, 2: 1})
    assert x * y == y * x


def test_radial_degree_mismatch():
    with pytest.raises(PreconditionError, match="degree mismatch"):
        RadialElement.chi(3) * RadialElement.chi(4)


@pytest.mark.parametrize("p", [2, 3])
def test_hecke_power_matches_kesten(p):
    for n in range(7):
        assert radial_free.hecke_power(p, n).get((1, 1), 0) == kesten_moment(p + 1, n)


def test_hecke_power_t2_squared():
    assert radial_free.hecke_power(2, 2) == {(1, 1): 3, (4, 1): 1}


def test_involution_representatives():
    for p in (2, 3, 5):
        reps = radial_free.involution_representatives(p)
        assert len(reps) == p + 1
        assert all(exact_core.multiply(t, t) == IDENTITY for t in reps)
        assert all(exact_core.double_coset_key(t) == (p, 1) for t in reps)
        assert len({exact_core.hnf_rep_left(t) for t in reps}) == p + 1
        assert {exact_core.hnf_rep_left(t) for t in reps} == set(decompose(DoubleCoset(diag(1, p)), "right"))


@pytest.mark.parametrize("p", [2, 3])
def test_moments_of_representative_sum(p):
    x = coset_representative_sum(p)
    for n in range(7):
        assert moment_of_X(x, n) == QQ_I(kesten_moment(p + 1, n), 0)


def test_moment_is_a_gaussian_rational():
    moment = moment_of_X(coset_representative_sum(2), 2)
    assert isinstance(moment, type(QQ_I(0, 0)))
    assert (int(moment.x), int(moment.y)) == (3, 0)
    assert moment_of_X(coset_representative_sum(2), 0) == QQ_I(1, 0)


def test_criterion_passes_for_representative_sum():
    report = criterion_check(coset_representative_sum(2), 6)
    assert report.extends
    assert report.degree == 3
    assert report.index == 2
    assert [row.radial for row in report.rows] == ["1", "0", "3", "0", "15", "0", "87"]
    assert all(row.equal for row in report.rows)


def test_criterion_fails_for_scaled_element():
    report = criterion_check(coset_representative_sum(2).scale(2), 6)
    assert not report.extends
    assert report.first_failure == 2


def test_criterion_fails_for_unequal_weights():
    reps = radial_free.involution_representatives(2)
    x = SupportedGroupElement({t: (2 if i == 0 else 1) for i, t in enumerate(reps)})
    report = criterion_check(x, 4)
    assert not report.extends
    assert report.first_failure == 2


def test_criterion_preconditions():
    with pytest.raises(PreconditionError, match="self-adjoint"):
        criterion_check(SupportedGroupElement.delta(ProjectiveMatrix(1, 1, 0, 2)), 3)
    mixed = coset_representative_sum(2) + coset_representative_sum(3)
    with pytest.raises(PreconditionError, match="one double coset"):
        criterion_check(mixed, 3)


def test_convolution_cap():
    x = coset_representative_sum(3)
    with pytest.raises(CapExceededError):
        radial_free.convolve(x, x, cap=2)


def test_support_projections():
    x = coset_representative_sum(2) + SupportedGroupElement.delta(IDENTITY, 5)
    labels = [(CosetKind.DOUBLE, diag(1, 2))]
    projected = support_projections(x, labels)
    assert projected == coset_representative_sum(2)
    assert support_projections(projected, labels) == projected
    only_identity = support_projections(x, [(CosetKind.GAMMA_X, exact_core.S)])
    assert only_identity == SupportedGroupElement.delta(IDENTITY, 5)


def test_support_projection_on_one_coset():
    x = coset_representative_sum(2)
    t = radial_free.involution_representatives(2)[0]
    assert support_projections(x, [(CosetKind.X_GAMMA, t)]) == SupportedGroupElement.delta(t)
    assert support_projections(x, [(CosetKind.GAMMA_X, t)]) == SupportedGroupElement.delta(t)


def test_json_form():
    x = coset_representative_sum(2)
    assert SupportedGroupElement.from_json(x.to_json()) == x
    assert x.to_json()[0]["coeff"] == {"re": "1", "im": "0"}


def test_part3_multiplicativity():
    x = coset_representative_sum(2)
    sigma = diag(1, 2)
    assert multiplicativity_check_part3(x, sigma, sigma)
    assert multiplicativity_check_part3(x, sigma, IDENTITY)


def test_part3_fails_for_unequal_weights():
    reps = radial_free.involution_representatives(2)
    x = SupportedGroupElement({t: (2 if i == 0 else 1) for i, t in enumerate(reps)})
    assert not multiplicativity_check_part3(x, diag(1, 2), diag(1, 2))
