import pytest

from hecke import modular_qexp
from hecke.errors import PreconditionError
from hecke.modular_qexp import QSeries, delta_qexp, eigenvalue_of, hecke_Tp, hecke_relation_holds


def test_delta_coefficients():
    assert delta_qexp(10).coeffs == (1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920)


def test_delta_default_precision():
    assert delta_qexp().precision == 50


@pytest.mark.parametrize("p, eigenvalue", [(2, "-24"), (3, "252"), (5, "4830"), (7, "-16744")])
def test_delta_eigenvalues(p, eigenvalue):
    result = eigenvalue_of(delta_qexp(50), p)
    assert result.is_eigenvector
    assert result.eigenvalue == eigenvalue
    assert result.checked_up_to == 50 // p


@pytest.mark.parametrize("p", [2, 3])
def test_hecke_relation(p):
    assert hecke_relation_holds(delta_qexp(50), p)


def test_tau_multiplicativity():
    f = delta_qexp(40)
    # coprime multiplicativity and the prime-square relation
    assert f.a(6) == f.a(2) * f.a(3)
    assert f.a(4) == f.a(2) ** 2 - 2 ** 11


def test_non_eigenform_reports_mismatch():
    f = QSeries(12, [1] + [0] * 19)
    result = eigenvalue_of(f, 2)
    assert not result.is_eigenvector
    assert result.mismatch_index == 2


def test_hecke_tp_formula():
    f = delta_qexp(20)
    image = hecke_Tp(f, 2)
    assert image.precision == 10
    assert image.a(1) == f.a(2)
    assert image.a(2) == f.a(4) + 2 ** 11 * f.a(1)


def test_preconditions():
    f = delta_qexp(10)
    with pytest.raises(PreconditionError, match="not prime"):
        hecke_Tp(f, 4)
    with pytest.raises(PreconditionError, match="too small"):
        hecke_Tp(delta_qexp(2), 3)
    with pytest.raises(PreconditionError):
        modular_qexp.eigenvalue_from_image(QSeries(12, [0, 1]), QSeries(12, [0]), 2)
    with pytest.raises(PreconditionError, match="weight mismatch"):
        f + QSeries(4, [1])
