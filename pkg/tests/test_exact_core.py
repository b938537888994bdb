import numpy as np
import pytest

from hecke import exact_core
from hecke.errors import NotInvertibleError, PreconditionError
from hecke.exact_core import IDENTITY, S, T, T_INV, ProjectiveMatrix, canonicalize, diag


def test_canonicalize_clears_denominators_and_sign():
    assert canonicalize((2, 4, 6, 10)) == ProjectiveMatrix(1, 2, 3, 5)
    assert canonicalize(("-1/2", "0", "0", "-1")) == ProjectiveMatrix(1, 0, 0, 2)
    assert canonicalize([[0, -3], [3, 0]]) == S


def test_canonicalize_singular():
    with pytest.raises(NotInvertibleError, match="not invertible"):
        canonicalize((1, 2, 2, 4))


def test_scalar_matrices_are_identity():
    assert canonicalize((5, 0, 0, 5)) == IDENTITY
    assert exact_core.multiply(diag(2, 1), diag(1, 2)) == IDENTITY


def test_from_text():
    assert ProjectiveMatrix.from_text("1 0 0 2") == diag(1, 2)
    assert ProjectiveMatrix.from_text("1/2, 0, 0, 1") == diag(1, 2)
    with pytest.raises(PreconditionError):
        ProjectiveMatrix.from_text("1 2 3")


def test_json_round_trip_uses_strings():
    m = ProjectiveMatrix(3, 1, 2, 1)
    assert m.to_json() == {"a": "3", "b": "1", "c": "2", "d": "1"}
    assert ProjectiveMatrix.from_json(m.to_json()) == m


def test_inverse(rng):
    for _ in range(20):
        x = exact_core.random_matrix(rng, 20)
        assert exact_core.multiply(x, exact_core.inverse(x)) == IDENTITY
        assert exact_core.multiply(exact_core.inverse(x), x) == IDENTITY


def test_multiplication_is_associative(rng):
    for _ in range(20):
        x, y, z = (exact_core.random_matrix(rng, 10) for _ in range(3))
        assert (x * y) * z == x * (y * z)


def test_generators():
    assert exact_core.multiply(T, T_INV) == IDENTITY
    assert exact_core.multiply(S, S) == IDENTITY
    assert exact_core.product([S, T, S, T, S, T]) == IDENTITY
    assert all(exact_core.is_in_gamma(g) for g in exact_core.GAMMA_GENERATORS)
    assert not exact_core.is_in_gamma(diag(1, 2))


def test_hnf_rep_right():
    assert exact_core.hnf_rep_right(diag(1, 2)) == ProjectiveMatrix(1, 0, 0, 2)
    # Gamma*(T*diag(1, 2)) = Gamma*diag(1, 2)
    assert exact_core.hnf_rep_right(T * diag(1, 2)) == ProjectiveMatrix(1, 0, 0, 2)
    assert exact_core.hnf_rep_right(diag(1, 2) * T) == ProjectiveMatrix(1, 1, 0, 2)
    assert exact_core.hnf_rep_right(diag(2, 1)) == ProjectiveMatrix(2, 0, 0, 1)


def test_hnf_rep_right_with_coprime_first_column():
    # [[-1, 1], [-3, 2]] * [[2, 1], [3, 5]] = [[1, 4], [0, 7]]
    x = ProjectiveMatrix(2, 1, 3, 5)
    assert exact_core.hnf_rep_right(x) == ProjectiveMatrix(1, 4, 0, 7)
    assert exact_core.hnf_rep_right(canonicalize((-1, 1, -3, 2)) * x) == ProjectiveMatrix(1, 4, 0, 7)


def test_hnf_labels_are_gamma_invariant(rng):
    for _ in range(30):
        x = exact_core.random_matrix(rng, 20)
        g = exact_core.random_gamma(rng, 8)
        assert exact_core.hnf_rep_right(g * x) == exact_core.hnf_rep_right(x)
        assert exact_core.hnf_rep_left(x * g) == exact_core.hnf_rep_left(x)


def test_hnf_label_shape(rng):
    for _ in range(30):
        label = exact_core.hnf_rep_right(exact_core.random_matrix(rng, 30))
        assert label.c == 0 and label.a > 0
        assert 0 <= label.b < abs(label.d)


@pytest.mark.parametrize(
    "matrix, divisors",
    [
        (diag(1, 2), (1, 2)),
        (diag(1, 12), (1, 12)),
        (ProjectiveMatrix(2, 1, 0, 3), (1, 6)),
        (IDENTITY, (1, 1)),
    ],
)
def test_smith_divisors(matrix, divisors):
    assert exact_core.smith_divisors(matrix) == divisors
    assert exact_core.divisor_index(matrix) == divisors[1]


def test_double_coset_key_is_gamma_invariant(rng):
    for _ in range(30):
        x = exact_core.random_matrix(rng, 20)
        moved = exact_core.product([exact_core.random_gamma(rng), x, exact_core.random_gamma(rng)])
        assert exact_core.double_coset_key(moved) == exact_core.double_coset_key(x)


def test_negative_determinant_is_its_own_class():
    reflection = ProjectiveMatrix(1, 0, 0, -1)
    assert exact_core.double_coset_key(reflection) == (1, -1)
    assert exact_core.double_coset_key(IDENTITY) == (1, 1)


def test_random_gamma_is_deterministic():
    a = [exact_core.random_gamma(np.random.default_rng(7)) for _ in range(3)]
    b = [exact_core.random_gamma(np.random.default_rng(7)) for _ in range(3)]
    assert a == b
