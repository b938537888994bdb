import json

import pytest

from hecke.errors import PreconditionError
from operators.finite_model import (
    BUILTIN_MODELS,
    FiniteHeckePair,
    FiniteModel,
    KoopmanSpace,
    builtin_model,
    resolve_model,
    wandering_complement,
)


@pytest.mark.parametrize(
    "key, order, gamma, cosets",
    [("s3_a3", 6, 3, 2), ("s3_c2", 6, 2, 3), ("s4_s3", 24, 6, 4), ("d4_c2", 8, 2, 4)],
)
def test_builtin_models(key, order, gamma, cosets):
    model = builtin_model(key)
    assert model.order == order
    assert len(model.gamma) == gamma
    assert model.wandering_dim == cosets
    assert model.identity == 0
    assert model.labels[0] == "e"


def test_unknown_builtin():
    with pytest.raises(PreconditionError, match="unknown model"):
        builtin_model("a5")


def test_composition_order(s3_a3):
    # (12) then (123): 1 -> 2 -> 3, 2 -> 1 -> 2, so the product is (13)
    g, h = s3_a3.element("(123)"), s3_a3.element("(12)")
    assert s3_a3.labels[s3_a3.multiply(g, h)] == "(13)"


def test_cosets_and_double_cosets(s3_c2, s3_a3):
    assert len(s3_c2.double_coset_reps) == 2
    assert sorted(len(s3_c2.double_coset(r)) for r in s3_c2.double_coset_reps) == [2, 4]
    # A3 is normal: left and right cosets agree
    for g in range(s3_a3.order):
        assert s3_a3.left_coset(g) == s3_a3.right_coset(g)
    big = s3_c2.double_coset(s3_c2.double_coset_reps[1])
    assert len(s3_c2.left_coset_reps(big)) == 2
    assert len(s3_c2.right_coset_reps(big)) == 2


def test_set_product_and_inverse(s3_c2):
    gamma = s3_c2.gamma
    assert s3_c2.set_product(gamma, gamma) == frozenset(gamma)
    assert s3_c2.inverse_set(range(6)) == frozenset(range(6))


def test_generate(s3_a3):
    a3 = s3_a3.generate([s3_a3.element("(123)")])
    assert a3 == frozenset(s3_a3.gamma)
    assert s3_a3.generate([]) == frozenset({s3_a3.identity})


def test_save_and_load(tmp_path, s4_s3):
    path = tmp_path / "s4.json"
    s4_s3.save(path)
    data = json.loads(path.read_text())
    assert set(data) >= {"order", "mul", "gamma", "reps"}
    loaded = resolve_model(str(path))
    assert loaded.mul == s4_s3.mul
    assert loaded.gamma == s4_s3.gamma
    assert loaded.reps == s4_s3.reps


def test_resolve_missing_file():
    with pytest.raises(PreconditionError, match="no built-in model or file named 'missing-model.json'"):
        resolve_model("missing-model.json")


def test_table_validation():
    z2 = [[0, 1], [1, 0]]
    with pytest.raises(PreconditionError, match="square"):
        FiniteModel([[0, 1]], [0])
    with pytest.raises(PreconditionError, match="permutations"):
        FiniteModel([[0, 0], [1, 0]], [0])
    with pytest.raises(PreconditionError, match="identity"):
        FiniteModel(z2, [1])
    with pytest.raises(PreconditionError, match="share a coset"):
        FiniteModel(z2, [0], reps=[0, 0])
    with pytest.raises(PreconditionError, match="cover"):
        FiniteModel(z2, [0], reps=[0])


def test_non_associative_table():
    # a Latin square with identity 0 that is not a group
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(PreconditionError, match="associative"):
        FiniteModel(table, [0])


def test_gamma_must_be_a_subgroup(s3_a3):
    with pytest.raises(PreconditionError, match="closed"):
        FiniteModel(s3_a3.mul, [0, s3_a3.element("(123)")])


def test_koopman_quotient(s4_s3):
    k = wandering_complement("s4_s3", s4_s3)
    assert len(k) == 4
    space = KoopmanSpace.quotient(s4_s3, k)
    assert space.size == 6
    # Gamma acts simply transitively on G/K
    assert len(space.default_domain()) == 1
    assert space.gamma_orbit(0) == frozenset(range(6))


def test_koopman_rejects_bad_action(s3_a3):
    with pytest.raises(PreconditionError, match="one row per group element"):
        KoopmanSpace(s3_a3, [[0]])
    broken = [[0, 1]] * s3_a3.order
    broken[1] = [1, 0]
    with pytest.raises(PreconditionError):
        KoopmanSpace(s3_a3, broken)


def test_product_space(s3_a3):
    space = KoopmanSpace.regular(s3_a3).product_space()
    assert space.size == 36
    g = s3_a3.element("(12)")
    x, y = 2, 5
    assert space.action[g][x * 6 + y] == s3_a3.mul[g][x] * 6 + s3_a3.mul[g][y]


@pytest.mark.parametrize("key", sorted(BUILTIN_MODELS))
def test_wandering_complements(key):
    model = builtin_model(key)
    k = wandering_complement(key, model)
    assert k & model.gamma_set == {model.identity}
    assert len(k) * len(model.gamma) == model.order


def test_wandering_complement_unknown(s3_a3):
    assert wandering_complement("custom", s3_a3) is None


def test_finite_pair_labels(s3_c2):
    pair = FiniteHeckePair(s3_c2)
    for g in range(s3_c2.order):
        for c in s3_c2.gamma:
            assert pair.right_label(s3_c2.mul[c][g]) == pair.right_label(g)
            assert pair.left_label(s3_c2.mul[g][c]) == pair.left_label(g)
    assert pair.to_json(pair.identity) == "e"
