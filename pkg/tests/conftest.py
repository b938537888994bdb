import pytest

import config
from hecke import utils
from operators.finite_model import builtin_model


@pytest.fixture
def rng():
    return utils.make_rng(0)


@pytest.fixture(scope="session")
def s3_a3():
    return builtin_model("s3_a3")


@pytest.fixture(scope="session")
def s3_c2():
    return builtin_model("s3_c2")


@pytest.fixture(scope="session")
def s4_s3():
    return builtin_model("s4_s3")


@pytest.fixture
def sqlite_db(tmp_path, monkeypatch):
    path = tmp_path / "runs.db"
    monkeypatch.setattr(config.settings, "DB_DIALECT", "sqlite")
    monkeypatch.setattr(config.settings, "SQLITE_PATH", str(path))
    return path
