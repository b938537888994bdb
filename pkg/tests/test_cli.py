import io
import json
import math

import pytest

from main import run


def invoke(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    text = out.getvalue()
    return code, json.loads(text) if text else None


def test_cosets():
    code, payload = invoke("cosets", "--sigma", "1 0 0 2")
    assert code == 0
    assert payload["count"] == 3
    assert (payload["index"], payload["sign"]) == (2, 1)
    assert payload["reps"][0] == {"a": "1", "b": "0", "c": "0", "d": "2"}
    code, payload = invoke("cosets", "--sigma", "1 0 0 2", "--side", "right")
    assert payload["count"] == 3


def test_product():
    code, payload = invoke("product", "--n1", "2", "--n2", "2")
    assert code == 0
    assert payload["terms"] == [{"index": 1, "sign": 1, "mult": 3}, {"index": 4, "sign": 1, "mult": 1}]
    code, payload = invoke("product", "--n1", "2", "--n2", "2", "--support-only")
    assert payload["terms"] == [{"index": 1, "sign": 1}, {"index": 4, "sign": 1}]


def test_unimodular():
    code, payload = invoke("unimodular", "--sigma", "2 1 0 3")
    assert code == 0
    assert payload["unimodular"]
    assert payload["left"] == payload["right"]


def test_hecke_matrix_csv(tmp_path):
    target = tmp_path / "t2.csv"
    code, payload = invoke("hecke-matrix", "--n", "2", "--depth", "1", "--csv", str(target))
    assert code == 0
    assert len(payload["matrix"]) == len(payload["labels"]) == 4
    assert target.exists()


def test_qexp():
    code, payload = invoke("qexp", "--p", "2")
    assert code == 0
    assert payload["eigenvalue"] == "-24"
    assert payload["checked_up_to"] == 25
    code, payload = invoke("qexp", "--p", "7", "--N", "30")
    assert payload["eigenvalue"] == "-16744"
    assert payload["checked_up_to"] == 4


def test_moments_and_criterion():
    code, payload = invoke("moments", "--p", "2", "--nmax", "4")
    assert code == 0
    assert payload["degree"] == 3
    assert [row["kesten"] for row in payload["rows"]] == ["1", "0", "3", "0", "15"]
    assert all(row["moment"] == {"re": row["kesten"], "im": "0"} for row in payload["rows"])
    code, payload = invoke("criterion", "--p", "2", "--nmax", "4")
    assert code == 0
    assert payload["extends"]


def test_criterion_from_file(tmp_path):
    x = tmp_path / "x.json"
    x.write_text(json.dumps([{"matrix": "1 0 0 2", "coeff": {"re": "1", "im": "0"}}]))
    # a single delta at diag(1, 2) is not self-adjoint
    code, payload = invoke("criterion", "--x", str(x))
    assert code == 2
    assert payload is None


def test_phi():
    code, payload = invoke("phi", "--g", "1 0 0 2")
    assert code == 0
    assert payload["value"] == pytest.approx(2 * math.asin(0.25) / (math.pi / 3), abs=1e-8)


def test_gram(tmp_path):
    elements = tmp_path / "elements.json"
    elements.write_text(json.dumps(["1 0 0 1", "1 0 0 2", "1 1 0 1"]))
    code, payload = invoke("gram", "--file", str(elements))
    assert code == 0
    assert payload["psd"]
    assert payload["size"] == 3
    code, _ = invoke("gram", "--file", str(tmp_path / "missing.json"))
    assert code == 2


def test_verify_finite_is_deterministic():
    first = invoke("verify-finite", "--model", "s3_a3", "--cases", "2", "--seed", "5")
    second = invoke("verify-finite", "--model", "s3_a3", "--cases", "2", "--seed", "5")
    assert first[0] == 0
    assert first == second
    assert first[1]["failures"] == 0


def test_verify_finite_with_missing_model_file(tmp_path):
    code, payload = invoke("verify-finite", "--model", str(tmp_path / "missing.json"))
    assert code == 2
    assert payload is None


def test_verify_finite_save_and_runs(sqlite_db):
    code, payload = invoke("verify-finite", "--model", "s3_c2", "--cases", "2", "--save")
    assert code == 0
    code, listing = invoke("runs", "--limit", "5")
    assert code == 0
    assert [r["id"] for r in listing["runs"]] == [payload["run_id"]]
    assert listing["runs"][0]["target"] == "s3_c2"


@pytest.mark.parametrize(
    "argv",
    [
        ["cosets"],
        ["no-such-command"],
        ["cosets", "--sigma", "1 2 2 4"],
        ["cosets", "--sigma", "1 2 3"],
        ["qexp", "--p", "4"],
        ["qexp", "--p", "2", "--seed", "-1"],
        ["verify-finite", "--model", "a5"],
    ],
)
def test_usage_errors(argv):
    code, payload = invoke(*argv)
    assert code == 2
    assert payload is None


def test_help_exits_cleanly(capsys):
    assert run(["--help"]) == 0
