import json

import numpy as np
import pytest

from specfam.cli import main
from specfam.mmio import read_matrix_market


def _load(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def test_verify_trivial_diagonal_passes(tmp_path):
    out = tmp_path / "r.json"
    code = main(["verify", "--kind", "diagonal", "--spectrum", "0", "--out", str(out)])
    assert code == 0
    doc = _load(out)
    assert doc["status"] == "pass"
    assert all(c["passed"] for c in doc["checks"])
    assert {"tool", "input", "checks", "family", "split", "quadrature"} <= set(doc)


def test_verify_deterministic_apart_from_timestamp(tmp_path):
    texts = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        assert main(["verify", "--kind", "random", "--dim", "8", "--seed", "42",
                     "--out", str(out)]) == 0
        doc = _load(out)
        doc.pop("generated_at")
        texts.append(json.dumps(doc, sort_keys=True))
    assert texts[0] == texts[1]


def test_verify_report_contents(tmp_path):
    out = tmp_path / "r.json"
    assert main(["verify", "--kind", "random", "--dim", "9", "--seed", "5",
                 "--mode", "complex", "--out", str(out)]) == 0
    doc = _load(out)
    names = {c["name"] for c in doc["checks"]}
    assert {"shift_inclusion", "square_identity", "inverse_inclusion", "square_chain",
            "strict_growth", "sandwich", "route_equality", "split_commutation",
            "split_signs", "split_spectra", "form_identity", "summand_sign_forms",
            "quadrature_moment_bounds", "quadrature_cell_bounds",
            "stieltjes_moments", "stieltjes_bilinear", "density"} <= names
    for c in doc["checks"]:
        assert c["statement"]
        assert isinstance(c["residual"], float)
    rows = doc["quadrature"]
    assert [row["k"] for row in rows] == list(range(1, 65))
    for row in rows:
        assert row["err1"] <= row["bound1"] + 1e-9
        assert row["err2"] <= row["bound2"] + 1e-9
    assert doc["family"]["jump_points"] == sorted(doc["family"]["jump_points"])
    assert doc["split"]["rank_minus"] + doc["split"]["rank_plus"] == 9


def test_verify_failure_exit_code_and_ordering(tmp_path):
    out = tmp_path / "r.json"
    code = main(["verify", "--kind", "random", "--dim", "8", "--seed", "1",
                 "--tol-scale", "1e-12", "--out", str(out)])
    assert code == 1
    doc = _load(out)
    assert doc["status"] == "fail"
    assert not doc["checks"][0]["passed"]  # failing records come first


def test_gen_analyze_split_reconstruct(tmp_path):
    mtx = tmp_path / "op.mtx"
    assert main(["gen", "--kind", "random", "--dim", "6", "--seed", "3",
                 "--mode", "complex", "--out", str(mtx)]) == 0
    a = read_matrix_market(mtx)
    assert a.shape == (6, 6)

    out = tmp_path / "analyze.json"
    assert main(["analyze", "--input", str(mtx), "--out", str(out)]) == 0
    doc = _load(out)
    assert len(doc["family"]["jump_points"]) == sum(
        1 for _ in doc["family"]["increment_ranks"]
    )
    assert sum(doc["family"]["increment_ranks"]) == 6

    out = tmp_path / "split.json"
    assert main(["split", "--input", str(mtx), "--out", str(out)]) == 0
    doc = _load(out)
    assert doc["split"]["beta"] == 1.5
    assert doc["split"]["residuals"]["commutation"] <= 1e-9

    out = tmp_path / "quad.json"
    assert main(["reconstruct", "--kind", "laplacian1d", "--dim", "12",
                 "--k-max", "16", "--out", str(out)]) == 0
    doc = _load(out)
    assert [row["k"] for row in doc["quadrature"]] == list(range(1, 17))


def test_analyze_dense_increments(tmp_path):
    out = tmp_path / "analyze.json"
    assert main(["analyze", "--kind", "diagonal", "--spectrum", "1,2", "--dense",
                 "--out", str(out)]) == 0
    doc = _load(out)
    dense = doc["family"]["dense_increments"]
    np.testing.assert_array_equal(np.array(dense[0]), np.diag([1.0, 0.0]))


def test_usage_and_io_errors():
    assert main(["verify", "--kind", "diagonal"]) == 2  # missing spectrum
    assert main(["analyze", "--input", "/nonexistent/file.mtx"]) == 2
    with pytest.raises(SystemExit):
        main(["verify", "--kind", "bogus"])  # argparse exits 2
    with pytest.raises(SystemExit):
        main([])
