import json

import dgsamples
from heckespringer._jsonutil import dumps
from heckespringer.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_dlc_example(capsys):
    code, out, _ = run(capsys, "dlc", "--n", "2", "--s", "1,2", "--q", "2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["geometric_total"] == 4
    assert doc["algebraic_total"] == 4
    assert doc["equal"] is True
    assert doc["geometric_graded"] == {"0": 2, "1": 2}


def test_dlc_rank_mismatch_is_usage_error(capsys):
    code, _, err = run(capsys, "dlc", "--n", "3", "--s", "1,2", "--q", "2")
    assert code == 2
    assert "does not match" in err


def test_hecke_verify_clean_and_mutated(capsys):
    code, out, _ = run(capsys, "hecke-verify", "--n", "3", "--bound", "1", "--format", "json")
    assert code == 0
    assert json.loads(out)["all_zero"] is True
    code, out, _ = run(capsys, "hecke-verify", "--n", "2", "--bound", "1", "--mutate", "--format", "json")
    assert code == 1
    doc = json.loads(out)
    assert doc["all_zero"] is False and doc["failures"]


def test_hecke_mul_shorthands(capsys):
    code, out, _ = run(
        capsys, "hecke-mul", "--n", "2", "--lhs", "tee:2,1", "--rhs", "tee:2,1",
        "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    # (q-1) T_s + q on the basis: terms sorted with T_e first
    assert doc["product"] == [
        {"x": [0, 0], "w": [1, 2], "coeff": [[1, "1"]]},
        {"x": [0, 0], "w": [2, 1], "coeff": [[0, "-1"], [1, "1"]]},
    ]


def test_hecke_mul_document_input(tmp_path, capsys):
    doc = {
        "n": 2,
        "lhs": [{"x": [1, 0], "w": [1, 2], "coeff": [[0, "1"]]}],
        "rhs": [{"x": [0, 1], "w": [1, 2], "coeff": [[0, "1"]]}],
    }
    path = tmp_path / "mul.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "hecke-mul", "--input", str(path), "--format", "json")
    assert code == 0
    assert json.loads(out)["product"] == [
        {"x": [1, 1], "w": [1, 2], "coeff": [[0, "1"]]}
    ]


def test_truncate_output(capsys):
    code, out, _ = run(capsys, "truncate", "--s", "1,2", "--q", "4", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["dimension"] == 4 and len(doc["structure"]) == 16


def test_steinberg_nilpotent(capsys):
    code, out, _ = run(capsys, "steinberg", "--nilpotent", "3", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["b_stable"] is True
    assert doc["ext"]["graded_totals"] == {"0": 6, "2": 12, "4": 12, "6": 6}


def test_steinberg_fixed_point_with_weights(capsys):
    code, out, _ = run(
        capsys, "steinberg", "--s", "1,4", "--q", "4", "--sqrt-q", "2", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["frobenius"]["all_consistent"] is True


def test_dg_formality_good_and_bad(tmp_path, capsys):
    good = tmp_path / "good.json"
    good.write_text(dumps({**dgsamples.acyclic_pair().to_obj(), "r": "4"}))
    code, out, _ = run(capsys, "dg-formality", "--input", str(good), "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["formal"] is True
    assert doc["zigzag"]["certificates"]["all_ok"] is True

    bad = tmp_path / "bad.json"
    bad.write_text(dumps({**dgsamples.leibniz_violation(), "r": "4"}))
    code, out, _ = run(capsys, "dg-formality", "--input", str(bad), "--format", "json")
    assert code == 1
    doc = json.loads(out)
    assert doc["valid"] is False and doc["check"] == "leibniz"
    assert doc["witness"]["pair"] == ["u", "u"]


def test_dg_formality_purity_failure(tmp_path, capsys):
    doc_path = tmp_path / "flat.json"
    doc_path.write_text(dumps({**dgsamples.exterior_line_with_flat_f().to_obj(), "r": "4"}))
    code, out, _ = run(capsys, "dg-formality", "--input", str(doc_path), "--format", "json")
    assert code == 1
    doc = json.loads(out)
    assert doc["failure"] == "purity" and doc["degree"] == 1


def test_dg_formality_malformed_json(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "dg-formality", "--input", str(path))
    assert code == 2 and "malformed JSON" in err


def test_schemas(capsys):
    for kind in ("springer", "truncated-algebra", "dg-algebra", "zigzag"):
        code, out, _ = run(capsys, "schemas", "--type", kind, "--format", "json")
        assert code == 0
        assert json.loads(out)["title"]
    code, _, err = run(capsys, "schemas", "--type", "unknown")
    assert code == 2 and "unknown schema type" in err


def test_unknown_flag_is_usage_error(capsys):
    assert main(["dlc", "--nope", "1"]) == 2


def test_repeated_invocations_identical(capsys):
    outs = []
    for _ in range(2):
        _, out, _ = run(capsys, "dlc", "--n", "2", "--s", "1,2", "--q", "2", "--format", "json")
        outs.append(out)
    assert outs[0] == outs[1]
