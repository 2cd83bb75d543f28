from __future__ import annotations

import json
import subprocess
import sys

import pytest

from lambdagraph.cli import main
from lambdagraph.core import LambdaGraphSystem, find_isomorphism

from conftest import DATA, GOLDEN

Z2_ELL = str(DATA / "z2_golden_ell.json")
GOLDEN_MEAN = str(DATA / "golden_mean.json")


def run(capsys, *argv):
    status = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return status, out, err


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.mark.parametrize(
    "argv, golden",
    [
        (["canonical", GOLDEN_MEAN, "-L", "3", "-N", "2"], "canonical_golden_mean.json"),
        (["dyck-cantor", "-L", "2"], "dyck_cantor_2.json"),
        (["dyck-prop77"], "dyck_prop77.json"),
        (["skew-words", GOLDEN_MEAN, "--group", "Z2", "--labeling", Z2_ELL, "-k", "2"], "skew_words_golden_z2.json"),
        (["export-structure-matrices", str(DATA / "full2_lgs.json")], "structure_full2.json"),
    ],
)
def test_golden_outputs(capsys, argv, golden):
    status, out, _ = run(capsys, *argv)
    assert status == 0
    assert out == (GOLDEN / golden).read_text()


def test_output_is_deterministic(capsys):
    argv = ["canonical", GOLDEN_MEAN, "-L", "4"]
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first


def test_validate_ok(capsys):
    status, out, _ = run(capsys, "validate-lgs", DATA / "full2_lgs.json")
    doc = json.loads(out)
    assert status == 0
    assert doc["valid"] and doc["left_resolving"] and doc["dims"] == [1, 1, 1]


def test_validate_reports_violation(capsys):
    status, out, _ = run(capsys, "validate-lgs", DATA / "bad_iota_lgs.json")
    doc = json.loads(out)
    assert status == 1
    v = next(v for v in doc["violations"] if v["kind"] == "surjectivity")
    assert v["level"] == 0


def test_malformed_json_exits_2(capsys):
    status, out, err = run(capsys, "validate-lgs", DATA / "malformed.json")
    assert status == 2
    assert json.loads(out)["location"].endswith("malformed.json:1:37")
    assert err.startswith("error:")


def test_missing_option_exits_2(capsys):
    status, out, _ = run(capsys, "extend", DATA / "full2_lgs.json")
    assert status == 2
    assert "--group" in json.loads(out)["message"]


def test_negative_length_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["skew-words", GOLDEN_MEAN, "-k", "-1"])
    assert exc.value.code == 2


def test_sms_round_trip_is_byte_identical(capsys, tmp_path):
    _, lgs_out, _ = run(capsys, "canonical", GOLDEN_MEAN, "-L", "3")
    lgs_path = tmp_path / "lgs.json"
    lgs_path.write_text(lgs_out)
    _, sms_out, _ = run(capsys, "lgs-to-sms", lgs_path)
    sms_path = tmp_path / "sms.json"
    sms_path.write_text(sms_out)
    status, back, _ = run(capsys, "sms-to-lgs", sms_path)
    assert status == 0
    assert back == lgs_out


def test_extend_then_quotient(capsys, tmp_path):
    _, ext_out, _ = run(capsys, "extend", DATA / "full2_lgs.json", "--group", "Z3", "--labeling",
                        write(tmp_path, "ell.json", {"a": "1", "b": "0"}))
    ext_path = tmp_path / "ext.json"
    ext_path.write_text(ext_out)
    status, q_out, _ = run(capsys, "quotient", ext_path)
    assert status == 0
    doc = json.loads(q_out)
    assert doc["verification"]["ok"]
    base = LambdaGraphSystem.from_dict(doc["base"])
    original = LambdaGraphSystem.from_dict(json.loads((DATA / "full2_lgs.json").read_text()))
    assert find_isomorphism(base, original) is not None


def test_witness_commands(capsys, tmp_path):
    _, sms_out, _ = run(capsys, "canonical", GOLDEN_MEAN, "-L", "3", "-N", "1")
    sms = tmp_path / "gm.json"
    sms.write_text(sms_out)
    transfer = write(tmp_path, "b.json", {"0": "1", "1": "1"})
    status, w_out, _ = run(capsys, "gen-witness", sms, "--group", "Z2", "--labeling", Z2_ELL,
                           "--labeling-prime", Z2_ELL, "--transfer", transfer)
    assert status == 0
    witness = tmp_path / "w.json"
    witness.write_text(w_out)
    assert run(capsys, "verify-sse", sms, sms, "--witness", witness)[0] == 0
    status, out, _ = run(capsys, "verify-g-sse", sms, sms, "--witness", witness, "--labeling", Z2_ELL,
                         "--labeling-prime", Z2_ELL)
    assert status == 0 and json.loads(out)["ok"]
    other = write(tmp_path, "ell2.json", {"0": "1", "1": "1"})
    status, out, _ = run(capsys, "verify-g-sse", sms, sms, "--witness", witness, "--labeling", Z2_ELL,
                         "--labeling-prime", other)
    assert status == 1


def test_gen_witness_bad_transfer(capsys, tmp_path):
    bad = write(tmp_path, "b.json", {"0": "0", "1": "1"})
    status, out, _ = run(capsys, "gen-witness", GOLDEN_MEAN, "--group", "Z2", "--labeling", Z2_ELL,
                         "--labeling-prime", Z2_ELL, "--transfer", bad)
    # the input here is a spec, not a system, which is unusable
    assert status == 2
    _, lgs_out, _ = run(capsys, "canonical", GOLDEN_MEAN, "-L", "3", "-N", "1")
    lgs = tmp_path / "gm.json"
    lgs.write_text(lgs_out)
    status, out, _ = run(capsys, "gen-witness", lgs, "--group", "Z2", "--labeling", Z2_ELL,
                         "--labeling-prime", Z2_ELL, "--transfer", bad)
    doc = json.loads(out)
    assert status == 1
    assert doc["error"] == "transfer_equation" and len(doc["word"]) == 2


def test_check_thm56(capsys):
    status, out, _ = run(capsys, "check-thm56", GOLDEN_MEAN, "--group", "Z3", "--labeling",
                         DATA / "golden_mean_z3.json", "-k", "6")
    doc = json.loads(out)
    assert status == 0 and doc["ok"]
    assert doc["extension_vs_skew_of_spec"]["count"] == 3 * 21


def test_past_classes(capsys):
    status, out, _ = run(capsys, "past-classes", GOLDEN_MEAN, "-L", "2", "-N", "2")
    doc = json.loads(out)
    assert status == 0 and doc["count"] == 2 and doc["exact"]


def test_prop72_command(capsys):
    status, out, _ = run(capsys, "dyck-prop72", "-L", "3")
    assert status == 0 and json.loads(out)["ok"]


def test_prop77_same_labeling_exit_zero(capsys, tmp_path):
    ell = write(tmp_path, "ell.json", {"a1": "0", "a2": "0", "b1": "0", "b2": "0"})
    status, out, _ = run(capsys, "dyck-prop77", "--labeling", ell, "--labeling-prime", ell)
    assert status == 0
    assert json.loads(out)["not_conjugate"] is False


def test_text_rendering(capsys):
    status, out, _ = run(capsys, "past-classes", GOLDEN_MEAN, "-L", "1", "-N", "1", "--text")
    assert status == 0
    assert "count: 2" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "lambdagraph", "dyck-prop77"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["not_conjugate"] is True
