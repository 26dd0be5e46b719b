import io
import json
from pathlib import Path

import pandas as pd

from cli.main import main

SEQUENCES = Path(__file__).resolve().parents[1] / "data" / "sequences"


def _doc(name):
    return str(SEQUENCES / f"{name}.json")


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_family_documents(capsys):
    code, out = _run(capsys, "family", "geometric", "--C", "1/3", "--K", "auto")
    document = json.loads(out)
    assert code == 0
    assert document["params"]["C"] == "1/3" and document["params"]["K"] == 5
    assert document["prefix"][0] == "1/3"

    code, out = _run(capsys, "family", "ks")
    document = json.loads(out)
    assert document["family"] == "ks_counterexample"
    assert document["formulas"]["c_{2n}"] == "(n+1)/(3n+5)"
    assert document["prefix"][:3] == ["5/9", "1/4", "16/27"]

    code, out = _run(capsys, "family", "haar_eps", "--eps", "1/2", "--K", "auto")
    assert json.loads(out)["params"]["K"] == 5

    assert main(["family", "geometric", "--C", "1/2"]) == 2
    assert main(["family", "legendre"]) == 2
    print("✅ family command")


def test_check_exit_codes(capsys):
    code, out = _run(capsys, "check", _doc("power5_first"))
    assert code == 0 and out.strip().endswith("overall: pass")

    code, out = _run(capsys, "check", _doc("power2"))
    assert code == 1
    assert "at 3 margin=-3/8" in out

    code, out = _run(capsys, "check", _doc("chebyshev"))
    assert code == 0 and "chebyshev-consistent" in out
    print("✅ check command")


def test_linearize(capsys):
    code, out = _run(capsys, "linearize", _doc("ks_counterexample_switched"), "--entry", "3", "3", "4")
    assert out == "-128/135\n" and code == 1

    code, out = _run(capsys, "linearize", _doc("ks_counterexample"), "--switch", "--scan", "4")
    assert out.startswith("P: g(") and code == 1

    code, out = _run(capsys, "linearize", _doc("chebyshev"), "--entry", "2", "3", "5")
    assert out == "1/2\n" and code == 0

    code, out = _run(capsys, "linearize", _doc("geometric_two_thirds"), "--scan", "15", "--both-switch")
    assert code == 0
    assert out.splitlines() == ["P: all-nonnegative up to M=15", "P~: all-nonnegative up to M=15"]
    print("✅ linearize command")


def test_pd(capsys, tmp_path):
    code, out = _run(capsys, "pd", _doc("geometric_two_thirds"), "odd", "50")
    assert code == 0
    assert sum(line.endswith("certified") for line in out.splitlines()) == 50

    code, out = _run(capsys, "pd", _doc("chebyshev"), "even", "1")
    assert code == 1 and "N=1: failed at index 2, u = -1" in out

    certificates = tmp_path / "u.csv"
    code, out = _run(capsys, "pd", _doc("geometric_two_thirds"), "odd", "5", "--bounds", "--json",
                     "--certificates", str(certificates))
    report = json.loads(out)
    assert code == 0
    assert report["manifest"]["command"] == "pd"
    assert report["certificates"]["1"]["u"][0] == "1"
    assert all(item["overall"] for item in report["bounds"])
    frame = pd.read_csv(certificates)
    assert list(frame.columns) == ["N", "index", "u"]
    assert len(frame) == sum(2 * big + 1 for big in range(1, 6))
    print("✅ pd command")


def test_pd_bounds_on_generated_documents(capsys, tmp_path):
    target = tmp_path / "geometric.json"
    assert main(["family", "geometric", "--C", "1/3", "--K", "auto", "--out", str(target)]) == 0
    capsys.readouterr()
    assert json.loads(target.read_text())["params"]["variant"] == "second"

    # the second construction is the switch of the first: its even matrices are the certified ones
    code, out = _run(capsys, "pd", str(target), "even", "5", "--bounds")
    assert code == 0
    assert not [line for line in out.splitlines() if line.startswith("FAIL")]

    code, out = _run(capsys, "pd", str(target), "odd", "5", "--bounds")
    assert code == 1
    assert not [line for line in out.splitlines()
                if line.startswith(("FAIL proof-bounds", "FAIL ms-pairing"))]
    print("✅ Proof bounds run on the first construction whatever the document holds")


def test_spectrum_and_haar(capsys, tmp_path):
    csv_path = tmp_path / "eigenvalues.csv"
    code, out = _run(capsys, "spectrum", _doc("power5_first"), "--N", "50", "--csv", str(csv_path),
                     "--histogram", "--transform", "30")
    assert code == 0 and out.startswith("N=50\n")
    frame = pd.read_csv(csv_path)
    assert len(frame) == 50 and frame["eigenvalue"].is_monotonic_increasing

    code, out = _run(capsys, "haar", _doc("power5_first"), "--N", "20")
    assert code == 0
    assert "haar profile up to 20: odd-drop" in out
    print("✅ spectrum and haar commands")


def test_documents_from_stdin_and_errors(capsys, monkeypatch, tmp_path):
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps({"family": "chebyshev"})))
    code, out = _run(capsys, "linearize", "-", "--entry", "2", "3", "1")
    assert code == 0 and out == "1/2\n"

    assert main(["check", str(tmp_path / "missing.json")]) == 2
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert main(["check", str(broken)]) == 2
    assert main(["pd", _doc("chebyshev"), "diagonal", "1"]) == 2
    assert main(["pd", _doc("chebyshev"), "odd", "0"]) == 2
    print("✅ usage and IO errors exit with 2")


def test_exact_reports_are_reproducible(capsys, tmp_path):
    outputs = []
    for run in range(2):
        target = tmp_path / f"report{run}.json"
        assert main(["check", _doc("power5_first"), "--json", "--out", str(target)]) == 0
        outputs.append(target.read_bytes())
    assert outputs[0] == outputs[1]
    assert json.loads(outputs[0])["manifest"]["tool_version"]
    print("✅ identical manifests give identical reports")


def test_acceptance_suite_negative_control(capsys):
    code, out = _run(capsys, "verify-paper", "--items", "1", "10")
    assert code == 0 and "all acceptance items passed" in out

    code, out = _run(capsys, "verify-paper", "--items", "1", "--ks-prefix", "5/9", "1/5", "--json")
    report = json.loads(out)
    assert code == 1
    assert report["items"][0]["passed"] is False
    assert report["items"][0]["details"]["g~(3,3;4)"] != "-128/135"
    print("✅ tampered counterexample is caught")
