import json

import pandas as pd
import pytest

from app import run_cli


def run(capsys, *argv):
    code = run_cli(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None), out


def test_spectra_of_complete_graph(capsys):
    code, report, _ = run(capsys, "spectra", "--family", "complete", "--params", "n=4")
    assert code == 0
    assert report["command"] == "spectra"
    assert report["command_line"] == ["spectra", "--family", "complete", "--params", "n=4"]
    assert report["graph"]["name"] == "K4"
    eigenvalues = report["result"]["eigenvalues"]
    assert [e["exact"] for e in eigenvalues] == ["0", "4"]
    assert [e["numeric"] for e in eigenvalues] == pytest.approx([0.0, 4.0])
    assert report["result"]["tolerance"] == pytest.approx(6e-8)
    assert [e["multiplicity"] for e in eigenvalues] == [1, 3]
    assert report["tolerances"]["support"] == 1e-7
    assert "wall_time_seconds" not in report


def test_total_spectrum_uses_closed_form(capsys):
    code, report, _ = run(capsys, "spectra", "--family", "total", "--base", "petersen")
    assert code == 0
    result = report["result"]
    assert result["source"] == "total-closed-form"
    assert result["eigenvalues"][1]["exact"] == "(9-1*sqrt(17))/2"
    assert report["graph"]["total_of"]["name"] == "Petersen"


def test_build_total_graph(capsys):
    code, report, _ = run(capsys, "build", "--family", "total", "--base", "complete", "--params", "n=4", "--edges")
    assert code == 0
    result = report["result"]
    assert (result["vertices"], result["edges"], result["regularity"]) == (10, 30, 6)
    assert result["labels"][0] == "v0"
    assert result["labels"][4] == "e0-1"
    assert len(result["edge_list"]) == 30


def test_output_is_byte_stable(capsys):
    argv = ("certify-pst", "--family", "cocktail_party", "--params", "m=6", "--pair", "0,1", "--partner", "6,7")
    _, first, raw_first = run(capsys, *argv)
    _, _, raw_second = run(capsys, *argv)
    assert raw_first == raw_second
    assert first["result"]["verdict"] == "yes"
    assert json.dumps(first, sort_keys=True, indent=2, ensure_ascii=False) == raw_first.strip()


def test_timing_flag(capsys):
    _, report, _ = run(capsys, "list-cases", "--timing")
    assert report["wall_time_seconds"] >= 0


def test_verify_theorem(capsys):
    code, report, _ = run(capsys, "verify-theorem", "--case", "thm-tkn", "--n", "5")
    assert code == 0
    assert report["result"]["status"] == "pass"
    assert report["graph"] is None


def test_unknown_case_exits_with_error(capsys):
    code, report, _ = run(capsys, "verify-theorem", "--case", "nope")
    assert code == 1
    assert report["code"] == "unknown-case"


@pytest.mark.parametrize("argv", [
    ("spectra", "--family", "grid", "--params", "n=3"),
    ("spectra", "--family", "total"),
    ("spectra",),
    ("amplitude", "--family", "complete", "--params", "n=4", "--pair", "0,1", "--partner", "2,3"),
    ("support", "--family", "complete", "--params", "n=4", "--pair", "0"),
])
def test_usage_errors(capsys, argv):
    code, report, _ = run(capsys, *argv)
    assert code == 2
    assert report == {"status": 1, "code": "usage-error", "msg": report["msg"]}


def test_bad_flag_exits_two(capsys):
    assert run_cli(["spectra", "--bogus"]) == 2


def test_scan_guard(capsys):
    code, report, _ = run(capsys, "scan-pst", "--family", "total", "--base", "cocktail_party", "--params", "m=6")
    assert code == 1
    assert report["code"] == "guard-violation"


def test_certify_without_exact_spectrum(capsys):
    code, report, _ = run(
        capsys, "certify-pst", "--family", "cycle", "--params", "n=5", "--pair", "0,1", "--partner", "2,3",
    )
    assert code == 1
    assert report["code"] == "certification-unavailable"


def test_invalid_family_params(capsys):
    code, report, _ = run(capsys, "spectra", "--family", "complete", "--params", "n=1")
    assert code == 1
    assert report["code"] == "invalid-parameter"


def test_scan_cocktail_party(capsys):
    code, report, _ = run(capsys, "scan-pst", "--family", "cocktail_party", "--params", "m=6", "--max-workers", "2")
    assert code == 0
    assert report["result"]["pst_pairs"] == 30


def test_support_and_cospectral(capsys):
    code, report, _ = run(
        capsys, "support", "--family", "cocktail_party", "--params", "m=6", "--pair", "0,1", "--partner", "6,7",
    )
    assert code == 0
    assert report["result"]["support"] == pytest.approx([10.0, 12.0])
    assert report["result"]["strongly_cospectral"] is True

    code, report, _ = run(
        capsys, "cospectral", "--family", "hypercube", "--params", "d=3", "--pair", "0,1", "--partner", "6,7",
    )
    assert code == 0
    assert report["result"]["plus_set"] == pytest.approx([2.0, 6.0])
    assert report["result"]["minus_set"] == pytest.approx([4.0])


def test_amplitude_at_time(capsys):
    code, report, _ = run(
        capsys, "amplitude", "--family", "cocktail_party", "--params", "m=6",
        "--pair", "0,1", "--partner", "6,7", "--time", "1.5707963267948966",
    )
    assert code == 0
    assert report["result"]["fidelity"] == pytest.approx(1.0, abs=1e-10)
    assert set(report["result"]["amplitude"]) == {"re", "im"}


def test_amplitude_sweep_csv(capsys, tmp_path):
    target = tmp_path / "sweep" / "cp6.csv"
    code, report, _ = run(
        capsys, "amplitude", "--family", "cocktail_party", "--params", "m=6",
        "--pair", "0,1", "--partner", "6,7", "--sweep", "0:3.141592653589793:5", "--csv", str(target),
    )
    assert code == 0
    assert report["result"]["sweep"]["points"] == 5
    assert report["result"]["sweep"]["best_fidelity"] == pytest.approx(1.0, abs=1e-10)
    frame = pd.read_csv(target)
    assert list(frame.columns) == ["time", "fidelity"]
    assert len(frame) == 5


def test_search_pgst(capsys):
    code, report, _ = run(
        capsys, "search-pgst", "--family", "cocktail_party", "--params", "m=6",
        "--pair", "0,1", "--partner", "6,7", "--epsilon", "0.05", "--ell-max", "2000",
    )
    assert code == 0
    result = report["result"]
    assert result["hypothesis_check"] == "non-bipartite"
    assert result["reached_target"] is True
    assert result["ell_max"] == 2000


def test_search_pgst_same_pair(capsys):
    code, report, _ = run(
        capsys, "search-pgst", "--family", "cocktail_party", "--params", "m=6",
        "--pair", "0,1", "--partner", "0,1", "--ell-max", "0",
    )
    assert code == 0
    result = report["result"]
    assert result["hypothesis_check"] is None
    assert result["evaluated"] == 1
    assert result["partner"] == [0, 1]


def test_search_pgst_takes_base_graph(capsys):
    code, report, _ = run(
        capsys, "search-pgst", "--family", "total", "--base", "cocktail_party", "--params", "m=6",
        "--pair", "0,1", "--partner", "6,7",
    )
    assert code == 2
    assert report["code"] == "usage-error"


def test_edge_list_file_with_total(capsys, tmp_path):
    path = tmp_path / "k4.txt"
    path.write_text("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
    code, report, _ = run(capsys, "build", "--graph", str(path), "--total")
    assert code == 0
    assert report["result"]["vertices"] == 10
    assert len(report["graph"]["sha256"]) == 64
    assert report["graph"]["total_of"]["name"] == "k4"


def test_listings(capsys):
    _, families, _ = run(capsys, "list-families")
    assert {f["name"] for f in families["result"]["families"]} >= {"complete", "hypercube", "petersen"}
    _, cases, _ = run(capsys, "list-cases")
    assert len(cases["result"]["cases"]) == 10


def test_tolerance_override(capsys, monkeypatch):
    monkeypatch.setenv("PAIRWALK_TOL", "support=1e-6")
    _, report, _ = run(capsys, "spectra", "--family", "complete", "--params", "n=3")
    assert report["tolerances"]["support"] == 1e-6


def test_bad_tolerance_override(capsys, monkeypatch):
    monkeypatch.setenv("PAIRWALK_TOL", "nonsense=1")
    code, report, _ = run(capsys, "list-families")
    assert code == 1
    assert report["code"] == "invalid-parameter"


def test_verify_theorem_runs_under_overridden_tolerances(capsys, monkeypatch):
    monkeypatch.setenv("PAIRWALK_TOL", "support=0.9,cospectral=0.9")
    code, report, _ = run(capsys, "verify-theorem", "--case", "lemma-support-pairing")
    assert code == 1
    assert report["code"] == "numeric-failure"
