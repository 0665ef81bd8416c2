import json

from logbesov.cli import main
from logbesov.fileio import save_sfn
from logbesov.gallery import make_exponential
from logbesov.grid import GridSpec


def test_partition_check_verb(capsys, tmp_path):
    code = main(["--grid", "J=10", "--out", str(tmp_path), "partition-check"])
    assert code == 0
    out = capsys.readouterr().out
    assert "[PASS]" in out and "[FAIL]" not in out
    assert (tmp_path / "partition-check.json").exists()


def test_norm_verb_from_file(capsys, tmp_path):
    g = GridSpec(1, 10)
    f = make_exponential(g, (1 << 5,))
    path = tmp_path / "f.sfn"
    save_sfn(path, f)
    code = main(
        ["norm", "--space", "besov", "--s", "0", "--b", "1", "--p", "inf",
         "--q", "inf", "--input", str(path)]
    )
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert abs(payload["value"] - (1 + 5) ** 1) < 1e-9
    assert "tail" in payload and "per_level" in payload


def test_norm_verb_gallery_dini(capsys):
    code = main(["--grid", "J=10", "norm", "--space", "dini", "--gallery", "exp:k=1"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert 0.3 < payload["value"] < 0.7


def test_criteria_verb(capsys, tmp_path):
    code = main(
        ["--grid", "J=11", "--out", str(tmp_path), "criteria", "--p", "1",
         "--b", "0.5", "--gallery", "exp:m=5"]
    )
    assert code == 0
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["verdict"] == "MULTIPLIER"
    assert set(report["terms"]) == {"linf", "term2", "term3", "combined"}
    assert "per_level" in report and "tails" in report


def test_lowerbound_verb(capsys):
    code = main(
        ["--grid", "J=12", "lowerbound", "--f", "exp:m=8,neg",
         "--family", "packets:cases=1-5,m=8,b=0", "--p", "4", "--b", "0"]
    )
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["lower_bound"] > 1.0
    assert payload["argmax"].startswith("case")


def test_exp_growth_verb_exit_code(capsys, tmp_path):
    code = main(
        ["--grid", "J=11", "--format", "csv", "--out", str(tmp_path),
         "exp-growth", "--p-list", "1", "--b-list", "0,-2", "--m-min", "3",
         "--m-max", "7"]
    )
    assert code == 0
    csv_text = (tmp_path / "exp-growth.csv").read_text()
    header = csv_text.splitlines()[0].split(",")
    assert header == ["p", "b", "m", "value", "predicted", "ratio", "asymptote"]


def test_error_exit_code(capsys):
    code = main(["norm", "--space", "besov"])  # no input source
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_partition_export(tmp_path):
    out = tmp_path / "p.dpu"
    code = main(["--grid", "J=8", "--out", str(tmp_path), "partition-check",
                 "--export", str(out)])
    assert code == 0
    from logbesov.fileio import load_dpu

    part, symbols = load_dpu(out)
    assert len(symbols) == part.k_max + 1


def test_norm_verb_tl_and_diff(capsys):
    code = main(["--grid", "J=10", "norm", "--space", "tl", "--s", "0", "--b", "0",
                 "--q", "1", "--gallery", "exp:m=5"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert abs(payload["value"] - 1.0) < 1e-9
    code = main(["--grid", "J=10", "norm", "--space", "diff", "--b", "1",
                 "--p", "inf", "--q", "inf", "--m", "1", "--gallery", "exp:k=1"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["value"] > 1.0


def test_charfun_verb(capsys):
    code = main(["--grid", "J=12", "charfun", "--shape", "cube"])
    assert code == 0
    out = capsys.readouterr().out
    assert "[FAIL]" not in out


def test_sandwich_verb(capsys):
    code = main(["--grid", "J=12", "sandwich", "--m-min", "4", "--m-max", "9"])
    assert code == 0
    out = capsys.readouterr().out
    assert "[FAIL]" not in out
