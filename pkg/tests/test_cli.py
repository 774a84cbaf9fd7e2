import io
import json
import subprocess
import sys

import pytest

from qform.cli import build_parser, parse_config, run


def _run(argv):
    out = io.StringIO()
    code = run(parse_config(argv), out)
    return code, out.getvalue()


def test_enumerate_json():
    code, out = _run(["enumerate", "--form", "Q34^3", "--n", "5"])
    assert code == 0
    data = json.loads(out)
    assert data["count"] == len(data["vectors"]) > 0
    assert [v["coords"] for v in data["vectors"]] == sorted(v["coords"] for v in data["vectors"])


def test_exceptions_payload():
    code, out = _run(["exceptions", "--form", "Q80^3", "--bound", "100"])
    assert code == 0
    assert json.loads(out) == {"bound": 100, "form": "Q80^3", "missing": [4, 68]}


def test_csv_and_text_formats():
    code, out = _run(["--format", "csv", "exceptions", "--form", "Q63^2", "--bound", "100"])
    assert code == 0 and out.splitlines() == ["n", "4", "25"]
    code, out = _run(["exceptions", "--form", "Q63^2", "--bound", "100", "--format", "text"])
    assert "{4, 25}" in out


def test_lambda2_with_isometry_check():
    code, out = _run(["lambda2", "--form", "Q24^6", "--check-isometric", "Q6^3"])
    assert code == 0 and json.loads(out)["isometric"] is True
    code, out = _run(["lambda2", "--form", "Q24^6", "--check-isometric", "Q7^1"])
    assert code == 1 and json.loads(out)["witness"] is None


def test_isometric_exit_codes():
    assert _run(["isometric", "--form", "Q34^3", "--form2", "2,4,6,4,0,2"])[0] == 0
    assert _run(["isometric", "--form", "Q34^3", "--form2", "Q34^2"])[0] == 1


def test_localrep():
    code, out = _run(["localrep", "--form", "N7", "--n", "10", "--p", "5"])
    assert code == 0 and json.loads(out)["represented"] is False
    code, out = _run(["localrep", "--form", "[[1,0],[0,1]]", "--n", "4", "--p", "2", "--primitive"])
    assert json.loads(out)["represented"] is False


def test_usage_errors():
    assert _run(["enumerate", "--form", "1 2 3", "--n", "4"])[0] == 2
    assert _run(["localrep", "--form", "N7", "--n", "10", "--p", "6"])[0] == 2
    assert _run(["verify", "--suite", "recipes", "--window", "5-9"])[0] == 2
    with pytest.raises(SystemExit):
        build_parser().parse_args(["verify", "--suite", "bogus"])


def test_corpus_error_exit(tmp_path):
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"id": "Q2^1"}\n')
    assert _run(["--corpus", str(bad), "corpus"])[0] == 3
    assert _run(["corpus", "--corpus", str(tmp_path / "missing.jsonl")])[0] == 3


def test_overflow_exit():
    assert _run(["enumerate", "--form", "Q34^3", "--n", str(2**64)])[0] == 4


def test_corpus_stats():
    code, out = _run(["corpus", "--stats"])
    data = json.loads(out)
    assert data["records"] == 152 and data["primitively_universal"] == 107


def _strip_times(data):
    for r in data["reports"]:
        r.pop("wall_time_ms", None)
    return data


def test_verify_json_is_reproducible_across_workers():
    a = _strip_times(json.loads(_run(["verify", "--suite", "watson", "--bound", "200"])[1]))
    b = _strip_times(json.loads(_run(["verify", "--suite", "watson", "--bound", "200", "--workers", "2"])[1]))
    assert a == b and a["passed"]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qform.cli", "exceptions", "--form", "Q80^3", "--bound", "100"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["missing"] == [4, 68]
