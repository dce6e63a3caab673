import json

from bgsplit import bundles
from bgsplit.cli import main
from bgsplit.errors import InternalSearchExhausted

EXT = "kind = laurent_matrix, n = 2\nx, 1\n0, x^-1\n"
ID2 = "kind = laurent_matrix, n = 2\n1, 0\n0, 1\n"
NON_UNIT = "kind = laurent_matrix, n = 2\n1, 1\n1, 1\n"
BAD = "kind = laurent_matrix, n = 2\nx^, 1\n0, 1\n"
BOLI = (
    "kind = monodromy_rep, n = 4, count = 3\n"
    "1, 1, 0, 0\n0, 1, 1, 0\n0, 0, 1, 1\n0, 0, 0, 1\n"
    "3, 1, 1, -1\n-4, -1, 1, 2\n0, 0, 3, 1\n0, 0, -4, -1\n"
    "-1, 0, 2, -1\n4, -1, 0, 1\n0, 0, -1, 0\n0, 0, 4, -1\n"
)
RESONANT = "kind = rat_matrix_list, n = 2, count = 2\n1, 0\n0, 0\n0, 1\n0, 0\n"
GAUSS = (
    "kind = scalar_ode, n = 2\n"
    "(31/21*x - 1/2)/(x^2 - x)\n"
    "(1/21)/(x^2 - x)\n"
)


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_split_identity(tmp_path, capsys):
    path = write(tmp_path, "id.txt", ID2)
    code, out, _ = run(capsys, "split", path)
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["indices"] == [0, 0]
    assert doc["command"] == "split"
    assert doc["inputs"]["file"].startswith("sha256:")


def test_determinism_byte_identical(tmp_path, capsys):
    path = write(tmp_path, "ext.txt", EXT)
    _, out1, _ = run(capsys, "split", path)
    _, out2, _ = run(capsys, "split", path)
    assert out1 == out2


def test_factor_verify_pipeline(tmp_path, capsys):
    path = write(tmp_path, "ext.txt", EXT)
    out_file = tmp_path / "factor.json"
    code, _, _ = run(capsys, "factor", path, "--out", str(out_file))
    assert code == 0
    doc = json.loads(out_file.read_text())
    assert doc["result"]["exponents"] == [1, -1]
    assert set(doc["certificate"]) == {"b", "c", "diagonal"}

    code, out, _ = run(capsys, "verify", path, str(out_file))
    assert code == 0
    verdict = json.loads(out)["result"]
    assert verdict["valid"] is True and verdict["failed_clause"] is None


def test_verify_reports_invalid_without_failing(tmp_path, capsys):
    path = write(tmp_path, "ext.txt", EXT)
    bogus = tmp_path / "bogus.json"
    bogus.write_text(json.dumps({
        "certificate": {"b": [["1", "0"], ["0", "1"]],
                        "c": [["1", "0"], ["0", "1"]],
                        "diagonal": [1, -1]}
    }))
    code, out, _ = run(capsys, "verify", path, str(bogus))
    assert code == 0
    verdict = json.loads(out)["result"]
    assert verdict["valid"] is False and verdict["failed_clause"] == "product diagonal"


def test_bolibrukh_counterexample(tmp_path, capsys):
    path = write(tmp_path, "boli.txt", BOLI)
    code, out, _ = run(capsys, "bolibrukh", path)
    assert code == 0
    result = json.loads(out)["result"]
    assert result["applies"] is True
    assert result["eigenvalue_product"] == "-1"
    assert result["invariant_subspace_witness"] == [0, 1]


def test_h0_h1_rr_flags(tmp_path, capsys):
    path = write(tmp_path, "ext.txt", EXT)
    code, out, _ = run(capsys, "h0", path, "-k", "0")
    assert code == 0 and json.loads(out)["result"]["dimension"] == 2
    code, out, _ = run(capsys, "h1", path, "-k", "-2")
    assert code == 0 and json.loads(out)["result"]["dimension"] == 2
    code, out, _ = run(capsys, "rr", path, "-k", "-2")
    doc = json.loads(out)["result"]
    assert code == 0 and doc["holds"] is True and doc["lhs"] == doc["rhs"] == -2


def test_iso_command(tmp_path, capsys):
    a = write(tmp_path, "a.txt", EXT)
    b = write(tmp_path, "b.txt", ID2)
    code, out, _ = run(capsys, "iso", a, b)
    assert code == 0
    result = json.loads(out)["result"]
    assert result["isomorphic"] is False
    assert result["splitting_a"] == [1, -1] and result["splitting_b"] == [0, 0]


def test_fuchs_ode_and_indicial(tmp_path, capsys):
    path = write(tmp_path, "gauss.txt", GAUSS)
    code, out, _ = run(capsys, "fuchs-ode", path)
    result = json.loads(out)["result"]
    assert code == 0 and result["holds"] is True
    assert result["lhs"] == "1" and result["rhs"] == "1"

    code, out, _ = run(capsys, "indicial", path, "-p", "0")
    result = json.loads(out)["result"]
    assert code == 0 and result["exponent_sum"] == "1/2"

    code, out, _ = run(capsys, "indicial", path, "-p", "oo")
    result = json.loads(out)["result"]
    values = {r["value"] for r in result["rational_roots"]}
    assert code == 0 and values == {"1/3", "1/7"}


def test_frobenius_command_and_resonant_domain_error(tmp_path, capsys):
    good = write(
        tmp_path, "frob.txt",
        "kind = rat_matrix_list, n = 2, count = 2\n1/2, 0\n0, 0\n0, 1\n1, 0\n",
    )
    code, out, _ = run(capsys, "frobenius", good, "-N", "1")
    doc = json.loads(out)
    assert code == 0
    assert doc["result"]["residual_order"] >= 1
    assert doc["certificate"]["s"][1] == [["0", "2"], ["2/3", "0"]]

    resonant = write(tmp_path, "res.txt", RESONANT)
    code, _, err = run(capsys, "frobenius", resonant, "-N", "2")
    assert code == 3 and "domain error" in err


def test_gauge_command(tmp_path, capsys):
    a = write(tmp_path, "a.txt", "kind = laurent_matrix, n = 1\n0\n")
    p = write(tmp_path, "p.txt", "kind = laurent_matrix, n = 1\nx\n")
    code, out, _ = run(capsys, "gauge", a, p)
    assert code == 0
    assert json.loads(out)["result"]["matrix"] == [["(-1)/(x)"]]


def test_fuchs_system_command(tmp_path, capsys):
    path = write(
        tmp_path, "sys.txt",
        "kind = fuchsian_system, n = 2, points = 0 1\n1, 0\n0, 0\n-1, 0\n0, 0\n",
    )
    code, out, _ = run(capsys, "fuchs-system", path)
    doc = json.loads(out)
    assert code == 0
    assert doc["result"]["holds"] is True and doc["result"]["trace_sum"] == "0"
    points = [entry["point"] for entry in doc["certificate"]["exponent_data"]]
    assert points == ["0", "1", "oo"]


def test_exit_codes(tmp_path, capsys):
    code, _, err = run(capsys, "definitely-not-a-command")
    assert code == 1 and "usage error" in err

    code, _, err = run(capsys, "split", str(tmp_path / "missing.txt"))
    assert code == 1 and "usage error" in err

    boli = write(tmp_path, "boli.txt", BOLI)
    code, _, err = run(capsys, "split", boli)
    assert code == 1 and "not usable here" in err

    bad = write(tmp_path, "bad.txt", BAD)
    code, _, err = run(capsys, "split", bad)
    assert code == 2 and "parse error" in err

    nonunit = write(tmp_path, "nonunit.txt", NON_UNIT)
    code, _, err = run(capsys, "split", nonunit)
    assert code == 3 and "domain error" in err

    code, _, err = run(capsys)
    assert code == 1


def test_usage_hardening(tmp_path, capsys):
    frob = write(
        tmp_path, "frob.txt",
        "kind = rat_matrix_list, n = 1, count = 1\n1/2\n",
    )
    code, _, err = run(capsys, "frobenius", frob, "-N", "-3")
    assert code == 1 and "nonnegative" in err

    good = write(tmp_path, "id.txt", ID2)
    code, _, err = run(capsys, "split", good, "--out", str(tmp_path / "no" / "x.json"))
    assert code == 1 and "cannot write" in err

    badcount = write(
        tmp_path, "badcount.txt",
        "kind = rat_matrix_list, n = 1, count = abc\n1\n",
    )
    code, _, err = run(capsys, "frobenius", badcount)
    assert code == 2 and "count must be an integer" in err


def test_internal_error_maps_to_exit_4(tmp_path, capsys, monkeypatch):
    path = write(tmp_path, "ext.txt", EXT)

    def explode(_):
        raise InternalSearchExhausted("synthetic defect")

    monkeypatch.setattr(bundles, "birkhoff_factor", explode)
    code, _, err = run(capsys, "factor", path)
    assert code == 4 and "internal consistency failure" in err


def test_text_format_and_out_flag(tmp_path, capsys):
    path = write(tmp_path, "id.txt", ID2)
    out_file = tmp_path / "result.txt"
    code, out, _ = run(capsys, "split", path, "--format", "text", "--out", str(out_file))
    assert code == 0 and out == ""
    content = out_file.read_text()
    assert "result.indices: [0, 0]" in content
