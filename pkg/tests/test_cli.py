"""Command-line interface: output formats, JSON serialization, exit codes."""

import json

import pytest

from detcodes import cli, detcode, gf


def run(args, capsys):
    code = cli.dispatch(args)
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------


def test_spectrum_both_paths_match(capsys):
    code, out, _ = run(
        ["spectrum", "--q", "2", "--l", "2", "--m", "2", "--t", "1"], capsys
    )
    assert code == 0
    assert "[closed] 0:1  4:9  6:6" in out
    assert "[brute] 0:1  4:9  6:6" in out
    assert "MATCH" in out


def test_spectrum_json_counts_are_strings(capsys):
    code, out, _ = run(
        ["spectrum", "--q", "3", "--l", "2", "--m", "2", "--t", "1",
         "--format", "json", "--path", "closed"],
        capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["length"] == 16
    assert payload["dimension"] == 4
    assert payload["paths"] == ["closed"]
    for entry in payload["spectrum"]:
        assert isinstance(entry["count"], str)
    got = {e["w"]: int(e["count"]) for e in payload["spectrum"]}
    assert got == {0: 1, 9: 32, 12: 48}


def test_spectrum_affine(capsys):
    code, out, _ = run(
        ["spectrum", "--q", "2", "--l", "2", "--m", "2", "--t", "1",
         "--mode", "affine"],
        capsys,
    )
    assert code == 0
    assert "[closed] 0:1  4:9  6:6" in out
    assert "MATCH" in out


def test_spectrum_extension_field(capsys):
    code, out, _ = run(
        ["spectrum", "--q", "4", "--l", "2", "--m", "2", "--t", "1",
         "--format", "json"],
        capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["match"] is True
    assert payload["q"] == 4


# ---------------------------------------------------------------------------
# ghw
# ---------------------------------------------------------------------------


def test_ghw_table(capsys):
    code, out, _ = run(
        ["ghw", "--q", "2", "--l", "2", "--m", "2", "--t", "1"], capsys
    )
    assert code == 0
    lines = [ln for ln in out.splitlines() if ln and ln[0] != "#"]
    # header row + 4 ranks, all brute-confirmed
    assert len(lines) == 5
    for ln in lines[1:]:
        assert ln.rstrip().endswith("yes")


def test_ghw_json_values(capsys):
    code, out, _ = run(
        ["ghw", "--q", "2", "--l", "2", "--m", "3", "--t", "1",
         "--format", "json"],
        capsys,
    )
    assert code == 0
    payload = json.loads(out)
    rows = {row["r"]: row for row in payload["ghw"]}
    assert rows[1]["value"] == "8"
    assert rows[4]["value"] == "18"
    assert rows[5]["kind"] == "bounds"
    assert rows[5]["lower"] == "19" and rows[5]["upper"] == "21"
    assert rows[5]["brute_confirmed"] is True
    assert rows[6]["value"] == "21"


def test_ghw_affine_scaling_and_range(capsys):
    code, out, _ = run(
        ["ghw", "--q", "2", "--l", "2", "--m", "2", "--t", "1",
         "--mode", "affine", "--r", "1..2", "--format", "json"],
        capsys,
    )
    assert code == 0
    payload = json.loads(out)
    rows = {row["r"]: row for row in payload["ghw"]}
    assert set(rows) == {1, 2}
    assert rows[1]["value"] == "4"  # (q-1) * 4 with q = 2
    code, out, _ = run(
        ["ghw", "--q", "3", "--l", "2", "--m", "2", "--t", "1",
         "--mode", "affine", "--r", "1", "--format", "json"],
        capsys,
    )
    rows = {row["r"]: row for row in json.loads(out)["ghw"]}
    assert rows[1]["value"] == "18"  # (3-1) * 9


def test_ghw_requires_t1(capsys):
    code, _, err = run(
        ["ghw", "--q", "2", "--l", "2", "--m", "2", "--t", "2"], capsys
    )
    assert code == 2
    assert "t=1" in err


# ---------------------------------------------------------------------------
# count
# ---------------------------------------------------------------------------


def test_count_table(capsys):
    code, out, _ = run(["count", "--q", "2", "--l", "2", "--m", "2", "--t", "1"], capsys)
    assert code == 0
    assert "n_hat = 9" in out
    assert "n     = 10" in out
    assert "k     = 4" in out
    assert "mu_1 = 9" in out


def test_count_json(capsys):
    code, out, _ = run(
        ["count", "--q", "3", "--l", "2", "--m", "2", "--t", "1",
         "--format", "json"],
        capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["length_projective"] == "16"
    assert payload["length_affine"] == "33"
    assert payload["dimension"] == 4
    assert payload["mu"] == {"0": "1", "1": "32", "2": "48"}


# ---------------------------------------------------------------------------
# genmat
# ---------------------------------------------------------------------------


def test_genmat_roundtrip(tmp_path, capsys):
    out_file = tmp_path / "gen.txt"
    code, _, _ = run(
        ["genmat", "--q", "2", "--l", "2", "--m", "2", "--t", "1",
         "--out", str(out_file)],
        capsys,
    )
    assert code == 0
    text = out_file.read_text()
    header, *rows = text.strip().splitlines()
    assert header == "2 2 2 1 projective 9 4"
    assert len(rows) == 4
    field = gf.make_field(2, 1)
    dom = detcode.make_domain(field, 2, 2, 1, "projective")
    gen = detcode.generator_matrix(dom)
    assert [list(map(int, r.split())) for r in rows] == gen.tolist()


def test_genmat_stdout(capsys):
    code, out, _ = run(
        ["genmat", "--q", "2", "--l", "2", "--m", "2", "--t", "2"], capsys
    )
    assert code == 0
    assert out.splitlines()[0] == "2 2 2 2 projective 15 4"


# ---------------------------------------------------------------------------
# rank1max
# ---------------------------------------------------------------------------


def test_rank1max(capsys):
    code, out, _ = run(
        ["rank1max", "--q", "2", "--l", "2", "--m", "2", "--r", "3",
         "--format", "json"],
        capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["max_rank1"] == "5"
    assert payload["bound"] == "5"
    assert payload["bound_is_coset_argument"] is True
    assert payload["witness"] == [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def test_verify_battery_passes(capsys):
    code, out, _ = run(
        ["verify", "--q", "2", "--l", "2", "--m", "2", "--t", "1"], capsys
    )
    assert code == 0
    assert "FAIL" not in out
    assert "OK:" in out


def test_verify_battery_extension_field(capsys):
    code, out, _ = run(
        ["verify", "--q", "4", "--l", "2", "--m", "2", "--t", "2"], capsys
    )
    assert code == 0
    assert "FAIL" not in out


# ---------------------------------------------------------------------------
# exit codes for bad inputs
# ---------------------------------------------------------------------------


def test_exit_code_parameter_errors(capsys):
    # composite q
    code, _, err = run(["count", "--q", "6", "--l", "2", "--m", "2", "--t", "1"], capsys)
    assert code == 2
    # l > m
    code, _, err = run(["count", "--q", "2", "--l", "3", "--m", "2", "--t", "1"], capsys)
    assert code == 2
    # t > l
    code, _, err = run(
        ["spectrum", "--q", "2", "--l", "2", "--m", "2", "--t", "3"], capsys
    )
    assert code == 2
    # projective t = 0 variety is empty
    code, _, err = run(
        ["genmat", "--q", "2", "--l", "2", "--m", "2", "--t", "0"], capsys
    )
    assert code == 2


def test_exit_code_budget(capsys):
    code, _, err = run(
        ["spectrum", "--q", "2", "--l", "6", "--m", "6", "--t", "3"], capsys
    )
    assert code == 3
    assert "budget" in err.lower()


def test_out_file_writing(tmp_path, capsys):
    out_file = tmp_path / "spec.json"
    code, _, _ = run(
        ["spectrum", "--q", "2", "--l", "2", "--m", "2", "--t", "1",
         "--format", "json", "--out", str(out_file)],
        capsys,
    )
    assert code == 0
    payload = json.loads(out_file.read_text())
    assert payload["match"] is True


def test_console_entry_point():
    import subprocess
    import sys

    out = subprocess.run(
        [sys.executable, "-m", "detcodes", "count",
         "--q", "2", "--l", "2", "--m", "3", "--t", "1"],
        capture_output=True, text=True,
    )
    assert out.returncode == 0
    assert "n_hat = 21" in out.stdout
