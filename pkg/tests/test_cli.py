"""The command-line surface: outputs, JSON modes, artifacts, determinism."""

import json

from artingeo.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_nf_command(capsys):
    code, payload = run_json(
        capsys, "--preset", "triangle345", "--json", "nf", "aBBAcbbCBacaacA"
    )
    assert code == 0
    assert payload["normal_form"] == "BAACBccbaccac"
    assert payload["length"] == 13 and payload["input_length"] == 15
    assert len(payload["log"]) == 15


def test_nf_identity(capsys):
    code, payload = run_json(capsys, "--preset", "da3", "--json", "nf", "")
    assert code == 0 and payload["normal_form"] == "" and payload["log"] == []


def test_geodesic_command(capsys):
    code, payload = run_json(capsys, "--preset", "da3", "--json", "geodesic", "abaB")
    assert code == 0 and payload["geodesic"] is False
    code, payload = run_json(capsys, "--preset", "da3", "--json", "geodesic", "aba")
    assert payload["geodesic"] is True and payload["unique_representative"] is False


def test_ball_command(capsys):
    code, payload = run_json(capsys, "--preset", "da3", "--json", "ball", "3")
    assert code == 0
    assert payload["sphere_sizes"] == {"0": 1, "1": 4, "2": 12, "3": 30}


def test_divisors_command(capsys):
    code, payload = run_json(
        capsys,
        "--preset",
        "counterexample433",
        "--allow-counterexample",
        "--json",
        "divisors",
        "babacabab",
        "1",
        "2",
    )
    assert code == 0
    assert payload["ld"] == "abab"  # the normal form of baba
    assert payload["ld_prime_failure"] == ["a", "b"]


def test_divisors_guard(capsys):
    code, payload = run_json(
        capsys, "--preset", "counterexample433", "--json", "divisors", "ab", "1", "2"
    )
    # LD and RD are fine, only LD' needs the hypothesis; the command reports it
    assert code in (0, 2)


def test_merge_and_compress_commands(capsys):
    code, payload = run_json(capsys, "--preset", "da3", "--json", "merge", "ab", "ab")
    assert code == 0 and payload["r"] == 1
    code, payload = run_json(capsys, "--preset", "da3", "--json", "compress", "ab", "ab")
    assert code == 0 and payload["word"]
    # compress outside a dihedral presentation is a precondition failure
    code, payload = run_json(
        capsys, "--preset", "triangle345", "--json", "compress", "ab", "ab"
    )
    assert code == 2 and "error" in payload


def test_error_json(capsys):
    code, payload = run_json(capsys, "--preset", "da3", "--json", "nf", "a?b")
    assert code == 2 and payload["type"] == "ValueError"
    code, payload = run_json(capsys, "--preset", "nonesuch.txt", "--json", "nf", "a")
    assert code == 2
    code, payload = run_json(
        capsys, "--preset", "counterexample433", "--json", "merge", "ab", "ba"
    )
    assert code == 2 and payload["type"] == "HypothesisError"


def test_repro_command(capsys):
    code, out = run(capsys, "repro-paper")
    assert code == 0
    assert "all examples reproduced" in out


def test_d1_artifacts_deterministic(tmp_path, capsys):
    out1 = tmp_path / "r1"
    out2 = tmp_path / "r2"
    for out in (out1, out2):
        code, _ = run(
            capsys,
            "--preset",
            "da3",
            "--out",
            str(out),
            "d1-scan",
            "--radius",
            "4",
            "--min-kl",
            "1",
            "2",
        )
        assert code == 0
    assert (out1 / "d1.csv").read_bytes() == (out2 / "d1.csv").read_bytes()
    assert (out1 / "d1_summary.json").read_bytes() == (out2 / "d1_summary.json").read_bytes()


def test_rd_check_artifacts_deterministic(tmp_path, capsys):
    outs = []
    for name in ("x", "y"):
        out = tmp_path / name
        code, _ = run(
            capsys,
            "--preset",
            "da3",
            "--out",
            str(out),
            "rd-check",
            "--radius",
            "4",
            "--trials",
            "5",
            "--seed",
            "3",
        )
        assert code == 0
        outs.append(out)
    assert (outs[0] / "rd.csv").read_bytes() == (outs[1] / "rd.csv").read_bytes()
    assert (outs[0] / "rd_summary.json").read_bytes() == (
        outs[1] / "rd_summary.json"
    ).read_bytes()


def test_d2_scan_command(tmp_path, capsys):
    out = tmp_path / "d2"
    code, _ = run(
        capsys, "--preset", "da3", "--out", str(out), "d2-scan", "--radius", "3"
    )
    assert code == 0
    header = (out / "d2.csv").read_text().splitlines()[0]
    assert header.startswith("presentation,g,k,l,S_size,T_size")


def test_presentation_file_argument(tmp_path, capsys):
    path = tmp_path / "pres.txt"
    path.write_text("n = 2\nmatrix =\n1 5\n5 1\n")
    code, payload = run_json(capsys, "--preset", str(path), "--json", "ball", "2")
    assert code == 0 and payload["sphere_sizes"]["2"] == 12


def test_ball_cache_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("ARTINGEO_CACHE", str(tmp_path))
    code, payload = run_json(capsys, "--preset", "da3", "--json", "ball", "3")
    assert code == 0 and payload["cache"]["loaded"] is False
    cache_files = list(tmp_path.glob("ball_*.json"))
    assert len(cache_files) == 1
    code, payload = run_json(capsys, "--preset", "da3", "--json", "ball", "3")
    assert code == 0 and payload["cache"]["loaded"] is True
