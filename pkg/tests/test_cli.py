import json

import pytest

from monobound.cli import (
    EXIT_MALFORMED,
    EXIT_OK,
    EXIT_UNSTABLE,
    EXIT_VALIDATION,
    ScanCache,
    main,
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip().startswith("{") else out


def write_input(tmp_path, obj, name="input.json"):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def test_cld(capsys):
    code, out = run_cli(capsys, "cld", "--ell", "3", "--d", "2")
    assert code == EXIT_OK
    assert out["order"] == {"factors": {"2": 4, "3": 1}, "value": "48"}

    code, out = run_cli(capsys, "cld", "--ell", "2", "--d", "1")
    assert out["order"]["value"] == "2"

    code, out = run_cli(capsys, "cld", "--ell", "7", "--d", "0")
    assert out["order"] == {"factors": {}, "value": "1"}


def test_cld_rejects_composite(capsys):
    code, out = run_cli(capsys, "cld", "--ell", "4", "--d", "2")
    assert code == EXIT_VALIDATION
    assert "error" in out


def test_cd(capsys):
    code, out = run_cli(capsys, "cd", "--d", "2", "--p", "7")
    assert code == EXIT_OK
    assert out["value"]["value"] == "48"
    assert out["certificate"]["stable"] is True

    code, out = run_cli(capsys, "cd", "--d", "1", "--p", "3")
    assert out["value"]["value"] == "2"

    code, out = run_cli(capsys, "cd", "--d", "0", "--p", "5")
    assert out["value"]["value"] == "1"


def test_cd_unstable_exit_code(capsys):
    code, out = run_cli(capsys, "cd", "--d", "2", "--p", "7",
                        "--scan-depth", "2")
    assert code == EXIT_UNSTABLE
    assert out["error"]["type"] == "UnstableCertificate"
    assert out["error"]["certificate"]["stable"] is False


def test_variety_bound_family(capsys, tmp_path):
    path = write_input(tmp_path, {"family": {"kind": "projective_space", "n": 2}})
    code, out = run_cli(capsys, "variety-bound", "--input", path, "--p", "5")
    assert code == EXIT_OK
    assert out["d_vector"] == [0, 1]
    assert out["product"]["value"] == "2"


def test_variety_bound_k3(capsys, tmp_path):
    path = write_input(tmp_path,
                       {"family": {"kind": "hypersurface", "n": 2, "degrees": [4]}})
    code, out = run_cli(capsys, "variety-bound", "--input", path, "--p", "7")
    assert code == EXIT_OK
    assert out["d_vector"] == [6, 22]
    assert len(out["factors"]) == 2
    assert all(cert["stable"] for cert in out["certificates"])
    # product = C_6 * C_22, in factored form
    product = {int(p): e for p, e in out["product"]["factors"].items()}
    f6 = {int(p): e for p, e in out["factors"][0]["factors"].items()}
    f22 = {int(p): e for p, e in out["factors"][1]["factors"].items()}
    assert product == {p: f6.get(p, 0) + f22.get(p, 0)
                       for p in set(f6) | set(f22)}


def test_variety_bound_explicit_invariants(capsys, tmp_path):
    path = write_input(tmp_path, {"invariants": {"n": 1, "b": [2], "c": []}})
    code, out = run_cli(capsys, "variety-bound", "--input", path, "--p", "7")
    assert code == EXIT_OK
    assert out["product"]["value"] == "48"


def test_variety_bound_negative_betti_exit_code(capsys, tmp_path):
    path = write_input(tmp_path, {"invariants": {"n": 2, "b": [0, 1], "c": [5]}})
    code, out = run_cli(capsys, "variety-bound", "--input", path, "--p", "5")
    assert code == EXIT_VALIDATION
    assert out["error"]["type"] == "NegativeBettiError"


def test_malformed_input_exit_code(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, out = run_cli(capsys, "variety-bound", "--input", str(path), "--p", "5")
    assert code == EXIT_MALFORMED

    path2 = write_input(tmp_path, {"neither": 1})
    code, out = run_cli(capsys, "variety-bound", "--input", path2, "--p", "5")
    assert code == EXIT_MALFORMED


def test_invariants_command(capsys, tmp_path):
    path = write_input(tmp_path,
                       {"family": {"kind": "hypersurface", "n": 2, "degrees": [4]}})
    code, out = run_cli(capsys, "invariants", "--input", path)
    assert code == EXIT_OK
    assert out["invariants"] == {"n": 2, "b": [0, 22], "c": [-4]}


def test_invariants_round_trip(capsys, tmp_path):
    # output of `invariants` feeds straight back into `variety-bound`
    path = write_input(tmp_path, {"family": {"kind": "projective_space", "n": 3}})
    _, out = run_cli(capsys, "invariants", "--input", path)
    path2 = write_input(tmp_path, out, name="roundtrip.json")
    code, out2 = run_cli(capsys, "variety-bound", "--input", path2, "--p", "5")
    assert code == EXIT_OK
    assert out2["d_vector"] == [0, 1, 0]


def test_descend_command(capsys, tmp_path):
    path = write_input(tmp_path, {"family": {"kind": "projective_space", "n": 3}})
    code, out = run_cli(capsys, "descend", "--input", path, "--steps", "2")
    assert code == EXIT_OK
    assert out["steps"] == [{"n": 2, "b": [0, 1], "c": [2]},
                            {"n": 1, "b": [0], "c": []}]

    path = write_input(tmp_path,
                       {"family": {"kind": "hypersurface", "n": 2, "degrees": [4]}})
    code, out = run_cli(capsys, "descend", "--input", path)
    assert out["steps"] == [{"n": 1, "b": [6], "c": []}]


def test_descend_curve_is_error(capsys, tmp_path):
    path = write_input(tmp_path, {"invariants": {"n": 1, "b": [2], "c": []}})
    code, out = run_cli(capsys, "descend", "--input", path)
    assert code == EXIT_VALIDATION


def test_wd_decompose(capsys, tmp_path):
    path = write_input(tmp_path, {"matrix": [["1", "1"], ["0", "1"]]})
    code, out = run_cli(capsys, "wd-decompose", "--input", path, "--tau", "1")
    assert code == EXIT_OK
    assert out["r"] == [["1", "0"], ["0", "1"]]
    assert out["n"] == [["0", "1"], ["0", "0"]]

    path = write_input(tmp_path, {"matrix": [["-1", "1"], ["0", "-1"]]})
    code, out = run_cli(capsys, "wd-decompose", "--input", path, "--tau", "1")
    assert out["r"] == [["-1", "0"], ["0", "-1"]]
    assert out["n"] == [["0", "-1"], ["0", "0"]]

    path = write_input(tmp_path, {"matrix": [["1", "2"], ["0", "1"]]})
    code, out = run_cli(capsys, "wd-decompose", "--input", path, "--tau", "2")
    assert out["n"] == [["0", "1"], ["0", "0"]]


def test_wd_decompose_rational_entries(capsys, tmp_path):
    path = write_input(tmp_path, {"matrix": [["1", "1/2"], ["0", "1"]]})
    code, out = run_cli(capsys, "wd-decompose", "--input", path, "--tau", "1/3")
    assert code == EXIT_OK
    assert out["n"] == [["0", "3/2"], ["0", "0"]]
    assert out["tau"] == "1/3"


def test_refined_command(capsys):
    code, out = run_cli(capsys, "refined", "--d", "2", "--p", "3")
    assert code == EXIT_OK
    assert out["tame_set"] == [1, 2, 3, 4, 6]
    assert out["tame_max"] == 6
    assert out["tame_lcm"] == 12
    assert out["wild_part"]["value"] == "3"


def test_cache_transparency(capsys, tmp_path):
    cache = str(tmp_path / "scan.cache")
    code, cold = run_cli(capsys, "cd", "--d", "2", "--p", "7", "--cache", cache)
    assert code == EXIT_OK and "cached" not in cold
    code, warm = run_cli(capsys, "cd", "--d", "2", "--p", "7", "--cache", cache)
    assert code == EXIT_OK and warm.pop("cached") is True
    assert warm == cold


def test_cache_corruption_is_cold_not_fatal(capsys, tmp_path):
    cache = tmp_path / "scan.cache"
    run_cli(capsys, "cd", "--d", "2", "--p", "7", "--cache", str(cache))
    cache.write_text("garbage!!")
    code, out = run_cli(capsys, "cd", "--d", "2", "--p", "7",
                        "--cache", str(cache))
    assert code == EXIT_OK
    assert "cached" not in out


def test_cache_env_var(capsys, tmp_path, monkeypatch):
    cache = str(tmp_path / "env.cache")
    monkeypatch.setenv("MONOBOUND_CACHE", cache)
    run_cli(capsys, "cd", "--d", "1", "--p", "5")
    code, out = run_cli(capsys, "cd", "--d", "1", "--p", "5")
    assert out.get("cached") is True


def test_cache_key_includes_depth(tmp_path):
    assert ScanCache.key(2, 7, 100) != ScanCache.key(2, 7, 200)
    assert ScanCache.key(2, 7, 100) != ScanCache.key(3, 7, 100)


def test_no_value_expansion(capsys):
    code, out = run_cli(capsys, "cld", "--ell", "3", "--d", "2",
                        "--no-value-expansion")
    assert code == EXIT_OK
    assert "value" not in out["order"]


def test_table_format(capsys):
    code = main(["cld", "--ell", "3", "--d", "2", "--format", "table"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert "order:" in out and '"2": 4' not in out.split("order:")[0]
