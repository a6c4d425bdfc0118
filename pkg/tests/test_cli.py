import json
import os
import subprocess
import sys

import numpy as np
import pytest

from hspan import MatrixFamily, write_instance


def run_cli(*args, env_extra=None):
    env = os.environ.copy()
    env.pop("HSPAN_SEED", None)
    if env_extra:
        env.update(env_extra)
    proc = subprocess.run([sys.executable, "-m", "hspan", *map(str, args)],
                          capture_output=True, text=True, env=env)
    return proc.returncode, proc.stdout, proc.stderr


def reports(stdout):
    return [json.loads(line) for line in stdout.splitlines() if line.strip()]


def strip_time(report):
    return {k: v for k, v in report.items() if k != "wall_time_ms"}


@pytest.fixture()
def instance(tmp_path):
    path = tmp_path / "inst.json"
    code, _, err = run_cli("gen", 4, 2, "--seed", 7, "--out", path)
    assert code == 0, err
    return path


def test_gen_writes_deterministic_bytes(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run_cli("gen", 3, 2, "--seed", 9, "--out", a)[0] == 0
    assert run_cli("gen", 3, 2, "--seed", 9, "--out", b)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert run_cli("gen", 3, 2, "--seed", 10, "--out", b)[0] == 0
    assert a.read_bytes() != b.read_bytes()


def test_gen_to_stdout_is_an_instance():
    code, out, _ = run_cli("gen", 3, 2, "--kind", "psd", "--seed", 1)
    assert code == 0
    obj = json.loads(out)
    assert obj["kind"] == "psd" and obj["n"] == 3 and len(obj["matrices"]) == 2


def test_gen_rejects_bad_sizes():
    code, _, err = run_cli("gen", 3, 1, "--rank-deficit", 3)
    assert code == 2
    assert "rank deficit" in err


def test_gen_rejects_unwritable_path(tmp_path):
    code, _, err = run_cli("gen", 2, 1, "--out", tmp_path / "missing" / "x.json")
    assert code == 2
    assert err


def test_span_reports_rank(tmp_path):
    path = tmp_path / "ident.json"
    write_instance(path, MatrixFamily([np.eye(3), np.eye(3)]), "general")
    code, out, _ = run_cli("span", path)
    assert code == 0
    (rep,) = reports(out)
    assert rep["command"] == "span"
    assert rep["instance"] == {"n": 3, "k": 2, "kind": "general", "seed": 0}
    assert rep["rank"] == 3
    assert len(rep["basis"]) == 3 and len(rep["basis"][0]) == 3


def test_span_psd_uses_product_range(tmp_path):
    path = tmp_path / "psd.json"
    ones = np.ones((4, 4))
    write_instance(path, MatrixFamily([ones, ones]), "psd")
    code, out, _ = run_cli("span", path)
    assert code == 0
    assert reports(out)[0]["rank"] == 1


def test_compare_basis_mode_passes(instance):
    code, out, _ = run_cli("compare", instance)
    assert code == 0
    (rep,) = reports(out)
    assert rep["mode"] == "basis"
    assert rep["span_rank"] == rep["oracle_rank"] == 4
    assert rep["distance"] <= 1e-8
    assert rep["match"] is True


def test_compare_random_mode_default_samples(instance):
    code, out, _ = run_cli("compare", instance, "--mode", "random", "--seed", 5)
    assert code == 0
    (rep,) = reports(out)
    assert rep["samples"] == 2 * 4 + 8
    assert rep["distance"] <= 1e-8


def test_compare_undersampled_exits_one(instance):
    code, out, _ = run_cli("compare", instance, "--mode", "random",
                           "--samples", 1, "--seed", 5)
    assert code == 1
    (rep,) = reports(out)
    assert rep["oracle_rank"] == 1
    assert rep["match"] is False


def test_compare_budget_exit(tmp_path):
    path = tmp_path / "big.json"
    assert run_cli("gen", 3, 11, "--seed", 2, "--out", path)[0] == 0
    code, out, err = run_cli("compare", path)
    assert code == 3
    assert out == ""
    assert "budget" in err


def test_malformed_file_exits_two(tmp_path):
    path = tmp_path / "garbage.json"
    path.write_text("{oops")
    for cmd in ("span", "compare", "verify"):
        code, out, err = run_cli(cmd, path)
        assert code == 2
        assert out == ""
        assert err


def test_verify_passes_and_reports(instance):
    code, out, _ = run_cli("verify", instance, "--trials", 20, "--seed", 3)
    assert code == 0
    (rep,) = reports(out)
    assert rep["passed"] is True
    assert rep["skipped"] == []
    assert len(rep["orthogonality_residuals"]) == 20
    assert len(rep["pairing_residuals"]) == 10
    assert set(rep["checks"]) == {"column_identity", "norm_trace", "pairing", "orthogonality"}


def test_verify_skips_tensor_checks_over_budget(tmp_path):
    path = tmp_path / "wide.json"
    assert run_cli("gen", 16, 4, "--seed", 4, "--out", path)[0] == 0
    code, out, _ = run_cli("verify", path, "--trials", 5)
    assert code == 0
    (rep,) = reports(out)
    assert rep["skipped"] == ["norm_trace", "pairing"]
    assert rep["passed"] is True


def test_seed_env_fallback(instance):
    code, out, _ = run_cli("compare", instance, "--mode", "random",
                           env_extra={"HSPAN_SEED": "5"})
    assert code == 0
    with_env = strip_time(reports(out)[0])
    code, out, _ = run_cli("compare", instance, "--mode", "random", "--seed", 5)
    assert code == 0
    assert with_env == strip_time(reports(out)[0])
    assert with_env["instance"]["seed"] == 5


def test_seed_flag_beats_env(instance):
    code, out, _ = run_cli("compare", instance, "--mode", "random", "--seed", 8,
                           env_extra={"HSPAN_SEED": "5"})
    assert code == 0
    assert reports(out)[0]["instance"]["seed"] == 8


def test_bad_seed_env_exits_two(instance):
    code, _, err = run_cli("span", instance, env_extra={"HSPAN_SEED": "abc"})
    assert code == 2
    assert "HSPAN_SEED" in err


def test_reports_deterministic_up_to_wall_time(instance):
    outs = []
    for _ in range(2):
        code, out, _ = run_cli("verify", instance, "--seed", 11)
        assert code == 0
        outs.append(strip_time(reports(out)[0]))
    assert outs[0] == outs[1]


def test_multi_file_order_and_worst_exit(tmp_path):
    good1 = tmp_path / "g1.json"
    good2 = tmp_path / "g2.json"
    bad = tmp_path / "bad.json"
    assert run_cli("gen", 3, 2, "--seed", 1, "--out", good1)[0] == 0
    assert run_cli("gen", 4, 2, "--seed", 2, "--out", good2)[0] == 0
    bad.write_text("[]")
    code, out, err = run_cli("compare", good1, good2, bad, "--jobs", 3)
    assert code == 2  # worst of {0, 0, 2}
    reps = reports(out)
    assert [r["instance"]["n"] for r in reps] == [3, 4]
    assert "bad.json" in err


def test_jobs_parallel_payload_matches_serial(tmp_path):
    paths = []
    for i in range(3):
        p = tmp_path / f"i{i}.json"
        assert run_cli("gen", 3 + i, 2, "--seed", i, "--out", p)[0] == 0
        paths.append(p)
    _, serial, _ = run_cli("verify", *paths, "--seed", 1)
    _, parallel, _ = run_cli("verify", *paths, "--seed", 1, "--jobs", 3)
    assert [strip_time(r) for r in reports(serial)] == [strip_time(r) for r in reports(parallel)]
