import json
import subprocess
import sys
from pathlib import Path

import numpy as np

from adaptive_bandits import cli
from adaptive_bandits.environments import Instance
from adaptive_bandits.verify import Check, VerifyReport

CONFIG = """
name = "tiny"
horizon = 25
trials = 2

[instance]
generator = "sphere"
d = 3
num_arms = 8
noise = { kind = "two_point", scale = 0.05 }

[[policies]]
kind = "LOSAN"

[[policies]]
kind = "OFUL"
"""


def write_config(tmp_path, text=CONFIG):
    path = tmp_path / "tiny.toml"
    path.write_text(text)
    return path


def test_run_writes_csv(tmp_path, capsys):
    cfg = write_config(tmp_path)
    assert cli.main(["run", "--config", str(cfg), "--out", str(tmp_path / "res"), "--raw"]) == 0
    assert (tmp_path / "res" / "tiny.csv").exists()
    assert (tmp_path / "res" / "tiny_raw.csv").exists()
    assert "LOSAN cum_regret" in capsys.readouterr().out


def test_run_seed_override_changes_output(tmp_path):
    cfg = write_config(tmp_path)
    cli.main(["run", "--config", str(cfg), "--out", str(tmp_path / "a")])
    cli.main(["run", "--config", str(cfg), "--out", str(tmp_path / "b"), "--seed", "17"])
    assert (tmp_path / "a" / "tiny.csv").read_bytes() != (tmp_path / "b" / "tiny.csv").read_bytes()


def test_config_errors_exit_one(tmp_path):
    assert cli.main(["run", "--config", str(tmp_path / "missing.toml")]) == 1
    bad = write_config(tmp_path, CONFIG.replace('"sphere"', '"torus"'))
    assert cli.main(["run", "--config", str(bad)]) == 1
    assert cli.main(["dump-instance", "--config", str(bad)]) == 1


def test_dump_instance_round_trip(tmp_path):
    cfg = write_config(tmp_path)
    out = tmp_path / "inst.json"
    assert cli.main(["dump-instance", "--config", str(cfg), "--trial", "1", "--out", str(out)]) == 0
    inst = Instance.load(out)
    assert inst.num_arms == 8 and inst.seed == 1
    assert json.loads(out.read_text())["metadata"]["best_index"] == inst.best_index
    np.testing.assert_allclose(np.linalg.norm(inst.arms, axis=1), 1.0)


def test_verify_exit_codes(monkeypatch, capsys):
    monkeypatch.setattr(cli, "verify_suite",
                        lambda seed, coverage_traces: VerifyReport([Check("x", True, 0.0)]))
    assert cli.main(["verify"]) == 0
    monkeypatch.setattr(cli, "verify_suite",
                        lambda seed, coverage_traces: VerifyReport([Check("x", False, 1.0)]))
    assert cli.main(["verify", "--seed", "3"]) == 2
    assert "[FAIL] x" in capsys.readouterr().out


def test_repro_small(tmp_path, capsys):
    assert cli.main(["repro", "fig2b", "--trials", "2", "--horizon", "20", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "fig2b.csv").exists()
    assert "LOFAV=" in capsys.readouterr().out


def test_module_entry_point(tmp_path):
    cfg = write_config(tmp_path)
    proc = subprocess.run([sys.executable, "-m", "adaptive_bandits", "dump-instance", "--config", str(cfg)],
                          capture_output=True, text=True, cwd=Path(tmp_path))
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["kind"] == "sphere"
