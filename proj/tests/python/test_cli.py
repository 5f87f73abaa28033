import json
import os
import subprocess

import pytest


def run(cli, *args, jobs=None):
    env = dict(os.environ)
    if jobs is not None:
        env["HOMALG_JOBS"] = str(jobs)
    return subprocess.run([cli, *map(str, args)], capture_output=True, text=True, env=env)


def test_exit_codes(cli, data_dir):
    assert run(cli, "check", data_dir / "dual_numbers_rb.json").returncode == 0
    assert run(cli, "check", data_dir / "dual_numbers_rb_perturbed.json").returncode == 1
    bad = run(cli, "check", data_dir / "bad_rational.json")
    assert bad.returncode == 2
    assert "/operations/0/entries/0/coeff" in bad.stderr
    assert run(cli, "check", data_dir / "missing.json").returncode == 2
    assert run(cli, "check").returncode == 2


def test_json_report(cli, data_dir):
    out = run(cli, "check", data_dir / "graded_toy_rb.json", "--format", "json")
    report = json.loads(out.stdout)
    assert report["status"] == 0
    assert report["verdict"] == "pass"
    assert report["command"].startswith("homalg check")


def test_construct_writes_document(cli, data_dir, tmp_path):
    target = tmp_path / "ext.json"
    out = run(cli, "construct", data_dir / "dual_numbers_rb.json", "--op", "trivial-extension", "--d", "0",
              "-o", target)
    assert out.returncode == 0, out.stdout + out.stderr
    assert run(cli, "check", target).returncode == 0


def test_refusal_exits_one(cli, data_dir):
    out = run(cli, "roundtrip", data_dir / "aguiar_not_skew.json", "--pipeline", "rb-aybe-double-lie")
    assert out.returncode == 1
    assert "skewness" in out.stdout


@pytest.mark.parametrize("args", [
    ("check", "dual_numbers_assoc_perturbed.json"),
    ("check", "aguiar.json"),
    ("roundtrip", "end_dual_numbers.json", "--pipeline", "psi-precy"),
    ("construct", "end_dual_numbers.json", "--op", "psi-brackets"),
])
def test_output_independent_of_jobs(cli, data_dir, args):
    verb, doc, *rest = args
    outs = [run(cli, verb, data_dir / doc, *rest, "--format", "json", jobs=j) for j in (1, 4)]
    assert outs[0].returncode == outs[1].returncode
    assert outs[0].stdout == outs[1].stdout
    assert outs[0].stderr == outs[1].stderr
