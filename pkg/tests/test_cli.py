import io
import os
import signal
import subprocess
import sys
import time

import pytest

from ldforms import search
from ldforms.cli import NEGATIVE, OK, RESOURCE, USAGE, main
from ldforms.formats import parse_checkpoint

TRIPLE = """[field]
p = 3
k = 1
modulus = (0, 1)

[datum]
pole = (0), residue = 1
pole = (1), residue = 1
pole = (2), residue = 1
"""


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def triple(tmp_path):
    path = tmp_path / "triple.txt"
    path.write_text(TRIPLE)
    return str(path)


def test_verify_datum(triple):
    code, out, _ = run("verify-datum", triple)
    assert code == OK and out.strip() == "valid, u = 2"
    code, out, _ = run("verify-datum", triple, "--format", "machine")
    assert code == OK and out.split() == ["valid", "u", "2"]


def test_verify_datum_invalid(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text(TRIPLE.replace("(2), residue = 1", "(2), residue = 2"))
    code, out, _ = run("verify-datum", str(path), "--format", "machine")
    assert code == NEGATIVE
    assert out.splitlines()[0] == "invalid" and out.splitlines()[1].startswith("violation")


def test_parse_error_reports_position(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text(TRIPLE.replace("pole = (2)", "pole = (5)"))
    code, _, err = run("verify-datum", str(path))
    assert code == USAGE
    assert "line 9, column 9: coefficient not reduced" in err


def test_missing_file_and_wrong_kind(triple, tmp_path):
    assert run("verify-datum", str(tmp_path / "nope.txt"))[0] == USAGE
    assert run("verify-space", triple)[0] == USAGE


def test_partition_and_expect():
    code, out, _ = run("partition", "--p", "5", "--h", "1,1,-1,-1")
    assert code == NEGATIVE and out.strip() == "partition condition fails"
    assert run("partition", "--p", "5", "--h", "1,1,-1,-1", "--expect", "negative")[0] == OK
    code, out, _ = run("partition", "--p", "3", "--h", "1,1,1", "--format", "machine")
    assert code == OK and out.split() == ["holds", "0,1,2"]
    assert run("partition", "--p", "3", "--h", "1,1,1", "--expect", "negative")[0] == NEGATIVE
    assert run("partition", "--p", "3", "--h", "1,1")[0] == USAGE
    assert run("partition", "--p", "3", "--h", "1,x")[0] == USAGE


def test_block_structure():
    code, out, _ = run("block-structure", "--p", "3", "--h", "1,2,1,2,1,2")
    assert code == OK and out.strip() == "blocks [[0, 2, 4], [1, 3, 5]]"
    assert run("block-structure", "--p", "3", "--h", "1,1,1,1,2,2")[0] == NEGATIVE
    assert run("block-structure", "--p", "3", "--h", "1,2")[0] == USAGE


def test_search_datum(tmp_path):
    code, out, _ = run("search-datum", "--p", "3", "--k", "1", "--h", "1,1,1", "--out", str(tmp_path / "d"))
    assert code == OK and out.splitlines()[0] == "1 canonical data over F_3"
    written = sorted((tmp_path / "d").iterdir())
    assert len(written) == 1 and written[0].read_text() == TRIPLE
    assert run("search-datum", "--p", "3", "--k", "1", "--h", "1,1,1,1,1,1")[0] == NEGATIVE
    assert run("search-datum", "--p", "3", "--k", "2", "--h", "1,1,1,1,2", "--budget", "3")[0] == RESOURCE


def test_search_space_lambda1_empty(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out, _ = run("search-space", "--lambda", "1", "--kmax", "3")
    assert code == NEGATIVE and out.strip() == "0 candidates for lambda = 1, k <= 3"
    assert run("search-space", "--lambda", "1", "--kmax", "3", "--expect", "negative")[0] == OK


def test_search_space_found(tmp_path):
    code, out, _ = run("search-space", "--lambda", "2", "--kmax", "2", "--format", "machine",
                       "--out", str(tmp_path / "s"))
    assert code == OK
    lines = out.splitlines()
    assert lines[0] == "count 3" and all(ln.startswith("candidate 2 ") for ln in lines[1:])
    assert len(list((tmp_path / "s").iterdir())) == 3
    path = sorted((tmp_path / "s").iterdir())[0]
    assert run("verify-space", str(path))[0] == OK


def test_budget_checkpoint_and_resume(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out, _ = run("search-space", "--lambda", "2", "--kmax", "3", "--shards", "2", "--budget", "60")
    assert code == RESOURCE and "checkpoint written to ldforms.ckpt" in out
    cp = parse_checkpoint((tmp_path / "ldforms.ckpt").read_text())
    assert cp.shards == 2 and not all(r.complete for r in cp.results)
    for _ in range(100):
        code, out, _ = run("search-space", "--lambda", "2", "--kmax", "3", "--shards", "2", "--budget", "60",
                           "--resume", "ldforms.ckpt")
        if code != RESOURCE:
            break
    assert code == OK and out.splitlines()[0] == "15 candidates for lambda = 2, k <= 3"


def test_resume_mismatch(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    run("search-space", "--lambda", "2", "--kmax", "3", "--budget", "20")
    code, _, err = run("search-space", "--lambda", "2", "--kmax", "2", "--resume", "ldforms.ckpt")
    assert code == USAGE and "different" in err


def test_budget_from_environment(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv(search.BUDGET_ENV, "20")
    assert run("search-space", "--lambda", "2", "--kmax", "3")[0] == RESOURCE
    monkeypatch.setenv(search.BUDGET_ENV, "lots")
    code, _, err = run("search-space", "--lambda", "2", "--kmax", "3")
    assert code == USAGE and search.BUDGET_ENV in err
    assert run("search-space", "--lambda", "2", "--kmax", "3", "--budget", "0")[0] == USAGE


class _StopAfter:
    def __init__(self, n):
        self.n = n

    def is_set(self):
        self.n -= 1
        return self.n < 0


def test_interrupt_writes_resumable_checkpoint(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setattr(search, "_STOP", _StopAfter(50))
    code, out, _ = run("search-space", "--lambda", "2", "--kmax", "3", "--shards", "2")
    assert code == RESOURCE and "search stopped (interrupted)" in out
    monkeypatch.setattr(search, "_STOP", None)
    code, out, _ = run("search-space", "--lambda", "2", "--kmax", "3", "--shards", "2", "--resume", "ldforms.ckpt")
    assert code == OK and out.startswith("15 candidates")


def test_sigint_in_a_real_process(tmp_path):
    proc = subprocess.Popen([sys.executable, "-m", "ldforms.cli", "search-space", "--lambda", "5", "--kmax", "3"],
                            cwd=tmp_path, stdout=subprocess.PIPE, stderr=subprocess.PIPE, text=True,
                            env=os.environ | {search.BUDGET_ENV: "100000000"})
    time.sleep(2.0)
    proc.send_signal(signal.SIGINT)
    out, _ = proc.communicate(timeout=60)
    assert proc.returncode == RESOURCE
    assert "interrupted" in out
    cp = parse_checkpoint((tmp_path / "ldforms.ckpt").read_text())
    assert cp.lam == 5 and cp.k_max == 3


def test_certify_step_and_full_run():
    code, out, _ = run("certify", "--step", "lemma312")
    assert code == OK and out
    code, _, err = run("certify", "--step", "no_such_step")
    assert code == USAGE
    code, out, _ = run("certify", "--format", "machine")
    # the displayed argument has failing steps, so the full run is not a proof
    assert code == NEGATIVE
    assert run("certify", "--expect", "negative")[0] == OK


def test_enumerate_types():
    code, out, _ = run("enumerate-types", "--p", "3", "--lambda", "5", "--format", "machine")
    assert code == OK
    rows = {ln.split()[1]: ln.split()[2] for ln in out.splitlines()}
    assert rows["5,0"] == "excluded" and rows["0,5"] == "excluded"
    assert run("enumerate-types", "--p", "4", "--lambda", "2")[0] == USAGE


def test_usage_errors():
    assert run()[0] == USAGE
    assert run("frobnicate")[0] == USAGE
    assert run("search-space", "--lambda", "0", "--kmax", "2")[0] == USAGE
    assert run("--help")[0] == 0
