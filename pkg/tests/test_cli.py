from __future__ import annotations

import json
import subprocess
import sys

import pytest

from gaussromanov.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_covering_verify(capsys):
    assert run(capsys, "covering", "verify") == (0, "covering: true, lcm=24\n", "")


def test_romanov_sum_csv(capsys):
    code, out, _ = run(capsys, "romanov", "sum", "--emax", "4")
    assert code == 0
    last = out.strip().splitlines()[-1].split(",")
    assert (last[5], last[6]) == ("1156", "975")


def test_romanov_sum_json_exact(capsys):
    code, out, _ = run(capsys, "romanov", "sum", "--emax", "4", "--format", "json")
    data = json.loads(out)
    assert data["entries"][-1]["partial_S"] == "1156/975" and data["complete"]


def test_romanov_tail(capsys):
    code, out, _ = run(capsys, "romanov", "tail", "--x0", "200")
    assert code == 0 and out == "0.577480\n"


def test_constants_report(capsys):
    code, out, _ = run(capsys, "constants", "report")
    data = json.loads(out)
    assert abs(data["final_bound"] - 0.00110183) < 2e-7
    assert set(data["certified"]["catalan"]) == {"value", "error"}


def test_primes(capsys):
    code, out, _ = run(capsys, "primes", "list", "--x", "3")
    lines = out.splitlines()
    assert lines[0] == "re,im,norm,degree" and len(lines) == 17 and lines[-1] == "3,0,9,2"
    assert run(capsys, "primes", "count", "--x", "10")[1] == "100\n"


def test_orders_table(capsys):
    code, out, _ = run(capsys, "orders", "table", "--emax", "8")
    assert out.splitlines()[1:] == ["2,1,5,1,2", "2,3,13,1,3", "1,2,5,1,4", "5,4,41,1,5", "8,7,113,1,7", "3,0,9,2,8"]


def test_density_and_sieve(capsys):
    code, out, _ = run(capsys, "density", "scan", "--x", "64")
    data = json.loads(out)
    assert code == 0 and data["cauchy_schwarz_holds"] and data["sum_r"] == "8798"
    code, out, _ = run(capsys, "sieve", "check", "--x", "100")
    assert code == 0 and out.splitlines()[0] == "zeta,pairs,ratio,within"


def test_obstruction(capsys):
    code, out, _ = run(capsys, "covering", "obstruction", "--radius", "2000")
    data = json.loads(out)
    assert code == 0
    assert data["M"] == "1365+1365i" and data["printed_modulus"] == "990+990i"
    assert not data["modulus_matches_printed"] and data["divisibility_check"]


@pytest.mark.parametrize(
    "argv",
    [
        ("romanov", "sum", "--emax", "0"),
        ("density", "scan", "--x", "-3"),
        ("nonsense",),
        ("primes",),
        ("covering", "obstruction", "--radius", "100"),
        ("density", "scan", "--x", "10"),
    ],
)
def test_validation_exit_code(capsys, argv):
    with pytest.raises(SystemExit) as info:
        code = main(list(argv))
        raise SystemExit(code)
    assert info.value.code == 1


def test_threads_and_cache_do_not_change_output(capsys, tmp_path):
    cache = tmp_path / "c.txt"
    a = run(capsys, "romanov", "sum", "--emax", "40", "--cache", str(cache), "--threads", "2")[1]
    b = run(capsys, "romanov", "sum", "--emax", "40", "--cache", str(cache))[1]
    c = run(capsys, "romanov", "sum", "--emax", "40")[1]
    assert a == b == c
    assert len(cache.read_text().splitlines()) == 40


def test_cache_env_var(capsys, tmp_path, monkeypatch):
    cache = tmp_path / "env.txt"
    monkeypatch.setenv("GAUSSROMANOV_CACHE", str(cache))
    run(capsys, "orders", "table", "--emax", "6")
    assert cache.exists()


def test_verification_failure_exit_code(capsys, monkeypatch):
    from gaussromanov import covering_erdos

    monkeypatch.setattr(covering_erdos, "ERDOS_SYSTEM", covering_erdos.CoveringSystem.of([(0, 2)]))
    code, out, _ = run(capsys, "covering", "verify")
    assert code == 2 and out == "covering: false, lcm=2\n"


def test_console_script_runs():
    done = subprocess.run([sys.executable, "-m", "gaussromanov.cli", "covering", "verify"], capture_output=True, text=True)
    assert done.returncode == 0 and done.stdout == "covering: true, lcm=24\n"
