from collections.abc import Callable
from pathlib import Path

import pytest

from banach.cli import commands
from banach.cli.commands import EXIT_ERROR
from banach.cli.commands import EXIT_FAILED
from banach.cli.commands import EXIT_NOT_PRIME
from banach.cli.commands import EXIT_OK
from banach.cli.commands import EXIT_USAGE
from banach.cli.output import CommandOutcome
from banach.cli.output import Table
from banach.services import congruence
from tests.helpers import assert_round_trips
from tests.helpers import json_lines

RunCli = Callable[..., tuple[int, str, str]]

DATA_COMMANDS = [
    ("dist", "--n", "6"),
    ("identity", "--max-n", "8"),
    ("congruence", "--p", "31"),
    ("congruence", "--p", "13", "--k", "3", "--method", "exact"),
    ("sweep", "--min", "3", "--max", "200"),
    ("composites", "--max", "27"),
    ("replay", "--p", "11"),
    ("simulate", "--n", "4", "--trials", "2000", "--seed", "17"),
]


def test_dist_csv(run_cli: RunCli) -> None:
    code, out, _ = run_cli("dist", "--n", "2", "--format", "csv")
    assert code == EXIT_OK
    assert out == "r,num,den\n0,3,8\n1,3,8\n2,1,4\n"


def test_dist_json(run_cli: RunCli) -> None:
    code, out, _ = run_cli("dist", "--n", "2")
    assert code == EXIT_OK
    assert out == '{"n":2,"probs":["3/8","3/8","1/4"]}\n'


def test_identity(run_cli: RunCli) -> None:
    code, out, _ = run_cli("identity", "--max-n", "10")
    records = json_lines(out)
    assert code == EXIT_OK
    assert [r["n"] for r in records] == list(range(11))
    assert all(r["holds"] for r in records)
    assert records[2] == {"n": 2, "lhs": "4/1", "rhs": "4/1", "holds": True}


def test_congruence_rejects_composite(run_cli: RunCli) -> None:
    code, out, err = run_cli("congruence", "--p", "9")
    assert code == EXIT_NOT_PRIME
    (record,) = json_lines(out)
    assert record == {"error": "not-prime", "message": "9 = 3·3 is not prime", "n": 9, "factor": 3}
    assert "not prime" in err


def test_congruence_single_pair(run_cli: RunCli) -> None:
    code, out, _ = run_cli("congruence", "--p", "13", "--k", "3", "--method", "direct")
    assert code == EXIT_OK
    assert json_lines(out) == [{"p": 13, "k": 3, "terms": 6, "residue": 0, "method": "direct-kernel", "passed": True}]


def test_congruence_all_k(run_cli: RunCli) -> None:
    code, out, _ = run_cli("congruence", "--p", "7")
    assert code == EXIT_OK
    assert [(r["k"], r["residue"]) for r in json_lines(out)] == [(1, 0), (2, 0), (3, 0)]


def test_sweep_summary(run_cli: RunCli) -> None:
    code, out, err = run_cli("sweep", "--min", "3", "--max", "200", "--workers", "2")
    assert code == EXIT_OK
    (summary,) = json_lines(out)
    assert summary["failures"] == []
    assert summary["primes_checked"] == 45
    assert "elapsed" not in summary
    assert "took" in err


@pytest.mark.slow
def test_sweep_acceptance_range(run_cli: RunCli) -> None:
    code, out, _ = run_cli("sweep", "--min", "3", "--max", "2000")
    assert code == EXIT_OK
    assert json_lines(out)[0]["failures"] == []


def test_sweep_csv(run_cli: RunCli) -> None:
    code, out, _ = run_cli("sweep", "--min", "3", "--max", "20", "--format", "csv")
    assert code == EXIT_OK
    failures_block, summary_block = out.split("\n\n")
    assert failures_block == "p,k,terms,residue,method,passed"
    header, row = summary_block.strip().split("\n")
    assert header.split(",")[:5] == ["p_min", "p_max", "primes_checked", "pairs_checked", "failures"]
    assert row.startswith("3,20,7,34,0,")


def test_composites_are_informational(run_cli: RunCli) -> None:
    code, out, _ = run_cli("composites", "--max", "15")
    records = json_lines(out)
    assert code == EXIT_OK
    assert {"p": 9, "k": 1, "terms": 6, "residue": 6, "method": "exact-oracle", "passed": False} in records
    assert any(r.get("n") == 15 and r.get("smallest_factor") == 3 for r in records)


def test_replay(run_cli: RunCli) -> None:
    code, out, _ = run_cli("replay", "--p", "7")
    records = json_lines(out)
    assert code == EXIT_OK
    assert len(records) == 3
    assert all(r["direct"] == r["leibniz"] == 0 and r["I1"] and r["I4"] for r in records)


def test_simulate(run_cli: RunCli) -> None:
    code, out, _ = run_cli("simulate", "--n", "3", "--trials", "1000", "--seed", "7")
    (record,) = json_lines(out)
    assert code == EXIT_OK
    assert sum(record["counts"]) == 1000
    assert record["seed"] == 7


@pytest.mark.parametrize("argv", DATA_COMMANDS)
def test_json_output_round_trips(run_cli: RunCli, argv: tuple[str, ...]) -> None:
    code, out, _ = run_cli(*argv)
    assert code == EXIT_OK
    assert out
    assert_round_trips(out)


@pytest.mark.parametrize("argv", DATA_COMMANDS)
def test_repeated_invocations_are_byte_identical(run_cli: RunCli, argv: tuple[str, ...]) -> None:
    first = run_cli(*argv)[1]
    second = run_cli(*argv)[1]
    assert first == second


def test_out_path_receives_records(run_cli: RunCli, tmp_path: Path) -> None:
    target = tmp_path / "dist.csv"
    target.write_text("stale content that must disappear\n" * 5)
    code, out, _ = run_cli("dist", "--n", "1", "--format", "csv", "--out", str(target))
    assert code == EXIT_OK
    assert out == ""
    assert target.read_text() == "r,num,den\n0,1,2\n1,1,2\n"


@pytest.mark.parametrize(
    "argv",
    [
        ("sweep", "--min", "10", "--max", "5"),
        ("congruence", "--p", "2"),
        ("composites", "--max", "7"),
        ("simulate", "--n", "3", "--trials", "0"),
        ("dist",),
        ("nonsense",),
        ("dist", "--n", "2", "--format", "xml"),
    ],
)
def test_invalid_arguments_exit_with_usage_code(run_cli: RunCli, argv: tuple[str, ...]) -> None:
    code, _, err = run_cli(*argv)
    assert code == EXIT_USAGE
    assert "usage" in err.lower()


def test_sweep_over_bound_is_a_usage_error(run_cli: RunCli) -> None:
    code, out, _ = run_cli("sweep", "--min", "3", "--max", "2000001")
    assert code == EXIT_USAGE
    assert json_lines(out)[0]["error"] == "invalid-argument"


def test_failed_checks_exit_one_with_trailing_record(run_cli: RunCli, monkeypatch: pytest.MonkeyPatch) -> None:
    def failing(config):
        record = {"n": config.max_n, "holds": False}
        return CommandOutcome(records=[record], tables=[Table(["n", "holds"], [record])], passed=False, failed_count=1)

    monkeypatch.setitem(commands.COMMANDS, "identity", failing)
    code, out, err = run_cli("identity", "--max-n", "3")
    records = json_lines(out)
    assert code == EXIT_FAILED
    assert records[0] == {"n": 3, "holds": False}
    assert records[-1] == {"error": "verification-failed", "message": "1 check(s) failed", "command": "identity"}
    assert "FAILED" in err


@pytest.mark.parametrize("command", ["congruence", "replay"])
def test_k_out_of_range_is_an_invalid_argument(run_cli: RunCli, command: str) -> None:
    code, out, _ = run_cli(command, "--p", "7", "--k", "4")
    assert code == EXIT_USAGE
    (record,) = json_lines(out)
    assert record["error"] == "invalid-argument"
    assert "k must lie in [1, 3]" in record["message"]


@pytest.mark.parametrize("command", ["congruence", "replay"])
def test_composite_modulus_wins_over_k_range(run_cli: RunCli, command: str) -> None:
    code, out, _ = run_cli(command, "--p", "9", "--k", "5")
    assert code == EXIT_NOT_PRIME
    (record,) = json_lines(out)
    assert record["factor"] == 3


def test_replay_beyond_bound_is_an_invalid_argument(run_cli: RunCli) -> None:
    code, out, _ = run_cli("replay", "--p", "2147483647", "--k", "1")
    assert code == EXIT_USAGE
    assert "replay bound" in json_lines(out)[0]["message"]


def test_unwritable_out_path_is_an_error(run_cli: RunCli, tmp_path: Path) -> None:
    target = tmp_path / "missing" / "dist.csv"
    code, out, err = run_cli("dist", "--n", "2", "--out", str(target))
    assert code == EXIT_ERROR
    assert out == ""
    assert "could not write its output" in err
    assert "Traceback" not in err
    assert not target.exists()


def test_unwritable_out_path_keeps_the_not_prime_code(run_cli: RunCli, tmp_path: Path) -> None:
    code, out, err = run_cli("congruence", "--p", "9", "--out", str(tmp_path / "missing" / "r.json"))
    assert code == EXIT_NOT_PRIME
    assert out == ""
    assert "Could not write the 'not-prime' record" in err


@pytest.fixture
def sweep_with_defect(monkeypatch: pytest.MonkeyPatch) -> None:
    """Forces p = 7, k = 2 to residue 3 so the sweep reports one failure."""
    real = congruence.incremental_residues

    def with_defect(ctx):
        residues = real(ctx)
        if ctx.p == 7:
            residues = residues.copy()
            residues[1] = 3
        return residues

    monkeypatch.setattr(congruence, "incremental_residues", with_defect)


@pytest.mark.usefixtures("sweep_with_defect")
def test_sweep_failure_exits_one(run_cli: RunCli) -> None:
    code, out, _ = run_cli("sweep", "--min", "3", "--max", "11")
    summary, trailer = json_lines(out)
    assert code == EXIT_FAILED
    assert summary["failures"] == [{"p": 7, "k": 2, "terms": 2, "residue": 3, "method": "incremental-kernel", "passed": False}]
    assert trailer == {"error": "verification-failed", "message": "1 check(s) failed", "command": "sweep"}


@pytest.mark.usefixtures("sweep_with_defect")
def test_sweep_failure_keeps_records_in_out_file(run_cli: RunCli, tmp_path: Path) -> None:
    target = tmp_path / "sweep.json"
    code, out, _ = run_cli("sweep", "--min", "3", "--max", "11", "--out", str(target))
    assert code == EXIT_FAILED
    assert out == ""
    summary, trailer = json_lines(target.read_text())
    assert len(summary["failures"]) == 1
    assert trailer["error"] == "verification-failed"


@pytest.mark.usefixtures("sweep_with_defect")
def test_csv_failure_trailer_goes_to_stderr(run_cli: RunCli) -> None:
    code, out, err = run_cli("sweep", "--min", "3", "--max", "11", "--format", "csv")
    assert code == EXIT_FAILED
    assert "verification-failed" not in out
    assert out.split("\n\n")[0] == "p,k,terms,residue,method,passed\n7,2,2,3,incremental-kernel,false"
    assert '{"error":"verification-failed","message":"1 check(s) failed","command":"sweep"}' in err


def test_csv_error_record_goes_to_stderr(run_cli: RunCli) -> None:
    code, out, err = run_cli("congruence", "--p", "15", "--format", "csv")
    assert code == EXIT_NOT_PRIME
    assert out == ""
    assert '"error":"not-prime"' in err
