from collections.abc import Callable

import pytest

from banach.main import main
from banach.services.congruence import primes_in_range

CliResult = tuple[int, str, str]


@pytest.fixture(scope="session")
def small_primes() -> list[int]:
    """Odd primes up to 199, the exhaustive-check range."""
    return primes_in_range(3, 199)


@pytest.fixture
def run_cli(capsys: pytest.CaptureFixture[str]) -> Callable[..., CliResult]:
    """Invoke the CLI in-process; returns (exit code, stdout, stderr)."""

    def _run(*argv: str) -> CliResult:
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return _run

