"""Subcommand handlers and dispatch.

Each handler maps a validated RunConfig onto the services and returns a
CommandOutcome; dispatch writes it and turns the verdict (or the exception)
into the process exit status.
"""

import logging
import sys
import time
from collections.abc import Callable
from functools import wraps
from typing import Any

from banach.cli.output import CommandOutcome
from banach.cli.output import Table
from banach.cli.output import open_sink
from banach.cli.output import write_error
from banach.cli.output import write_outcome
from banach.core.exceptions import ArgumentError
from banach.core.exceptions import BanachError
from banach.core.exceptions import NotPrimeError
from banach.models.report_models import CongruenceReport
from banach.models.report_models import Method
from banach.models.run_config import RunConfig
from banach.services.congruence import composite_scan
from banach.services.congruence import make_report
from banach.services.congruence import require_prime
from banach.services.congruence import sum_exact
from banach.services.congruence import sum_kernel_direct
from banach.services.congruence import sum_kernel_incremental
from banach.services.congruence import summarize_composites
from banach.services.congruence import sweep
from banach.services.congruence import verify_prime
from banach.services.matchbox import check_identity
from banach.services.matchbox import distribution
from banach.services.modarith import make_context
from banach.services.proofreplay import chain_check
from banach.services.simulate import run

__all__ = [
    "EXIT_ERROR",
    "EXIT_FAILED",
    "EXIT_NOT_PRIME",
    "EXIT_OK",
    "EXIT_USAGE",
    "dispatch",
]

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_NOT_PRIME = 3
EXIT_ERROR = 4

REPORT_COLUMNS = ["p", "k", "terms", "residue", "method", "passed"]
CHAIN_COLUMNS = ["p", "k", "direct", "leibniz", "I1", "I2", "I3", "I4", "scaled_sum", "fermat", "split_agrees", "passed"]

Handler = Callable[[RunConfig], CommandOutcome]


def _report_record(report: CongruenceReport) -> dict[str, Any]:
    return report.model_dump(mode="json", by_alias=True)


def _admissible_ks(config: RunConfig) -> list[int]:
    """k values to evaluate for p, checked only once p is known to be prime."""
    p = config.p
    require_prime(p)
    half = (p - 1) // 2
    if config.k is None:
        return list(range(1, half + 1))
    if config.k > half:
        raise ArgumentError(f"k must lie in [1, {half}] for p={p}, got {config.k}")
    return [config.k]


def _report_outcome(reports: list[CongruenceReport]) -> CommandOutcome:
    records = [_report_record(r) for r in reports]
    failed = sum(1 for r in reports if not r.passed)
    return CommandOutcome(records=records, tables=[Table(REPORT_COLUMNS, records)], passed=not failed, failed_count=failed)


# ---------------------------------------------------------------------------
# Handlers
# ---------------------------------------------------------------------------


def _cmd_dist(config: RunConfig) -> CommandOutcome:
    dist = distribution(config.n)
    rows = [{"r": r, "num": u.numerator, "den": u.denominator} for r, u in enumerate(dist.probs)]
    return CommandOutcome(records=[dist.model_dump(mode="json")], tables=[Table(["r", "num", "den"], rows)])


def _cmd_identity(config: RunConfig) -> CommandOutcome:
    checks = [check_identity(n) for n in range(config.max_n + 1)]
    records = [c.model_dump(mode="json") for c in checks]
    failed = sum(1 for c in checks if not c.holds)
    return CommandOutcome(records=records, tables=[Table(["n", "lhs", "rhs", "holds"], records)], passed=not failed, failed_count=failed)


def _cmd_congruence(config: RunConfig) -> CommandOutcome:
    p = config.p
    ks = _admissible_ks(config)
    if config.k is None and config.method is Method.INCREMENTAL_KERNEL:
        return _report_outcome(verify_prime(p))

    ctx = make_context(p)
    kernels: dict[Method, Callable[[int], int]] = {
        Method.EXACT_ORACLE: lambda k: sum_exact(p, k),
        Method.DIRECT_KERNEL: lambda k: sum_kernel_direct(ctx, k),
        Method.INCREMENTAL_KERNEL: lambda k: sum_kernel_incremental(ctx, k),
    }
    kernel = kernels[config.method]
    return _report_outcome([make_report(p, k, kernel(k), config.method) for k in ks])


def _cmd_sweep(config: RunConfig) -> CommandOutcome:
    report = sweep(config.p_min, config.p_max, config.workers)
    summary = report.model_dump(mode="json", by_alias=True, exclude={"elapsed"})
    failure_rows = summary["failures"]
    summary_row = {**summary, "failures": len(failure_rows)}
    return CommandOutcome(
        records=[summary],
        tables=[Table(REPORT_COLUMNS, failure_rows), Table(list(summary_row), [summary_row])],
        passed=report.passed,
        failed_count=len(failure_rows),
        extras={"elapsed": report.elapsed},
    )


def _cmd_composites(config: RunConfig) -> CommandOutcome:
    reports = composite_scan(config.n_max)
    summaries = [s.model_dump(mode="json") for s in summarize_composites(reports)]
    records = [_report_record(r) for r in reports]
    # Informational: composites never fail the run.
    return CommandOutcome(
        records=records + summaries,
        tables=[Table(REPORT_COLUMNS, records), Table(["n", "smallest_factor", "pairs", "vanishing", "all_vanish"], summaries)],
    )


def _cmd_replay(config: RunConfig) -> CommandOutcome:
    ks = _admissible_ks(config)
    reports = [chain_check(config.p, k) for k in ks]
    records = [r.record() for r in reports]
    failed = sum(1 for r in reports if not r.passed)
    return CommandOutcome(records=records, tables=[Table(CHAIN_COLUMNS, records)], passed=not failed, failed_count=failed)


def _cmd_simulate(config: RunConfig) -> CommandOutcome:
    result = run(config.n, config.trials, config.seed)
    record = result.model_dump(mode="json", by_alias=True)
    summary = {key: value for key, value in record.items() if key != "counts"}
    rows = [{"r": r, "count": c} for r, c in enumerate(result.counts)]
    return CommandOutcome(records=[record], tables=[Table(["r", "count"], rows), Table(list(summary), [summary])])


COMMANDS: dict[str, Handler] = {
    "dist": _cmd_dist,
    "identity": _cmd_identity,
    "congruence": _cmd_congruence,
    "sweep": _cmd_sweep,
    "composites": _cmd_composites,
    "replay": _cmd_replay,
    "simulate": _cmd_simulate,
}


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------


def _report_error(config: RunConfig, kind: str, message: str, **details: Any) -> None:
    """Error record: JSON lines go to the data sink, CSV runs send it to stderr."""
    if config.output_format == "csv":
        write_error(sys.stderr, kind, message, **details)
        return
    try:
        with open_sink(config.out) as sink:
            write_error(sink, kind, message, **details)
    except OSError as e:
        logger.error("Could not write the '%s' record to %s: %s", kind, config.out, e)


def handle_command_errors(func: Callable[[RunConfig], int]) -> Callable[[RunConfig], int]:
    """Decorator mapping toolkit exceptions to exit codes and error records."""

    @wraps(func)
    def wrapper(config: RunConfig) -> int:
        try:
            return func(config)
        except NotPrimeError as e:
            logger.error("'%s' needs a prime modulus: %s", config.command, e)
            _report_error(config, "not-prime", str(e), n=e.n, factor=e.factor)
            return EXIT_NOT_PRIME
        except ArgumentError as e:
            logger.error("Invalid arguments for '%s': %s", config.command, e)
            _report_error(config, "invalid-argument", str(e))
            return EXIT_USAGE
        except BanachError as e:
            logger.error("'%s' failed: %s", config.command, e, exc_info=True)
            _report_error(config, "error", str(e))
            return EXIT_ERROR
        except OSError as e:
            # The sink itself may be what failed; nothing more is written to it.
            logger.error("'%s' could not write its output: %s", config.command, e)
            return EXIT_ERROR

    return wrapper


@handle_command_errors
def dispatch(config: RunConfig) -> int:
    """Run the subcommand, write its records, return 0 iff every check passed."""
    handler = COMMANDS[config.command]
    start = time.perf_counter()
    outcome = handler(config)
    elapsed = outcome.extras.get("elapsed", time.perf_counter() - start)

    with open_sink(config.out) as sink:
        write_outcome(sink, outcome, config.output_format)
        if not outcome.passed:
            trailer_sink = sys.stderr if config.output_format == "csv" else sink
            write_error(trailer_sink, "verification-failed", f"{outcome.failed_count} check(s) failed", command=config.command)

    logger.info("'%s' took %.2fs (%s)", config.command, elapsed, "passed" if outcome.passed else "FAILED")
    return EXIT_OK if outcome.passed else EXIT_FAILED
