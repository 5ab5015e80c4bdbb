"""Argument parsing for the ``banach`` command line."""

import argparse
from typing import Any

from banach import __version__
from banach.core.config import LOG_LEVELS
from banach.core.config import settings
from banach.models.report_models import Method
from banach.models.run_config import RunConfig

__all__ = [
    "build_parser",
    "config_from_namespace",
]

_METHODS = {
    "exact": Method.EXACT_ORACLE,
    "direct": Method.DIRECT_KERNEL,
    "incremental": Method.INCREMENTAL_KERNEL,
}


def _output_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=("json", "csv"), default=settings.default_format, help="record format (default: JSON lines)")
    common.add_argument("--out", type=str, default=None, metavar="PATH", help="write data records to PATH (created or truncated)")
    common.add_argument("--log-level", type=str.upper, choices=LOG_LEVELS, default=settings.log_level, help="stderr log level")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="banach",
        description="Banach matchbox distribution, Banach identity and the prime congruence, checked exactly.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = _output_options()
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    dist = sub.add_parser("dist", parents=[common], help="exact matchbox distribution u_n(r)")
    dist.add_argument("--n", type=int, required=True)

    identity = sub.add_parser("identity", parents=[common], help="check the Banach identity for n = 0..N")
    identity.add_argument("--max-n", dest="max_n", type=int, required=True)

    congruence = sub.add_parser("congruence", parents=[common], help="residues of the congruence sum for one prime")
    congruence.add_argument("--p", type=int, required=True)
    congruence.add_argument("--k", type=int, default=None)
    congruence.add_argument("--method", choices=tuple(_METHODS), default="incremental")

    sweep = sub.add_parser("sweep", parents=[common], help="verify every prime in a range")
    sweep.add_argument("--min", dest="p_min", type=int, required=True)
    sweep.add_argument("--max", dest="p_max", type=int, required=True)
    sweep.add_argument("--workers", type=int, default=settings.default_workers)

    composites = sub.add_parser("composites", parents=[common], help="oracle residues for odd composites (informational)")
    composites.add_argument("--max", dest="n_max", type=int, required=True)

    replay = sub.add_parser("replay", parents=[common], help="replay the derivative argument for one prime")
    replay.add_argument("--p", type=int, required=True)
    replay.add_argument("--k", type=int, default=None)

    simulate = sub.add_parser("simulate", parents=[common], help="Monte Carlo check against the exact distribution")
    simulate.add_argument("--n", type=int, required=True)
    simulate.add_argument("--trials", type=int, required=True)
    simulate.add_argument("--seed", type=int, default=0)

    return parser


def config_from_namespace(namespace: argparse.Namespace) -> RunConfig:
    """Validate parsed arguments into a RunConfig (raises pydantic.ValidationError)."""
    values: dict[str, Any] = {key: value for key, value in vars(namespace).items() if value is not None}
    if "method" in values:
        values["method"] = _METHODS[values["method"]]
    return RunConfig(**values)
