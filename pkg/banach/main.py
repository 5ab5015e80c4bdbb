import logging
import sys
from collections.abc import Sequence

from pydantic import ValidationError

from banach.cli.commands import EXIT_USAGE
from banach.cli.commands import dispatch
from banach.cli.parser import build_parser
from banach.cli.parser import config_from_namespace
from banach.core.logging import setup_logging

logger = logging.getLogger(__name__)


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point for ``python -m banach``; returns the process exit status."""
    parser = build_parser()
    try:
        namespace = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse has already printed usage; its codes are 0 (help) or 2.
        return int(exc.code or 0)

    try:
        config = config_from_namespace(namespace)
    except ValidationError as exc:
        setup_logging()
        messages = "; ".join(err["msg"] for err in exc.errors())
        logger.error("Invalid arguments: %s", messages)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE

    setup_logging(config.log_level)
    return dispatch(config)
