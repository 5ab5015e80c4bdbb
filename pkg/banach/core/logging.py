import sys
from logging.config import dictConfig
from typing import Any

# All handlers write to stderr: stdout is reserved for data records.
LOGGING_CONFIG: dict[str, Any] = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "default": {
            "format": "%(levelname)-8s %(asctime)s [%(name)s] %(message)s",
            "datefmt": "%Y-%m-%d %H:%M:%S",
        },
    },
    "handlers": {
        "default": {
            "class": "logging.StreamHandler",
            "formatter": "default",
            "stream": sys.stderr,
            "level": "DEBUG",
        },
    },
    "loggers": {
        "root": {"handlers": ["default"], "level": "WARNING", "propagate": False},
        "banach": {"handlers": ["default"], "level": "INFO", "propagate": False},
    },
}


def setup_logging(level: str = "INFO") -> None:
    """Configures toolkit-wide logging using dictConfig."""
    config = {**LOGGING_CONFIG, "loggers": {**LOGGING_CONFIG["loggers"]}}
    config["loggers"]["banach"] = {**config["loggers"]["banach"], "level": level}
    # The stream is resolved at call time so redirected stderr (tests, pipes) is honoured.
    config["handlers"] = {"default": {**LOGGING_CONFIG["handlers"]["default"], "stream": sys.stderr}}
    dictConfig(config)
