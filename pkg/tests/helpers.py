import json

from banach.cli.output import dumps_record


def json_lines(text: str) -> list[dict]:
    return [json.loads(line) for line in text.splitlines() if line]


def assert_round_trips(text: str) -> None:
    """Every JSON line re-serializes to the identical bytes."""
    for line in text.splitlines():
        assert dumps_record(json.loads(line)) == line
