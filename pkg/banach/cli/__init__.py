"""Command-line surface: argument parsing, dispatch and record output."""
