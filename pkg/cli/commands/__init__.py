"""
diskernel CLI commands

Each command module exposes register(subparsers) and execute(args) -> int.
"""

import argparse
from contextlib import contextmanager
import sys
from typing import Iterator, Optional

from diskernel.trace import TraceWriter


def add_out_argument(parser) -> None:
    parser.add_argument('--out', default=None, help='Trace file (default: stdout)')


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


@contextmanager
def open_trace(path: Optional[str]) -> Iterator[TraceWriter]:
    """TraceWriter on `path`, or on stdout when no path is given."""
    if path is None:
        yield TraceWriter(sys.stdout)
        sys.stdout.flush()
        return
    with open(path, 'w', encoding='utf-8', newline='\n') as fh:
        yield TraceWriter(fh)
