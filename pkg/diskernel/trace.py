"""
diskernel - NDJSON Traces

One JSON record per line, keys sorted, compact separators, no timestamps, so
identical invocations produce identical bytes. The first record names the
schema:

    {"command":"eval","params":{...},"schema":"diskernel-trace","version":1}

Digits of 2**63 and above are written as "0x..." hex strings.
"""

import json
from typing import Any, Dict, TextIO

TRACE_SCHEMA = "diskernel-trace"
TRACE_VERSION = 1
HEX_THRESHOLD = 2 ** 63


def encode_digit(d: int) -> Any:
    if isinstance(d, bool) or not isinstance(d, int):
        return d
    if abs(d) < HEX_THRESHOLD:
        return d
    return hex(d)


def encode_value(value: Any) -> Any:
    """Recursively apply encode_digit to ints inside lists, tuples and dicts."""
    if isinstance(value, dict):
        return {str(k): encode_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode_value(v) for v in value]
    return encode_digit(value)


class TraceWriter:
    """Writes trace records to a text stream."""

    def __init__(self, stream: TextIO):
        self.stream = stream
        self.records = 0

    def _write(self, record: Dict[str, Any]) -> None:
        self.stream.write(json.dumps(encode_value(record), sort_keys=True, separators=(",", ":")))
        self.stream.write("\n")
        self.records += 1

    def header(self, command: str, params: Dict[str, Any]) -> None:
        self._write(
            {
                "schema": TRACE_SCHEMA,
                "version": TRACE_VERSION,
                "command": command,
                "params": params,
            }
        )

    def emit(self, event: str, **fields: Any) -> None:
        self._write({"event": event, **fields})
