#!/usr/bin/env python3
"""
diskernel - Trace Writer Tests

Run with:
    pytest tests/test_trace.py -v
"""

from io import StringIO
import json

from diskernel.trace import TRACE_SCHEMA, TraceWriter, encode_digit, encode_value


class TestEncoding:
    """Test suite for digit encoding"""

    def test_small_digits_unchanged(self):
        assert encode_digit(0) == 0
        assert encode_digit(2 ** 63 - 1) == 2 ** 63 - 1

    def test_large_digits_hex(self):
        assert encode_digit(2 ** 63) == "0x8000000000000000"

    def test_non_digits_pass_through(self):
        assert encode_digit(True) is True
        assert encode_digit("x") == "x"
        assert encode_digit(None) is None

    def test_nested(self):
        value = {"output": (1, 2 ** 64), "inner": {"n": [2 ** 63]}}
        assert encode_value(value) == {"output": [1, "0x10000000000000000"], "inner": {"n": ["0x8000000000000000"]}}


class TestTraceWriter:
    """Test suite for TraceWriter"""

    def test_header(self):
        stream = StringIO()
        TraceWriter(stream).header("eval", {"fuel": 8})
        assert stream.getvalue() == '{"command":"eval","params":{"fuel":8},"schema":"%s","version":1}\n' % TRACE_SCHEMA

    def test_records_sorted_and_compact(self):
        stream = StringIO()
        writer = TraceWriter(stream)
        writer.emit("step", output=[1, 2], fuel=3)
        assert stream.getvalue() == '{"event":"step","fuel":3,"output":[1,2]}\n'

    def test_record_count(self):
        writer = TraceWriter(StringIO())
        writer.header("game", {})
        writer.emit("move")
        writer.emit("verdict", verdict="II")
        assert writer.records == 3

    def test_lines_parse(self):
        stream = StringIO()
        writer = TraceWriter(stream)
        writer.emit("result", agree=False, output=[2 ** 70])
        record = json.loads(stream.getvalue())
        assert record["agree"] is False
        assert record["output"] == [hex(2 ** 70)]
