#!/usr/bin/env python3
"""
diskernel - JSON Logging Utilities

Structured NDJSON logging for the library and the command line. Logs always
go to stderr: stdout belongs to the trace.

Key Features:
- NDJSON (newline-delimited JSON) format, opt-in via DISKERNEL_LOG_JSON
- Plain text fallback when disabled
- Every record carries a run_id ("system" outside a CLI run)

Usage:
    from diskernel.logging_utils import setup_json_logging, get_logger

    setup_json_logging(service_name="diskernel", version="0.1.0", level="INFO")
    logger = get_logger(__name__)
    logger.info("Verified reduction", extra={"checked": 1000})

Environment Variables:
    DISKERNEL_LOG_JSON: Enable JSON logging (default: false)
    LOG_LEVEL: Logging level (default: WARNING)

Author: diskernel Development Team
License: MIT
Version: 0.1.0
"""

import json
import logging
import os
import sys
import threading
from datetime import datetime, timezone
from typing import Any, Dict, Optional, TextIO

_RESERVED = frozenset(
    [
        "name",
        "msg",
        "args",
        "created",
        "filename",
        "funcName",
        "levelname",
        "levelno",
        "lineno",
        "module",
        "msecs",
        "message",
        "pathname",
        "process",
        "processName",
        "relativeCreated",
        "thread",
        "threadName",
        "taskName",
        "exc_info",
        "exc_text",
        "stack_info",
        "run_id",
    ]
)


class NDJSONFormatter(logging.Formatter):
    """
    Formats each record as a single JSON object on one line.

    Fields: timestamp, level, message, logger, module, function, line, thread,
    service, version, run_id, error (with exc_info) and every `extra=` field.
    Extras that json cannot serialize are rendered with str().
    """

    def __init__(self, service_name: str, version: str):
        super().__init__()
        self.service_name = service_name
        self.version = version

    def format(self, record: logging.LogRecord) -> str:
        entry: Dict[str, Any] = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": record.levelname,
            "message": record.getMessage(),
            "logger": record.name,
            "module": record.module,
            "function": record.funcName,
            "line": record.lineno,
            "thread": threading.get_ident(),
            "service": self.service_name,
            "version": self.version,
            "run_id": record.__dict__.get("run_id") or "system",
        }

        if record.exc_info:
            entry["error"] = {
                "type": record.exc_info[0].__name__ if record.exc_info[0] else None,
                "message": str(record.exc_info[1]) if record.exc_info[1] else None,
                "traceback": self.formatException(record.exc_info),
            }

        for key, value in record.__dict__.items():
            if key in _RESERVED:
                continue
            try:
                json.dumps(value)
                entry[key] = value
            except (TypeError, ValueError):
                entry[key] = str(value)

        try:
            return json.dumps(entry, default=str)
        except Exception as e:
            return json.dumps(
                {
                    "timestamp": datetime.now(timezone.utc).isoformat(),
                    "level": "ERROR",
                    "message": f"Failed to serialize log record: {e}",
                    "service": self.service_name,
                    "run_id": "system",
                }
            )


class RunIdFilter(logging.Filter):
    """Injects run_id into every record; "system" unless a run id was set."""

    def __init__(self, run_id: Optional[str] = None):
        super().__init__()
        self.run_id = run_id

    def filter(self, record: logging.LogRecord) -> bool:
        if getattr(record, "run_id", None) is None:
            record.run_id = self.run_id or "system"
        return True


def setup_json_logging(
    service_name: str,
    version: str,
    level: str = "WARNING",
    stream: Optional[TextIO] = None,
    run_id: Optional[str] = None,
) -> logging.Logger:
    """
    Configure the root logger for diskernel.

    Idempotent: existing handlers and filters on the root logger are removed.

    Args:
        service_name: Name written into JSON records
        version: Version written into JSON records
        level: Default level; LOG_LEVEL overrides it
        stream: Destination (default: sys.stderr)
        run_id: Identifier attached to every record

    Returns:
        The root logger
    """
    json_enabled = os.getenv("DISKERNEL_LOG_JSON", "false").lower() in ("true", "1", "yes", "on")
    log_level = os.getenv("LOG_LEVEL", level).upper()

    logger = logging.getLogger()
    logger.handlers.clear()
    logger.filters.clear()
    logger.setLevel(getattr(logging, log_level, logging.WARNING))

    handler = logging.StreamHandler(stream if stream is not None else sys.stderr)
    handler.setLevel(logger.level)
    handler.addFilter(RunIdFilter(run_id))

    if json_enabled:
        handler.setFormatter(NDJSONFormatter(service_name=service_name, version=version))
    else:
        handler.setFormatter(
            logging.Formatter("%(asctime)s - %(levelname)s - [%(run_id)s] - %(name)s - %(message)s")
        )

    logger.addHandler(handler)
    logger.debug(
        "Logging configured",
        extra={"service": service_name, "json": json_enabled, "level": log_level},
    )
    return logger


def get_logger(name: str = __name__) -> logging.Logger:
    """Named logger inheriting the configuration from setup_json_logging()."""
    return logging.getLogger(name)
