#!/usr/bin/env python3
"""
diskernel - Command-line front end

Commands
- eval      : Evaluate a name on an input with bounded fuel
- fixpoint  : Compare both sides of the parameterized recursion theorem
- game      : Play Wadge, Lipschitz or Gale-Stewart games
- reduce    : Verify reduction witnesses or compile constructive ones
- translate : Translate strategies between Wadge and Lipschitz games

Usage
  diskernel eval --name '{"rule":{"kind":"name","machine":{"op":"identity"}}}' --input '{"prefix":[1,2,3]}'
  diskernel game --problem lpo --player-i const:1 --player-ii const:0
  diskernel reduce verify --f id --g id --witness identity

Exit codes
  0 success / II wins, 1 failure, 3 parse error, 4 refutation,
  5 verdict I, 6 verdict unknown at depth
"""

import argparse
import logging
import os
import sys
import uuid
from typing import List, Optional

# Make local packages importable when run as a script
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from cli.commands import cmd_eval, cmd_fixpoint, cmd_game, cmd_reduce, cmd_translate  # noqa: E402
from cli.exit_codes import EXIT_FAILURE, EXIT_PARSE_ERROR  # noqa: E402
from diskernel import __version__  # noqa: E402
from diskernel.environment import get_logging_config, validate_evaluation_config  # noqa: E402
from diskernel.games import StrategySideError  # noqa: E402
from diskernel.logging_utils import setup_json_logging  # noqa: E402
from diskernel.metrics import write_metrics  # noqa: E402
from diskernel.phi_machine import (  # noqa: E402
    InconsistentTableError,
    MachineExpressionError,
    SerializationError,
)
from diskernel.problems import SetExpressionError, UnknownProblemError  # noqa: E402
from diskernel.strategies import StrategySpecError  # noqa: E402

logger = logging.getLogger('diskernel.cli')

COMMANDS = {
    'eval': cmd_eval,
    'fixpoint': cmd_fixpoint,
    'game': cmd_game,
    'reduce': cmd_reduce,
    'translate': cmd_translate,
}

PARSE_ERRORS = (
    MachineExpressionError,
    SerializationError,
    InconsistentTableError,
    UnknownProblemError,
    SetExpressionError,
    StrategySpecError,
    StrategySideError,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='diskernel', description='Type-two computability kernel')
    parser.add_argument('--version', action='version', version=f'diskernel {__version__}')
    sub = parser.add_subparsers(dest='command', required=True)
    for module in COMMANDS.values():
        module.register(sub)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    log_config = get_logging_config()
    setup_json_logging('diskernel', __version__, log_config['level'], run_id=uuid.uuid4().hex[:12])
    for warning in validate_evaluation_config():
        logger.warning(warning)

    try:
        code = COMMANDS[args.command].execute(args)
    except PARSE_ERRORS as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        code = EXIT_PARSE_ERROR
    except Exception as e:
        logger.error(f"Command {args.command} failed: {e}", exc_info=True)
        code = EXIT_FAILURE

    if log_config['metrics_file']:
        write_metrics(log_config['metrics_file'])
    return code


if __name__ == '__main__':
    sys.exit(main())
