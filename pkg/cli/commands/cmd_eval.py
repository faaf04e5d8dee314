"""
diskernel eval - Evaluate a name on an input with bounded fuel
"""

import logging

from cli.commands import add_out_argument, open_trace, positive_int
from cli.exit_codes import EXIT_OK
from diskernel.environment import default_fuel, get_evaluation_config
from diskernel.phi_machine import EvalStatus, NameEvaluator, load_expr, parse_stream

logger = logging.getLogger(__name__)


def register(subparsers):
    """Register the eval command."""
    parser = subparsers.add_parser(
        'eval',
        help='Evaluate Φ_q(x) with bounded fuel',
        description='Decode the name pair by pair and report the certified output after each step that changes it'
    )
    parser.add_argument('--name', required=True, help='Stream expression of the name q (JSON or file)')
    parser.add_argument('--input', required=True, help='Stream expression of the input x (JSON or file)')
    parser.add_argument('--fuel', type=positive_int, default=None, help='Pairs to decode (default: 64·depth)')
    add_out_argument(parser)


def execute(args) -> int:
    """Execute the eval command."""
    config = get_evaluation_config()
    fuel = args.fuel or default_fuel(config['depth'], config['fuel_factor'])
    q = parse_stream(load_expr(args.name))
    x = parse_stream(load_expr(args.input))

    evaluator = NameEvaluator(q, x)
    with open_trace(args.out) as trace:
        trace.header('eval', {'name': q.expr, 'input': x.expr, 'fuel': fuel})
        last = None
        while evaluator.pairs_read < fuel and evaluator.step():
            outcome = evaluator.outcome()
            if outcome.output != last:
                trace.emit('step', fuel=outcome.pairs_read, output=list(outcome.output))
                last = outcome.output
        outcome = evaluator.outcome()
        record = {
            'fuel': fuel,
            'pairs_read': outcome.pairs_read,
            'output': list(outcome.output),
            'status': outcome.status.value,
        }
        if outcome.status is EvalStatus.INCONSISTENT_NAME:
            record['conflict'] = list(outcome.conflict)
        trace.emit('result', **record)

    logger.info("Evaluated name", extra={'fuel': fuel, 'status': outcome.status.value})
    return EXIT_OK
