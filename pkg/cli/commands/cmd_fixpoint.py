"""
diskernel fixpoint - Compare U R(q) with F⟨q, R(q)⟩ for the parameterized fixpoint R of F
"""

import logging

from cli.commands import add_out_argument, open_trace, positive_int
from cli.exit_codes import EXIT_OK, EXIT_REFUTED, EXIT_VERDICT_UNKNOWN
from diskernel.baire_core import as_word, first_disagreement, interleave_words
from diskernel.environment import get_evaluation_config
from diskernel.phi_machine import fuel_for, load_expr, parse_machine, parse_stream, universal
from diskernel.smn_rec import param_fixpoint

logger = logging.getLogger(__name__)

# U R(q) certifies F⟨q|m, R(q)|m⟩ once the key q|m is listed, for m ≥ 5
MIN_KEY_LENGTH = 5


def register(subparsers):
    """Register the fixpoint command."""
    parser = subparsers.add_parser(
        'fixpoint',
        help='Build R with U R(q) = F⟨q, R(q)⟩ and compare both sides',
        description='Print certified prefixes of U R(q) and F⟨q, R(q)⟩ side by side'
    )
    parser.add_argument('--machine', required=True, help='Machine expression of F (JSON or file)')
    parser.add_argument('--param', required=True, help='Stream expression of q (JSON or file)')
    parser.add_argument('--depth', type=positive_int, default=None, help='Prefix length to compare')
    parser.add_argument(
        '--fuel', type=positive_int, default=None,
        help='Fuel for U R(q) (default: enough to list the key q|max(depth+1, 5))',
    )
    add_out_argument(parser)


def compare_sides(F, q, depth: int, fuel=None) -> dict:
    """
    Certified prefixes of both sides of U R(q) = F⟨q, R(q)⟩, cut to `depth`.

    Both sides read depth + 1 digits (at least MIN_KEY_LENGTH) so that
    machines which lag one digit behind their input still reach `depth`.
    Status is "agree" when both sides certify `depth` digits without a
    disagreement, "disagree" on a disagreement and "unknown" otherwise.
    """
    window = max(depth + 1, MIN_KEY_LENGTH)
    if fuel is None:
        fuel = fuel_for(as_word(q, window))
    r = param_fixpoint(F)(q)
    left = universal(r, fuel).output[:depth]
    right = F(interleave_words(as_word(q, window), as_word(r, window)))[:depth]
    mismatch = first_disagreement(left, right)
    if mismatch is not None:
        status, reached = 'disagree', mismatch
    else:
        reached = min(len(left), len(right))
        status = 'agree' if reached >= depth else 'unknown'
    return {
        'name': as_word(r, depth),
        'universal': left,
        'machine': right,
        'status': status,
        'depth_reached': reached,
    }


def execute(args) -> int:
    """Execute the fixpoint command."""
    depth = args.depth or get_evaluation_config()['depth']
    F = parse_machine(load_expr(args.machine))
    q = parse_stream(load_expr(args.param))

    result = compare_sides(F, q, depth, args.fuel)

    with open_trace(args.out) as trace:
        trace.header('fixpoint', {'machine': F.to_expr(), 'param': q.expr, 'depth': depth, 'fuel': args.fuel})
        trace.emit('name', prefix=list(result['name']))
        trace.emit(
            'compare',
            universal=list(result['universal']),
            machine=list(result['machine']),
            status=result['status'],
            depth_reached=result['depth_reached'],
        )

    logger.info(
        "Compared fixpoint sides",
        extra={'depth': depth, 'status': result['status'], 'depth_reached': result['depth_reached']},
    )
    if result['status'] == 'disagree':
        return EXIT_REFUTED
    if result['status'] == 'unknown':
        return EXIT_VERDICT_UNKNOWN
    return EXIT_OK
