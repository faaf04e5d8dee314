"""
diskernel reduce - Verify reduction witnesses and compile the constructive ones
"""

import json
import logging
import sys

from cli.commands import add_out_argument, open_trace, positive_int
from cli.exit_codes import EXIT_OK, EXIT_REFUTED
from diskernel.environment import get_evaluation_config, get_sampling_config
from diskernel.phi_machine import DigitMap, MachineExpressionError, load_expr, parse_machine
from diskernel.problems import ProblemBundle, catalog, parse_set_expr
from diskernel.reductions import (
    WitnessRefutedError,
    disc_to_dis_reduction,
    dis_to_lpo,
    many_one_to_sw,
    parse_witness,
    reduction_to_disc,
    verify_reduction,
)

logger = logging.getLogger(__name__)

COMPILE_KINDS = ('dis-to-lpo', 'disc-to-dis', 'many-one', 'reduction-to-disc')


def register(subparsers):
    """Register the reduce command and its verify/compile actions."""
    parser = subparsers.add_parser(
        'reduce',
        help='Verify or compile reduction witnesses',
        description='Check witnesses f ≤ g on sampled inputs, or compile the constructive witnesses'
    )
    actions = parser.add_subparsers(dest='action', required=True)

    p_verify = actions.add_parser('verify', help='Sample inputs and adjudicate the composed realizer')
    p_verify.add_argument('--f', required=True, help='Catalog name of the reduced problem')
    p_verify.add_argument('--g', required=True, help='Catalog name of the target problem')
    p_verify.add_argument('--witness', required=True, help='Witness expression (JSON or file) or "identity"')
    p_verify.add_argument('--realizer', default=None, help='Machine expression used as the realizer of g')
    p_verify.add_argument('--samples', type=positive_int, default=None)
    p_verify.add_argument('--depth', type=positive_int, default=None)
    p_verify.add_argument('--fuel', type=positive_int, default=None)
    p_verify.add_argument('--seed', type=int, default=None)
    add_out_argument(p_verify)

    p_compile = actions.add_parser('compile', help='Write a compiled witness or transformer description')
    p_compile.add_argument('--kind', required=True, choices=COMPILE_KINDS)
    p_compile.add_argument('--h', default=None, help='Digit map expression (many-one)')
    p_compile.add_argument('--sets', nargs=2, metavar=('A', 'B'), default=('all', 'all'),
                           help='Set expressions of A and B (many-one)')
    p_compile.add_argument('--problem', default='dis', help='Problem whose discontinuity is used (disc-to-dis)')
    p_compile.add_argument('--witness', default=None, help='Witness expression (reduction-to-disc)')
    add_out_argument(p_compile)


def _verify(args) -> int:
    config = get_evaluation_config()
    sampling = get_sampling_config()
    samples = args.samples or config['samples']
    depth = args.depth or config['depth']
    seed = config['seed'] if args.seed is None else args.seed

    f = catalog(args.f)
    g = catalog(args.g)
    if args.realizer is not None:
        g = ProblemBundle(g.oracle, parse_machine(load_expr(args.realizer)), g.discontinuity)
    if g.realizer is None:
        raise MachineExpressionError(f"problem {g.name!r} has no realizer; pass --realizer")
    witness_text = args.witness.strip()
    wit = parse_witness('identity' if witness_text == 'identity' else load_expr(witness_text))

    report = verify_reduction(
        f.oracle,
        g,
        wit,
        samples,
        depth,
        fuel=args.fuel,
        seed=seed,
        alphabet=sampling['alphabet'],
        max_attempts=sampling['max_attempts'],
    )
    with open_trace(args.out) as trace:
        trace.header('reduce-verify', {
            'f': f.name,
            'g': g.name,
            'witness': wit.to_expr(),
            'samples': samples,
            'depth': depth,
            'fuel': args.fuel,
            'seed': seed,
        })
        trace.emit('report', **report.to_record())

    return EXIT_REFUTED if report.refuted else EXIT_OK


def _compile(args):
    if args.kind == 'dis-to-lpo':
        return dis_to_lpo().to_expr()
    if args.kind == 'disc-to-dis':
        bundle = catalog(args.problem)
        if bundle.discontinuity is None:
            raise MachineExpressionError(f"problem {bundle.name!r} has no discontinuity transformer")
        return disc_to_dis_reduction(bundle.discontinuity).to_expr()
    if args.kind == 'many-one':
        if args.h is None:
            raise MachineExpressionError("many-one needs --h")
        h = parse_machine(load_expr(args.h))
        if not isinstance(h, DigitMap):
            raise MachineExpressionError("many-one --h must be a digit map")
        A, B = (parse_set_expr(s) for s in args.sets)
        seed = get_evaluation_config()['seed']
        alphabet = get_sampling_config()['alphabet']
        return many_one_to_sw(h, A, B, seed=seed, alphabet=alphabet).to_expr()
    if args.witness is None:
        raise MachineExpressionError("reduction-to-disc needs --witness")
    return reduction_to_disc(parse_witness(load_expr(args.witness))).to_expr()


def execute(args) -> int:
    """Execute the reduce command."""
    if args.action == 'verify':
        return _verify(args)

    try:
        description = _compile(args)
    except WitnessRefutedError as e:
        logger.error(f"Compilation refuted: {e}", extra={'kind': args.kind})
        print(f"refuted: {e}", file=sys.stderr)
        return EXIT_REFUTED
    text = json.dumps(description, sort_keys=True, separators=(',', ':')) + '\n'
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, 'w', encoding='utf-8', newline='\n') as fh:
            fh.write(text)
    logger.info("Compiled reduction", extra={'kind': args.kind})
    return EXIT_OK
