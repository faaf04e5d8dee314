"""
diskernel translate - Translate strategies between Wadge and Lipschitz games
"""

import logging
import random

from cli.commands import add_out_argument, open_trace, positive_int
from cli.exit_codes import EXIT_OK, EXIT_REFUTED
from diskernel.baire_core import word_code, word_decode
from diskernel.environment import get_evaluation_config, get_sampling_config
from diskernel.games import Player, lipschitz_to_wadge, wadge_to_lipschitz
from diskernel.phi_machine import MachineExpressionError, load_expr
from diskernel.strategies import parse_lipschitz_strategy, parse_strategy, sample_history

logger = logging.getLogger(__name__)

DIRECTIONS = ('wadge-to-lipschitz', 'lipschitz-to-wadge')


def register(subparsers):
    """Register the translate command."""
    parser = subparsers.add_parser(
        'translate',
        help='Translate a strategy through the word numbering',
        description='Tabulate the translated strategy on sampled histories and check the round trip'
    )
    parser.add_argument('--strategy', required=True, help='Strategy spec (word spec or digit spec by direction)')
    parser.add_argument('--direction', required=True, choices=DIRECTIONS)
    parser.add_argument('--side', choices=[p.value for p in Player], default=Player.II.value)
    parser.add_argument('--histories', type=positive_int, default=10)
    parser.add_argument(
        '--history', action='append', default=None,
        help='Explicit history as JSON: a list of words (wadge-to-lipschitz) or of digits; '
             'repeatable, replaces sampling',
    )
    parser.add_argument('--seed', type=int, default=None)
    add_out_argument(parser)


def parse_history(text: str, direction: str):
    """A --history value as a list of words or a list of digits."""
    value = load_expr(text)
    try:
        if not isinstance(value, list):
            raise TypeError(type(value).__name__)
        if direction == 'wadge-to-lipschitz':
            return [tuple(int(d) for d in w) for w in value]
        return [int(n) for n in value]
    except (TypeError, ValueError) as e:
        raise MachineExpressionError(f"bad history {text!r} for {direction}: {e}")


def execute(args) -> int:
    """Execute the translate command."""
    config = get_evaluation_config()
    sampling = get_sampling_config()
    seed = config['seed'] if args.seed is None else args.seed
    side = Player(args.side)
    rng = random.Random(seed)
    mismatches = 0

    given = [parse_history(h, args.direction) for h in args.history] if args.history else None
    count = len(given) if given is not None else args.histories

    with open_trace(args.out) as trace:
        trace.header('translate', {
            'strategy': args.strategy,
            'direction': args.direction,
            'side': side.value,
            'histories': count,
            'seed': seed,
        })
        if args.direction == 'wadge-to-lipschitz':
            sigma = parse_strategy(args.strategy, side, seed=seed)
            lam = wadge_to_lipschitz(sigma)
            back = lipschitz_to_wadge(lam)
            for i in range(count):
                if given is not None:
                    words = given[i]
                else:
                    words = sample_history(rng, rng.randint(1, 4), sampling['alphabet'], sampling['max_word_length'])
                digits = [word_code(w) for w in words]
                move = lam(digits)
                same = back(words) == sigma(words)
                mismatches += not same
                trace.emit('history', history=digits, move=move, roundtrip=same)
        else:
            lam = parse_lipschitz_strategy(args.strategy, side, seed=seed)
            sigma = lipschitz_to_wadge(lam)
            back = wadge_to_lipschitz(sigma)
            for i in range(count):
                if given is not None:
                    digits = given[i]
                else:
                    digits = [rng.randrange(sampling['alphabet'] ** 2) for _ in range(rng.randint(1, 4))]
                words = [word_decode(n) for n in digits]
                move = sigma(words)
                same = back(digits) == lam(digits)
                mismatches += not same
                trace.emit('history', history=[list(w) for w in words], move=list(move), roundtrip=same)
        trace.emit('summary', histories=count, mismatches=mismatches)

    logger.info("Translated strategy", extra={'direction': args.direction, 'mismatches': mismatches})
    return EXIT_OK if mismatches == 0 else EXIT_REFUTED
