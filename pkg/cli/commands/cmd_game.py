"""
diskernel game - Play a Wadge, Lipschitz or Gale-Stewart game for a catalog problem
"""

import logging

from cli.commands import add_out_argument, open_trace, positive_int
from cli.exit_codes import EXIT_OK, EXIT_VERDICT_I, EXIT_VERDICT_UNKNOWN
from diskernel.environment import get_evaluation_config
from diskernel.games import (
    GameVerdict,
    Player,
    adjudicate_run,
    gs_payoff_from_problem,
    run_gale_stewart,
    run_lipschitz,
    run_records,
    run_wadge,
    wadge_to_lipschitz,
)
from diskernel.problems import catalog, word_lift
from diskernel.strategies import parse_strategy

logger = logging.getLogger(__name__)

ENGINES = ('wadge', 'lipschitz', 'gale-stewart')

VERDICT_EXIT_CODES = {
    GameVerdict.II: EXIT_OK,
    GameVerdict.I: EXIT_VERDICT_I,
    GameVerdict.UNKNOWN_AT_DEPTH: EXIT_VERDICT_UNKNOWN,
}


def register(subparsers):
    """Register the game command."""
    parser = subparsers.add_parser(
        'game',
        help='Play a game for a problem',
        description='Run two strategies against each other and adjudicate the finite run'
    )
    parser.add_argument('--problem', required=True, help='Catalog name (id, dis, lpo, nrng, chi:<set>, ...)')
    parser.add_argument('--player-i', required=True, help='Strategy spec for player I')
    parser.add_argument('--player-ii', required=True, help='Strategy spec for player II')
    parser.add_argument('--engine', choices=ENGINES, default='wadge')
    parser.add_argument('--rounds', type=positive_int, default=None)
    parser.add_argument('--depth', type=positive_int, default=None)
    parser.add_argument('--seed', type=int, default=None)
    add_out_argument(parser)


def execute(args) -> int:
    """Execute the game command."""
    config = get_evaluation_config()
    rounds = args.rounds or config['rounds']
    depth = args.depth or config['depth']
    seed = config['seed'] if args.seed is None else args.seed

    bundle = catalog(args.problem)
    s_I = parse_strategy(args.player_i, Player.I, bundle, seed)
    s_II = parse_strategy(args.player_ii, Player.II, bundle, seed + 1)

    with open_trace(args.out) as trace:
        trace.header('game', {
            'problem': bundle.name,
            'player_i': args.player_i,
            'player_ii': args.player_ii,
            'engine': args.engine,
            'rounds': rounds,
            'depth': depth,
            'seed': seed,
        })

        if args.engine == 'wadge':
            oracle = bundle.oracle
            run = run_wadge(s_I, s_II, rounds)
            for record in run_records(run, oracle, depth):
                trace.emit('move', **record)
            verdict = adjudicate_run(run, oracle, depth)
            trace.emit('verdict', verdict=verdict.value, x=list(run.x[:depth]), y=list(run.y[:depth]))
        elif args.engine == 'lipschitz':
            oracle = word_lift(bundle.oracle)
            run = run_lipschitz(wadge_to_lipschitz(s_I), wadge_to_lipschitz(s_II), rounds)
            for record in run_records(run, oracle, depth):
                trace.emit('move', **record)
            verdict = adjudicate_run(run, oracle, depth, engine='lipschitz')
            trace.emit('verdict', verdict=verdict.value, x=list(run.x[:depth]), y=list(run.y[:depth]))
        else:
            payoff = gs_payoff_from_problem(word_lift(bundle.oracle))
            run, verdict = run_gale_stewart(wadge_to_lipschitz(s_I), wadge_to_lipschitz(s_II), payoff, rounds)
            trace.emit('verdict', verdict=verdict.value, run=list(run.interleaved))

    logger.info("Game finished", extra={'problem': bundle.name, 'engine': args.engine, 'verdict': verdict.value})
    return VERDICT_EXIT_CODES[verdict]
