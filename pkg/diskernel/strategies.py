"""
diskernel - Stock Strategies

Opponents for both game engines and the strategy-spec parser used by the CLI.

Specs:
    echo | const:<d,d,...> | stall | random
    realizer:<EXPR>   II, compiled from a machine expression
    realizer          II, compiled from the problem's realizer
    disc              I, compiled from the problem's discontinuity transformer
"""

import logging
import random
from typing import Optional, Sequence

from diskernel.baire_core import EMPTY, Word
from diskernel.environment import DEFAULT_ALPHABET, DEFAULT_MAX_WORD_LENGTH, DEFAULT_SEED
from diskernel.games import (
    LipschitzStrategy,
    Player,
    WadgeStrategy,
    disc_to_strategy_I,
    realizer_to_strategy_II,
)
from diskernel.phi_machine import MachineExpressionError, load_expr, parse_machine
from diskernel.problems import ProblemBundle

logger = logging.getLogger(__name__)


class StrategySpecError(Exception):
    """Raised when a strategy spec cannot be resolved."""
    pass


def echo(side: Player) -> WadgeStrategy:
    """Repeat the opponent's last move; I opens with (0,)."""

    def move(history):
        if not history:
            return (0,)
        return history[-1]

    return WadgeStrategy(side, move, "echo", {"spec": "echo"})


def constant(word: Sequence[int], side: Player) -> WadgeStrategy:
    word = tuple(word)
    spec = "const:" + ",".join(str(d) for d in word)
    return WadgeStrategy(side, lambda history: word, spec, {"spec": spec})


def stall(side: Player) -> WadgeStrategy:
    """Always play the empty word."""
    return WadgeStrategy(side, lambda history: EMPTY, "stall", {"spec": "stall"})


def _history_rng(seed: int, history) -> random.Random:
    return random.Random(f"{seed}:{list(history)}")


def random_strategy(
    side: Player,
    seed: int = DEFAULT_SEED,
    alphabet: int = DEFAULT_ALPHABET,
    max_word_length: int = DEFAULT_MAX_WORD_LENGTH,
) -> WadgeStrategy:
    """Seeded random words of length ≤ max_word_length; the move depends only on seed and history."""

    def move(history) -> Word:
        rng = _history_rng(seed, history)
        length = rng.randint(0, max_word_length)
        return tuple(rng.randrange(alphabet) for _ in range(length))

    return WadgeStrategy(side, move, f"random:{seed}", {"spec": "random", "seed": seed})


def lipschitz_echo(side: Player) -> LipschitzStrategy:
    return LipschitzStrategy(side, lambda history: history[-1] if history else 0, "echo")


def lipschitz_constant(d: int, side: Player) -> LipschitzStrategy:
    return LipschitzStrategy(side, lambda history: d, f"const:{d}")


def lipschitz_random(side: Player, seed: int = DEFAULT_SEED, alphabet: int = DEFAULT_ALPHABET) -> LipschitzStrategy:
    def move(history) -> int:
        return _history_rng(seed, history).randrange(alphabet)

    return LipschitzStrategy(side, move, f"random:{seed}")


def parse_strategy(
    spec: str,
    side: Player,
    bundle: Optional[ProblemBundle] = None,
    seed: int = DEFAULT_SEED,
) -> WadgeStrategy:
    """
    Resolve a strategy spec for `side`.

    Raises:
        StrategySpecError: Unknown spec, wrong side, or a compiler input the bundle lacks
    """
    spec = spec.strip()
    if spec == "echo":
        return echo(side)
    if spec == "stall":
        return stall(side)
    if spec == "random":
        return random_strategy(side, seed)
    if spec.startswith("const:"):
        try:
            return constant([int(d) for d in spec[len("const:"):].split(",") if d != ""], side)
        except ValueError as e:
            raise StrategySpecError(f"bad constant strategy {spec!r}: {e}")
    if spec == "realizer" or spec.startswith("realizer:"):
        if side is not Player.II:
            raise StrategySpecError("realizer strategies play for II")
        if spec == "realizer":
            if bundle is None or bundle.realizer is None:
                raise StrategySpecError("problem carries no realizer")
            return realizer_to_strategy_II(bundle.realizer)
        try:
            return realizer_to_strategy_II(parse_machine(load_expr(spec[len("realizer:"):])))
        except MachineExpressionError as e:
            raise StrategySpecError(str(e))
    if spec == "disc":
        if side is not Player.I:
            raise StrategySpecError("disc strategies play for I")
        if bundle is None or bundle.discontinuity is None:
            raise StrategySpecError("problem carries no discontinuity transformer")
        return disc_to_strategy_I(bundle.discontinuity.word_map)
    raise StrategySpecError(f"unknown strategy spec: {spec!r}")


def parse_lipschitz_strategy(spec: str, side: Player, seed: int = DEFAULT_SEED) -> LipschitzStrategy:
    """
    Resolve a digit-strategy spec: echo | const:<d> | random.

    Raises:
        StrategySpecError: Unknown spec
    """
    spec = spec.strip()
    if spec == "echo":
        return lipschitz_echo(side)
    if spec == "random":
        return lipschitz_random(side, seed)
    if spec.startswith("const:"):
        try:
            return lipschitz_constant(int(spec[len("const:"):]), side)
        except ValueError as e:
            raise StrategySpecError(f"bad constant strategy {spec!r}: {e}")
    raise StrategySpecError(f"unknown digit strategy spec: {spec!r}")


def sample_history(rng: random.Random, rounds: int, alphabet: int = DEFAULT_ALPHABET,
                   max_word_length: int = DEFAULT_MAX_WORD_LENGTH) -> list:
    """A history of `rounds` random words of length ≤ max_word_length."""
    return [
        tuple(rng.randrange(alphabet) for _ in range(rng.randint(0, max_word_length)))
        for _ in range(rounds)
    ]
