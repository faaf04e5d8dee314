#!/usr/bin/env python3
"""
diskernel - Game Engines

Wadge, Lipschitz and Gale-Stewart games, plus the compilers between
strategies and realizers / discontinuity functions.

Key Features:
- Word moves for both players in the Wadge engine, digit moves in the
  Lipschitz and Gale-Stewart engines; player I always moves first
- Finite runs are adjudicated only from certified oracle evidence, so a
  verdict reached at one depth is kept at every greater depth
- Strategy compilers: realizer -> II-strategy and back, discontinuity
  function -> I-strategy and back
- Wadge <-> Lipschitz translation through the word numbering

Usage:
    from diskernel.games import realizer_to_strategy_II, run_wadge, adjudicate_run

    run = run_wadge(opponent, realizer_to_strategy_II(h), rounds=4)
    adjudicate_run(run, bundle.oracle, depth=16)

Author: diskernel Development Team
License: MIT
Version: 0.1.0
"""

from dataclasses import dataclass, field
from enum import Enum
import logging
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from diskernel import metrics
from diskernel.baire_core import EMPTY, Word, cantor_pair, interleave_words, word_code, word_decode
from diskernel.phi_machine import MonotoneMachine, SerializationError, eval_name
from diskernel.problems import ProblemOracle, SetOracle, Verdict, totalize
from diskernel.smn_rec import NameTransformer

logger = logging.getLogger(__name__)


class StrategySideError(Exception):
    """Raised when a strategy is played or compiled on the wrong side."""
    pass


class Player(str, Enum):
    I = "I"
    II = "II"


class GameVerdict(str, Enum):
    I = "I"
    II = "II"
    UNKNOWN_AT_DEPTH = "unknown_at_depth"


WadgeHistory = Tuple[Word, ...]
LipschitzHistory = Tuple[int, ...]


@dataclass(frozen=True)
class WadgeStrategy:
    """
    Word strategy.

    For II, move(x_0, ..., x_i) is y_i; for I, move(y_0, ..., y_{i-1}) is x_i.
    Moves may be the empty word.
    """

    side: Player
    move: Callable[[WadgeHistory], Sequence[int]]
    label: str = "strategy"
    expr: Optional[Dict[str, Any]] = None

    def __call__(self, history: Sequence[Sequence[int]]) -> Word:
        return tuple(self.move(tuple(tuple(w) for w in history)))


@dataclass(frozen=True)
class LipschitzStrategy:
    """Digit strategy: the same histories as WadgeStrategy, with digits for words."""

    side: Player
    move: Callable[[LipschitzHistory], int]
    label: str = "strategy"

    def __call__(self, history: Sequence[int]) -> int:
        return int(self.move(tuple(history)))


@dataclass
class Run:
    """Moves of a finite run; x and y are the concatenations."""

    x_moves: List[Word] = field(default_factory=list)
    y_moves: List[Word] = field(default_factory=list)

    @property
    def x(self) -> Word:
        return tuple(d for w in self.x_moves for d in w)

    @property
    def y(self) -> Word:
        return tuple(d for w in self.y_moves for d in w)

    @property
    def interleaved(self) -> Word:
        """Gale-Stewart run word x_0 y_0 x_1 y_1 ... of a digit run."""
        return interleave_words(self.x, self.y)

    @property
    def i_stalled(self) -> bool:
        """I's latest move is empty, so x is taken to be finite."""
        return bool(self.x_moves) and not self.x_moves[-1]

    def truncated(self, rounds: int) -> "Run":
        return Run(self.x_moves[:rounds], self.y_moves[:rounds])


def _check_sides(sI, sII) -> None:
    if sI.side is not Player.I:
        raise StrategySideError(f"strategy {sI.label!r} plays for {sI.side.value}, expected I")
    if sII.side is not Player.II:
        raise StrategySideError(f"strategy {sII.label!r} plays for {sII.side.value}, expected II")


def run_wadge(sI: WadgeStrategy, sII: WadgeStrategy, rounds: int) -> Run:
    """Play `rounds` rounds; I sees II's earlier moves, II sees I's moves including the current one."""
    _check_sides(sI, sII)
    run = Run()
    for _ in range(rounds):
        run.x_moves.append(sI(run.y_moves))
        run.y_moves.append(sII(run.x_moves))
    logger.debug("Played Wadge run", extra={"rounds": rounds, "x_len": len(run.x), "y_len": len(run.y)})
    return run


def adjudicate_prefixes(x: Word, y: Word, f: ProblemOracle, x_finite: bool = False) -> GameVerdict:
    """
    Verdict on finite prefixes.

    With x_finite (I stalled) only a certified dom Reject decides, for II.
    """
    dom = f.dom(x)
    if x_finite:
        return GameVerdict.II if dom is Verdict.REJECT else GameVerdict.UNKNOWN_AT_DEPTH
    graph = f.graph(x, y)
    if graph is Verdict.ACCEPT or dom is Verdict.REJECT:
        return GameVerdict.II
    if graph is Verdict.REJECT and dom is Verdict.ACCEPT:
        return GameVerdict.I
    return GameVerdict.UNKNOWN_AT_DEPTH


def adjudicate_run(run: Run, f: ProblemOracle, depth: int, engine: str = "wadge") -> GameVerdict:
    """
    Winner of a finite run as certified at `depth`.

    II wins on graph Accept or dom Reject, I on graph Reject with dom Accept;
    everything else is UNKNOWN_AT_DEPTH. A run whose last I-move is empty
    has a finite x: II wins it only on dom Reject and I never does. A finite
    y gives I the win only through graph Reject.
    """
    verdict = adjudicate_prefixes(run.x[:depth], run.y[:depth], f, x_finite=run.i_stalled)
    metrics.METRIC_GAME_VERDICTS_TOTAL.labels(engine=engine, verdict=verdict.value).inc()
    return verdict


def run_records(run: Run, f: ProblemOracle, depth: int) -> Iterator[Dict[str, Any]]:
    """Per-move records {round, player, move, x, y, verdict} for traces."""
    for i in range(len(run.x_moves)):
        for player in (Player.I, Player.II):
            part = Run(run.x_moves[: i + 1], run.y_moves[: i + (player is Player.II)])
            move = run.x_moves[i] if player is Player.I else run.y_moves[i]
            yield {
                "round": i,
                "player": player.value,
                "move": list(move),
                "x": list(part.x[:depth]),
                "y": list(part.y[:depth]),
                "verdict": adjudicate_prefixes(part.x[:depth], part.y[:depth], f, part.i_stalled).value,
            }


# =====================================================================
# Realizers and II-strategies
# =====================================================================

def realizer_to_strategy_II(h: MonotoneMachine) -> WadgeStrategy:
    """y_i extends h(x_0...x_{i-1}) to h(x_0...x_i)."""

    def move(history: WadgeHistory) -> Word:
        if not history:
            return EMPTY
        before = tuple(d for w in history[:-1] for d in w)
        now = before + tuple(history[-1])
        done = len(h(before)) if len(history) > 1 else 0
        return h(now)[done:]

    try:
        expr = {"compiler": "realizer", "machine": h.to_expr()}
    except SerializationError:
        expr = None
    return WadgeStrategy(Player.II, move, f"realizer({type(h).__name__})", expr)


class StrategyRealizer(MonotoneMachine):
    """h(a_0...a_i) = σ(a_0) σ(a_0, a_1) ... σ(a_0, ..., a_i) with one-digit I-moves."""

    op = "strategy-realizer"

    def __init__(self, strategy: WadgeStrategy):
        self.strategy = strategy

    def apply(self, u: Word) -> Word:
        out: List[int] = []
        for i in range(len(u)):
            out.extend(self.strategy([(d,) for d in u[: i + 1]]))
        return tuple(out)

    @property
    def trusted(self) -> bool:
        return True

    def to_expr(self) -> Dict[str, Any]:
        raise SerializationError(f"strategy realizer '{self.strategy.label}' cannot be serialized")

    def __repr__(self) -> str:
        return f"<StrategyRealizer {self.strategy.label}>"


def strategy_II_to_realizer(s: WadgeStrategy) -> MonotoneMachine:
    if s.side is not Player.II:
        raise StrategySideError(f"strategy {s.label!r} is not a II-strategy")
    return StrategyRealizer(s)


# =====================================================================
# Discontinuity functions and I-strategies
# =====================================================================

def history_digits(x_moves: Sequence[Word], y_moves: Sequence[Word]) -> Word:
    """Digits ⟨w(W_j), w(V_j)⟩ of the cumulative I- and II-words after each round j."""
    digits = []
    W: Word = EMPTY
    V: Word = EMPTY
    for w, v in zip(x_moves, y_moves):
        W += tuple(w)
        V += tuple(v)
        digits.append(cantor_pair(word_code(W), word_code(V)))
    return tuple(digits)


def disc_to_strategy_I(h: MonotoneMachine) -> WadgeStrategy:
    """
    I-strategy from the word map h of a discontinuity function.

    w_0 = h(ε) and w_0...w_i = h(⟨W_0, V_0⟩ ... ⟨W_{i-1}, V_{i-1}⟩): the history
    digits list II's play as the graph of a function, and I plays D of its name.
    """

    def move(history: WadgeHistory) -> Word:
        x_moves: List[Word] = []
        for i in range(len(history) + 1):
            played = tuple(d for w in x_moves for d in w)
            word = h(history_digits(x_moves, history[:i]))
            x_moves.append(word[len(played):])
        return x_moves[-1]

    try:
        expr = {"compiler": "disc", "machine": h.to_expr()}
    except SerializationError:
        expr = None
    return WadgeStrategy(Player.I, move, f"disc({type(h).__name__})", expr)


class StrategyDiscontinuity(MonotoneMachine):
    """
    Word map of D(p) = w_0 w_1 ... for an I-strategy σ.

    w_i = σ(v_0, ..., v_{i-1}) and v_0...v_i = h_p(w_0...w_i) with
    h_p(u) = Φ_p(u) at fuel |u|; a round is played only while the name prefix
    covers the I-word, and at most |p| + 1 rounds are played.
    """

    op = "strategy-disc"

    def __init__(self, strategy: WadgeStrategy):
        self.strategy = strategy

    def apply(self, u: Word) -> Word:
        W: Word = EMPTY
        V: Word = EMPTY
        y_moves: List[Word] = []
        for _ in range(len(u) + 1):
            W += self.strategy(y_moves)
            if len(u) < len(W):
                break
            response = eval_name(u, W, len(W)).output
            y_moves.append(response[len(V):])
            V = response if len(response) > len(V) else V
        return W

    @property
    def trusted(self) -> bool:
        return True

    def to_expr(self) -> Dict[str, Any]:
        raise SerializationError(f"strategy transformer '{self.strategy.label}' cannot be serialized")

    def __repr__(self) -> str:
        return f"<StrategyDiscontinuity {self.strategy.label}>"


def strategy_I_to_disc(s: WadgeStrategy) -> NameTransformer:
    if s.side is not Player.I:
        raise StrategySideError(f"strategy {s.label!r} is not an I-strategy")
    return NameTransformer(StrategyDiscontinuity(s), label=f"strategy_disc({s.label})")


# =====================================================================
# Lipschitz and Gale-Stewart games
# =====================================================================

def wadge_to_lipschitz(s: WadgeStrategy) -> LipschitzStrategy:
    """λ(n_0, ..., n_k) = w^-1 σ(w_{n_0}, ..., w_{n_k})."""

    def move(history: LipschitzHistory) -> int:
        return word_code(s([word_decode(n) for n in history]))

    return LipschitzStrategy(s.side, move, f"lipschitz({s.label})")


def lipschitz_to_wadge(l: LipschitzStrategy) -> WadgeStrategy:
    """σ(w_0, ..., w_k) = w_{λ(w^-1 w_0, ..., w^-1 w_k)}."""

    def move(history: WadgeHistory) -> Word:
        return word_decode(l([word_code(w) for w in history]))

    return WadgeStrategy(l.side, move, f"wadge({l.label})")


def run_lipschitz(lI: LipschitzStrategy, lII: LipschitzStrategy, rounds: int) -> Run:
    _check_sides(lI, lII)
    xs: List[int] = []
    ys: List[int] = []
    for _ in range(rounds):
        xs.append(lI(ys))
        ys.append(lII(xs))
    return Run([(d,) for d in xs], [(d,) for d in ys])


def gs_payoff_from_problem(f: ProblemOracle) -> SetOracle:
    """Payoff set for II on runs ⟨x, y⟩: the graph of the totalization Tf."""
    tf = totalize(f)

    def adj(r: Word) -> Verdict:
        return tf.graph(r[0::2], r[1::2])

    return SetOracle(f"payoff({f.name})", adj)


def run_gale_stewart(
    lI: LipschitzStrategy, lII: LipschitzStrategy, A: SetOracle, rounds: int
) -> Tuple[Run, GameVerdict]:
    """Digit run and its verdict: II on A Accept, I on A Reject, else UNKNOWN_AT_DEPTH."""
    run = run_lipschitz(lI, lII, rounds)
    membership = A(run.interleaved)
    if membership is Verdict.ACCEPT:
        verdict = GameVerdict.II
    elif membership is Verdict.REJECT:
        verdict = GameVerdict.I
    else:
        verdict = GameVerdict.UNKNOWN_AT_DEPTH
    metrics.METRIC_GAME_VERDICTS_TOTAL.labels(engine="gale-stewart", verdict=verdict.value).inc()
    return run, verdict
