#!/usr/bin/env python3
"""
diskernel - Problems and the Problem Catalog

Problems on Baire space are observed through three-valued, prefix-monotone
adjudicators: Accept and Reject are certificates about every infinite
extension of the data seen so far, Unknown is everything else.

Catalog:
- id, DIS (with its discontinuity function), LPO, NRNG
- χ_A for Sierpiński-valued characteristic problems, B/A for set games
- Δ_A on names of open sets, the totalization Tf and the word lifting f^w

Codings:
- Sierpiński space: 000... is 0, any nonzero digit certifies 1
- {0,1} (LPO): the first output digit; 1 means a nonzero input digit was
  witnessed, digits above 1 are invalid codes
- N inside χ-problems: the first digit of the stream
- 2^N (NRNG): bit streams

Author: diskernel Development Team
License: MIT
Version: 0.1.0
"""

from dataclasses import dataclass
from enum import Enum
import logging
from typing import Any, Callable, Dict, FrozenSet, Iterable, Optional, Sequence

from diskernel.baire_core import EMPTY, Stream, Word, as_word, first_disagreement, to_word, word_decode
from diskernel.phi_machine import (
    Identity,
    MachineExpressionError,
    MonotoneMachine,
    SerializationError,
    Universal,
    encode_machine,
    eval_name,
    fuel_for,
    register_machine,
    universal_word,
)
from diskernel.smn_rec import NameTransformer, param_fixpoint, smn_transform

logger = logging.getLogger(__name__)

DEFAULT_LPO_HORIZON = 4


class UnknownProblemError(Exception):
    """Raised when a catalog name does not resolve to a problem."""
    pass


class SetExpressionError(Exception):
    """Raised when a set expression cannot be parsed."""
    pass


class Verdict(str, Enum):
    ACCEPT = "accept"
    REJECT = "reject"
    UNKNOWN = "unknown"


def _nonzero(u: Sequence[int]) -> bool:
    return any(d != 0 for d in u)


# =====================================================================
# Oracles
# =====================================================================

@dataclass(frozen=True)
class SetOracle:
    """
    Prefix adjudicator for a subset of Baire space.

    Attributes:
        name: Label (also the set expression when `expr` is set)
        adj: Word -> Verdict
        expr: Set expression accepted by parse_set_expr, when one exists
    """

    name: str
    adj: Callable[[Word], Verdict]
    expr: Optional[str] = None

    def __call__(self, u: Sequence[int]) -> Verdict:
        return self.adj(to_word(u))


@dataclass(frozen=True)
class ProblemOracle:
    """
    Adjudicators for dom(f) and graph(f) of a problem f on Baire space.

    dom_adj(u): Accept when every extension of u lies in dom(f), Reject when none does.
    graph_adj(u, v): Accept when every extension pair is in graph(f), Reject when none is.
    """

    name: str
    dom_adj: Callable[[Word], Verdict]
    graph_adj: Callable[[Word, Word], Verdict]

    def dom(self, u: Sequence[int]) -> Verdict:
        return self.dom_adj(to_word(u))

    def graph(self, u: Sequence[int], v: Sequence[int]) -> Verdict:
        return self.graph_adj(to_word(u), to_word(v))


@dataclass(frozen=True)
class ProblemBundle:
    """A problem oracle with an optional realizer and discontinuity transformer."""

    oracle: ProblemOracle
    realizer: Optional[MonotoneMachine] = None
    discontinuity: Optional[NameTransformer] = None

    @property
    def name(self) -> str:
        return self.oracle.name


def _always_accept(u: Word) -> Verdict:
    return Verdict.ACCEPT


# =====================================================================
# Sets
# =====================================================================

def clopen_set(length: int, members: Iterable[Sequence[int]], name: Optional[str] = None) -> SetOracle:
    """Set decided by the first `length` digits: membership of the prefix in `members`."""
    table: FrozenSet[Word] = frozenset(tuple(m) for m in members)
    if any(len(m) != length for m in table):
        raise SetExpressionError(f"clopen members must all have length {length}")

    def adj(u: Word) -> Verdict:
        if len(u) < length:
            return Verdict.UNKNOWN
        return Verdict.ACCEPT if u[:length] in table else Verdict.REJECT

    label = name or f"clopen{length}:{sorted(table)}"
    return SetOracle(label, adj)


def first_digit_set(name: str, predicate: Callable[[int], bool], expr: Optional[str] = None) -> SetOracle:
    """Set of points whose first digit satisfies `predicate` (N coded by the first digit)."""

    def adj(u: Word) -> Verdict:
        if not u:
            return Verdict.UNKNOWN
        return Verdict.ACCEPT if predicate(u[0]) else Verdict.REJECT

    return SetOracle(name, adj, expr)


def parse_set_expr(text: str) -> SetOracle:
    """
    Parse a set expression.

    Grammar:
        all | none | even | odd | first:<d>,<d>,... | prefix:<d>.<d>....
    """
    text = text.strip()
    if text == "all":
        return SetOracle("all", lambda u: Verdict.ACCEPT, text)
    if text == "none":
        return SetOracle("none", lambda u: Verdict.REJECT, text)
    if text == "even":
        return first_digit_set("even", lambda d: d % 2 == 0, text)
    if text == "odd":
        return first_digit_set("odd", lambda d: d % 2 == 1, text)
    kind, _, body = text.partition(":")
    try:
        if kind == "first" and body:
            digits = frozenset(int(d) for d in body.split(","))
            return first_digit_set(text, lambda d: d in digits, text)
        if kind == "prefix" and body:
            word = tuple(int(d) for d in body.split("."))
            oracle = clopen_set(len(word), [word], name=text)
            return SetOracle(text, oracle.adj, text)
    except ValueError as e:
        raise SetExpressionError(f"bad digits in set expression {text!r}: {e}")
    raise SetExpressionError(f"unknown set expression: {text!r}")


# =====================================================================
# Machines used as realizers
# =====================================================================

@register_machine("lpo-horizon")
@dataclass(frozen=True, repr=False)
class LpoHorizon(MonotoneMachine):
    """
    Finite-horizon LPO approximant.

    Silent on words shorter than `horizon`; afterwards answers from the first
    `horizon` digits with a constant answer stream (1 when a nonzero digit was
    seen, else 0), one answer digit per input digit beyond the horizon. It is
    wrong exactly on inputs whose first nonzero digit lies beyond the horizon.
    """

    horizon: int = DEFAULT_LPO_HORIZON

    def apply(self, u: Word) -> Word:
        if len(u) < self.horizon:
            return EMPTY
        answer = 1 if _nonzero(u[: self.horizon]) else 0
        return (answer,) * (len(u) - self.horizon + 1)

    def to_expr(self) -> Dict[str, Any]:
        return {"op": self.op, "horizon": self.horizon}

    @classmethod
    def from_expr(cls, expr):
        try:
            return cls(int(expr.get("horizon", DEFAULT_LPO_HORIZON)))
        except (TypeError, ValueError) as e:
            raise MachineExpressionError(f"bad lpo horizon: {e}")


def lpo_horizon(n: int = DEFAULT_LPO_HORIZON) -> LpoHorizon:
    return LpoHorizon(n)


@register_machine("indicator")
@dataclass(frozen=True, repr=False)
class SierpinskiIndicator(MonotoneMachine):
    """Realizer of χ_A: digit i is 1 once A accepts the first i+1 input digits."""

    A: SetOracle

    def apply(self, u: Word) -> Word:
        out = []
        seen = False
        for i in range(len(u)):
            seen = seen or self.A(u[: i + 1]) is Verdict.ACCEPT
            out.append(1 if seen else 0)
        return tuple(out)

    def to_expr(self) -> Dict[str, Any]:
        if self.A.expr is None:
            raise SerializationError(f"set {self.A.name!r} has no set expression")
        return {"op": self.op, "set": self.A.expr}

    @classmethod
    def from_expr(cls, expr):
        try:
            return cls(parse_set_expr(str(expr["set"])))
        except (KeyError, SetExpressionError) as e:
            raise MachineExpressionError(f"bad indicator set: {e}")


def sierpinski_indicator(A: SetOracle) -> SierpinskiIndicator:
    return SierpinskiIndicator(A)


@register_machine("sierpinski")
@dataclass(frozen=True, repr=False)
class SierpinskiBits(MonotoneMachine):
    """
    On ⟨q, x⟩: bit j is 1 iff Φ_q(x|j+1) with fuel j+1 has emitted a nonzero digit.

    Only bits with both j+1 name digits and j+1 input digits available are
    emitted, so the output grows by one digit per input digit pair.
    """

    def apply(self, u: Word) -> Word:
        name, x = u[0::2], u[1::2]
        out = []
        seen = False
        for j in range(min(len(name), len(x))):
            seen = seen or _nonzero(eval_name(name, x[: j + 1], j + 1).output)
            out.append(1 if seen else 0)
        return tuple(out)


_TOTALIZER = smn_transform(SierpinskiBits())


def totalizer_transformer() -> NameTransformer:
    """G as a name transformer."""
    return _TOTALIZER


def sierpinski_totalizer(q: Stream) -> Stream:
    """
    G(q): a consistent name of a total function with δ_S Φ_{G(q)} = δ_S Φ_q.

    Φ_{G(q)}(x) emits 0 while the fuel-bounded simulation of Φ_q(x) has only
    emitted zeros and 1 forever once it emits a nonzero digit; its section
    machine emits one digit per input digit.
    """
    return _TOTALIZER(q)


# =====================================================================
# Catalog
# =====================================================================

def id_problem() -> ProblemBundle:
    """The identity on Baire space."""

    def graph_adj(u: Word, v: Word) -> Verdict:
        return Verdict.REJECT if first_disagreement(u, v) is not None else Verdict.UNKNOWN

    return ProblemBundle(ProblemOracle("id", _always_accept, graph_adj), realizer=Identity())


def _dis_graph_adj(u: Word, v: Word) -> Verdict:
    if first_disagreement(universal_word(u), v) is not None:
        return Verdict.ACCEPT
    return Verdict.UNKNOWN


DIS_ORACLE = ProblemOracle("dis", _always_accept, _dis_graph_adj)

_DIS_DISCONTINUITY: Optional[NameTransformer] = None


def dis_discontinuity() -> NameTransformer:
    """D with U D(p) = U⟨p, D(p)⟩ = Φ_p D(p), built as param_fixpoint(U)."""
    global _DIS_DISCONTINUITY
    if _DIS_DISCONTINUITY is None:
        _DIS_DISCONTINUITY = param_fixpoint(Universal())
        _DIS_DISCONTINUITY.label = "dis_discontinuity"
    return _DIS_DISCONTINUITY


def dis_problem() -> ProblemBundle:
    """DIS: p ↦ {q : U(p) ≠ q}. Total; Reject is never certifiable."""
    return ProblemBundle(DIS_ORACLE, discontinuity=dis_discontinuity())


def _lpo_graph_adj(u: Word, v: Word) -> Verdict:
    if not v:
        return Verdict.UNKNOWN
    if v[0] not in (0, 1):
        return Verdict.REJECT
    if _nonzero(u):
        return Verdict.ACCEPT if v[0] == 1 else Verdict.REJECT
    return Verdict.UNKNOWN


LPO_ORACLE = ProblemOracle("lpo", _always_accept, _lpo_graph_adj)


def lpo_problem() -> ProblemBundle:
    """LPO with answer digit 1 for "some digit is nonzero" and 0 for 000..."""
    return ProblemBundle(LPO_ORACLE)


def chi_problem(A: SetOracle) -> ProblemBundle:
    """χ_A into Sierpiński space; kept total."""

    def graph_adj(u: Word, v: Word) -> Verdict:
        if not _nonzero(v):
            return Verdict.UNKNOWN
        membership = A(u)
        if membership is Verdict.ACCEPT:
            return Verdict.ACCEPT
        if membership is Verdict.REJECT:
            return Verdict.REJECT
        return Verdict.UNKNOWN

    oracle = ProblemOracle(f"chi:{A.name}", _always_accept, graph_adj)
    return ProblemBundle(oracle, realizer=SierpinskiIndicator(A))


def quotient_problem(A: SetOracle, B: SetOracle) -> ProblemBundle:
    """B/A with graph (A×B) ∪ ((N^N∖A)×(N^N∖B)): the Wadge game for sets."""

    def graph_adj(u: Word, v: Word) -> Verdict:
        a, b = A(u), B(v)
        if Verdict.UNKNOWN in (a, b):
            return Verdict.UNKNOWN
        return Verdict.ACCEPT if a is b else Verdict.REJECT

    return ProblemBundle(ProblemOracle(f"quot:{A.name}:{B.name}", _always_accept, graph_adj))


def wadge_game_for_sets(A: SetOracle, B: SetOracle) -> ProblemOracle:
    """Oracle whose Wadge game is the Wadge game for the sets A and B."""
    return quotient_problem(A, B).oracle


def _nrng_graph_adj(u: Word, v: Word) -> Verdict:
    # Any prefix extends by a non-bit digit, so Accept is never certified.
    if any(d not in (0, 1) for d in v):
        return Verdict.REJECT
    return Verdict.UNKNOWN


def nrng_witness(u: Sequence[int], v: Sequence[int]) -> Optional[int]:
    """
    An n with n in range(p-1) and A(n) = 0, read from prefixes of p and of a bit stream A.

    It shows A differs from range(p-1) for every bit-valued extension of v.
    """
    for d in u:
        n = d - 1
        if 0 <= n < len(v) and v[n] == 0:
            return n
    return None


NRNG_ORACLE = ProblemOracle("nrng", _always_accept, _nrng_graph_adj)


def nrng_problem() -> ProblemBundle:
    """
    NRNG: p ↦ {A ∈ 2^N : A ≠ range(p−1)}, with p(i)−1 = −1 read as ε.

    The graph adjudicator only rejects non-bit answers; nrng_witness reports
    the evidence that holds across bit-valued extensions.
    """
    return ProblemBundle(NRNG_ORACLE)


def totalize(f: ProblemOracle) -> ProblemOracle:
    """Tf: f on dom(f), every output allowed outside of it."""

    def graph_adj(u: Word, v: Word) -> Verdict:
        dom = f.dom(u)
        graph = f.graph(u, v)
        if graph is Verdict.ACCEPT or dom is Verdict.REJECT:
            return Verdict.ACCEPT
        if graph is Verdict.REJECT and dom is Verdict.ACCEPT:
            return Verdict.REJECT
        return Verdict.UNKNOWN

    return ProblemOracle(f"T({f.name})", _always_accept, graph_adj)


def _decode_concat(u: Sequence[int]) -> Word:
    out = []
    for d in u:
        out.extend(word_decode(d))
    return tuple(out)


def word_lift(f: ProblemOracle) -> ProblemOracle:
    """f^w = w^-1 ∘ f ∘ w: digits are word numbers, concatenated before f sees them."""

    def dom_adj(u: Word) -> Verdict:
        return f.dom(_decode_concat(u))

    def graph_adj(u: Word, v: Word) -> Verdict:
        return f.graph(_decode_concat(u), _decode_concat(v))

    return ProblemOracle(f"{f.name}^w", dom_adj, graph_adj)


def delta_problem(A: SetOracle) -> ProblemOracle:
    """
    Δ_A: U ↦ A Δ U on names p of χ_U-realizers.

    Accept needs x ∈ U certified (Φ_p(x) emits a nonzero digit) and x ∉ A;
    Reject needs x ∈ U and x ∈ A. The A∖U branch is never certifiable.
    """

    def graph_adj(p: Word, x: Word) -> Verdict:
        if not _nonzero(eval_name(p, x, len(p)).output):
            return Verdict.UNKNOWN
        membership = A(x)
        if membership is Verdict.REJECT:
            return Verdict.ACCEPT
        if membership is Verdict.ACCEPT:
            return Verdict.REJECT
        return Verdict.UNKNOWN

    return ProblemOracle(f"delta:{A.name}", _always_accept, graph_adj)


def catalog(name: str) -> ProblemBundle:
    """
    Resolve a catalog name.

    Names: id, dis, lpo, nrng, chi:<set>, quot:<A>:<B>, delta:<set>

    Raises:
        UnknownProblemError: When the name or one of its set expressions is unknown
    """
    simple = {
        "id": id_problem,
        "dis": dis_problem,
        "lpo": lpo_problem,
        "nrng": nrng_problem,
    }
    try:
        if name in simple:
            return simple[name]()
        kind, _, rest = name.partition(":")
        if kind == "chi" and rest:
            return chi_problem(parse_set_expr(rest))
        if kind == "delta" and rest:
            return ProblemBundle(delta_problem(parse_set_expr(rest)))
        if kind == "quot" and rest:
            left, sep, right = rest.partition(":")
            if sep:
                return quotient_problem(parse_set_expr(left), parse_set_expr(right))
    except SetExpressionError as e:
        raise UnknownProblemError(f"problem {name!r}: {e}")
    raise UnknownProblemError(f"unknown problem: {name!r}")


# =====================================================================
# Discontinuity checks
# =====================================================================

@dataclass(frozen=True)
class Counterexample:
    """Diagonal input for a candidate realizer and the oracle's view of it."""

    input_prefix: Word
    candidate_output: Word
    verdict: Verdict
    pairs_read: int = 0


def find_counterexample(
    bundle: ProblemBundle,
    candidate: MonotoneMachine,
    depth: int,
    fuel: Optional[int] = None,
) -> Counterexample:
    """
    Run a bundle's discontinuity transformer against a candidate realizer.

    The candidate is encoded as a name q, D(q) is read to `depth` digits and
    Φ_q(D(q)) is evaluated with `fuel` pairs (default: enough to list the key
    D(q)|depth for closed combinators, 64 per digit otherwise). A sound
    discontinuity transformer never lets the oracle Accept the pair.

    Raises:
        UnknownProblemError: When the bundle has no discontinuity transformer
    """
    if bundle.discontinuity is None:
        raise UnknownProblemError(f"problem {bundle.name!r} has no discontinuity transformer")
    q = encode_machine(candidate)
    x = as_word(bundle.discontinuity(q), depth)
    if fuel is None:
        fuel = fuel_for(x) if candidate.trusted else 64 * max(depth, 1)
    outcome = eval_name(q, x, fuel)
    verdict = bundle.oracle.graph(x, outcome.output)
    logger.debug(
        "Adjudicated diagonal input",
        extra={"problem": bundle.name, "depth": depth, "verdict": verdict.value},
    )
    return Counterexample(x, outcome.output, verdict, outcome.pairs_read)
