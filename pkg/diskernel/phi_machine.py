#!/usr/bin/env python3
"""
diskernel - Representation Φ and the Universal Evaluator

Monotone word machines, their encoding as names, and fuel-bounded evaluation
of names with inconsistency detection.

Key Features:
- Closed, serializable combinator set (identity, const, prepend, even/odd,
  interleave-section, pairing, compose, digit map, finite table, stutter,
  delay, pad, universal, smn)
- Host-code machines for the library API (never serialized)
- encode_machine: the name listing (n, w^-1 g(w_n)) in word_code order
- eval_name / universal: sup of the certified chain, frozen on inconsistency

Usage:
    from diskernel.phi_machine import Identity, encode_machine, eval_name

    q = encode_machine(Identity())
    eval_name(q, (5, 7), fuel=200).output   # (5, 7)

Cost model:
    One decoded graph pair is one unit of fuel. Encoded names list words in
    word_code order, so the pair for a word u sits at index word_code(u);
    fuel_for(u) is the fuel after which that pair has been read. The
    word-level U reads name digits cut from an encoded name by index, so a
    nested U costs no more than the machine it names.

Author: diskernel Development Team
License: MIT
Version: 0.1.0
"""

from dataclasses import dataclass, field
from enum import Enum
import json
import logging
import threading
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from diskernel.baire_core import (
    EMPTY,
    Stream,
    Word,
    cantor_pair,
    cantor_unpair,
    common_prefix,
    cut,
    even_part,
    interleave,
    interleave_words,
    is_prefix,
    odd_part,
    source_of,
    to_word,
    word_code,
    word_decode,
    word_stream,
)
from diskernel import metrics

logger = logging.getLogger(__name__)


class MachineExpressionError(Exception):
    """Raised when a machine or stream expression cannot be parsed."""
    pass


class SerializationError(Exception):
    """Raised when a host-code machine or rule stream is asked for an expression."""
    pass


class InconsistentTableError(Exception):
    """Raised when a finite table admits no monotone completion."""
    pass


# =====================================================================
# Machines
# =====================================================================

MACHINE_REGISTRY: Dict[str, Callable[[Dict[str, Any]], "MonotoneMachine"]] = {}


def register_machine(op: str):
    """Class decorator adding a machine's `from_expr` to the expression registry."""

    def wrap(cls):
        cls.op = op
        MACHINE_REGISTRY[op] = cls.from_expr
        return cls

    return wrap


class MonotoneMachine:
    """
    A monotone word function g: N* -> N*.

    Subclasses implement `apply`; `__call__` normalizes the argument to a
    tuple, keeping the provenance of a StreamWord. `trusted` is True when
    monotonicity holds by construction, which lets eval_name read encoded
    names without scanning every pair.
    """

    op = "abstract"

    def apply(self, u: Word) -> Word:
        raise NotImplementedError

    def __call__(self, u: Sequence[int]) -> Word:
        return self.apply(to_word(u))

    def children(self) -> Tuple["MonotoneMachine", ...]:
        return ()

    @property
    def trusted(self) -> bool:
        return all(child.trusted for child in self.children())

    def to_expr(self) -> Dict[str, Any]:
        return {"op": self.op}

    @classmethod
    def from_expr(cls, expr: Dict[str, Any]) -> "MonotoneMachine":
        return cls()

    def __repr__(self) -> str:
        try:
            return f"<{type(self).__name__} {self.to_expr()}>"
        except SerializationError:
            return f"<{type(self).__name__}>"


def _word_field(expr: Dict[str, Any], key: str) -> Word:
    try:
        word = tuple(int(d) for d in expr[key])
    except (KeyError, TypeError, ValueError) as e:
        raise MachineExpressionError(f"'{expr.get('op')}' needs a word field '{key}': {e}")
    if any(d < 0 for d in word):
        raise MachineExpressionError(f"word field '{key}' holds a negative digit")
    return word


def _int_field(expr: Dict[str, Any], key: str, default: Optional[int] = None) -> int:
    value = expr.get(key, default)
    if value is None:
        raise MachineExpressionError(f"'{expr.get('op')}' needs an integer field '{key}'")
    try:
        return int(value)
    except (TypeError, ValueError):
        raise MachineExpressionError(f"field '{key}' is not an integer: {value!r}")


def _machine_field(expr: Dict[str, Any], key: str) -> "MonotoneMachine":
    if key not in expr:
        raise MachineExpressionError(f"'{expr.get('op')}' needs a machine field '{key}'")
    return parse_machine(expr[key])


@register_machine("identity")
@dataclass(frozen=True, repr=False)
class Identity(MonotoneMachine):
    def apply(self, u: Word) -> Word:
        return u


@register_machine("const")
@dataclass(frozen=True, repr=False)
class ConstWord(MonotoneMachine):
    """u ↦ word."""

    word: Word = EMPTY

    def apply(self, u: Word) -> Word:
        return self.word

    def to_expr(self) -> Dict[str, Any]:
        return {"op": self.op, "word": list(self.word)}

    @classmethod
    def from_expr(cls, expr):
        return cls(_word_field(expr, "word"))


@register_machine("prepend")
@dataclass(frozen=True, repr=False)
class Prepend(MonotoneMachine):
    """u ↦ word⌢u."""

    word: Word = EMPTY

    def apply(self, u: Word) -> Word:
        return self.word + u

    def to_expr(self) -> Dict[str, Any]:
        return {"op": self.op, "word": list(self.word)}

    @classmethod
    def from_expr(cls, expr):
        return cls(_word_field(expr, "word"))


@register_machine("even")
@dataclass(frozen=True, repr=False)
class EvenPart(MonotoneMachine):
    def apply(self, u: Word) -> Word:
        return even_part(u)


@register_machine("odd")
@dataclass(frozen=True, repr=False)
class OddPart(MonotoneMachine):
    def apply(self, u: Word) -> Word:
        return odd_part(u)


@register_machine("section")
@dataclass(frozen=True, repr=False)
class InterleaveSection(MonotoneMachine):
    """u ↦ ⟨s|len(u), u⟩: one digit of the fixed stream per input digit."""

    stream: Stream = field(compare=False)

    def apply(self, u: Word) -> Word:
        return interleave_words(self.stream.prefix(len(u)), u)

    def to_expr(self) -> Dict[str, Any]:
        if self.stream.expr is None:
            raise SerializationError(f"stream {self.stream.label} has no expression")
        return {"op": self.op, "stream": self.stream.expr}

    @classmethod
    def from_expr(cls, expr):
        if "stream" not in expr:
            raise MachineExpressionError("'section' needs a stream field 'stream'")
        return cls(parse_stream(expr["stream"]))


@register_machine("compose")
@dataclass(frozen=True, repr=False)
class Compose(MonotoneMachine):
    """u ↦ outer(inner(u))."""

    outer: MonotoneMachine
    inner: MonotoneMachine

    def apply(self, u: Word) -> Word:
        return self.outer(self.inner(u))

    def children(self):
        return (self.outer, self.inner)

    def to_expr(self) -> Dict[str, Any]:
        return {"op": self.op, "outer": self.outer.to_expr(), "inner": self.inner.to_expr()}

    @classmethod
    def from_expr(cls, expr):
        return cls(_machine_field(expr, "outer"), _machine_field(expr, "inner"))


@register_machine("pairing")
@dataclass(frozen=True, repr=False)
class Pairing(MonotoneMachine):
    """u ↦ ⟨left(u), right(u)⟩ (longest determined interleaving)."""

    left: MonotoneMachine
    right: MonotoneMachine

    def apply(self, u: Word) -> Word:
        return interleave_words(self.left(u), self.right(u))

    def children(self):
        return (self.left, self.right)

    def to_expr(self) -> Dict[str, Any]:
        return {"op": self.op, "left": self.left.to_expr(), "right": self.right.to_expr()}

    @classmethod
    def from_expr(cls, expr):
        return cls(_machine_field(expr, "left"), _machine_field(expr, "right"))


@register_machine("map")
@dataclass(frozen=True, repr=False)
class DigitMap(MonotoneMachine):
    """
    Digitwise map: d ↦ table[d] when listed, otherwise scale·d + shift.

    Attributes:
        table: Sorted (digit, image) pairs
        scale: Multiplier for unlisted digits
        shift: Offset for unlisted digits
    """

    table: Tuple[Tuple[int, int], ...] = ()
    scale: int = 1
    shift: int = 0

    def __post_init__(self):
        if self.scale < 0 or self.shift < 0:
            raise MachineExpressionError("digit map needs non-negative scale and shift")
        if any(a < 0 or b < 0 for a, b in self.table):
            raise MachineExpressionError("digit map table holds a negative digit")

    @classmethod
    def of(cls, mapping: Dict[int, int], scale: int = 1, shift: int = 0) -> "DigitMap":
        return cls(tuple(sorted(mapping.items())), scale, shift)

    def image(self, d: int) -> int:
        for a, b in self.table:
            if a == d:
                return b
        return self.scale * d + self.shift

    def apply(self, u: Word) -> Word:
        return tuple(self.image(d) for d in u)

    def to_expr(self) -> Dict[str, Any]:
        return {
            "op": self.op,
            "table": [[a, b] for a, b in self.table],
            "scale": self.scale,
            "shift": self.shift,
        }

    @classmethod
    def from_expr(cls, expr):
        try:
            mapping = {int(a): int(b) for a, b in expr.get("table", [])}
        except (TypeError, ValueError) as e:
            raise MachineExpressionError(f"bad digit map table: {e}")
        return cls.of(mapping, _int_field(expr, "scale", 1), _int_field(expr, "shift", 0))


@register_machine("stutter")
@dataclass(frozen=True, repr=False)
class Stutter(MonotoneMachine):
    """Repeat every digit `times` times."""

    times: int = 2

    def apply(self, u: Word) -> Word:
        return tuple(d for d in u for _ in range(self.times))

    def to_expr(self) -> Dict[str, Any]:
        return {"op": self.op, "times": self.times}

    @classmethod
    def from_expr(cls, expr):
        return cls(_int_field(expr, "times", 2))


@register_machine("delay")
@dataclass(frozen=True, repr=False)
class Delay(MonotoneMachine):
    """Echo the input `lag` digits behind."""

    lag: int = 1

    def apply(self, u: Word) -> Word:
        return cut(u, max(0, len(u) - self.lag))

    def to_expr(self) -> Dict[str, Any]:
        return {"op": self.op, "lag": self.lag}

    @classmethod
    def from_expr(cls, expr):
        return cls(_int_field(expr, "lag", 1))


@register_machine("pad")
@dataclass(frozen=True, repr=False)
class Pad(MonotoneMachine):
    """
    Stage-wise output of `inner` on the prefixes of u.

    Stage i appends the digits inner(u|i) certifies beyond inner(u|i-1), or a
    single 0 when it certifies nothing new, so |pad(u)| ≥ |u|.
    """

    inner: MonotoneMachine

    def apply(self, u: Word) -> Word:
        out: List[int] = []
        prev: Word = EMPTY
        for i in range(1, len(u) + 1):
            cur = self.inner(cut(u, i))
            if len(cur) > len(prev):
                out.extend(cur[len(prev):])
                prev = cur
            else:
                out.append(0)
        return tuple(out)

    def children(self):
        return (self.inner,)

    def to_expr(self) -> Dict[str, Any]:
        return {"op": self.op, "inner": self.inner.to_expr()}

    @classmethod
    def from_expr(cls, expr):
        return cls(_machine_field(expr, "inner"))


@register_machine("universal")
@dataclass(frozen=True, repr=False)
class Universal(MonotoneMachine):
    """
    Word-level U: name = even digits, input = odd digits, fuel = name digits.

    Name digits cut from the encoded name of a trusted machine are read by
    index (see universal_word), so nested universal machines certify output.
    """

    def apply(self, u: Word) -> Word:
        return universal_word(u)


@register_machine("smn")
@dataclass(frozen=True, repr=False)
class SmnMachine(MonotoneMachine):
    """
    Word-level smn map of F.

    Digit i of the output is ⟨i, w^-1 F⟨q|len(w_i), w_i⟩⟩, so a parameter
    prefix of length m determines the first m digits of the name S(q). The
    output is cut from the encoded name of the section machine
    u ↦ F⟨q|len(u), u⟩, with q the stream the parameter prefix came from.
    """

    F: MonotoneMachine

    def section_name(self, q: Stream) -> "MachineName":
        return MachineName(Compose(self.F, InterleaveSection(q)))

    def apply(self, u: Word) -> Word:
        return self.section_name(source_of(u)).prefix(len(u))

    def children(self):
        return (self.F,)

    def to_expr(self) -> Dict[str, Any]:
        return {"op": self.op, "F": self.F.to_expr()}

    @classmethod
    def from_expr(cls, expr):
        return cls(_machine_field(expr, "F"))


class FiniteTable(MonotoneMachine):
    """
    Finite graph table with its monotone completion.

    g(u) is the sup of the outputs listed for keys that are prefixes of u
    (ε when none is). The table must pass check_consistent.
    """

    op = "table"

    def __init__(self, entries: Iterable[Tuple[Sequence[int], Sequence[int]]]):
        self.entries: Tuple[Tuple[Word, Word], ...] = tuple(
            (tuple(k), tuple(v)) for k, v in entries
        )
        self._constraints = ConstraintSet()
        for index, (key, out) in enumerate(self.entries):
            clash = self._constraints.conflict(key, out)
            if clash is not None:
                raise InconsistentTableError(
                    f"table entries {clash} and {index} have no monotone completion"
                )
            self._constraints.add(key, out, index)

    def apply(self, u: Word) -> Word:
        return self._constraints.sup(u)

    def to_expr(self) -> Dict[str, Any]:
        return {"op": self.op, "entries": [[list(k), list(v)] for k, v in self.entries]}

    @classmethod
    def from_expr(cls, expr):
        try:
            entries = [(tuple(int(d) for d in k), tuple(int(d) for d in v)) for k, v in expr["entries"]]
        except (KeyError, TypeError, ValueError) as e:
            raise MachineExpressionError(f"bad table entries: {e}")
        try:
            return cls(entries)
        except InconsistentTableError as e:
            raise MachineExpressionError(str(e))

    def __eq__(self, other):
        return isinstance(other, FiniteTable) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)


register_machine("table")(FiniteTable)


class HostMachine(MonotoneMachine):
    """
    Arbitrary Python callable used as a machine.

    Not serializable. Monotonicity is the caller's claim; set `monotone=True`
    only for functions that are monotone by construction.
    """

    op = "host"

    def __init__(self, fn: Callable[[Word], Sequence[int]], label: str = "host", monotone: bool = False):
        self.fn = fn
        self.label = label
        self.monotone = monotone

    def apply(self, u: Word) -> Word:
        return tuple(self.fn(u))

    @property
    def trusted(self) -> bool:
        return self.monotone

    def to_expr(self) -> Dict[str, Any]:
        raise SerializationError(f"host machine '{self.label}' cannot be serialized")

    def __repr__(self) -> str:
        return f"<HostMachine {self.label}>"


def parse_machine(expr: Any) -> MonotoneMachine:
    """
    Build a machine from its expression tree.

    Args:
        expr: Dict with an "op" key and op-specific fields

    Returns:
        The machine

    Raises:
        MachineExpressionError: Unknown op or malformed fields
    """
    if not isinstance(expr, dict) or "op" not in expr:
        raise MachineExpressionError(f"machine expression must be an object with 'op': {expr!r}")
    builder = MACHINE_REGISTRY.get(expr["op"])
    if builder is None:
        raise MachineExpressionError(f"unknown machine op: {expr['op']!r}")
    return builder(expr)


def load_expr(text: str) -> Any:
    """
    Read an expression given inline (JSON starting with "{" or "[") or as a file path.

    Raises:
        MachineExpressionError: Unreadable file or invalid JSON
    """
    text = text.strip()
    try:
        if text[:1] in ("{", "["):
            return json.loads(text)
        with open(text, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, ValueError) as e:
        raise MachineExpressionError(f"cannot read expression {text[:60]!r}: {e}")


def check_monotone_on(machine: MonotoneMachine, pairs: Iterable[Tuple[Word, Word]]) -> bool:
    """Check u ⊑ v ⟹ g(u) ⊑ g(v) on the given (u, v) pairs with u ⊑ v."""
    return all(is_prefix(machine(u), machine(v)) for u, v in pairs if is_prefix(u, v))


# =====================================================================
# Names
# =====================================================================

class MachineName(Stream):
    """The name of a machine g: digit n is ⟨n, w^-1 g(w_n)⟩."""

    def __init__(self, machine: MonotoneMachine):
        try:
            expr = {"rule": {"kind": "name", "machine": machine.to_expr()}}
        except SerializationError:
            expr = None
        super().__init__(expr=expr, label=f"name({type(machine).__name__})")
        self.machine = machine

    def _compute(self, n: int) -> int:
        return cantor_pair(n, word_code(self.machine(word_decode(n))))


def encode_machine(g: MonotoneMachine) -> MachineName:
    """Name listing the pair (n, word_code(g(word_decode(n)))) for n = 0, 1, 2, ..."""
    return MachineName(g)


def fuel_for(u: Sequence[int]) -> int:
    """Fuel after which an encoded name has listed the pair for u."""
    return word_code(u) + 1


class ConstraintSet:
    """
    Incrementally checked set of graph constraints key ↦ output.

    For every prefix node the common prefix of the outputs of all keys that
    extend it is kept, so a new constraint is checked against its ancestors
    and descendants in O(|key|) prefix comparisons.
    """

    def __init__(self):
        self._out: Dict[Word, Tuple[Word, int]] = {}
        self._meet: Dict[Word, Word] = {}
        self.max_key_length = 0

    def __len__(self) -> int:
        return len(self._out)

    def conflict(self, key: Word, out: Word) -> Optional[int]:
        """Index of a stored constraint that clashes with key ↦ out, or None."""
        for j in range(len(key) + 1):
            hit = self._out.get(key[:j])
            if hit is not None and not is_prefix(hit[0], out):
                return hit[1]
        meet = self._meet.get(key)
        if meet is not None and not is_prefix(out, meet):
            for other, (other_out, index) in self._out.items():
                if is_prefix(key, other) and not is_prefix(out, other_out):
                    return index
        return None

    def add(self, key: Word, out: Word, index: int) -> None:
        if key not in self._out:
            self._out[key] = (out, index)
        for j in range(len(key) + 1):
            node = key[:j]
            current = self._meet.get(node)
            self._meet[node] = out if current is None else common_prefix(current, out)
        self.max_key_length = max(self.max_key_length, len(key))

    def sup(self, x: Union[Stream, Sequence[int]]) -> Word:
        """⊑-sup of the outputs of keys that are prefixes of x."""
        if isinstance(x, Stream):
            available = x.prefix(self.max_key_length)
        else:
            available = tuple(x[: self.max_key_length])
        best = EMPTY
        for j in range(len(available) + 1):
            hit = self._out.get(available[:j])
            if hit is not None:
                best = hit[0]
        return best


def check_consistent(constraints: Iterable[Tuple[Sequence[int], Sequence[int]]]) -> bool:
    """True iff the constraints extend to a monotone word function."""
    cs = ConstraintSet()
    for index, (key, out) in enumerate(constraints):
        key, out = tuple(key), tuple(out)
        if cs.conflict(key, out) is not None:
            return False
        cs.add(key, out, index)
    return True


class EvalStatus(str, Enum):
    PROGRESSING = "progressing"
    INCONSISTENT_NAME = "inconsistent"


@dataclass(frozen=True)
class EvalOutcome:
    """
    Result of a fuel-bounded evaluation.

    Attributes:
        output: Certified prefix of Φ_q(x)
        status: PROGRESSING or INCONSISTENT_NAME (output frozen)
        pairs_read: Pairs charged to fuel
        conflict: (earlier index, offending index) for inconsistent names
    """

    output: Word
    status: EvalStatus = EvalStatus.PROGRESSING
    pairs_read: int = 0
    conflict: Optional[Tuple[int, int]] = None


NameLike = Union[Stream, Sequence[int]]


class NameEvaluator:
    """
    Reads a name one pair at a time against a fixed input.

    A finite name (a word) runs out after its last digit; evaluation stops at
    the first pair that makes the constraint set inconsistent.
    """

    def __init__(self, q: NameLike, x: NameLike):
        self.q = q
        self.x = x
        self.constraints = ConstraintSet()
        self.pairs_read = 0
        self.status = EvalStatus.PROGRESSING
        self.conflict: Optional[Tuple[int, int]] = None
        self._finite = None if isinstance(q, Stream) else len(q)

    def step(self) -> bool:
        """Decode one more pair; False when the name is exhausted or inconsistent."""
        if self.status is EvalStatus.INCONSISTENT_NAME:
            return False
        if self._finite is not None and self.pairs_read >= self._finite:
            return False
        index = self.pairs_read
        n, k = cantor_unpair(self.q[index])
        key, out = word_decode(n), word_decode(k)
        self.pairs_read += 1
        clash = self.constraints.conflict(key, out)
        if clash is not None:
            self.status = EvalStatus.INCONSISTENT_NAME
            self.conflict = (clash, index)
            logger.debug(
                "Inconsistent name",
                extra={"earlier_pair": clash, "offending_pair": index},
            )
            return False
        self.constraints.add(key, out, index)
        return True

    def run(self, fuel: int) -> EvalOutcome:
        while self.pairs_read < fuel and self.step():
            pass
        return self.outcome()

    def outcome(self) -> EvalOutcome:
        return EvalOutcome(
            output=self.constraints.sup(self.x),
            status=self.status,
            pairs_read=self.pairs_read,
            conflict=self.conflict,
        )


def _eval_encoded(q: MachineName, x: NameLike, fuel: int) -> EvalOutcome:
    # Keys of an encoded name sit at index word_code(key); only the prefixes of
    # x with code below `fuel` have been listed, and g is monotone.
    limit = None if isinstance(x, Stream) else len(x)
    if fuel <= 0:
        return EvalOutcome(EMPTY, EvalStatus.PROGRESSING, 0)
    j, code = 0, 0
    while limit is None or j < limit:
        nxt = cantor_pair(code, x[j]) + 1
        if nxt >= fuel:
            break
        code, j = nxt, j + 1
    key = x.prefix(j) if isinstance(x, Stream) else cut(x, j)
    return EvalOutcome(q.machine(key), EvalStatus.PROGRESSING, fuel)


def eval_name(q: NameLike, x: NameLike, fuel: int) -> EvalOutcome:
    """
    Certified prefix of Φ_q(x) after decoding the first `fuel` pairs of q.

    Args:
        q: Name (stream) or finite name prefix (word)
        x: Input stream or available input prefix
        fuel: Number of pairs to decode

    Returns:
        EvalOutcome; divergence shows up as short output, never as an error
    """
    metrics.METRIC_NAME_EVALUATIONS_TOTAL.inc()
    if isinstance(q, MachineName) and q.machine.trusted:
        return _eval_encoded(q, x, fuel)
    outcome = NameEvaluator(q, x).run(fuel)
    metrics.METRIC_PAIRS_DECODED_TOTAL.inc(outcome.pairs_read)
    if outcome.status is EvalStatus.INCONSISTENT_NAME:
        metrics.METRIC_INCONSISTENT_NAMES_TOTAL.inc()
    return outcome


def universal(r: NameLike, fuel: int) -> EvalOutcome:
    """U⟨q,p⟩ = Φ_q(p), evaluated with `fuel` pairs of q."""
    return eval_name(even_part(r), odd_part(r), fuel)


MAX_INDEXED_NESTING = 32

_nesting = threading.local()


def _indexed_read(name: Word, x: Word) -> Optional[Word]:
    # k digits of an encoded name list only keys of length < k; g(x|k-1) is
    # the sup of their outputs on x, read straight from g.
    source = getattr(name, "source", None)
    if not isinstance(source, MachineName) or not source.machine.trusted:
        return None
    level = getattr(_nesting, "level", 0)
    if level >= MAX_INDEXED_NESTING:
        logger.debug("Indexed reads nested too deep, scanning", extra={"level": level})
        return None
    _nesting.level = level + 1
    try:
        metrics.METRIC_INDEXED_READS_TOTAL.inc()
        return source.machine(cut(x, len(name) - 1))
    finally:
        _nesting.level = level


def universal_word(u: Sequence[int]) -> Word:
    """
    Word-level U: every complete name digit available in u is read.

    When the name digits were cut from the encoded name of a trusted machine
    g, the pair for each key is found by index instead of by scanning: the
    output is g(x|k-1) for k name digits, which extends the scanned output.
    Such reads nest (g may itself contain U) up to MAX_INDEXED_NESTING
    levels; deeper names are scanned.
    """
    u = to_word(u)
    name, x = even_part(u), odd_part(u)
    if not name:
        return EMPTY
    indexed = _indexed_read(name, x)
    if indexed is not None:
        return indexed
    return eval_name(tuple(name), tuple(x), len(name)).output


# =====================================================================
# Stream expressions
# =====================================================================

def parse_stream(expr: Any) -> Stream:
    """
    Build a stream from its {prefix, rule} record.

    Rule kinds: zeros, const, cycle, ramp (word_stream), interleave
    (left/right), even/odd (of), name (machine).
    """
    if not isinstance(expr, dict):
        raise MachineExpressionError(f"stream expression must be an object: {expr!r}")
    rule = expr.get("rule", {"kind": "zeros"})
    if not isinstance(rule, dict):
        raise MachineExpressionError(f"stream rule must be an object: {rule!r}")
    kind = rule.get("kind", "zeros")
    if kind == "interleave":
        return interleave(parse_stream(rule.get("left")), parse_stream(rule.get("right")))
    if kind == "even":
        return even_part(parse_stream(rule.get("of")))
    if kind == "odd":
        return odd_part(parse_stream(rule.get("of")))
    if kind == "name":
        return encode_machine(parse_machine(rule.get("machine")))
    try:
        prefix = [int(d) for d in expr.get("prefix", [])]
        return word_stream(prefix, rule)
    except Exception as e:
        raise MachineExpressionError(f"bad stream expression: {e}")
