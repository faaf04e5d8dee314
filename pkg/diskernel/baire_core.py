#!/usr/bin/env python3
"""
diskernel - Baire Space Core

Words, streams and the coding bijections every other module relies on.

Key Features:
- Words are tuples of naturals, ordered by prefix; a word cut from a stream
  (StreamWord) remembers its source, and cutting, splitting and
  interleaving keep that provenance
- Streams are demand-driven, memoized and safe to query from several threads
- Cantor pairing and the word numbering w used by names
- Interleaving and tuple merging on streams and on finite prefixes

Usage:
    from diskernel.baire_core import cantor_pair, interleave, ramp_stream

    r = interleave(ramp_stream(), constant_stream(7))
    r.prefix(4)   # (0, 7, 1, 7)

Word numbering:
    word_decode(0) is the empty word and word_decode(n + 1) is
    word_decode(a) followed by b, where (a, b) = cantor_unpair(n).

Author: diskernel Development Team
License: MIT
Version: 0.1.0
"""

import logging
import threading
from math import isqrt
from typing import Any, Callable, Dict, Iterable, Optional, Sequence, Tuple, Union

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]
EMPTY: Word = ()


class StreamError(Exception):
    """Raised when a stream is queried outside its index range."""
    pass


# --- Prefix order ---

def is_prefix(u: Sequence[int], v: Sequence[int]) -> bool:
    """Return True when u is a prefix of v (u ⊑ v)."""
    return len(u) <= len(v) and tuple(v[: len(u)]) == tuple(u)


def compatible(u: Sequence[int], v: Sequence[int]) -> bool:
    """Return True when one word is a prefix of the other."""
    return is_prefix(u, v) or is_prefix(v, u)


def common_prefix(u: Sequence[int], v: Sequence[int]) -> Word:
    """Longest common prefix of two words."""
    n = 0
    for a, b in zip(u, v):
        if a != b:
            break
        n += 1
    return tuple(u[:n])


def first_disagreement(u: Sequence[int], v: Sequence[int]) -> Optional[int]:
    """Index of the first position where u and v both have digits that differ."""
    for i, (a, b) in enumerate(zip(u, v)):
        if a != b:
            return i
    return None


# --- Coding bijections ---

def cantor_pair(n: int, k: int) -> int:
    """
    Cantor pairing ⟨n,k⟩ = ½(n+k)(n+k+1) + k.

    Args:
        n: First component (natural)
        k: Second component (natural)

    Returns:
        The code of the pair
    """
    if n < 0 or k < 0:
        raise ValueError(f"cantor_pair expects naturals, got ({n}, {k})")
    s = n + k
    return s * (s + 1) // 2 + k


def cantor_unpair(m: int) -> Tuple[int, int]:
    """Inverse of cantor_pair."""
    if m < 0:
        raise ValueError(f"cantor_unpair expects a natural, got {m}")
    s = (isqrt(8 * m + 1) - 1) // 2
    k = m - s * (s + 1) // 2
    return s - k, k


def word_code(u: Sequence[int]) -> int:
    """Number of a word under w (inverse of word_decode)."""
    code = 0
    for b in u:
        code = cantor_pair(code, b) + 1
    return code


def word_decode(n: int) -> Word:
    """The word numbered n."""
    if n < 0:
        raise ValueError(f"word_decode expects a natural, got {n}")
    digits = []
    while n > 0:
        n, b = cantor_unpair(n - 1)
        digits.append(b)
    return tuple(reversed(digits))


# --- Streams ---

class Stream:
    """
    A point of Baire space as a total, deterministic digit producer.

    Digits are computed on demand by `_compute` and memoized, so repeated and
    out-of-order queries observe one fixed sequence. Digits are computed
    outside the memo lock and published under it; the first published value
    wins, so producers may query other streams (or this one) freely.

    Attributes:
        expr: Optional serializable description ({"prefix": [...], "rule": {...}})
        label: Human readable name used in logs
    """

    def __init__(
        self,
        rule: Optional[Callable[[int], int]] = None,
        expr: Optional[Dict[str, Any]] = None,
        label: str = "stream",
    ):
        self._rule = rule
        self._memo: Dict[int, int] = {}
        self._lock = threading.Lock()
        self.expr = expr
        self.label = label

    def _compute(self, n: int) -> int:
        if self._rule is None:
            raise NotImplementedError(f"{type(self).__name__} has no digit rule")
        return self._rule(n)

    def digit(self, n: int) -> int:
        """Digit at index n."""
        if n < 0:
            raise StreamError(f"negative index {n} on {self.label}")
        with self._lock:
            if n in self._memo:
                return self._memo[n]
        value = self._compute(n)
        return self.publish(n, value)

    def publish(self, n: int, value: int) -> int:
        """Memoize digit n unless another producer got there first; return the kept value."""
        with self._lock:
            return self._memo.setdefault(n, value)

    def prefix(self, n: int) -> "StreamWord":
        """The first n digits, as a word that remembers this stream."""
        return StreamWord((self.digit(i) for i in range(n)), self)

    def __getitem__(self, n: int) -> int:
        return self.digit(n)

    def agrees_with(self, other: Union["Stream", Sequence[int]], depth: int) -> bool:
        """Prefix agreement to `depth` (equality of streams is never decided)."""
        theirs = other.prefix(depth) if isinstance(other, Stream) else tuple(other[:depth])
        return self.prefix(len(theirs)) == theirs

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.label}>"


class InterleavedStream(Stream):
    """⟨p,q⟩ with ⟨p,q⟩(2n) = p(n) and ⟨p,q⟩(2n+1) = q(n); keeps both halves."""

    def __init__(self, left: Stream, right: Stream):
        expr = None
        if left.expr is not None and right.expr is not None:
            expr = {"rule": {"kind": "interleave", "left": left.expr, "right": right.expr}}
        super().__init__(expr=expr, label=f"<{left.label},{right.label}>")
        self.left = left
        self.right = right

    def _compute(self, n: int) -> int:
        half, odd = divmod(n, 2)
        return self.right.digit(half) if odd else self.left.digit(half)


_TAIL_RULES: Dict[str, Callable[[Word, Dict[str, Any]], Callable[[int], int]]] = {
    "zeros": lambda prefix, spec: lambda n: 0,
    "const": lambda prefix, spec: lambda n: int(spec["digit"]),
    "cycle": lambda prefix, spec: lambda n: prefix[n % len(prefix)],
    "ramp": lambda prefix, spec: lambda n: int(spec.get("start", 0)) + n,
}


def word_stream(prefix: Sequence[int] = EMPTY, tail: Optional[Dict[str, Any]] = None) -> Stream:
    """
    Stream with a finite prefix followed by a generator rule.

    Args:
        prefix: Leading digits
        tail: Rule record, one of {"kind": "zeros"}, {"kind": "const", "digit": c},
              {"kind": "cycle"} (repeat the prefix), {"kind": "ramp", "start": s}
              where the ramp gives digit start + n at absolute index n

    Returns:
        Stream carrying its {prefix, rule} description
    """
    prefix = tuple(int(d) for d in prefix)
    tail = dict(tail or {"kind": "zeros"})
    kind = tail.get("kind")
    if kind not in _TAIL_RULES:
        raise StreamError(f"unknown stream rule: {kind!r}")
    if kind == "cycle" and not prefix:
        raise StreamError("cycle rule needs a non-empty prefix")
    if any(d < 0 for d in prefix):
        raise StreamError(f"stream digits must be naturals: {prefix}")
    rule = _TAIL_RULES[kind](prefix, tail)

    def digit(n: int) -> int:
        return prefix[n] if n < len(prefix) else rule(n)

    expr = {"prefix": list(prefix), "rule": tail}
    return Stream(digit, expr=expr, label=f"word{list(prefix)}+{kind}")


# --- Words with provenance ---

class StreamWord(tuple):
    """
    A finite prefix that remembers the stream it was cut from.

    It compares, hashes and serializes as the plain tuple of its digits.
    Operations on words never read a source beyond the word's own length,
    so a plain word may stand in for any stream it is a prefix of.

    Attributes:
        source: Stream whose first len(self) digits these are
    """

    def __new__(cls, digits: Iterable[int], source: Stream):
        word = super().__new__(cls, digits)
        word.source = source
        return word

    def __getnewargs__(self):
        return (tuple(self), self.source)


def to_word(u: Sequence[int]) -> Word:
    """u as a tuple, keeping a StreamWord's provenance."""
    return u if isinstance(u, tuple) else tuple(u)


def source_of(u: Sequence[int]) -> Stream:
    """The stream a word was cut from; plain words continue with zeros."""
    if isinstance(u, StreamWord):
        return u.source
    return word_stream(u)


def cut(u: Sequence[int], n: int) -> Word:
    """The first n digits of u, keeping provenance."""
    if isinstance(u, StreamWord):
        return StreamWord(u[:n], u.source)
    return tuple(u[:n])


def constant_stream(c: int) -> Stream:
    """c, c, c, ..."""
    return word_stream(EMPTY, {"kind": "const", "digit": c})


def ramp_stream(start: int = 0) -> Stream:
    """start, start+1, start+2, ..."""
    return word_stream(EMPTY, {"kind": "ramp", "start": start})


# --- Interleaving ---

def interleave_words(u: Sequence[int], v: Sequence[int]) -> Word:
    """
    Longest prefix of ⟨u,v⟩ determined by both finite prefixes.

    When either word remembers its stream the result is cut from the
    interleaving of both sources.
    """
    out = []
    for i in range(min(len(u), len(v))):
        out.append(u[i])
        out.append(v[i])
    if len(u) > len(v):
        out.append(u[len(v)])
    if isinstance(u, StreamWord) or isinstance(v, StreamWord):
        return StreamWord(out, InterleavedStream(source_of(u), source_of(v)))
    return tuple(out)


def interleave(p, q):
    """⟨p,q⟩ for streams, or the longest determined interleaving for words."""
    if isinstance(p, Stream) and isinstance(q, Stream):
        return InterleavedStream(p, q)
    if isinstance(p, Stream) or isinstance(q, Stream):
        raise TypeError("interleave needs two streams or two words")
    return interleave_words(p, q)


def even_part(r):
    """Even-indexed digits of a stream or word."""
    if isinstance(r, InterleavedStream):
        return r.left
    if isinstance(r, Stream):
        expr = {"rule": {"kind": "even", "of": r.expr}} if r.expr is not None else None
        return Stream(lambda n: r.digit(2 * n), expr=expr, label=f"even({r.label})")
    if isinstance(r, StreamWord):
        return StreamWord(r[0::2], even_part(r.source))
    return tuple(r[0::2])


def odd_part(r):
    """Odd-indexed digits of a stream or word."""
    if isinstance(r, InterleavedStream):
        return r.right
    if isinstance(r, Stream):
        expr = {"rule": {"kind": "odd", "of": r.expr}} if r.expr is not None else None
        return Stream(lambda n: r.digit(2 * n + 1), expr=expr, label=f"odd({r.label})")
    if isinstance(r, StreamWord):
        return StreamWord(r[1::2], odd_part(r.source))
    return tuple(r[1::2])


# --- Tuples of streams ---

def tuple_merge(family: Callable[[int], Stream]) -> Stream:
    """
    ⟨p_0, p_1, ...⟩ with merged(cantor_pair(i, j)) = family(i)(j).

    `family` is a rule; member streams are built once per index and reused.
    """
    members: Dict[int, Stream] = {}
    lock = threading.Lock()

    def member(i: int) -> Stream:
        with lock:
            if i not in members:
                members[i] = family(i)
            return members[i]

    def digit(m: int) -> int:
        i, j = cantor_unpair(m)
        return member(i).digit(j)

    return Stream(digit, label="merge")


def tuple_project(r: Stream, i: int) -> Stream:
    """π_i: the i-th member of a merged tuple."""
    return Stream(lambda j: r.digit(cantor_pair(i, j)), label=f"pi{i}({r.label})")


def as_word(x: Union[Stream, Sequence[int]], length: int) -> Word:
    """Prefix of length `length` of a stream, or the word itself cut to `length`."""
    if isinstance(x, Stream):
        return x.prefix(length)
    return cut(x, length)
