#!/usr/bin/env python3
"""
diskernel - smn and Recursion Theorems

The smn theorem and both recursion theorems as executable name transformers.

Every transformer carries a word-level map (itself a serializable machine)
and a modulus: output prefixes of length n depend only on input prefixes of
length modulus(n). Stream-level application keeps structure (encoded names,
interleavings) so evaluation can read names by index.

Constructions:
    smn:        S(q) = name of u ↦ F⟨q|len(u), u⟩
    fixpoint:   Φ_{d(r)}(x) = U⟨U⟨r,r⟩,x⟩, Φ_{e(p)}(r) = Φ_p(d(r)), T(p) = d(e(p))
    param:      Φ_{Φ_{S(q)}(r)}(p) = F⟨p,⟨r,q⟩⟩, R(q) = ⟨T S(q), q⟩

Author: diskernel Development Team
License: MIT
Version: 0.1.0
"""

import logging
from typing import Any, Callable, Dict, Optional, Sequence, Union

from diskernel.baire_core import Stream, Word, as_word, interleave
from diskernel.phi_machine import (
    Compose,
    EvenPart,
    Identity,
    InterleaveSection,
    MonotoneMachine,
    OddPart,
    Pairing,
    SmnMachine,
    Universal,
    encode_machine,
)

logger = logging.getLogger(__name__)

DEFAULT_SEARCH_CAP = 4096


class TotalityError(Exception):
    """Raised when a transformer stream cannot produce a digit within its search cap."""
    pass


class NameTransformer:
    """
    A total continuous map on names.

    Attributes:
        word_map: Monotone machine computing output prefixes from input prefixes
        modulus: n ↦ input length that determines n output digits (None: search)
        label: Name used in logs and traces
    """

    def __init__(
        self,
        word_map: MonotoneMachine,
        modulus: Optional[Callable[[int], int]] = None,
        label: str = "transformer",
        builder: Optional[Callable[[Stream], Stream]] = None,
        search_cap: int = DEFAULT_SEARCH_CAP,
    ):
        self.word_map = word_map
        self.modulus = modulus
        self.label = label
        self._builder = builder
        self.search_cap = search_cap

    def __call__(self, q: Stream) -> Stream:
        if self._builder is not None:
            return self._builder(q)
        return TransformedStream(self, q)

    def approximate(self, q: Union[Stream, Sequence[int]], length: int) -> Word:
        """Output prefix determined by the first `length` digits of q."""
        return self.word_map(as_word(q, length))

    def then(self, machine: MonotoneMachine, label: Optional[str] = None) -> "NameTransformer":
        """machine ∘ self; structure is kept when machine is the identity."""
        if isinstance(machine, Identity):
            return self
        return NameTransformer(
            Compose(machine, self.word_map),
            modulus=None,
            label=label or f"{type(machine).__name__}∘{self.label}",
            search_cap=self.search_cap,
        )

    def to_expr(self) -> Dict[str, Any]:
        return {"transformer": self.label, "word_map": self.word_map.to_expr()}

    def __repr__(self) -> str:
        return f"<NameTransformer {self.label}>"


class TransformedStream(Stream):
    """T(q) read digit by digit through T's word map."""

    def __init__(self, transformer: NameTransformer, q: Stream):
        super().__init__(label=f"{transformer.label}({q.label})")
        self.transformer = transformer
        self.q = q

    def _compute(self, n: int) -> int:
        t = self.transformer
        if t.modulus is not None:
            out = t.word_map(self.q.prefix(t.modulus(n + 1)))
        else:
            m = n + 1
            out = t.word_map(self.q.prefix(m))
            while len(out) <= n:
                m *= 2
                if m > t.search_cap:
                    raise TotalityError(
                        f"{t.label} produced {len(out)} digits from {m // 2} input digits"
                    )
                out = t.word_map(self.q.prefix(m))
        if len(out) <= n:
            raise TotalityError(f"{t.label} violates its modulus at digit {n}")
        for i, d in enumerate(out):
            self.publish(i, d)
        return out[n]


def smn_transform(F: MonotoneMachine) -> NameTransformer:
    """
    Total S with Φ_{S(q)}(p) = F⟨q,p⟩.

    S(q) is the encoded name of the section machine u ↦ F⟨q|len(u), u⟩.
    """
    return NameTransformer(
        SmnMachine(F),
        modulus=lambda n: n,
        label="smn",
        builder=lambda q: encode_machine(Compose(F, InterleaveSection(q))),
    )


_CONST_SECTION = smn_transform(Compose(Universal(), EvenPart()))


def const_section_transformer() -> NameTransformer:
    """R with Φ_{R(p)}(q) = U(p) for every q."""
    return _CONST_SECTION


def const_section(p: Stream) -> Stream:
    """R(p): a name of the constant map q ↦ U(p)."""
    return _CONST_SECTION(p)


# Φ_{d(r)}(x) = U⟨U⟨r,r⟩, x⟩
_F_D = Compose(
    Universal(),
    Pairing(Compose(Universal(), Pairing(EvenPart(), EvenPart())), OddPart()),
)
_D = smn_transform(_F_D)

# Φ_{e(p)}(r) = U⟨p, d(r)⟩ = Φ_p(d(r))
_F_E = Compose(Universal(), Pairing(EvenPart(), Compose(SmnMachine(_F_D), OddPart())))
_E = smn_transform(_F_E)

_FIXPOINT = NameTransformer(
    Compose(SmnMachine(_F_D), SmnMachine(_F_E)),
    modulus=lambda n: n,
    label="fixpoint",
    builder=lambda p: _D(_E(p)),
)


def fixpoint_transformer() -> NameTransformer:
    """T with Φ_{T(p)} = Φ_{Φ_p T(p)} whenever Φ_p is total."""
    return _FIXPOINT


def fixpoint(p: Stream) -> Stream:
    """T(p) = d(e(p))."""
    return _FIXPOINT(p)


def param_fixpoint(F: MonotoneMachine) -> NameTransformer:
    """
    Total R with U R(q) = F⟨q, R(q)⟩.

    Args:
        F: Monotone machine read on ⟨q, r⟩

    Returns:
        NameTransformer R(q) = ⟨T S(q), q⟩, where S comes from a double smn
        application with Φ_{Φ_{S(q)}(r)}(p) = F⟨p, ⟨r, q⟩⟩.
    """
    swap = Pairing(OddPart(), EvenPart())
    inner = SmnMachine(Compose(F, swap))    # Φ_{S'(s)}(p) = F⟨p, s⟩
    G = Compose(inner, swap)                # G⟨q, r⟩ = S'⟨r, q⟩
    S = smn_transform(G)
    T = _FIXPOINT
    logger.debug("Built parameterized fixpoint", extra={"machine": type(F).__name__})
    return NameTransformer(
        Pairing(Compose(T.word_map, SmnMachine(G)), Identity()),
        modulus=lambda n: (n + 1) // 2,
        label="param_fixpoint",
        builder=lambda q: interleave(T(S(q)), q),
    )
