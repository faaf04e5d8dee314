#!/usr/bin/env python3
"""
diskernel - Reductions

Weihrauch-reduction witnesses, their fuel-bounded verification, and the
constructive witness compilers between discontinuity functions and
reductions from DIS.

Key Features:
- Witness (H, K) in the strong flavor (H∘G∘K) and the plain flavor (H⟨id, G∘K⟩)
- Seeded, reproducible verification that reports refutations as data
- Compilers: DIS ≤sW f from a discontinuity transformer and back, DIS ≤sW LPO,
  χ_A ≤sW χ_B from a many-one reduction, and the Δ_A ⟷ discontinuity pair

Witness files:
    {"H": <machine expr>, "K": <machine expr>, "flavor": "strong" | "plain"}

Author: diskernel Development Team
License: MIT
Version: 0.1.0
"""

from dataclasses import dataclass, field
from enum import Enum
import logging
import random
from typing import Any, Dict, Optional

from diskernel import metrics
from diskernel.baire_core import Word
from diskernel.environment import DEFAULT_ALPHABET, DEFAULT_MAX_ATTEMPTS, DEFAULT_SEED
from diskernel.phi_machine import (
    Compose,
    DigitMap,
    EvenPart,
    Identity,
    MachineExpressionError,
    MonotoneMachine,
    OddPart,
    Pad,
    Pairing,
    Universal,
    parse_machine,
)
from diskernel.problems import ProblemBundle, ProblemOracle, SetOracle, Verdict, totalizer_transformer
from diskernel.smn_rec import NameTransformer, const_section_transformer, param_fixpoint

logger = logging.getLogger(__name__)

DEFAULT_MANY_ONE_SAMPLES = 200
DEFAULT_MANY_ONE_DEPTH = 4


class WitnessRefutedError(Exception):
    """Raised when a compiler's sampled check finds a counterexample to its premise."""

    def __init__(self, message: str, counterexample: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.counterexample = counterexample


class Flavor(str, Enum):
    STRONG = "strong"
    PLAIN = "plain"


@dataclass(frozen=True)
class Witness:
    """
    Reduction witness f ≤ g.

    Attributes:
        H: Output translation
        K: Input translation
        flavor: STRONG (realizer H∘G∘K) or PLAIN (realizer H⟨id, G∘K⟩)
        label: Name used in reports
    """

    H: MonotoneMachine
    K: MonotoneMachine
    flavor: Flavor = Flavor.STRONG
    label: str = "witness"

    def to_expr(self) -> Dict[str, Any]:
        return {"H": self.H.to_expr(), "K": self.K.to_expr(), "flavor": self.flavor.value}


def identity_witness() -> Witness:
    return Witness(Identity(), Identity(), Flavor.STRONG, "identity")


def parse_witness(expr: Any) -> Witness:
    """
    Build a witness from {H, K, flavor}, or the keyword "identity".

    Raises:
        MachineExpressionError: Malformed witness or machine expression
    """
    if expr == "identity":
        return identity_witness()
    if not isinstance(expr, dict) or "H" not in expr or "K" not in expr:
        raise MachineExpressionError(f"witness must be an object with 'H' and 'K': {expr!r}")
    try:
        flavor = Flavor(expr.get("flavor", Flavor.STRONG.value))
    except ValueError:
        raise MachineExpressionError(f"unknown witness flavor: {expr.get('flavor')!r}")
    return Witness(parse_machine(expr["H"]), parse_machine(expr["K"]), flavor, expr.get("label", "witness"))


def apply_witness(wit: Witness, G: MonotoneMachine) -> MonotoneMachine:
    """Candidate realizer of f built from a realizer G of g."""
    GK = Compose(G, wit.K)
    if wit.flavor is Flavor.STRONG:
        return Compose(wit.H, GK)
    return Compose(wit.H, Pairing(Identity(), GK))


def compose_witnesses(outer: Witness, inner: Witness) -> Witness:
    """
    Transitivity: f ≤ g via `outer` and g ≤ h via `inner` give f ≤ h.

    Strong: (H1∘H2, K2∘K1). Plain: K2∘K1 with H⟨u, w⟩ = H1⟨u, H2⟨K1 u, w⟩⟩;
    mixed flavors are composed as plain.
    """
    K = Compose(inner.K, outer.K)
    label = f"{outer.label}∘{inner.label}"
    if outer.flavor is Flavor.STRONG and inner.flavor is Flavor.STRONG:
        return Witness(Compose(outer.H, inner.H), K, Flavor.STRONG, label)
    inner_H = inner.H if inner.flavor is Flavor.PLAIN else Compose(inner.H, OddPart())
    g_output = Compose(inner_H, Pairing(Compose(outer.K, EvenPart()), OddPart()))
    if outer.flavor is Flavor.PLAIN:
        H = Compose(outer.H, Pairing(EvenPart(), g_output))
    else:
        H = Compose(outer.H, g_output)
    return Witness(H, K, Flavor.PLAIN, label)


# =====================================================================
# Verification
# =====================================================================

@dataclass
class ReductionReport:
    """Counts of oracle verdicts over sampled inputs; a single Reject refutes."""

    problem: str
    target: str
    witness: str
    samples: int
    depth: int
    seed: int
    counts: Dict[str, int] = field(default_factory=lambda: {v.value: 0 for v in Verdict})
    skipped: int = 0
    first_refutation: Optional[Dict[str, Any]] = None
    fuel_used: int = 0
    fuel_exhausted: bool = False

    @property
    def refuted(self) -> bool:
        return self.counts[Verdict.REJECT.value] > 0

    @property
    def checked(self) -> int:
        return sum(self.counts.values())

    def to_record(self) -> Dict[str, Any]:
        return {
            "problem": self.problem,
            "target": self.target,
            "witness": self.witness,
            "samples": self.samples,
            "depth": self.depth,
            "seed": self.seed,
            "counts": dict(self.counts),
            "skipped": self.skipped,
            "refuted": self.refuted,
            "first_refutation": self.first_refutation,
            "fuel_used": self.fuel_used,
            "fuel_exhausted": self.fuel_exhausted,
        }


def sample_prefix(rng: random.Random, length: int, alphabet: int = DEFAULT_ALPHABET) -> Word:
    return tuple(rng.randrange(alphabet) for _ in range(length))


def verify_reduction(
    f: ProblemOracle,
    g: ProblemBundle,
    wit: Witness,
    samples: int,
    depth: int,
    fuel: Optional[int] = None,
    seed: int = DEFAULT_SEED,
    alphabet: int = DEFAULT_ALPHABET,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> ReductionReport:
    """
    Check a witness on `samples` seeded input prefixes of length `depth`.

    Inputs are drawn uniformly over {0..alphabet-1} and redrawn (up to
    `max_attempts` times) while f.dom_adj rejects them. Every dom check and
    every candidate invocation costs one unit of fuel; the default budget is
    samples * (max_attempts + 1).

    Args:
        f: Problem being reduced
        g: Problem reduced to; must carry a realizer
        wit: Witness under test
        samples: Number of inputs to check
        depth: Input prefix length

    Returns:
        ReductionReport; refutation is reported, never raised

    Raises:
        ValueError: When g carries no realizer
    """
    if g.realizer is None:
        raise ValueError(f"problem {g.name!r} carries no realizer")
    if fuel is None:
        fuel = samples * (max_attempts + 1)
    candidate = apply_witness(wit, g.realizer)
    rng = random.Random(seed)
    report = ReductionReport(f.name, g.name, wit.label, samples, depth, seed)

    for index in range(samples):
        u: Optional[Word] = None
        for _ in range(max_attempts):
            if report.fuel_used >= fuel:
                break
            draw = sample_prefix(rng, depth, alphabet)
            report.fuel_used += 1
            if f.dom(draw) is not Verdict.REJECT:
                u = draw
                break
        if report.fuel_used >= fuel and u is None:
            report.fuel_exhausted = True
            break
        if u is None:
            report.skipped += 1
            continue
        if report.fuel_used >= fuel:
            report.fuel_exhausted = True
            break
        v = candidate(u)
        report.fuel_used += 1
        verdict = f.graph(u, v)
        report.counts[verdict.value] += 1
        metrics.METRIC_VERDICTS_TOTAL.labels(problem=f.name, verdict=verdict.value).inc()
        if verdict is Verdict.REJECT and report.first_refutation is None:
            report.first_refutation = {"sample": index, "input": list(u), "output": list(v)}
            metrics.METRIC_REFUTATIONS_TOTAL.inc()
            logger.info(
                "Witness refuted",
                extra={"problem": f.name, "target": g.name, "sample": index},
            )

    logger.info(
        "Verified reduction",
        extra={
            "problem": f.name,
            "target": g.name,
            "checked": report.checked,
            "refuted": report.refuted,
            "fuel_used": report.fuel_used,
        },
    )
    return report


# =====================================================================
# Compilers
# =====================================================================

def disc_to_dis_reduction(D: NameTransformer) -> Witness:
    """
    DIS ≤sW f from a discontinuity transformer D of f.

    K = D∘R with R the constant-section transformer (Φ_{R(p)} ≡ U(p)), H = id:
    a realizer F of f satisfies U(p) = Φ_{R(p)}DR(p) ≠ FDR(p).
    """
    K = Compose(D.word_map, const_section_transformer().word_map)
    return Witness(Identity(), K, Flavor.STRONG, f"disc_to_dis({D.label})")


def reduction_to_disc(wit: Witness) -> NameTransformer:
    """
    Discontinuity transformer D = K∘R of f from a witness DIS ≤ f.

    R is the parameterized fixpoint of F⟨q, r⟩ = H⟨r, U⟨q, K r⟩⟩ (plain) or
    H(U⟨q, K r⟩) (strong), so U R(q) = F⟨q, R(q)⟩ and a realizer Φ_q of f
    would put H's output into DIS(R(q)) while equal to U R(q).
    """
    simulated = Compose(Universal(), Pairing(EvenPart(), Compose(wit.K, OddPart())))
    if wit.flavor is Flavor.PLAIN:
        F = Compose(wit.H, Pairing(OddPart(), simulated))
    else:
        F = Compose(wit.H, simulated)
    R = param_fixpoint(F)
    logger.info("Compiled discontinuity transformer", extra={"witness": wit.label, "flavor": wit.flavor.value})
    return R.then(wit.K, label=f"disc({wit.label})")


def dis_to_lpo() -> Witness:
    """
    DIS ≤sW LPO.

    K(p) is the zero-padded certified output of U(p); LPO answers 1 when it
    holds a nonzero digit, and H swaps answer streams 1,1,... and 0,0,...,
    which differ from U(p) in either case.
    """
    return Witness(DigitMap.of({0: 1, 1: 0}), Pad(Universal()), Flavor.STRONG, "dis_to_lpo")


def many_one_to_sw(
    h: DigitMap,
    A: SetOracle,
    B: SetOracle,
    samples: int = DEFAULT_MANY_ONE_SAMPLES,
    depth: int = DEFAULT_MANY_ONE_DEPTH,
    seed: int = DEFAULT_SEED,
    alphabet: int = DEFAULT_ALPHABET,
) -> Witness:
    """
    χ_A ≤sW χ_B from A = h^-1(B), with naturals coded by the first digit.

    K applies h digitwise (only the first digit is read by A and B), H = id.
    A = h^-1(B) is checked on every digit below `alphabet` and every digit
    listed in h, each as a first digit, and on `samples` seeded prefixes.

    Raises:
        WitnessRefutedError: When A(u) and B(h(u)) are both certified and differ
    """
    rng = random.Random(seed)
    first_digits = sorted(set(range(alphabet)) | {a for a, _ in h.table})
    draws = [(d,) + sample_prefix(rng, depth - 1, alphabet) for d in first_digits]
    draws += [sample_prefix(rng, depth, alphabet) for _ in range(samples)]
    for u in draws:
        a, b = A(u), B(h(u))
        if Verdict.UNKNOWN not in (a, b) and a is not b:
            raise WitnessRefutedError(
                f"{A.name} is not h^-1({B.name}): {list(u)} gives {a.value}, h of it gives {b.value}",
                {"input": list(u), "image": list(h(u))},
            )
    logger.debug("Checked many-one reduction", extra={"source": A.name, "target": B.name, "draws": len(draws)})
    return Witness(Identity(), h, Flavor.STRONG, f"many_one({A.name}->{B.name})")


def delta_realizer_to_disc(A: SetOracle, R_delta: MonotoneMachine) -> NameTransformer:
    """Discontinuity transformer of χ_A: D = R_delta ∘ G with G the Sierpiński totalizer."""
    return totalizer_transformer().then(R_delta, label=f"delta_disc({A.name})")


def disc_to_delta_realizer(A: SetOracle, D: NameTransformer) -> MonotoneMachine:
    """A discontinuity transformer of χ_A read as a realizer of Δ_A: D(q) ∈ A Δ U."""
    logger.debug("Reading discontinuity as Δ realizer", extra={"set": A.name, "transformer": D.label})
    return D.word_map
