"""2-bridge knots: alternating even continued fractions, their upper-tunnel
slopes, and the crosswalk to drop chains grown out of the trivial knot.

A 2-bridge position is encoded here by the alternating even continued
fraction [2*signs[d], 2*turns[d], ..., 2*signs[0], 2*turns[0]], stored
innermost pair first; every sign is +-1.  Its upper tunnel has an invariant
computable directly from the encoding, and the same tunnel arises from a
chain of drop moves on the identity frame whose twist counts the encoding
determines, so the two computations must always agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .frames import SplitKind, validate_frame
from .iteration import (
    SequenceKind,
    TwistSequence,
    as_twists,
    assemble_invariants,
    position_coords,
)
from .slopes import Slope, TunnelInvariants, invariants_equal, simple_class


def _step_twist(prev_sign: int, sign: int, turn: int) -> int:
    if sign == 1 and prev_sign == 1:
        return 2 * turn + 1
    if sign == -1 and prev_sign == -1:
        return 2 * turn - 1
    return 2 * turn


@dataclass(frozen=True)
class TwoBridgeFraction:
    """An alternating even continued fraction, innermost pair first.

    Construction enforces the structural rules: equal positive lengths, signs
    +-1, and every derived step twist nonzero.  The classical hypothesis also
    demands turns[0] != 0; `validate_cf` adds that check, while
    `twists_to_cf` may build the single flagged turns[0] == 0 family so that
    every nonzero leading twist count has a preimage.
    """

    signs: tuple[int, ...]
    turns: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "signs", tuple(self.signs))
        object.__setattr__(self, "turns", tuple(self.turns))
        if len(self.signs) != len(self.turns):
            raise ValueError(f"length mismatch: {len(self.signs)} signs vs {len(self.turns)} turns")
        if not self.signs:
            raise ValueError("empty continued fraction")
        for i, sign in enumerate(self.signs):
            if sign not in (1, -1):
                raise ValueError(f"sign entries must be +-1, got {sign!r} at position {i}")
        for i in range(1, len(self.signs)):
            if _step_twist(self.signs[i - 1], self.signs[i], self.turns[i]) == 0:
                raise ValueError(
                    f"step twist vanishes at position {i}: opposite adjacent signs with turn 0"
                )

    @property
    def depth(self) -> int:
        return len(self.signs) - 1

    def step_twists(self) -> tuple[int, ...]:
        """Twist counts of the chained joins, one per position past the innermost."""
        return tuple(
            _step_twist(self.signs[i - 1], self.signs[i], self.turns[i])
            for i in range(1, len(self.signs))
        )

    @property
    def flags(self) -> tuple[str, ...]:
        out = []
        if self.turns[0] == 0:
            out.append("b0-zero")
        if any(turn == 0 for turn in self.turns[1:]):
            out.append("b-zero")
        return tuple(out)

    def text(self) -> str:
        """Outermost-first display form with doubled entries."""
        parts = []
        for sign, turn in zip(reversed(self.signs), reversed(self.turns)):
            parts.append(str(2 * sign))
            parts.append(str(2 * turn))
        return "[" + ",".join(parts) + "]"


def validate_cf(signs, turns) -> TwoBridgeFraction:
    """Validate under the full classical hypotheses.

    On top of the structural rules checked at construction, the leading turn
    must be nonzero; that failure gets its own distinct message.
    """
    cf = TwoBridgeFraction(tuple(signs), tuple(turns))
    if cf.turns[0] == 0:
        raise ValueError("leading turn must be nonzero")
    return cf


def semisimple_slopes(cf: TwoBridgeFraction) -> TunnelInvariants:
    """Invariant of the upper tunnel of the 2-bridge position.

    The leading invariant is a mod-1 class fixed by the innermost pair; each
    later slope is -2 * (previous sign) + 1/(step twist).  All bits are 0:
    these tunnels retain a disk of the innermost splitting all the way up.
    """
    lead_turn = cf.turns[0]
    if cf.signs[0] == 1:
        first = simple_class(Fraction(2 * lead_turn, 4 * lead_turn + 1))
    else:
        first = simple_class(Fraction(2 * lead_turn - 1, 4 * lead_turn - 1))
    rest = tuple(
        Slope(-2 * cf.signs[i - 1] + Fraction(1, k), position_coords(i, SplitKind.DROP_RHO))
        for i, k in enumerate(cf.step_twists(), start=1)
    )
    return TunnelInvariants(first, rest, (0,) * len(cf.signs))


def cf_to_twists(cf: TwoBridgeFraction) -> TwistSequence:
    """Twist counts of the drop chain on the identity frame matching the fraction.

    The leading count is 2*turns[0] for a positive leading sign and
    2*turns[0] - 1 for a negative one; the rest are the step twists.
    """
    lead = 2 * cf.turns[0] if cf.signs[0] == 1 else 2 * cf.turns[0] - 1
    return TwistSequence((lead, *cf.step_twists()))


def twists_to_cf(twists) -> TwoBridgeFraction:
    """Inverse of `cf_to_twists`, defined for every nonzero twist sequence.

    Parities force everything: an even count flips the sign relative to the
    previous position, an odd one keeps it, and the turn is then the unique
    integer giving that count back.  The leading count -1 lands on the
    flagged turns[0] == 0 family, the one case outside the classical
    hypothesis.
    """
    t = as_twists(twists)
    lead = t[0]
    if lead % 2 == 0:
        signs = [1]
        turns = [lead // 2]
    else:
        signs = [-1]
        turns = [(lead + 1) // 2]
    for n in t.entries[1:]:
        prev = signs[-1]
        sign = -prev if n % 2 == 0 else prev
        if sign == 1 and prev == 1:
            turn = (n - 1) // 2
        elif sign == -1 and prev == -1:
            turn = (n + 1) // 2
        else:
            turn = n // 2
        signs.append(sign)
        turns.append(turn)
    return TwoBridgeFraction(tuple(signs), tuple(turns))


@dataclass(frozen=True)
class CorrespondenceReport:
    """Both routes to one tunnel invariant and whether they agreed.

    `bridge_invariants` comes straight from the continued fraction,
    `chain_invariants` from replaying the matching drop chain; `match` is
    their exact comparison and is stored rather than asserted so that a
    failure is reportable, never dropped.
    """

    cf: TwoBridgeFraction
    twists: TwistSequence
    bridge_invariants: TunnelInvariants
    chain_invariants: TunnelInvariants
    match: bool

    def __post_init__(self) -> None:
        if self.match != invariants_equal(self.bridge_invariants, self.chain_invariants):
            raise ValueError("match field contradicts the stored invariants")


def verify_correspondence(cf: TwoBridgeFraction) -> CorrespondenceReport:
    """Check that the drop chain reproduces the 2-bridge tunnel invariant exactly.

    Runs the chain out of the trivial knot with the matching twist counts and
    compares complete invariants.  `match` should be True for every fraction;
    a False is a failure of the package, and callers are expected to surface
    it.
    """
    twists = cf_to_twists(cf)
    bridge = semisimple_slopes(cf)
    chain = assemble_invariants(
        validate_frame(1, 0, 0, 1),
        SequenceKind.DROP_RHO_PURE,
        twists,
        splitting_bit=0,
        from_trivial=True,
    )
    return CorrespondenceReport(cf, twists, bridge, chain, invariants_equal(bridge, chain))
