"""Invariants of chained splitting constructions.

A chain starts with one of the four splitting moves and then keeps joining
fresh copies of a fixed knot, one join per entry of its twist sequence.  Two
independent engines compute the slope sequence:

* `closed_form_slopes` evaluates one closed formula per chain kind, driven by
  two small integer recursions over the parities of the twist counts;
* `oracle_slopes` replays the construction join by join, carrying the
  oriented homology class of the growing knot and reading each slope off a
  linking number; it also returns the full trace.

The engines must agree everywhere.  `assemble_invariants(..., verify=True)`
checks that on the fly and raises `EngineMismatchError` on any disagreement,
which would mean a bug in one of them, never a property of the input.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .frames import (
    LAMBDA_COORDS,
    RHO_COORDS,
    TAU_COORDS,
    FareyFrame,
    HomologyClass,
    SplitKind,
)
from .slopes import Slope, TunnelInvariants, slope_to_simple


class SequenceKind(Enum):
    """The eight chain kinds: four initial splitting moves, each iterated two ways.

    A pure chain keeps joining copies of the peeled constituent and keeps that
    constituent's disk at every later join; a mixed chain keeps joining copies
    of the composite knot and keeps the composite's disk instead.
    """

    DROP_RHO_PURE = "drop-rho-pure"
    DROP_RHO_MIXED_TAU = "drop-rho-mixed-tau"
    DROP_LAMBDA_PURE = "drop-lambda-pure"
    DROP_LAMBDA_MIXED_TAU = "drop-lambda-mixed-tau"
    LIFT_RHO_PURE = "lift-rho-pure"
    LIFT_RHO_MIXED_TAU = "lift-rho-mixed-tau"
    LIFT_LAMBDA_PURE = "lift-lambda-pure"
    LIFT_LAMBDA_MIXED_TAU = "lift-lambda-mixed-tau"

    @property
    def initial_split(self) -> SplitKind:
        return _INITIAL_SPLIT[self]

    @property
    def mixed(self) -> bool:
        """True when the joins add copies of the composite knot, not the peeled one."""
        return self.value.endswith("mixed-tau")

    @property
    def retained_disk(self) -> str:
        """Which disk every later join keeps in play."""
        if self.mixed:
            return "τ"
        return "ρ" if self.initial_split.splits_rho else "λ"

    @property
    def added_direction(self) -> str:
        """Vertical direction of each joined copy.

        Pure chains keep extending the way the initial move peeled; mixed
        chains extend the opposite way.
        """
        if self.mixed:
            return "up" if self.initial_split.drops else "down"
        return "down" if self.initial_split.drops else "up"


_INITIAL_SPLIT = {
    SequenceKind.DROP_RHO_PURE: SplitKind.DROP_RHO,
    SequenceKind.DROP_RHO_MIXED_TAU: SplitKind.DROP_RHO,
    SequenceKind.DROP_LAMBDA_PURE: SplitKind.DROP_LAMBDA,
    SequenceKind.DROP_LAMBDA_MIXED_TAU: SplitKind.DROP_LAMBDA,
    SequenceKind.LIFT_RHO_PURE: SplitKind.LIFT_RHO,
    SequenceKind.LIFT_RHO_MIXED_TAU: SplitKind.LIFT_RHO,
    SequenceKind.LIFT_LAMBDA_PURE: SplitKind.LIFT_LAMBDA,
    SequenceKind.LIFT_LAMBDA_MIXED_TAU: SplitKind.LIFT_LAMBDA,
}


@dataclass(frozen=True)
class TwistSequence:
    """Half-twist counts of the joins, initial splitting first; every count is nonzero."""

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))
        if not self.entries:
            raise ValueError("a twist sequence has at least one entry")
        for n in self.entries:
            if not isinstance(n, int) or n == 0:
                raise ValueError(f"twist counts must be nonzero integers, got {n!r}")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, index: int) -> int:
        return self.entries[index]

    def text(self) -> str:
        return ",".join(str(n) for n in self.entries)

    @classmethod
    def parse(cls, text: str) -> "TwistSequence":
        return cls(tuple(int(part) for part in text.split(",")))


def as_twists(twists) -> TwistSequence:
    """Coerce any iterable of ints to a TwistSequence."""
    if isinstance(twists, TwistSequence):
        return twists
    return TwistSequence(tuple(twists))


def step_sign(n: int) -> int:
    """+1 when the twist count is odd, -1 when even.

    An odd number of half-twists lets the strand coming back from the joined
    copy keep its direction; an even number reverses it.
    """
    if n == 0:
        raise ValueError("twist count must be nonzero")
    return 1 if n % 2 else -1


@dataclass(frozen=True)
class SignTables:
    """Orientation bookkeeping shared by all the closed slope formulas.

    With one step sign per join (+1 odd, -1 even), the running tables obey

        signs[0] = mults[0] = 1
        signs[k+1] = step_signs[k] * signs[k]
        mults[k+1] = 1 + step_signs[k] * mults[k]

    so signs[k] is the product of the first k step signs (always +-1).  In a
    pure chain the class of the knot assembled after k joins is
    mults[k]*(joined knot) + signs[k]*(other constituent); a mixed chain
    carries (mults[k]-signs[k]) copies of the composite knot instead.
    """

    step_signs: tuple[int, ...]
    signs: tuple[int, ...]
    mults: tuple[int, ...]


def sign_tables(twists) -> SignTables:
    """Run the sign recursions over a twist sequence."""
    return _cached_tables(as_twists(twists).entries)


@lru_cache(maxsize=8192)
def _cached_tables(entries: tuple[int, ...]) -> SignTables:
    steps = tuple(step_sign(n) for n in entries)
    signs = [1]
    mults = [1]
    for e in steps:
        signs.append(e * signs[-1])
        mults.append(1 + e * mults[-1])
    return SignTables(steps, tuple(signs), tuple(mults))


def position_coords(k: int, initial: SplitKind) -> str:
    """Coordinate tag for the k-th slope of a chain.

    The first slope is measured against the unpeeled constituent's disk pair,
    the second against the composite knot's, and each later one against the
    disk replaced two joins earlier.
    """
    if k == 0:
        return LAMBDA_COORDS if initial.splits_rho else RHO_COORDS
    if k == 1:
        return TAU_COORDS
    return f"(γ^{k - 2})"


def _doubled_linking(kind: SequenceKind, frame: FareyFrame, mult: int, sgn: int) -> int:
    """Integer part of the k-th slope: twice the join's linking number."""
    p, q, r, s = frame.p, frame.q, frame.r, frame.s
    if kind is SequenceKind.DROP_RHO_PURE:
        return 2 * p * (mult * q + sgn * s)
    if kind is SequenceKind.DROP_RHO_MIXED_TAU:
        return 2 * (q + s) * (mult * p + (mult - sgn) * r)
    if kind is SequenceKind.DROP_LAMBDA_PURE:
        return 2 * r * (mult * s + sgn * q)
    if kind is SequenceKind.DROP_LAMBDA_MIXED_TAU:
        return 2 * (q + s) * (mult * r + (mult - sgn) * p)
    if kind is SequenceKind.LIFT_RHO_PURE:
        return 2 * q * (mult * p + sgn * r)
    if kind is SequenceKind.LIFT_RHO_MIXED_TAU:
        return 2 * (p + r) * (mult * q + (mult - sgn) * s)
    if kind is SequenceKind.LIFT_LAMBDA_PURE:
        return 2 * s * (mult * r + sgn * p)
    return 2 * (p + r) * (mult * s + (mult - sgn) * q)


def closed_form_slopes(frame: FareyFrame, kind: SequenceKind, twists) -> list[Slope]:
    """Slope sequence of a chain, one closed formula per kind.

    Entry k combines the frame with the k-th sign-table values and adds the
    twist term 1/n_k.  Both tables start at 1, so entry 0 always agrees with
    the single-splitting slope of the chain's initial move.
    """
    t = as_twists(twists)
    tables = _cached_tables(t.entries)
    initial = kind.initial_split
    out = []
    for k, n in enumerate(t.entries):
        coeff = _doubled_linking(kind, frame, tables.mults[k], tables.signs[k])
        out.append(Slope(coeff + Fraction(1, n), position_coords(k, initial)))
    return out


@dataclass(frozen=True)
class TraceStep:
    """One join of the step-by-step engine.

    `linking` is the linking number of `upper` with `lower`; the slope of the
    join is exactly 2 * linking + 1/n for the join's twist count n.  `c_prev`
    is the oriented class of the knot assembled before this join.
    """

    k: int
    c_prev: HomologyClass
    upper: HomologyClass
    lower: HomologyClass
    linking: int
    slope: Slope


@dataclass(frozen=True)
class IterationTrace:
    """Debug stream of the step-by-step engine, one record per join."""

    steps: tuple[TraceStep, ...]

    def json_lines(self) -> list[str]:
        out = []
        for st in self.steps:
            out.append(
                json.dumps(
                    {
                        "k": st.k,
                        "c_prev": list(st.c_prev.pair()),
                        "upper": list(st.upper.pair()),
                        "lower": list(st.lower.pair()),
                        "linking": st.linking,
                        "slope": st.slope.text(),
                    },
                    separators=(",", ":"),
                )
            )
        return out


def oracle_slopes(frame: FareyFrame, kind: SequenceKind, twists) -> tuple[list[Slope], IterationTrace]:
    """Slope sequence computed with no closed formulas, plus the full trace.

    Write B for the peeled constituent's class and T for the composite
    knot's.  A pure chain starts from T and accretes B at every join; a mixed
    chain starts from B and accretes T.  Each join multiplies the old class
    by the step sign before adding the accreted one, and the slope read at
    the join is twice the linking number of the upper circle with the lower
    one, plus 1/n.  Which circle is upper follows the chain geometry: the
    fresh copy sits on the side given by `kind.added_direction`.
    """
    t = as_twists(twists)
    constituent = frame.rho_class if kind.initial_split.splits_rho else frame.lambda_class
    composite = frame.tau_class
    mixed = kind.mixed
    drops = kind.initial_split.drops
    initial = kind.initial_split
    accreted = composite if mixed else constituent
    prev = constituent if mixed else composite
    slopes: list[Slope] = []
    steps: list[TraceStep] = []
    for k, n in enumerate(t.entries):
        if mixed:
            upper, lower = (composite, prev) if drops else (prev, composite)
        else:
            upper, lower = (prev, constituent) if drops else (constituent, prev)
        link = upper.m * lower.ell
        slope = Slope(2 * link + Fraction(1, n), position_coords(k, initial))
        steps.append(TraceStep(k, prev, upper, lower, link, slope))
        slopes.append(slope)
        prev = accreted + step_sign(n) * prev
    return slopes, IterationTrace(tuple(steps))


def binary_invariants(kind: SequenceKind, steps: int, splitting_bit: int) -> list[int]:
    """Bit sequence of a chain: one bit per join, initial splitting first.

    Every join of a pure chain keeps the same disk as the splitting move, so
    only the splitting's own bit, fixed by whatever construction preceded it
    and therefore supplied by the caller, can be set.  A mixed chain switches
    the kept disk at its first join, which sets that join's bit as well.
    """
    if steps < 1:
        raise ValueError("a chain has at least its initial splitting")
    if splitting_bit not in (0, 1):
        raise ValueError(f"splitting bit must be 0 or 1, got {splitting_bit!r}")
    bits = [0] * steps
    bits[0] = splitting_bit
    if kind.mixed and steps >= 2:
        bits[1] = 1
    return bits


class EngineMismatchError(RuntimeError):
    """The closed-form and step-by-step engines disagreed; this is an internal bug."""


TRIVIAL_FRAMES = ((1, 0, 0, 1), (-1, 0, 0, -1))


def assemble_invariants(
    frame: FareyFrame,
    kind: SequenceKind,
    twists,
    splitting_bit: int = 0,
    from_trivial: bool = False,
    *,
    verify: bool = False,
) -> TunnelInvariants:
    """Complete invariant of a chain: closed-form slopes plus the bit rules.

    With `from_trivial` the chain grows out of the trivial knot, which needs
    the identity frame up to an overall sign; the leading slope is then
    reduced to its mod-1 class.  With `verify` the slopes are recomputed by
    the step-by-step engine and any disagreement raises EngineMismatchError.
    """
    t = as_twists(twists)
    if from_trivial and (frame.p, frame.q, frame.r, frame.s) not in TRIVIAL_FRAMES:
        raise ValueError("a chain out of the trivial knot needs the identity frame, up to sign")
    slopes = closed_form_slopes(frame, kind, t)
    if verify:
        replayed, _ = oracle_slopes(frame, kind, t)
        if replayed != slopes:
            raise EngineMismatchError(
                f"engines disagree for frame {frame.text()}, kind {kind.value}, twists {t.text()}"
            )
    bits = binary_invariants(kind, len(t), splitting_bit)
    first = slope_to_simple(slopes[0].value) if from_trivial else slopes[0]
    return TunnelInvariants(first, tuple(slopes[1:]), tuple(bits))
