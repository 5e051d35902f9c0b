"""Torus-knot splitting frames and the slopes of single splitting moves.

A frame records two torus-knot parameter pairs (p, q) and (r, s) sitting on
neighboring levels of a thickened torus; the knot being split has parameters
(p+r, q+s).  A splitting move peels one of the two constituents onto its own
level, below ("drop") or above ("lift") the remaining circle, and rejoins the
two circles with a pair of banded arcs.

Slopes fall out of homology bookkeeping.  In the ordered longitude/meridian
basis, a circle with class (ell, m) on an upper level links one with class
(ell', m') on a lower level in m * ell' points, and each disk slope below is
twice such a linking number.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd

from .slopes import Rational, Slope

RHO_COORDS = "(ρ,ρ⁰)"
LAMBDA_COORDS = "(λ,λ⁰)"
TAU_COORDS = "(τ,τ⁰)"

DEGENERATE_BOUND = 2  # composite parameters this small give a trivial or 2-bridge composite knot


class SplitKind(Enum):
    """The four single splitting moves.

    The name says which constituent is peeled off (the (r, s) one for the
    lambda moves, the (p, q) one for the rho moves) and whether the peeled
    copy drops below or lifts above.
    """

    DROP_LAMBDA = "drop-lambda"
    LIFT_LAMBDA = "lift-lambda"
    DROP_RHO = "drop-rho"
    LIFT_RHO = "lift-rho"

    @property
    def drops(self) -> bool:
        return self in (SplitKind.DROP_LAMBDA, SplitKind.DROP_RHO)

    @property
    def splits_rho(self) -> bool:
        """True when the peeled copy is the (p, q) constituent."""
        return self in (SplitKind.DROP_RHO, SplitKind.LIFT_RHO)


@dataclass(frozen=True)
class HomologyClass:
    """A first-homology class of the thickened torus, ordered (longitude, meridian)."""

    ell: int
    m: int

    def __add__(self, other: "HomologyClass") -> "HomologyClass":
        return HomologyClass(self.ell + other.ell, self.m + other.m)

    def __rmul__(self, k: int) -> "HomologyClass":
        return HomologyClass(k * self.ell, k * self.m)

    def __neg__(self) -> "HomologyClass":
        return HomologyClass(-self.ell, -self.m)

    def pair(self) -> tuple[int, int]:
        return (self.ell, self.m)


@dataclass(frozen=True)
class FareyFrame:
    """Parameters (p, q) and (r, s) of the two splitting constituents.

    Validation demands both pairs coprime and cross determinant p*s - q*r
    equal to +-1, so the two pairs are Farey neighbors and the composite
    (p+r, q+s) is their mediant.  `validate_frame(..., bypass=True)` skips
    the checks for exploration and marks everything computed from the frame
    as unverified.
    """

    p: int
    q: int
    r: int
    s: int
    checked: bool = field(default=True, compare=False)

    @property
    def rho_class(self) -> HomologyClass:
        return HomologyClass(self.p, self.q)

    @property
    def lambda_class(self) -> HomologyClass:
        return HomologyClass(self.r, self.s)

    @property
    def tau_class(self) -> HomologyClass:
        return HomologyClass(self.p + self.r, self.q + self.s)

    @property
    def determinant(self) -> int:
        return self.p * self.s - self.q * self.r

    @property
    def degenerate(self) -> bool:
        """True when the composite knot is trivial or 2-bridge rather than a true torus knot."""
        return abs(self.p + self.r) <= DEGENERATE_BOUND or abs(self.q + self.s) <= DEGENERATE_BOUND

    @property
    def flags(self) -> tuple[str, ...]:
        out = []
        if self.degenerate:
            out.append("degenerate-frame")
        if self.p + self.r < 0 or self.q + self.s < 0:
            out.append("negative-composite")
        if not self.checked:
            out.append("unverified-bypass")
        return tuple(out)

    def text(self) -> str:
        return f"{self.p},{self.q},{self.r},{self.s}"

    @classmethod
    def parse(cls, text: str, *, bypass: bool = False) -> "FareyFrame":
        parts = text.split(",")
        if len(parts) != 4:
            raise ValueError(f"frame text needs four comma-separated integers, got {text!r}")
        p, q, r, s = (int(part) for part in parts)
        return validate_frame(p, q, r, s, bypass=bypass)


def validate_frame(p: int, q: int, r: int, s: int, *, bypass: bool = False) -> FareyFrame:
    """Check the frame hypotheses and build the frame.

    The three failure modes raise distinct messages: (p, q) not coprime,
    (r, s) not coprime, and cross determinant different from +-1.  With
    `bypass` no check runs and the frame comes back marked unchecked.
    """
    if bypass:
        return FareyFrame(p, q, r, s, checked=False)
    if gcd(p, q) != 1:
        raise ValueError(f"({p},{q}) is not a coprime pair")
    if gcd(r, s) != 1:
        raise ValueError(f"({r},{s}) is not a coprime pair")
    det = p * s - q * r
    if det not in (1, -1):
        raise ValueError(f"frame determinant p*s - q*r must be +-1, got {det}")
    return FareyFrame(p, q, r, s)


def linking_slope(upper: HomologyClass, lower: HomologyClass) -> Rational:
    """Twice the linking number of an upper circle with a lower one: 2 * m_upper * ell_lower."""
    return Fraction(2 * upper.m * lower.ell)


def splitting_disk_slope(frame: FareyFrame, kind: SplitKind) -> Slope:
    """Slope of the splitting move's disk before any twisting.

    Each value is twice the linking number of the upper circle with the
    lower one after the peel, and it is measured against the disk pair of
    the constituent that was not peeled.
    """
    p, q, r, s = frame.p, frame.q, frame.r, frame.s
    if kind is SplitKind.DROP_LAMBDA:
        return Slope(Fraction(2 * r * (q + s)), RHO_COORDS)
    if kind is SplitKind.LIFT_LAMBDA:
        return Slope(Fraction(2 * s * (p + r)), RHO_COORDS)
    if kind is SplitKind.DROP_RHO:
        return Slope(Fraction(2 * p * (q + s)), LAMBDA_COORDS)
    return Slope(Fraction(2 * q * (p + r)), LAMBDA_COORDS)


def splitting_tunnel_slope(frame: FareyFrame, kind: SplitKind, n: int) -> Slope:
    """Slope of the tunnel made by rejoining with n half-twists: disk slope + 1/n.

    n = 0 is rejected; with no twist the move does not produce a new tunnel.
    """
    if n == 0:
        raise ValueError("twist count must be nonzero")
    disk = splitting_disk_slope(frame, kind)
    return Slope(disk.value + Fraction(1, n), disk.coords)
