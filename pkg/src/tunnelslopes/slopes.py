"""Exact slope values, their mod-1 classes, and the complete tunnel invariant.

Every slope in this package is a `fractions.Fraction`.  Fractions are stored
fully reduced with a positive denominator, so structural equality is equality
of rational numbers and all arithmetic is exact; no floats appear anywhere.
This module adds the thin layer the rest of the package builds on: text
serialization, the mod-1 reduction applied to the leading slope of a chain
grown out of the trivial knot, and the record pairing a slope sequence with
its bit sequence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

Rational = Fraction


def reduce(numerator: int, denominator: int) -> Rational:
    """Return numerator/denominator in lowest terms with a positive denominator."""
    if denominator == 0:
        raise ZeroDivisionError("rational number with zero denominator")
    return Fraction(numerator, denominator)


def format_rational(x: Rational) -> str:
    """Serialize as "num/den", keeping the denominator even when it is 1."""
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Rational:
    """Parse the "num/den" form produced by `format_rational`; bare "num" is accepted."""
    return Fraction(text.strip())


def _as_exact(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass Fraction or int")
    return value if isinstance(value, Fraction) else Fraction(value)


@dataclass(frozen=True)
class Slope:
    """A slope value tagged with the disk pair it is measured against.

    The tag is bookkeeping only.  Two slopes are equal exactly when their
    values are equal: the measuring pair is determined by the position of the
    slope in its sequence, so it carries no information of its own.
    """

    value: Rational
    coords: str = field(compare=False)

    def __post_init__(self) -> None:
        if not self.coords:
            raise ValueError("slope coordinate tag must be nonempty")
        object.__setattr__(self, "value", _as_exact(self.value))

    def text(self) -> str:
        return format_rational(self.value)


@dataclass(frozen=True)
class SimpleSlope:
    """A slope taken mod 1, stored as its canonical representative in [0, 1)."""

    representative: Rational

    def __post_init__(self) -> None:
        object.__setattr__(self, "representative", _as_exact(self.representative) % 1)

    def text(self) -> str:
        return f"[{format_rational(self.representative)}]"


def simple_class(x) -> SimpleSlope:
    """Reduce a slope mod 1.

    Two inputs land in the same class exactly when they differ by an integer.
    """
    return SimpleSlope(_as_exact(x))


def slope_to_simple(x) -> SimpleSlope:
    """Mod-1 class of the reciprocal of a nonzero slope.

    The leading slope of a chain grown out of the trivial knot is only
    defined up to this reduction, which is what survives of it.
    """
    x = _as_exact(x)
    if x == 0:
        raise ZeroDivisionError("slope 0 has no reciprocal")
    return simple_class(1 / x)


@dataclass(frozen=True)
class TunnelInvariants:
    """Slope sequence plus bit sequence; together they decide tunnel equality.

    `first` is a SimpleSlope when the chain was grown out of the trivial knot
    and a full Slope otherwise; the two forms never compare equal.  There is
    one bit per twisted join, the initial splitting included, so `binary` is
    exactly one longer than `rest`.  At most two bits are ever set, and when
    two are, they are adjacent; construction enforces that shape.
    """

    first: SimpleSlope | Slope
    rest: tuple[Slope, ...]
    binary: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.first, (SimpleSlope, Slope)):
            raise TypeError(f"first invariant must be a Slope or SimpleSlope, got {type(self.first).__name__}")
        object.__setattr__(self, "rest", tuple(self.rest))
        object.__setattr__(self, "binary", tuple(self.binary))
        for entry in self.rest:
            if not isinstance(entry, Slope):
                raise TypeError(f"rest entries must be Slope, got {type(entry).__name__}")
        if any(bit not in (0, 1) for bit in self.binary):
            raise ValueError("binary invariants must be 0/1 bits")
        if len(self.binary) != 1 + len(self.rest):
            raise ValueError(
                f"need one bit per join: {len(self.rest)} later slopes require "
                f"{1 + len(self.rest)} bits, got {len(self.binary)}"
            )
        ones = [i for i, bit in enumerate(self.binary) if bit]
        if len(ones) > 2 or (len(ones) == 2 and ones[1] != ones[0] + 1):
            raise ValueError(f"at most two bits may be set, adjacent when two: {list(self.binary)}")

    def to_dict(self) -> dict:
        """Canonical serialization; coordinate tags are excluded, like in equality."""
        return {
            "first": self.first.text(),
            "rest": [slope.text() for slope in self.rest],
            "binary": list(self.binary),
        }


def invariants_equal(a: TunnelInvariants, b: TunnelInvariants) -> bool:
    """Equality of complete invariants.

    Delegates to structural equality, which already has the right semantics:
    coordinate tags are ignored, mod-1 classes compare by canonical
    representative, and a mod-1 first never equals a full-slope first.
    """
    return a == b
