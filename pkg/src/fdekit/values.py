"""The four truth values and their De Morgan lattice.

The lattice has T on top, F on the bottom, and B ("both") and N ("neither")
incomparable in between.  Conjunction is lattice meet, disjunction lattice
join, and negation inverts the order while fixing B and N.  The designated
values (those that count as at least true) are T and B.
"""

from __future__ import annotations

from enum import Enum


class TruthValue(Enum):
    """One of the four lattice points T, B, N, F.

    The numeric codes fix the enumeration order T < B < N < F used everywhere
    a deterministic ordering of values is needed (truth tables, countermodel
    search, synthesis row order).
    """

    T = 0
    B = 1
    N = 2
    F = 3

    @property
    def code(self) -> int:
        return self.value

    @property
    def designated(self) -> bool:
        return self is TruthValue.T or self is TruthValue.B

    @property
    def letter(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return self.name


#: All four values in enumeration order.
VALUES: tuple[TruthValue, ...] = (
    TruthValue.T,
    TruthValue.B,
    TruthValue.N,
    TruthValue.F,
)

# Lattice tables indexed by value code.
_MEET = (
    (0, 1, 2, 3),
    (1, 1, 3, 3),
    (2, 3, 2, 3),
    (3, 3, 3, 3),
)
_JOIN = (
    (0, 0, 0, 0),
    (0, 1, 0, 1),
    (0, 0, 2, 2),
    (0, 1, 2, 3),
)
_NEG = (3, 1, 2, 0)


def meet(a: TruthValue, b: TruthValue) -> TruthValue:
    """Greatest lower bound; the value of a conjunction."""
    return VALUES[_MEET[a.code][b.code]]


def join(a: TruthValue, b: TruthValue) -> TruthValue:
    """Least upper bound; the value of a disjunction."""
    return VALUES[_JOIN[a.code][b.code]]


def negate(a: TruthValue) -> TruthValue:
    """Order inversion: swaps T and F, fixes B and N."""
    return VALUES[_NEG[a.code]]


def leq(a: TruthValue, b: TruthValue) -> bool:
    """Lattice order: F below B and N, B and N below T, B and N incomparable."""
    return meet(a, b) is a


def from_letter(letter: str) -> TruthValue:
    try:
        return TruthValue[letter]
    except KeyError:
        raise ValueError(f"unknown truth value {letter!r} (expected T, B, N or F)") from None
