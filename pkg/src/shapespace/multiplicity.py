"""Bounded multiplicity algebra.

A multiplicity is an interval over the naturals extended with an
unbounded upper limit (written ``omega`` here, represented by
``math.inf``).  With the precision bound fixed to 1 there are exactly
six values:

    0, 0..1, 0+, 1, 1+, 2+

Arithmetic results are re-approximated to the smallest of these values
whose interval encloses the exact interval, so every operation
over-approximates its exact counterpart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

OMEGA = math.inf

# Lower bounds may not exceed 2 and finite upper bounds may not exceed 1;
# lifting the precision bound means relaxing these two constants.
_MAX_LO = 2
_MAX_FINITE_HI = 1


@dataclass(frozen=True, order=True)
class Multiplicity:
    """Interval ``<lo, hi>`` with ``lo <= hi`` and ``hi`` possibly omega.

    Ordered lexicographically by ``(lo, hi)``; this is an arbitrary
    total order used for canonical sorting, not the subsumption order.
    """

    lo: int
    hi: float  # int, or math.inf for omega

    def __post_init__(self):
        if self.lo < 0:
            raise ValueError(f"negative lower bound: {self.lo}")
        if self.lo > self.hi:
            raise ValueError(f"empty interval <{self.lo},{self.hi}>")
        finite_hi_ok = math.isinf(self.hi) or self.hi <= _MAX_FINITE_HI
        if self.lo > _MAX_LO or not finite_hi_ok:
            raise ValueError(f"not a bounded multiplicity: <{self.lo},{self.hi}>")

    def contains(self, k) -> bool:
        """Whether the natural (or omega) ``k`` lies in the interval."""
        return self.lo <= k <= self.hi

    @property
    def is_concrete(self) -> bool:
        return self.lo == 1 and self.hi == 1

    @property
    def max_count(self) -> float:
        """Upper bound as a plain number (inf for omega)."""
        return self.hi

    def text(self) -> str:
        return _TEXT[self]

    def __repr__(self):
        return f"Mult({self.text()})"


ZERO = Multiplicity(0, 0)
ZERO_ONE = Multiplicity(0, 1)
ZERO_PLUS = Multiplicity(0, OMEGA)
ONE = Multiplicity(1, 1)
ONE_PLUS = Multiplicity(1, OMEGA)
TWO_PLUS = Multiplicity(2, OMEGA)

BOUNDED = (ZERO, ZERO_ONE, ZERO_PLUS, ONE, ONE_PLUS, TWO_PLUS)

_TEXT = {
    ZERO: "0",
    ZERO_ONE: "0..1",
    ZERO_PLUS: "0+",
    ONE: "1",
    ONE_PLUS: "1+",
    TWO_PLUS: "2+",
}


def bounded(lo, hi) -> Multiplicity:
    """Smallest bounded value whose interval contains ``[lo, hi]``."""
    if lo > hi:
        raise ValueError(f"empty interval <{lo},{hi}>")
    new_lo = min(int(lo), _MAX_LO)
    if hi <= _MAX_FINITE_HI:
        new_hi = int(hi)
    else:
        new_hi = OMEGA
    return Multiplicity(new_lo, new_hi)


def approx_card(k: int) -> Multiplicity:
    """Bounded approximation of a set cardinality."""
    if k < 0:
        raise ValueError(f"negative cardinality: {k}")
    return bounded(k, k)


def add(mu: Multiplicity, nu: Multiplicity) -> Multiplicity:
    """Interval sum, re-approximated (omega is absorbing)."""
    return bounded(mu.lo + nu.lo, mu.hi + nu.hi)


def subtract_one(mu: Multiplicity) -> Multiplicity:
    """Remove one unit from a population.

    Requires ``hi >= 1``: removal must be justified by a witness, which
    is why populations with ``lo = 0`` (but a nonzero upper bound) may
    still yield one unit.
    """
    if mu.hi < 1:
        raise ValueError(f"cannot remove a unit from {mu.text()}")
    hi = mu.hi if mu.hi == OMEGA else mu.hi - 1
    return bounded(max(mu.lo - 1, 0), hi)


def subsumes(nu: Multiplicity, mu: Multiplicity) -> bool:
    """Whether ``mu``'s interval is included in ``nu``'s (mu below nu)."""
    return mu.lo >= nu.lo and mu.hi <= nu.hi


def positive_part(mu: Multiplicity) -> Multiplicity:
    """Restriction of the interval to values > 0 (must be nonempty)."""
    if mu.hi < 1:
        raise ValueError(f"{mu.text()} has no positive values")
    return bounded(max(mu.lo, 1), mu.hi)


def from_text(text: str) -> Multiplicity:
    for m, t in _TEXT.items():
        if t == text:
            return m
    raise ValueError(f"unknown multiplicity {text!r}")
