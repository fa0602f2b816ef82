"""Linear inequalities f.x <= b with exact rational data."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import DimensionMismatch
from .scenario import Behavior, Representation, Scenario


@dataclass(frozen=True)
class Inequality:
    """A candidate or confirmed Bell inequality: coefficients . x <= bound."""

    scenario: Scenario
    representation: Representation
    coefficients: tuple[Fraction, ...]
    bound: Fraction

    def __post_init__(self):
        expected = self.representation.length(self.scenario)
        if len(self.coefficients) != expected:
            raise DimensionMismatch(
                f"{len(self.coefficients)} coefficients, representation "
                f"needs {expected}"
            )

    def evaluate(self, point) -> Fraction:
        """Value of coefficients . point; accepts a Behavior or a raw vector."""
        entries = point.entries if isinstance(point, Behavior) else point
        if len(entries) != len(self.coefficients):
            raise DimensionMismatch(
                f"point length {len(entries)} != {len(self.coefficients)}"
            )
        return sum(c * Fraction(x) for c, x in zip(self.coefficients, entries))

    def satisfied_by(self, point) -> bool:
        return self.evaluate(point) <= self.bound

    def normalize(self) -> "Inequality":
        """Canonical form: positive rescaling to integers with collective
        gcd 1.

        Only positive scales are used, so the halfspace is preserved: a
        normalized facet list stays valid.  (Facets of probability polytopes
        genuinely pass through the origin with a negative leading
        coefficient, e.g. reduced positivity facets, so a sign-flipping
        convention would have to store some facets in the inverted, invalid
        orientation; validity wins.)  Idempotent.
        """
        coeffs, bound = _primitive_pair(self.coefficients, self.bound)
        return Inequality(self.scenario, self.representation, coeffs, bound)

    def key(self):
        return (self.coefficients, self.bound)


def _primitive_pair(coefficients, bound):
    values = list(coefficients) + [bound]
    if all(v == 0 for v in values):
        return tuple(Fraction(0) for _ in coefficients), Fraction(0)
    denom = lcm(*(v.denominator for v in values))
    ints = [int(v * denom) for v in values]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    ints = [x // g for x in ints]
    return tuple(Fraction(x) for x in ints[:-1]), Fraction(ints[-1])
