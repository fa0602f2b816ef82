"""The complete full-correlation facet family for (N, 2, 2) scenarios.

With two settings per party, a settings-tuple is a bit vector, and the
family's facet coefficients come from a parity (Walsh-Hadamard) transform of
a +/-1 sign vector indexed by those bits.  Satisfying all 2^(2^N) linear
facets is equivalent to one nonlinear condition: the l1 norm of the parity
transform of the correlation vector must not exceed 2^N (the transform here
carries no prefactor; the inverse divides by 2^N).  The threshold constant
is guarded by tests against the exact LP membership oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapExceeded, DimensionMismatch, RepresentationMismatch
from .geometry import classical_bound
from .inequality import Inequality
from .scenario import Behavior, Representation, Scenario

DEFAULT_FAMILY_CAP = 2**16  # admits n <= 4


def parity_transform(values):
    """Unnormalized Walsh-Hadamard transform over the settings bits:
    out[r] = sum_s values[s] * (-1)^<r, s>.  Input length must be 2^n."""
    vals = [Fraction(v) for v in values]
    size = len(vals)
    if size == 0 or size & (size - 1):
        raise DimensionMismatch("parity transform needs a power-of-two length")
    half = 1
    while half < size:
        for start in range(0, size, half * 2):
            for k in range(start, start + half):
                a, b = vals[k], vals[k + half]
                vals[k], vals[k + half] = a + b, a - b
        half *= 2
    return tuple(vals)


def inverse_parity_transform(values):
    """Inverse of parity_transform (the 2^-n goes here, so the round trip is
    the identity on exact rationals)."""
    forward = parity_transform(values)
    size = len(forward)
    return tuple(v / size for v in forward)


def membership_threshold(n: int) -> Fraction:
    """l1 threshold of the transformed-coordinates membership test."""
    return Fraction(2**n)


@dataclass(frozen=True)
class SignVector:
    """A +/-1 vector indexed by settings-tuples r in {0,1}^n."""

    signs: tuple[int, ...]

    def __post_init__(self):
        size = len(self.signs)
        if size == 0 or size & (size - 1):
            raise DimensionMismatch("sign vector length must be a power of two")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("sign vector entries must be +1 or -1")

    @property
    def n_parties(self) -> int:
        return len(self.signs).bit_length() - 1

    def to_bitstring(self) -> str:
        return "".join("0" if s == 1 else "1" for s in self.signs)

    @classmethod
    def from_bitstring(cls, bits: str) -> "SignVector":
        return cls(tuple(1 if b == "0" else -1 for b in bits))

    @classmethod
    def from_index(cls, index: int, n: int) -> "SignVector":
        size = 2**n
        if not 0 <= index < 2**size:
            raise ValueError("sign vector index out of range")
        return cls(tuple(1 if (index >> (size - 1 - k)) & 1 == 0 else -1
                         for k in range(size)))


def ww_inequality(sign_vector: SignVector, n: int | None = None) -> Inequality:
    """The facet with coefficients beta(s) = sum_r signs(r) (-1)^<r,s> and the
    tight classical bound, normalized."""
    if n is None:
        n = sign_vector.n_parties
    elif n != sign_vector.n_parties:
        raise DimensionMismatch(
            f"sign vector has 2^{sign_vector.n_parties} entries, expected 2^{n}"
        )
    scenario = Scenario(n, 2, 2)
    coeffs = parity_transform(sign_vector.signs)
    bound = classical_bound(coeffs, scenario, Representation.FULL_CORRELATION)
    return Inequality(scenario, Representation.FULL_CORRELATION, coeffs,
                      bound).normalize()


def ww_enumerate(n: int, cap: int = DEFAULT_FAMILY_CAP):
    """All 2^(2^n) family inequalities, sign vectors in lexicographic order."""
    if n < 1:
        raise ValueError("n must be positive")
    count = 2 ** (2**n)
    if count > cap:
        raise CapExceeded(f"{count} inequalities exceed the cap of {cap}")

    def _iter():
        for index in range(count):
            yield ww_inequality(SignVector.from_index(index, n))

    return _iter()


def ww_membership(xi: Behavior) -> tuple[bool, Fraction]:
    """Single nonlinear membership test, equivalent to all family facets.

    Returns (inside, l1_value) where l1_value is the l1 norm of the parity
    transform of the correlation vector; inside iff l1_value <= 2^n.
    """
    if xi.representation is not Representation.FULL_CORRELATION:
        raise RepresentationMismatch("membership test needs full correlations")
    if xi.scenario.n_settings != 2 or xi.scenario.n_outcomes != 2:
        raise RepresentationMismatch("membership test needs an (n, 2, 2) scenario")
    transformed = parity_transform(xi.entries)
    l1_value = sum(abs(v) for v in transformed)
    return l1_value <= membership_threshold(xi.scenario.n_parties), l1_value
