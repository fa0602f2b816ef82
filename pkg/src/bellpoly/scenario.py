"""Bell scenarios, deterministic strategies, and their polytope vertices.

A scenario (N, M, K) has N parties, M measurement settings per party and K
outcomes per setting.  A deterministic strategy fixes one outcome for every
(party, setting) pair; its image under a representation is a vertex of the
local polytope.

Index conventions (fixed for all file formats downstream):
  * settings-tuple s = (s_0, ..., s_{N-1}) -> index sum(s_i * M**(N-1-i)),
    party 0 most significant;
  * outcomes-tuple likewise in base K;
  * full-probability entry index = settings_index * K**N + outcomes_index;
  * full-correlation entry index = settings_index;
  * for K = 2 the +/-1 values are outcome 0 -> +1, outcome 1 -> -1.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapExceeded, DimensionMismatch, RepresentationMismatch

DEFAULT_STRATEGY_CAP = 2**24

_PM_VALUES = (1, -1)  # outcome index -> +/-1 value (K = 2 only)


@dataclass(frozen=True, order=True)
class Scenario:
    """The triple (N, M, K): parties, settings per party, outcomes per setting."""

    n_parties: int
    n_settings: int
    n_outcomes: int

    def __post_init__(self):
        if self.n_parties < 1 or self.n_settings < 1 or self.n_outcomes < 2:
            raise ValueError(
                f"need N >= 1, M >= 1, K >= 2, got "
                f"({self.n_parties},{self.n_settings},{self.n_outcomes})"
            )

    def strategy_count(self) -> int:
        return self.n_outcomes ** (self.n_parties * self.n_settings)

    def settings_tuples(self):
        return itertools.product(range(self.n_settings), repeat=self.n_parties)

    def outcomes_tuples(self):
        return itertools.product(range(self.n_outcomes), repeat=self.n_parties)

    def settings_index(self, settings) -> int:
        idx = 0
        for s in settings:
            idx = idx * self.n_settings + s
        return idx

    def outcomes_index(self, outcomes) -> int:
        idx = 0
        for a in outcomes:
            idx = idx * self.n_outcomes + a
        return idx

    def prob_index(self, settings, outcomes) -> int:
        return (self.settings_index(settings) * self.n_outcomes ** self.n_parties
                + self.outcomes_index(outcomes))


class Representation(enum.Enum):
    """How a behavior is laid out as a vector."""

    FULL_PROBABILITY = "prob"
    FULL_CORRELATION = "corr"

    def validate(self, scenario: Scenario) -> None:
        if self is Representation.FULL_CORRELATION and scenario.n_outcomes != 2:
            raise RepresentationMismatch(
                "full-correlation representation requires K = 2"
            )

    def length(self, scenario: Scenario) -> int:
        self.validate(scenario)
        if self is Representation.FULL_CORRELATION:
            return scenario.n_settings ** scenario.n_parties
        return (scenario.n_settings * scenario.n_outcomes) ** scenario.n_parties

    @classmethod
    def from_name(cls, name: str) -> "Representation":
        for rep in cls:
            if rep.value == name:
                return rep
        raise ValueError(f"unknown representation {name!r} (use 'corr' or 'prob')")


@dataclass(frozen=True)
class DeterministicStrategy:
    """One outcome per (party, setting), flattened party-major."""

    scenario: Scenario
    assignment: tuple[int, ...]

    def __post_init__(self):
        sc = self.scenario
        if len(self.assignment) != sc.n_parties * sc.n_settings:
            raise DimensionMismatch(
                f"assignment length {len(self.assignment)} != N*M "
                f"{sc.n_parties * sc.n_settings}"
            )
        if any(not (0 <= a < sc.n_outcomes) for a in self.assignment):
            raise ValueError("assignment entry out of outcome range")

    def outcome(self, party: int, setting: int) -> int:
        return self.assignment[party * self.scenario.n_settings + setting]


@dataclass(frozen=True)
class Behavior:
    """A point of the polytope: exact-rational vector in a fixed representation."""

    scenario: Scenario
    representation: Representation
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        expected = self.representation.length(self.scenario)
        if len(self.entries) != expected:
            raise DimensionMismatch(
                f"behavior has {len(self.entries)} entries, expected {expected}"
            )


def enumerate_strategies(scenario: Scenario, cap: int = DEFAULT_STRATEGY_CAP):
    """Iterate all deterministic strategies in lexicographic assignment order.

    Raises CapExceeded eagerly when K**(N*M) > cap.
    """
    count = scenario.strategy_count()
    if count > cap:
        raise CapExceeded(
            f"{count} strategies exceed the cap of {cap}; "
            "the scenario is too large to materialize"
        )
    cells = scenario.n_parties * scenario.n_settings

    def _iter():
        for assignment in itertools.product(range(scenario.n_outcomes), repeat=cells):
            yield DeterministicStrategy(scenario, assignment)

    return _iter()


def strategy_to_behavior(strategy: DeterministicStrategy,
                         rep: Representation) -> Behavior:
    """Map a strategy to its point in the requested representation."""
    sc = strategy.scenario
    rep.validate(sc)
    if rep is Representation.FULL_CORRELATION:
        entries = []
        for settings in sc.settings_tuples():
            value = 1
            for party, s in enumerate(settings):
                value *= _PM_VALUES[strategy.outcome(party, s)]
            entries.append(Fraction(value))
        return Behavior(sc, rep, tuple(entries))
    entries = [Fraction(0)] * rep.length(sc)
    for settings in sc.settings_tuples():
        outcomes = tuple(strategy.outcome(party, s)
                         for party, s in enumerate(settings))
        entries[sc.prob_index(settings, outcomes)] = Fraction(1)
    return Behavior(sc, rep, tuple(entries))


def enumerate_vertices(scenario: Scenario, rep: Representation,
                       cap: int = DEFAULT_STRATEGY_CAP) -> list[Behavior]:
    """Distinct vertex points of the local polytope, sorted by entries.

    Distinct strategies can collide (in full correlation, flipping all
    outcomes of an even number of parties fixes every product), so the list
    is deduplicated; sorting makes the order independent of iteration order.
    """
    rep.validate(scenario)
    seen = {strategy_to_behavior(s, rep).entries
            for s in enumerate_strategies(scenario, cap)}
    return [Behavior(scenario, rep, entries) for entries in sorted(seen)]
