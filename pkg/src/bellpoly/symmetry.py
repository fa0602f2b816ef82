"""Relabeling symmetries of a Bell scenario and inequality classification.

The group is generated by permuting parties, permuting each party's
settings, and permuting each observable's outcomes; its order is
N! * (M!)^N * (K!)^(N*M).  On full-correlation vectors an outcome swap acts
as a sign flip of the affected observable, so group elements whose flips
cancel in every product act trivially there; orbits are therefore computed
from distinct images, which quotients those kernel elements automatically.

Inequalities over a non-full-dimensional polytope (full probability) are
compared modulo the affine hull: every image is reduced onto the hull's
pivot coordinates before normalization, which is what makes "the same facet
written differently" land in the same class.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import CapExceeded, RepresentationMismatch
from .geometry import affine_hull
from .inequality import Inequality
from .scenario import Behavior, Representation, Scenario, enumerate_vertices

DEFAULT_GROUP_CAP = 10**7


@dataclass(frozen=True)
class Relabeling:
    """party_perm maps party -> new party; setting_perms[i] maps party i's
    settings; outcome_perms[i][x] maps outcomes of observable (i, x)."""

    scenario: Scenario
    party_perm: tuple[int, ...]
    setting_perms: tuple[tuple[int, ...], ...]
    outcome_perms: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        sc = self.scenario
        if (sorted(self.party_perm) != list(range(sc.n_parties))
                or len(self.setting_perms) != sc.n_parties
                or len(self.outcome_perms) != sc.n_parties):
            raise ValueError("malformed relabeling")
        for sp in self.setting_perms:
            if sorted(sp) != list(range(sc.n_settings)):
                raise ValueError("setting_perms entry is not a permutation")
        for per_party in self.outcome_perms:
            if len(per_party) != sc.n_settings:
                raise ValueError("outcome_perms shape mismatch")
            for op in per_party:
                if sorted(op) != list(range(sc.n_outcomes)):
                    raise ValueError("outcome_perms entry is not a permutation")

    @classmethod
    def identity(cls, scenario: Scenario) -> "Relabeling":
        n, m, k = scenario.n_parties, scenario.n_settings, scenario.n_outcomes
        ident_m = tuple(range(m))
        ident_k = tuple(range(k))
        return cls(scenario, tuple(range(n)), (ident_m,) * n,
                   ((ident_k,) * m,) * n)

    def compose(self, other: "Relabeling") -> "Relabeling":
        """self after other: apply(self.compose(other), x) ==
        apply(self, apply(other, x))."""
        if self.scenario != other.scenario:
            raise ValueError("relabelings over different scenarios")
        sc = self.scenario
        party = tuple(self.party_perm[other.party_perm[i]]
                      for i in range(sc.n_parties))
        settings = tuple(
            tuple(self.setting_perms[other.party_perm[i]]
                  [other.setting_perms[i][x]]
                  for x in range(sc.n_settings))
            for i in range(sc.n_parties))
        outcomes = tuple(
            tuple(
                tuple(self.outcome_perms[other.party_perm[i]]
                      [other.setting_perms[i][x]]
                      [other.outcome_perms[i][x][a]]
                      for a in range(sc.n_outcomes))
                for x in range(sc.n_settings))
            for i in range(sc.n_parties))
        return Relabeling(sc, party, settings, outcomes)

    def inverse(self) -> "Relabeling":
        sc = self.scenario
        party = _invert_perm(self.party_perm)
        settings = [None] * sc.n_parties
        outcomes = [None] * sc.n_parties
        for i in range(sc.n_parties):
            j = self.party_perm[i]
            settings[j] = _invert_perm(self.setting_perms[i])
            per_setting = [None] * sc.n_settings
            for x in range(sc.n_settings):
                per_setting[self.setting_perms[i][x]] = _invert_perm(
                    self.outcome_perms[i][x])
            outcomes[j] = tuple(per_setting)
        return Relabeling(sc, party, tuple(settings), tuple(outcomes))


def _invert_perm(perm):
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(inv)


def group_order(scenario: Scenario) -> int:
    n, m, k = scenario.n_parties, scenario.n_settings, scenario.n_outcomes
    return (factorial(n) * factorial(m) ** n * factorial(k) ** (n * m))


def relabeling_group(scenario: Scenario, cap: int = DEFAULT_GROUP_CAP):
    """Iterate the full relabeling group in a fixed deterministic order."""
    order = group_order(scenario)
    if order > cap:
        raise CapExceeded(f"group order {order} exceeds the cap of {cap}")
    n, m, k = scenario.n_parties, scenario.n_settings, scenario.n_outcomes
    setting_choices = list(itertools.permutations(range(m)))
    outcome_choices = list(itertools.permutations(range(k)))

    def _iter():
        for party in itertools.permutations(range(n)):
            for settings in itertools.product(setting_choices, repeat=n):
                for flat_outcomes in itertools.product(outcome_choices,
                                                       repeat=n * m):
                    outcomes = tuple(
                        tuple(flat_outcomes[i * m + x] for x in range(m))
                        for i in range(n))
                    yield Relabeling(scenario, party, settings, outcomes)

    return _iter()


# ---------------------------------------------------------------------------
# group action on index space
# ---------------------------------------------------------------------------

def _index_action(g: Relabeling, rep: Representation):
    """Entry permutation (and signs, for correlation) realizing g on vectors:
    new[perm[old_index]] = sign[old_index] * old[old_index]."""
    sc = g.scenario
    rep.validate(sc)
    n, m, k = sc.n_parties, sc.n_settings, sc.n_outcomes
    if rep is Representation.FULL_CORRELATION:
        perm = [0] * (m ** n)
        signs = [1] * (m ** n)
        for settings in sc.settings_tuples():
            new_settings = [0] * n
            sign = 1
            for i, x in enumerate(settings):
                new_settings[g.party_perm[i]] = g.setting_perms[i][x]
                if g.outcome_perms[i][x][0] == 1:
                    sign = -sign
            old = sc.settings_index(settings)
            perm[old] = sc.settings_index(new_settings)
            signs[old] = sign
        return tuple(perm), tuple(signs)
    size = (m * k) ** n
    perm = [0] * size
    for settings in sc.settings_tuples():
        for outcomes in sc.outcomes_tuples():
            new_settings = [0] * n
            new_outcomes = [0] * n
            for i, (x, a) in enumerate(zip(settings, outcomes)):
                new_settings[g.party_perm[i]] = g.setting_perms[i][x]
                new_outcomes[g.party_perm[i]] = g.outcome_perms[i][x][a]
            old = sc.prob_index(settings, outcomes)
            perm[old] = sc.prob_index(new_settings, new_outcomes)
    return tuple(perm), None


def _apply_entries(entries, perm, signs):
    out = [None] * len(entries)
    if signs is None:
        for old, new in enumerate(perm):
            out[new] = entries[old]
    else:
        for old, new in enumerate(perm):
            out[new] = signs[old] * entries[old]
    return tuple(out)


def apply(g: Relabeling, x):
    """Group action on a Behavior or an Inequality (same kind returned)."""
    if isinstance(x, Behavior):
        if x.scenario != g.scenario:
            raise RepresentationMismatch("relabeling/behavior scenario mismatch")
        perm, signs = _index_action(g, x.representation)
        return Behavior(x.scenario, x.representation,
                        _apply_entries(x.entries, perm, signs))
    if isinstance(x, Inequality):
        if x.scenario != g.scenario:
            raise RepresentationMismatch("relabeling/inequality scenario mismatch")
        perm, signs = _index_action(g, x.representation)
        return Inequality(x.scenario, x.representation,
                          _apply_entries(x.coefficients, perm, signs), x.bound)
    raise TypeError(f"cannot apply a relabeling to {type(x).__name__}")


# ---------------------------------------------------------------------------
# canonical forms and classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InequalityClass:
    canonical: Inequality
    orbit_size: int
    members_seen: int


@lru_cache(maxsize=32)
def _hull_for(scenario: Scenario, rep: Representation):
    hull = affine_hull(enumerate_vertices(scenario, rep))
    full = hull.dim == rep.length(scenario)
    return hull, full


@lru_cache(maxsize=32)
def _actions_for(scenario: Scenario, rep: Representation, cap: int):
    actions = []
    seen = set()
    for g in relabeling_group(scenario, cap):
        action = _index_action(g, rep)
        if action not in seen:
            seen.add(action)
            actions.append(action)
    return tuple(actions)


def _reduced_normalized(ineq: Inequality) -> Inequality:
    hull, full = _hull_for(ineq.scenario, ineq.representation)
    if full:
        return ineq.normalize()
    coeffs, bound = hull.reduce(ineq.coefficients, ineq.bound)
    return Inequality(ineq.scenario, ineq.representation, coeffs,
                      bound).normalize()


def inequality_orbit(ineq: Inequality,
                     cap: int = DEFAULT_GROUP_CAP) -> list[Inequality]:
    """Distinct reduced-normalized images of ineq under the relabeling group,
    sorted; the first element is the canonical form."""
    actions = _actions_for(ineq.scenario, ineq.representation, cap)
    base = _reduced_normalized(ineq)
    images = {}
    for perm, signs in actions:
        moved = Inequality(base.scenario, base.representation,
                           _apply_entries(base.coefficients, perm, signs),
                           base.bound)
        reduced = _reduced_normalized(moved)
        images[reduced.key()] = reduced
    return [images[k] for k in sorted(images)]


def canonical_form(ineq: Inequality, cap: int = DEFAULT_GROUP_CAP) -> Inequality:
    """Lexicographically least normalized inequality over the orbit."""
    return inequality_orbit(ineq, cap)[0]


def classify(facets, cap: int = DEFAULT_GROUP_CAP) -> list[InequalityClass]:
    """Partition inequalities into relabeling-equivalence classes.

    Orbits are enumerated once per class; class order is deterministic
    (lexicographic canonical form) and members_seen totals the input length.
    """
    key_to_class = {}
    counts = {}
    orbits = {}
    for ineq in facets:
        reduced = _reduced_normalized(ineq)
        key = reduced.key()
        if key not in key_to_class:
            orbit = inequality_orbit(reduced, cap)
            canonical_key = orbit[0].key()
            if canonical_key not in orbits:
                orbits[canonical_key] = orbit
                counts[canonical_key] = 0
            for member in orbit:
                key_to_class[member.key()] = canonical_key
        counts[key_to_class[key]] += 1
    classes = [
        InequalityClass(orbits[ck][0], len(orbits[ck]), counts[ck])
        for ck in sorted(orbits)
    ]
    return classes
