"""Canonical EQUM representation of a finitely generated lottery space.

Generators are partitioned into classes none of whose members overrides
another. Classes are ordered so that earlier classes override later ones, and
class ``i`` is represented by ``e**i`` times a standard linear utility.

Positive values compare qualitatively by their order, then by their leading
coefficient. Generators of a different order than the worst one therefore form
one class per order. The worst order splits in two: the members indifferent
to the minimum, which every other member of that order overrides, and the
rest. Within that upper part the comparison of mixtures only sees how far each
member sits above the minimum, so its utilities are measured from the floor.
"""
from dataclasses import dataclass, field
from fractions import Fraction
import functools
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from .exceptions import PreconditionViolated
from .hyperreal import (
    ZERO,
    Hyperreal,
    order_of,
    ratio_standard_part,
    scale,
)
from .mixture import LotterySpace, Weight, format_lottery, weight_vectors
from .preference import (
    PreferenceVerdict,
    UtilityModel,
    expected_utility,
    minimal_utility,
    overrides,
    verdict_of,
)

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class CanonicalClass:
    index: int
    members: Tuple[int, ...]
    standard_utilities: Dict[int, Fraction] = field(hash=False)

    def __post_init__(self):
        if set(self.members) != set(self.standard_utilities):
            raise ValueError("standard utilities must cover exactly the members")
        if any(value <= 0 for value in self.standard_utilities.values()):
            raise ValueError("standard utilities must be positive")


@dataclass(frozen=True)
class CanonicalModel:
    """Utility ``e**i * u_i(g)`` for every generator ``g`` of class ``i``."""

    classes: Tuple[CanonicalClass, ...]

    def class_of(self, generator: int) -> CanonicalClass:
        for canonical_class in self.classes:
            if generator in canonical_class.members:
                return canonical_class
        raise KeyError(generator)

    def utility_of(self, generator: int) -> Hyperreal:
        canonical_class = self.class_of(generator)
        return Hyperreal.monomial(
            canonical_class.standard_utilities[generator], canonical_class.index
        )

    def utility_of_weights(self, weights: Sequence[Weight]) -> Hyperreal:
        total = ZERO
        for generator, weight in enumerate(weights):
            if weight:
                total = total + scale(self.utility_of(generator), weight)
        return total

    def as_utility_model(self, space: LotterySpace) -> UtilityModel:
        """Outcome utilities, for spaces generated by point masses."""
        values = {}
        for generator, lottery in enumerate(space.generators):
            if len(lottery) != 1:
                raise PreconditionViolated(
                    reason=f"generator {format_lottery(lottery)} is not a point mass"
                )
            (outcome,) = lottery.support
            values[outcome] = self.utility_of(generator)
        return UtilityModel(values)


@dataclass(frozen=True)
class EquivalenceReport:
    equivalent: bool
    pairs_checked: int
    discrepancy: Optional[Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]] = None
    source_verdict: Optional[PreferenceVerdict] = None
    canonical_verdict: Optional[PreferenceVerdict] = None


def _generator_utilities(m: UtilityModel, space: LotterySpace) -> List[Hyperreal]:
    m.require_positive(space.outcomes)
    return [expected_utility(m, g) for g in space.generators]


def asymp_classes(m: UtilityModel, space: LotterySpace) -> List[List[int]]:
    """Generator indices grouped into classes, overriding classes first.

    Members keep input order inside a class.
    """
    values = _generator_utilities(m, space)
    generators = space.generators

    def asymptotic(i: int, j: int) -> bool:
        return not overrides(m, space, generators[i], generators[j]) and not overrides(
            m, space, generators[j], generators[i]
        )

    classes: List[List[int]] = []
    for index in range(len(generators)):
        for group in classes:
            if asymptotic(group[0], index):
                group.append(index)
                break
        else:
            classes.append([index])

    def by_override(left: List[int], right: List[int]) -> int:
        if overrides(m, space, generators[left[0]], generators[right[0]]):
            return -1
        if overrides(m, space, generators[right[0]], generators[left[0]]):
            return 1
        return 0

    classes.sort(key=functools.cmp_to_key(by_override))
    _LOGGER.debug(
        "Partitioned %d generators into %d classes: %s",
        len(values),
        len(classes),
        classes,
    )
    return classes


def canonicalize(m: UtilityModel, space: LotterySpace) -> CanonicalModel:
    """Build the canonical model.

    Each class is normalized by its first member. The class directly above
    the minimal one, when both share an order, is measured from the first
    minimal member instead of from zero.
    """
    values = _generator_utilities(m, space)
    partition = asymp_classes(m, space)
    floor = minimal_utility(m, space)
    minimal = partition[-1]
    floor_reference = minimal[0]
    canonical: List[CanonicalClass] = []
    for index, members in enumerate(partition):
        reference = values[members[0]]
        if members is not minimal and order_of(reference) == order_of(floor):
            base = values[floor_reference]
            utilities = {
                g: ratio_standard_part(values[g] - base, reference - base)
                for g in members
            }
        else:
            utilities = {g: ratio_standard_part(values[g], reference) for g in members}
        canonical.append(CanonicalClass(index, tuple(members), utilities))
    _LOGGER.debug("Canonical model: %s", canonical)
    return CanonicalModel(tuple(canonical))


def verify_equivalence(
    m: UtilityModel,
    c: CanonicalModel,
    space: LotterySpace,
    denominator: int = 4,
) -> EquivalenceReport:
    """Compare both models on every pair of mixtures with weights ``k/denominator``."""
    vectors = list(weight_vectors(len(space.generators), denominator))
    source = [expected_utility(m, space.mixture(w)) for w in vectors]
    target = [c.utility_of_weights(w) for w in vectors]
    checked = 0
    for i, left in enumerate(vectors):
        for j in range(i + 1, len(vectors)):
            checked += 1
            expected = verdict_of(source[i], source[j])
            found = verdict_of(target[i], target[j])
            if expected is not found:
                _LOGGER.debug("Discrepancy between %s and %s", left, vectors[j])
                return EquivalenceReport(
                    False, checked, (left, vectors[j]), expected, found
                )
    return EquivalenceReport(True, checked)

