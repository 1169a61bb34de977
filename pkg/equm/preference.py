"""Expected Qualitative Utility Maximization over lotteries.

``p`` is preferred to ``q`` when the expected utility of ``p`` is qualitatively
larger than that of ``q``. Utilities may be nonstandard, probabilities are not.
"""
from enum import Enum
from fractions import Fraction
import logging
from typing import TYPE_CHECKING, Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from .exceptions import (
    NonPositiveModel,
    PreconditionViolated,
    StateMismatch,
    UnknownOutcome,
    UnsupportedSupport,
)
from .hyperreal import (
    ZERO,
    Hyperreal,
    Ordering,
    QualOrdering,
    classify_ratio,
    compare_total,
    epsilon_power,
    format_literal,
    negate,
    qual_compare,
    scale,
    sign,
)
from .mixture import Act, Lottery, LotterySpace, Outcome

if TYPE_CHECKING:
    from .subjective import ProbabilityMeasure

_LOGGER = logging.getLogger(__name__)


class PreferenceVerdict(Enum):
    PREFERS = "Prefers"
    INDIFFERENT = "Indifferent"
    DISPREFERRED = "Dispreferred"

    def reversed(self) -> "PreferenceVerdict":
        if self is PreferenceVerdict.PREFERS:
            return PreferenceVerdict.DISPREFERRED
        if self is PreferenceVerdict.DISPREFERRED:
            return PreferenceVerdict.PREFERS
        return self


_VERDICTS = {
    QualOrdering.QGT: PreferenceVerdict.PREFERS,
    QualOrdering.QEQ: PreferenceVerdict.INDIFFERENT,
    QualOrdering.QLT: PreferenceVerdict.DISPREFERRED,
}


def verdict_of(x: Hyperreal, y: Hyperreal) -> PreferenceVerdict:
    return _VERDICTS[qual_compare(x, y)]


class UtilityModel:
    """Utility of every outcome, as a nonstandard number."""

    def __init__(self, values: Mapping[Outcome, Union[Hyperreal, int, Fraction]]):
        self._values: Dict[Outcome, Hyperreal] = {
            outcome: Hyperreal.coerce(value) for outcome, value in values.items()
        }

    @property
    def outcomes(self) -> Tuple[Outcome, ...]:
        return tuple(self._values)

    def utility(self, outcome: Outcome) -> Hyperreal:
        try:
            return self._values[outcome]
        except KeyError:
            raise UnknownOutcome(outcome=outcome) from None

    def items(self):
        return self._values.items()

    def is_positive(self, outcomes: Iterable[Outcome] = None) -> bool:
        outcomes = self.outcomes if outcomes is None else outcomes
        return all(sign(self.utility(o)) > 0 for o in outcomes)

    def require_positive(self, outcomes: Iterable[Outcome] = None):
        outcomes = self.outcomes if outcomes is None else outcomes
        for outcome in outcomes:
            value = self.utility(outcome)
            if sign(value) <= 0:
                raise NonPositiveModel(outcome=outcome, value=format_literal(value))

    def scaled(self, factor: Union[Hyperreal, int, Fraction]) -> "UtilityModel":
        factor = Hyperreal.coerce(factor)
        return UtilityModel({o: v * factor for o, v in self.items()})

    def shifted(self, offset: Union[Hyperreal, int, Fraction]) -> "UtilityModel":
        offset = Hyperreal.coerce(offset)
        return UtilityModel({o: v + offset for o, v in self.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, UtilityModel):
            return NotImplemented
        return self._values == other._values

    def __repr__(self) -> str:
        inner = ", ".join(f"{o}: {format_literal(v)}" for o, v in self.items())
        return f"UtilityModel({{{inner}}})"


def expected_utility(m: UtilityModel, p: Lottery) -> Hyperreal:
    total = ZERO
    for outcome, probability in p.items():
        total = total + scale(m.utility(outcome), probability)
    return total


def compare_lotteries(m: UtilityModel, p: Lottery, q: Lottery) -> PreferenceVerdict:
    return verdict_of(expected_utility(m, p), expected_utility(m, q))


def prefers(m: UtilityModel, p: Lottery, q: Lottery) -> bool:
    return compare_lotteries(m, p, q) is PreferenceVerdict.PREFERS


def minimal_utility(m: UtilityModel, space: LotterySpace) -> Hyperreal:
    """Least expected utility over the space.

    Expected utility is linear, so the minimum over all mixtures is attained
    at a generator.
    """
    return min(expected_utility(m, g) for g in space.generators)


def overrides(m: UtilityModel, space: LotterySpace, p: Lottery, q: Lottery) -> bool:
    """Decide ``p >> q``: the ratio of utilities is infinite, or p > q with q minimal.

    Every mixture has expected utility at least the generator minimum in the
    total order, and a qualitative win over a larger value is a win over a
    smaller one, so comparing against the generator minimum decides
    minimality over the whole space.
    """
    m.require_positive(space.outcomes)
    up, uq = expected_utility(m, p), expected_utility(m, q)
    if classify_ratio(up, uq).is_infinite:
        return True
    if qual_compare(up, uq) is not QualOrdering.QGT:
        return False
    return qual_compare(uq, minimal_utility(m, space)) is not QualOrdering.QGT


def rank_lotteries(
    m: UtilityModel, lotteries: Sequence[Lottery]
) -> List[List[int]]:
    """Indices of ``lotteries`` grouped by indifference, best group first.

    Indifference classes are intervals of the total order, so a stable sort
    followed by a sweep finds them.
    """
    values = [expected_utility(m, p) for p in lotteries]
    order = sorted(
        range(len(lotteries)),
        key=lambda i: _TotalKey(values[i]),
        reverse=True,
    )
    groups: List[List[int]] = []
    for index in order:
        if groups and qual_compare(values[groups[-1][0]], values[index]) is QualOrdering.QEQ:
            groups[-1].append(index)
        else:
            groups.append([index])
    _LOGGER.debug("Ranked %d lotteries into %d groups", len(lotteries), len(groups))
    return [sorted(group) for group in groups]


class _TotalKey:
    __slots__ = ("value",)

    def __init__(self, value: Hyperreal):
        self.value = value

    def __lt__(self, other: "_TotalKey") -> bool:
        return compare_total(self.value, other.value) is Ordering.LT


def act_utility(m: UtilityModel, measure: "ProbabilityMeasure", a: Act) -> Hyperreal:
    """Subjective expected utility of an act."""
    if set(measure.states) != set(a.states):
        raise StateMismatch(left=",".join(measure.states), right=",".join(a.states))
    total = ZERO
    for state, weight in measure.items():
        if weight:
            total = total + scale(expected_utility(m, a[state]), weight)
    return total


def maximin_model(outcomes: Sequence[Outcome]) -> UtilityModel:
    """Maximin as EQUM: ``u(x_i) = -e**i`` for outcomes listed worst first.

    The exponent runs with the index so that ``x_i < x_j`` iff ``i < j``;
    with ``-e**(n-i-1)`` the better outcome would dominate instead.
    """
    if not outcomes:
        raise PreconditionViolated(reason="the maximin model needs at least one outcome")
    return UtilityModel(
        {outcome: negate(epsilon_power(i)) for i, outcome in enumerate(outcomes)}
    )


def maximin_oracle(
    p: Lottery, q: Lottery, order: Sequence[Outcome]
) -> PreferenceVerdict:
    """Compare worst outcomes by rank, then the probability of the worst outcome."""
    for lottery in (p, q):
        if len(lottery) > 2:
            raise UnsupportedSupport(size=len(lottery))
    rank = {outcome: i for i, outcome in enumerate(order)}
    worst_p = min(p.support, key=rank.__getitem__)
    worst_q = min(q.support, key=rank.__getitem__)
    if rank[worst_p] != rank[worst_q]:
        if rank[worst_p] > rank[worst_q]:
            return PreferenceVerdict.PREFERS
        return PreferenceVerdict.DISPREFERRED
    chance_p, chance_q = p.probability(worst_p), q.probability(worst_q)
    if chance_p < chance_q:
        return PreferenceVerdict.PREFERS
    if chance_p > chance_q:
        return PreferenceVerdict.DISPREFERRED
    return PreferenceVerdict.INDIFFERENT
