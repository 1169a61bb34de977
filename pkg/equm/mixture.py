"""Lotteries over a finite outcome set, acts over a finite state set, and their mixtures."""
from fractions import Fraction
from itertools import product
from numbers import Rational as _RationalABC
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple, Union

from .exceptions import (
    EmptyStateSet,
    InvalidLottery,
    StateMismatch,
    UnknownState,
    WeightOutOfRange,
)
from .hyperreal import format_rational

Outcome = str
State = str
Weight = Union[int, Fraction]


def as_weight(value: Weight) -> Fraction:
    """Standard mixture weight in [0, 1]; floats and nonstandard values are refused."""
    if isinstance(value, bool) or not isinstance(value, _RationalABC):
        raise TypeError(
            f"mixture weights are exact standard rationals, got {type(value).__name__}"
        )
    weight = Fraction(value)
    if not 0 <= weight <= 1:
        raise WeightOutOfRange(weight=weight)
    return weight


class Lottery:
    """Finite-support probability distribution with exact rational probabilities."""

    __slots__ = ("_probs", "_key")

    def __init__(self, probs: Union[Mapping[Outcome, Weight], Iterable[Tuple[Outcome, Weight]]]):
        items = probs.items() if isinstance(probs, Mapping) else probs
        merged: Dict[Outcome, Fraction] = {}
        for outcome, probability in items:
            if not isinstance(outcome, str) or not outcome:
                raise InvalidLottery(reason=f"bad outcome id {outcome!r}")
            if isinstance(probability, bool) or not isinstance(probability, _RationalABC):
                raise InvalidLottery(reason=f"probability of {outcome} is not an exact rational")
            probability = Fraction(probability)
            if probability < 0:
                raise InvalidLottery(reason=f"negative probability for {outcome}")
            merged[outcome] = merged.get(outcome, Fraction(0)) + probability
        total = sum(merged.values(), Fraction(0))
        if total != 1:
            raise InvalidLottery(reason=f"probabilities sum to {total}, not 1")
        self._probs = {outcome: p for outcome, p in merged.items() if p != 0}
        self._key = frozenset(self._probs.items())

    @classmethod
    def point(cls, outcome: Outcome) -> "Lottery":
        return cls({outcome: Fraction(1)})

    @property
    def support(self) -> Tuple[Outcome, ...]:
        return tuple(self._probs)

    def probability(self, outcome: Outcome) -> Fraction:
        return self._probs.get(outcome, Fraction(0))

    def items(self):
        return self._probs.items()

    def __len__(self) -> int:
        return len(self._probs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Lottery):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"Lottery({format_lottery(self)!r})"


def format_lottery(lottery: Lottery, order: Sequence[Outcome] = ()) -> str:
    """``1/2 a + 1/2 b`` with outcomes in ``order`` first, then insertion order."""
    ranked = [o for o in order if lottery.probability(o)]
    ranked += [o for o in lottery.support if o not in ranked]
    return " + ".join(
        f"{format_rational(lottery.probability(o))} {o}" for o in ranked
    )


def mix(weight: Weight, p: Lottery, q: Lottery) -> Lottery:
    """Outcome-wise ``weight * p + (1 - weight) * q``."""
    weight = as_weight(weight)
    if weight == 1:
        return p
    if weight == 0:
        return q
    probs: Dict[Outcome, Fraction] = {}
    for outcome, probability in p.items():
        probs[outcome] = weight * probability
    for outcome, probability in q.items():
        probs[outcome] = probs.get(outcome, Fraction(0)) + (1 - weight) * probability
    return Lottery(probs)


def mix_many(weights: Sequence[Weight], lotteries: Sequence[Lottery]) -> Lottery:
    """Convex combination of several lotteries; weights must sum to 1."""
    if len(weights) != len(lotteries):
        raise InvalidLottery(reason="one weight per lottery is required")
    probs: Dict[Outcome, Fraction] = {}
    for weight, lottery in zip(weights, lotteries):
        weight = as_weight(weight)
        for outcome, probability in lottery.items():
            probs[outcome] = probs.get(outcome, Fraction(0)) + weight * probability
    return Lottery(probs)


class LotterySpace:
    """Mixture set generated by finitely many lotteries over a finite outcome set."""

    def __init__(self, outcomes: Sequence[Outcome], generators: Sequence[Lottery]):
        self.outcomes: Tuple[Outcome, ...] = tuple(outcomes)
        if len(set(self.outcomes)) != len(self.outcomes):
            raise InvalidLottery(reason="outcome ids must be unique")
        self.generators: Tuple[Lottery, ...] = tuple(generators)
        if not self.generators:
            raise InvalidLottery(reason="a lottery space needs at least one generator")
        for generator in self.generators:
            self.require_member(generator)

    @classmethod
    def of_outcomes(cls, outcomes: Sequence[Outcome]) -> "LotterySpace":
        """Space generated by the point masses of ``outcomes``."""
        return cls(outcomes, [Lottery.point(o) for o in outcomes])

    def require_member(self, lottery: Lottery):
        for outcome in lottery.support:
            if outcome not in self.outcomes:
                raise InvalidLottery(reason=f"outcome {outcome} is outside the space")

    def mixture(self, weights: Sequence[Weight]) -> Lottery:
        """The lottery with the given weights on the generators."""
        return mix_many(weights, self.generators)

    def __repr__(self) -> str:
        return f"LotterySpace(outcomes={self.outcomes!r}, generators={len(self.generators)})"


def grid_weights(k: int) -> List[Fraction]:
    """The interior grid {1/k, ..., (k-1)/k}."""
    return [Fraction(i, k) for i in range(1, k)]


def weight_vectors(count: int, denominator: int) -> Iterator[Tuple[Fraction, ...]]:
    """Every weight vector of length ``count`` with entries ``i/denominator`` summing to 1."""

    def compositions(parts: int, total: int) -> Iterator[Tuple[int, ...]]:
        if parts == 1:
            yield (total,)
            return
        for first in range(total, -1, -1):
            for rest in compositions(parts - 1, total - first):
                yield (first,) + rest

    for numerators in compositions(count, denominator):
        yield tuple(Fraction(n, denominator) for n in numerators)


class Act:
    """Map from every declared state to a lottery."""

    __slots__ = ("_assignment", "_key")

    def __init__(self, assignment: Union[Mapping[State, Lottery], Iterable[Tuple[State, Lottery]]]):
        items = assignment.items() if isinstance(assignment, Mapping) else assignment
        self._assignment: Dict[State, Lottery] = {}
        for state, lottery in items:
            if not isinstance(lottery, Lottery):
                raise TypeError(f"act value at {state} is not a Lottery")
            self._assignment[state] = lottery
        if not self._assignment:
            raise EmptyStateSet()
        self._key = frozenset(self._assignment.items())

    @property
    def states(self) -> Tuple[State, ...]:
        return tuple(self._assignment)

    def __getitem__(self, state: State) -> Lottery:
        try:
            return self._assignment[state]
        except KeyError:
            raise UnknownState(state=state) from None

    def items(self):
        return self._assignment.items()

    def replace(self, state: State, lottery: Lottery) -> "Act":
        if state not in self._assignment:
            raise UnknownState(state=state)
        return Act((s, lottery if s == state else l) for s, l in self.items())

    def differing_states(self, other: "Act") -> List[State]:
        require_same_states(self, other)
        return [s for s in self.states if self[s] != other[s]]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Act):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        inner = ", ".join(f"{s}: {format_lottery(l)}" for s, l in self.items())
        return f"Act({{{inner}}})"


def require_same_states(a: Act, b: Act):
    if set(a.states) != set(b.states):
        raise StateMismatch(left=",".join(a.states), right=",".join(b.states))


def constant_act(states: Iterable[State], p: Lottery) -> Act:
    states = list(states)
    if not states:
        raise EmptyStateSet()
    return Act((state, p) for state in states)


def mix_act(weight: Weight, a: Act, b: Act) -> Act:
    """State-wise mixture ``[weight a + (1 - weight) b](s)``."""
    weight = as_weight(weight)
    require_same_states(a, b)
    return Act((state, mix(weight, a[state], b[state])) for state in a.states)


def all_acts(states: Sequence[State], lotteries: Sequence[Lottery]) -> Iterator[Act]:
    """Every act taking values in ``lotteries``."""
    for values in product(lotteries, repeat=len(states)):
        yield Act(zip(states, values))
