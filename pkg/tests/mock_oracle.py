from typing import Mapping

from equm.hyperreal import ZERO, Hyperreal
from equm.mixture import Act, Lottery
from equm.preference import PreferenceVerdict, expected_utility
from equm.subjective import ActPreferenceOracle


class InvertedConstantsOracle(ActPreferenceOracle):
    """Reverses every verdict between two constant acts."""

    def compare(self, a: Act, b: Act) -> PreferenceVerdict:
        verdict = super().compare(a, b)
        if _is_constant(a) and _is_constant(b):
            return verdict.reversed()
        return verdict


class NonstandardWeightOracle(ActPreferenceOracle):
    """Evaluates acts with the given, possibly infinitesimal, state weights."""

    def __init__(self, model, measure, space, weights: Mapping[str, Hyperreal]):
        super().__init__(model, measure, space)
        self.weights = dict(weights)

    def act_utility(self, a: Act) -> Hyperreal:
        total = ZERO
        for state in self.states:
            total = total + self.weights[state] * expected_utility(self.model, a[state])
        return total


class BrokenComparator:
    """Claims every pair of distinct lotteries is strictly ordered both ways."""

    def __call__(self, p: Lottery, q: Lottery) -> PreferenceVerdict:
        if p == q:
            return PreferenceVerdict.INDIFFERENT
        return PreferenceVerdict.PREFERS


def _is_constant(a: Act) -> bool:
    return len(set(lottery for _, lottery in a.items())) == 1
