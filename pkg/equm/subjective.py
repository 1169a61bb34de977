"""Acts over finite states: null states, the act postulates, and recovery of the subjective measure."""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
import logging
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .const import DEFAULT_PERTURBATION, POSTULATE_A4, POSTULATE_A5
from .exceptions import (
    EmptyStateSet,
    ExtractionFailure,
    InvalidMeasure,
    TrivialRelation,
    UnknownState,
)
from .hyperreal import (
    Hyperreal,
    QualOrdering,
    classify_ratio,
    format_rational,
    qual_compare,
    ratio_standard_part,
)
from .mixture import (
    Act,
    Lottery,
    LotterySpace,
    State,
    Weight,
    all_acts,
    constant_act,
    mix_act,
)
from .postulates import Method, PostulateReport, Status
from .preference import (
    PreferenceVerdict,
    UtilityModel,
    act_utility,
    compare_lotteries,
    verdict_of,
)

_LOGGER = logging.getLogger(__name__)

ActPair = Tuple[Act, Act, State]


class ProbabilityMeasure:
    """Exact rational weights on a finite state set, summing to 1."""

    def __init__(self, weights: Union[Mapping[State, Weight], Iterable[Tuple[State, Weight]]]):
        items = weights.items() if isinstance(weights, Mapping) else weights
        self._weights: Dict[State, Fraction] = {}
        for state, weight in items:
            if state in self._weights:
                raise InvalidMeasure(reason=f"state {state} listed twice")
            if isinstance(weight, bool) or not isinstance(weight, (int, Fraction)):
                raise InvalidMeasure(reason=f"weight of {state} is not an exact rational")
            weight = Fraction(weight)
            if weight < 0:
                raise InvalidMeasure(reason=f"negative weight for {state}")
            self._weights[state] = weight
        if not self._weights:
            raise EmptyStateSet()
        total = sum(self._weights.values(), Fraction(0))
        if total != 1:
            raise InvalidMeasure(reason=f"weights sum to {format_rational(total)}, not 1")

    @property
    def states(self) -> Tuple[State, ...]:
        return tuple(self._weights)

    def weight(self, state: State) -> Fraction:
        try:
            return self._weights[state]
        except KeyError:
            raise UnknownState(state=state) from None

    def items(self):
        return self._weights.items()

    def null_states(self) -> List[State]:
        return [state for state, weight in self.items() if weight == 0]

    def format_lines(self) -> List[str]:
        return [f"{state} = {format_rational(weight)}" for state, weight in self.items()]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProbabilityMeasure):
            return NotImplemented
        return self._weights == other._weights

    def __repr__(self) -> str:
        return f"ProbabilityMeasure({self._weights!r})"


@dataclass
class ActPreferenceOracle:
    """Preference on acts backed by a utility model and a probability measure."""

    model: UtilityModel
    measure: ProbabilityMeasure
    space: LotterySpace

    @property
    def states(self) -> Tuple[State, ...]:
        return self.measure.states

    def act_utility(self, a: Act) -> Hyperreal:
        return act_utility(self.model, self.measure, a)

    def compare(self, a: Act, b: Act) -> PreferenceVerdict:
        return verdict_of(self.act_utility(a), self.act_utility(b))

    def constant(self, p: Lottery) -> Act:
        return constant_act(self.states, p)

    def extremes(self) -> Tuple[Lottery, Lottery]:
        """Best and worst generators, found by a single scan each."""
        best = worst = self.space.generators[0]
        for generator in self.space.generators[1:]:
            if compare_lotteries(self.model, generator, best) is PreferenceVerdict.PREFERS:
                best = generator
            if compare_lotteries(self.model, worst, generator) is PreferenceVerdict.PREFERS:
                worst = generator
        return best, worst


def _require_state(o: ActPreferenceOracle, t: State):
    if t not in o.states:
        raise UnknownState(state=t)


def is_null(o: ActPreferenceOracle, t: State, probe_set: Sequence[Lottery] = ()) -> bool:
    """True when no two acts differing only at ``t`` are strictly ranked."""
    _require_state(o, t)
    best, worst = o.extremes()
    probes = list(dict.fromkeys(list(probe_set) + list(o.space.generators) + [best, worst]))
    for filler in (worst, best):
        base = o.constant(filler)
        for x, y in product(probes, repeat=2):
            if x == y:
                continue
            if o.compare(base.replace(t, x), base.replace(t, y)) is not PreferenceVerdict.INDIFFERENT:
                return False
    return True


def act_overrides(o: ActPreferenceOracle, a: Act, b: Act) -> bool:
    """``a >> b`` on acts: infinite utility ratio, or a > b with b at the bottom."""
    o.model.require_positive(o.space.outcomes)
    ua, ub = o.act_utility(a), o.act_utility(b)
    if classify_ratio(ua, ub).is_infinite:
        return True
    if o.compare(a, b) is not PreferenceVerdict.PREFERS:
        return False
    _, worst = o.extremes()
    return qual_compare(ub, o.act_utility(o.constant(worst))) is not QualOrdering.QGT


def generator_acts(o: ActPreferenceOracle) -> List[Act]:
    """Every act whose values are generators."""
    return list(all_acts(o.states, o.space.generators))


def single_state_variations(
    acts: Iterable[Act], states: Sequence[State], lotteries: Sequence[Lottery]
) -> List[ActPair]:
    """Pairs ``(a, b, s)`` where ``b`` is ``a`` with the lottery at ``s`` replaced."""
    pairs = []
    for a in acts:
        for state in states:
            for lottery in lotteries:
                if lottery != a[state]:
                    pairs.append((a, a.replace(state, lottery), state))
    return pairs


def check_A4(o: ActPreferenceOracle, pairs: Optional[Iterable[ActPair]] = None) -> PostulateReport:
    """Acts agreeing off one state are ranked by their values there."""
    if pairs is None:
        pairs = single_state_variations(generator_acts(o), o.states, o.space.generators)
    for a, b, state in pairs:
        if o.compare(a, b) is not PreferenceVerdict.PREFERS:
            continue
        if o.compare(o.constant(a[state]), o.constant(b[state])) is not PreferenceVerdict.PREFERS:
            return PostulateReport(
                POSTULATE_A4, Status.FAILS, Method.GRID, {"state": state, "a": a, "b": b}
            )
    return PostulateReport(POSTULATE_A4, Status.HOLDS, Method.GRID)


def check_A5(o: ActPreferenceOracle, acts: Optional[Iterable[Act]] = None) -> PostulateReport:
    """A state whose value can override the whole act must be null."""
    acts = generator_acts(o) if acts is None else list(acts)
    null = {t: is_null(o, t) for t in o.states}
    for state in o.states:
        for a in acts:
            if act_overrides(o, o.constant(a[state]), a) and not null[state]:
                return PostulateReport(
                    POSTULATE_A5, Status.FAILS, Method.GRID, {"state": state, "act": a}
                )
    return PostulateReport(POSTULATE_A5, Status.HOLDS, Method.GRID)


def _nontrivial_extremes(o: ActPreferenceOracle) -> Tuple[Lottery, Lottery]:
    best, worst = o.extremes()
    if compare_lotteries(o.model, best, worst) is not PreferenceVerdict.PREFERS:
        raise TrivialRelation()
    return best, worst


def _test_act(o: ActPreferenceOracle, t: State, best: Lottery, worst: Lottery) -> Act:
    return o.constant(worst).replace(t, best)


def extract_probabilities(o: ActPreferenceOracle) -> ProbabilityMeasure:
    """Recover the measure from act comparisons against mixtures of the extreme constants."""
    best, worst = _nontrivial_extremes(o)
    high, low = o.constant(best), o.constant(worst)
    floor = o.act_utility(low)
    spread = o.act_utility(high) - floor
    weights: Dict[State, Fraction] = {}
    for t in o.states:
        if is_null(o, t):
            weights[t] = Fraction(0)
            continue
        test = _test_act(o, t, best, worst)
        weights[t] = ratio_standard_part(o.act_utility(test) - floor, spread)
        if o.compare(test, mix_act(weights[t], high, low)) is not PreferenceVerdict.INDIFFERENT:
            raise ExtractionFailure(
                reason=f"test act for {t} is not indifferent to weight {format_rational(weights[t])}"
            )
        _LOGGER.debug("Extracted p(%s) = %s", t, weights[t])
    total = sum(weights.values(), Fraction(0))
    if total != 1:
        raise ExtractionFailure(reason=f"weights sum to {format_rational(total)}")
    return ProbabilityMeasure(weights)


@dataclass
class UniquenessReport:
    unique: bool
    violations: List[Tuple[State, Fraction]] = field(default_factory=list)
    skipped: List[Tuple[State, Fraction]] = field(default_factory=list)
    note: str = ""


def uniqueness_check(
    o: ActPreferenceOracle,
    extracted: ProbabilityMeasure,
    perturbations: Sequence[Fraction] = (DEFAULT_PERTURBATION, -DEFAULT_PERTURBATION),
) -> UniquenessReport:
    """Only the extracted weight makes each test act indifferent to its mixture.

    A zero perturbation must keep the indifference; any other must break it.
    """
    try:
        best, worst = _nontrivial_extremes(o)
    except TrivialRelation as err:
        return UniquenessReport(False, note=err.message)
    high, low = o.constant(best), o.constant(worst)
    report = UniquenessReport(True)
    for t in o.states:
        test = _test_act(o, t, best, worst)
        for delta in perturbations:
            value = extracted.weight(t) + delta
            if not 0 <= value <= 1:
                _LOGGER.warning("Skipping perturbed weight %s for state %s", value, t)
                report.skipped.append((t, value))
                continue
            indifferent = (
                o.compare(test, mix_act(value, high, low)) is PreferenceVerdict.INDIFFERENT
            )
            if indifferent != (delta == 0):
                report.violations.append((t, value))
    report.unique = not report.violations
    return report
