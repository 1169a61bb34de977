from fractions import Fraction
import random

import pytest

from equm.exceptions import (
    EmptyStateSet,
    ExtractionFailure,
    InvalidMeasure,
    TrivialRelation,
    UnknownState,
)
from equm.hyperreal import EPSILON, ONE
from equm.mixture import Act, Lottery, LotterySpace, constant_act
from equm.postulates import Method, Status
from equm.preference import PreferenceVerdict
from equm.subjective import (
    ActPreferenceOracle,
    ProbabilityMeasure,
    act_overrides,
    check_A4,
    check_A5,
    extract_probabilities,
    generator_acts,
    is_null,
    single_state_variations,
    uniqueness_check,
)

from .conftest import model_of
from .mock_oracle import InvertedConstantsOracle, NonstandardWeightOracle
from .strategies import names, random_measure, random_model

THIRD = Fraction(1, 3)
HIGH, LOW = Lottery.point("h"), Lottery.point("l")
SPACE = LotterySpace.of_outcomes(["h", "l"])


def _oracle(measure, utilities=None, cls=ActPreferenceOracle, **kwargs):
    model = model_of(**(utilities or {"h": "2", "l": "1"}))
    return cls(model, ProbabilityMeasure(measure), SPACE, **kwargs)


def test_measure_validation():
    with pytest.raises(InvalidMeasure):
        ProbabilityMeasure([("s", Fraction(1, 2)), ("s", Fraction(1, 2))])
    with pytest.raises(InvalidMeasure):
        ProbabilityMeasure({"s": 0.5, "t": 0.5})
    with pytest.raises(InvalidMeasure):
        ProbabilityMeasure({"s": Fraction(3, 2), "t": Fraction(-1, 2)})
    with pytest.raises(InvalidMeasure):
        ProbabilityMeasure({"s": THIRD})
    with pytest.raises(EmptyStateSet):
        ProbabilityMeasure({})


def test_measure_accessors():
    measure = ProbabilityMeasure({"s1": THIRD, "s2": 2 * THIRD, "s3": 0})
    assert measure.states == ("s1", "s2", "s3")
    assert measure.weight("s2") == 2 * THIRD
    assert measure.null_states() == ["s3"]
    assert measure.format_lines() == ["s1 = 1/3", "s2 = 2/3", "s3 = 0"]
    with pytest.raises(UnknownState):
        measure.weight("s4")


def test_extremes_and_constants():
    oracle = _oracle({"s1": 1})
    assert oracle.extremes() == (HIGH, LOW)
    assert oracle.constant(HIGH) == constant_act(["s1"], HIGH)
    assert oracle.compare(oracle.constant(HIGH), oracle.constant(LOW)) is PreferenceVerdict.PREFERS


def test_null_states():
    oracle = _oracle({"s1": THIRD, "s2": 2 * THIRD, "s3": 0})
    assert not is_null(oracle, "s1")
    assert not is_null(oracle, "s2")
    assert is_null(oracle, "s3")
    assert is_null(oracle, "s3", probe_set=[Lottery({"h": THIRD, "l": 2 * THIRD})])
    with pytest.raises(UnknownState):
        is_null(oracle, "s4")


def test_extract_probabilities():
    hidden = {"s1": THIRD, "s2": 2 * THIRD, "s3": 0}
    oracle = _oracle(hidden)
    extracted = extract_probabilities(oracle)
    assert extracted == ProbabilityMeasure(hidden)
    report = uniqueness_check(oracle, extracted)
    assert report.unique
    assert report.violations == []
    assert [state for state, _ in report.skipped] == ["s3"]


def test_extract_probabilities_with_infinite_stakes():
    hidden = {"s1": Fraction(1, 4), "s2": Fraction(3, 4)}
    oracle = _oracle(hidden, {"h": "1e-1", "l": "1e2"})
    assert extract_probabilities(oracle) == ProbabilityMeasure(hidden)


def test_trivial_relation_has_no_measure():
    oracle = _oracle({"s1": 1}, {"h": "1", "l": "1 + 1e1"})
    with pytest.raises(TrivialRelation):
        extract_probabilities(oracle)
    report = uniqueness_check(oracle, ProbabilityMeasure({"s1": 1}))
    assert not report.unique
    assert report.note


def test_uniqueness_flags_wrong_weights():
    oracle = _oracle({"s1": THIRD, "s2": 2 * THIRD})
    report = uniqueness_check(oracle, ProbabilityMeasure({"s1": THIRD, "s2": 2 * THIRD}), [0])
    assert report.unique
    wrong = ProbabilityMeasure({"s1": Fraction(1, 2), "s2": Fraction(1, 2)})
    report = uniqueness_check(oracle, wrong, [0])
    assert not report.unique
    assert report.violations == [("s1", Fraction(1, 2)), ("s2", Fraction(1, 2))]


def test_act_overrides():
    oracle = _oracle({"s1": Fraction(1, 2), "s2": Fraction(1, 2)}, {"h": "1e-1", "l": "1"})
    mixed = Act({"s1": HIGH, "s2": LOW})
    assert act_overrides(oracle, oracle.constant(HIGH), oracle.constant(LOW))
    assert not act_overrides(oracle, oracle.constant(HIGH), mixed)
    assert act_overrides(oracle, mixed, oracle.constant(LOW))
    assert not act_overrides(oracle, mixed, mixed)


def test_sample_builders():
    oracle = _oracle({"s1": Fraction(1, 2), "s2": Fraction(1, 2)})
    acts = generator_acts(oracle)
    assert len(acts) == 4
    pairs = single_state_variations(acts, oracle.states, SPACE.generators)
    assert len(pairs) == 8
    for a, b, state in pairs:
        assert a.differing_states(b) == [state]


def test_act_postulates_hold_for_standard_weights():
    oracle = _oracle({"s1": THIRD, "s2": 2 * THIRD, "s3": 0}, {"h": "1e-1", "l": "1"})
    a4 = check_A4(oracle)
    assert a4.holds
    assert a4.method is Method.GRID
    assert check_A5(oracle).holds


def test_inverted_constants_violate_state_monotonicity():
    oracle = _oracle({"s1": Fraction(1, 2), "s2": Fraction(1, 2)}, cls=InvertedConstantsOracle)
    report = check_A4(oracle)
    assert report.status is Status.FAILS
    a, b = report.witness["a"], report.witness["b"]
    assert oracle.compare(a, b) is PreferenceVerdict.PREFERS
    state = report.witness["state"]
    assert oracle.compare(oracle.constant(a[state]), oracle.constant(b[state])) is not PreferenceVerdict.PREFERS


def test_infinitesimal_state_weight_violates_null_condition():
    oracle = _oracle(
        {"s1": Fraction(1, 2), "s2": Fraction(1, 2)},
        {"h": "1e-1", "l": "1"},
        cls=NonstandardWeightOracle,
        weights={"s1": ONE - EPSILON, "s2": EPSILON},
    )
    report = check_A5(oracle)
    assert report.status is Status.FAILS
    assert report.witness["state"] == "s2"
    assert report.witness["act"] == Act({"s1": LOW, "s2": HIGH})
    with pytest.raises(ExtractionFailure):
        extract_probabilities(oracle)


def test_state_wise_dominance_carries_to_acts():
    rng = random.Random(37)
    outcomes = names("o", 3)
    space = LotterySpace.of_outcomes(outcomes)
    for _ in range(30):
        states = names("s", rng.randint(1, 3))
        oracle = ActPreferenceOracle(random_model(rng, outcomes), random_measure(rng, states), space)
        acts = generator_acts(oracle)
        for a in acts:
            for b in acts:
                dominated = all(
                    oracle.compare(oracle.constant(a[s]), oracle.constant(b[s]))
                    is not PreferenceVerdict.PREFERS
                    for s in states
                )
                if dominated:
                    assert oracle.compare(a, b) is not PreferenceVerdict.PREFERS


def test_hidden_measures_are_recovered():
    """Extraction returns the hidden measure exactly on random models and measures."""
    rng = random.Random(41)
    recovered = 0
    while recovered < 100:
        outcomes = names("o", rng.randint(2, 3))
        states = names("s", rng.randint(1, 4))
        model = random_model(rng, outcomes)
        hidden = random_measure(rng, states)
        oracle = ActPreferenceOracle(model, hidden, LotterySpace.of_outcomes(outcomes))
        best, worst = oracle.extremes()
        if oracle.compare(oracle.constant(best), oracle.constant(worst)) is not PreferenceVerdict.PREFERS:
            continue
        extracted = extract_probabilities(oracle)
        assert extracted == hidden
        assert sum(weight for _, weight in extracted.items()) == 1
        assert uniqueness_check(oracle, extracted).unique
        assert [s for s in states if is_null(oracle, s)] == hidden.null_states()
        assert check_A4(oracle).holds
        assert check_A5(oracle).holds
        recovered += 1
