from fractions import Fraction

import pytest

from equm.exceptions import ParseError, PreconditionViolated, ResolutionError
from equm.hyperreal import parse_literal
from equm.mixture import Act, Lottery, mix
from equm.problem import format_problem, parse_problem
from equm.subjective import ProbabilityMeasure

HALF = Fraction(1, 2)

SAMPLE = """\
# consolation prize, with acts
outcome P
outcome Q
outcome R
utility P = 2e1
utility Q = 1e1
utility R = 1  # standard
lottery PR = 1/2 P + 1/2 R
lottery QR = 1/2 Q + 1/2 R
state s1
state s2
act bet = { s1: P, s2: QR }
act safe = { s1: R, s2: R }
measure = { s1: 1/3, s2: 2/3 }
query stakes = PR QR
query choice = bet safe
"""


def _parse_error(text):
    with pytest.raises(ParseError) as info:
        parse_problem(text)
    return info.value


def _resolution_error(text):
    with pytest.raises(ResolutionError) as info:
        parse_problem(text)
    return info.value


def test_parse_sample():
    problem = parse_problem(SAMPLE)
    assert problem.outcomes == ["P", "Q", "R"]
    assert problem.utilities["P"] == parse_literal("2e1")
    assert problem.lotteries["PR"] == mix(HALF, Lottery.point("P"), Lottery.point("R"))
    assert problem.states == ["s1", "s2"]
    assert problem.acts["bet"] == Act({"s1": Lottery.point("P"), "s2": problem.lotteries["QR"]})
    assert problem.measure == ProbabilityMeasure({"s1": Fraction(1, 3), "s2": Fraction(2, 3)})
    assert problem.queries == {"stakes": ("PR", "QR"), "choice": ("bet", "safe")}


def test_declarations_resolve_in_any_order():
    problem = parse_problem(
        "query q = L P\nlottery L = 1/4 P + 3/4 Q\nutility Q = 1\nutility P = 2\noutcome P\noutcome Q\n"
    )
    assert problem.outcomes == ["P", "Q"]
    assert list(problem.utilities) == ["P", "Q"]
    assert problem.queries == {"q": ("L", "P")}


def test_problem_helpers():
    problem = parse_problem(SAMPLE)
    assert problem.model().utility("R") == parse_literal("1")
    assert problem.space().outcomes == ("P", "Q", "R")
    assert list(problem.sample()) == ["PR", "QR"]
    assert problem.resolve("Q") == Lottery.point("Q")
    assert problem.resolve("safe") == problem.acts["safe"]
    with pytest.raises(ResolutionError):
        problem.resolve("Z")
    assert problem.lottery_name(problem.lotteries["QR"]) == "QR"
    assert problem.lottery_name(Lottery.point("P")) == "P"
    assert problem.lottery_name(mix(HALF, Lottery.point("P"), Lottery.point("Q"))) == "[1/2 P + 1/2 Q]"
    unnamed = Act({"s1": Lottery.point("Q"), "s2": Lottery.point("R")})
    assert problem.act_name(unnamed) == "{s1: Q, s2: R}"
    assert problem.name(problem.acts["bet"]) == "bet"
    assert problem.oracle().states == ("s1", "s2")


def test_sample_defaults_to_point_masses():
    problem = parse_problem("outcome a\noutcome b\nutility a = 1\nutility b = 1e1\n")
    assert problem.sample() == {"a": Lottery.point("a"), "b": Lottery.point("b")}
    with pytest.raises(PreconditionViolated):
        problem.oracle()


def test_format_problem():
    problem = parse_problem(SAMPLE)
    assert format_problem(problem) == (
        "outcome P\n"
        "outcome Q\n"
        "outcome R\n"
        "utility P = 2e1\n"
        "utility Q = 1e1\n"
        "utility R = 1\n"
        "lottery PR = 1/2 P + 1/2 R\n"
        "lottery QR = 1/2 Q + 1/2 R\n"
        "state s1\n"
        "state s2\n"
        "act bet = { s1: P, s2: QR }\n"
        "act safe = { s1: R, s2: R }\n"
        "measure = { s1: 1/3, s2: 2/3 }\n"
        "query stakes = PR QR\n"
        "query choice = bet safe\n"
    )
    assert parse_problem(format_problem(problem)) == problem


def test_with_utilities_keeps_everything_else():
    problem = parse_problem(SAMPLE)
    rewritten = problem.with_utilities(
        {o: parse_literal(text) for o, text in zip("PQR", ("1e1", "1e2", "1"))}
    )
    assert rewritten.lotteries == problem.lotteries
    assert rewritten.utilities["Q"] == parse_literal("1e2")
    assert problem.utilities["Q"] == parse_literal("1e1")


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("outcome P\nfrobnicate P\n", 2, 1),
        ("  outcome\n", 1, 10),
        ("outcome P\nutility P = 1 x\n", 2, 15),
        ("outcome P\nutility P 1\n", 2, 9),
        ("outcome P\nlottery L = 1 P + half P\n", 2, 19),
        ("outcome P\nstate s\nact a = s: P\n", 3, 9),
        ("outcome P\nstate s\nmeasure = { s: 0.5 }\n", 3, 16),
        ("outcome P\nstate s\nstate t\nact a = { s: P, t P }\n", 4, 17),
        ("outcome P\nquery q = P\n", 2, 11),
        ("Outcome P\n", 1, 1),
    ],
)
def test_parse_errors_point_at_the_line(text, line, column):
    err = _parse_error(text)
    assert (err.line, err.column) == (line, column)
    assert err.message.startswith(f"line {line}, column {column}: ")
    assert err.exit_code == 2


@pytest.mark.parametrize(
    "text, fragment, line",
    [
        ("", "no outcomes declared", None),
        ("outcome P\noutcome P\nutility P = 1\n", "duplicate outcome P", 2),
        ("outcome P\n", "no utility for outcome P", None),
        ("outcome P\nutility P = 1\nutility Z = 1\n", "utility for undeclared outcome Z", 3),
        ("outcome P\nutility P = 1\nlottery L = 1 Z\n", "lottery L uses undeclared outcome Z", 3),
        ("outcome P\nutility P = 1\nlottery L = 1/2 P\n", "lottery L: Invalid lottery", 3),
        ("outcome P\nutility P = 1\nstate s\nact a = { t: P }\n", "act a uses undeclared state t", 4),
        ("outcome P\nutility P = 1\nstate s\nstate t\nact a = { s: P }\n", "act a has no entry for state t", 5),
        ("outcome P\nutility P = 1\nstate s\nact a = { s: L }\n", "act a uses undeclared lottery L", 4),
        ("outcome P\nutility P = 1\nact a = { }\n", "act a: An act needs at least one state", 3),
        ("outcome P\nutility P = 1\nstate s\nmeasure = { s: 1/2 }\n", "measure: Invalid probability measure", 4),
        ("outcome P\nutility P = 1\nstate s\nmeasure = { s: 1 }\nmeasure = { s: 1 }\n", "duplicate measure", 5),
        ("outcome P\nutility P = 1\nquery q = P Z\n", "query q: unknown reference Z", 3),
        (
            "outcome P\nutility P = 1\nstate s\nact a = { s: P }\nquery q = a P\n",
            "query q compares an act with a lottery",
            5,
        ),
    ],
)
def test_resolution_errors(text, fragment, line):
    err = _resolution_error(text)
    assert fragment in err.message
    assert err.line == line
    assert err.exit_code == 1
