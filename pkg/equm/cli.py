"""Batch command surface: ``equm <command> --file <problem>``."""
import argparse
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
import logging
import sys
from typing import Any, Callable, Dict, List, Optional

import voluptuous as vol

from .config import validate_options
from .const import (
    COMMAND_CANONICALIZE,
    COMMAND_CHECK_POSTULATES,
    COMMAND_COMPARE,
    COMMAND_MAXIMIN_DEMO,
    COMMAND_RANK,
    COMMAND_SUBJECTIVE,
    COMMANDS,
    CONF_COMMAND,
    CONF_DEBUG_LOGGING,
    CONF_DENOMINATOR_BOUND,
    CONF_FILE,
    CONF_GRID,
    DEFAULT_MIXTURE_DENOMINATOR,
    EXIT_OK,
    EXIT_PARSE_ERROR,
)
from .exceptions import ConsistencyError, EqumError, PreconditionViolated
from .hyperreal import format_literal
from .mixture import Act, Lottery, mix
from .postulates import check_postulates
from .preference import (
    compare_lotteries,
    expected_utility,
    maximin_model,
    maximin_oracle,
    rank_lotteries,
    verdict_of,
)
from .problem import ProblemFile, format_problem, parse_problem
from .representation import canonicalize, verify_equivalence
from .subjective import (
    check_A4,
    check_A5,
    extract_probabilities,
    is_null,
    single_state_variations,
    uniqueness_check,
)

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class CommandResult:
    exit_code: int
    stdout: str
    stderr: str = ""


def _compare(problem: ProblemFile, options: Dict[str, Any]) -> List[str]:
    if not problem.queries:
        raise PreconditionViolated(reason="no queries declared")
    model = problem.model()
    lines = []
    for name, (left, right) in problem.queries.items():
        first, second = problem.resolve(left), problem.resolve(right)
        if isinstance(first, Act):
            oracle = problem.oracle()
            values = oracle.act_utility(first), oracle.act_utility(second)
        else:
            values = expected_utility(model, first), expected_utility(model, second)
        verdict = verdict_of(*values)
        _LOGGER.debug("Query %s: %s", name, verdict.value)
        lines.append(
            f"{verdict.value}  EU1={format_literal(values[0])}  EU2={format_literal(values[1])}"
        )
    return lines


def _rank(problem: ProblemFile, options: Dict[str, Any]) -> List[str]:
    sample = problem.sample()
    names, lotteries = list(sample), list(sample.values())
    return [
        f"{position}. " + " ~ ".join(names[i] for i in group)
        for position, group in enumerate(rank_lotteries(problem.model(), lotteries), start=1)
    ]


def _check_postulates(problem: ProblemFile, options: Dict[str, Any]) -> List[str]:
    model, space = problem.model(), problem.space()
    reports = check_postulates(
        model,
        space,
        list(problem.sample().values()),
        grid=options[CONF_GRID],
        denominator_bound=options[CONF_DENOMINATOR_BOUND],
    )
    if problem.states and problem.acts and problem.measure is not None:
        oracle = problem.oracle()
        acts = list(problem.acts.values())
        pairs = single_state_variations(acts, problem.states, space.generators)
        reports += [check_A4(oracle, pairs), check_A5(oracle, acts)]
    return [report.format_line(problem.name) for report in reports]


def _canonicalize(problem: ProblemFile, options: Dict[str, Any]) -> List[str]:
    model, space = problem.model(), problem.space()
    canonical = canonicalize(model, space)
    report = verify_equivalence(model, canonical, space, DEFAULT_MIXTURE_DENOMINATOR)
    if not report.equivalent:
        raise ConsistencyError(
            postulate="canonical model",
            detail=f"mixtures {report.discrepancy} are ranked differently",
        )
    rewritten = problem.with_utilities(dict(canonical.as_utility_model(space).items()))
    return format_problem(rewritten).splitlines()


def _subjective(problem: ProblemFile, options: Dict[str, Any]) -> List[str]:
    oracle = problem.oracle()
    measure = extract_probabilities(oracle)
    null = [state for state in oracle.states if is_null(oracle, state)]
    uniqueness = uniqueness_check(oracle, measure)
    return measure.format_lines() + [
        f"null: {' '.join(null) if null else '-'}",
        f"unique: {'yes' if uniqueness.unique else 'no'}",
    ]


def _maximin_demo(problem: ProblemFile, options: Dict[str, Any]) -> List[str]:
    outcomes = problem.outcomes
    model = maximin_model(outcomes)
    if problem.lotteries:
        lotteries = list(problem.lotteries.values())
    else:
        points = [Lottery.point(o) for o in outcomes]
        lotteries = points + [mix(Fraction(1, 2), p, q) for p, q in combinations(points, 2)]
    lines = [f"u({o}) = {format_literal(model.utility(o))}" for o in outcomes]
    for p, q in permutations(lotteries, 2):
        lines.append(
            "  ".join(
                (
                    problem.lottery_name(p),
                    problem.lottery_name(q),
                    compare_lotteries(model, p, q).value,
                    maximin_oracle(p, q, outcomes).value,
                )
            )
        )
    return lines


_COMMANDS: Dict[str, Callable[[ProblemFile, Dict[str, Any]], List[str]]] = {
    COMMAND_COMPARE: _compare,
    COMMAND_RANK: _rank,
    COMMAND_CHECK_POSTULATES: _check_postulates,
    COMMAND_CANONICALIZE: _canonicalize,
    COMMAND_SUBJECTIVE: _subjective,
    COMMAND_MAXIMIN_DEMO: _maximin_demo,
}


def run(
    command: str, problem: ProblemFile, options: Optional[Dict[str, Any]] = None
) -> CommandResult:
    """Run one command; domain errors become an exit code and an ``error:`` line."""
    try:
        options = validate_options({**(options or {}), CONF_COMMAND: command})
    except vol.Invalid as err:
        return CommandResult(EXIT_PARSE_ERROR, "", f"error: {err}\n")
    try:
        lines = _COMMANDS[command](problem, options)
    except EqumError as err:
        _LOGGER.debug("Command %s failed: %s", command, err.message)
        return CommandResult(err.exit_code, "", f"error: {err.message}\n")
    return CommandResult(EXIT_OK, "".join(f"{line}\n" for line in lines))


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="equm",
        description="Expected qualitative utility with exact infinitesimal arithmetic.",
    )
    parser.add_argument("command", metavar="command", help=" | ".join(COMMANDS))
    parser.add_argument("--file", "-f", dest=CONF_FILE, required=True, help="problem file, or - for stdin")
    parser.add_argument("--grid", dest=CONF_GRID, type=int, help="mixture grid {1/k, ..., (k-1)/k}")
    parser.add_argument(
        "--denominator-bound",
        dest=CONF_DENOMINATOR_BOUND,
        type=int,
        help="largest denominator searched for continuity witnesses",
    )
    parser.add_argument("--debug", dest=CONF_DEBUG_LOGGING, action="store_true")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        options = validate_options(vars(args))
    except vol.Invalid as err:
        sys.stderr.write(f"error: {err}\n")
        return EXIT_PARSE_ERROR

    logging.basicConfig(
        level=logging.DEBUG if options[CONF_DEBUG_LOGGING] else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        problem = parse_problem(_read(options[CONF_FILE]))
    except (OSError, UnicodeDecodeError) as err:
        sys.stderr.write(f"error: {err}\n")
        return EXIT_PARSE_ERROR
    except EqumError as err:
        sys.stderr.write(f"error: {err.message}\n")
        return err.exit_code

    result = run(options[CONF_COMMAND], problem, options)
    sys.stdout.write(result.stdout)
    sys.stderr.write(result.stderr)
    return result.exit_code
