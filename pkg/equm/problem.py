"""Problem files: one declaration per line, ``#`` starts a comment.

    outcome <id>
    utility <id> = <literal>
    lottery <id> = <rational> <outcome> [+ <rational> <outcome>]*
    state <id>
    act <id> = { <state>: <lottery or outcome>, ... }
    measure = { <state>: <rational>, ... }
    query <id> = <ref> <ref>

References resolve after the whole file is read, so declarations may come in
any order.
"""
from dataclasses import dataclass, field, replace
from fractions import Fraction
import logging
import re
from typing import Callable, Dict, List, Optional, Tuple, Union

from .const import (
    COMMENT_PREFIX,
    KEYWORD_ACT,
    KEYWORD_LOTTERY,
    KEYWORD_MEASURE,
    KEYWORD_OUTCOME,
    KEYWORD_QUERY,
    KEYWORD_STATE,
    KEYWORD_UTILITY,
)
from .exceptions import EqumError, ParseError, PreconditionViolated, ResolutionError
from .hyperreal import Hyperreal, format_literal, format_rational, parse_literal
from .mixture import Act, Lottery, LotterySpace, format_lottery
from .preference import UtilityModel
from .subjective import ActPreferenceOracle, ProbabilityMeasure

_LOGGER = logging.getLogger(__name__)

IDENTIFIER = r"[A-Za-z_][A-Za-z0-9_']*"
_DECLARATION = re.compile(r"^(?P<keyword>[a-z]+)\b\s*(?P<body>.*)$")
_BARE_ID = re.compile(rf"^(?P<id>{IDENTIFIER})$")
_ASSIGNMENT = re.compile(rf"^(?P<id>{IDENTIFIER})\s*=\s*(?P<rhs>.*)$")
_ANONYMOUS_ASSIGNMENT = re.compile(r"^=\s*(?P<rhs>.*)$")
_RATIONAL = r"-?\d+(?:/\d+)?"
_LOTTERY_TERM = re.compile(rf"^(?P<rational>{_RATIONAL})\s+(?P<outcome>{IDENTIFIER})$")
_BRACES = re.compile(r"^\{(?P<inner>.*)\}$")
_ENTRY = re.compile(rf"^(?P<key>{IDENTIFIER})\s*:\s*(?P<value>\S+)$")
_QUERY = re.compile(rf"^(?P<left>{IDENTIFIER})\s+(?P<right>{IDENTIFIER})$")

Reference = Union[Lottery, Act]


def _indent(text: str) -> int:
    return len(text) - len(text.lstrip())


@dataclass
class ProblemFile:
    """A parsed and resolved problem; every mapping keeps declaration order."""

    outcomes: List[str] = field(default_factory=list)
    utilities: Dict[str, Hyperreal] = field(default_factory=dict)
    lotteries: Dict[str, Lottery] = field(default_factory=dict)
    states: List[str] = field(default_factory=list)
    acts: Dict[str, Act] = field(default_factory=dict)
    measure: Optional[ProbabilityMeasure] = None
    queries: Dict[str, Tuple[str, str]] = field(default_factory=dict)

    def model(self) -> UtilityModel:
        return UtilityModel({o: self.utilities[o] for o in self.outcomes})

    def space(self) -> LotterySpace:
        return LotterySpace.of_outcomes(self.outcomes)

    def sample(self) -> Dict[str, Lottery]:
        """Declared lotteries, or the point masses when none are declared."""
        if self.lotteries:
            return dict(self.lotteries)
        return {o: Lottery.point(o) for o in self.outcomes}

    def oracle(self) -> ActPreferenceOracle:
        if self.measure is None:
            raise PreconditionViolated(reason="no measure declared")
        return ActPreferenceOracle(self.model(), self.measure, self.space())

    def lottery_name(self, lottery: Lottery) -> str:
        for name, declared in self.lotteries.items():
            if declared == lottery:
                return name
        if len(lottery) == 1:
            return lottery.support[0]
        return f"[{format_lottery(lottery, self.outcomes)}]"

    def act_name(self, act: Act) -> str:
        for name, declared in self.acts.items():
            if declared == act:
                return name
        inner = ", ".join(f"{s}: {self.lottery_name(act[s])}" for s in self.states)
        return f"{{{inner}}}"

    def name(self, value) -> str:
        if isinstance(value, Act):
            return self.act_name(value)
        if isinstance(value, Lottery):
            return self.lottery_name(value)
        return str(value)

    def resolve(self, ref: str) -> Reference:
        """A lottery id, an outcome id (its point mass) or an act id."""
        if ref in self.lotteries:
            return self.lotteries[ref]
        if ref in self.outcomes:
            return Lottery.point(ref)
        if ref in self.acts:
            return self.acts[ref]
        raise ResolutionError(f"unknown reference {ref}")

    def with_utilities(self, utilities: Dict[str, Hyperreal]) -> "ProblemFile":
        return replace(self, utilities=dict(utilities))


@dataclass
class _Declaration:
    line: int
    column: int
    body: Tuple


class _ProblemReader:
    """Collects declarations line by line, then resolves references."""

    def __init__(self):
        self.outcomes: Dict[str, int] = {}
        self.states: Dict[str, int] = {}
        self.utilities: Dict[str, _Declaration] = {}
        self.lotteries: Dict[str, _Declaration] = {}
        self.acts: Dict[str, _Declaration] = {}
        self.queries: Dict[str, _Declaration] = {}
        self.measure: Optional[_Declaration] = None
        self._handlers: Dict[str, Callable[[str, int, int], None]] = {
            KEYWORD_OUTCOME: self._outcome,
            KEYWORD_UTILITY: self._utility,
            KEYWORD_LOTTERY: self._lottery,
            KEYWORD_STATE: self._state,
            KEYWORD_ACT: self._act,
            KEYWORD_MEASURE: self._measure,
            KEYWORD_QUERY: self._query,
        }

    def read(self, text: str):
        for number, raw in enumerate(text.splitlines(), start=1):
            content = raw.split(COMMENT_PREFIX, 1)[0].rstrip()
            stripped = content.lstrip()
            if not stripped:
                continue
            indent = len(content) - len(stripped)
            match = _DECLARATION.match(stripped)
            handler = self._handlers.get(match.group("keyword")) if match else None
            if handler is None:
                raise ParseError(
                    f"unknown declaration {stripped.split()[0]!r}",
                    line=number,
                    column=indent + 1,
                )
            handler(match.group("body"), number, indent + match.start("body") + 1)

    @staticmethod
    def _claim(seen: Dict, name: str, what: str, line: int, value):
        if name in seen:
            raise ResolutionError(f"duplicate {what} {name}", line=line)
        seen[name] = value

    def _outcome(self, body: str, line: int, column: int):
        match = _BARE_ID.match(body)
        if not match:
            raise ParseError("expected an outcome id", line=line, column=column)
        self._claim(self.outcomes, match.group("id"), "outcome", line, line)

    def _state(self, body: str, line: int, column: int):
        match = _BARE_ID.match(body)
        if not match:
            raise ParseError("expected a state id", line=line, column=column)
        self._claim(self.states, match.group("id"), "state", line, line)

    def _assignment(self, body: str, line: int, column: int) -> Tuple[str, str, int]:
        match = _ASSIGNMENT.match(body)
        if not match:
            raise ParseError("expected '<id> = ...'", line=line, column=column)
        return match.group("id"), match.group("rhs"), column + match.start("rhs")

    def _utility(self, body: str, line: int, column: int):
        name, rhs, rhs_column = self._assignment(body, line, column)
        try:
            value = parse_literal(rhs)
        except ParseError as err:
            raise ParseError(
                f"bad utility literal: {err.reason}",
                line=line,
                column=rhs_column + (err.position or 0),
            ) from None
        self._claim(self.utilities, name, "utility for", line, _Declaration(line, column, (value,)))

    def _lottery(self, body: str, line: int, column: int):
        name, rhs, rhs_column = self._assignment(body, line, column)
        terms = []
        offset = 0
        for part in rhs.split("+"):
            match = _LOTTERY_TERM.match(part.strip())
            if not match:
                raise ParseError(
                    f"expected '<rational> <outcome>', got {part.strip()!r}",
                    line=line,
                    column=rhs_column + offset + _indent(part),
                )
            terms.append((match.group("outcome"), Fraction(match.group("rational"))))
            offset += len(part) + 1
        self._claim(self.lotteries, name, "lottery", line, _Declaration(line, column, tuple(terms)))

    def _entries(self, rhs: str, line: int, column: int) -> List[Tuple[str, str, int]]:
        """``(key, value, value column)`` triples of a braced list starting at ``column``."""
        match = _BRACES.match(rhs.strip())
        if not match:
            raise ParseError("expected '{ <key>: <value>, ... }'", line=line, column=column)
        start = column + _indent(rhs) + match.start("inner")
        entries = []
        offset = 0
        for part in match.group("inner").split(","):
            if part.strip():
                entry_column = start + offset + _indent(part)
                entry = _ENTRY.match(part.strip())
                if not entry:
                    raise ParseError(
                        f"expected '<key>: <value>', got {part.strip()!r}",
                        line=line,
                        column=entry_column,
                    )
                entries.append(
                    (entry.group("key"), entry.group("value"), entry_column + entry.start("value"))
                )
            offset += len(part) + 1
        return entries

    def _act(self, body: str, line: int, column: int):
        name, rhs, rhs_column = self._assignment(body, line, column)
        entries = tuple((state, ref) for state, ref, _ in self._entries(rhs, line, rhs_column))
        self._claim(self.acts, name, "act", line, _Declaration(line, column, entries))

    def _measure(self, body: str, line: int, column: int):
        match = _ANONYMOUS_ASSIGNMENT.match(body)
        if not match:
            raise ParseError("expected 'measure = { ... }'", line=line, column=column)
        entries = self._entries(match.group("rhs"), line, column + match.start("rhs"))
        weights = []
        for state, value, value_column in entries:
            if not re.fullmatch(_RATIONAL, value):
                raise ParseError(f"bad weight {value!r}", line=line, column=value_column)
            weights.append((state, Fraction(value)))
        if self.measure is not None:
            raise ResolutionError("duplicate measure", line=line)
        self.measure = _Declaration(line, column, tuple(weights))

    def _query(self, body: str, line: int, column: int):
        name, rhs, rhs_column = self._assignment(body, line, column)
        match = _QUERY.match(rhs.strip())
        if not match:
            raise ParseError("expected two references", line=line, column=rhs_column)
        self._claim(
            self.queries,
            name,
            "query",
            line,
            _Declaration(line, column, (match.group("left"), match.group("right"))),
        )

    def resolve(self) -> ProblemFile:
        if not self.outcomes:
            raise ResolutionError("no outcomes declared")
        problem = ProblemFile(outcomes=list(self.outcomes), states=list(self.states))
        for name, declaration in self.utilities.items():
            if name not in self.outcomes:
                raise ResolutionError(
                    f"utility for undeclared outcome {name}", line=declaration.line
                )
        missing = [o for o in self.outcomes if o not in self.utilities]
        if missing:
            raise ResolutionError(f"no utility for outcome {', '.join(missing)}")
        problem.utilities = {o: self.utilities[o].body[0] for o in self.outcomes}
        for name, declaration in self.lotteries.items():
            for outcome, _ in declaration.body:
                if outcome not in self.outcomes:
                    raise ResolutionError(
                        f"lottery {name} uses undeclared outcome {outcome}",
                        line=declaration.line,
                    )
            problem.lotteries[name] = self._build(
                declaration, lambda: Lottery(declaration.body), f"lottery {name}"
            )
        for name, declaration in self.acts.items():
            problem.acts[name] = self._resolve_act(problem, name, declaration)
        if self.measure is not None:
            self._require_states(
                [state for state, _ in self.measure.body], "measure", self.measure.line
            )
            problem.measure = self._build(
                self.measure,
                lambda: ProbabilityMeasure(self.measure.body),
                "measure",
            )
        for name, declaration in self.queries.items():
            problem.queries[name] = self._resolve_query(problem, name, declaration)
        _LOGGER.debug(
            "Parsed %d outcomes, %d lotteries, %d states, %d acts, %d queries",
            len(problem.outcomes),
            len(problem.lotteries),
            len(problem.states),
            len(problem.acts),
            len(problem.queries),
        )
        return problem

    @staticmethod
    def _build(declaration: _Declaration, build: Callable, what: str):
        try:
            return build()
        except EqumError as err:
            raise ResolutionError(f"{what}: {err.message}", line=declaration.line) from err

    def _require_states(self, listed: List[str], what: str, line: int):
        for state in listed:
            if state not in self.states:
                raise ResolutionError(f"{what} uses undeclared state {state}", line=line)
        missing = [s for s in self.states if s not in listed]
        if missing:
            raise ResolutionError(
                f"{what} has no entry for state {', '.join(missing)}", line=line
            )

    def _resolve_act(self, problem: ProblemFile, name: str, declaration: _Declaration) -> Act:
        self._require_states([state for state, _ in declaration.body], f"act {name}", declaration.line)
        assignment = {}
        for state, ref in declaration.body:
            if ref in problem.lotteries:
                assignment[state] = problem.lotteries[ref]
            elif ref in problem.outcomes:
                assignment[state] = Lottery.point(ref)
            else:
                raise ResolutionError(
                    f"act {name} uses undeclared lottery {ref}", line=declaration.line
                )
        return self._build(
            declaration,
            lambda: Act((state, assignment[state]) for state in self.states),
            f"act {name}",
        )

    def _resolve_query(
        self, problem: ProblemFile, name: str, declaration: _Declaration
    ) -> Tuple[str, str]:
        left, right = declaration.body
        try:
            values = [problem.resolve(left), problem.resolve(right)]
        except ResolutionError as err:
            raise ResolutionError(
                f"query {name}: {err.reason}",
                line=declaration.line,
            ) from None
        if isinstance(values[0], Act) != isinstance(values[1], Act):
            raise ResolutionError(
                f"query {name} compares an act with a lottery", line=declaration.line
            )
        return left, right


def parse_problem(text: str) -> ProblemFile:
    reader = _ProblemReader()
    reader.read(text)
    return reader.resolve()


def format_problem(problem: ProblemFile) -> str:
    """Write a problem back in the file syntax, declaration order preserved."""
    lines = [f"{KEYWORD_OUTCOME} {o}" for o in problem.outcomes]
    lines += [
        f"{KEYWORD_UTILITY} {o} = {format_literal(problem.utilities[o])}"
        for o in problem.outcomes
    ]
    lines += [
        f"{KEYWORD_LOTTERY} {name} = {format_lottery(lottery, problem.outcomes)}"
        for name, lottery in problem.lotteries.items()
    ]
    lines += [f"{KEYWORD_STATE} {s}" for s in problem.states]
    for name, act in problem.acts.items():
        inner = ", ".join(f"{s}: {problem.lottery_name(act[s])}" for s in problem.states)
        lines.append(f"{KEYWORD_ACT} {name} = {{ {inner} }}")
    if problem.measure is not None:
        inner = ", ".join(
            f"{s}: {format_rational(w)}" for s, w in problem.measure.items()
        )
        lines.append(f"{KEYWORD_MEASURE} = {{ {inner} }}")
    lines += [
        f"{KEYWORD_QUERY} {name} = {left} {right}"
        for name, (left, right) in problem.queries.items()
    ]
    return "\n".join(lines) + "\n"
