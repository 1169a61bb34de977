"""Checks of the lottery postulates against an EQUM model.

Universally quantified conclusions are decided twice: symbolically through the
leading-term ratio of the expected utilities, and on a grid of standard
weights. The two verdicts have to agree. Existential witnesses are searched
along fixed sequences and re-verified exactly before they are reported.
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import permutations
import logging
from typing import Any, Callable, Dict, Iterator, List, Mapping, Optional, Sequence

from .const import (
    DEFAULT_DENOMINATOR_BOUND,
    DEFAULT_GRID,
    LOTTERY_POSTULATES,
    MAX_WITNESS_HALVINGS,
    POSTULATE_A1,
    POSTULATE_A2,
    POSTULATE_A2_QUAL,
    POSTULATE_A3,
    POSTULATE_A3_DOUBLEPRIME,
    POSTULATE_A3_PRIME,
)
from .exceptions import (
    ConsistencyError,
    OverridesViolation,
    PreconditionViolated,
    WitnessNotFound,
)
from .hyperreal import classify_ratio, format_rational, ratio_standard_part
from .mixture import Lottery, LotterySpace, format_lottery, grid_weights, mix
from .preference import (
    PreferenceVerdict,
    UtilityModel,
    compare_lotteries,
    expected_utility,
    overrides,
)

_LOGGER = logging.getLogger(__name__)

Comparator = Callable[[Lottery, Lottery], PreferenceVerdict]
Namer = Callable[[Any], str]


class Status(Enum):
    HOLDS = "Holds"
    FAILS = "Fails"


class Method(Enum):
    SYMBOLIC = "Symbolic"
    GRID = "GridChecked"
    BOTH = "Both"


@dataclass(frozen=True)
class PostulateReport:
    """Outcome of one postulate check.

    ``witness`` holds the weights found for existential postulates, or the
    counterexample when the postulate fails.
    """

    postulate: str
    status: Status
    method: Method
    witness: Mapping[str, Any] = field(default_factory=dict)
    detail: str = ""

    def __post_init__(self):
        if self.status is Status.FAILS and not self.witness:
            raise ValueError(f"failing report for {self.postulate} has no witness")

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS

    def format_witness(self, namer: Optional[Namer] = None) -> str:
        if not self.witness:
            return "-"
        return " ".join(
            f"{key}={_format_value(value, namer)}" for key, value in self.witness.items()
        )

    def format_line(self, namer: Optional[Namer] = None) -> str:
        return "  ".join(
            (
                self.postulate,
                self.status.value,
                self.method.value,
                self.format_witness(namer),
            )
        )


def _format_value(value: Any, namer: Optional[Namer]) -> str:
    if isinstance(value, Fraction):
        return format_rational(value)
    if namer is not None:
        return namer(value)
    if isinstance(value, Lottery):
        return f"[{format_lottery(value)}]"
    return str(value)


def _holds(postulate: str, method: Method, detail: str = "", **witness) -> PostulateReport:
    return PostulateReport(postulate, Status.HOLDS, method, witness, detail)


def _fails(postulate: str, method: Method, **witness) -> PostulateReport:
    return PostulateReport(postulate, Status.FAILS, method, witness)


def _model_comparator(m: UtilityModel) -> Comparator:
    return lambda p, q: compare_lotteries(m, p, q)


def _require_strict(m: UtilityModel, better: Lottery, worse: Lottery, what: str):
    if compare_lotteries(m, better, worse) is not PreferenceVerdict.PREFERS:
        raise PreconditionViolated(reason=f"{what} is not strictly preferred")


def farey_weights(denominator_bound: int) -> List[Fraction]:
    """Rationals in ]0,1[ with denominator at most the bound, by denominator then numerator."""
    seen = set()
    weights = []
    for denominator in range(2, denominator_bound + 1):
        for numerator in range(1, denominator):
            weight = Fraction(numerator, denominator)
            if weight not in seen:
                seen.add(weight)
                weights.append(weight)
    return weights


def halvings(start: Fraction, limit: int = MAX_WITNESS_HALVINGS) -> Iterator[Fraction]:
    """``start/2, start/4, ...`` for at most ``limit`` steps."""
    value = start
    for _ in range(limit):
        value /= 2
        yield value


def check_weak_order(
    m: UtilityModel,
    sample: Sequence[Lottery],
    compare: Optional[Comparator] = None,
) -> PostulateReport:
    """Asymmetry on every pair and negative transitivity on every triple of the sample."""
    if not sample:
        raise PreconditionViolated(reason="weak-order sample is empty")
    compare = compare or _model_comparator(m)
    verdicts: Dict[tuple, bool] = {}

    def better(i: int, j: int) -> bool:
        if (i, j) not in verdicts:
            verdicts[i, j] = compare(sample[i], sample[j]) is PreferenceVerdict.PREFERS
        return verdicts[i, j]

    indices = range(len(sample))
    for i in indices:
        for j in indices:
            if better(i, j) and better(j, i):
                return _fails(POSTULATE_A1, Method.GRID, p=sample[i], q=sample[j])
    for i in indices:
        for j in indices:
            for k in indices:
                if better(i, k) and not better(i, j) and not better(j, k):
                    return _fails(
                        POSTULATE_A1, Method.GRID, p=sample[i], q=sample[j], r=sample[k]
                    )
    return _holds(POSTULATE_A1, Method.GRID)


def check_independence_classical(
    m: UtilityModel,
    p: Lottery,
    q: Lottery,
    r: Lottery,
    grid: Sequence[Fraction],
) -> PostulateReport:
    """Classical independence for one triple.

    The mixtures differ by ``lambda * (u(p) - u(q))``, which keeps the order of
    ``u(p)``; the preference survives exactly when ``u(r)`` does not dominate
    ``u(p)``, whatever the standard weight.
    """
    _require_strict(m, p, q, "p over q")
    m.require_positive(set(p.support) | set(q.support) | set(r.support))
    symbolic = not classify_ratio(expected_utility(m, r), expected_utility(m, p)).is_infinite
    failing = [
        weight
        for weight in grid
        if compare_lotteries(m, mix(weight, p, r), mix(weight, q, r))
        is not PreferenceVerdict.PREFERS
    ]
    if grid and failing != ([] if symbolic else list(grid)):
        raise ConsistencyError(
            postulate=POSTULATE_A2,
            detail=f"symbolic {'holds' if symbolic else 'fails'}, grid failures {len(failing)}/{len(grid)}",
        )
    method = Method.BOTH if grid else Method.SYMBOLIC
    if symbolic:
        return _holds(POSTULATE_A2, method)
    weight = failing[0] if failing else Fraction(1, 2)
    return _fails(
        POSTULATE_A2,
        method,
        **{"lambda": weight, "p": p, "q": q, "r": r},
    )


def check_qual_independence(
    m: UtilityModel,
    space: LotterySpace,
    p: Lottery,
    q: Lottery,
    r: Lottery,
    grid: Sequence[Fraction],
) -> PostulateReport:
    """Independence restricted to mixing lotteries that do not override ``p``."""
    if compare_lotteries(m, p, q) is not PreferenceVerdict.PREFERS:
        return _holds(POSTULATE_A2_QUAL, Method.SYMBOLIC, "vacuous")
    if overrides(m, space, r, p):
        return _holds(POSTULATE_A2_QUAL, Method.SYMBOLIC, "vacuous")
    # not r >> p rules out an infinite ratio, and p > q keeps p off the minimum
    report = check_independence_classical(m, p, q, r, grid)
    if not report.holds:
        raise ConsistencyError(
            postulate=POSTULATE_A2_QUAL,
            detail="preference lost although the mixing lottery does not override",
        )
    return _holds(POSTULATE_A2_QUAL, report.method)


def _alpha_witness(m: UtilityModel, p: Lottery, q: Lottery, r: Lottery) -> Fraction:
    up = expected_utility(m, p)
    gamma = ratio_standard_part(up - expected_utility(m, q), up)
    for step in halvings(gamma):
        alpha = 1 - step
        if compare_lotteries(m, mix(alpha, p, r), q) is PreferenceVerdict.PREFERS:
            return alpha
    raise WitnessNotFound(parameter="alpha", attempts=MAX_WITNESS_HALVINGS)


def _beta_witness(m: UtilityModel, p: Lottery, q: Lottery, r: Lottery) -> Fraction:
    """Largest ``1/2**k`` strictly below ``delta = st((u(q) - u(r)) / (u(p) - u(r)))``.

    ``delta`` is appreciable when ``u(p) / u(q)`` is finite, and any standard
    ``beta < delta`` leaves ``q`` strictly above the mixture.
    """
    ur = expected_utility(m, r)
    delta = ratio_standard_part(expected_utility(m, q) - ur, expected_utility(m, p) - ur)
    if delta <= 0:
        raise WitnessNotFound(parameter="beta", attempts=0)
    beta = Fraction(1)
    while beta >= delta:
        beta /= 2
    if compare_lotteries(m, q, mix(beta, p, r)) is not PreferenceVerdict.PREFERS:
        raise ConsistencyError(
            postulate=POSTULATE_A3_DOUBLEPRIME,
            detail=f"beta={format_rational(beta)} below delta={format_rational(delta)} does not hold",
        )
    return beta


def check_A3_prime(m: UtilityModel, p: Lottery, q: Lottery, r: Lottery) -> PostulateReport:
    """Find ``alpha`` with ``alpha p + (1 - alpha) r > q``.

    With ``gamma`` the standard part of ``(u(p) - u(q)) / u(p)``, every
    ``alpha = 1 - gamma / 2**k`` keeps the mixture strictly above ``q``.
    """
    _require_strict(m, p, q, "p over q")
    _require_strict(m, q, r, "q over r")
    alpha = _alpha_witness(m, p, q, r)
    _LOGGER.debug("A'3 witness alpha=%s", alpha)
    return _holds(POSTULATE_A3_PRIME, Method.SYMBOLIC, alpha=alpha)


def check_A3_doubleprime(
    m: UtilityModel,
    space: LotterySpace,
    p: Lottery,
    q: Lottery,
    r: Lottery,
    vacuous_if_overridden: bool = False,
) -> PostulateReport:
    """Find ``beta`` with ``q > beta p + (1 - beta) r`` when ``p`` does not override ``q``."""
    _require_strict(m, p, q, "p over q")
    _require_strict(m, q, r, "q over r")
    if overrides(m, space, p, q):
        if vacuous_if_overridden:
            return _holds(POSTULATE_A3_DOUBLEPRIME, Method.SYMBOLIC, "vacuous")
        raise OverridesViolation(better=format_lottery(p), worse=format_lottery(q))
    beta = _beta_witness(m, p, q, r)
    _LOGGER.debug("A''3 witness beta=%s", beta)
    return _holds(POSTULATE_A3_DOUBLEPRIME, Method.SYMBOLIC, beta=beta)


def check_continuity_classical(
    m: UtilityModel,
    p: Lottery,
    q: Lottery,
    r: Lottery,
    denominator_bound: int = DEFAULT_DENOMINATOR_BOUND,
) -> PostulateReport:
    """Classical continuity: both an ``alpha`` and a ``beta`` must exist.

    The alpha half always exists. The beta half exists exactly when the ratio
    ``u(p) / u(q)`` is finite; with ``q`` strictly above ``r`` that is the same
    as ``p`` not overriding ``q``.
    """
    _require_strict(m, p, q, "p over q")
    _require_strict(m, q, r, "q over r")
    candidates = farey_weights(denominator_bound)
    alpha = next(
        (
            a
            for a in candidates
            if compare_lotteries(m, mix(a, p, r), q) is PreferenceVerdict.PREFERS
        ),
        None,
    )
    beta = next(
        (
            b
            for b in candidates
            if compare_lotteries(m, q, mix(b, p, r)) is PreferenceVerdict.PREFERS
        ),
        None,
    )
    beta_exists = not classify_ratio(expected_utility(m, p), expected_utility(m, q)).is_infinite
    if beta is not None and not beta_exists:
        raise ConsistencyError(
            postulate=POSTULATE_A3,
            detail=f"grid found beta={beta} but u(p)/u(q) is infinite",
        )
    if not beta_exists:
        return _fails(POSTULATE_A3, Method.BOTH, missing="beta", p=p, q=q, r=r)
    method = Method.BOTH
    if alpha is None:
        _LOGGER.warning(
            "No alpha with denominator <= %d; using the analytic witness", denominator_bound
        )
        alpha, method = _alpha_witness(m, p, q, r), Method.SYMBOLIC
    if beta is None:
        _LOGGER.warning(
            "No beta with denominator <= %d; using the analytic witness", denominator_bound
        )
        beta, method = _beta_witness(m, p, q, r), Method.SYMBOLIC
    return _holds(POSTULATE_A3, method, alpha=alpha, beta=beta)


def solve_indifference(m: UtilityModel, p: Lottery, q: Lottery, r: Lottery) -> Fraction:
    """The unique ``lambda`` with ``q ~ lambda p + (1 - lambda) r``."""
    m.require_positive(set(p.support) | set(q.support) | set(r.support))
    if compare_lotteries(m, q, p) is PreferenceVerdict.PREFERS:
        raise PreconditionViolated(reason="q is strictly preferred to p")
    if compare_lotteries(m, r, q) is PreferenceVerdict.PREFERS:
        raise PreconditionViolated(reason="r is strictly preferred to q")
    _require_strict(m, p, r, "p over r")
    up, uq, ur = (expected_utility(m, x) for x in (p, q, r))
    if classify_ratio(up, ur).is_infinite:
        raise OverridesViolation(better=format_lottery(p), worse=format_lottery(r))
    weight = ratio_standard_part(uq - ur, up - ur)
    if compare_lotteries(m, q, mix(weight, p, r)) is not PreferenceVerdict.INDIFFERENT:
        raise ConsistencyError(
            postulate="indifference",
            detail=f"lambda={format_rational(weight)} does not reproduce q",
        )
    return weight


def _merge_methods(methods: Sequence[Method]) -> Method:
    distinct = set(methods)
    if len(distinct) == 1:
        return distinct.pop()
    return Method.BOTH


def _aggregate(postulate: str, reports: Sequence[PostulateReport]) -> PostulateReport:
    for report in reports:
        if not report.holds:
            return report
    if not reports:
        return _holds(postulate, Method.SYMBOLIC, "vacuous")
    return _holds(postulate, _merge_methods([report.method for report in reports]))


def check_postulates(
    m: UtilityModel,
    space: LotterySpace,
    lotteries: Sequence[Lottery],
    grid: int = DEFAULT_GRID,
    denominator_bound: int = DEFAULT_DENOMINATOR_BOUND,
) -> List[PostulateReport]:
    """A1, A2, A'2, A3, A'3 and A''3 over every ordered triple of distinct sample lotteries.

    Triples outside a postulate's hypothesis are skipped; a postulate with no
    applicable triple holds vacuously. A failing postulate reports its first
    counterexample.
    """
    weights = grid_weights(grid)
    reports: Dict[str, List[PostulateReport]] = {
        name: [] for name in LOTTERY_POSTULATES if name != POSTULATE_A1
    }
    for p, q, r in permutations(lotteries, 3):
        _LOGGER.debug("Checking triple %s | %s | %s", p, q, r)
        reports[POSTULATE_A2_QUAL].append(check_qual_independence(m, space, p, q, r, weights))
        if compare_lotteries(m, p, q) is not PreferenceVerdict.PREFERS:
            continue
        reports[POSTULATE_A2].append(check_independence_classical(m, p, q, r, weights))
        if compare_lotteries(m, q, r) is not PreferenceVerdict.PREFERS:
            continue
        reports[POSTULATE_A3].append(
            check_continuity_classical(m, p, q, r, denominator_bound)
        )
        reports[POSTULATE_A3_PRIME].append(check_A3_prime(m, p, q, r))
        reports[POSTULATE_A3_DOUBLEPRIME].append(
            check_A3_doubleprime(m, space, p, q, r, vacuous_if_overridden=True)
        )
    return [check_weak_order(m, list(lotteries))] + [
        _aggregate(name, found) for name, found in reports.items()
    ]
