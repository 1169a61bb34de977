"""Expected Qualitative Utility Maximization with exact infinitesimal arithmetic."""
from .exceptions import EqumError
from .hyperreal import (
    EPSILON,
    ONE,
    ZERO,
    Hyperreal,
    Ordering,
    QualOrdering,
    RatioClass,
    RatioKind,
    classify_ratio,
    compare_total,
    format_literal,
    order_of,
    parse_literal,
    qual_compare,
    standard_part,
)
from .mixture import Act, Lottery, LotterySpace, constant_act, mix, mix_act
from .postulates import (
    Method,
    PostulateReport,
    Status,
    check_A3_doubleprime,
    check_A3_prime,
    check_continuity_classical,
    check_independence_classical,
    check_postulates,
    check_qual_independence,
    check_weak_order,
    solve_indifference,
)
from .preference import (
    PreferenceVerdict,
    UtilityModel,
    act_utility,
    compare_lotteries,
    expected_utility,
    maximin_model,
    maximin_oracle,
    overrides,
    rank_lotteries,
)
from .problem import ProblemFile, format_problem, parse_problem
from .representation import (
    CanonicalClass,
    CanonicalModel,
    EquivalenceReport,
    asymp_classes,
    canonicalize,
    verify_equivalence,
)
from .subjective import (
    ActPreferenceOracle,
    ProbabilityMeasure,
    check_A4,
    check_A5,
    extract_probabilities,
    is_null,
    uniqueness_check,
)
