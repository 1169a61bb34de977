from fractions import Fraction

CONF_COMMAND = "command"
CONF_FILE = "file"
CONF_GRID = "grid"
CONF_DENOMINATOR_BOUND = "denominator_bound"
CONF_DEBUG_LOGGING = "debug_logging"

COMMAND_COMPARE = "compare"
COMMAND_RANK = "rank"
COMMAND_CHECK_POSTULATES = "check-postulates"
COMMAND_CANONICALIZE = "canonicalize"
COMMAND_SUBJECTIVE = "subjective"
COMMAND_MAXIMIN_DEMO = "maximin-demo"
COMMANDS = [
    COMMAND_COMPARE,
    COMMAND_RANK,
    COMMAND_CHECK_POSTULATES,
    COMMAND_CANONICALIZE,
    COMMAND_SUBJECTIVE,
    COMMAND_MAXIMIN_DEMO,
]

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_PARSE_ERROR = 2

# lambda grid {1/k, ..., (k-1)/k}
DEFAULT_GRID = 8
DEFAULT_DENOMINATOR_BOUND = 64
DEFAULT_MIXTURE_DENOMINATOR = 4
DEFAULT_PERTURBATION = Fraction(1, 100)
MAX_WITNESS_HALVINGS = 64

POSTULATE_A1 = "A1"
POSTULATE_A2 = "A2"
POSTULATE_A2_QUAL = "A'2"
POSTULATE_A3 = "A3"
POSTULATE_A3_PRIME = "A'3"
POSTULATE_A3_DOUBLEPRIME = "A''3"
POSTULATE_A4 = "A'4"
POSTULATE_A5 = "A'5"
LOTTERY_POSTULATES = [
    POSTULATE_A1,
    POSTULATE_A2,
    POSTULATE_A2_QUAL,
    POSTULATE_A3,
    POSTULATE_A3_PRIME,
    POSTULATE_A3_DOUBLEPRIME,
]

# problem file keywords
KEYWORD_OUTCOME = "outcome"
KEYWORD_UTILITY = "utility"
KEYWORD_LOTTERY = "lottery"
KEYWORD_STATE = "state"
KEYWORD_ACT = "act"
KEYWORD_MEASURE = "measure"
KEYWORD_QUERY = "query"
COMMENT_PREFIX = "#"
