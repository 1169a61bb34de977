"""Errors raised by the EQUM engine.

Messages live in ``translations/en.json`` and are keyed by ``translation_key``.
"""
from functools import lru_cache
import json
from pathlib import Path
from typing import Any, Dict, Optional

from .const import EXIT_DOMAIN_ERROR, EXIT_PARSE_ERROR

TRANSLATIONS = Path(__file__).parent / "translations" / "en.json"


@lru_cache(maxsize=None)
def _messages() -> Dict[str, Dict[str, str]]:
    with TRANSLATIONS.open(encoding="utf-8") as handle:
        return json.load(handle)["exceptions"]


class EqumError(Exception):
    """Base class for all domain errors."""

    translation_key = "precondition_violated"
    exit_code = EXIT_DOMAIN_ERROR

    def __init__(self, translation_key: Optional[str] = None, **placeholders: Any):
        if translation_key is not None:
            self.translation_key = translation_key
        self.translation_placeholders = {
            key: str(value) for key, value in placeholders.items()
        }
        super().__init__(self.message)

    @property
    def message(self) -> str:
        template = _messages().get(self.translation_key, {}).get("message")
        if template is None:
            return f"{self.translation_key}: {self.translation_placeholders}"
        try:
            return template.format(**self.translation_placeholders)
        except KeyError:
            return template


class ParseError(EqumError):
    """Malformed literal or problem file."""

    translation_key = "parse_error"
    exit_code = EXIT_PARSE_ERROR

    def __init__(
        self,
        message: str,
        position: Optional[int] = None,
        line: Optional[int] = None,
        column: Optional[int] = None,
    ):
        self.reason = message
        self.position = position
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column or 1}: {message}"
        elif position is not None:
            message = f"position {position}: {message}"
        super().__init__(message=message)


class ResolutionError(EqumError):
    translation_key = "resolution_error"

    def __init__(self, message: str, line: Optional[int] = None):
        self.reason = message
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message=message)


class ZeroArgument(EqumError, ValueError):
    translation_key = "zero_argument"


class InfiniteArgument(EqumError, ValueError):
    translation_key = "infinite_argument"


class ZeroDivisor(EqumError, ZeroDivisionError):
    translation_key = "zero_divisor"


class WeightOutOfRange(EqumError, ValueError):
    translation_key = "weight_out_of_range"


class StateMismatch(EqumError):
    translation_key = "state_mismatch"


class EmptyStateSet(EqumError):
    translation_key = "empty_state_set"


class InvalidLottery(EqumError, ValueError):
    translation_key = "invalid_lottery"


class InvalidMeasure(EqumError, ValueError):
    translation_key = "invalid_measure"


class UnknownOutcome(EqumError, KeyError):
    translation_key = "unknown_outcome"

    def __str__(self) -> str:
        return self.message


class UnknownState(EqumError, KeyError):
    translation_key = "unknown_state"

    def __str__(self) -> str:
        return self.message


class UnsupportedSupport(EqumError):
    translation_key = "unsupported_support"


class PreconditionViolated(EqumError):
    translation_key = "precondition_violated"


class NonPositiveModel(PreconditionViolated):
    translation_key = "non_positive_model"


class OverridesViolation(PreconditionViolated):
    translation_key = "overrides_violation"


class TrivialRelation(EqumError):
    translation_key = "trivial_relation"


class ExtractionFailure(EqumError):
    translation_key = "extraction_failure"


class WitnessNotFound(EqumError):
    translation_key = "witness_not_found"


class ConsistencyError(EqumError):
    translation_key = "consistency_error"
