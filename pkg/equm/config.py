"""Validation of command options."""
from typing import Any, Dict

import voluptuous as vol

from .const import (
    COMMANDS,
    CONF_COMMAND,
    CONF_DEBUG_LOGGING,
    CONF_DENOMINATOR_BOUND,
    CONF_FILE,
    CONF_GRID,
    DEFAULT_DENOMINATOR_BOUND,
    DEFAULT_GRID,
)

OPTIONS_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_COMMAND): vol.In(COMMANDS),
        vol.Optional(CONF_FILE): str,
        vol.Optional(CONF_GRID, default=DEFAULT_GRID): vol.All(int, vol.Range(min=2)),
        vol.Optional(CONF_DENOMINATOR_BOUND, default=DEFAULT_DENOMINATOR_BOUND): vol.All(
            int, vol.Range(min=2)
        ),
        vol.Optional(CONF_DEBUG_LOGGING, default=False): bool,
    }
)


def validate_options(options: Dict[str, Any]) -> Dict[str, Any]:
    """Apply defaults and reject out-of-range values; raises ``vol.Invalid``."""
    return OPTIONS_SCHEMA({k: v for k, v in options.items() if v is not None})
