"""
Runtime configuration.

Values are read from the environment each time they are requested so that
tests and the CLI can override them without reloading modules. Functions
that consume a setting also accept an explicit keyword argument, which wins.
"""

import os
from typing import Optional

from .exceptions import ConfigError

DEFAULT_BRUTE_BUDGET = 10_000_000
DEFAULT_AXIOM_CHECK_LIMIT = 81
DEFAULT_FUZZ_SEED = 0
AXIOM_SAMPLE_SIZE = 100_000

BRUTE_BUDGET_ENV = "HKCOLOR_BRUTE_BUDGET"
AXIOM_CHECK_LIMIT_ENV = "HKCOLOR_AXIOM_CHECK_LIMIT"
FUZZ_SEED_ENV = "HKCOLOR_FUZZ_SEED"

# Structure size limits
MAX_FIELD_ORDER = 2 ** 16
MAX_GROUP_ORDER = 256
# Fields up to this order get the exhaustive axiom check when built
FIELD_AXIOM_CHECK_ORDER = 64


def _read_int(name: str, default: int) -> int:
    """
    A non-negative integer from the environment; unset or blank means default.

    Raises:
        ConfigError: If the value is not a non-negative integer
    """
    raw = os.environ.get(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw.strip().replace("_", ""))
    except ValueError:
        raise ConfigError(name, raw, "expected a non-negative integer")
    if value < 0:
        raise ConfigError(name, raw, "must not be negative")
    return value


def brute_force_budget(override: Optional[int] = None) -> int:
    """Maximum number of branch assignments a brute-force search may try."""
    if override is not None:
        return override
    return _read_int(BRUTE_BUDGET_ENV, DEFAULT_BRUTE_BUDGET)


def axiom_check_limit() -> int:
    """Largest quandle order verified exhaustively at family construction."""
    return _read_int(AXIOM_CHECK_LIMIT_ENV, DEFAULT_AXIOM_CHECK_LIMIT)


def fuzz_seed(override: Optional[int] = None) -> int:
    if override is not None:
        return override
    return _read_int(FUZZ_SEED_ENV, DEFAULT_FUZZ_SEED)
