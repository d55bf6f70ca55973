# File: config/settings.py

import logging
import os

logger = logging.getLogger(__name__)

VERSION = "0.1.0"

# Values set in-process (by the CLI) take precedence over the environment.
_overrides = {}


def configure(**values):
    """Sets in-process overrides; a value of None removes the override."""
    for name, value in values.items():
        if value is None:
            _overrides.pop(name, None)
        else:
            _overrides[name] = value


def reset():
    """Clears every in-process override."""
    _overrides.clear()


def _get_int(name, env_var, default):
    if name in _overrides:
        return int(_overrides[name])
    raw = os.environ.get(env_var, "")
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning("Ignoring malformed %s=%r; using default %d.", env_var, raw, default)
        return default


def get_enumeration_cap():
    """Fetches the largest n for which filters are enumerated symbol by symbol."""
    return _get_int("enumeration_cap", "TUTTEFRAME_ENUM_CAP", 20)


def get_max_direct_n():
    """Fetches the largest n accepted by the direct corank-nullity route."""
    return _get_int("max_direct_n", "TUTTEFRAME_MAX_DIRECT_N", 24)


def get_flat_cap():
    """Fetches the maximum number of flats a lattice enumeration may produce."""
    return _get_int("flat_cap", "TUTTEFRAME_FLAT_CAP", 50000)


def get_memo_cap():
    """Fetches the maximum number of deletion-contraction memo entries."""
    return _get_int("memo_cap", "TUTTEFRAME_MEMO_CAP", 1_000_000)


def get_perm_cap():
    """Fetches the largest n for which all n! permutations are walked."""
    return _get_int("perm_cap", "TUTTEFRAME_PERM_CAP", 8)


def get_threads():
    """Fetches the worker count for subset reductions."""
    return max(1, _get_int("threads", "TUTTEFRAME_THREADS", os.cpu_count() or 1))


def get_cache_dir():
    """Fetches the result cache directory from overrides or environment variables."""
    if "cache_dir" in _overrides:
        return str(_overrides["cache_dir"])
    return os.environ.get("TUTTEFRAME_CACHE", "") or os.path.join(
        os.path.expanduser("~"), ".cache", "tutteframe"
    )


def get_log_level():
    """Fetches the logging level name."""
    if "log_level" in _overrides:
        return str(_overrides["log_level"]).upper()
    return os.environ.get("TUTTEFRAME_LOG_LEVEL", "WARNING").upper()
