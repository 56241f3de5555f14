"""Environment-driven defaults.

Values are read from the process environment, after loading a ``.env`` file
if one exists in the working directory:

- ``CHANCE_SPLIT_JOBS``: worker processes used by the fuzzer (default 1)
- ``CHANCE_SPLIT_SEED``: default seed for generators and fuzzing
- ``CHANCE_SPLIT_LOG_LEVEL``: logging level name for the CLI
"""

import os
import logging

from dotenv import load_dotenv

from src.errors import ConfigError

# Load environment variables
load_dotenv()

DEFAULT_SEED = 20240521
DEFAULT_JOBS = 1
DEFAULT_LOG_LEVEL = 'WARNING'


def _read_int(name, default, minimum=None):
    raw = os.getenv(name)
    if raw is None or raw.strip() == '':
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}")
    if minimum is not None and value < minimum:
        raise ConfigError(f"{name} must be at least {minimum}, got {value}")
    return value


def default_jobs():
    """Number of fuzzing worker processes"""
    return _read_int('CHANCE_SPLIT_JOBS', DEFAULT_JOBS, minimum=1)


def default_seed():
    """Seed used when none is given on the command line"""
    return _read_int('CHANCE_SPLIT_SEED', DEFAULT_SEED, minimum=0)


def log_level():
    """Numeric logging level from CHANCE_SPLIT_LOG_LEVEL"""
    name = os.getenv('CHANCE_SPLIT_LOG_LEVEL', DEFAULT_LOG_LEVEL).strip().upper()
    level = logging.getLevelName(name)
    if not isinstance(level, int):
        raise ConfigError(f"CHANCE_SPLIT_LOG_LEVEL is not a logging level: {name!r}")
    return level
