# Copyright (c) 2026, Erick W.R. and contributors
# For license information, please see license.txt

"""
Runtime settings.

Settings are read once from ``TEMPCAUSE_*`` environment variables and kept in
a context variable so that a caller (or a worker thread started through
``ThreadPoolExecutorWithContext``) can run with overridden values.
"""

import os
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, replace


def _env_flag(name, default):
    value = os.environ.get(name)
    if value is None:
        return default
    return value.strip().lower() in ("1", "true", "on", "yes")


def _env_int(name, default):
    value = os.environ.get(name)
    return int(value) if value not in (None, "") else default


@dataclass(frozen=True)
class Settings:
    exact_prefixes: bool = True
    max_encoding_bits: int = 6
    ln_max_n: int = 3
    workers: int = 1
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls):
        return cls(
            exact_prefixes=_env_flag("TEMPCAUSE_EXACT_PREFIXES", True),
            max_encoding_bits=_env_int("TEMPCAUSE_MAX_ENCODING_BITS", 6),
            ln_max_n=_env_int("TEMPCAUSE_LN_MAX_N", 3),
            workers=_env_int("TEMPCAUSE_WORKERS", 1),
            log_level=os.environ.get("TEMPCAUSE_LOG_LEVEL", "WARNING").upper(),
        )


conf: ContextVar[Settings] = ContextVar("tempcause_conf")


def get_settings() -> Settings:
    try:
        return conf.get()
    except LookupError:
        settings = Settings.from_env()
        conf.set(settings)
        return settings


@contextmanager
def override(**kwargs):
    """
    Run a block with some settings replaced.

    Example:
        with override(exact_prefixes=False):
            result = synthesize_guarantee(system, trace, effect)
    """
    token = conf.set(replace(get_settings(), **kwargs))
    try:
        yield conf.get()
    finally:
        conf.reset(token)
