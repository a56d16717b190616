import logging
import os
from dataclasses import dataclass, replace

from dotenv import load_dotenv

from algebraic_degree.field_arith import DEFAULT_PRIME

# ALGEBRAIC_DEGREE.CENSUS.PRIME=2147483647
PREFIX = "ALGEBRAIC_DEGREE."


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class Settings:
    prime: int = DEFAULT_PRIME
    budget: float = 60.0
    seed: int = 1338
    retries: int = 3
    workers: int = 1
    log_level: str = "WARNING"
    storage: str = "./tmp/"


_KEYS = {
    "CENSUS.PRIME": ("prime", int),
    "CENSUS.BUDGET": ("budget", float),
    "CENSUS.SEED": ("seed", int),
    "CENSUS.RETRIES": ("retries", int),
    "CENSUS.WORKERS": ("workers", int),
    "LOG.LEVEL": ("log_level", str),
    "APP.STORAGE": ("storage", str),
}


def load_settings(environ=None, dotenv=True):
    if dotenv:
        load_dotenv()
    if environ is None:
        environ = os.environ
    values = {}
    for key, val in environ.items():
        if not key.startswith(PREFIX):
            continue
        name = key[len(PREFIX):]
        if name not in _KEYS:
            continue
        attr, cast = _KEYS[name]
        try:
            values[attr] = cast(val)
        except ValueError:
            raise ConfigError("{0}={1!r} is not a valid {2}".format(key, val, cast.__name__)) from None
    settings = replace(Settings(), **values)
    if not isinstance(logging.getLevelName(settings.log_level.upper()), int):
        raise ConfigError("Unknown log level {0!r}".format(settings.log_level))
    return settings
