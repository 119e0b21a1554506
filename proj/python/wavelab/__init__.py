"""Python access to the wave-lab core.

Configurations are passed as dicts (or JSON text) in the same versioned
schema as the command-line tool.
"""

import json

from . import _core
from ._core import (
    ConfigError,
    DomainError,
    PreconditionError,
    SolverAbort,
    lambda1,
    pressure,
    relative_internal_energy,
    relative_pressure,
    verify_suites,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "PreconditionError",
    "SolverAbort",
    "chart",
    "composite",
    "lambda1",
    "load_config",
    "normalize_config",
    "pressure",
    "profiles",
    "relative_internal_energy",
    "relative_pressure",
    "simulate",
    "verify",
    "verify_suites",
]


def _text(config):
    return config if isinstance(config, str) else json.dumps(config)


def load_config(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def normalize_config(config):
    return json.loads(_core.normalize_config(_text(config)))


def chart(config):
    return json.loads(_core.chart(_text(config)))


def profiles(config):
    return _core.profiles(_text(config))


def composite(config, t, xi):
    return _core.composite(_text(config), float(t), list(map(float, xi)))


def simulate(config):
    return _core.simulate(_text(config))


def verify(suite, config, seed=None):
    cfg = normalize_config(config)
    return json.loads(_core.verify(suite, _text(config), cfg["seed"] if seed is None else int(seed)))
