"""Adaptive L1 time stepping for multiterm time-fractional problems."""

import json

from ._core import (
    ConfigError,
    DomainError,
    Error,
    EvaluationError,
    ExponentUndefinedError,
    OutOfRangeError,
    caputo_exponential_barrier,
    f_kernel,
    gamma,
    gauss_2f1,
    graded_mesh,
    homogeneous_solution,
    ml_two_param,
    mml_contour,
    mml_series,
    rgamma,
    rho,
    uniform_mesh,
)
from . import _core

__all__ = [
    "ConfigError",
    "DomainError",
    "Error",
    "EvaluationError",
    "ExponentUndefinedError",
    "OutOfRangeError",
    "caputo_exponential_barrier",
    "default_config",
    "f_kernel",
    "gamma",
    "gauss_2f1",
    "graded_mesh",
    "homogeneous_solution",
    "ml_two_param",
    "mml_contour",
    "mml_series",
    "rgamma",
    "rho",
    "run",
    "solve",
    "uniform_mesh",
]


def default_config():
    """The default run configuration as a dict."""
    return json.loads(_core.default_config_json())


def run(**config):
    """Run one experiment; keys follow the JSON run configuration.

    >>> report = run(example=1, alpha=0.4, tol=1e-2, reference_scale=4)
    """
    return _core.run_json(json.dumps(config))


def solve(points, **config):
    """L1 solution of the configured example on a mesh: (times, values)."""
    return _core.solve_json(json.dumps(config), [float(t) for t in points])
