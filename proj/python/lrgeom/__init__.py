"""Exact verification of connections on Lie-Rinehart algebras."""

import json

from . import _core
from ._core import (
    DomainError,
    ParseError,
    ScenarioError,
    __version__,
    cli,
    curvature,
    example_scenario,
    list_examples,
    normal_form,
    normalize_scenario,
    solve_levi_civita,
)

__all__ = [
    "DomainError",
    "ParseError",
    "ScenarioError",
    "__version__",
    "cli",
    "curvature",
    "example_scenario",
    "list_examples",
    "normal_form",
    "normalize_scenario",
    "run_example",
    "run_scenario",
    "solve_levi_civita",
]


def run_example(name, tasks=(), threads=1):
    """Run a built-in example and return the report as a dict."""
    return json.loads(_core.run_example(name, list(tasks), threads))


def run_scenario(scenario, tasks=(), threads=1, order="grevlex"):
    """Run a scenario given as JSON text or a dict and return the report as a dict."""
    text = scenario if isinstance(scenario, str) else json.dumps(scenario)
    return json.loads(_core.run_scenario(text, list(tasks), threads, order))
