"""
pyfabgupta

The Fabrykowski-Gupta group as a self-similar group of ternary tree
automorphisms: normal forms, ball enumeration, combinatorics of the set I,
growth bounds and torsion.
"""

from importlib.metadata import version

# ---------------------------------------------------------------------------
# Package version (single source of truth: pyproject.toml)
# ---------------------------------------------------------------------------

__version__ = version("pyfabgupta")


# ---------------------------------------------------------------------------
# Core
# ---------------------------------------------------------------------------

from .errors import FabGuptaError
from .tree_group import (
    NormalWord,
    act,
    decompose,
    equal,
    format_word,
    inverse,
    key,
    multiply,
    normalize,
    portrait,
    psi,
    section,
)


# ---------------------------------------------------------------------------
# Enumeration, combinatorics, bounds, torsion
# ---------------------------------------------------------------------------

from .metric_enum import BallTable, GrowthSeries, enumerate_ball, growth, triple_inject
from .bounds import BoundParams, find_N, lower_bound
from .torsion import order, infinite_order_certificate


# ---------------------------------------------------------------------------
# Public API
# ---------------------------------------------------------------------------

__all__ = [
    "__version__",
    "FabGuptaError",
    "NormalWord",
    "act",
    "decompose",
    "equal",
    "format_word",
    "inverse",
    "key",
    "multiply",
    "normalize",
    "portrait",
    "psi",
    "section",
    "BallTable",
    "GrowthSeries",
    "enumerate_ball",
    "growth",
    "triple_inject",
    "BoundParams",
    "find_N",
    "lower_bound",
    "order",
    "infinite_order_certificate",
]
