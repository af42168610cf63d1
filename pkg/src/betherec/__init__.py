"""Exact Bethe vectors for gl_n and o_{2n+1} spin chains via recurrence relations."""

from .algebra import AlgebraSpec, Family, gl, o_odd
from .bethe import BetheBuilder
from .chain import ChainModel
from .colored import ColoredSets
from .scalars import Rat, rat, rat_str
from .suite import SUITES, SuiteConfig, run_suite

__all__ = [
    "AlgebraSpec",
    "BetheBuilder",
    "ChainModel",
    "ColoredSets",
    "Family",
    "Rat",
    "SUITES",
    "SuiteConfig",
    "gl",
    "o_odd",
    "rat",
    "rat_str",
    "run_suite",
]
