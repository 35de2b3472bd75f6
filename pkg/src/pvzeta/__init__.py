"""Numerical verification of local zeta functional equations,
homogeneous-distribution regularization, operator symbols of group
convolutions, and the Euler-operator heat semigroup on prehomogeneous
vector spaces."""

from . import cli, funceq, heatflow, homog, phspace, quad, report, special, symbolkern, testfn, zeta
from .errors import AccuracyError, ConfigError, DomainError, NonConvergence, PoleError, PVZetaError
from .report import CheckReport, sort_reports

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "CheckReport",
    "ConfigError",
    "DomainError",
    "NonConvergence",
    "PVZetaError",
    "PoleError",
    "cli",
    "funceq",
    "heatflow",
    "homog",
    "phspace",
    "quad",
    "report",
    "sort_reports",
    "special",
    "symbolkern",
    "testfn",
    "zeta",
]
