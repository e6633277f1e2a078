"""Outage analysis and simulation of network-NOMA in downlink CoMP systems.

Base stations form a Poisson point process; several of them inside a
cooperation annulus jointly serve a cell-edge user while each also serves a
cluster NOMA user on the same resource block.  The package evaluates both
users' outage probabilities in closed form and cross-validates them with a
seeded Monte-Carlo simulator.
"""
from .errors import (ComplexityBudgetError, ConfigurationError, DegeneratePoleError,
                     GeometryError, NumericsError, ValidationError)
from .mc import MCEstimate, active_backend, estimate_outage
from .outage import (AnalyticAccuracy, OutageReport, comp_outage,
                     comp_outage_conditional, evaluate_report, noma_outage,
                     outage_sum_rate, poisson_count_pmf, turning_point)
from .params import SystemParams, build_params, sic_feasible

__version__ = "0.1.0"

__all__ = [
    "SystemParams", "build_params", "sic_feasible",
    "AnalyticAccuracy", "OutageReport", "comp_outage", "comp_outage_conditional",
    "noma_outage", "outage_sum_rate", "turning_point", "poisson_count_pmf",
    "evaluate_report", "estimate_outage", "MCEstimate", "active_backend",
    "ConfigurationError", "ValidationError", "ComplexityBudgetError",
    "DegeneratePoleError", "GeometryError", "NumericsError",
]
