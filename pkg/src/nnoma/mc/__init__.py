"""Seeded Monte-Carlo simulation of the N-NOMA CoMP system model."""
from .backend import active_backend, available_backends, get_kernel
from .sim import (MCEstimate, NetworkRealization, comp_sinr, default_window,
                  estimate_outage, noma_sinrs, sample_network)
from .streams import TrialStream

__all__ = [
    "active_backend", "available_backends", "get_kernel",
    "MCEstimate", "NetworkRealization", "comp_sinr", "noma_sinrs",
    "sample_network", "estimate_outage", "default_window", "TrialStream",
]
