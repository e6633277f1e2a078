"""Special functions, quadrature, and combinatorics behind both outage theorems."""
from .compositions import Composition, composition_count, compositions, multinomial
from .gamma import beta_fn, lower_inc_gamma, lower_inc_gamma_series
from .laplace import (laplace_derivatives, poisson_laplace_weights, scaled_tau_terms,
                      tau, tau_arctan_alpha4, tau_closed, tau_derivatives, tau_hyp2f1)
from .mixtures import (ExpMixture, chebyshev_nodes, cluster_gain_mixture,
                       coop_gain_mixture)
from .residues import ResidueTable, power_partial_fractions, residues

__all__ = [
    "Composition", "compositions", "composition_count", "multinomial",
    "beta_fn", "lower_inc_gamma", "lower_inc_gamma_series",
    "tau", "tau_closed", "tau_hyp2f1", "tau_arctan_alpha4", "tau_derivatives",
    "scaled_tau_terms", "laplace_derivatives", "poisson_laplace_weights",
    "ExpMixture", "chebyshev_nodes", "coop_gain_mixture", "cluster_gain_mixture",
    "ResidueTable", "residues", "power_partial_fractions",
]
