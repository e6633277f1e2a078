"""Chebyshev-node exponential mixtures for composite channel gains.

A gain |h|^2 / r^alpha with Rayleigh fading and a radially uniform position
has, after Gauss-Chebyshev discretisation of the radial integral, a pdf (or
cdf complement) that is a short weighted sum of exponentials.  These mixtures
feed both outage theorems.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import ValidationError
from ..params import SystemParams

KIND_COOP_PDF = "pdf-of-coop-gain"
KIND_CLUSTER_CDF = "cdf-complement-of-cluster-gain"


def chebyshev_nodes(n: int) -> np.ndarray:
    """First-kind Chebyshev nodes theta_i = cos((2i-1) pi / (2n)), i = 1..n."""
    if n < 1:
        raise ValidationError("need at least one Chebyshev node")
    i = np.arange(1, n + 1)
    return np.cos((2 * i - 1) * math.pi / (2 * n))


@dataclass(frozen=True)
class ExpMixture:
    """Weighted exponential mixture {(w_i, rate_i)}, rates strictly increasing.

    ``weights`` are normalised so they sum to one exactly (the Chebyshev
    quadrature makes the raw sum 1 + O(1/N^2); ``raw_weight_sum`` keeps the
    pre-normalisation sum for diagnostics).  For kind ``pdf-of-coop-gain`` the
    pdf is sum w_i rate_i exp(-rate_i z); for ``cdf-complement-of-cluster-gain``
    the cdf is 1 - sum w_i exp(-rate_i z).
    """

    weights: np.ndarray
    rates: np.ndarray
    kind: str
    raw_weight_sum: float
    norm_tol: float = 1e-2

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        r = np.asarray(self.rates, dtype=float)
        order = np.argsort(r)
        w, r = w[order], r[order]
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "rates", r)
        if w.shape != r.shape or w.ndim != 1 or w.size == 0:
            raise ValidationError("mixture needs matching 1-d weights and rates")
        if not np.all(r > 0):
            raise ValidationError("mixture rates must be strictly positive")
        if not np.all(np.diff(r) > 0):
            raise ValidationError("mixture rates must be distinct")
        if np.any(w <= 0):
            raise ValidationError("mixture weights must be positive")
        if abs(self.raw_weight_sum - 1.0) > self.norm_tol and w.size >= 5:
            raise ValidationError(
                f"raw Chebyshev weight sum {self.raw_weight_sum:.6f} is off by more "
                f"than {self.norm_tol}; mixture order too small?")

    def __len__(self) -> int:
        return self.weights.size

    @property
    def terms(self):
        return tuple(zip(self.weights.tolist(), self.rates.tolist()))

    def pdf(self, z):
        """Mixture pdf (meaningful for the coop-gain kind)."""
        z = np.asarray(z, dtype=float)
        return np.sum(self.weights * self.rates
                      * np.exp(-np.multiply.outer(z, self.rates)), axis=-1)

    def cdf(self, z):
        """Mixture cdf 1 - sum w exp(-rate z) (both kinds)."""
        z = np.asarray(z, dtype=float)
        return 1.0 - np.sum(self.weights * np.exp(-np.multiply.outer(z, self.rates)), axis=-1)


def _annulus_mixture(r_in: float, r_out: float, alpha: float, n: int,
                     kind: str) -> ExpMixture:
    """Gauss-Chebyshev mixture for |h|^2/r^alpha, r area-uniform in an annulus."""
    theta = chebyshev_nodes(n)
    half_span = (r_out - r_in) / 2.0
    mid = (r_out + r_in) / 2.0
    radii = half_span * theta + mid
    rates = radii ** alpha
    weights = (math.pi / (2 * n)) * np.sqrt(1.0 - theta**2) \
        * (half_span / mid * theta + 1.0)
    raw = float(weights.sum())
    return ExpMixture(weights / raw, rates, kind, raw_weight_sum=raw)


def coop_gain_mixture(p: SystemParams, n: int) -> ExpMixture:
    """Pdf mixture of one cooperating-BS gain (position uniform in the
    cooperation annulus [R_bar, R_D])."""
    return _annulus_mixture(p.R_bar, p.R_D, p.alpha, n, KIND_COOP_PDF)


def cluster_gain_mixture(p: SystemParams, n: int) -> ExpMixture:
    """Cdf-complement mixture of one unordered cluster-user gain (position
    uniform in the disc of radius R_c)."""
    return _annulus_mixture(0.0, p.R_c, p.alpha, n, KIND_CLUSTER_CDF)
