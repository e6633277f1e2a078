"""Partial-fraction machinery for products and powers of exponential mixtures.

The Laplace transform of one mixture gain is q1(s) = sum_i w_i d_i/(d_i + s).
Sums of such gains have transforms that are products q(s) = prod (w d/(d+s))^k
with repeated poles; their inverse transforms need the partial-fraction
coefficients at every pole.  Two entry points:

* :func:`residues` -- coefficients for one composition (one product term),
  via the logarithmic-derivative Taylor recursion, not symbolic derivatives.
* :func:`power_partial_fractions` -- scaled coefficients for the full m-th
  power q1(s)^m, which equals the multinomial-weighted sum of all composition
  products and collapses their enumeration.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List

import numpy as np

from ..errors import DegeneratePoleError, ValidationError
from .compositions import Composition
from .mixtures import ExpMixture


def _check_distinct(rates: np.ndarray) -> None:
    gaps = np.diff(rates) / rates[1:]
    if gaps.size and gaps.min() < 1e-12:
        raise DegeneratePoleError("mixture rates are (nearly) coincident; "
                                  "partial fractions are degenerate")


def _exp_series(logcoeffs: np.ndarray, order: int) -> np.ndarray:
    """Taylor coefficients of exp(sum_q b_q t^q) up to t^(order-1).

    ``logcoeffs[q-1]`` holds b_q.  Standard recurrence e_i = (1/i) sum q b_q e_{i-q}.
    """
    e = np.zeros(order)
    e[0] = 1.0
    for i in range(1, order):
        qs = np.arange(1, i + 1)
        e[i] = float(np.dot(qs * logcoeffs[:i], e[i - 1::-1])) / i
    return e


@dataclass(frozen=True)
class ResidueTable:
    """Partial-fraction coefficients of q(s) = prod_n (w_n d_n/(d_n+s))^{k_n}.

    ``coeffs[n][i]`` is A_i at pole -d_n, i = 0..k_n-1, so that
    q(s) = sum_n sum_i A_i / (s + d_n)^{k_n - i}.
    """

    composition: Composition
    mixture: ExpMixture
    coeffs: Dict[int, np.ndarray]

    def reconstruct(self, s) -> np.ndarray:
        """Evaluate the partial-fraction form at abscissae ``s``."""
        s = np.asarray(s, dtype=float)
        out = np.zeros_like(s)
        d = self.mixture.rates
        for n, a in self.coeffs.items():
            k_n = self.composition.parts[n]
            for i, a_i in enumerate(a):
                out = out + a_i / (s + d[n]) ** (k_n - i)
        return out

    def direct(self, s) -> np.ndarray:
        """Evaluate q(s) from its product definition (log-space)."""
        s = np.asarray(s, dtype=float)
        w, d = self.mixture.weights, self.mixture.rates
        logq = np.zeros_like(s)
        for n, k_n in enumerate(self.composition.parts):
            if k_n:
                logq = logq + k_n * (np.log(w[n] * d[n]) - np.log(d[n] + s))
        return np.exp(logq)


def residues(comp: Composition, mix: ExpMixture) -> ResidueTable:
    """Exact partial-fraction coefficients for one composition.

    For pole n with multiplicity k_n, the A_i are the Taylor coefficients of
    h(s) = (s+d_n)^{k_n} q(s) at s = -d_n, obtained from the Taylor series of
    log h (whose derivatives are simple pole sums) and the exp recurrence.
    """
    w, d = mix.weights, mix.rates
    if len(comp.parts) != len(mix):
        raise ValidationError("composition length must match mixture size")
    _check_distinct(d)
    log_wd = np.log(w * d)
    coeffs: Dict[int, np.ndarray] = {}
    for n, k_n in enumerate(comp.parts):
        if k_n == 0:
            continue
        delta = np.delete(d - d[n], n)
        k_other = np.delete(np.array(comp.parts, dtype=float), n)
        # log |h(-d_n)| and its sign
        log_h0 = float(np.dot(comp.parts, log_wd)) \
            - float(np.dot(k_other, np.log(np.abs(delta))))
        sign = 1.0 if (int(np.sum(k_other[delta < 0])) % 2 == 0) else -1.0
        # Taylor coefficients of log h: b_q = sum_j k_j (-1)^q / (q delta_j^q)
        b = np.empty(k_n - 1)
        inv = 1.0 / delta
        powed = np.ones_like(delta)
        for q in range(1, k_n):
            powed = powed * inv
            b[q - 1] = (-1) ** q * float(np.dot(k_other, powed)) / q
        e = _exp_series(b, k_n)
        coeffs[n] = sign * math.exp(log_h0) * e
    return ResidueTable(comp, mix, coeffs)


def power_partial_fractions(mix: ExpMixture, m: int) -> List[np.ndarray]:
    """Scaled partial-fraction coefficients of q1(s)^m, q1 = sum w d/(d+s).

    Returns per pole n an array b of length m such that the coefficient of
    1/(d_n+s)^v in q1(s)^m, divided by d_n^v, equals w_n^m * b[m-v].  The
    m-th power equals the multinomial sum over all compositions of m, so this
    replaces streaming ~C(m+N-1, N-1) compositions with O(N m^2) arithmetic.

    Stable in float64 through the sizes this model needs (coefficients are
    large but computed to ~1e-13 relative accuracy by the power recurrence).
    """
    if m < 1:
        raise ValidationError("need m >= 1")
    w, d = mix.weights, mix.rates
    _check_distinct(d)
    wd = w * d
    tables: List[np.ndarray] = []
    for n in range(len(mix)):
        ratio = np.delete(wd, n) / wd[n]
        dn_over_delta = d[n] / np.delete(d - d[n], n)
        # phi_q: Taylor coefficients of psi(t)/psi(0) in t/d_n, where
        # psi(t) = (d_n+s) q1(s) at s = -d_n + t
        phi = np.empty(max(m - 1, 0))
        powed = np.ones_like(dn_over_delta)
        for q in range(1, m):
            powed = powed * dn_over_delta
            phi[q - 1] = (-1) ** (q - 1) * float(np.dot(ratio, powed))
        # J.C.P. Miller recurrence for (1 + sum phi_q t^q)^m
        b = np.zeros(m)
        b[0] = 1.0
        for p in range(1, m):
            qs = np.arange(1, p + 1)
            b[p] = float(np.dot(((m + 1) * qs - p) * phi[:p], b[p - 1::-1])) / p
        tables.append(b)
    return tables
