"""Closed-form outage evaluators: CoMP user, NOMA user, turning point, sum rates.

CoMP user
    P0 = sum_m Pr(M = m) P_{0,m}, where M ~ Poisson(lambda_c S_C) counts
    cooperating BSs and P_{0,m} averages the cdf of the m-BS composite gain
    against the out-of-cooperation interference via Laplace-functional
    derivatives.  The composite-gain cdf is a multinomial sum over integer
    compositions of m with repeated-pole partial fractions; equivalently (and
    enormously cheaper) the partial fractions of the m-th power of the
    single-gain transform.  Both routes are implemented and agree; the power
    route is the default.

NOMA user
    P_i expands the K-th power of the cluster-gain cdf into compositions and
    integrates the conditional interference Laplace transform over the
    serving-BS position (whole plane minus the CoMP exclusion disc).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy import integrate

from .errors import ComplexityBudgetError, GeometryError, ValidationError
from .params import SystemParams, sic_feasible
from .specfun import (beta_fn, composition_count, compositions, coop_gain_mixture,
                      cluster_gain_mixture, poisson_laplace_weights,
                      power_partial_fractions, residues)
from .specfun.laplace import QUAD_OPTS
from .specfun.mixtures import ExpMixture


@dataclass(frozen=True)
class AnalyticAccuracy:
    """Truncation and quadrature knobs.

    ``m_a=None`` resolves to ceil(mean + 6 sqrt(mean)) so the Poisson tail is
    far below 1e-4.  ``k_a`` truncates the incomplete-gamma series after
    k_a+1 terms; ``k_a=None`` uses the exact integer-order closed form (the
    infinite-series limit), which stays accurate at all SNR/threshold scales.
    """

    n: int = 10                    # Chebyshev mixture order
    m_a: Optional[int] = None      # Poisson count truncation (None = auto)
    k_a: Optional[int] = 5         # gamma-series terms beyond the first (None = exact)
    quad_points: int = 64          # outer quadrature order for the NOMA theorem
    composition_budget: int = 2_000_000  # enumeration guard (enumerate route only)

    def __post_init__(self):
        if self.n < 1 or self.quad_points < 1:
            raise ValidationError("accuracy knobs must be >= 1")
        if self.m_a is not None and self.m_a < 1:
            raise ValidationError("m_a must be >= 1 or None")
        if self.k_a is not None and self.k_a < 1:
            raise ValidationError("k_a must be >= 1 or None")

    def resolve_m_a(self, p: SystemParams) -> int:
        if self.m_a is not None:
            return self.m_a
        mean = p.lambda_c * p.S_C
        return max(1, math.ceil(mean + 6.0 * math.sqrt(mean)))


def poisson_count_pmf(m: int, p: SystemParams) -> float:
    """Pr(M = m): Poisson with mean lambda_c * S_C (BS count in the annulus)."""
    if m < 0:
        raise ValidationError("m must be nonnegative")
    mean = p.lambda_c * p.S_C
    if mean == 0:
        return 1.0 if m == 0 else 0.0
    return math.exp(m * math.log(mean) - mean - math.lgamma(m + 1))


def turning_point(eps0: float, epsi: float) -> float:
    """beta0^2 at which the NOMA user's binding SINR constraint switches branch:
    (eps0 + epsi*eps0) / (eps0 + epsi*eps0 + epsi)."""
    if eps0 <= 0 or epsi <= 0:
        raise ValidationError("thresholds must be positive")
    return (eps0 + epsi * eps0) / (eps0 + epsi * eps0 + epsi)


# --------------------------------------------------------------------------
# CoMP user (conditional and total)
# --------------------------------------------------------------------------

class _GammaSeriesTables:
    """Per-pole prefix sums of the Poisson-Laplace weights Lambda_j.

    S_n(v) = E[gamma(v, mu_n (I + 1/rho))]/Gamma(v) truncated per ``k_a``:
    the exact value is 1 - sum_{j<v} Lambda_j; the k_a-truncated series keeps
    the window sum_{j=v}^{v+k_a} Lambda_j.
    """

    def __init__(self, p: SystemParams, mix: ExpMixture, m_max: int,
                 k_a: Optional[int]):
        beta = p.eps0 / (p.beta0_sq - p.beta1_sq * p.eps0)
        self.k_a = k_a
        self.mu = mix.rates * beta
        jmax = (m_max - 1) if k_a is None else (m_max + k_a)
        self.prefix = []
        for mu_n in self.mu:
            lam_j = poisson_laplace_weights(mu_n, p, jmax)
            self.prefix.append(np.concatenate(([0.0], np.cumsum(lam_j))))

    def s_values(self, n: int, m: int) -> np.ndarray:
        """S_n(v) for v = 1..m.  prefix[j] = sum_{i<j} Lambda_i."""
        pre = self.prefix[n]
        vs = np.arange(1, m + 1)
        if self.k_a is None:
            return 1.0 - pre[vs]                   # 1 - sum_{j <= v-1}
        return pre[vs + self.k_a + 1] - pre[vs]    # sum_{j=v}^{v+k_a}

    def series_remainder(self, n: int, m: int) -> np.ndarray:
        """Per-v mass missing beyond the k_a window (0 in exact mode)."""
        if self.k_a is None:
            return np.zeros(m)
        pre = self.prefix[n]
        vs = np.arange(1, m + 1)
        return 1.0 - pre[vs + self.k_a + 1]


def comp_outage_conditional(m: int, p: SystemParams, acc: AnalyticAccuracy,
                            mixture: ExpMixture = None, method: str = "auto",
                            _tables: _GammaSeriesTables = None) -> float:
    """Outage probability of the CoMP user given m cooperating BSs.

    m = 0 has no serving BS and returns 1.  Requires sic_feasible(p); the
    caller short-circuits to 1 otherwise.  ``method``:

    * ``"collapsed"`` (the ``"auto"`` default): partial fractions of the m-th
      power of the gain transform -- numerically identical to the composition
      sum, cost O(N m^2).
    * ``"enumerate"``: stream every composition of m into N parts with its
      multinomial and residue table; raises ComplexityBudgetError above
      ``acc.composition_budget`` compositions.
    """
    if m < 0:
        raise ValidationError("m must be nonnegative")
    if not sic_feasible(p):
        raise ValidationError("comp_outage_conditional requires beta0^2 > beta1^2*eps0")
    if m == 0:
        return 1.0
    mix = mixture if mixture is not None else coop_gain_mixture(p, acc.n)
    tables = _tables if _tables is not None else _GammaSeriesTables(p, mix, m, acc.k_a)
    w, d = mix.weights, mix.rates

    if method in ("auto", "collapsed"):
        btabs = power_partial_fractions(mix, m)
        total = 0.0
        for n in range(len(mix)):
            s_vals = tables.s_values(n, m)
            total += w[n] ** m * float(np.dot(btabs[n][::-1], s_vals))
    elif method == "enumerate":
        n_comps = composition_count(m, len(mix))
        if n_comps > acc.composition_budget:
            raise ComplexityBudgetError(
                f"{n_comps} compositions of m={m} into N={len(mix)} parts exceed "
                f"the budget {acc.composition_budget}; reduce N or M_A, or use "
                "the collapsed method")
        total = 0.0
        s_all = [tables.s_values(n, m) for n in range(len(mix))]
        for comp in compositions(m, len(mix)):
            table = residues(comp, mix)
            term = 0.0
            for n, a_coeffs in table.coeffs.items():
                k_n = comp.parts[n]
                for i, a_i in enumerate(a_coeffs):
                    v = k_n - i
                    term += a_i / d[n] ** v * s_all[n][v - 1]
            total += comp.multinomial * term
    else:
        raise ValidationError(f"unknown method {method!r}")
    return min(max(total, 0.0), 1.0)


@dataclass(frozen=True)
class CompOutageResult:
    p0: float                 # clamped outage probability
    m_a: int                  # Poisson truncation actually used
    poisson_tail: float       # Pr(M > m_a), assigned the m_a outage value
    preclamp_excess: float    # worst overshoot of any P_{0,m} outside [0,1]
    ka_series_bound: float    # bound on mass missing from the k_a-truncated series

    def __float__(self):
        return self.p0


def comp_outage(p: SystemParams, acc: AnalyticAccuracy,
                method: str = "auto") -> CompOutageResult:
    """Total CoMP-user outage probability P0.

    Poisson-truncates the count sum at m_a; the residual tail mass is
    assigned the m_a conditional outage (its best available bound) and
    reported.  Returns 1 when SIC is infeasible.
    """
    if not sic_feasible(p):
        return CompOutageResult(1.0, 0, 0.0, 0.0, 0.0)
    m_a = acc.resolve_m_a(p)
    mix = coop_gain_mixture(p, acc.n)
    tables = _GammaSeriesTables(p, mix, m_a, acc.k_a)
    w = mix.weights

    pmf = np.array([poisson_count_pmf(m, p) for m in range(m_a + 1)])
    tail = max(0.0, 1.0 - float(pmf.sum()))

    total, excess, ka_bound, last = 0.0, 0.0, 0.0, 1.0
    for m in range(m_a + 1):
        if m == 0:
            raw = 1.0
        else:
            btabs = power_partial_fractions(mix, m)
            raw = 0.0
            bound_m = 0.0
            for n in range(len(mix)):
                s_vals = tables.s_values(n, m)
                raw += w[n] ** m * float(np.dot(btabs[n][::-1], s_vals))
                if acc.k_a is not None:
                    rem = tables.series_remainder(n, m)
                    bound_m += w[n] ** m * float(np.dot(np.abs(btabs[n][::-1]), rem))
            ka_bound += pmf[m] * bound_m
        excess = max(excess, raw - 1.0, -raw)
        last = min(max(raw, 0.0), 1.0)
        total += pmf[m] * last
    total += tail * last
    return CompOutageResult(min(max(total, 0.0), 1.0), m_a, tail, max(0.0, excess), ka_bound)


# --------------------------------------------------------------------------
# NOMA user
# --------------------------------------------------------------------------

@lru_cache(maxsize=262144)
def _exclusion_overlap_integral(a: float, dist: float, alpha: float,
                                r_bar: float) -> float:
    """Int_{dist-r_bar}^{dist+r_bar} r a/(r^alpha + a) arccos((r^2+dist^2-r_bar^2)/(2 r dist)) dr.

    The arccos measures the half-angle of the arc at radius r (from the
    serving BS) falling inside the interferer-free disc of radius r_bar.
    """
    lo, hi = dist - r_bar, dist + r_bar

    def f(r):
        arg = (r * r + dist * dist - r_bar * r_bar) / (2.0 * r * dist)
        if abs(arg) > 1.0 + 1e-9:
            raise GeometryError(f"arccos argument {arg} at r={r}, d={dist}")
        return r * a / (r**alpha + a) * math.acos(min(1.0, max(-1.0, arg)))

    val, _ = integrate.quad(f, lo, hi, **QUAD_OPTS)
    return val


def _noma_outer_factor(p: SystemParams, a: float, dgrid: np.ndarray,
                       dweights: np.ndarray) -> float:
    """E over the serving-BS distance of exp(2 lambda_c * overlap integral)."""
    g = np.array([_exclusion_overlap_integral(a, float(dd), p.alpha, p.R_bar)
                  for dd in dgrid])
    dens = 2.0 * dgrid / (p.R_D**2 - p.R_bar**2)
    return float(np.dot(dweights, dens * np.exp(2.0 * p.lambda_c * g)))


def _gauss_legendre(lo: float, hi: float, n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return (hi - lo) / 2 * x + (hi + lo) / 2, (hi - lo) / 2 * w


@dataclass(frozen=True)
class NomaOutageResult:
    pi: float
    preclamp_excess: float
    quad_err_est: float       # |value - value at half the outer resolution|

    def __float__(self):
        return self.pi


def noma_outage(p: SystemParams, acc: AnalyticAccuracy) -> NomaOutageResult:
    """Outage probability of the served NOMA user (random cooperating BS).

    Expands E[(cluster-gain cdf at the SINR threshold)^K] over compositions
    of K into N+1 parts; each term carries the interference Laplace transform
    split into a whole-plane factor and the exclusion-disc correction
    integrated over the serving-BS position.
    """
    if not sic_feasible(p) or p.beta1_sq == 0.0:
        return NomaOutageResult(1.0, 0.0, 0.0)
    ebar = max(p.eps0 / (p.beta0_sq - p.beta1_sq * p.eps0), p.epsi / p.beta1_sq)
    mix = cluster_gain_mixture(p, acc.n)
    w_t = np.concatenate(([1.0], -mix.weights))       # expansion weights
    c_t = np.concatenate(([0.0], mix.rates))
    whole_plane_const = 2 * math.pi * p.lambda_c / p.alpha \
        * beta_fn(2 / p.alpha, (p.alpha - 2) / p.alpha)

    dgrid, dw = _gauss_legendre(p.R_bar, p.R_D, acc.quad_points)
    dgrid_h, dw_h = _gauss_legendre(p.R_bar, p.R_D, max(acc.quad_points // 2, 1))

    total, total_h = 1.0, 1.0
    for comp in compositions(p.K, len(mix) + 1):
        if comp.parts[0] == p.K:
            continue    # the all-constant term is the leading 1
        ks = np.array(comp.parts, dtype=float)
        xi = float(np.dot(ks, c_t))
        a = xi * ebar
        coef = float(comp.multinomial)
        for k_n, w_n, c_n in zip(comp.parts, w_t, c_t):
            if k_n:
                coef *= w_n ** k_n * math.exp(-k_n * c_n * ebar / p.rho)
        wp = math.exp(-whole_plane_const * a ** (2 / p.alpha))
        term = coef * wp
        total += term * _noma_outer_factor(p, a, dgrid, dw)
        total_h += term * _noma_outer_factor(p, a, dgrid_h, dw_h)
    excess = max(0.0, total - 1.0, -total)
    return NomaOutageResult(min(max(total, 0.0), 1.0), excess,
                            abs(total - total_h))


# --------------------------------------------------------------------------
# Sum rates and the combined report
# --------------------------------------------------------------------------

def outage_sum_rate(p: SystemParams, acc: AnalyticAccuracy) -> tuple:
    """(N-NOMA, OMA) outage sum rate per BS.

    N-NOMA: (1-P0) R0 / (lambda_c S_C) + Pr(M>0) (1-P_i) R_i.
    OMA serves only the CoMP user with full power: same expression at
    beta0^2 = 1 with no NOMA term.
    """
    rep = evaluate_report(p, acc)
    return rep.sum_rate_nnoma, rep.sum_rate_oma


@dataclass(frozen=True)
class OutageReport:
    """One fully evaluated parameter point (analytic path)."""

    p0: float
    pi: float
    poisson_tail: float
    sum_rate_nnoma: float
    sum_rate_oma: float
    p_m_positive: float
    p0_oma: float
    m_a: int
    p0_preclamp_excess: float
    pi_preclamp_excess: float
    ka_series_bound: float
    pi_quad_err_est: float


def evaluate_report(p: SystemParams, acc: AnalyticAccuracy) -> OutageReport:
    """Evaluate both outage probabilities, the OMA baseline, and sum rates."""
    comp = comp_outage(p, acc)
    noma = noma_outage(p, acc)
    oma = comp_outage(p.with_updates(beta0_sq=1.0), acc)
    p_pos = -math.expm1(-p.lambda_c * p.S_C)
    mean_coop = p.lambda_c * p.S_C
    rate_nn = (1.0 - comp.p0) * p.R0_bpcu / mean_coop \
        + p_pos * (1.0 - noma.pi) * p.Ri_bpcu
    rate_oma = (1.0 - oma.p0) * p.R0_bpcu / mean_coop
    return OutageReport(
        p0=comp.p0, pi=noma.pi, poisson_tail=comp.poisson_tail,
        sum_rate_nnoma=rate_nn, sum_rate_oma=rate_oma, p_m_positive=p_pos,
        p0_oma=oma.p0, m_a=comp.m_a,
        p0_preclamp_excess=comp.preclamp_excess,
        pi_preclamp_excess=noma.preclamp_excess,
        ka_series_bound=comp.ka_series_bound,
        pi_quad_err_est=noma.quad_err_est)
