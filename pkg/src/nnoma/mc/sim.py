"""Monte-Carlo simulator of the downlink N-NOMA CoMP model.

The estimator is the independent oracle for the analytic theorems: it samples
the conditioned Poisson network (no BS inside the exclusion radius), Rayleigh
fading, and cluster users, computes the three SINRs per trial, and counts
outages.  Identical (seed, trials, params, window) give bit-identical output
for any worker count because every trial owns a counter-based stream.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy import stats

from ..errors import ValidationError
from ..params import SystemParams
from . import streams
from .backend import active_backend, get_kernel


def default_window(p: SystemParams) -> float:
    """Interference truncation radius: 10 R_D, validated by window doubling."""
    return 10.0 * p.R_D


@dataclass(frozen=True)
class NetworkRealization:
    """One sampled topology around the tagged CoMP user at the origin.

    BS positions are conditioned on the exclusion disc being empty (sampled
    directly on the annulus [R_bar, window]).  Cluster offsets and own-link
    fadings are materialised for every cooperating BS.
    """

    bs_xy: np.ndarray            # (n, 2) positions, m
    bs_r: np.ndarray             # (n,) distances from the origin
    coop_indices: np.ndarray     # indices with r <= R_D, ascending
    gains_comp: np.ndarray       # (n,) |g|^2, links to the CoMP user
    gains_tagged: np.ndarray     # (n,) |h|^2, links to the tagged NOMA user
    cluster_offsets: np.ndarray  # (n_coop, K, 2) user offsets from their BS
    cluster_fadings: np.ndarray  # (n_coop, K) own-link |h|^2

    @property
    def n_coop(self) -> int:
        return int(self.coop_indices.size)


@dataclass(frozen=True)
class MCEstimate:
    """Empirical outage estimates with binomial 95% confidence halfwidths."""

    p0_hat: float
    pi_hat: Optional[float]
    ci95_p0: float
    ci95_pi: Optional[float]
    trials_used: int
    noma_trials: int             # trials with at least one cooperating BS
    m_histogram: Tuple[int, ...]  # counts of the cooperating-BS number
    seed: int
    window_radius: float
    backend: str
    pi_undefined_reason: Optional[str] = None


def _halfwidth(p_hat: float, n: int) -> float:
    return 1.96 * math.sqrt(p_hat * (1.0 - p_hat) / n) if n else float("nan")


def _poisson_counts(seed: int, trial_offset: int, n_trials: int, mean: float) -> np.ndarray:
    """Per-trial BS totals via the inverse cdf on each trial's slot-0 uniform."""
    trials = np.uint64(trial_offset) + np.arange(n_trials, dtype=np.uint64)
    u = streams.slot_doubles(seed, trials, np.uint64(streams.SLOT_COUNT))
    counts = stats.poisson.ppf(u, mean)
    return np.maximum(counts, 0.0).astype(np.int64)


def sample_network(p: SystemParams, window_radius: float,
                   rng_stream: streams.TrialStream) -> NetworkRealization:
    """Materialise the trial's full topology (object-level reference path)."""
    if window_radius <= p.R_D:
        raise ValidationError("window_radius must exceed R_D")
    mean = p.lambda_c * math.pi * (window_radius**2 - p.R_bar**2)
    n = int(_poisson_counts(rng_stream.seed, rng_stream.trial, 1, mean)[0])
    u = rng_stream.bs_block(n)
    r2 = p.R_bar**2 + u[:, 0] * (window_radius**2 - p.R_bar**2)
    r = np.sqrt(r2)
    phi = 2.0 * math.pi * u[:, 1]
    xy = np.stack([r * np.cos(phi), r * np.sin(phi)], axis=1)
    coop = np.flatnonzero(r2 <= p.R_D**2)
    offsets = np.empty((coop.size, p.K, 2))
    fadings = np.empty((coop.size, p.K))
    for j in range(coop.size):
        uc = rng_stream.cluster_block(n, j, p.K)
        ry = p.R_c * np.sqrt(uc[:, 0])
        psi = 2.0 * math.pi * uc[:, 1]
        offsets[j, :, 0] = ry * np.cos(psi)
        offsets[j, :, 1] = ry * np.sin(psi)
        fadings[j] = streams.exponential_from_uniform(uc[:, 2])
    return NetworkRealization(
        bs_xy=xy, bs_r=r, coop_indices=coop,
        gains_comp=streams.exponential_from_uniform(u[:, 2]),
        gains_tagged=streams.exponential_from_uniform(u[:, 3]),
        cluster_offsets=offsets, cluster_fadings=fadings)


def comp_sinr(net: NetworkRealization, p: SystemParams) -> float:
    """SINR of the CoMP user; 0 when no BS cooperates (outage by convention)."""
    if net.n_coop == 0:
        return 0.0
    gains = net.gains_comp * net.bs_r ** (-p.alpha)
    coop_mask = np.zeros(net.bs_r.size, dtype=bool)
    coop_mask[net.coop_indices] = True
    g = float(gains[coop_mask].sum())
    i_out = float(gains[~coop_mask].sum())
    return p.beta0_sq * g / (p.beta1_sq * g + i_out + 1.0 / p.rho)


def noma_sinrs(net: NetworkRealization, p: SystemParams,
               rng_stream: streams.TrialStream):
    """(SINR of the CoMP signal, SINR of the own signal) at the served NOMA
    user of a uniformly chosen cooperating BS; None when none cooperates.

    The served user is the cluster member with the largest own-link gain.
    """
    m = net.n_coop
    if m == 0:
        return None
    rank = min(int(rng_stream.u_pick() * m), m - 1)
    serving = int(net.coop_indices[rank])
    z_k = net.cluster_fadings[rank] \
        * (np.sum(net.cluster_offsets[rank] ** 2, axis=1)) ** (-p.alpha / 2)
    kstar = int(np.argmax(z_k))
    z = float(z_k[kstar])
    upos = net.bs_xy[serving] + net.cluster_offsets[rank, kstar]
    d2 = np.sum((net.bs_xy - upos) ** 2, axis=1)
    gains = net.gains_tagged * d2 ** (-p.alpha / 2)
    i_inter = float(gains.sum() - gains[serving])
    den = i_inter + 1.0 / p.rho
    return (z * p.beta0_sq / (z * p.beta1_sq + den), z * p.beta1_sq / den)


def estimate_outage(p: SystemParams, trials: int, seed: int,
                    window_radius: Optional[float] = None, workers: int = 1,
                    backend: Optional[str] = None,
                    chunk_size: int = 4096) -> MCEstimate:
    """Empirical outage probabilities over ``trials`` independent topologies.

    p0_hat counts SINR_0 < eps0 (no cooperating BS counts as outage); pi_hat
    counts, over trials with a cooperating BS, failure of
    (SINR_{i,0} > eps0 and SINR_{i,i} > eps_i).
    """
    if trials < 1:
        raise ValidationError("trials must be >= 1")
    window = float(window_radius) if window_radius is not None else default_window(p)
    if window <= p.R_D:
        raise ValidationError("window_radius must exceed R_D")
    kernel = get_kernel(backend)
    mean = p.lambda_c * math.pi * (window**2 - p.R_bar**2)

    ranges = [(lo, min(lo + chunk_size, trials)) for lo in range(0, trials, chunk_size)]

    def run(rng: Tuple[int, int]):
        lo, hi = rng
        counts = _poisson_counts(seed, lo, hi - lo, mean)
        m, out0, pi_def, pi_fail = kernel(
            seed, lo, counts, p.K, p.R_bar, window, p.R_D, p.alpha,
            p.beta0_sq, p.beta1_sq, 1.0 / p.rho, p.eps0, p.epsi, p.R_c)
        hist = np.bincount(m)
        return int(out0.sum()), int(pi_def.sum()), int(pi_fail.sum()), hist

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, ranges))
    else:
        results = [run(r) for r in ranges]

    n_out0 = sum(r[0] for r in results)
    n_def = sum(r[1] for r in results)
    n_fail = sum(r[2] for r in results)
    hlen = max(r[3].size for r in results)
    hist = np.zeros(hlen, dtype=np.int64)
    for r in results:
        hist[:r[3].size] += r[3]

    p0_hat = n_out0 / trials
    if n_def:
        pi_hat = n_fail / n_def
        ci_pi = _halfwidth(pi_hat, n_def)
        reason = None
    else:
        pi_hat, ci_pi = None, None
        reason = "no trial had a cooperating BS"
    return MCEstimate(
        p0_hat=p0_hat, pi_hat=pi_hat, ci95_p0=_halfwidth(p0_hat, trials),
        ci95_pi=ci_pi, trials_used=trials, noma_trials=n_def,
        m_histogram=tuple(int(c) for c in hist), seed=seed,
        window_radius=window, backend=backend or active_backend(),
        pi_undefined_reason=reason)
