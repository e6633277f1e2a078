"""Pure-numpy Monte-Carlo trial kernel (fallback when the C extension is absent).

Computes exactly the same per-trial quantities as the compiled kernel, from
the same (seed, trial, slot) random mapping, with float operations applied in
the same order so the two backends agree bit for bit wherever libm and
numpy's vectorised transcendentals do.
"""
from __future__ import annotations

import numpy as np

from . import streams

BACKEND_NAME = "python"


def _bs_uniforms(seed: int, trials: np.ndarray, b_local: np.ndarray) -> np.ndarray:
    """(n, 4) uniforms of each BS block: one Philox block per BS."""
    blocks = np.uint64(2) + b_local.astype(np.uint64)   # slot 4+4b -> block 2+b
    words = streams.philox_blocks(blocks, np.uint64(seed), trials.astype(np.uint64))
    return (words >> np.uint64(11)) * streams._INV53


def run_trials(seed: int, trial_offset: int, counts: np.ndarray, k_users: int,
               r_bar: float, window: float, r_d: float, alpha: float,
               beta0_sq: float, beta1_sq: float, inv_rho: float,
               eps0: float, epsi: float, r_c: float):
    """Evaluate one chunk of trials.

    Returns (m_coop int32, outage0 uint8, pi_defined uint8, pi_fail uint8),
    one entry per trial.
    """
    counts = np.asarray(counts, dtype=np.int64)
    n_trials = counts.size
    neg_half_alpha = -alpha / 2.0
    r_bar2, win2, rd2 = r_bar * r_bar, window * window, r_d * r_d

    total = int(counts.sum())
    offsets = np.concatenate(([0], np.cumsum(counts)))
    trial_idx = np.repeat(np.arange(n_trials), counts)
    trial_ids = np.uint64(trial_offset) + trial_idx.astype(np.uint64)
    b_local = np.arange(total) - offsets[trial_idx]

    u = _bs_uniforms(seed, trial_ids, b_local)
    r2 = r_bar2 + u[:, 0] * (win2 - r_bar2)
    phi = 2.0 * np.pi * u[:, 1]
    g = streams.exponential_from_uniform(u[:, 2])
    h_tagged = streams.exponential_from_uniform(u[:, 3])
    pl = r2 ** neg_half_alpha
    gain = g * pl
    coop = r2 <= rd2

    m = np.bincount(trial_idx, weights=coop, minlength=n_trials).astype(np.int32)
    g_coop = np.bincount(trial_idx, weights=np.where(coop, gain, 0.0), minlength=n_trials)
    i_out = np.bincount(trial_idx, weights=np.where(coop, 0.0, gain), minlength=n_trials)

    outage0 = np.ones(n_trials, dtype=np.uint8)
    has = m > 0
    sinr0 = np.zeros(n_trials)
    np.divide(beta0_sq * g_coop, beta1_sq * g_coop + i_out + inv_rho,
              out=sinr0, where=has)
    outage0[has & (sinr0 >= eps0)] = 0

    pi_defined = has.astype(np.uint8)
    pi_fail = np.zeros(n_trials, dtype=np.uint8)
    if not has.any():
        return m, outage0, pi_defined, pi_fail

    # serving-BS choice: rank floor(u_pick * m) within the trial's coop list
    t_def = np.flatnonzero(has)
    u_pick = streams.slot_doubles(seed, np.uint64(trial_offset) + t_def.astype(np.uint64),
                                  np.uint64(streams.SLOT_PICK))
    rank = np.minimum((u_pick * m[t_def]).astype(np.int64), m[t_def] - 1)
    coop_flat = np.flatnonzero(coop)
    coop_counts = np.bincount(trial_idx[coop_flat], minlength=n_trials)
    coop_offsets = np.concatenate(([0], np.cumsum(coop_counts)))
    serving_flat = coop_flat[coop_offsets[t_def] + rank]

    # cluster of the serving BS: K candidate users, strongest gain served
    n_bs_def = counts[t_def]
    base = (streams.BS_BASE + streams.BS_STRIDE * n_bs_def
            + streams.CLUSTER_STRIDE * k_users * rank)
    slots = base[:, None, None] \
        + streams.CLUSTER_STRIDE * np.arange(k_users)[None, :, None] \
        + np.arange(3)[None, None, :]
    uc = streams.slot_doubles(seed, (np.uint64(trial_offset) + t_def.astype(np.uint64))[:, None, None],
                              slots.astype(np.uint64))
    ry2 = (r_c * r_c) * uc[:, :, 0]
    psi = 2.0 * np.pi * uc[:, :, 1]
    h_own = streams.exponential_from_uniform(uc[:, :, 2])
    z_k = h_own * ry2 ** neg_half_alpha
    kstar = np.argmax(z_k, axis=1)
    rows = np.arange(t_def.size)
    z = z_k[rows, kstar]
    ry = np.sqrt(ry2[rows, kstar])
    psi_s = psi[rows, kstar]

    r_bs = np.sqrt(r2)
    x, y = r_bs * np.cos(phi), r_bs * np.sin(phi)
    ux = x[serving_flat] + ry * np.cos(psi_s)
    uy = y[serving_flat] + ry * np.sin(psi_s)

    # distances from the tagged user to every BS of its trial
    ux_full = np.zeros(n_trials)
    uy_full = np.zeros(n_trials)
    ux_full[t_def] = ux
    uy_full[t_def] = uy
    dx = x - ux_full[trial_idx]
    dy = y - uy_full[trial_idx]
    d2 = dx * dx + dy * dy
    gain_t = h_tagged * d2 ** neg_half_alpha
    gain_t[serving_flat] = 0.0           # serving BS is not an interferer
    gain_t[~has[trial_idx]] = 0.0
    i_inter = np.bincount(trial_idx, weights=gain_t, minlength=n_trials)[t_def]

    den = i_inter + inv_rho
    sinr_i0 = z * beta0_sq / (z * beta1_sq + den)
    sinr_ii = z * beta1_sq / den
    pi_fail[t_def] = ~((sinr_i0 > eps0) & (sinr_ii > epsi))
    return m, outage0, pi_defined, pi_fail
