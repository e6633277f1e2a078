"""Counter-based per-trial random streams (Philox 4x64-10).

Every trial owns an independent stream keyed (seed, trial_index); each random
quantity lives at a fixed slot in that stream.  Draws therefore depend only
on (seed, trial, slot), never on chunking or worker count, and the compiled
and pure-python kernels consume identical bits.

The mapping matches numpy exactly: slot s of trial t is double number s of
``np.random.Generator(np.random.Philox(key=[seed, t])).random(...)``, i.e.
word (s mod 4) of the Philox block with counter (1 + s//4, 0, 0, 0) mapped
through (word >> 11) * 2**-53.

Slot layout of one trial (K = cluster size; n = total BS count):

    0                u_count   Poisson inverse-cdf input for n
    1                u_pick    serving-BS choice among cooperating BSs
    2..3             (padding so BS blocks are Philox-block aligned)
    4+4b+0..3        BS b: u_radius, u_angle, u_fade_comp, u_fade_tagged
    C+3(jK+k)+0..2   cluster user k of the j-th cooperating BS (C = 4+4n):
                     u_cluster_radius, u_cluster_angle, u_fade_own

Transforms (shared by both kernels):
    radius   r   = sqrt(R_bar^2 + u (window^2 - R_bar^2))   [area-uniform]
    angle    phi = 2 pi u
    fading   |h|^2 = -log1p(-u)                             [Exp(1)]
    cluster  r_y = R_c sqrt(u)
"""
from __future__ import annotations

import numpy as np

PHILOX_M0 = np.uint64(0xD2E7470EE14C6C93)
PHILOX_M1 = np.uint64(0xCA5A826395121157)
PHILOX_W0 = np.uint64(0x9E3779B97F4A7C15)
PHILOX_W1 = np.uint64(0xBB67AE8584CAA73B)
_MASK32 = np.uint64(0xFFFFFFFF)
_SHIFT32 = np.uint64(32)
_INV53 = 1.0 / 9007199254740992.0

SLOT_COUNT = 0
SLOT_PICK = 1
BS_BASE = 4
BS_STRIDE = 4
CLUSTER_STRIDE = 3


def _mulhilo(a, b):
    ah, al = a >> _SHIFT32, a & _MASK32
    bh, bl = b >> _SHIFT32, b & _MASK32
    ll = al * bl
    lh = al * bh
    hl = ah * bl
    mid = (ll >> _SHIFT32) + (lh & _MASK32) + (hl & _MASK32)
    lo = (ll & _MASK32) | ((mid & _MASK32) << _SHIFT32)
    hi = ah * bh + (lh >> _SHIFT32) + (hl >> _SHIFT32) + (mid >> _SHIFT32)
    return hi, lo


def philox_blocks(blocks: np.ndarray, keys0: np.ndarray, keys1: np.ndarray) -> np.ndarray:
    """Philox 4x64-10 for counters (blocks, 0, 0, 0); returns (n, 4) uint64."""
    c0 = np.asarray(blocks, dtype=np.uint64).copy()
    c1 = np.zeros_like(c0)
    c2 = np.zeros_like(c0)
    c3 = np.zeros_like(c0)
    k0 = np.broadcast_to(np.asarray(keys0, dtype=np.uint64), c0.shape).copy()
    k1 = np.broadcast_to(np.asarray(keys1, dtype=np.uint64), c0.shape).copy()
    for rnd in range(10):
        if rnd:
            k0 += PHILOX_W0
            k1 += PHILOX_W1
        hi0, lo0 = _mulhilo(PHILOX_M0, c0)
        hi1, lo1 = _mulhilo(PHILOX_M1, c2)
        c0, c1, c2, c3 = hi1 ^ c1 ^ k0, lo1, hi0 ^ c3 ^ k1, lo0
    return np.stack([c0, c1, c2, c3], axis=1)


def slot_doubles(seed: int, trials: np.ndarray, slots: np.ndarray) -> np.ndarray:
    """Uniform doubles at arbitrary (trial, slot) pairs (arrays broadcast)."""
    trials = np.asarray(trials, dtype=np.uint64)
    slots = np.asarray(slots, dtype=np.uint64)
    trials, slots = np.broadcast_arrays(trials, slots)
    blocks = np.uint64(1) + (slots >> np.uint64(2))
    lanes = (slots & np.uint64(3)).astype(np.intp)
    words = philox_blocks(blocks.ravel(), np.uint64(seed), trials.ravel())
    picked = words[np.arange(words.shape[0]), lanes.ravel()]
    return ((picked >> np.uint64(11)) * _INV53).reshape(trials.shape)


def leading_doubles(seed: int, trial: int, n: int) -> np.ndarray:
    """The first n doubles (slots 0..n-1) of one trial's stream."""
    return slot_doubles(seed, np.uint64(trial), np.arange(n, dtype=np.uint64))


class TrialStream:
    """Layout-aware view of one trial's random stream (object-level API)."""

    def __init__(self, seed: int, trial: int):
        self.seed = int(seed)
        self.trial = int(trial)

    def slot(self, index) -> np.ndarray:
        return slot_doubles(self.seed, np.uint64(self.trial),
                            np.asarray(index, dtype=np.uint64))

    def u_count(self) -> float:
        return float(self.slot(SLOT_COUNT))

    def u_pick(self) -> float:
        return float(self.slot(SLOT_PICK))

    def bs_block(self, n_bs: int) -> np.ndarray:
        """(n_bs, 4) uniforms: radius, angle, comp fading, tagged fading."""
        if n_bs == 0:
            return np.empty((0, 4))
        idx = BS_BASE + BS_STRIDE * np.arange(n_bs)[:, None] + np.arange(4)[None, :]
        return self.slot(idx)

    def cluster_block(self, n_bs: int, coop_rank: int, k_users: int) -> np.ndarray:
        """(k_users, 3) uniforms for the coop_rank-th cooperating BS's cluster."""
        base = BS_BASE + BS_STRIDE * n_bs + CLUSTER_STRIDE * k_users * coop_rank
        idx = base + CLUSTER_STRIDE * np.arange(k_users)[:, None] + np.arange(3)[None, :]
        return self.slot(idx)


def exponential_from_uniform(u):
    """Exp(1) via the inverse cdf; identical formula in every kernel."""
    return -np.log1p(-u)
