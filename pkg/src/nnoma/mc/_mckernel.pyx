# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled Monte-Carlo trial kernel.

Mirrors nnoma.mc.fallback.run_trials exactly: same Philox (seed, trial, slot)
mapping, same transforms, same float-operation order.  See
nnoma/mc/streams.py for the slot layout.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, log1p, cos, sin, pow, M_PI
from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free

cnp.import_array()

cdef extern from *:
    """
    #include <stdint.h>
    static const uint64_t PHILOX_M0 = 0xD2E7470EE14C6C93ULL;
    static const uint64_t PHILOX_M1 = 0xCA5A826395121157ULL;
    static const uint64_t PHILOX_W0 = 0x9E3779B97F4A7C15ULL;
    static const uint64_t PHILOX_W1 = 0xBB67AE8584CAA73BULL;
    static inline void philox4x64_10(uint64_t ctr0, uint64_t key0, uint64_t key1,
                                     uint64_t out[4]) {
        uint64_t c0 = ctr0, c1 = 0, c2 = 0, c3 = 0;
        uint64_t k0 = key0, k1 = key1;
        int r;
        for (r = 0; r < 10; r++) {
            if (r) { k0 += PHILOX_W0; k1 += PHILOX_W1; }
            __uint128_t p0 = (__uint128_t)PHILOX_M0 * c0;
            __uint128_t p1 = (__uint128_t)PHILOX_M1 * c2;
            uint64_t hi0 = (uint64_t)(p0 >> 64), lo0 = (uint64_t)p0;
            uint64_t hi1 = (uint64_t)(p1 >> 64), lo1 = (uint64_t)p1;
            uint64_t n0 = hi1 ^ c1 ^ k0;
            uint64_t n1 = lo1;
            uint64_t n2 = hi0 ^ c3 ^ k1;
            uint64_t n3 = lo0;
            c0 = n0; c1 = n1; c2 = n2; c3 = n3;
        }
        out[0] = c0; out[1] = c1; out[2] = c2; out[3] = c3;
    }
    """
    void philox4x64_10(uint64_t ctr0, uint64_t key0, uint64_t key1,
                       uint64_t out[4]) nogil

cdef double INV53 = 1.0 / 9007199254740992.0

BACKEND_NAME = "cython"


cdef inline double _slot_double(uint64_t seed, uint64_t trial,
                                uint64_t slot) nogil:
    cdef uint64_t out[4]
    philox4x64_10(1 + (slot >> 2), seed, trial, out)
    return <double>(out[slot & 3] >> 11) * INV53


def debug_slot(seed, trial, slot):
    return _slot_double(<uint64_t>seed, <uint64_t>trial, <uint64_t>slot)


def run_trials(seed, trial_offset, counts, k_users,
               double r_bar, double window, double r_d, double alpha,
               double beta0_sq, double beta1_sq, double inv_rho,
               double eps0, double epsi, double r_c):
    """Evaluate one chunk of trials; see fallback.run_trials for the contract."""
    cdef cnp.ndarray[cnp.int64_t, ndim=1] counts_arr = np.ascontiguousarray(counts, dtype=np.int64)
    cdef Py_ssize_t n_trials = counts_arr.shape[0]
    cdef cnp.ndarray[cnp.int32_t, ndim=1] m_out = np.zeros(n_trials, dtype=np.int32)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] out0 = np.zeros(n_trials, dtype=np.uint8)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] pi_def = np.zeros(n_trials, dtype=np.uint8)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] pi_fail = np.zeros(n_trials, dtype=np.uint8)

    cdef uint64_t useed = <uint64_t>seed
    cdef uint64_t toff = <uint64_t>trial_offset
    cdef int K = <int>k_users
    cdef Py_ssize_t max_n = 0, t
    for t in range(n_trials):
        if counts_arr[t] > max_n:
            max_n = counts_arr[t]

    cdef double *xs = NULL
    cdef double *ys = NULL
    cdef double *hs = NULL
    cdef long *coop_idx = NULL
    if max_n:
        xs = <double *>malloc(max_n * sizeof(double) * 3)
        coop_idx = <long *>malloc(max_n * sizeof(long))
        if xs is NULL or coop_idx is NULL:
            if xs is not NULL:
                free(xs)
            if coop_idx is not NULL:
                free(coop_idx)
            raise MemoryError()
        ys = xs + max_n
        hs = xs + 2 * max_n

    cdef double r_bar2 = r_bar * r_bar
    cdef double win2 = window * window
    cdef double rd2 = r_d * r_d
    cdef double neg_half_alpha = -alpha / 2.0
    cdef double rc2 = r_c * r_c

    cdef Py_ssize_t n, b, m, k
    cdef uint64_t trial
    cdef uint64_t words[4]
    cdef double u_r, u_phi, u_g, u_h, r2, pl, g, gain, gsum, isum, sinr0
    cdef double u_pick, ry2, psi, h_own, zk, zbest, ry_best, psi_best
    cdef double ux, uy, dx, dy, d2, i_inter, den, sinr_i0, sinr_ii, r_bs
    cdef Py_ssize_t rank, serving, base, kbest

    with nogil:
        for t in range(n_trials):
            trial = toff + <uint64_t>t
            n = counts_arr[t]
            m = 0
            gsum = 0.0
            isum = 0.0
            for b in range(n):
                philox4x64_10(2 + <uint64_t>b, useed, trial, words)
                u_r = <double>(words[0] >> 11) * INV53
                u_phi = <double>(words[1] >> 11) * INV53
                u_g = <double>(words[2] >> 11) * INV53
                u_h = <double>(words[3] >> 11) * INV53
                r2 = r_bar2 + u_r * (win2 - r_bar2)
                pl = pow(r2, neg_half_alpha)
                g = -log1p(-u_g)
                gain = g * pl
                r_bs = sqrt(r2)
                xs[b] = r_bs * cos(2.0 * M_PI * u_phi)
                ys[b] = r_bs * sin(2.0 * M_PI * u_phi)
                hs[b] = -log1p(-u_h)
                if r2 <= rd2:
                    coop_idx[m] = b
                    m += 1
                    gsum += gain
                else:
                    isum += gain
            m_out[t] = <cnp.int32_t>m
            if m == 0:
                out0[t] = 1
                continue
            sinr0 = beta0_sq * gsum / (beta1_sq * gsum + isum + inv_rho)
            if not sinr0 >= eps0:
                out0[t] = 1
            pi_def[t] = 1

            u_pick = _slot_double(useed, trial, 1)
            rank = <Py_ssize_t>(u_pick * m)
            if rank > m - 1:
                rank = m - 1
            serving = coop_idx[rank]

            base = 4 + 4 * n + 3 * K * rank
            zbest = -1.0
            ry_best = 0.0
            psi_best = 0.0
            for k in range(K):
                ry2 = rc2 * _slot_double(useed, trial, base + 3 * k)
                psi = 2.0 * M_PI * _slot_double(useed, trial, base + 3 * k + 1)
                h_own = -log1p(-_slot_double(useed, trial, base + 3 * k + 2))
                zk = h_own * pow(ry2, neg_half_alpha)
                if zk > zbest:
                    zbest = zk
                    ry_best = sqrt(ry2)
                    psi_best = psi
            ux = xs[serving] + ry_best * cos(psi_best)
            uy = ys[serving] + ry_best * sin(psi_best)

            i_inter = 0.0
            for b in range(n):
                if b == serving:
                    continue
                dx = xs[b] - ux
                dy = ys[b] - uy
                d2 = dx * dx + dy * dy
                i_inter += hs[b] * pow(d2, neg_half_alpha)
            den = i_inter + inv_rho
            sinr_i0 = zbest * beta0_sq / (zbest * beta1_sq + den)
            sinr_ii = zbest * beta1_sq / den
            if not (sinr_i0 > eps0 and sinr_ii > epsi):
                pi_fail[t] = 1

    if xs is not NULL:
        free(xs)
    if coop_idx is not NULL:
        free(coop_idx)
    return m_out, out0, pi_def, pi_fail
