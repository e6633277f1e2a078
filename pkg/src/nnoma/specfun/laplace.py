"""Laplace functional of the out-of-cooperation interference plus noise.

L(mu) = E[exp(-mu (I_out + 1/rho))] = exp(tau(mu)) where

    tau(mu) = -mu/rho - 2 pi lambda_c Int_{R_D}^inf mu r / (r^alpha + mu) dr.

The closed form of the integral uses the Gauss hypergeometric 2F1; we evaluate
through the integral representation instead (uniformly valid for alpha > 2)
and keep the 2F1 and alpha=4 arctan forms as cross-checks.  Derivatives of
any order reduce to incomplete-Beta integrals:

    mu^k Int_{R_D}^inf r^{alpha+1} (r^alpha+mu)^{-(k+1)} dr
        = mu^{2/alpha}/alpha * B(w0; k - 2/alpha, 1 + 2/alpha),
    w0 = mu / (R_D^alpha + mu),

which the scaled sequences below use directly.
"""
from __future__ import annotations

import math

import numpy as np
from scipy import integrate, special

from ..errors import NumericsError, ValidationError
from ..params import SystemParams

QUAD_OPTS = dict(epsabs=1e-12, epsrel=1e-9, limit=200)


def _interference_integral_quad(mu: float, p: SystemParams) -> float:
    """Int_{R_D}^inf mu r/(r^alpha + mu) dr on the finite interval u = R_D/r."""
    a, rd = p.alpha, p.R_D
    xi = mu / rd**a

    def f(u):
        return xi * u ** (a - 3) / (1.0 + xi * u**a)

    val, err = integrate.quad(f, 0.0, 1.0, **QUAD_OPTS)
    if not math.isfinite(val):
        raise NumericsError("interference integral did not converge")
    return rd**2 * val


def tau(mu: float, p: SystemParams) -> float:
    """Exponent of the Laplace functional; tau(mu) <= 0, tau(0) = 0."""
    if mu < 0:
        raise ValidationError("mu must be nonnegative")
    if mu == 0:
        return 0.0
    return -mu / p.rho - 2 * math.pi * p.lambda_c * _interference_integral_quad(mu, p)


def tau_hyp2f1(mu: float, p: SystemParams) -> float:
    """tau via the hypergeometric closed form (cross-check route)."""
    if mu == 0:
        return 0.0
    a, rd = p.alpha, p.R_D
    h = special.hyp2f1(1 - 2 / a, 1.0, 2 - 2 / a, -mu / rd**a)
    return -mu / p.rho - 2 * math.pi * p.lambda_c * mu * rd ** (2 - a) / (a - 2) * h


def tau_arctan_alpha4(mu: float, p: SystemParams) -> float:
    """alpha = 4 closed form: 2F1(1/2, 1; 3/2; -x^2) = arctan(x)/x."""
    if p.alpha != 4.0:
        raise ValidationError("arctan form is specific to alpha = 4")
    if mu == 0:
        return 0.0
    return -mu / p.rho - math.pi * p.lambda_c * math.sqrt(mu) \
        * math.atan(math.sqrt(mu) / p.R_D**2)


def tau_derivatives(mu: float, max_order: int, p: SystemParams) -> np.ndarray:
    """tau^(k)(mu) for k = 1..max_order by adaptive quadrature.

    tau^(k) = -[k=1]/rho - 2 pi lambda_c (-1)^{k-1} k! I_k with
    I_k = Int_{R_D}^inf r^{alpha+1} (r^alpha+mu)^{-(k+1)} dr, evaluated on the
    finite interval via u = R_D/r.  Raw derivatives grow factorially; for
    high orders use :func:`scaled_tau_terms` instead.
    """
    if max_order < 1:
        raise ValidationError("max_order must be >= 1")
    a, rd = p.alpha, p.R_D
    xi = mu / rd**a
    out = np.empty(max_order)
    for k in range(1, max_order + 1):
        def f(u, k=k):
            return u ** (a * k - 3) / (1.0 + xi * u**a) ** (k + 1)

        val, _ = integrate.quad(f, 0.0, 1.0, **QUAD_OPTS)
        i_k = rd ** (2 - a * k) * val
        out[k - 1] = -2 * math.pi * p.lambda_c * (-1) ** (k - 1) * math.factorial(k) * i_k
        if k == 1:
            out[0] -= 1.0 / p.rho
    return out


def scaled_tau_terms(mu: float, p: SystemParams, kmax: int) -> np.ndarray:
    """t_k = (-mu)^k tau^(k)(mu) / k! for k = 1..kmax (all nonnegative).

    Closed form through the regularised incomplete Beta; bounded uniformly in
    k, so safe at orders where the raw derivatives over/underflow.
    """
    if kmax < 1:
        return np.empty(0)
    a = p.alpha
    w0 = mu / (p.R_D**a + mu)
    ks = np.arange(1, kmax + 1)
    binc = special.betainc(ks - 2 / a, 1 + 2 / a, w0) * special.beta(ks - 2 / a, 1 + 2 / a)
    t = (2 * math.pi * p.lambda_c / a) * mu ** (2 / a) * binc
    t[0] += mu / p.rho
    return t


def tau_closed(mu: float, p: SystemParams) -> float:
    """tau via the incomplete-Beta closed form (fast path; equals tau())."""
    if mu == 0:
        return 0.0
    a = p.alpha
    w0 = mu / (p.R_D**a + mu)
    binc = special.betainc(1 - 2 / a, 2 / a, w0) * special.beta(1 - 2 / a, 2 / a)
    return -mu / p.rho - (2 * math.pi * p.lambda_c / a) * mu ** (2 / a) * binc


def laplace_derivatives(mu: float, max_order: int, p: SystemParams) -> np.ndarray:
    """L^(i)(mu) for i = 0..max_order via the binomial recursion
    L^(i) = sum_{j<i} C(i-1, j) tau^(i-j) L^(j)."""
    if max_order < 0:
        raise ValidationError("max_order must be >= 0")
    out = np.empty(max_order + 1)
    out[0] = math.exp(tau_closed(mu, p))
    if max_order == 0:
        return out
    td = tau_derivatives(mu, max_order, p)
    for i in range(1, max_order + 1):
        acc = 0.0
        for j in range(i):
            acc += math.comb(i - 1, j) * td[i - j - 1] * out[j]
        out[i] = acc
    return out


def poisson_laplace_weights(mu: float, p: SystemParams, jmax: int) -> np.ndarray:
    """Lambda_j = (-mu)^j L^(j)(mu) / j! for j = 0..jmax.

    Lambda_j = E[X^j e^{-X} / j!] with X = mu (I_out + 1/rho): a nonnegative
    Poisson-mixture pmf summing to 1 over j >= 0.  Same recursion as
    laplace_derivatives, rewritten in scaled terms so nothing overflows:
    Lambda_i = (1/i) sum_{j<i} (i-j) t_{i-j} Lambda_j.
    """
    out = np.empty(jmax + 1)
    out[0] = math.exp(tau_closed(mu, p))
    if jmax == 0:
        return out
    t = scaled_tau_terms(mu, p, jmax)
    for i in range(1, jmax + 1):
        js = np.arange(i)
        out[i] = float(np.dot((i - js) * t[i - js - 1], out[js])) / i
    return out
