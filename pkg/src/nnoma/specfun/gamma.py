"""Lower incomplete gamma (integer order) and the Beta function."""
from __future__ import annotations

import math

from ..errors import NumericsError, ValidationError


def lower_inc_gamma(s: int, x: float) -> float:
    """gamma(s, x) for integer s >= 1 via the closed form
    (s-1)! (1 - exp(-x) sum_{j<s} x^j/j!); exact for integer order."""
    if s < 1 or s != int(s):
        raise ValidationError("order s must be an integer >= 1")
    if x < 0:
        raise ValidationError("x must be nonnegative")
    # partial exponential sum, accumulated term-wise to stay stable
    term, acc = 1.0, 1.0
    for j in range(1, int(s)):
        term *= x / j
        acc += term
    return math.factorial(int(s) - 1) * (1.0 - math.exp(-x) * acc)


def lower_inc_gamma_series(s: int, x: float, rtol: float = 1e-16,
                           max_terms: int = 10_000) -> float:
    """gamma(s, x) via the ascending series
    Gamma(s) sum_{k>=0} x^{s+k} e^{-x} / Gamma(s+k+1), summed to convergence.

    The terms are a Poisson(x) tail mass, so ~x + O(sqrt(x)) terms are needed
    before they decay; ``max_terms`` guards against misuse.
    """
    if s < 1 or s != int(s):
        raise ValidationError("order s must be an integer >= 1")
    if x < 0:
        raise ValidationError("x must be nonnegative")
    if x == 0:
        return 0.0
    s = int(s)
    # t_0 = x^s e^{-x} / s!  computed in log space
    log_t = s * math.log(x) - x - math.lgamma(s + 1)
    term = math.exp(log_t)
    total = term
    for k in range(1, max_terms):
        term *= x / (s + k)
        total += term
        if term <= rtol * total and k > x - s:
            return math.gamma(s) * total
    raise NumericsError(f"incomplete-gamma series did not converge in {max_terms} terms")


def beta_fn(a: float, b: float) -> float:
    """Beta function B(a, b) = Gamma(a)Gamma(b)/Gamma(a+b), a, b > 0."""
    if a <= 0 or b <= 0:
        raise ValidationError("Beta function arguments must be positive")
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))
