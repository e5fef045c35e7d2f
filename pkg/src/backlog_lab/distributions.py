"""Poisson and Erlang building blocks.

Everything downstream (closed forms, transform images, oracles) is built
from regularized Poisson probabilities e^{-x} x^n / n!.  Raw powers and
factorials appear nowhere: terms are generated by the one-step recurrence

    p_0 = e^{-x},    p_n = p_{n-1} * x / n,

anchored at n = 0 when e^{-x} is representable and at the modal index
otherwise.  Keeping every term for a given x on a single recurrence path
makes neighbouring terms consistent to machine precision, which the rest
of the package relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "ModelParams",
    "poisson_term",
    "exp_density",
    "erlang_density",
    "erlang_cdf",
]

# Terms whose true magnitude falls below this are reported as exactly 0.0.
UNDERFLOW_FLOOR = 1e-320

# Largest x for which e^{-x} is itself comfortably above the floor; below
# this the recurrence starts from p_0, above it from the modal index.
_ANCHOR_SWITCH = 700.0

# ln(UNDERFLOW_FLOOR) with a little slack, used to reject hopeless queries
# before any looping.
_LOG_CUTOFF = -740.0


@dataclass(frozen=True)
class ModelParams:
    """Demand rate and fixed production level of the make-to-stock model.

    lam : mean number of demand arrivals per unit time (must be positive
        and finite).
    production : units produced up front and available from time zero
        (a non-negative integer).
    """

    lam: float
    production: int

    def __post_init__(self):
        lam = float(self.lam)
        if not math.isfinite(lam) or lam <= 0.0:
            raise DomainError(f"demand rate must be positive and finite, got {self.lam!r}")
        if isinstance(self.production, bool) or not isinstance(self.production, int):
            raise DomainError(f"production level must be an integer, got {self.production!r}")
        if self.production < 0:
            raise DomainError(f"production level must be non-negative, got {self.production}")
        object.__setattr__(self, "lam", lam)


def _validate_term_args(lambda_t: float, n: int) -> float:
    if isinstance(n, bool) or not isinstance(n, int):
        raise DomainError(f"term index must be an integer, got {n!r}")
    if n < 0:
        raise DomainError(f"term index must be non-negative, got {n}")
    x = float(lambda_t)
    if not math.isfinite(x) or x < 0.0:
        raise DomainError(f"lambda*t must be non-negative and finite, got {lambda_t!r}")
    return x


def _log_term(x: float, n: int) -> float:
    """ln(e^{-x} x^n / n!), used only for cheap cutoff decisions."""
    if n == 0:
        return -x
    return n * math.log(x) - x - math.lgamma(n + 1)


def poisson_term(lambda_t: float, n: int) -> float:
    """Regularized Poisson probability e^{-x} x^n / n! at x = lambda_t.

    Evaluated by the one-step recurrence p_n = p_{n-1} x / n from an anchor
    term, never from raw powers, so no intermediate overflows occur for x
    up to 1e4 and n up to 1e5 and the ratio of neighbouring terms is exact
    to rounding.  True values below 1e-320 come back as exactly 0.0.
    """
    x = _validate_term_args(lambda_t, n)
    if x == 0.0:
        return 1.0 if n == 0 else 0.0
    if x > 0.0 and n > 0 and _log_term(x, n) < _LOG_CUTOFF:
        return 0.0

    if x <= _ANCHOR_SWITCH:
        # e^{-x} is representable: walk up from n = 0.
        p = math.exp(-x)
        for k in range(1, n + 1):
            p *= x / k
            if p < UNDERFLOW_FLOOR:
                return 0.0
        return p

    # Anchor at the modal index, where the term is largest, and walk to n.
    mode = int(x)
    p = math.exp(_log_term(x, mode))
    if n >= mode:
        for k in range(mode + 1, n + 1):
            p *= x / k
            if p < UNDERFLOW_FLOOR:
                return 0.0
    else:
        for k in range(mode, n, -1):
            p *= k / x
            if p < UNDERFLOW_FLOOR:
                return 0.0
    return p


def _poisson_prefix(lambda_t: float, count: int) -> list[float]:
    """First `count` regularized terms p_0 .. p_{count-1}, one recurrence pass.

    Matches poisson_term value-for-value (same anchoring, same underflow
    floor) at amortized O(1) per term, for callers that need a contiguous
    block of terms.
    """
    if isinstance(count, bool) or not isinstance(count, int) or count < 0:
        raise DomainError(f"term count must be a non-negative integer, got {count!r}")
    if count == 0:
        return []
    x = _validate_term_args(lambda_t, 0)
    if x == 0.0:
        return [1.0] + [0.0] * (count - 1)
    if x <= _ANCHOR_SWITCH:
        p = math.exp(-x)
        out = [p]
        for k in range(1, count):
            if p != 0.0:
                p *= x / k
                if p < UNDERFLOW_FLOOR:
                    p = 0.0
            out.append(p)
        return out
    # Large x: reproduce the modal anchoring of poisson_term for each index.
    return [poisson_term(x, j) for j in range(count)]


def exp_density(lam: float, t: float) -> float:
    """Exponential interarrival density lam * e^{-lam t} for t >= 0."""
    lam = float(lam)
    if not math.isfinite(lam) or lam <= 0.0:
        raise DomainError(f"rate must be positive and finite, got {lam!r}")
    t = float(t)
    if not math.isfinite(t) or t < 0.0:
        raise DomainError(f"time must be non-negative and finite, got {t!r}")
    return lam * math.exp(-lam * t)


def erlang_density(lam: float, n: int, t: float) -> float:
    """Density of the n-th arrival epoch, lam^n t^{n-1} e^{-lam t} / (n-1)!.

    The convolution count n starts at 1 (a single exponential stage); n = 0
    is rejected.  Internally this is lam * poisson_term(lam*t, n-1), which
    keeps the evaluation overflow-free for large lam*t.
    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise DomainError(f"stage count must be an integer, got {n!r}")
    if n < 1:
        raise DomainError(f"stage count must be at least 1, got {n}")
    lam = float(lam)
    if not math.isfinite(lam) or lam <= 0.0:
        raise DomainError(f"rate must be positive and finite, got {lam!r}")
    t = float(t)
    if not math.isfinite(t) or t < 0.0:
        raise DomainError(f"time must be non-negative and finite, got {t!r}")
    return lam * poisson_term(lam * t, n - 1)


def erlang_cdf(lam: float, n: int, t: float) -> float:
    """P(n-th arrival <= t) = 1 - sum_{j=0}^{n-1} e^{-lam t}(lam t)^j / j!.

    Exact complement of the Poisson partial sum; clamped into [0, 1] against
    last-bit rounding of the summation.
    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise DomainError(f"stage count must be an integer, got {n!r}")
    if n < 1:
        raise DomainError(f"stage count must be at least 1, got {n}")
    lam = float(lam)
    if not math.isfinite(lam) or lam <= 0.0:
        raise DomainError(f"rate must be positive and finite, got {lam!r}")
    t = float(t)
    if not math.isfinite(t) or t < 0.0:
        raise DomainError(f"time must be non-negative and finite, got {t!r}")
    x = lam * t
    mass = math.fsum(poisson_term(x, j) for j in range(n))
    cdf = 1.0 - mass
    if cdf < 0.0:
        return 0.0
    if cdf > 1.0:
        return 1.0
    return cdf
