"""Closed-form expressions for pointwise and cumulative expected backlog.

The pointwise quantity is E[(D(t) - P)^+] for Poisson demand D(t) with mean
lam*t and a fixed production level P.  For its running integral over [0, t]
six competing algebraic variants circulate; all six are implemented here
literally, each under its own tag, so that the adjudicator can compare them
against oracles that know nothing about any of them.

Writing x = lam*t and p_j = e^{-x} x^j / j!, the variants differ in the
upper limits of three bracketed sums, in the sign of the P(P+1)/(2 lam)
term, in the sign of the exponential prefactor, and in trailing correction
terms.  Every bracket is evaluated as a combination of regularized Poisson
terms with exact integer coefficients; raw powers of x never appear except
in the one variant whose printed form carries a growing exponential, which
is reproduced faithfully (and therefore diverges, as the adjudicator will
happily report).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .distributions import ModelParams, _poisson_prefix
from .errors import DomainError

__all__ = [
    "CandidateFormula",
    "CumulativeValue",
    "expected_backlog",
    "expected_backlog_asymptote",
    "cumulative_expected_backlog",
]

UNDEFINED_TERM = "undefined-term"


class CandidateFormula(enum.Enum):
    """The six cumulative-backlog variants under adjudication.

    original         three sums capped at P-1 / P-2 / P-3, +P(P+1)/(2 lam),
                     and a growing e^{+lam t} prefactor, exactly as printed.
    original-negexp  the same bracket with the exponent sign flipped to the
                     decaying e^{-lam t}.
    wolfram          machine-expanded variant: sums capped at P+1 plus a
                     two-term tail, with -P(P+1)/(2 lam).
    note             sums capped at P-1 / P-2 / P-3, -P(P+1)/(2 lam), and an
                     extra -4P x^{P-1}/(P-2)! inside the bracket.
    eq10             sums capped at P-2 / P-3 / P-4, -P(P+1)/(2 lam), and an
                     extra +2 x^{P-1}/(P-1)! inside the bracket.
    compact          single sum of (P-j)(P-j+1) x^j / j! with
                     +P(P+1)/(2 lam).
    """

    ORIGINAL = "original"
    ORIGINAL_NEGEXP = "original-negexp"
    WOLFRAM = "wolfram"
    NOTE = "note"
    EQ10 = "eq10"
    COMPACT = "compact"


@dataclass(frozen=True)
class CumulativeValue:
    """One candidate's cumulative expected backlog at a single time point."""

    value: float
    t: float
    candidate: CandidateFormula
    warnings: tuple[str, ...] = ()


def _validate_time(t: float) -> float:
    t = float(t)
    if not math.isfinite(t) or t < 0.0:
        raise DomainError(f"time must be non-negative and finite, got {t!r}")
    return t


def expected_backlog(params: ModelParams, t: float) -> float:
    """Pointwise expected backlog lam*t - P + sum_{i<P} (P-i) p_i(lam*t).

    The bracket is the standard loss-function correction, accumulated as a
    single sum of non-negative terms.  With P = 0 this is exactly lam*t.
    """
    t = _validate_time(t)
    lam, production = params.lam, params.production
    if production == 0:
        return lam * t
    terms = _poisson_prefix(lam * t, production)
    bracket = math.fsum((production - i) * terms[i] for i in range(production))
    return lam * t - production + bracket


def expected_backlog_asymptote(params: ModelParams, t: float) -> float:
    """Large-t linear asymptote lam*t - P of the pointwise expected backlog."""
    t = _validate_time(t)
    return params.lam * t - params.production


def _poly_plus(lam: float, production: int, t: float) -> float:
    return lam * t * t / 2.0 - production * t + production * (production + 1) / (2.0 * lam)


def _poly_minus(lam: float, production: int, t: float) -> float:
    return lam * t * t / 2.0 - production * t - production * (production + 1) / (2.0 * lam)


def _bracket_three_sums(production: int, terms: list[float]) -> float:
    """P(P+1) sum_{j<=P-1} p_j - 2P sum_{j<=P-2} (j+1) p_{j+1}
    + sum_{j<=P-3} (j+1)(j+2) p_{j+2}, with e^{-x} folded into each term."""
    p = production
    s1 = math.fsum(terms[j] for j in range(p))
    s2 = math.fsum((j + 1) * terms[j + 1] for j in range(p - 1))
    s3 = math.fsum((j + 1) * (j + 2) * terms[j + 2] for j in range(p - 2))
    return p * (p + 1) * s1 - 2 * p * s2 + s3


def _eval_original(lam: float, production: int, t: float) -> tuple[float, tuple[str, ...]]:
    # Raw powers and a growing exponential, reproduced as printed.  The
    # bracket is built from u_j = x^j / j! via the same one-step recurrence.
    x = lam * t
    p = production
    u = [1.0]
    for j in range(1, p):
        u.append(u[-1] * x / j)
    s1 = math.fsum(u[j] for j in range(p))
    s2 = math.fsum(u[j] * x for j in range(p - 1))
    s3 = math.fsum(u[j] * x * x for j in range(p - 2))
    bracket = p * (p + 1) * s1 - 2 * p * s2 + s3
    value = _poly_plus(lam, p, t)
    if bracket != 0.0:
        try:
            grow = math.exp(x)
        except OverflowError:
            grow = math.inf
        value = value - grow * bracket / (2.0 * lam)
    return value, ()


def _eval_original_negexp(lam: float, production: int, t: float) -> tuple[float, tuple[str, ...]]:
    terms = _poisson_prefix(lam * t, production + 1)
    bracket = _bracket_three_sums(production, terms)
    return _poly_plus(lam, production, t) - bracket / (2.0 * lam), ()


def _eval_wolfram(lam: float, production: int, t: float) -> tuple[float, tuple[str, ...]]:
    p = production
    terms = _poisson_prefix(lam * t, p + 4)
    s1 = math.fsum(terms[i] for i in range(p + 2))
    s2 = math.fsum((i + 1) * terms[i + 1] for i in range(p + 2))
    s3 = math.fsum((i + 1) * (i + 2) * terms[i + 2] for i in range(p + 2))
    tail = (p - 1) * (p + 2) * terms[p + 2] - (p + 2) * (p + 3) * terms[p + 3]
    bracket = p * (p + 1) * s1 - 2 * p * s2 + s3 + tail
    return _poly_minus(lam, p, t) - bracket / (2.0 * lam), ()


def _eval_note(lam: float, production: int, t: float) -> tuple[float, tuple[str, ...]]:
    p = production
    terms = _poisson_prefix(lam * t, p + 1)
    bracket = _bracket_three_sums(p, terms)
    warnings: tuple[str, ...] = ()
    if p >= 2:
        # -4P x^{P-1}/(P-2)! with e^{-x} folded in: -4P (P-1) p_{P-1}.
        bracket += -4 * p * (p - 1) * terms[p - 1]
    else:
        # (P-2)! is undefined for P < 2; the term is dropped and flagged.
        warnings = (UNDEFINED_TERM,)
    return _poly_minus(lam, p, t) - bracket / (2.0 * lam), warnings


def _eval_eq10(lam: float, production: int, t: float) -> tuple[float, tuple[str, ...]]:
    p = production
    terms = _poisson_prefix(lam * t, max(p, 1))
    s1 = math.fsum(terms[i] for i in range(p - 1))
    s2 = math.fsum((i + 1) * terms[i + 1] for i in range(p - 2))
    s3 = math.fsum((i + 1) * (i + 2) * terms[i + 2] for i in range(p - 3))
    bracket = p * (p + 1) * s1 - 2 * p * s2 + s3
    warnings: tuple[str, ...] = ()
    if p >= 1:
        # +2 x^{P-1}/(P-1)! with e^{-x} folded in: +2 p_{P-1}.
        bracket += 2.0 * terms[p - 1]
    else:
        # (P-1)! is undefined for P = 0; dropped and flagged, mirroring the
        # convention used for the note variant.
        warnings = (UNDEFINED_TERM,)
    return _poly_minus(lam, p, t) - bracket / (2.0 * lam), warnings


def _eval_compact(lam: float, production: int, t: float) -> tuple[float, tuple[str, ...]]:
    p = production
    terms = _poisson_prefix(lam * t, p)
    bracket = math.fsum((p - j) * (p - j + 1) * terms[j] for j in range(p))
    return _poly_plus(lam, p, t) - bracket / (2.0 * lam), ()


_EVALUATORS = {
    CandidateFormula.ORIGINAL: _eval_original,
    CandidateFormula.ORIGINAL_NEGEXP: _eval_original_negexp,
    CandidateFormula.WOLFRAM: _eval_wolfram,
    CandidateFormula.NOTE: _eval_note,
    CandidateFormula.EQ10: _eval_eq10,
    CandidateFormula.COMPACT: _eval_compact,
}


def cumulative_expected_backlog(
    params: ModelParams, t: float, candidate: CandidateFormula
) -> CumulativeValue:
    """Evaluate one candidate's cumulative expected backlog over [0, t].

    Each tag maps to exactly one evaluation rule; sums whose upper limit
    falls below the lower one are empty.  Variants containing a factorial
    of a negative integer at small P return the remaining terms with an
    ``undefined-term`` warning instead of raising.
    """
    t = _validate_time(t)
    if not isinstance(candidate, CandidateFormula):
        raise DomainError(f"unknown candidate {candidate!r}")
    value, warnings = _EVALUATORS[candidate](params.lam, params.production, t)
    return CumulativeValue(value=value, t=t, candidate=candidate, warnings=warnings)
