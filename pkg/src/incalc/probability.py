"""Probabilities read off incidences, all in exact rational arithmetic.

p(A) is the total weight of i(A).  Because incidences are sets, the usual
identities are theorems here, not approximations: p(~A) = 1 - p(A),
p(A | B) = p(A) + p(B) - p(A & B), and the chain rule for conditioning all
hold as exact equalities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DegenerateMarginalError,
    InconsistentBoundsError,
    UnknownSentenceError,
    ZeroProbabilityError,
)
from .logic import Environment, Formula, incidence_of
from .rational import format_prob, sqrt_decimal_str
from .space import SampleSpace


def prob(f: Formula, env: Environment, space: SampleSpace) -> Fraction:
    """Exact probability of f: the weight of its incidence."""
    return space.weight_of(incidence_of(f, env, space))


def cond_prob(f: Formula, given: Formula, env: Environment, space: SampleSpace) -> Fraction:
    """p(f | given) = weight(i(f) & i(given)) / weight(i(given))."""
    base = space.weight_of(incidence_of(given, env, space))
    if base == 0:
        raise ZeroProbabilityError(f"cannot condition on {given}: probability is zero")
    joint = space.weight_of(incidence_of(f, env, space) & incidence_of(given, env, space))
    return joint / base


@dataclass(frozen=True)
class Correlation:
    """A correlation coefficient kept exact as long as possible.

    c itself is generally irrational, so we carry its square as an exact
    rational together with the sign; `decimal` renders sign * sqrt(c_squared)
    to any number of places without going through floats.
    """

    c_squared: Fraction
    sign: int

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0, or 1, got {self.sign}")
        if self.c_squared < 0:
            raise ValueError("c_squared cannot be negative")
        if (self.c_squared == 0) != (self.sign == 0):
            raise ValueError("sign must be 0 exactly when c_squared is 0")

    def decimal(self, digits: int = 6) -> str:
        if self.sign == 0:
            return "0"
        text = sqrt_decimal_str(self.c_squared, digits)
        return text if self.sign > 0 else "-" + text

    @property
    def value(self) -> float:
        return self.sign * math.sqrt(self.c_squared)

    def __str__(self) -> str:
        return f"{self.decimal()} (c^2 = {self.c_squared})"


def correlation(a: Formula, b: Formula, env: Environment, space: SampleSpace) -> Correlation:
    """Correlation between two sentences, defined through

        p(A & B) = p(A) p(B) + c(A, B) * sqrt(p(A) p(~A) p(B) p(~B))

    and solved for c.  Undefined (raises) when either marginal is 0 or 1,
    since the variance factor under the root vanishes.
    """
    ia = incidence_of(a, env, space)
    ib = incidence_of(b, env, space)
    pa = space.weight_of(ia)
    pb = space.weight_of(ib)
    if pa in (0, 1) or pb in (0, 1):
        raise DegenerateMarginalError(
            f"correlation undefined: marginals are {pa} and {pb}"
        )
    pab = space.weight_of(ia & ib)
    numer = pab - pa * pb
    denom = pa * (1 - pa) * pb * (1 - pb)
    sign = (numer > 0) - (numer < 0)
    return Correlation(c_squared=numer * numer / denom, sign=sign)


@dataclass(frozen=True)
class ProbabilityInterval:
    """Lower and upper probability derived from incidence bounds."""

    low: Fraction
    high: Fraction

    def __post_init__(self):
        if not 0 <= self.low <= self.high <= 1:
            raise ValueError(f"bad interval [{self.low}, {self.high}]")

    def __contains__(self, p: Fraction) -> bool:
        return self.low <= p <= self.high

    def __str__(self) -> str:
        return f"[{format_prob(self.low)}, {format_prob(self.high)}]"


def prob_interval(sentence: Formula, assignment) -> ProbabilityInterval:
    """Interval probability of a sentence under a bound assignment: the
    weights of its lower and upper incidence bounds."""
    if sentence not in assignment:
        raise UnknownSentenceError(f"no bounds registered for {sentence}")
    low, high = assignment.bounds(sentence)
    if not low.is_subset(high):
        raise InconsistentBoundsError(f"bounds for {sentence} have crossed")
    space = assignment.space
    return ProbabilityInterval(space.weight_of(low), space.weight_of(high))
