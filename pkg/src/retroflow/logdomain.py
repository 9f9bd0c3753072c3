"""Sign / log-magnitude scalars and overflow-proof accumulation.

Backward evolution multiplies mode ``n`` by ``exp(n**2 * pi**2 * t)``, which
leaves float range around mode 15 already at ``t = 1``.  All coefficient
arithmetic therefore lives in the log domain: a value is a sign in
``{-1, 0, +1}`` together with the natural log of its magnitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

LOG_ZERO = float("-inf")

# A difference of same-magnitude terms counts as exact zero once the residual
# drops below this relative magnitude (the float64 subnormal floor).
CANCEL_LOG = math.log(1e-300)


@dataclass(frozen=True)
class LogAmplitude:
    """A real number stored as sign and natural log of its magnitude.

    ``sign == 0`` represents exactly zero (``log_mag`` is then ``-inf``).
    Nonzero amplitudes must carry a finite ``log_mag``.
    """

    sign: int
    log_mag: float

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or +1, got {self.sign!r}")
        if self.sign == 0:
            object.__setattr__(self, "log_mag", LOG_ZERO)
        else:
            lm = float(self.log_mag)
            if math.isnan(lm) or math.isinf(lm):
                raise ValueError(f"nonzero amplitude needs a finite log magnitude, got {lm!r}")
            object.__setattr__(self, "log_mag", lm)

    @classmethod
    def zero(cls) -> "LogAmplitude":
        return cls(0, LOG_ZERO)

    @classmethod
    def from_linear(cls, value: float) -> "LogAmplitude":
        value = float(value)
        if value == 0.0:
            return cls.zero()
        if math.isnan(value) or math.isinf(value):
            raise ValueError(f"cannot encode {value!r}")
        return cls(1 if value > 0 else -1, math.log(abs(value)))

    def to_linear(self) -> float:
        """Decode to a float; overflows to ``+-inf`` and may underflow to 0."""
        if self.sign == 0:
            return 0.0
        try:
            mag = math.exp(self.log_mag)
        except OverflowError:
            mag = math.inf
        return self.sign * mag

    def times(self, other: "LogAmplitude") -> "LogAmplitude":
        sign = self.sign * other.sign
        if sign == 0:
            return LogAmplitude.zero()
        return LogAmplitude(sign, self.log_mag + other.log_mag)

    def scaled(self, factor: float) -> "LogAmplitude":
        """Multiply by a plain float factor."""
        factor = float(factor)
        if factor == 0.0 or self.sign == 0:
            return LogAmplitude.zero()
        sign = self.sign if factor > 0 else -self.sign
        return LogAmplitude(sign, self.log_mag + math.log(abs(factor)))

    def __neg__(self) -> "LogAmplitude":
        if self.sign == 0:
            return self
        return LogAmplitude(-self.sign, self.log_mag)


def log_add(a: LogAmplitude, b: LogAmplitude) -> LogAmplitude:
    """Sign-aware addition of two log-domain scalars."""
    if a.sign == 0:
        return b
    if b.sign == 0:
        return a
    if a.sign == b.sign:
        return LogAmplitude(a.sign, float(np.logaddexp(a.log_mag, b.log_mag)))
    return log_sub_magnitudes(a.log_mag, b.log_mag, a.sign)


def log_sub_magnitudes(log_a: float, log_b: float, sign_a: int) -> LogAmplitude:
    """``sign_a * (exp(log_a) - exp(log_b))`` with cancellation detection."""
    if log_a == log_b:
        return LogAmplitude.zero()
    big, small = max(log_a, log_b), min(log_a, log_b)
    if small == LOG_ZERO:
        rel = 0.0
    else:
        rel = math.log1p(-math.exp(small - big))
    if rel < CANCEL_LOG:
        return LogAmplitude.zero()
    sign = sign_a if log_a > log_b else -sign_a
    return LogAmplitude(sign, big + rel)


def log_sum(entries) -> LogAmplitude:
    """Sum an iterable of ``LogAmplitude`` by separate-sign accumulation."""
    pos, neg = [], []
    for e in entries:
        if e.sign > 0:
            pos.append(e.log_mag)
        elif e.sign < 0:
            neg.append(e.log_mag)
    from scipy.special import logsumexp

    log_pos = float(logsumexp(pos)) if pos else LOG_ZERO
    log_neg = float(logsumexp(neg)) if neg else LOG_ZERO
    if log_neg == LOG_ZERO:
        return LogAmplitude(1, log_pos) if log_pos != LOG_ZERO else LogAmplitude.zero()
    if log_pos == LOG_ZERO:
        return LogAmplitude(-1, log_neg)
    return log_sub_magnitudes(log_pos, log_neg, 1)
