"""How far backward a trajectory extends, and the backward flow itself.

The horizon of a state is the supremum of backward times for which the
coefficient series stays square-summable.  It is always computed symbolically
from the tail envelope, never by numerical summation: a partial sum can
suggest divergence but cannot certify it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import HorizonExceededError, NotFullyReversibleError
from .spectral import (
    ExpTail,
    SpectralState,
    ZeroTail,
    log_norm,
    norm,
)


@dataclass(frozen=True)
class Horizon:
    """Backward reach of a trajectory; ``open_at_endpoint`` means the supremum
    itself is not attained."""

    value: float
    open_at_endpoint: bool

    def __post_init__(self):
        if self.value < 0.0:
            raise ValueError("horizon cannot be negative")
        if math.isinf(self.value) and self.open_at_endpoint:
            raise ValueError("an infinite horizon has no endpoint to be open at")

    def allows(self, t: float) -> bool:
        """Whether a backward step of ``t`` stays inside the ambient space."""
        if t <= 0.0:
            return True
        if math.isinf(self.value):
            return True
        return t < self.value if self.open_at_endpoint else t <= self.value


class ReversibilityClass(enum.Enum):
    """Trichotomy: backward to minus infinity / up to a finite time / not at all."""

    FULL = "D"
    PARTIAL = "Dt"
    NONE = "Z"


@dataclass(frozen=True)
class Classification:
    label: ReversibilityClass
    horizon: Horizon
    certificate: str


def horizon(state: SpectralState) -> Horizon:
    """Symbolic horizon from the tail envelope.

    Finitely many explicit modes never restrict backward reach; only the tail
    law does.  An exponential envelope of rate ``g`` diverges termwise at
    backward time ``g`` (open endpoint); a power envelope diverges for every
    positive backward time.
    """
    tail = state.tail
    if isinstance(tail, ZeroTail):
        return Horizon(math.inf, False)
    if isinstance(tail, ExpTail):
        return Horizon(tail.rate, True)
    return Horizon(0.0, True)


def classify(state: SpectralState) -> Classification:
    h = horizon(state)
    tail = state.tail
    if math.isinf(h.value):
        return Classification(
            ReversibilityClass.FULL, h,
            "zero tail: finite modal sum, backward reach unbounded",
        )
    if h.value > 0.0:
        return Classification(
            ReversibilityClass.PARTIAL, h,
            f"exponential tail envelope (rate {tail.rate!r}): coefficient series "
            f"diverges at backward time {tail.rate!r}",
        )
    return Classification(
        ReversibilityClass.NONE, h,
        f"power tail envelope (power {tail.power!r}): exponential growth "
        "dominates any power law, so every positive backward step diverges",
    )


def backward_evolve(state: SpectralState, t: float) -> SpectralState:
    """Backward flow: mode ``n`` is amplified by ``exp(-lambda_n * t)``.

    Legal only within the horizon; the error carries the horizon so callers
    can see where the trajectory stops.  ``t = 0`` is the identity and is
    always legal.
    """
    t = float(t)
    if t < 0.0:
        raise ValueError("negative backward times are forward evolution; use evolve")
    if t == 0.0:
        return state
    h = horizon(state)
    if not h.allows(t):
        raise HorizonExceededError(t, h)
    logs = state.log_mags - state.spectrum.eigenvalues * t
    tail = state.tail
    if isinstance(tail, ExpTail):
        tail = ExpTail(tail.rate - t, tail.coeff)
    return SpectralState(state.spectrum, state.signs, logs, tail)


def amplification_log(state: SpectralState, t: float) -> float:
    """Natural log of the worst amplification factor of a backward step,
    ``-lambda_N * t`` for the deepest retained mode.  Reported separately
    because the factor itself overflows floats well inside desk scale."""
    if state.num_modes == 0:
        return 0.0
    return -float(state.spectrum.eigenvalues[-1]) * float(t)


def log_backward_norm(state: SpectralState, t: float) -> float:
    """log of the norm of the backward image at time ``t``."""
    return log_norm(backward_evolve(state, t))


def frechet_seminorms(state: SpectralState, n_max: int) -> list[float]:
    """The countable seminorm family: value ``k`` is the norm of the backward
    image at integer time ``k``, for ``k = 0..n_max``.

    Only fully reversible states carry the whole family.  Values can overflow
    to ``inf``; use :func:`log_frechet_seminorms` for deep modes.
    """
    return _seminorms(state, n_max, linear=True)


def log_frechet_seminorms(state: SpectralState, n_max: int) -> list[float]:
    return _seminorms(state, n_max, linear=False)


def _seminorms(state: SpectralState, n_max: int, linear: bool) -> list[float]:
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    c = classify(state)
    if c.label is not ReversibilityClass.FULL:
        raise NotFullyReversibleError(
            f"seminorm family needs unbounded backward reach; state is {c.label.value} "
            f"({c.certificate})"
        )
    out = []
    for k in range(n_max + 1):
        img = backward_evolve(state, float(k))
        out.append(norm(img) if linear else log_norm(img))
    return out
