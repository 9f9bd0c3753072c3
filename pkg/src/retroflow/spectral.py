"""Spectral states of a diagonal semigroup and the forward flow.

A state is a finite list of modal coefficients (stored sign/log-magnitude)
on a strictly negative spectrum, plus an analytic *tail envelope* describing
the coefficient magnitudes beyond the truncation.  Tail envelopes are what
make horizons and norms computable in closed form; they denote nonnegative
coefficients, and linear combinations may widen an envelope one-sidedly
(the widened envelope always dominates the true coefficients).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.special import erfc, logsumexp, zeta

from .logdomain import LOG_ZERO, LogAmplitude, log_sub_magnitudes

# Relative accuracy target for tail series summation.
SERIES_RTOL = 1e-12
_LOG_SERIES_RTOL = math.log(SERIES_RTOL)


def exp_or_inf(log_value: float) -> float:
    """Decode a log value to a float, overflowing honestly to ``inf``."""
    if log_value == LOG_ZERO:
        return 0.0
    try:
        return math.exp(log_value)
    except OverflowError:
        return math.inf


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------

def _heat_eigenvalues(num_modes: int) -> np.ndarray:
    n = np.arange(1, num_modes + 1, dtype=float)
    return -((n * math.pi) ** 2)


@dataclass(frozen=True)
class Spectrum:
    """Strictly decreasing, strictly negative eigenvalues of the generator.

    ``kind == "heat"`` marks the Dirichlet Laplacian law ``-(n*pi)**2``, which
    extends past the truncation and so enables tail analytics.  Custom spectra
    carry no law beyond their listed modes and admit only zero tails.
    """

    eigenvalues: np.ndarray
    kind: str = "custom"

    def __post_init__(self):
        ev = np.asarray(self.eigenvalues, dtype=float)
        ev = ev.copy()
        ev.flags.writeable = False
        object.__setattr__(self, "eigenvalues", ev)
        if self.kind not in ("heat", "custom"):
            raise ValueError(f"unknown spectrum kind {self.kind!r}")
        if ev.size and not np.all(ev < 0):
            raise ValueError("all eigenvalues must be strictly negative")
        if ev.size > 1 and not np.all(np.diff(ev) < 0):
            raise ValueError("eigenvalues must be strictly decreasing")
        if self.kind == "heat" and ev.size:
            expected = _heat_eigenvalues(ev.size)
            if not np.allclose(ev, expected, rtol=1e-12, atol=0.0):
                raise ValueError("heat spectrum must follow -(n*pi)**2")

    @property
    def num_modes(self) -> int:
        return int(self.eigenvalues.size)

    def eigenvalue_beyond(self, n: int) -> float:
        """Eigenvalue of mode ``n`` (1-based) past the truncation; heat only."""
        if self.kind != "heat":
            raise ValueError("custom spectra carry no eigenvalue law beyond the truncation")
        return -((n * math.pi) ** 2)

    def extended(self, num_modes: int) -> "Spectrum":
        """Same law with more explicit modes; heat only."""
        if num_modes < self.num_modes:
            raise ValueError("cannot shrink a spectrum")
        if self.kind != "heat":
            raise ValueError("custom spectra cannot be extended")
        return Spectrum(_heat_eigenvalues(num_modes), "heat")

    def __eq__(self, other):
        if not isinstance(other, Spectrum):
            return NotImplemented
        return self.kind == other.kind and np.array_equal(self.eigenvalues, other.eigenvalues)

    __hash__ = None


def make_heat_spectrum(num_modes: int) -> Spectrum:
    """Dirichlet-Laplacian spectrum ``-(n*pi)**2`` for ``n = 1..num_modes``."""
    if num_modes < 1:
        raise ValueError("num_modes must be at least 1")
    return Spectrum(_heat_eigenvalues(int(num_modes)), "heat")


# ---------------------------------------------------------------------------
# tail envelopes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ZeroTail:
    """No coefficients beyond the truncation."""


@dataclass(frozen=True)
class ExpTail:
    """``|a_n| = coeff * exp(rate * lambda_n)`` for modes past the truncation.

    ``rate > 0`` decays (square-summable); functionals may carry ``rate <= 0``.
    """

    rate: float
    coeff: float

    def __post_init__(self):
        object.__setattr__(self, "rate", float(self.rate))
        object.__setattr__(self, "coeff", float(self.coeff))
        if not math.isfinite(self.rate):
            raise ValueError("rate must be finite")
        if not (self.coeff >= 0.0 and math.isfinite(self.coeff)):
            raise ValueError("coeff must be finite and nonnegative")


@dataclass(frozen=True)
class PowerTail:
    """``|a_n| = coeff * n**(-power)`` past the truncation; needs ``power > 1/2``."""

    power: float
    coeff: float

    def __post_init__(self):
        object.__setattr__(self, "power", float(self.power))
        object.__setattr__(self, "coeff", float(self.coeff))
        if not self.power > 0.5:
            raise ValueError("power must exceed 1/2 for a square-summable tail")
        if not (self.coeff >= 0.0 and math.isfinite(self.coeff)):
            raise ValueError("coeff must be finite and nonnegative")


TailModel = Union[ZeroTail, ExpTail, PowerTail]
ZERO_TAIL = ZeroTail()


def _normalized_tail(tail: TailModel) -> TailModel:
    if isinstance(tail, (ExpTail, PowerTail)) and tail.coeff == 0.0:
        return ZERO_TAIL
    return tail


def _decreasing_log_series(term_log, start: int) -> float:
    """log of ``sum_{n >= start} exp(term_log(n))`` for strictly decreasing terms.

    Stops once a geometric remainder bound (using the current term ratio)
    drops below ``SERIES_RTOL`` relative to the partial sum.
    """
    total = LOG_ZERO
    n = start
    while True:
        cur = term_log(n)
        total = float(np.logaddexp(total, cur))
        nxt = term_log(n + 1)
        ratio = nxt - cur  # log of the term ratio, < 0
        if ratio < -700.0:
            remainder = nxt
        else:
            remainder = nxt - math.log1p(-math.exp(ratio))
        if remainder <= total + _LOG_SERIES_RTOL:
            return total
        n += 1
        if n > start + 2_000_000:
            raise RuntimeError("tail series did not converge; rate too small?")


def _log_gauss_tail(a: float, start: int) -> float:
    """log of ``sum_{n >= start} exp(-a * n**2)`` for ``a > 0``.

    Summed termwise to the series tolerance; degenerate rates (``a`` below
    1e-6, reachable by backward steps very close to an open horizon endpoint)
    switch to the midpoint integral, whose relative error is of order ``a``.
    """
    if a >= 1e-6:
        return _decreasing_log_series(lambda n: -a * n * n, start)
    edge = math.sqrt(a) * (start - 0.5)
    return 0.5 * math.log(math.pi / a) + math.log(0.5 * float(erfc(edge)))


def _log_sup_power_vs_gauss(power: float, rate: float, start: int) -> float:
    """Upper bound for ``sup_{n >= start} power*ln(n) - rate*(n*pi)**2`` via
    the continuous maximizer (one-sided, used only to build envelopes)."""
    n_star = math.sqrt(power / (2.0 * rate)) / math.pi
    n_at = max(float(start), n_star)
    return power * math.log(n_at) - rate * (n_at * math.pi) ** 2


def _tail_log_sq_sum(spectrum: Spectrum, tail: TailModel) -> float:
    """log of the tail's contribution ``sum_{n > N} a_n**2``."""
    if isinstance(tail, ZeroTail):
        return LOG_ZERO
    start = spectrum.num_modes + 1
    if isinstance(tail, ExpTail):
        if tail.rate <= 0.0:
            raise ValueError("tail with nonpositive rate has no finite norm")
        series = _log_gauss_tail(2.0 * tail.rate * math.pi**2, start)
        return 2.0 * math.log(tail.coeff) + series
    # PowerTail: sum_{n > N} n**(-2p) is the Hurwitz zeta value.
    z = float(zeta(2.0 * tail.power, start))
    return 2.0 * math.log(tail.coeff) + math.log(z)


def _tail_cross_log(spectrum: Spectrum, a: TailModel, b: TailModel) -> float:
    """log of ``sum_{n > N} law_a(n) * law_b(n)``; envelopes are nonnegative."""
    if isinstance(a, ZeroTail) or isinstance(b, ZeroTail):
        return LOG_ZERO
    start = spectrum.num_modes + 1
    log_c = math.log(a.coeff) + math.log(b.coeff)
    if isinstance(a, ExpTail) and isinstance(b, ExpTail):
        rate = a.rate + b.rate
        if rate <= 0.0:
            raise ValueError("cross term of growing tails has no finite value")
        return log_c + _log_gauss_tail(rate * math.pi**2, start)
    if isinstance(a, PowerTail) and isinstance(b, PowerTail):
        return log_c + math.log(float(zeta(a.power + b.power, start)))
    exp_t = a if isinstance(a, ExpTail) else b
    pow_t = b if isinstance(a, ExpTail) else a
    if exp_t.rate <= 0.0:
        raise ValueError("cross term of a growing tail has no finite value")
    series = _decreasing_log_series(
        lambda n: -exp_t.rate * (n * math.pi) ** 2 - pow_t.power * math.log(n), start
    )
    return log_c + series


def combine_tails_add(spectrum: Spectrum, a: TailModel, b: TailModel) -> TailModel:
    """Envelope dominating ``|x_n + y_n|`` past the truncation.

    Exact when the laws share family and parameters; otherwise a one-sided
    dominating law in the weaker family.
    """
    a, b = _normalized_tail(a), _normalized_tail(b)
    if isinstance(a, ZeroTail):
        return b
    if isinstance(b, ZeroTail):
        return a
    if isinstance(a, ExpTail) and isinstance(b, ExpTail):
        if a.rate == b.rate:
            return ExpTail(a.rate, a.coeff + b.coeff)
        return ExpTail(min(a.rate, b.rate), a.coeff + b.coeff)
    if isinstance(a, PowerTail) and isinstance(b, PowerTail):
        if a.power == b.power:
            return PowerTail(a.power, a.coeff + b.coeff)
        return PowerTail(min(a.power, b.power), a.coeff + b.coeff)
    exp_t = a if isinstance(a, ExpTail) else b
    pow_t = b if isinstance(a, ExpTail) else a
    start = spectrum.num_modes + 1
    # exp law under a power envelope: coeff * sup_n n**p * exp(rate * lam_n)
    sup = _log_sup_power_vs_gauss(pow_t.power, exp_t.rate, start)
    return PowerTail(pow_t.power, pow_t.coeff + exp_t.coeff * math.exp(sup))


def combine_tails_sub(spectrum: Spectrum, a: TailModel, b: TailModel) -> TailModel:
    """Envelope dominating ``|x_n - y_n|``; cancels exactly for identical laws.

    Near-identical laws of the same family leave a residual envelope whose
    coefficient is proportional to the parameter gap, so float-perturbed
    parameters from different evolution paths still compare as close.
    """
    a, b = _normalized_tail(a), _normalized_tail(b)
    if a == b:
        return ZERO_TAIL
    if isinstance(a, ExpTail) and isinstance(b, ExpTail):
        gap = abs(a.rate - b.rate)
        base = min(a.rate, b.rate)
        if base <= 0.0:
            raise ValueError("cannot difference growing tails")
        if gap == 0.0:
            return ExpTail(a.rate, abs(a.coeff - b.coeff))
        # |e^{r1 L} - e^{r2 L}| <= min(1, gap*|L|) e^{base L};  |L| e^{-b|L|} <= 1/(b e)
        slack = max(a.coeff, b.coeff) * gap * 2.0 / (base * math.e)
        return _normalized_tail(ExpTail(base / 2.0, slack + abs(a.coeff - b.coeff)))
    if isinstance(a, PowerTail) and isinstance(b, PowerTail):
        gap = abs(a.power - b.power)
        base = min(a.power, b.power)
        if gap == 0.0:
            return _normalized_tail(PowerTail(a.power, abs(a.coeff - b.coeff)))
        eps = (base - 0.5) / 2.0
        slack = max(a.coeff, b.coeff) * gap / (math.e * eps)
        return _normalized_tail(PowerTail(base - eps, slack + abs(a.coeff - b.coeff)))
    return combine_tails_add(spectrum, a, b)


def scale_tail(tail: TailModel, factor: float) -> TailModel:
    factor = abs(float(factor))
    if isinstance(tail, ZeroTail) or factor == 0.0:
        return ZERO_TAIL
    if isinstance(tail, ExpTail):
        return ExpTail(tail.rate, tail.coeff * factor)
    return PowerTail(tail.power, tail.coeff * factor)


# ---------------------------------------------------------------------------
# states
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectralState:
    """Truncated modal coefficients in sign/log form plus a tail envelope.

    Immutable; all operations on states are pure functions.
    """

    spectrum: Spectrum
    signs: np.ndarray
    log_mags: np.ndarray
    tail: TailModel = ZERO_TAIL

    def __post_init__(self):
        signs = np.asarray(self.signs, dtype=np.int8).copy()
        logs = np.asarray(self.log_mags, dtype=float).copy()
        if signs.shape != (self.spectrum.num_modes,) or logs.shape != signs.shape:
            raise ValueError("coefficient arrays must match the spectrum length")
        if not np.all(np.isin(signs, (-1, 0, 1))):
            raise ValueError("signs must lie in {-1, 0, +1}")
        signs[logs == LOG_ZERO] = 0
        logs[signs == 0] = LOG_ZERO
        live = signs != 0
        if np.any(~np.isfinite(logs[live])):
            raise ValueError("nonzero coefficients need finite log magnitudes")
        signs.flags.writeable = False
        logs.flags.writeable = False
        object.__setattr__(self, "signs", signs)
        object.__setattr__(self, "log_mags", logs)
        tail = _normalized_tail(self.tail)
        if isinstance(tail, ExpTail) and tail.rate <= 0.0:
            raise ValueError("a state's exponential tail must decay (rate > 0)")
        if not isinstance(tail, ZeroTail) and self.spectrum.kind != "heat":
            raise ValueError("tail envelopes need an eigenvalue law; use a heat spectrum")
        object.__setattr__(self, "tail", tail)

    # construction -----------------------------------------------------------

    @classmethod
    def from_values(cls, spectrum: Spectrum, values, tail: TailModel = ZERO_TAIL) -> "SpectralState":
        """Build from plain linear coefficient values."""
        values = np.asarray(values, dtype=float)
        signs = np.sign(values).astype(np.int8)
        with np.errstate(divide="ignore"):
            logs = np.where(values == 0.0, LOG_ZERO, np.log(np.abs(values)))
        return cls(spectrum, signs, logs, tail)

    @classmethod
    def zeros(cls, spectrum: Spectrum, tail: TailModel = ZERO_TAIL) -> "SpectralState":
        n = spectrum.num_modes
        return cls(spectrum, np.zeros(n, dtype=np.int8), np.full(n, LOG_ZERO), tail)

    @classmethod
    def basis(cls, spectrum: Spectrum, mode: int) -> "SpectralState":
        """Unit coefficient on one mode (1-based)."""
        if not 1 <= mode <= spectrum.num_modes:
            raise ValueError(f"mode {mode} outside 1..{spectrum.num_modes}")
        n = spectrum.num_modes
        signs = np.zeros(n, dtype=np.int8)
        logs = np.full(n, LOG_ZERO)
        signs[mode - 1] = 1
        logs[mode - 1] = 0.0
        return cls(spectrum, signs, logs)

    # inspection --------------------------------------------------------------

    @property
    def num_modes(self) -> int:
        return self.spectrum.num_modes

    def coeff(self, mode: int) -> LogAmplitude:
        i = mode - 1
        return LogAmplitude(int(self.signs[i]), float(self.log_mags[i]))

    def coeff_values(self) -> np.ndarray:
        """Linear coefficient values; overflow maps to ``+-inf``."""
        with np.errstate(over="ignore"):
            return self.signs * np.exp(self.log_mags)

    def is_zero(self) -> bool:
        return not np.any(self.signs) and isinstance(self.tail, ZeroTail)

    def __eq__(self, other):
        if not isinstance(other, SpectralState):
            return NotImplemented
        return (
            self.spectrum == other.spectrum
            and np.array_equal(self.signs, other.signs)
            and np.array_equal(self.log_mags, other.log_mags)
            and self.tail == other.tail
        )

    __hash__ = None


def _require_same_spectrum(x: SpectralState, y: SpectralState):
    if x.spectrum != y.spectrum:
        raise ValueError("states live on different spectra")


# ---------------------------------------------------------------------------
# the forward flow
# ---------------------------------------------------------------------------

# Below this step, an evolved power tail keeps its family (a power envelope
# damped at the first tail mode) instead of converting to an exponential
# envelope; rounding-level steps from offset bookkeeping then stay family
# stable and cancel in differences.
_POWER_FAMILY_STEP = 1e-6


def evolve(state: SpectralState, t: float) -> SpectralState:
    """Forward flow: mode ``n`` is damped by ``exp(lambda_n * t)``, ``t >= 0``.

    Tail envelopes transform in closed form, except that a power tail's exact
    image is no longer a power law: it maps to a dominating exponential
    envelope (rate ``t``, constant taken at the first tail mode), or, for
    steps below ``_POWER_FAMILY_STEP``, to a dominating power envelope.  Both
    over-approximations are one-sided and affect only tail norms.
    """
    t = float(t)
    if t < 0.0:
        raise ValueError("negative times are backward evolution; use backward_evolve")
    if t == 0.0:
        return state
    logs = state.log_mags + state.spectrum.eigenvalues * t
    tail = state.tail
    if isinstance(tail, ExpTail):
        tail = ExpTail(tail.rate + t, tail.coeff)
    elif isinstance(tail, PowerTail):
        first = state.spectrum.eigenvalue_beyond(state.num_modes + 1)
        if t < _POWER_FAMILY_STEP:
            tail = PowerTail(tail.power, tail.coeff * math.exp(first * t))
        else:
            tail = ExpTail(t, tail.coeff * (state.num_modes + 1) ** (-tail.power))
    return SpectralState(state.spectrum, state.signs, logs, tail)


# ---------------------------------------------------------------------------
# norms and inner products
# ---------------------------------------------------------------------------

def log_norm(state: SpectralState) -> float:
    """Natural log of the ambient (square-sum) norm; ``-inf`` for zero."""
    live = state.signs != 0
    finite_part = float(logsumexp(2.0 * state.log_mags[live])) if np.any(live) else LOG_ZERO
    tail_part = _tail_log_sq_sum(state.spectrum, state.tail)
    return 0.5 * float(np.logaddexp(finite_part, tail_part))


def norm(state: SpectralState) -> float:
    """Ambient norm as a float; may overflow to ``inf`` for backward images."""
    return exp_or_inf(log_norm(state))


def log_tail_norm(state: SpectralState) -> float:
    return 0.5 * _tail_log_sq_sum(state.spectrum, state.tail)


def tail_norm(state: SpectralState) -> float:
    """Norm of the tail-only part beyond the truncation."""
    return exp_or_inf(log_tail_norm(state))


def log_inner_product(x: SpectralState, y: SpectralState) -> LogAmplitude:
    """Sign-aware log-domain inner product, including the tail cross term."""
    _require_same_spectrum(x, y)
    prod_sign = x.signs.astype(int) * y.signs.astype(int)
    prod_log = x.log_mags + y.log_mags
    pos = prod_sign > 0
    neg = prod_sign < 0
    log_pos = float(logsumexp(prod_log[pos])) if np.any(pos) else LOG_ZERO
    log_neg = float(logsumexp(prod_log[neg])) if np.any(neg) else LOG_ZERO
    cross = _tail_cross_log(x.spectrum, x.tail, y.tail)
    log_pos = float(np.logaddexp(log_pos, cross))
    if log_pos == LOG_ZERO and log_neg == LOG_ZERO:
        return LogAmplitude.zero()
    if log_neg == LOG_ZERO:
        return LogAmplitude(1, log_pos)
    if log_pos == LOG_ZERO:
        return LogAmplitude(-1, log_neg)
    return log_sub_magnitudes(log_pos, log_neg, 1)


def inner_product(x: SpectralState, y: SpectralState) -> float:
    return log_inner_product(x, y).to_linear()


# ---------------------------------------------------------------------------
# linear structure
# ---------------------------------------------------------------------------

def add(x: SpectralState, y: SpectralState) -> SpectralState:
    """Modewise sign-aware log addition; tails combine by dominating envelope."""
    _require_same_spectrum(x, y)
    sa, la = x.signs.astype(int), x.log_mags
    sb, lb = y.signs.astype(int), y.log_mags
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        both = (sa != 0) & (sb != 0)
        same = both & (sa == sb)
        opp = both & (sa != sb)
        log_same = np.logaddexp(la, lb)
        big = np.maximum(la, lb)
        small = np.minimum(la, lb)
        log_opp = big + np.log1p(-np.exp(small - big))
        cancelled = opp & ((log_opp - big) < math.log(1e-300))
        sign_opp = np.where(la >= lb, sa, sb)
        out_sign = np.where(same, sa, np.where(opp, sign_opp, np.where(sa != 0, sa, sb)))
        out_log = np.where(same, log_same, np.where(opp, log_opp, np.where(sa != 0, la, lb)))
        out_sign = np.where(cancelled, 0, out_sign)
        out_log = np.where(cancelled, LOG_ZERO, out_log)
    tail = combine_tails_add(x.spectrum, x.tail, y.tail)
    return SpectralState(x.spectrum, out_sign.astype(np.int8), out_log, tail)


def scale(state: SpectralState, factor: float) -> SpectralState:
    factor = float(factor)
    if factor == 0.0:
        return SpectralState.zeros(state.spectrum)
    signs = state.signs * (1 if factor > 0 else -1)
    logs = state.log_mags + math.log(abs(factor))
    return SpectralState(state.spectrum, signs, logs, scale_tail(state.tail, factor))


def negate(state: SpectralState) -> SpectralState:
    return SpectralState(state.spectrum, -state.signs, state.log_mags, state.tail)


def subtract(x: SpectralState, y: SpectralState) -> SpectralState:
    """``x - y``; identical tail laws cancel exactly, near ones leave a residual."""
    _require_same_spectrum(x, y)
    diff = add(SpectralState(x.spectrum, x.signs, x.log_mags), negate(
        SpectralState(y.spectrum, y.signs, y.log_mags)))
    tail = combine_tails_sub(x.spectrum, x.tail, y.tail)
    return SpectralState(x.spectrum, diff.signs, diff.log_mags, tail)


def embed(state: SpectralState, num_modes: int) -> SpectralState:
    """Deepen the truncation: write the tail law out as explicit modes up to
    ``num_modes`` (laws denote nonnegative coefficients, so new modes carry a
    plus sign) and keep the law beyond, which is per-mode and unchanged."""
    if num_modes == state.num_modes:
        return state
    spectrum = state.spectrum.extended(num_modes)
    signs = np.zeros(num_modes, dtype=np.int8)
    logs = np.full(num_modes, LOG_ZERO)
    signs[: state.num_modes] = state.signs
    logs[: state.num_modes] = state.log_mags
    tail = state.tail
    if not isinstance(tail, ZeroTail):
        for n in range(state.num_modes + 1, num_modes + 1):
            if isinstance(tail, ExpTail):
                logs[n - 1] = math.log(tail.coeff) + tail.rate * spectrum.eigenvalues[n - 1]
            else:
                logs[n - 1] = math.log(tail.coeff) - tail.power * math.log(n)
            signs[n - 1] = 1
    return SpectralState(spectrum, signs, logs, tail)


def _aligned(x: SpectralState, y: SpectralState):
    if x.spectrum == y.spectrum:
        return x, y
    if x.spectrum.kind == "heat" and y.spectrum.kind == "heat":
        depth = max(x.num_modes, y.num_modes)
        return embed(x, depth), embed(y, depth)
    raise ValueError("states live on different spectra")


def log_distance(x: SpectralState, y: SpectralState) -> float:
    """log of the ambient distance; heat-law states of different truncation
    depths are aligned first (the depth is representation, not substance)."""
    x, y = _aligned(x, y)
    return log_norm(subtract(x, y))


def relative_gap(x: SpectralState, y: SpectralState) -> float:
    """``|x - y| / max(1, |x|, |y|)`` evaluated safely through logs."""
    gap = log_distance(x, y)
    if gap == LOG_ZERO:
        return 0.0
    scale_log = max(0.0, log_norm(x), log_norm(y))
    return math.exp(gap - scale_log)
