"""Discrete fractional-calculus kernel.

Grunwald-Letnikov difference operators with truncated memory, the
Oustaloup band-limited rational approximation of s^gamma, a direct-series
Mittag-Leffler evaluator, and the four-term extended-memory weights used
by the extended-memory pitch controller.
"""

import math

import numpy as np

from .errors import InvalidParameter, NumericRange

__all__ = [
    "gl_coefficients",
    "GlWindow",
    "OustaloupFilter",
    "oustaloup_design",
    "oustaloup_response",
    "mittag_leffler",
    "em_weights",
]


def gl_coefficients(gamma, count):
    """Grunwald-Letnikov binomial weights c_0..c_{count-1}.

    c_0 = 1 and c_k = c_{k-1} * (k - 1 - gamma) / k, the signed binomial
    expansion of the backward-difference operator of order ``gamma``.
    Negative orders give integration weights (all positive).
    """
    if not math.isfinite(gamma):
        raise InvalidParameter(f"fractional order must be finite, got {gamma}")
    if count < 1:
        raise InvalidParameter("count must be >= 1")
    c = np.empty(count)
    c[0] = 1.0
    for k in range(1, count):
        c[k] = c[k - 1] * (k - 1 - gamma) / k
    return c


class GlWindow:
    """Truncated-memory G-L operator over a uniformly sampled signal.

    Keeps the most recent ``trunc + 1`` samples in a ring buffer; samples
    before the first push are treated as zero, which anchors the operator's
    lower terminal at the start of the signal.
    """

    def __init__(self, gamma, dt, trunc):
        if not math.isfinite(gamma):
            raise InvalidParameter(f"fractional order must be finite, got {gamma}")
        if dt <= 0:
            raise InvalidParameter("sample period must be positive")
        if trunc < 1:
            raise InvalidParameter("truncation order must be >= 1")
        self.gamma = gamma
        self.dt = dt
        self.trunc = int(trunc)
        self._coeffs = gl_coefficients(gamma, self.trunc + 1)
        self._scale = dt ** (-gamma)
        self._buf = np.zeros(self.trunc + 1)
        self._head = 0  # index of the newest sample
        self._count = 0

    def reset(self):
        self._buf[:] = 0.0
        self._head = 0
        self._count = 0

    def push(self, sample):
        """Insert a sample without evaluating the operator."""
        if not math.isfinite(sample):
            raise InvalidParameter("sample must be finite")
        self._head = (self._head + 1) % (self.trunc + 1)
        self._buf[self._head] = sample
        self._count = min(self._count + 1, self.trunc + 1)

    def value(self):
        """Operator value at the newest sample (zero history counts as zero)."""
        n = self.trunc + 1
        # newest-first view of the ring buffer
        idx = (self._head - np.arange(n)) % n
        return self._scale * float(self._coeffs @ self._buf[idx])

    def apply(self, sample):
        """Push a sample and return the operator value at that instant."""
        self.push(sample)
        return self.value()


def gl_apply(window, sample):
    """Functional alias for :meth:`GlWindow.apply`."""
    return window.apply(sample)


class OustaloupFilter:
    """Band-limited zero-pole-gain approximation of s^gamma.

    ``zeros`` and ``poles`` hold the (positive) corner frequencies in rad/s;
    the realized transfer function is K * prod (s + wz) / (s + wp), stable
    because every corner maps to the left half plane.
    """

    def __init__(self, gamma, omega_b, omega_h, gain, zeros, poles):
        self.gamma = gamma
        self.omega_b = omega_b
        self.omega_h = omega_h
        self.gain = gain
        self.zeros = np.asarray(zeros, dtype=float)
        self.poles = np.asarray(poles, dtype=float)

    def response(self, omega):
        """Complex frequency response at angular frequency ``omega`` (rad/s)."""
        s = 1j * np.asarray(omega, dtype=float)
        num = np.ones_like(s, dtype=complex)
        for wz, wp in zip(self.zeros, self.poles):
            num = num * (s + wz) / (s + wp)
        return self.gain * num


def oustaloup_design(gamma, omega_b, omega_h, order):
    """Design the recursive zero/pole distribution approximating s^gamma.

    Valid for 0 < gamma < 1 over the band (omega_b, omega_h); the half-order
    ``order`` yields 2*order + 1 zero/pole pairs.  Orders at or above one are
    realized by composing an integer derivative with the fractional
    remainder, handled by the callers that need it.
    """
    if not 0 < gamma < 1:
        raise InvalidParameter(f"direct design needs 0 < gamma < 1, got {gamma}")
    if not 0 < omega_b < omega_h:
        raise InvalidParameter("frequency band must satisfy 0 < omega_b < omega_h")
    if order < 1:
        raise InvalidParameter("half-order must be >= 1")
    n_terms = 2 * order + 1
    ratio = omega_h / omega_b
    ns = np.arange(-order, order + 1)
    zeros = omega_b * ratio ** ((ns + order + 0.5 * (1 - gamma)) / n_terms)
    poles = omega_b * ratio ** ((ns + order + 0.5 * (1 + gamma)) / n_terms)
    gain = omega_h ** gamma
    return OustaloupFilter(gamma, omega_b, omega_h, gain, zeros, poles)


def oustaloup_response(filt, omega):
    """Magnitude of the filter response at ``omega`` (vectorized)."""
    return np.abs(filt.response(omega))


_ML_TERM_CAP = 500


def mittag_leffler(gamma, sigma, t, tol=1e-12):
    """Two-parameter Mittag-Leffler function by direct series summation.

    Sums t^k / Gamma(gamma*k + sigma) until the term magnitude drops below
    ``tol`` or the 500-term cap is hit; a cap hit with growing terms raises
    :class:`NumericRange`.
    """
    if not 0 < gamma <= 1:
        raise InvalidParameter(f"gamma must be in (0, 1], got {gamma}")
    if sigma <= 0:
        raise InvalidParameter(f"sigma must be positive, got {sigma}")
    total = 0.0
    tk = 1.0  # t^k, running
    prev_mag = math.inf
    growing = False
    try:
        for k in range(_ML_TERM_CAP):
            term = tk / math.gamma(gamma * k + sigma)
            total += term
            mag = abs(term)
            if not math.isfinite(total):
                raise NumericRange("Mittag-Leffler series overflowed")
            if mag < tol:
                return total
            growing = mag >= prev_mag
            prev_mag = mag
            tk *= t
    except OverflowError:
        growing = True
    if growing:
        raise NumericRange("Mittag-Leffler series failed to converge within the term cap")
    return total


class EmWeights:
    """Four-term memory weights for the extended-memory output recursion."""

    __slots__ = ("gamma", "w1", "w2", "w3", "w4")

    def __init__(self, gamma, w1, w2, w3, w4):
        self.gamma = gamma
        self.w1 = w1
        self.w2 = w2
        self.w3 = w3
        self.w4 = w4

    def as_tuple(self):
        return (self.w1, self.w2, self.w3, self.w4)


def em_weights(gamma):
    """Memory weights of the order-gamma output recursion, gamma in [0, 1].

    w1 = g, w2 = g(1-g)/2!, w3 = g(1-g)(2-g)/3!, w4 = g(1-g)(2-g)(3-g)/4!.
    gamma = 1 reduces to a plain one-step memory, gamma = 0 to no memory.
    """
    if not 0 <= gamma <= 1:
        raise InvalidParameter(f"memory order must be in [0, 1], got {gamma}")
    w1 = gamma
    w2 = gamma * (1 - gamma) / 2.0
    w3 = gamma * (1 - gamma) * (2 - gamma) / 6.0
    w4 = gamma * (1 - gamma) * (2 - gamma) * (3 - gamma) / 24.0
    return EmWeights(gamma, w1, w2, w3, w4)
