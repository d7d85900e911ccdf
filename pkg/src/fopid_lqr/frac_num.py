"""Grünwald-Letnikov differ-integration of sampled signals.

All operators assume zero history before t = 0, so Caputo and
Riemann-Liouville definitions coincide.  The Mittag-Leffler function is
provided only as an analytic reference for single-term fractional systems.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

# Declared convergence domain of the series evaluation of E_alpha(z).
ML_Z_LIMIT = 30.0
ML_Z_LIMIT_SMALL_ALPHA = 1.0
ML_SMALL_ALPHA = 0.5


class DomainError(ValueError):
    """Argument lies outside the declared domain of a numerical routine."""


@dataclass(frozen=True)
class GlWeights:
    order: float
    weights: np.ndarray
    step: float = 1.0

    def __len__(self) -> int:
        return len(self.weights)


def gl_weights(order: float, count: int, step: float = 1.0) -> GlWeights:
    """Binomial weights w_j = (-1)^j C(order, j) for j < count.

    Computed by the recurrence ``w_j = w_{j-1} * (1 - (order + 1) / j)``,
    arranged so integer orders reproduce the binomial coefficients exactly.
    Negative orders give integration weights (all positive).
    """
    if not math.isfinite(order):
        raise ValueError(f"order must be finite, got {order!r}")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    w = np.empty(count)
    w[0] = 1.0
    for j in range(1, count):
        w[j] = w[j - 1] * (j - order - 1.0) / j
    return GlWeights(order=float(order), weights=w, step=float(step))


def gl_apply(signal, order: float, step: float) -> np.ndarray:
    """Apply D^order to a uniformly sampled signal.

    ``out[k] = step**(-order) * sum_{j=0..k} w_j * signal[k-j]``.
    A negative order integrates, zero is the identity.
    """
    if not step > 0:
        raise ValueError(f"step must be positive, got {step}")
    x = np.asarray(signal, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise ValueError("signal must be a non-empty 1-D sequence")
    if order == 0:
        return x.copy()
    w = gl_weights(order, x.size).weights
    return step ** (-order) * np.convolve(x, w)[: x.size]


def mittag_leffler(alpha: float, z: float) -> float:
    """One-parameter Mittag-Leffler function E_alpha(z) for real z.

    Summed as a power series in extended precision so that the alternating
    cancellation for negative z does not eat the double-precision result.
    Valid for ``0 < alpha <= 2`` and ``|z| <= 30`` when ``alpha >= 0.5``
    (``|z| <= 1`` for smaller alpha); anything else raises DomainError.
    """
    if not (0 < alpha <= 2):
        raise DomainError(f"alpha must be in (0, 2], got {alpha}")
    if not math.isfinite(z):
        raise DomainError(f"z must be finite, got {z}")
    limit = ML_Z_LIMIT if alpha >= ML_SMALL_ALPHA else ML_Z_LIMIT_SMALL_ALPHA
    if abs(z) > limit:
        raise DomainError(
            f"|z| = {abs(z):g} exceeds the series domain {limit:g} for alpha = {alpha:g}"
        )
    if z == 0:
        return 1.0

    # largest term is roughly exp(|z|**(1/alpha)); carry that many extra digits
    digits = int(abs(z) ** (1.0 / alpha) / math.log(10)) + 30
    with mpmath.workdps(digits):
        zz = mpmath.mpf(z)
        a = mpmath.mpf(alpha)
        total = mpmath.mpf(0)
        power = mpmath.mpf(1)
        eps = mpmath.mpf(10) ** (-25)
        k = 0
        while True:
            term = power / mpmath.gamma(a * k + 1)
            total += term
            k += 1
            # terms only shrink monotonically once past the peak
            if k * alpha > abs(z) ** (1.0 / alpha) + 2 and abs(term) < eps * max(1, abs(total)):
                break
            power *= zz
        return float(total)
