"""Complex numbers stored as (log|z|, arg z) so long products never overflow.

Both hardware floats and mpmath numbers are accepted for the fields; the
arithmetic follows whichever type the log-magnitude carries.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import mpmath


class PrecisionError(ArithmeticError):
    """Raised when a result cannot be trusted at the working precision."""


def _is_mp(x) -> bool:
    return isinstance(x, (mpmath.mpf, mpmath.mpc))


def _wrap(phase):
    """Reduce a phase to (-pi, pi]."""
    if _is_mp(phase):
        pi = mpmath.pi
        r = phase - 2 * pi * mpmath.floor((phase + pi) / (2 * pi))
        return pi if r == -pi else r
    r = math.remainder(phase, 2 * math.pi)
    return math.pi if r == -math.pi else r


@dataclass(frozen=True)
class LogProduct:
    log_magnitude: float = 0.0
    phase: float = 0.0
    zero: bool = False

    @classmethod
    def from_complex(cls, z) -> "LogProduct":
        if z == 0:
            return cls(0.0, 0.0, True)
        if _is_mp(z):
            return cls(mpmath.log(abs(z)), _wrap(mpmath.arg(z)))
        return cls(math.log(abs(z)), _wrap(cmath.phase(z)))

    @classmethod
    def from_log(cls, logz) -> "LogProduct":
        """From a complex logarithm; the imaginary part is wrapped."""
        if _is_mp(logz):
            logz = mpmath.mpc(logz)
            return cls(logz.real, _wrap(logz.imag))
        logz = complex(logz)
        return cls(logz.real, _wrap(logz.imag))

    def __mul__(self, other: "LogProduct") -> "LogProduct":
        if self.zero or other.zero:
            return ZERO
        return LogProduct(
            self.log_magnitude + other.log_magnitude,
            _wrap(self.phase + other.phase),
        )

    def __truediv__(self, other: "LogProduct") -> "LogProduct":
        if other.zero:
            raise ZeroDivisionError("division by an exact zero LogProduct")
        if self.zero:
            return ZERO
        return LogProduct(
            self.log_magnitude - other.log_magnitude,
            _wrap(self.phase - other.phase),
        )

    def __pow__(self, k: int) -> "LogProduct":
        if self.zero:
            if k <= 0:
                raise ZeroDivisionError("non-positive power of zero")
            return ZERO
        return LogProduct(k * self.log_magnitude, _wrap(k * self.phase))

    def scale(self, c) -> "LogProduct":
        """Multiply by an ordinary (nonzero or zero) complex number."""
        return self * LogProduct.from_complex(c)

    def log(self):
        """Principal complex logarithm (imaginary part in (-pi, pi])."""
        if self.zero:
            raise ValueError("log of zero")
        if _is_mp(self.log_magnitude) or _is_mp(self.phase):
            return mpmath.mpc(self.log_magnitude, self.phase)
        return complex(self.log_magnitude, self.phase)

    def value(self):
        """The represented number; OverflowError if it exceeds float range."""
        if self.zero:
            return 0
        if _is_mp(self.log_magnitude):
            return mpmath.exp(self.log_magnitude) * mpmath.expjpi(self.phase / mpmath.pi)
        return math.exp(self.log_magnitude) * cmath.exp(1j * self.phase)

    def value_if_representable(self) -> complex | None:
        if self.zero:
            return 0j
        lm = float(self.log_magnitude)
        if lm > 709.0 or lm < -745.0:
            return None
        return complex(math.exp(lm) * cmath.exp(1j * float(self.phase)))

    def is_real(self, tol: float = 1e-9) -> bool:
        if self.zero:
            return True
        p = abs(float(self.phase))
        return p < tol or abs(p - math.pi) < tol


ZERO = LogProduct(0.0, 0.0, True)
ONE = LogProduct(0.0, 0.0, False)


def product(factors: Sequence[LogProduct]) -> LogProduct:
    out = ONE
    for f in factors:
        out = out * f
    return out


def signed_sum(terms: Sequence[LogProduct], coeffs: Sequence, floor: float | None = None) -> LogProduct:
    """sum_i coeffs[i] * terms[i], shifted to a common exponent first.

    If ``floor`` is given and the magnitude of the sum falls below
    ``floor`` times the largest summand, a PrecisionError is raised.
    """
    live = [(t, c) for t, c in zip(terms, coeffs) if not t.zero and c != 0]
    if not live:
        return ZERO
    mp = any(_is_mp(t.log_magnitude) for t, _ in live)
    top = max(t.log_magnitude for t, _ in live)
    if mp:
        acc = mpmath.mpc(0)
        biggest = mpmath.mpf(0)
        for t, c in live:
            part = c * mpmath.exp(t.log_magnitude - top) * mpmath.expj(t.phase)
            biggest = max(biggest, abs(part))
            acc += part
    else:
        acc = 0j
        biggest = 0.0
        for t, c in live:
            part = c * math.exp(t.log_magnitude - top) * cmath.exp(1j * t.phase)
            biggest = max(biggest, abs(part))
            acc += part
    if floor is not None and abs(acc) <= floor * biggest:
        raise PrecisionError(
            f"cancellation in signed sum: |sum| = {float(abs(acc)):.3g} relative to "
            f"largest term, below the floor {floor:.1g}; retry with higher precision"
        )
    if acc == 0:
        return ZERO
    res = LogProduct.from_complex(acc)
    return LogProduct(res.log_magnitude + top, res.phase)
