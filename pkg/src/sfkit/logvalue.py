"""High-precision scalars carried in natural-log space.

Bound values overflow fixed-width integers around s = 20, so they are
stored as ln(magnitude) in 256-bit mpmath floats together with a
certified absolute error radius.  The radius is a conservative envelope:
every arithmetic step adds one unit of ULP_ENVELOPE, which dominates the
true rounding error of a correctly-rounded 256-bit operation for every
magnitude this package produces (|log| < 2**17, so a 0.5 ulp error is
below 2**-238).  A distinguished zero value represents the convention
that the bound functions vanish off positive integer arguments.

Comparisons are certified: ``definitely_less`` answers True only when
the two error intervals are disjoint in the right order.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mp, mpf

PRECISION_BITS = 256

# One-step rounding envelope; see module docstring for the magnitude bound.
ULP_ENVELOPE_EXP = -236


def _ulp() -> mpf:
    return mpf(2) ** ULP_ENVELOPE_EXP


def workprec():
    """Context manager pinning the working precision of this module."""
    return mp.workprec(PRECISION_BITS)


@dataclass(frozen=True)
class LogValue:
    """ln(magnitude) plus a certified absolute error radius in log space."""

    log_value: mpf
    error_radius: mpf
    is_zero: bool = False

    @classmethod
    def zero(cls) -> "LogValue":
        return cls(mpf(0), mpf(0), is_zero=True)

    @classmethod
    def from_log(cls, log_value, error_radius=None) -> "LogValue":
        with workprec():
            return cls(mpf(log_value), _ulp() if error_radius is None else mpf(error_radius))

    @classmethod
    def from_int(cls, n: int) -> "LogValue":
        if n < 0:
            raise ValueError("LogValue holds magnitudes; n must be nonnegative")
        if n == 0:
            return cls.zero()
        with workprec():
            return cls(mpmath.log(mpf(n)), 2 * _ulp())

    def times(self, other: "LogValue") -> "LogValue":
        if self.is_zero or other.is_zero:
            return LogValue.zero()
        with workprec():
            return LogValue(
                self.log_value + other.log_value,
                self.error_radius + other.error_radius + _ulp(),
            )

    def over(self, other: "LogValue") -> "LogValue":
        if other.is_zero:
            raise ZeroDivisionError("division by the zero log-value")
        if self.is_zero:
            return LogValue.zero()
        with workprec():
            return LogValue(
                self.log_value - other.log_value,
                self.error_radius + other.error_radius + _ulp(),
            )

    def log_ratio(self, other: "LogValue") -> tuple[mpf, mpf]:
        """(ln(self/other), combined radius); both values must be nonzero."""
        if self.is_zero or other.is_zero:
            raise ZeroDivisionError("log ratio needs nonzero values")
        with workprec():
            return (
                self.log_value - other.log_value,
                self.error_radius + other.error_radius + _ulp(),
            )

    def definitely_less(self, other: "LogValue") -> bool:
        if self.is_zero:
            return not other.is_zero
        if other.is_zero:
            return False
        with workprec():
            return self.log_value + self.error_radius < other.log_value - other.error_radius

    def definitely_le(self, other: "LogValue") -> bool:
        """Certified <=; equality cannot be certified numerically, so this
        is the same interval test as strict less."""
        if self.is_zero:
            return True
        return self.definitely_less(other)

    def to_float(self) -> float:
        """Magnitude as a float; inf when it overflows the double range."""
        if self.is_zero:
            return 0.0
        with workprec():
            if self.log_value > 709:
                return float("inf")
            return float(mpmath.exp(self.log_value))

    def __repr__(self):
        if self.is_zero:
            return "LogValue(zero)"
        return f"LogValue(log={mpmath.nstr(self.log_value, 20)}, rad={mpmath.nstr(self.error_radius, 3)})"


def certified_less(a, ra, b, rb) -> bool:
    """a < b certified from midpoints and radii (plain mpf arguments)."""
    return a + ra < b - rb


def certified_greater(a, ra, b, rb) -> bool:
    return a - ra > b + rb
