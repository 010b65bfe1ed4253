"""Truncated power series over F_p."""
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from polymem.exceptions.errors import DimensionMismatchError, FieldMismatchError, LiftFailureError


class PowerSeries:
    """Series sum_j c_j z^j known modulo z^precision."""

    def __init__(self, coefficients: Sequence[int], prime: int, precision: Optional[int] = None):
        coefficients = np.asarray(coefficients, dtype=np.int64).reshape(-1) % prime
        precision = precision if precision is not None else coefficients.shape[0]
        padded = np.zeros(precision, dtype=np.int64)
        count = min(precision, coefficients.shape[0])
        padded[:count] = coefficients[:count]
        self.coefficients = padded
        self.prime = prime

    @property
    def precision(self) -> int:
        return self.coefficients.shape[0]

    @classmethod
    def constant(cls, value: int, prime: int, precision: int) -> "PowerSeries":
        return cls([value], prime, precision)

    @classmethod
    def variable(cls, offset: int, prime: int, precision: int) -> "PowerSeries":
        """The series offset + z."""
        return cls([offset, 1], prime, precision)

    def _check(self, other: "PowerSeries") -> None:
        if other.prime != self.prime:
            raise FieldMismatchError(f"primes {self.prime} and {other.prime} differ")
        if other.precision != self.precision:
            raise DimensionMismatchError(f"precisions {self.precision} and {other.precision} differ")

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        self._check(other)
        return PowerSeries(self.coefficients + other.coefficients, self.prime)

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        self._check(other)
        return PowerSeries(self.coefficients - other.coefficients, self.prime)

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        self._check(other)
        left, right = self.coefficients, other.coefficients
        # sums of precision products below p^2 must fit in int64
        if self.precision * (self.prime - 1) ** 2 >= 2**63:
            left, right = left.astype(object), right.astype(object)
        product = np.convolve(left, right)[: self.precision]
        return PowerSeries(product % self.prime, self.prime)

    def scale(self, factor: int) -> "PowerSeries":
        return PowerSeries(self.coefficients * (int(factor) % self.prime), self.prime)

    def inverse(self) -> "PowerSeries":
        """Multiplicative inverse by Newton iteration g <- g (2 - a g)."""
        lead = int(self.coefficients[0])
        if lead == 0:
            raise LiftFailureError("series with zero constant term is not invertible")
        result = PowerSeries.constant(pow(lead, -1, self.prime), self.prime, self.precision)
        two = PowerSeries.constant(2, self.prime, self.precision)
        known = 1
        while known < self.precision:
            result = result * (two - self * result)
            known *= 2
        return result

    def __pow__(self, exponent: int) -> "PowerSeries":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = PowerSeries.constant(1, self.prime, self.precision)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def valuation(self) -> Optional[int]:
        """Index of the first nonzero coefficient, None if all known ones vanish."""
        nonzero = np.nonzero(self.coefficients)[0]
        return int(nonzero[0]) if nonzero.size else None

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.prime == other.prime and np.array_equal(self.coefficients, other.coefficients)


@dataclass(frozen=True)
class VanishingOrder:
    """Order of vanishing along a branch; value None means at least precision."""

    value: Optional[int]
    precision: int

    @property
    def is_lower_bound(self) -> bool:
        return self.value is None
