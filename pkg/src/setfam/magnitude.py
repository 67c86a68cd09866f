"""
Log-scale magnitudes for values such as n * 2^C(n-1, k-1), whose exponents
are far too large for floats.

A LogMagnitude stores log2 of a positive number as an exact integer part
plus a fractional part in [0, 1) carried at LOG_PRECISION digits, so two
magnitudes compare exactly on the integer part no matter how large it is.
"""
import logging
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Dict, Iterable, List, Tuple, Union

from .exceptions import DomainError
from .numerics import LOG_PRECISION, working_context

logger = logging.getLogger("setfam")

# terms more than this many bits below the leading one are dropped
WINDOW_BITS = 4 * LOG_PRECISION + 64
_MANTISSA_BITS = 256


def _ln2() -> Decimal:
    return Decimal(2).ln()


def _normalize(exponent: int, fraction: Decimal) -> Tuple[int, Decimal]:
    carry = int(fraction.to_integral_value(rounding="ROUND_FLOOR"))
    return exponent + carry, fraction - carry


def _log2_int(value: int) -> Tuple[int, Decimal]:
    # (integer part, fractional part) of log2(value) for value >= 1
    bits = value.bit_length() - 1
    with working_context():
        if bits > _MANTISSA_BITS:
            top = value >> (bits - _MANTISSA_BITS)
            mantissa = Decimal(top) / Decimal(1 << _MANTISSA_BITS)
        else:
            mantissa = Decimal(value) / Decimal(1 << bits)
        fraction = mantissa.ln() / _ln2()
        return _normalize(bits, fraction)


@dataclass(frozen=True, order=True)
class LogMagnitude:
    exponent: int
    fraction: Decimal

    @classmethod
    def from_rational(cls, value: Union[int, Fraction]) -> "LogMagnitude":
        value = Fraction(value)
        if value <= 0:
            raise DomainError(
                f"Cannot take log2 of a non-positive value ({value})."
            )
        e1, f1 = _log2_int(value.numerator)
        e2, f2 = _log2_int(value.denominator)
        with working_context():
            return cls(*_normalize(e1 - e2, f1 - f2))

    @classmethod
    def power_of_two(cls, exponent: int) -> "LogMagnitude":
        return cls(exponent, Decimal(0))

    @property
    def log2_value(self) -> Decimal:
        with working_context(self.exponent):
            return Decimal(self.exponent) + self.fraction

    def __float__(self):
        return float(self.exponent) + float(self.fraction)

    def log2_ratio(self, other: "LogMagnitude") -> Decimal:
        """log2(self / other)."""
        with working_context(self.exponent - other.exponent):
            return Decimal(self.exponent - other.exponent) + (
                self.fraction - other.fraction
            )

    def __mul__(self, other: "LogMagnitude") -> "LogMagnitude":
        with working_context():
            return LogMagnitude(
                *_normalize(
                    self.exponent + other.exponent,
                    self.fraction + other.fraction,
                )
            )

    def __add__(self, other: "LogMagnitude") -> "LogMagnitude":
        big, small = (self, other) if self >= other else (other, self)
        gap = big.log2_ratio(small)
        if gap > WINDOW_BITS:
            return big
        with working_context():
            ln2 = _ln2()
            # log2(1 + 2^-gap)
            bump = (1 + (-gap * ln2).exp()).ln() / ln2
            return LogMagnitude(*_normalize(big.exponent, big.fraction + bump))

    def __repr__(self):
        return f"LogMagnitude(log2={self.log2_value:.12f})"


@dataclass(frozen=True)
class Term:
    """coefficient * 2^exponent"""

    coefficient: Union[int, Fraction]
    exponent: int


def _approx_size(term: Term) -> int:
    c = Fraction(term.coefficient)
    return (
        term.exponent
        + abs(c.numerator).bit_length()
        - c.denominator.bit_length()
    )


def _merge(terms: Iterable[Term]) -> List[Term]:
    by_exponent: Dict[int, Fraction] = {}
    for t in terms:
        by_exponent[t.exponent] = by_exponent.get(
            t.exponent, Fraction(0)
        ) + Fraction(t.coefficient)
    return [Term(c, e) for e, c in by_exponent.items() if c != 0]


def _exact_sum(terms: List[Term]) -> Tuple[Fraction, int]:
    base = min(t.exponent for t in terms)
    total = sum(
        Fraction(t.coefficient) * (1 << (t.exponent - base)) for t in terms
    )
    return total, base


def log2_magnitude(terms: Iterable[Term]) -> LogMagnitude:
    """
    log2 of sum(c_i * 2^e_i). The sum must be positive.

    Terms sharing an exponent are merged exactly first. The remaining terms
    are summed exactly from the largest down to WINDOW_BITS below the
    leading one; whenever that partial sum cancels to within reach of the
    dropped tail, the window is lowered below the partial sum and the sum
    is redone, so cancellation never hides a positive remainder.
    """
    ordered = sorted(_merge(terms), key=_approx_size, reverse=True)
    if not ordered:
        raise DomainError("Expression total is zero; log2 is undefined.")
    threshold = _approx_size(ordered[0]) - WINDOW_BITS
    while True:
        kept = [t for t in ordered if _approx_size(t) >= threshold]
        rest = ordered[len(kept):]
        total, base = _exact_sum(kept)
        if not rest:
            break
        head = _approx_size(rest[0])
        if total == 0:
            threshold = head - WINDOW_BITS
            continue
        size = _approx_size(Term(total, base))
        tail = head + len(rest).bit_length()
        if size - WINDOW_BITS >= tail:
            logger.debug(
                f"Dropped {len(rest)} negligible terms below 2^{threshold}."
            )
            break
        threshold = min(head, size - WINDOW_BITS - len(rest).bit_length())
    if total <= 0:
        raise DomainError(
            f"Expression total is {'zero' if total == 0 else 'negative'}; "
            "log2 is undefined."
        )
    head_mag = LogMagnitude.from_rational(total)
    return LogMagnitude(head_mag.exponent + base, head_mag.fraction)
