"""Exact scalars over the rationals and over prime fields.

A :class:`FieldSpec` is just a characteristic (0 for Q, otherwise a prime).
Internally the heavy routines work on *raw* values -- ``Fraction`` in
characteristic 0 and ``int`` residues in ``[0, p)`` otherwise -- and go
through the helper methods on :class:`FieldSpec`.  :class:`Scalar` wraps a
raw value together with its field for the public API.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Raw = Union[Fraction, int]

_SCALAR_RE = re.compile(r"[+-]?\d+(/[+-]?\d+)?")


class FieldMismatchError(TypeError):
    """Raised when scalars from different fields are combined."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    k = 3
    while k * k <= p:
        if p % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Q when ``characteristic == 0``, otherwise the prime field F_p."""

    characteristic: int = 0

    def __post_init__(self) -> None:
        c = self.characteristic
        if not isinstance(c, int) or isinstance(c, bool):
            raise TypeError(f"characteristic must be an int, got {c!r}")
        if c != 0 and not _is_prime(c):
            raise ValueError(f"characteristic must be 0 or a prime, got {c}")

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    # -- raw arithmetic ---------------------------------------------------
    def lift(self, m: int) -> Raw:
        p = self.characteristic
        return Fraction(m) if p == 0 else m % p

    def coerce(self, x: Union[int, Fraction, str]) -> Raw:
        """Map an integer, fraction or serialized string into the field."""
        if isinstance(x, str):
            return self.parse(x)
        p = self.characteristic
        if p == 0:
            return x if isinstance(x, Fraction) else Fraction(x)
        if isinstance(x, int):
            return x % p
        x = Fraction(x)
        return (x.numerator * pow(x.denominator, -1, p)) % p

    def zero(self) -> Raw:
        return self.lift(0)

    def one(self) -> Raw:
        return self.lift(1)

    def add(self, a: Raw, b: Raw) -> Raw:
        p = self.characteristic
        return a + b if p == 0 else (a + b) % p

    def sub(self, a: Raw, b: Raw) -> Raw:
        p = self.characteristic
        return a - b if p == 0 else (a - b) % p

    def mul(self, a: Raw, b: Raw) -> Raw:
        p = self.characteristic
        return a * b if p == 0 else (a * b) % p

    def neg(self, a: Raw) -> Raw:
        p = self.characteristic
        return -a if p == 0 else (-a) % p

    def inv(self, a: Raw) -> Raw:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        p = self.characteristic
        return 1 / a if p == 0 else pow(a, -1, p)

    # -- serialization ----------------------------------------------------
    def format(self, a: Raw) -> str:
        if self.characteristic == 0:
            a = Fraction(a)
            if a.denominator == 1:
                return str(a.numerator)
            return f"{a.numerator}/{a.denominator}"
        return str(int(a))

    def parse(self, text: str) -> Raw:
        text = text.strip()
        if not _SCALAR_RE.fullmatch(text):
            raise ValueError(f"not a scalar: {text!r}")
        try:
            value = Fraction(text)
        except ZeroDivisionError:
            raise ValueError(f"zero denominator in {text!r}") from None
        if self.characteristic == 0:
            return value
        if value.denominator % self.characteristic == 0:
            raise ValueError(f"{text!r} has a denominator divisible by {self.characteristic}")
        return self.coerce(value)

    def elements(self) -> list[Raw]:
        """All field elements; only meaningful for finite fields."""
        if self.characteristic == 0:
            raise ValueError("Q is infinite")
        return list(range(self.characteristic))

    def __str__(self) -> str:
        return "Q" if self.characteristic == 0 else f"F_{self.characteristic}"


QQ = FieldSpec(0)


@dataclass(frozen=True)
class Scalar:
    """An immutable field element."""

    value: Raw
    field: FieldSpec = QQ

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", self.field.coerce(self.value))

    @classmethod
    def parse(cls, text: str, field: FieldSpec = QQ) -> "Scalar":
        return cls(field.parse(text), field)

    def _other(self, other: object) -> Raw:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatchError(f"cannot combine {self.field} and {other.field} scalars")
            return other.value
        if isinstance(other, int):
            return self.field.lift(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> "Scalar":
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.field.add(self.value, o), self.field)

    __radd__ = __add__

    def __sub__(self, other: object) -> "Scalar":
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.field.sub(self.value, o), self.field)

    def __rsub__(self, other: object) -> "Scalar":
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.field.sub(o, self.value), self.field)

    def __mul__(self, other: object) -> "Scalar":
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.field.mul(self.value, o), self.field)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "Scalar":
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.field.mul(self.value, self.field.inv(o)), self.field)

    def __neg__(self) -> "Scalar":
        return Scalar(self.field.neg(self.value), self.field)

    def inverse(self) -> "Scalar":
        return Scalar(self.field.inv(self.value), self.field)

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.lift(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.characteristic, self.value))

    def __str__(self) -> str:
        return self.field.format(self.value)

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r}, {self.field})"


def lift_integer(m: int, field: FieldSpec) -> Scalar:
    """Image of the integer ``m`` under Z -> field."""
    return Scalar(field.lift(m), field)


def is_zero_divisor_image(m: int, field: FieldSpec) -> bool:
    # in a field the only zero-divisor is 0
    return field.lift(m) == 0
