"""Exact field arithmetic over the rationals and prime fields.

Raw element representations (used throughout the linear-algebra layer):
rationals are `fractions.Fraction` (always in lowest terms with positive
denominator), elements of F_p are ints in [0, p).  `Scalar` is the tagged
public wrapper that enforces field agreement on mixed arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = [
    "FieldDescriptor",
    "Scalar",
    "QQ",
    "GF",
    "FieldMismatch",
    "DivisionByZero",
    "add",
    "mul",
    "neg",
    "inv",
]

RawScalar = Union[Fraction, int]


class FieldMismatch(ValueError):
    """Operands belong to different fields."""


class DivisionByZero(ZeroDivisionError):
    """Inverse of zero requested."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldDescriptor:
    """The ground field: the rationals when ``p`` is None, else F_p."""

    p: int | None = None

    def __post_init__(self) -> None:
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"characteristic must be prime, got {self.p}")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    # --- raw element operations -------------------------------------------
    def zero(self) -> RawScalar:
        return Fraction(0) if self.p is None else 0

    def one(self) -> RawScalar:
        return Fraction(1) if self.p is None else 1

    def from_int(self, n: int) -> RawScalar:
        return Fraction(n) if self.p is None else n % self.p

    def add(self, a: RawScalar, b: RawScalar) -> RawScalar:
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a: RawScalar, b: RawScalar) -> RawScalar:
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a: RawScalar, b: RawScalar) -> RawScalar:
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a: RawScalar) -> RawScalar:
        return -a if self.p is None else (-a) % self.p

    def inv(self, a: RawScalar) -> RawScalar:
        if not a:
            raise DivisionByZero("inverse of zero")
        return 1 / a if self.p is None else pow(a, -1, self.p)

    def elements(self):
        """All field elements; only available for prime fields."""
        if self.p is None:
            raise ValueError("the rationals are not enumerable")
        return [self.from_int(n) for n in range(self.p)]

    # --- JSON encoding ----------------------------------------------------
    def raw_to_json(self, a: RawScalar):
        if self.p is None:
            return f"{a.numerator}/{a.denominator}"
        return int(a)

    def raw_from_json(self, v) -> RawScalar:
        if self.p is None:
            if isinstance(v, str):
                return Fraction(v)
            if isinstance(v, int):
                return Fraction(v)
            raise ValueError(f"bad rational scalar encoding: {v!r}")
        if not isinstance(v, int):
            raise ValueError(f"bad prime-field scalar encoding: {v!r}")
        return v % self.p

    def to_json(self):
        return "Q" if self.p is None else {"Fp": self.p}

    @classmethod
    def from_json(cls, v) -> "FieldDescriptor":
        if v == "Q":
            return cls(None)
        if isinstance(v, dict) and set(v) == {"Fp"}:
            return cls(int(v["Fp"]))
        raise ValueError(f"bad field encoding: {v!r}")

    def __repr__(self) -> str:
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = FieldDescriptor(None)


def GF(p: int) -> FieldDescriptor:
    return FieldDescriptor(p)


@dataclass(frozen=True)
class Scalar:
    """A field element tagged with its field."""

    field: FieldDescriptor
    value: RawScalar

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", _canonical(self.field, self.value))

    def _check(self, other: "Scalar") -> None:
        if self.field != other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        return Scalar(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        return Scalar(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        return Scalar(self.field, self.field.mul(self.value, other.value))

    def __neg__(self) -> "Scalar":
        return Scalar(self.field, self.field.neg(self.value))

    def inv(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def __bool__(self) -> bool:
        return bool(self.value)


def _canonical(field: FieldDescriptor, value) -> RawScalar:
    if field.p is None:
        return Fraction(value)
    return int(value) % field.p


def add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def neg(a: Scalar) -> Scalar:
    return -a


def inv(a: Scalar) -> Scalar:
    return a.inv()
