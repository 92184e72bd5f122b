"""Exact base fields: the rationals and prime fields GF(p).

Scalars are plain Python values: ``Fraction`` for QQ and ``int`` in ``[0, p)``
for GF(p).  A field object knows how to coerce, combine and print them; the
polynomial code never touches floats.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from essalg.errors import InputError

_MAX_MODULUS = 2**31


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """Interface of an exact field.  Subclasses are immutable and hashable."""

    characteristic: int

    def __call__(self, value: Any) -> Any:
        raise NotImplementedError

    zero: Any
    one: Any

    def is_zero(self, a) -> bool:
        return a == 0

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def to_str(self, a) -> str:
        return str(a)

    def to_json(self) -> dict:
        raise NotImplementedError


class RationalField(Field):
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, value) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, bool):
            raise InputError("booleans are not field elements")
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            try:
                return Fraction(value.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise InputError(f"not a rational number: {value!r}") from exc
        if isinstance(value, float):
            raise InputError("floating point coefficients are not accepted")
        raise InputError(f"cannot coerce {value!r} into QQ")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in QQ")
        return 1 / a

    def div(self, a, b):
        return a / b

    def to_str(self, a) -> str:
        return str(a)

    def to_json(self) -> dict:
        return {"type": "Q"}

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")


class PrimeField(Field):
    """GF(p) for a prime ``p < 2**31``; elements are ints in ``[0, p)``."""

    def __init__(self, p: int):
        if not isinstance(p, int) or p >= _MAX_MODULUS or not _is_prime(p):
            raise InputError(f"modulus must be a prime below 2^31, got {p!r}")
        self.characteristic = p
        self.p = p
        self.zero = 0
        self.one = 1

    def __call__(self, value) -> int:
        p = self.p
        if isinstance(value, bool):
            raise InputError("booleans are not field elements")
        if isinstance(value, int):
            return value % p
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise InputError(f"{value} has no image in GF({p})")
            return value.numerator * pow(value.denominator, -1, p) % p
        if isinstance(value, str):
            try:
                return self(Fraction(value.strip()))
            except (ValueError, ZeroDivisionError) as exc:
                raise InputError(f"not a number: {value!r}") from exc
        raise InputError(f"cannot coerce {value!r} into GF({p})")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of zero in GF({self.p})")
        return pow(a, -1, self.p)

    def to_json(self) -> dict:
        return {"type": "Fp", "p": self.p}

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_json(data: dict | None) -> Field:
    if data is None:
        return QQ
    if not isinstance(data, dict) or "type" not in data:
        raise InputError(f"base_field must be an object with a 'type', got {data!r}")
    kind = data["type"]
    if kind == "Q":
        return QQ
    if kind == "Fp":
        if "p" not in data:
            raise InputError("base_field of type Fp needs 'p'")
        return PrimeField(data["p"])
    raise InputError(f"unknown base field type {kind!r}")
