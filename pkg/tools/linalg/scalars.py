"""Exact scalar fields: the rationals and the prime fields F_p."""

from fractions import Fraction
from typing import Union

from sympy import isprime, mod_inverse


class ModP:
    """An element of the prime field F_p, stored as its least residue."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = int(value) % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError(f"cannot mix F_{self.p} and F_{other.p} elements")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return ModP(self.value * mod_inverse(o, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o, self.p) / self

    def __neg__(self):
        return ModP(-self.value, self.p)

    def __pos__(self):
        return self

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.value == o

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value}"

    def __reduce__(self):
        return (ModP, (self.value, self.p))


Scalar = Union[Fraction, ModP]


class Field:
    """An exact ground field.

    Instances are callables coercing ints, strings, fractions and field
    elements into the field's scalar type. Two fields compare equal when
    they have the same descriptor.

    Attributes:
        name (str): "Q" or "F_p".
        characteristic (int): 0 for Q, p for F_p.
    """

    def __init__(self, characteristic: int):
        if characteristic != 0 and not isprime(characteristic):
            raise ValueError(f"characteristic must be 0 or a prime, got {characteristic}")
        self.characteristic = characteristic
        self.name = "Q" if characteristic == 0 else f"F_{characteristic}"
        self.zero = self(0)
        self.one = self(1)

    def __call__(self, x) -> Scalar:
        p = self.characteristic
        if p == 0:
            if isinstance(x, ModP):
                raise ValueError("cannot coerce a prime field element into Q")
            if isinstance(x, str):
                return Fraction(x.strip())
            if isinstance(x, float):
                raise TypeError("floats are not exact scalars")
            return Fraction(x)
        if isinstance(x, ModP):
            if x.p != p:
                raise ValueError(f"cannot coerce an F_{x.p} element into F_{p}")
            return x
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            return ModP(x.numerator, p) / ModP(x.denominator, p)
        if isinstance(x, bool) or not isinstance(x, int):
            raise TypeError(f"cannot coerce {x!r} into {self.name}")
        return ModP(x, p)

    def parse(self, token) -> Scalar:
        """Parse a serialized scalar: "p/q" strings or ints."""
        if isinstance(token, float):
            raise TypeError(f"floats are not allowed in instance data: {token!r}")
        return self(token)

    def serialize(self, c: Scalar):
        if self.characteristic == 0:
            return str(Fraction(c))
        return int(c)

    def inv(self, c: Scalar) -> Scalar:
        if not c:
            raise ZeroDivisionError(f"0 has no inverse in {self.name}")
        return self.one / c

    def descriptor(self):
        return "Q" if self.characteristic == 0 else {"Fp": self.characteristic}

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return self.name


def rational_field() -> Field:
    return Field(0)


def prime_field(p: int) -> Field:
    if p < 2:
        raise ValueError(f"p must be a prime, got {p}")
    return Field(p)


def field_from_descriptor(descriptor) -> Field:
    """Build a field from its instance-file descriptor, "Q" or {"Fp": p}."""
    if descriptor == "Q":
        return rational_field()
    if isinstance(descriptor, dict) and set(descriptor) == {"Fp"}:
        return prime_field(int(descriptor["Fp"]))
    raise ValueError(f"unknown field descriptor {descriptor!r}")
