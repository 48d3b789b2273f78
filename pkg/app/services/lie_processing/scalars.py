"""
Exact arithmetic in prime fields GF(p).

PrimeField checks primality by trial division at construction; FieldElement
values are immutable residues in [0, p).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, List

from app.core.exceptions import FieldArithmeticError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The prime field GF(p)."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise FieldArithmeticError(f"modulus {self.p!r} is not prime")

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(int(value) % self.p, self)

    def __repr__(self) -> str:
        return f"GF({self.p})"

    @property
    def zero(self) -> "FieldElement":
        return self(0)

    @property
    def one(self) -> "FieldElement":
        return self(1)

    def elements(self) -> Iterator["FieldElement"]:
        for v in range(self.p):
            yield self(v)

    def units(self) -> Iterator["FieldElement"]:
        for v in range(1, self.p):
            yield self(v)

    @cached_property
    def primitive_root(self) -> "FieldElement":
        """Smallest generator of GF(p)^x."""
        if self.p == 2:
            return self.one
        order = self.p - 1
        factors = [q for q in range(2, order + 1) if order % q == 0 and is_prime(q)]
        for g in range(2, self.p):
            if all(pow(g, order // q, self.p) != 1 for q in factors):
                return self(g)
        raise FieldArithmeticError(f"no primitive root found for {self!r}")

    def squares(self) -> List["FieldElement"]:
        """Nonzero squares, in increasing residue order."""
        return sorted({(a * a) for a in self.units()}, key=int)


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: PrimeField

    def __post_init__(self):
        if not 0 <= self.value < self.field.p:
            raise FieldArithmeticError(f"residue {self.value} outside [0, {self.field.p})")

    @property
    def p(self) -> int:
        return self.field.p

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field.p != self.field.p:
                raise FieldArithmeticError(
                    f"mismatched moduli: {self.field.p} and {other.field.p}"
                )
            return other
        if isinstance(other, int):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.field(self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.field(self.value - other.value)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.field(other.value - self.value)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.field(self.value * other.value)

    __rmul__ = __mul__

    def __neg__(self):
        return self.field(-self.value)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def inv(self) -> "FieldElement":
        if self.value == 0:
            raise FieldArithmeticError("not invertible")
        return self.field(pow(self.value, -1, self.p))

    def __pow__(self, n: int) -> "FieldElement":
        if n < 0:
            return self.inv() ** (-n)
        return self.field(pow(self.value, n, self.p))

    def is_square(self) -> bool:
        if self.value == 0 or self.p == 2:
            return True
        return pow(self.value, (self.p - 1) // 2, self.p) == 1

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.p})"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inv()


def power(a: FieldElement, n: int) -> FieldElement:
    return a ** n


def is_square(a: FieldElement) -> bool:
    return a.is_square()
