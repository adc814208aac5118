"""Exact scalars: arbitrary-precision rationals and prime-field residues.

Rationals are plain :class:`fractions.Fraction` values (collapsed to ``int``
when the denominator is 1). Prime-field elements are :class:`Zp`. Bulk code
never touches :class:`Zp` objects; it carries raw residues together with a
:class:`Backend` that knows the modulus.
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from sympy import isprime

__all__ = [
    "DEFAULT_PRIME",
    "Backend",
    "EXACT",
    "Zp",
    "canonical",
    "default_prime",
    "field_arith",
    "format_scalar",
    "parse_scalar",
    "rat_arith",
]

#: Largest prime below 2**62; fixed so mod-p runs are reproducible.
DEFAULT_PRIME = 2**62 - 57

_SCALAR_RE = re.compile(r"-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?\Z")


def default_prime() -> int:
    """The prime used when none is given; ``HYPERALG_PRIME`` overrides it."""
    env = os.environ.get("HYPERALG_PRIME")
    if env:
        p = int(env)
        check_prime(p)
        return p
    return DEFAULT_PRIME


def check_prime(p: int) -> int:
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise ValueError(f"modulus {p!r} is not prime")
    return p


def canonical(x):
    """Collapse a rational to ``int`` when it is integral."""
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Rational):
        return canonical(Fraction(x))
    raise TypeError(f"not an exact scalar: {x!r}")


def rat_arith(a, b, op: str):
    """Exact ``a <op> b`` for op in add/sub/mul/div. Raises ZeroDivisionError on div by 0."""
    a, b = Fraction(a), Fraction(b)
    if op == "add":
        r = a + b
    elif op == "sub":
        r = a - b
    elif op == "mul":
        r = a * b
    elif op == "div":
        if b == 0:
            raise ZeroDivisionError("rational division by zero")
        r = a / b
    else:
        raise ValueError(f"unknown rational op {op!r}")
    return canonical(r)


def format_scalar(x) -> str:
    """Canonical text: ``p/q`` with ``/q`` dropped when q == 1, e.g. ``-7``, ``3/4``."""
    x = canonical(x)
    if isinstance(x, int):
        return str(x)
    return f"{x.numerator}/{x.denominator}"


def parse_scalar(text: str):
    """Inverse of :func:`format_scalar`. Rejects any non-canonical spelling."""
    if not _SCALAR_RE.match(text) or text == "-0":
        raise ValueError(f"malformed scalar {text!r}")
    if "/" not in text:
        return int(text)
    num, den = text.split("/")
    value = Fraction(int(num), int(den))
    if value.denominator != int(den) or int(den) == 1:
        raise ValueError(f"scalar {text!r} is not in lowest terms")
    return value


@dataclass(frozen=True)
class Zp:
    """An element of the prime field Z/pZ."""

    residue: int
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if not 0 <= self.residue < self.p:
            object.__setattr__(self, "residue", self.residue % self.p)

    @classmethod
    def of(cls, x, p: int = DEFAULT_PRIME) -> Zp:
        check_prime(p)
        return cls(Backend(p).coerce(x), p)

    def _other(self, other) -> int:
        if isinstance(other, Zp):
            if other.p != self.p:
                raise ValueError(f"modulus mismatch: {self.p} vs {other.p}")
            return other.residue
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Zp((self.residue + o) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Zp((self.residue - o) % self.p, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Zp((o - self.residue) % self.p, self.p)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Zp(self.residue * o % self.p, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Zp(-self.residue % self.p, self.p)

    def inverse(self) -> Zp:
        if self.residue == 0:
            raise ZeroDivisionError("inverse of zero in a prime field")
        return Zp(pow(self.residue, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self * Zp(o, self.p).inverse()

    def __str__(self):
        return str(self.residue)


def field_arith(a: Zp, b: Zp | None, op: str) -> Zp:
    """Prime-field ``a <op> b`` for op in add/sub/mul/inv (``b`` ignored for inv)."""
    if op == "inv":
        return a.inverse()
    if b is None or a.p != b.p:
        raise ValueError("modulus mismatch")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown field op {op!r}")


@dataclass(frozen=True)
class Backend:
    """Scalar backend of a hypermatrix: exact rationals (``modulus=None``) or Z/pZ."""

    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None:
            check_prime(self.modulus)

    @classmethod
    def modp(cls, p: int | None = None) -> Backend:
        return cls(default_prime() if p is None else p)

    @classmethod
    def parse(cls, name: str, p: int | None = None) -> Backend:
        if name == "exact":
            return EXACT
        if name == "modp":
            return cls.modp(p)
        raise ValueError(f"unknown backend {name!r}")

    @property
    def exact(self) -> bool:
        return self.modulus is None

    @property
    def name(self) -> str:
        return "exact" if self.exact else "modp"

    def describe(self) -> str:
        return "exact" if self.exact else f"modp {self.modulus}"

    def coerce(self, x):
        """Map an exact scalar (or residue) into this backend's canonical representation."""
        if isinstance(x, Zp):
            if self.exact or x.p != self.modulus:
                raise ValueError("cannot move a residue into a different backend")
            return x.residue
        x = canonical(x)
        if self.exact:
            return x
        p = self.modulus
        if isinstance(x, int):
            return x % p
        if x.denominator % p == 0:
            raise ZeroDivisionError(
                f"denominator {x.denominator} vanishes mod {p}; choose another prime"
            )
        return x.numerator * pow(x.denominator, -1, p) % p


EXACT = Backend()
