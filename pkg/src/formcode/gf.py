"""Exact arithmetic in finite fields F_q, q = p^m.

Elements are handled internally as integer codes in ``[0, q)``. For a prime
field the code is the residue itself; for an extension field it is the
coefficient vector (low degree first) read as a base-p integer, so
``x^2 + 1`` over F_3 has code ``1 + 0*3 + 1*9 = 10``.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np

from .errors import FieldError, MixedFieldError

MAX_ORDER = 2**16


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` into ``(p, m)`` with ``q == p**m``; raise if not a prime power."""
    if q < 2:
        raise FieldError(f"field order must be a prime power, got {q}")
    p = next(f for f in itertools.count(2) if q % f == 0)
    m, rest = 0, q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise FieldError(f"field order must be a prime power, got {q}")
    return p, m


# ---- polynomials over F_p as coefficient lists, low degree first ----

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    b = _trim(list(b))
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = (a[-1] * inv_lead) % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return a


def _polymul(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _monic_polys(p: int, degree: int):
    """Monic polynomials of a given degree, tail coefficients counted up as a
    base-p integer with the highest tail coefficient most significant."""
    for k in range(p**degree):
        tail = [(k // p**i) % p for i in range(degree)]
        yield tail + [1]


def is_irreducible(poly, p: int) -> bool:
    """Irreducibility over F_p by exhaustive trial division by monic factors."""
    f = _trim([c % p for c in poly])
    deg = len(f) - 1
    if deg < 1:
        return False
    for k in range(1, deg // 2 + 1):
        for g in _monic_polys(p, k):
            if not _polymod(f, g, p):
                return False
    return True


def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """First monic irreducible of degree ``m`` over F_p in enumeration order."""
    for f in _monic_polys(p, m):
        if is_irreducible(f, p):
            return tuple(f)
    raise FieldError(f"no irreducible polynomial of degree {m} over F_{p}")  # pragma: no cover


@dataclass(frozen=True)
class FieldSpec:
    """The finite field F_q with q = p^m.

    ``modulus`` is the monic defining polynomial over F_p, coefficients low
    degree first. It is ``(0, 1)`` (the polynomial x) for prime fields.
    """

    p: int
    m: int
    modulus: tuple[int, ...] = dc_field(default=(0, 1))

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def is_prime_field(self) -> bool:
        return self.m == 1

    def __repr__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, modulus={list(self.modulus)})"

    # -- integer-code encoding --

    def digits(self, a: int) -> tuple[int, ...]:
        return tuple((a // self.p**i) % self.p for i in range(self.m))

    def from_digits(self, digits) -> int:
        if len(digits) > self.m:
            digits = _polymod(list(digits), list(self.modulus), self.p)
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(digits))

    @cached_property
    def _tables(self) -> tuple[np.ndarray, np.ndarray]:
        """(exp, log) tables for extension-field multiplication."""
        q, p, mod = self.q, self.p, list(self.modulus)

        def mulcode(a: int, b: int) -> int:
            prod = _polymul(list(self.digits(a)), list(self.digits(b)), p)
            return self.from_digits(_polymod(prod, mod, p) if prod else [])

        for g in range(2, q):
            exp = np.zeros(2 * q, dtype=np.int64)
            x, order = 1, 0
            while True:
                exp[order] = x
                x = mulcode(x, g)
                order += 1
                if x == 1:
                    break
            if order == q - 1:
                exp[q - 1 : 2 * (q - 1)] = exp[: q - 1]
                log = np.zeros(q, dtype=np.int64)
                log[exp[: q - 1]] = np.arange(q - 1)
                return exp, log
        raise FieldError(f"no primitive element found for {self!r}")  # pragma: no cover

    # -- scalar arithmetic on codes --

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self.from_digits([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self.from_digits([-x for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        exp, log = self._tables
        return int(exp[log[a] + log[b]])

    def inv(self, a: int) -> int:
        if a % self.q == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.m == 1:
            return pow(a, -1, self.p)
        exp, log = self._tables
        return int(exp[(self.q - 1 - log[a]) % (self.q - 1)])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(a), -k)
        if self.m == 1:
            return pow(a, k, self.p)
        if a == 0:
            return 0 if k else 1
        exp, log = self._tables
        return int(exp[(int(log[a]) * k) % (self.q - 1)])

    # -- vectorized arithmetic on integer arrays of codes --

    def add_array(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        if self.m == 1:
            return (x + y) % self.p
        if self.p == 2:
            return x ^ y
        out = np.zeros(np.broadcast(x, y).shape, dtype=np.int64)
        for i in range(self.m):
            w = self.p**i
            out += (((x // w) % self.p + (y // w) % self.p) % self.p) * w
        return out

    def scale_array(self, s: int, x: np.ndarray) -> np.ndarray:
        if self.m == 1:
            return (s * x) % self.p
        if s == 0:
            return np.zeros_like(x)
        exp, log = self._tables
        return np.where(x == 0, 0, exp[(log[s] + log[x]) % (self.q - 1)])

    def element(self, value) -> FieldElement:
        if isinstance(value, (tuple, list)):
            return FieldElement(self, self.from_digits(value))
        return FieldElement(self, int(value) % self.q if self.m == 1 else int(value))

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, a) for a in range(self.q)]

    # -- text form --

    def format(self, a: int) -> str:
        if self.m == 1:
            return str(a)
        return ",".join(str(c) for c in self.digits(a))

    def parse(self, text: str) -> int:
        text = text.strip()
        try:
            if self.m == 1:
                return int(text) % self.p
            parts = [int(t) for t in text.split(",")]
        except ValueError:
            raise FieldError(f"cannot parse field element {text!r}") from None
        if len(parts) == 1 and "," not in text:
            # A bare integer is taken as a prime-subfield element.
            return self.from_digits([parts[0]])
        if len(parts) > self.m:
            raise FieldError(f"too many coefficients for {self!r}: {text!r}")
        return self.from_digits(parts)


@functools.lru_cache(maxsize=None)
def _field_cached(p: int, m: int, modulus: tuple[int, ...] | None) -> FieldSpec:
    if not is_prime(p):
        raise FieldError(f"characteristic must be prime, got {p}")
    if m < 1:
        raise FieldError(f"extension degree must be >= 1, got {m}")
    if p**m > MAX_ORDER:
        raise FieldError(f"field order {p}^{m} exceeds the supported cap {MAX_ORDER}")
    if m == 1:
        return FieldSpec(p, 1)
    if modulus is None:
        return FieldSpec(p, m, default_modulus(p, m))
    mod = _trim([c % p for c in modulus])
    if len(mod) - 1 != m:
        raise FieldError(f"modulus must have degree {m}")
    if not is_irreducible(mod, p):
        raise FieldError(f"modulus {list(modulus)} is reducible over F_{p}")
    inv_lead = pow(mod[-1], -1, p)
    return FieldSpec(p, m, tuple((c * inv_lead) % p for c in mod))


def field_new(p: int, m: int = 1, modulus=None) -> FieldSpec:
    """Construct F_{p^m}. Identical arguments return the identical object."""
    return _field_cached(int(p), int(m), None if modulus is None else tuple(int(c) for c in modulus))


def field_for_order(q) -> FieldSpec:
    """Field of order ``q`` with the default modulus; passes FieldSpecs through."""
    if isinstance(q, FieldSpec):
        return q
    p, m = prime_power(int(q))
    return field_new(p, m)


@dataclass(frozen=True)
class FieldElement:
    """An element of a :class:`FieldSpec`, stored by its integer code."""

    field: FieldSpec
    code: int

    def __post_init__(self):
        if not 0 <= self.code < self.field.q:
            raise FieldError(f"code {self.code} out of range for {self.field!r}")

    @property
    def value(self):
        """Residue for prime fields, coefficient tuple for extension fields."""
        if self.field.m == 1:
            return self.code
        return self.field.digits(self.code)

    def _check(self, other) -> FieldElement:
        if isinstance(other, int):
            return self.field.element(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            raise MixedFieldError(f"cannot combine elements of {self.field!r} and {other.field!r}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field.add(self.code, other.code))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field.sub(self.code, other.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field.mul(self.code, other.code))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, k: int):
        return FieldElement(self.field, self.field.power(self.code, k))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.code))

    def __bool__(self) -> bool:
        return self.code != 0

    def __int__(self) -> int:
        return self.code

    def __str__(self) -> str:
        return self.field.format(self.code)


def fe_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def fe_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def fe_inv(a: FieldElement) -> FieldElement:
    return a.inverse()
