"""Homogeneous forms in X_0..X_n over F_q.

A degree-e form is a dense vector of ``C(n+e, n)`` integer field codes,
indexed by the graded-lex monomial order with X_0 > X_1 > ... > X_n. For
degree 2 in three variables that order is

    X0^2, X0*X1, X0*X2, X1^2, X1*X2, X2^2
"""

from __future__ import annotations

import functools
import os
import re
from dataclasses import dataclass
from math import comb

import numpy as np

from . import linalg
from .errors import CapacityError, DimensionError, FormatError, MixedFieldError
from .gf import FieldElement, FieldSpec, field_for_order

ENUMERATION_LIMIT = 2**26
OVERRIDE_ENV = "FORMCODE_CAPACITY_OVERRIDE"


def capacity_override() -> bool:
    return os.environ.get(OVERRIDE_ENV, "") not in ("", "0")


def check_capacity(count: int, what: str, override: bool = False) -> None:
    if count > ENUMERATION_LIMIT and not (override or capacity_override()):
        raise CapacityError(
            f"{what} would materialize {count} polynomials (limit {ENUMERATION_LIMIT}); "
            f"set {OVERRIDE_ENV}=1 to lift the guard"
        )


def space_dim(n: int, d: int) -> int:
    """Dimension C(n+d, n) of the degree-d forms in n+1 variables."""
    return comb(n + d, n) if d >= 0 else 0


def count_normalized(q: int, n: int, e: int) -> int:
    """Number N(e) of nonzero degree-e forms up to scalars."""
    if e < 0:
        raise DimensionError("degree must be nonnegative")
    return (q ** space_dim(n, e) - 1) // (q - 1)


@dataclass(frozen=True, order=True)
class Monomial:
    exponents: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def __str__(self) -> str:
        parts = []
        for k, a in enumerate(self.exponents):
            if a == 1:
                parts.append(f"X{k}")
            elif a > 1:
                parts.append(f"X{k}^{a}")
        return "*".join(parts) or "1"


def _exponent_tuples(n: int, d: int):
    if n == 0:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in _exponent_tuples(n - 1, d - a):
            yield (a,) + rest


@functools.lru_cache(maxsize=None)
def _basis(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    return tuple(_exponent_tuples(n, d))


@functools.lru_cache(maxsize=None)
def _index(n: int, d: int) -> dict[tuple[int, ...], int]:
    return {m: i for i, m in enumerate(_basis(n, d))}


def monomial_basis(n: int, d: int) -> list[Monomial]:
    if n < 0 or d < 0:
        raise DimensionError(f"need n >= 0 and d >= 0, got n={n}, d={d}")
    return [Monomial(m) for m in _basis(n, d)]


@functools.lru_cache(maxsize=None)
def product_index(n: int, a: int, b: int) -> tuple[tuple[int, ...], ...]:
    """``table[i][j]`` is the index of (monomial i of degree a)*(monomial j of degree b)."""
    target = _index(n, a + b)
    return tuple(
        tuple(target[tuple(x + y for x, y in zip(mi, mj))] for mj in _basis(n, b))
        for mi in _basis(n, a)
    )


@dataclass(frozen=True, eq=False)
class HomogeneousPoly:
    """A degree-``e`` form in ``n+1`` variables; ``coeffs`` are integer field codes."""

    field: FieldSpec
    n: int
    e: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != space_dim(self.n, self.e):
            raise DimensionError(
                f"degree-{self.e} form in {self.n + 1} variables needs "
                f"{space_dim(self.n, self.e)} coefficients, got {len(self.coeffs)}"
            )

    # Normalized and plain forms with equal data compare equal.
    def __eq__(self, other):
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        return (self.field, self.n, self.e, self.coeffs) == (other.field, other.n, other.e, other.coeffs)

    def __hash__(self):
        return hash((self.field, self.n, self.e, self.coeffs))

    @classmethod
    def zero(cls, field, n: int, e: int) -> HomogeneousPoly:
        field = field_for_order(field)
        return cls(field, n, e, (0,) * space_dim(n, e))

    @classmethod
    def monomial(cls, field, exponents, coeff: int = 1) -> HomogeneousPoly:
        field = field_for_order(field)
        exponents = tuple(exponents)
        n, e = len(exponents) - 1, sum(exponents)
        coeffs = [0] * space_dim(n, e)
        coeffs[_index(n, e)[exponents]] = coeff
        return cls(field, n, e, tuple(coeffs))

    @property
    def degree(self) -> int:
        return self.e

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def coefficients(self) -> list[FieldElement]:
        return [FieldElement(self.field, c) for c in self.coeffs]

    def leading_index(self) -> int:
        """Position of the first nonzero coefficient in monomial order."""
        return next(i for i, c in enumerate(self.coeffs) if c)

    def terms(self):
        for m, c in zip(_basis(self.n, self.e), self.coeffs):
            if c:
                yield Monomial(m), c

    def scale(self, c: int) -> HomogeneousPoly:
        return HomogeneousPoly(self.field, self.n, self.e, tuple(self.field.mul(c, x) for x in self.coeffs))

    def __add__(self, other: HomogeneousPoly) -> HomogeneousPoly:
        _compatible(self, other)
        if self.e != other.e:
            raise DimensionError("cannot add forms of different degree")
        add = self.field.add
        return HomogeneousPoly(self.field, self.n, self.e, tuple(add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: HomogeneousPoly) -> HomogeneousPoly:
        return poly_mul(self, other)

    def __pow__(self, k: int) -> HomogeneousPoly:
        out = HomogeneousPoly.monomial(self.field, (0,) * (self.n + 1))
        for _ in range(k):
            out = poly_mul(out, self)
        return out

    def __str__(self) -> str:
        return format_poly(self)


@dataclass(frozen=True, eq=False)
class NormalizedPoly(HomogeneousPoly):
    """A nonzero form whose first nonzero coefficient is 1."""

    def __post_init__(self):
        super().__post_init__()
        if self.is_zero():
            raise DimensionError("the zero form has no normalized representative")
        if self.coeffs[self.leading_index()] != 1:
            raise DimensionError("normalized form must have leading coefficient 1")


def _compatible(f: HomogeneousPoly, g: HomogeneousPoly) -> None:
    if f.field != g.field:
        raise MixedFieldError(f"forms over {f.field!r} and {g.field!r}")
    if f.n != g.n:
        raise DimensionError(f"forms in {f.n + 1} and {g.n + 1} variables")


def poly_mul(f: HomogeneousPoly, g: HomogeneousPoly) -> HomogeneousPoly:
    _compatible(f, g)
    field = f.field
    table = product_index(f.n, f.e, g.e)
    out = [0] * space_dim(f.n, f.e + g.e)
    gnz = [(j, b) for j, b in enumerate(g.coeffs) if b]
    if field.q == 2:
        for i, a in enumerate(f.coeffs):
            if a:
                row = table[i]
                for j, _ in gnz:
                    out[row[j]] ^= 1
    else:
        add, mul = field.add, field.mul
        for i, a in enumerate(f.coeffs):
            if a:
                row = table[i]
                for j, b in gnz:
                    k = row[j]
                    out[k] = add(out[k], mul(a, b))
    return HomogeneousPoly(field, f.n, f.e + g.e, tuple(out))


def normalize(f: HomogeneousPoly) -> NormalizedPoly:
    if f.is_zero():
        raise DimensionError("cannot normalize the zero form")
    lead = f.coeffs[f.leading_index()]
    coeffs = f.coeffs if lead == 1 else f.scale(f.field.inv(lead)).coeffs
    return NormalizedPoly(f.field, f.n, f.e, coeffs)


def multiplication_rows(g: HomogeneousPoly, d: int) -> list[tuple[int, ...]]:
    """Coefficient vectors of g*m for every monomial m of degree d - deg g.

    These span g * R_{d-e}; they are the columns of the matrix of F -> g*F.
    """
    e = g.e
    if d < e:
        raise DimensionError(f"target degree {d} is below the form degree {e}")
    table = product_index(g.n, e, d - e)
    size = space_dim(g.n, d)
    rows = []
    for j in range(space_dim(g.n, d - e)):
        v = [0] * size
        for i, a in enumerate(g.coeffs):
            if a:
                v[table[i][j]] = a
        rows.append(tuple(v))
    return rows


def divides(g: HomogeneousPoly, h: HomogeneousPoly) -> HomogeneousPoly | None:
    """Return the unique f with g*f == h, or ``None`` if g does not divide h."""
    _compatible(g, h)
    if g.is_zero():
        raise DimensionError("division by the zero form")
    if h.e < g.e:
        raise DimensionError(f"deg h = {h.e} is below deg g = {g.e}")
    cols = multiplication_rows(g, h.e)
    x = linalg.solve(g.field, cols, h.coeffs)
    if x is None:
        return None
    return HomogeneousPoly(g.field, g.n, h.e - g.e, tuple(x))


# ---- rank / unrank over the normalized forms ----
#
# Order: by the position j of the leading coefficient, then by the trailing
# coefficients j+1..M-1 read as a base-q number (coefficient j+1 most
# significant).

def _block_offset(q: int, size: int, j: int) -> int:
    return (q**size - q ** (size - j)) // (q - 1)


def rank_coeffs(coeffs, q: int) -> int:
    size = len(coeffs)
    j = next(i for i, c in enumerate(coeffs) if c)
    tail = 0
    for c in coeffs[j + 1 :]:
        tail = tail * q + c
    return _block_offset(q, size, j) + tail


def unrank_coeffs(i: int, q: int, size: int) -> tuple[int, ...]:
    for j in range(size):
        block = q ** (size - 1 - j)
        if i < block:
            tail = []
            for _ in range(size - 1 - j):
                i, r = divmod(i, q)
                tail.append(r)
            return (0,) * j + (1,) + tuple(reversed(tail))
        i -= block
    raise IndexError("rank out of range")


def rank(f: NormalizedPoly) -> int:
    if f.is_zero() or f.coeffs[f.leading_index()] != 1:
        raise DimensionError("rank is defined on normalized forms")
    return rank_coeffs(f.coeffs, f.field.q)


def unrank(i: int, q, n: int, e: int) -> NormalizedPoly:
    field = field_for_order(q)
    total = count_normalized(field.q, n, e)
    if not 0 <= i < total:
        raise IndexError(f"rank {i} outside [0, {total})")
    return NormalizedPoly(field, n, e, unrank_coeffs(i, field.q, space_dim(n, e)))


def all_normalized_array(q: int, n: int, e: int, override: bool = False) -> np.ndarray:
    """Coefficient matrix of every normalized degree-e form, row i = unrank(i)."""
    size = space_dim(n, e)
    total = count_normalized(q, n, e)
    check_capacity(total, f"enumerating N({e})", override)
    out = np.zeros((total, size), dtype=np.int64)
    start = 0
    for j in range(size):
        r = size - 1 - j
        block = q**r
        vals = np.arange(block, dtype=np.int64)
        rows = out[start : start + block]
        rows[:, j] = 1
        for c in range(r):
            rows[:, j + 1 + c] = (vals // q ** (r - 1 - c)) % q
        start += block
    return out


def rank_array(mat: np.ndarray, q: int) -> np.ndarray:
    """Vectorized :func:`rank_coeffs` for rows whose leading coefficient is 1."""
    size = mat.shape[1]
    weights = np.array([q ** (size - 1 - c) for c in range(size)], dtype=np.int64)
    value = mat @ weights
    lead = np.argmax(mat != 0, axis=1)
    offsets = np.array([_block_offset(q, size, j) for j in range(size)], dtype=np.int64)
    return offsets[lead] + value - weights[lead]


# ---- text form ----

_TERM = re.compile(r"^(?:(?P<coeff>\d+(?:,\d+)*)\s*\*\s*)?(?P<body>.*)$")
_FACTOR = re.compile(r"^X(?P<var>\d+)(?:\^(?P<exp>\d+))?$")


def format_poly(f: HomogeneousPoly) -> str:
    terms = []
    for mono, c in f.terms():
        body = str(mono)
        if body == "1":
            terms.append(f.field.format(c))
        elif c == 1:
            terms.append(body)
        else:
            terms.append(f"{f.field.format(c)}*{body}")
    return " + ".join(terms) if terms else "0"


def parse_poly(text: str, field, n: int | None = None) -> HomogeneousPoly:
    """Parse e.g. ``X0^2 + X0*X1 + 2*X2^2``; n defaults to the largest variable index."""
    field = field_for_order(field)
    raw_terms = [t.strip() for t in text.replace("-", "+-").split("+") if t.strip()]
    if not raw_terms:
        raise FormatError(f"empty polynomial text {text!r}")
    parsed = []
    for t in raw_terms:
        if t.startswith("-"):
            raise FormatError(f"negative coefficients are not supported: {t!r}")
        m = _TERM.match(t)
        coeff_text, body = m.group("coeff"), m.group("body").strip()
        if coeff_text is None and re.fullmatch(r"\d+(,\d+)*", body):
            coeff_text, body = body, ""
        coeff = field.parse(coeff_text) if coeff_text is not None else 1
        exps: dict[int, int] = {}
        if body:
            for factor in body.split("*"):
                fm = _FACTOR.match(factor.strip())
                if fm is None:
                    raise FormatError(f"bad factor {factor!r} in {text!r}")
                k = int(fm.group("var"))
                exps[k] = exps.get(k, 0) + int(fm.group("exp") or 1)
        parsed.append((coeff, exps))
    top = max((max(ex, default=0) for _, ex in parsed), default=0)
    if n is None:
        n = top
    elif top > n:
        raise FormatError(f"variable X{top} exceeds n={n}")
    degrees = {sum(ex.values()) for _, ex in parsed}
    if len(degrees) != 1:
        raise FormatError(f"polynomial is not homogeneous: {text!r}")
    e = degrees.pop()
    index = _index(n, e)
    coeffs = [0] * space_dim(n, e)
    for coeff, exps in parsed:
        key = tuple(exps.get(k, 0) for k in range(n + 1))
        coeffs[index[key]] = field.add(coeffs[index[key]], coeff)
    return HomogeneousPoly(field, n, e, tuple(coeffs))
