"""Counting and enumerating families of normalized forms.

``count_irreducible`` uses unique factorization: every normalized form of
degree e is a multiset of irreducibles whose degrees partition e, and there
are C(I(i) + a - 1, a) multisets of size a drawn from the I(i) irreducibles
of degree i. Subtracting every partition except the one-part partition {e}
from N(e) leaves I(e).

``sieve_irreducible`` builds the same set explicitly by marking every
product of lower-degree forms in a table over rank space.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from math import comb, prod

import numpy as np

from . import linalg
from .errors import DimensionError, MixedFieldError
from .gf import FieldSpec, field_for_order
from .homopoly import (
    HomogeneousPoly,
    NormalizedPoly,
    all_normalized_array,
    check_capacity,
    count_normalized,
    multiplication_rows,
    normalize,
    product_index,
    rank,
    rank_array,
    space_dim,
    unrank,
    unrank_coeffs,
)


def partitions(e: int):
    """Partitions of e as multiplicity vectors ``a`` with sum(i * a[i-1]) == e.

    Generated in reverse lexicographic order of the parts, starting from
    the single part {e}.
    """
    if e <= 0:
        if e == 0:
            yield ()
        return
    parts = [e]
    while True:
        mult = [0] * e
        for part in parts:
            mult[part - 1] += 1
        yield tuple(mult)
        # Next partition: drop trailing 1s, decrement the last part > 1,
        # then refill greedily with copies of the decremented part.
        ones = 0
        while parts and parts[-1] == 1:
            parts.pop()
            ones += 1
        if not parts:
            return
        k = parts.pop() - 1
        remainder = ones + 1 + k
        while remainder >= k:
            parts.append(k)
            remainder -= k
        if remainder:
            parts.append(remainder)


def multiset_count(size: int, a: int) -> int:
    """Number of multisets of cardinality a drawn from ``size`` objects."""
    return comb(size + a - 1, a)


def _partition_product(mult, counts) -> int:
    return prod(multiset_count(counts[i], a) for i, a in enumerate(mult) if a)


@functools.lru_cache(maxsize=None)
def _irreducible_counts(q: int, n: int, e: int) -> tuple[int, ...]:
    counts: list[int] = []
    for k in range(1, e + 1):
        total = count_normalized(q, n, k)
        reducible = sum(_partition_product(mult, counts) for mult in partitions(k) if mult[k - 1] == 0)
        counts.append(total - reducible)
    return tuple(counts)


def count_irreducible(q: int, n: int, e: int) -> int:
    """Number I(e) of irreducible normalized degree-e forms, exact."""
    if e < 1:
        raise DimensionError(f"degree must be >= 1, got {e}")
    return _irreducible_counts(int(field_for_order(q).q), n, e)[e - 1]


def factorization_total(q: int, n: int, e: int) -> int:
    """N(e) rebuilt from I(1..e) by summing over all partitions of e."""
    counts = _irreducible_counts(int(field_for_order(q).q), n, e)
    return sum(_partition_product(mult, counts) for mult in partitions(e))


def _products_with(a: np.ndarray, others: np.ndarray, field: FieldSpec, n: int, k: int, j: int) -> np.ndarray:
    """Coefficient rows of (form a of degree k) * (each row of ``others``, degree j)."""
    table = product_index(n, k, j)
    size = space_dim(n, k + j)
    if field.m == 1:
        mat = np.zeros((others.shape[1], size), dtype=np.int64)
        for i, ai in enumerate(a):
            if ai:
                for jj, t in enumerate(table[i]):
                    mat[jj, t] += ai
        return (others @ mat) % field.p
    out = np.zeros((others.shape[0], size), dtype=np.int64)
    for i, ai in enumerate(a):
        if ai:
            for jj, t in enumerate(table[i]):
                out[:, t] = field.add_array(out[:, t], field.scale_array(int(ai), others[:, jj]))
    return out


def reducible_mask(q, n: int, e: int, override: bool = False) -> np.ndarray:
    """Boolean table over rank space of N(e); True marks reducible forms."""
    field = field_for_order(q)
    total = count_normalized(field.q, n, e)
    check_capacity(total, f"sieving degree {e}", override)
    marked = np.zeros(total, dtype=bool)
    for k in range(1, e // 2 + 1):
        left = all_normalized_array(field.q, n, k, override)
        right = all_normalized_array(field.q, n, e - k, override)
        for a in left:
            # Leading terms multiply, so products of normalized forms are normalized.
            marked[rank_array(_products_with(a, right, field, n, k, e - k), field.q)] = True
    return marked


def sieve_irreducible_ranks(q, n: int, e: int, override: bool = False) -> np.ndarray:
    return np.flatnonzero(~reducible_mask(q, n, e, override))


def sieve_irreducible(q, n: int, e: int, override: bool = False) -> list[NormalizedPoly]:
    """All irreducible normalized degree-e forms, in rank order."""
    field = field_for_order(q)
    size = space_dim(n, e)
    return [
        NormalizedPoly(field, n, e, unrank_coeffs(int(i), field.q, size))
        for i in sieve_irreducible_ranks(field, n, e, override)
    ]


def linear_powers(q, n: int, e: int) -> list[NormalizedPoly]:
    """e-th powers of the normalized linear forms, sorted by rank."""
    if e < 1:
        raise DimensionError(f"degree must be >= 1, got {e}")
    field = field_for_order(q)
    out = [normalize(unrank(i, field, n, 1) ** e) for i in range(count_normalized(field.q, n, 1))]
    return sorted(out, key=rank)


@dataclass(frozen=True)
class CoprimeCheck:
    ok: bool
    pair: tuple[HomogeneousPoly, HomogeneousPoly] | None = None
    divisor: HomogeneousPoly | None = None

    def __bool__(self) -> bool:
        return self.ok


def _membership_test(field: FieldSpec, rows, size: int):
    """Return a predicate ``vec -> bool`` for the span of ``rows``."""
    if field.q == 2:
        red = linalg.rref_bits(linalg.pack_row(r, size) for r in rows)
        return lambda v: linalg.reduce_bits(linalg.pack_row(v, size), red) == 0
    red, pivots = linalg.rref(field, rows, size)

    def contains(v):
        v = list(v)
        for row, col in zip(red, pivots):
            c = v[col]
            if c:
                f = field.neg(c)
                v = [field.add(x, field.mul(f, y)) for x, y in zip(v, row)]
        return not any(v)

    return contains


def pairwise_coprime(family, override: bool = False) -> CoprimeCheck:
    """Check that distinct members share only constant divisors.

    Any nonconstant common divisor of two degree-e forms has an irreducible
    factor of degree 1..e-1 (or the two forms coincide up to scalars), so it
    suffices to look for duplicates and test every irreducible of degree
    below e against every member.
    """
    family = list(family)
    if not family:
        return CoprimeCheck(True)
    first = family[0]
    for g in family[1:]:
        if g.field != first.field:
            raise MixedFieldError("family mixes fields")
        if (g.n, g.e) != (first.n, first.e):
            raise DimensionError("family mixes variable counts or degrees")
    field, n, e = first.field, first.n, first.e
    normal = [normalize(g) for g in family]
    seen: dict[NormalizedPoly, int] = {}
    for idx, g in enumerate(normal):
        if g in seen:
            return CoprimeCheck(False, (family[seen[g]], family[idx]), g)
        seen[g] = idx
    size = space_dim(n, e)
    for k in range(1, e):
        for p in sieve_irreducible(field, n, k, override):
            contains = _membership_test(field, multiplication_rows(p, e), size)
            hit = None
            for idx, g in enumerate(normal):
                if contains(g.coeffs):
                    if hit is not None:
                        return CoprimeCheck(False, (family[hit], family[idx]), p)
                    hit = idx
    return CoprimeCheck(True)


@dataclass(frozen=True)
class CensusResult:
    q: int
    n: int
    e: int
    count_normalized: int
    count_irreducible: int
    members: tuple[NormalizedPoly, ...] | None = None

    def csv_row(self) -> str:
        return f"{self.q},{self.n},{self.e},{self.count_normalized},{self.count_irreducible}"


def census(q, n: int, e: int, enumerate_members: bool = False, override: bool = False) -> CensusResult:
    field = field_for_order(q)
    members = None
    if enumerate_members:
        members = tuple(sieve_irreducible(field, n, e, override))
    result = CensusResult(field.q, n, e, count_normalized(field.q, n, e), count_irreducible(field.q, n, e), members)
    if members is not None and len(members) != result.count_irreducible:
        raise AssertionError(f"sieve found {len(members)} irreducibles, recursion says {result.count_irreducible}")
    return result
