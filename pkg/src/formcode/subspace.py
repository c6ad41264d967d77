"""Subspaces of F_q^N in canonical RREF and the subspace distance.

    dist(V, W) = dim(V + W) - dim(V ∩ W) = 2 * rank([V; W]) - dim V - dim W
"""

from __future__ import annotations

import io
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import TextIO

from . import linalg
from .errors import DimensionError, FormatError, MixedFieldError
from .gf import FieldSpec, field_for_order


@dataclass(frozen=True)
class Subspace:
    """A subspace given by its RREF basis; equal spans have equal bases."""

    field: FieldSpec
    N: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def packed(self) -> tuple[int, ...]:
        return tuple(linalg.pack_row(r, self.N) for r in self.basis)

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, c in enumerate(r) if c) for r in self.basis)

    def contains(self, vector) -> bool:
        vector = tuple(vector)
        if len(vector) != self.N:
            raise DimensionError(f"vector of length {len(vector)} in F_q^{self.N}")
        if self.field.q == 2:
            return linalg.reduce_bits(linalg.pack_row(vector, self.N), self.packed) == 0
        return linalg.rank(self.field, self.basis + (vector,), self.N) == self.l

    def __le__(self, other: Subspace) -> bool:
        _check_pair(self, other)
        return sum_dim(self, other) == other.l


def subspace_from_vectors(q, N: int, vectors) -> Subspace:
    field = field_for_order(q)
    rows = [tuple(int(c) for c in v) for v in vectors]
    for r in rows:
        if len(r) != N:
            raise DimensionError(f"vector of length {len(r)} in an ambient space of dimension {N}")
        if any(not 0 <= c < field.q for c in r):
            raise DimensionError(f"entries must be field codes in [0, {field.q})")
    basis, _ = linalg.rref(field, rows, N)
    return Subspace(field, N, tuple(basis))


def zero_subspace(q, N: int) -> Subspace:
    return Subspace(field_for_order(q), N, ())


def _check_pair(v: Subspace, w: Subspace) -> None:
    if v.field != w.field:
        raise MixedFieldError(f"subspaces over {v.field!r} and {w.field!r}")
    if v.N != w.N:
        raise DimensionError(f"ambient dimensions {v.N} and {w.N} differ")


def sum_dim(v: Subspace, w: Subspace) -> int:
    _check_pair(v, w)
    if v.field.q == 2:
        return linalg.rank_bits(v.packed + w.packed)
    return linalg.rank(v.field, v.basis + w.basis, v.N)


def intersect_dim(v: Subspace, w: Subspace) -> int:
    return v.l + w.l - sum_dim(v, w)


def dist(v: Subspace, w: Subspace) -> int:
    r = sum_dim(v, w)
    return 2 * r - v.l - w.l


def span_sum(v: Subspace, w: Subspace) -> Subspace:
    _check_pair(v, w)
    return subspace_from_vectors(v.field, v.N, v.basis + w.basis)


def intersection(v: Subspace, w: Subspace) -> Subspace:
    """V ∩ W by Zassenhaus: row-reduce [[V, V], [W, 0]] and keep rows with zero left half."""
    _check_pair(v, w)
    N = v.N
    rows = [r + r for r in v.basis] + [r + (0,) * N for r in w.basis]
    red, pivots = linalg.rref(v.field, rows, 2 * N)
    inter = [r[N:] for r, c in zip(red, pivots) if c >= N]
    return subspace_from_vectors(v.field, N, inter)


# ---- file format: "q N l" header, then l rows of N field elements ----

def write_subspace(v: Subspace, fh: TextIO) -> None:
    fh.write(f"{v.field.q} {v.N} {v.l}\n")
    for row in v.basis:
        fh.write(" ".join(v.field.format(c) for c in row) + "\n")


def format_subspace(v: Subspace) -> str:
    buf = io.StringIO()
    write_subspace(v, buf)
    return buf.getvalue()


def read_subspace(lines, strict: bool = True) -> Subspace:
    """Read one subspace block from an iterator of lines.

    Rows are re-canonicalized. Dependent rows raise :class:`FormatError`
    unless ``strict`` is false, in which case a warning is issued and the
    span is returned.
    """
    it = iter(lines)
    header = _next_nonblank(it)
    try:
        q, N, l = (int(t) for t in header.split())
    except ValueError:
        raise FormatError(f"bad subspace header {header!r}") from None
    field = field_for_order(q)
    rows = []
    for _ in range(l):
        toks = _next_nonblank(it).split()
        if len(toks) != N:
            raise FormatError(f"expected {N} entries per row, got {len(toks)}")
        rows.append(tuple(field.parse(t) for t in toks))
    v = subspace_from_vectors(field, N, rows)
    if v.l != l:
        msg = f"rows span a {v.l}-dimensional space, header declares {l}"
        if strict:
            raise FormatError(msg)
        warnings.warn(msg, stacklevel=2)
    return v


def _next_nonblank(it) -> str:
    for line in it:
        line = line.strip()
        if line and not line.startswith("#"):
            return line
    raise FormatError("unexpected end of subspace data")


def load_subspace(path, strict: bool = True) -> Subspace:
    with open(path, encoding="utf-8") as fh:
        return read_subspace(fh, strict=strict)


def save_subspace(v: Subspace, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        write_subspace(v, fh)
