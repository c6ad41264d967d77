"""Subspace codes C_B = {G * R_{d-e} : G in B} and their parameters.

Every codeword lives in the degree-d forms (ambient dimension
N = C(n+d, n)) and has dimension l = C(n+d-e, n). For a coprime family the
code is equidistant with

    D = 2 * C(n+d-e, n)                        if d - e < e
    D = 2 * (C(n+d-e, n) - C(n+d-2e, n))       otherwise
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import TextIO

from .errors import BudgetError, DimensionError, EquidistanceError, FormatError, NotCoprimeError
from .gf import FieldSpec, field_for_order
from .homopoly import (
    NormalizedPoly,
    format_poly,
    multiplication_rows,
    normalize,
    parse_poly,
    rank,
    space_dim,
)
from .irreducibles import count_irreducible, linear_powers, pairwise_coprime, sieve_irreducible
from .subspace import Subspace, dist, read_subspace, subspace_from_vectors, write_subspace

FAMILIES = ("irr", "linear", "custom")
PAIR_BUDGET = 10**7


def build_codeword(g: NormalizedPoly, d: int) -> Subspace:
    """The subspace g * R_{d-e} inside the degree-d forms."""
    if g.is_zero():
        raise DimensionError("generator must be nonzero")
    if d < g.e:
        raise DimensionError(f"need d >= e, got d={d}, e={g.e}")
    return subspace_from_vectors(g.field, space_dim(g.n, d), multiplication_rows(g, d))


@dataclass(frozen=True)
class SubspaceCode:
    field: FieldSpec
    n: int
    e: int
    d: int
    generators: tuple[NormalizedPoly, ...]
    codewords: tuple[Subspace, ...]
    family: str = "custom"

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def N(self) -> int:
        return space_dim(self.n, self.d)

    @property
    def l(self) -> int:  # noqa: E743
        return space_dim(self.n, self.d - self.e)

    def __len__(self) -> int:
        return len(self.codewords)


def build_code(family, d: int, tag: str = "custom", check_coprime: bool = True) -> SubspaceCode:
    """Build C_B for the generators in ``family``, ordered by rank.

    With ``check_coprime`` false the caller vouches for the coprimality
    hypothesis (e.g. distinct irreducibles).
    """
    gens = [normalize(g) for g in family]
    if not gens:
        raise DimensionError("generator family is empty")
    if tag not in FAMILIES:
        raise ValueError(f"unknown family tag {tag!r}")
    e = gens[0].e
    if d < e:
        raise DimensionError(f"need d >= e, got d={d}, e={e}")
    if check_coprime:
        check = pairwise_coprime(gens)
        if not check:
            a, b = check.pair
            raise NotCoprimeError(
                f"generators {format_poly(a)} and {format_poly(b)} share the factor {format_poly(check.divisor)}",
                pair=check.pair,
            )
    gens.sort(key=rank)
    g0 = gens[0]
    return SubspaceCode(
        g0.field, g0.n, e, d, tuple(gens), tuple(build_codeword(g, d) for g in gens), tag
    )


def family_generators(name: str, q, n: int, e: int, override: bool = False) -> list[NormalizedPoly]:
    if name == "irr":
        return sieve_irreducible(q, n, e, override)
    if name == "linear":
        return linear_powers(q, n, e)
    raise ValueError(f"family {name!r} has no built-in generator list")


def build_family_code(name: str, q, n: int, e: int, d: int, override: bool = False) -> SubspaceCode:
    gens = family_generators(name, q, n, e, override)
    # Distinct irreducibles are coprime; e-th powers of distinct lines are too.
    return build_code(gens, d, tag=name, check_coprime=False)


def theoretical_distance(n: int, d: int, e: int) -> int:
    if not d >= e >= 1:
        raise DimensionError(f"need d >= e >= 1, got d={d}, e={e}")
    if d - e < e:
        return 2 * space_dim(n, d - e)
    return 2 * (space_dim(n, d - e) - space_dim(n, d - 2 * e))


def theoretical_intersection_dim(n: int, d: int, e: int) -> int:
    return space_dim(n, d - 2 * e) if d >= 2 * e else 0


@dataclass(frozen=True)
class CodeParameters:
    """Type [N, l, log_q|C|, D] plus normalized weight, rate and distance.

    ``D`` and ``delta`` are ``None`` for a single-codeword code.
    """

    N: int
    l: int  # noqa: E741
    size: int
    logq_size: float
    D: int | None
    lam: float
    R: float
    delta: float | None


def params_from_size(q: int, n: int, e: int, d: int, size: int) -> CodeParameters:
    N = space_dim(n, d)
    l = space_dim(n, d - e)  # noqa: E741
    logq = math.log(size, q) if size > 0 else float("-inf")
    D = theoretical_distance(n, d, e) if size >= 2 else None
    return CodeParameters(
        N=N,
        l=l,
        size=size,
        logq_size=logq,
        D=D,
        lam=l / N,
        R=logq / (N * l),
        delta=None if D is None else D / (2 * l),
    )


def verify_equidistance(code: SubspaceCode, expected: int | None = None) -> int:
    """Check every pair against ``expected`` (default: the formula); return pair count."""
    if expected is None:
        expected = theoretical_distance(code.n, code.d, code.e)
    words = code.codewords
    checked = 0
    for i, j in itertools.combinations(range(len(words)), 2):
        got = dist(words[i], words[j])
        if got != expected:
            gi, gj = code.generators[i], code.generators[j]
            raise EquidistanceError(
                f"dist(V[{format_poly(gi)}], V[{format_poly(gj)}]) = {got}, expected {expected}",
                pair=(i, j),
                observed=got,
                expected=expected,
            )
        checked += 1
    return checked


def code_params(code: SubspaceCode, verify: bool = False) -> CodeParameters:
    params = params_from_size(code.q, code.n, code.e, code.d, len(code))
    for w in code.codewords:
        if w.N != params.N or w.l != params.l:
            raise EquidistanceError(f"codeword of dimension {w.l} in F_q^{w.N}, expected {params.l} in F_q^{params.N}")
    if verify and params.D is not None:
        verify_equidistance(code, params.D)
    return params


def min_distance_bruteforce(code: SubspaceCode, budget: int = PAIR_BUDGET) -> int:
    """Minimum pairwise distance by exhaustive comparison."""
    k = len(code)
    if k < 2:
        raise DimensionError("minimum distance needs at least two codewords")
    pairs = k * (k - 1) // 2
    if pairs > budget:
        raise BudgetError(f"{pairs} pairs exceed the budget of {budget}")
    return min(dist(a, b) for a, b in itertools.combinations(code.codewords, 2))


# ---- parameter table ----

def fmt3(x: float) -> str:
    """Three decimals, halves rounded away from zero."""
    return str(Decimal(repr(x)).quantize(Decimal("0.001"), rounding=ROUND_HALF_UP))


CSV_HEADER = "e,d,N,l,size,logq_size,D,lambda,delta,R,erratum_flag"


@dataclass(frozen=True)
class TableRow:
    e: int
    d: int
    params: CodeParameters
    # Boundary cell d = 2e: the intersection is spanned by G1*G2, which the
    # published parameter grid does not account for.
    erratum_flag: bool

    def csv(self) -> str:
        p = self.params
        return ",".join(
            [
                str(self.e),
                str(self.d),
                str(p.N),
                str(p.l),
                str(p.size),
                fmt3(p.logq_size),
                "" if p.D is None else str(p.D),
                fmt3(p.lam),
                "" if p.delta is None else fmt3(p.delta),
                fmt3(p.R),
                "true" if self.erratum_flag else "false",
            ]
        )


def family_size(name: str, q: int, n: int, e: int) -> int:
    if name == "irr":
        return count_irreducible(q, n, e)
    if name == "linear":
        return (q ** (n + 1) - 1) // (q - 1)
    raise ValueError(f"family {name!r} has no closed-form size")


def table_row(q: int, n: int, e: int, d: int, size: int) -> TableRow:
    return TableRow(e, d, params_from_size(q, n, e, d, size), d == 2 * e)


def parameter_table(q, n: int, e_max: int, d_max: int, family: str = "irr") -> list[TableRow]:
    """Rows for every 1 <= e <= e_max, e <= d <= d_max; sizes come from counting."""
    q = field_for_order(q).q
    rows = []
    for e in range(1, e_max + 1):
        size = family_size(family, q, n, e)
        for d in range(e, d_max + 1):
            rows.append(table_row(q, n, e, d, size))
    return rows


# ---- serialization ----

def write_code(code: SubspaceCode, fh: TextIO) -> None:
    fh.write(f"{code.q} {code.n} {code.e} {code.d} {code.family} {len(code)}\n")
    for g, w in zip(code.generators, code.codewords):
        fh.write(format_poly(g) + "\n")
        write_subspace(w, fh)


def read_code(lines) -> SubspaceCode:
    it = (ln for ln in lines if ln.strip() and not ln.lstrip().startswith("#"))
    try:
        header = next(it).split()
        q, n, e, d = (int(t) for t in header[:4])
        family, size = header[4], int(header[5])
    except (StopIteration, ValueError, IndexError):
        raise FormatError("bad code header; expected 'q n e d family size'") from None
    field = field_for_order(q)
    gens, words = [], []
    for _ in range(size):
        try:
            g = normalize(parse_poly(next(it), field, n))
        except StopIteration:
            raise FormatError("code file ends early") from None
        w = read_subspace(it)
        if g.e != e or w != build_codeword(g, d):
            raise FormatError(f"codeword block does not match generator {format_poly(g)}")
        gens.append(g)
        words.append(w)
    return SubspaceCode(field, n, e, d, tuple(gens), tuple(words), family)


def load_code(path) -> SubspaceCode:
    with open(path, encoding="utf-8") as fh:
        return read_code(fh)


def save_code(code: SubspaceCode, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        write_code(code, fh)


def read_generators(lines, q, n: int | None = None) -> list[NormalizedPoly]:
    """Newline-delimited polynomial text to normalized generators."""
    field = field_for_order(q)
    out = []
    for ln in lines:
        ln = ln.strip()
        if ln and not ln.startswith("#"):
            out.append(normalize(parse_poly(ln, field, n)))
    return out
