import io
import itertools
import math

import numpy as np
import pytest

from formcode.codes import (
    build_code,
    build_codeword,
    build_family_code,
    code_params,
    fmt3,
    min_distance_bruteforce,
    parameter_table,
    params_from_size,
    read_code,
    theoretical_distance,
    theoretical_intersection_dim,
    verify_equidistance,
    write_code,
)
from formcode.errors import BudgetError, DimensionError, EquidistanceError, FormatError, NotCoprimeError
from formcode.homopoly import count_normalized, normalize, parse_poly, poly_mul, space_dim, unrank
from formcode.irreducibles import linear_powers, sieve_irreducible
from formcode.subspace import dist, intersect_dim, intersection

from oracles import brute_dist
import table1


def P(text, q=2, n=2):
    return parse_poly(text, q, n)


def test_build_codeword_examples():
    v = build_codeword(normalize(P("X0^2")), 2)
    assert v.l == 1 and v.basis == (P("X0^2").coeffs,)
    v = build_codeword(normalize(P("X0")), 2)
    assert v.l == 3 and v.N == 6
    assert {tuple(r) for r in v.basis} == {P(m).coeffs for m in ("X0^2", "X0*X1", "X0*X2")}
    v = build_codeword(normalize(P("X0 + X1")), 2)
    assert v.l == 3 and v.contains(P("X0^2 + X1^2").coeffs)
    with pytest.raises(DimensionError):
        build_codeword(normalize(P("X0^2")), 1)


def test_build_code_examples():
    code = build_code(sieve_irreducible(2, 2, 1), 3, tag="irr")
    assert len(code) == 7 and code.N == 10 and code.l == 6
    assert all(w.l == 6 and w.N == 10 for w in code.codewords)
    lin = build_code(linear_powers(2, 2, 2), 2, tag="linear")
    assert len(lin) == 7 and all(w.l == 1 for w in lin.codewords)
    with pytest.raises(NotCoprimeError) as err:
        build_code([P("X0*X1"), P("X0*X2")], 3)
    assert "X0" in str(err.value)
    with pytest.raises(DimensionError):
        build_code([], 3)


def test_codeword_order_follows_generator_rank():
    gens = sieve_irreducible(2, 2, 2)
    code = build_code(list(reversed(gens)), 3)
    assert list(code.generators) == gens


def test_theoretical_distance_examples():
    assert theoretical_distance(2, 3, 1) == 6
    assert theoretical_distance(2, 5, 2) == 14
    assert theoretical_distance(2, 2, 1) == 4
    with pytest.raises(DimensionError):
        theoretical_distance(2, 1, 2)


def test_distance_four_at_e1_d2_by_span_enumeration():
    lines = sieve_irreducible(2, 2, 1)
    words = [build_codeword(g, 2) for g in lines]
    pairs = list(itertools.combinations(words, 2))
    assert len(pairs) == 21
    assert {brute_dist(a.basis, b.basis, 2, 6)[0] for a, b in pairs} == {4}


def test_code_params_examples():
    p = code_params(build_family_code("irr", 2, 2, 1, 1), verify=True)
    assert (p.N, p.l, p.size, p.D) == (3, 1, 7, 2)
    assert math.isclose(p.logq_size, math.log2(7))
    assert fmt3(p.logq_size) == "2.807" and fmt3(p.R) == "0.936"
    p = code_params(build_family_code("irr", 2, 2, 2, 5), verify=True)
    assert (p.N, p.l, p.D) == (21, 10, 14)
    assert fmt3(p.lam) == "0.476" and fmt3(p.delta) == "0.700"
    single = code_params(build_code([P("X0")], 2))
    assert single.D is None and single.delta is None


def test_min_distance_examples():
    assert min_distance_bruteforce(build_family_code("irr", 2, 2, 1, 2)) == 4
    assert min_distance_bruteforce(build_family_code("irr", 2, 2, 2, 3)) == 6
    assert min_distance_bruteforce(build_family_code("linear", 2, 2, 3, 3)) == 2
    with pytest.raises(BudgetError):
        min_distance_bruteforce(build_family_code("irr", 2, 2, 2, 3), budget=10)
    with pytest.raises(DimensionError):
        min_distance_bruteforce(build_code([P("X0")], 2))


@pytest.mark.parametrize("e,d", [(e, d) for e in (1, 2) for d in range(e, 5)])
def test_injectivity_for_every_generator(e, d):
    expected = space_dim(2, d - e)
    for i in range(count_normalized(2, 2, e)):
        assert build_codeword(unrank(i, 2, 2, e), d).l == expected


@pytest.mark.parametrize("e,d", [(e, d) for e in (1, 2) for d in range(e, 6)])
def test_equidistance_exhaustive(e, d):
    code = build_family_code("irr", 2, 2, e, d)
    assert verify_equidistance(code) == len(code) * (len(code) - 1) // 2
    assert min_distance_bruteforce(code) == theoretical_distance(2, d, e)


@pytest.mark.parametrize("q,n,e,d", [(3, 1, 2, 4), (3, 2, 1, 3), (4, 1, 2, 5), (5, 1, 1, 3), (3, 1, 3, 7)])
def test_equidistance_other_fields(q, n, e, d):
    code = build_family_code("irr", q, n, e, d)
    verify_equidistance(code)


@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_equidistance_sampled_e3(d):
    gens = sieve_irreducible(2, 2, 3)
    rng = np.random.default_rng(d)
    expected = theoretical_distance(2, d, 3)
    for _ in range(200):
        i, j = rng.choice(len(gens), size=2, replace=False)
        assert dist(build_codeword(gens[i], d), build_codeword(gens[j], d)) == expected


@pytest.mark.parametrize("q,n,e,d", [(2, 2, 1, 2), (2, 2, 1, 4), (2, 2, 2, 4), (2, 2, 2, 5), (2, 2, 3, 7), (3, 1, 2, 5)])
def test_intersection_is_product_codeword(q, n, e, d):
    gens = sieve_irreducible(q, n, e)
    rng = np.random.default_rng(d)
    for _ in range(30):
        i, j = rng.choice(len(gens), size=2, replace=False)
        g1, g2 = gens[i], gens[j]
        v1, v2 = build_codeword(g1, d), build_codeword(g2, d)
        assert intersect_dim(v1, v2) == theoretical_intersection_dim(n, d, e)
        assert intersection(v1, v2) == build_codeword(normalize(poly_mul(g1, g2)), d)


def test_verification_flags_non_coprime_construction():
    code = build_code([P("X0*X1"), P("X0*X2")], 3, check_coprime=False)
    with pytest.raises(EquidistanceError) as err:
        code_params(code, verify=True)
    assert err.value.observed == 4 and err.value.expected == 6


def test_parameter_identities():
    for row in parameter_table(2, 2, 5, 10):
        p = row.params
        assert p.delta == p.D / (2 * p.l)
        assert p.lam == p.l / p.N
        assert p.R == math.log(p.size, 2) / (p.N * p.l)
        assert 0 < p.lam <= 1 and 0 < p.delta <= 1 and p.D % 2 == 0
        assert row.erratum_flag == (row.d == 2 * row.e)


def test_params_from_size_matches_built_code():
    code = build_family_code("linear", 3, 2, 2, 5)
    assert code_params(code, verify=True) == params_from_size(3, 2, 2, 5, len(code))


@pytest.mark.parametrize("x,text", [(2 / 3, "0.667"), (0.0625, "0.063"), (0.5, "0.500"), (1.0, "1.000"), (0.0015, "0.002")])
def test_fmt3_rounds_half_away_from_zero(x, text):
    assert fmt3(x) == text


def test_table_non_erratum_cells_match_published_grid():
    published = table1.cells()
    rows = {(r.e, r.d): r for r in parameter_table(2, 2, 5, 10)}
    assert rows.keys() == published.keys()
    for key, cell in published.items():
        p = rows[key].params
        assert (p.size, p.N, p.l, fmt3(p.lam), fmt3(p.R)) == (cell["size"], cell["N"], cell["l"], cell["lambda"], cell["R"])
        if key not in table1.ERRATUM_CELLS:
            assert (p.D, fmt3(p.delta)) == (cell["D"], cell["delta"])
        else:
            assert p.D == table1.FORMULA_D_AT_ERRATUM[key]


def test_serialization_round_trip():
    code = build_family_code("irr", 2, 2, 2, 3)
    buf = io.StringIO()
    write_code(code, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "2 2 2 3 irr 35"
    assert P(lines[1]) == code.generators[0]
    assert lines[2] == "2 10 3"
    again = read_code(io.StringIO(buf.getvalue()))
    assert again == code
    code3 = build_family_code("linear", 3, 1, 2, 3)
    buf = io.StringIO()
    write_code(code3, buf)
    assert read_code(io.StringIO(buf.getvalue())) == code3


def test_serialization_rejects_mismatched_block():
    code = build_family_code("irr", 2, 2, 1, 1)
    text = io.StringIO()
    write_code(code, text)
    lines = text.getvalue().splitlines()
    lines[1] = "X1"  # generator no longer matches the following subspace block
    with pytest.raises(FormatError):
        read_code(io.StringIO("\n".join(lines)))
    with pytest.raises(FormatError):
        read_code(io.StringIO("2 2 1\n"))
