from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from dccodes.circulant import build
from dccodes.errors import InfeasibleError, NegativeCoefficientError, NotInFamilyError
from dccodes.gleason import (
    AffineExpr,
    GleasonBasis,
    UnivariatePoly,
    doubly_even_extremal,
    expand_doubly_even_basis,
    expand_fsd_basis,
    family_total,
    fit,
    instantiate,
    solve_parametric,
)
from dccodes.wdist import WeightDistribution, full_distribution

from conftest import DATA, table_spec


def table1():
    for line in (DATA / "table1.tsv").read_text().splitlines():
        L, d, *cells = line.split("\t")
        yield int(L), int(d), cells


def test_basis_examples():
    assert expand_fsd_basis(1, 0) == UnivariatePoly((1, 0, 1))
    assert expand_fsd_basis(1, 0).degree == 2
    assert expand_fsd_basis(4, 1) == UnivariatePoly((0, 0, 1, 0, -2, 0, 1))
    g = expand_fsd_basis(16, 0)
    assert all(g[2 * i] == comb(16, i) for i in range(17))
    with pytest.raises(ValueError):
        expand_fsd_basis(4, 2)


@given(st.integers(1, 30).flatmap(lambda m: st.tuples(st.just(m), st.integers(0, m // 4))))
def test_fsd_basis_palindromic_up_to_sign(args):
    m, j = args
    g = expand_fsd_basis(m, j)
    rev = [g[2 * m - i] for i in range(2 * m + 1)]
    # (1+y^2) and y^2(1-y^2)^2 are both self-reciprocal at their degrees.
    assert [g[i] for i in range(2 * m + 1)] == rev


def test_doubly_even_basis():
    assert expand_doubly_even_basis(8, 0) == UnivariatePoly.from_terms({0: 1, 4: 14, 8: 1})
    assert expand_doubly_even_basis(24, 1) == UnivariatePoly.from_terms({4: 1, 8: -4, 12: 6, 16: -4, 20: 1})


@pytest.mark.parametrize("L,d,cells", list(table1()))
def test_table1_rows(L, d, cells):
    pwe = solve_parametric(L, d)
    assert pwe.render_row()[:2] == ["1", "a"]
    assert pwe.render_row()[2:] == cells


def test_table1_structure():
    counts = {}
    for L, d, _ in table1():
        counts.setdefault(len(solve_parametric(L, d).free_params), []).append((L, d))
    assert counts[1] == [(32, 8), (34, 8), (36, 8), (38, 8), (42, 10), (44, 10), (46, 10)]
    assert len(counts[2]) == 9 and len(counts[3]) == 5


def test_small_family_by_hand():
    # Length 4: only (1+y^2)^2 exists (m = 2 < 4), so d = 2 leaves nothing free.
    pwe = solve_parametric(4, 2)
    assert pwe.free_params == ()
    assert instantiate(pwe).counts == (1, 0, 2, 0, 1)
    # Length 8: W = (1+y^2)^4 + a_1 y^2 (1-y^2)^2 with A_2 = 4 + a_1, so a_1 = a - 4.
    pwe8 = solve_parametric(8, 2)
    assert pwe8.free_params == ("a",)
    for a in range(0, 5):
        direct = expand_fsd_basis(4, 0) + expand_fsd_basis(4, 1).scale(a - 4)
        assert [e.evaluate({"a": a}) for e in pwe8.coeff_exprs] == [direct[w] for w in range(9)]


def test_infeasible_designs():
    with pytest.raises(InfeasibleError):
        solve_parametric(4, 4)
    with pytest.raises(InfeasibleError):
        solve_parametric(32, 7)
    with pytest.raises(InfeasibleError):
        solve_parametric(12, 4, GleasonBasis.DOUBLY_EVEN)


def test_instantiate_examples(table3):
    pwe = solve_parametric(32, 8)
    sd = instantiate(pwe, {"a": 364})
    assert sd[10] == 4960 - 8 * 364 == 2048
    assert sd[12] == -3472 + 28 * 364
    p32 = next(r for r in table3 if r[0] == "P_32,1")
    assert instantiate(pwe, {"a": 348}) == full_distribution(build(table_spec(3, p32[2])))
    with pytest.raises(NegativeCoefficientError):
        instantiate(pwe, {"a": 700})


def test_fit_examples(table3):
    p40 = next(r for r in table3 if r[0] == "P_40")
    wd = full_distribution(build(table_spec(3, p40[2])))
    pwe = solve_parametric(40, 8)
    vals = fit(wd, pwe)
    assert vals == {"a": 25, "b": 2180}
    assert instantiate(pwe, vals) == wd
    assert fit({8: 25, 10: 2080, 12: 10360}, pwe) == vals

    ext = doubly_even_extremal(88)
    assert fit(ext, solve_parametric(88, 16, GleasonBasis.DOUBLY_EVEN)) == {}

    odd = WeightDistribution.from_mapping(32, {0: 1, 3: 1})
    with pytest.raises(NotInFamilyError):
        fit(odd, pwe)


def test_fit_underdetermined():
    with pytest.raises(NotInFamilyError):
        fit({8: 25}, solve_parametric(40, 8))


@pytest.mark.parametrize("L,d", [(L, d) for L, d, _ in table1()])
def test_family_totals_are_constant(L, d):
    total = family_total(solve_parametric(L, d))
    assert total.is_constant() and total.constant == 2 ** (L // 2)


def test_doubly_even_examples():
    e88 = doubly_even_extremal(88)
    assert (e88[16], e88[20], e88[24]) == (32164, 6992832, 535731625)
    e112 = doubly_even_extremal(112)
    assert (e112[20], e112[24], e112[28]) == (355740, 95307030, 10847290300)
    assert doubly_even_extremal(8).sparse() == "0:1 4:14 8:1"
    assert doubly_even_extremal(24).sparse() == "0:1 8:759 12:2576 16:759 24:1"
    assert e112.total() == 2**56


def test_affine_rendering():
    a, b = AffineExpr.param("a"), AffineExpr.param("b")
    assert (4960 - 8 * a).render() == "4960-8a"
    assert (-4 * a + b).render(["a", "b"]) == "-4a+b"
    assert AffineExpr.const(1).render() == "1"
    assert AffineExpr.const(0).render() == "0"
    assert (a * Fraction(1, 2)).render() == "1/2a"
    assert (a - a).is_constant()
