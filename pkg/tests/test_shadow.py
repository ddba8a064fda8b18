from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dccodes.errors import InfeasibleError
from dccodes.gf2 import BitMatrix, LinearCode, dual_code, is_self_dual
from dccodes.gleason import UnivariatePoly, fit, instantiate, solve_parametric
from dccodes.shadow import bound_beta_54, bound_parameter, derive_families, shadow_transform

from conftest import brute_distribution


def expr_is(e, const, **coeffs):
    return e.constant == const and all(e.coeff(k) == v for k, v in coeffs.items()) and set(e.params) <= set(coeffs)


def brute_shadow(code: LinearCode) -> list[int]:
    """S = C0^perp minus C, with C0 the doubly even subcode."""
    words = [c for c in code.codewords() if c.weight() % 4 == 0]
    c0 = LinearCode.span(words, code.n)
    counts = [0] * (code.n + 1)
    for v in dual_code(c0).codewords():
        if not code.contains(v):
            counts[v.weight()] += 1
    return counts


def i2_sum(k: int) -> LinearCode:
    return LinearCode(BitMatrix.from_ints([0b11 << (2 * i) for i in range(k)], 2 * k))


def with_hamming(code: LinearCode) -> LinearCode:
    h8 = [0b00001111, 0b00111100, 0b11110000, 0b01010101]
    n = code.n
    rows = code.gen.ints() + [r << n for r in h8]
    return LinearCode(BitMatrix.from_ints(rows, n + 8))


def poly_of(code: LinearCode) -> UnivariatePoly:
    return UnivariatePoly(brute_distribution(code).counts)


def test_length_two_example():
    assert shadow_transform(UnivariatePoly((1, 0, 1)), 2) == UnivariatePoly((0, 2))
    assert brute_shadow(i2_sum(1)) == [0, 2, 0]


@pytest.mark.parametrize("code", [i2_sum(1), i2_sum(3), i2_sum(5), with_hamming(i2_sum(1)), with_hamming(i2_sum(3))])
def test_shadow_matches_definition(code):
    assert is_self_dual(code)
    s = shadow_transform(poly_of(code), code.n)
    assert [s[w] for w in range(code.n + 1)] == brute_shadow(code)


def test_doubly_even_input_rejected():
    with pytest.raises(InfeasibleError):
        shadow_transform(UnivariatePoly.from_terms({0: 1, 4: 14, 8: 1}), 8)


def test_not_in_span_rejected():
    with pytest.raises(InfeasibleError):
        shadow_transform(UnivariatePoly.from_terms({0: 1, 2: 1}), 6)


def test_length_54_families():
    fams = derive_families(54, 10)
    assert len(fams) == 2
    w1, w2 = fams
    assert w1.free_params == w2.free_params == ("β",)
    assert expr_is(w1.code(10), 351, β=-8) and expr_is(w1.code(12), 5031, β=24)
    assert expr_is(w1.shadow(7), 0, β=1) and expr_is(w1.shadow(11), 2808, β=-10)
    assert w1.shadow(3).constant == 0 and w1.shadow(3).is_constant()
    assert expr_is(w2.code(10), 351, β=-8) and expr_is(w2.code(12), 5543, β=24)
    assert expr_is(w2.shadow(3), 1) and expr_is(w2.shadow(7), -12, β=1)
    assert expr_is(w2.shadow(11), 2874, β=-10)
    assert w1.param_range == (0, 43) and w2.param_range == (12, 43)


def test_length_54_bounds():
    w1, w2 = derive_families(54, 10)
    assert bound_beta_54(w1, 27) == [41, 42, 43]
    assert bound_beta_54(w2, 27) == []
    assert bound_beta_54(w2, 2**30) == list(range(12, 41))
    assert bound_beta_54(w1, 0) == bound_beta_54(w2, 0) == []


def test_length_54_d12_is_empty():
    assert derive_families(54, 12) == []


def test_length_112_families():
    w1, w2, w3 = derive_families(112, 20)
    assert w1.free_params == ("a",) and w2.free_params == w3.free_params == ("a", "b")
    for w in (w1, w2, w3):
        assert expr_is(w.code(20), 157388, a=16)
    assert expr_is(w1.code(22), 3125056, a=-64) and expr_is(w1.code(24), 52740406, a=-160)
    assert expr_is(w1.shadow(4), 1) and expr_is(w1.shadow(16), -2002, a=1)
    assert expr_is(w1.shadow(20), 428099, a=-20)
    assert expr_is(w2.code(22), 3431232, a=-64, b=1024) and expr_is(w2.code(24), 48040246, a=-160, b=-10240)
    assert expr_is(w2.shadow(8), 1) and expr_is(w2.shadow(12), -24, b=-1)
    assert expr_is(w2.shadow(16), 276, a=1, b=22) and expr_is(w2.shadow(20), 394680, a=-20, b=-231)
    assert expr_is(w3.code(22), 3431232, a=-64, b=1024) and expr_is(w3.code(24), 47974710, a=-160, b=-10240)
    assert expr_is(w3.shadow(12), 0, b=-1) and expr_is(w3.shadow(16), 0, a=1, b=22)
    assert expr_is(w3.shadow(20), 396704, a=-20, b=-231)


@pytest.mark.parametrize("n,d", [(54, 10), (112, 20), (88, 16)])
def test_shadow_weights_and_sums(n, d):
    for fam in derive_families(n, d):
        for w, e in enumerate(fam.shadow_exprs):
            if (w - n // 2) % 4:
                assert e.is_constant() and e.constant == 0
        total = sum((e for e in fam.shadow_exprs), start=type(fam.shadow_exprs[0])())
        assert total.is_constant() and total.constant == 2 ** (n // 2)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 43))
def test_length_54_instances_are_integral(beta):
    for fam in derive_families(54, 10):
        if fam.values and beta in fam.values:
            wd = instantiate(fam.code_we, {"β": beta})
            s = [e.evaluate({"β": beta}) for e in fam.shadow_exprs]
            assert all(x.denominator == 1 and x >= 0 for x in s)
            assert sum(s) == 2**27 == wd.total()
            assert all(x == 0 for w, x in enumerate(s) if (w - 27) % 4)


def test_length_88_singly_even_code_fits():
    known = {0: 1, 16: 18436, 18: 268928, 20: 3493248, 24: 267717065}
    fams = derive_families(88, 16)
    hits = []
    for fam in fams:
        try:
            vals = fit(known, fam.code_we)
        except Exception:
            continue
        shadow = [e.evaluate(vals) for e in fam.shadow_exprs]
        assert all(x >= 0 and x.denominator == 1 for x in shadow)
        instantiate(fam.code_we, vals)
        hits.append(fam.label)
    assert hits == [2]


def test_bound_parameter_requires_one_parameter():
    w1, w2, w3 = derive_families(112, 20)
    with pytest.raises(ValueError):
        bound_parameter(w2, 10)
    assert bound_parameter(w1, 10**9)[0] == 2002
