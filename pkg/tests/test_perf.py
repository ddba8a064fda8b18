from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

import pytest

from dccodes.circulant import DccSpec, build
from dccodes.errors import DccError, ReferenceIncomplete
from dccodes.gleason import instantiate, solve_parametric
from dccodes.perf import (
    BddChannel,
    Interval,
    Outcome,
    Verdict,
    bdd_error_probability,
    lex_compare,
    load_table2,
    render_probability,
    theorem1_report,
)
from dccodes.wdist import PartialWeightDistribution, WeightDistribution, bounded_distribution, full_distribution

from conftest import table_spec

THEOREM1 = {32, 36, 38, 40, 46, 52, 56, 60, 62, 64, 66, 68}


def b32():
    return full_distribution(build(DccSpec.parse("bordered", "100101010001111")))


def test_lex_examples(table3):
    sd = instantiate(solve_parametric(32, 8), {"a": 364})
    v = lex_compare(b32(), sd)
    assert v.outcome is Outcome.FIRST_BETTER and v.split_index == 8
    assert lex_compare(sd, b32()).outcome is Outcome.SECOND_BETTER
    assert lex_compare(sd, sd).outcome is Outcome.EQUAL and lex_compare(sd, sd).split_index is None
    p50 = next(r for r in table3 if r[0] == "P_50")
    left = bounded_distribution(build(table_spec(3, p50[2])), 10)
    ref = PartialWeightDistribution(50, 10, (1,) + (0,) * 9 + (196,))
    v = lex_compare(left, ref)
    assert v.outcome is Outcome.SECOND_BETTER and v.split_index == 10


def test_lex_needs_decisive_prefix():
    a = PartialWeightDistribution(8, 4, (1, 0, 0, 0, 14))
    with pytest.raises(DccError):
        lex_compare(a, a)
    with pytest.raises(ValueError):
        lex_compare(a, PartialWeightDistribution(10, 4, (1, 0, 0, 0, 14)))


def test_lex_is_total_preorder(table3):
    wds = [instantiate(solve_parametric(32, 8), {"a": a}) for a in (300, 348, 364, 400)] + [b32()]
    for x, y in itertools.permutations(wds, 2):
        fwd, back = lex_compare(x, y).outcome, lex_compare(y, x).outcome
        assert {fwd, back} in ({Outcome.FIRST_BETTER, Outcome.SECOND_BETTER}, {Outcome.EQUAL})
    for x, y, z in itertools.permutations(wds, 3):
        if lex_compare(x, y).outcome is Outcome.FIRST_BETTER and lex_compare(y, z).outcome is Outcome.FIRST_BETTER:
            assert lex_compare(x, z).outcome is Outcome.FIRST_BETTER


def test_bdd_trivial_cases():
    zero = WeightDistribution(6, (1, 0, 0, 0, 0, 0, 0))
    assert bdd_error_probability(zero, BddChannel(Fraction(1, 10), 1)) == 0
    wd = full_distribution(build(DccSpec.parse("pure", "1110")))
    p = Fraction(1, 100)
    undetected = sum(wd[w] * p**w * (1 - p) ** (8 - w) for w in range(1, 9))
    assert bdd_error_probability(wd, BddChannel(p, 0)) == undetected
    full = WeightDistribution(7, tuple(comb(7, i) for i in range(8)))
    assert bdd_error_probability(full, BddChannel(p, 0)) == 1 - (1 - p) ** 7


def test_bdd_matches_exhaustive_errors():
    code = build(DccSpec.parse("pure", "1110"))
    wd = full_distribution(code)
    d = wd.min_weight()
    ch = BddChannel.for_distance(0.01, d)
    assert ch.p == Fraction(1, 100)
    words = [c.payload for c in code.codewords() if c.payload]
    p = ch.p
    brute = Fraction(0)
    for e in range(1 << 8):
        if any((e ^ c).bit_count() <= ch.t for c in words):
            w = e.bit_count()
            brute += p**w * (1 - p) ** (8 - w)
    assert bdd_error_probability(wd, ch) == brute


def test_bdd_monotone_in_p():
    wd = b32()
    ps = [Fraction(1, 10**k) for k in (5, 4, 3, 2)] + [Fraction(1, 5)]
    vals = [bdd_error_probability(wd, BddChannel.for_distance(p, 8)) for p in sorted(ps)]
    assert vals == sorted(vals) and len(set(vals)) == len(vals)


def test_bdd_rejects_large_radius():
    with pytest.raises(ValueError):
        bdd_error_probability(b32(), BddChannel(Fraction(1, 100), 4))
    with pytest.raises(ValueError):
        BddChannel(Fraction(1, 2), 1)


def test_flow_order_agrees_with_bdd(table3, table4):
    """Among shipped table codes of equal length and d, lexicographic order predicts P_e at p = 1/1000."""
    groups: dict[tuple[int, int], list[WeightDistribution]] = {}
    for which, rows in ((3, table3), (4, table4)):
        for name, L, row, d, _ in rows:
            if L <= 36:
                groups.setdefault((L, d), []).append(full_distribution(build(table_spec(which, row))))
    sd = {32: 364, 36: 225}
    for L, a in sd.items():
        groups[(L, 8)].append(instantiate(solve_parametric(L, 8), {"a": a}))
    checked = 0
    for (L, d), wds in groups.items():
        ch = BddChannel.for_distance(Fraction(1, 1000), d)
        probs = [bdd_error_probability(w, ch) for w in wds]
        for i, j in itertools.permutations(range(len(wds)), 2):
            if lex_compare(wds[i], wds[j]).outcome is Outcome.FIRST_BETTER:
                assert probs[i] < probs[j]
                checked += 1
    assert checked > 10


def test_render_probability():
    assert render_probability(Fraction(1, 3)) == "0.333333333333333"
    assert render_probability(Fraction(1, 8)) == "0.125"


def test_table2_loader():
    t = load_table2()
    assert sorted(t) == list(range(32, 74, 2))
    assert t[54].reference.A_SD == Interval(7, 135)
    assert t[54].reference.citation_key == "BO, C-S"
    assert t[34].reference.A_SD is None and t[34].reference.d_SD == Interval(6, 6)
    assert t[72].reference.d_SD == Interval(12, 16)
    assert (t[70].bordered.d, t[70].bordered.A_d) == (14, 12172)
    with pytest.raises(ValueError):
        Interval(3, 2)


def test_theorem1_verdicts():
    t = load_table2()
    better, worse, larger = set(), set(), set()
    for L, row in t.items():
        try:
            res = theorem1_report([row.pure, row.bordered], row.reference)
        except ReferenceIncomplete:
            assert L in (70, 72)
            continue
        {Verdict.BETTER: better, Verdict.NOT_BETTER: worse, Verdict.LARGER_D: larger}.get(res.verdict, set()).add(L)
    assert better == THEOREM1
    assert 50 in worse and 48 in worse
    assert larger == {34, 42, 44, 58}
    res = theorem1_report([t[38].pure, t[38].bordered], t[38].reference)
    assert res.A_d == 72 and res.verdict is Verdict.BETTER
    res = theorem1_report([t[54].pure, t[54].bordered], t[54].reference)
    assert res.verdict is Verdict.CONDITIONAL
