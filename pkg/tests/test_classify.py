from __future__ import annotations

import itertools
import random
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from dccodes.canon import canonical_form, canonical_labelling
from dccodes.circulant import DccSpec, Family, build
from dccodes.errors import BudgetExceeded, DccError
from dccodes.gf2 import BitMatrix, LinearCode, is_self_dual
from dccodes.classify import (
    SearchConfig,
    enumerate_candidates,
    is_equivalent,
    necklaces,
    search_optimal,
    spot_check,
)

from conftest import brute_distribution, dcc_specs, table_spec


def phi(m: int) -> int:
    return sum(1 for i in range(1, m + 1) if gcd(i, m) == 1)


def burnside(L: int, parity: int | None = None) -> int:
    """Necklace count by Burnside; parity restricts to that weight parity."""
    total = 0
    for g in range(1, L + 1):
        if L % g:
            continue
        cycles, size = g, L // g
        if parity is None:
            fixed = 2**cycles
        elif size % 2 == 0:
            fixed = 2**cycles if parity == 0 else 0
        else:
            fixed = 2 ** (cycles - 1)
        total += phi(size) * fixed
    return total // L


def brute_necklaces(L: int) -> list[int]:
    reps = set()
    for p in range(1 << L):
        s = format(p, f"0{L}b")[::-1]
        best = min(s[i:] + s[:i] for i in range(L))
        reps.add(int(best[::-1], 2))
    return sorted(reps, key=lambda p: format(p, f"0{L}b")[::-1])


@pytest.mark.parametrize("L", range(1, 11))
def test_necklaces_match_brute_force(L):
    got = list(necklaces(L))
    assert got == brute_necklaces(L)


@pytest.mark.parametrize("L", [12, 16, 17, 20])
def test_necklace_counts(L):
    got = list(necklaces(L))
    assert len(got) == burnside(L)
    assert sum(1 for p in got if p.bit_count() % 2) == burnside(L, 1)


def test_candidate_examples():
    assert [str(v) for v in enumerate_candidates(SearchConfig(3, "pure"))] == ["001", "111"]
    assert [str(v) for v in enumerate_candidates(SearchConfig(4, "bordered"))] == ["000", "011"]
    assert sum(1 for _ in enumerate_candidates(SearchConfig(16, "pure"))) == 2048


def test_search_config_gating():
    with pytest.raises(BudgetExceeded):
        SearchConfig(21, "pure")
    SearchConfig(21, "pure", extended=True)
    with pytest.raises(BudgetExceeded):
        SearchConfig(33, "pure", extended=True)
    with pytest.raises(ValueError):
        SearchConfig(1, "pure")


def test_is_equivalent_examples(table3, table4):
    p34 = build(table_spec(3, next(r for r in table3 if r[0] == "P_34,1")[2]))
    b34 = build(table_spec(4, next(r for r in table4 if r[0] == "B_34,1")[2]))
    assert is_equivalent(p34, p34.permuted(list(range(33, -1, -1))))
    assert not is_equivalent(p34, b34)
    p32 = build(table_spec(3, next(r for r in table3 if r[0] == "P_32,1")[2]))
    assert not is_equivalent(p32, p34)


def test_cyclic_shifts_share_canonical_form():
    spec = DccSpec.parse("pure", "1101000011")
    forms = {canonical_form(build(DccSpec(spec.family, spec.n, spec.first_row.rotate_right(s), 0))) for s in range(10)}
    assert len(forms) == 1


def test_length_34_pure_classes_distinct(table3):
    forms = {canonical_form(build(table_spec(3, r[2]))) for r in table3 if r[1] == 34}
    assert len(forms) == 15


def _random_code(rng: random.Random, n: int, k: int) -> LinearCode:
    while True:
        code = LinearCode.span([rng.getrandbits(n) for _ in range(k)], n)
        if code.k == k:
            return code


def brute_equivalent(c1: LinearCode, c2: LinearCode) -> bool:
    if (c1.n, c1.k) != (c2.n, c2.k):
        return False
    words = {c.payload for c in c2.codewords()}
    rows = c1.gen.ints()
    for perm in itertools.permutations(range(c1.n)):
        if all(sum(1 << perm[i] for i in range(c1.n) if r >> i & 1) in words for r in rows):
            return True
    return False


def test_canonical_form_matches_brute_force_equivalence():
    rng = random.Random(7)
    agree = {True: 0, False: 0}
    for _ in range(40):
        a = _random_code(rng, 7, 3)
        if rng.random() < 0.5:
            perm = list(range(7))
            rng.shuffle(perm)
            b = a.permuted(perm)
        else:
            b = _random_code(rng, 7, 3)
        truth = brute_equivalent(a, b)
        assert (canonical_form(a) == canonical_form(b)) == truth
        agree[truth] += 1
    assert agree[True] and agree[False]


def test_canonical_perm_maps_to_form():
    rng = random.Random(3)
    code = _random_code(rng, 12, 6)
    res = canonical_labelling(code)
    moved = code.permuted(list(res.perm))
    assert canonical_form(moved) == res.form


@settings(max_examples=25, deadline=None)
@given(dcc_specs(4, 10), st.randoms(use_true_random=False))
def test_canonical_form_permutation_invariant(spec, rnd):
    code = build(spec)
    perm = list(range(code.n))
    rnd.shuffle(perm)
    assert canonical_form(code) == canonical_form(code.permuted(perm))


def test_canonical_budget():
    code = LinearCode(BitMatrix.from_ints([1 << i for i in range(12)], 12))
    with pytest.raises(BudgetExceeded):
        canonical_form(code, max_leaves=0)


@pytest.mark.parametrize(
    "family,d,triple,count",
    [("pure", 8, (348, 3968, 13888), 2), ("bordered", 8, (300, 4144, 13072), 1)],
)
def test_search_length_32(family, d, triple, count, table3, table4):
    rep = search_optimal(SearchConfig(16, family))
    assert (rep.d, rep.A_triple[0], rep.count) == (d, triple[0], count)
    rows = table3 if family == "pure" else table4
    printed = [r for r in rows if r[1] == 32]
    assert {r[4] for r in printed} == {rep.A_triple}
    which = 3 if family == "pure" else 4
    ours = {canonical_form(build(DccSpec.parse(family, str(v)))) for v in rep.representatives}
    theirs = {canonical_form(build(table_spec(which, r[2]))) for r in printed}
    assert ours == theirs


def test_search_small_lengths():
    for n in range(4, 11):
        for family in ("pure", "bordered"):
            cands = list(enumerate_candidates(SearchConfig(n, family)))
            specs = [DccSpec.parse(family, str(v)) for v in cands]
            non_sd = [build(s) for s in specs if not is_self_dual(build(s))]
            if not non_sd:
                with pytest.raises(DccError):
                    search_optimal(SearchConfig(n, family))
                continue
            rep = search_optimal(SearchConfig(n, family))
            dists = [brute_distribution(c) for c in non_sd]
            d_max = max(w.min_weight() for w in dists)
            best = min(w.counts for w in dists if w.min_weight() == d_max)
            assert rep.d == d_max and rep.distribution.counts == best
            assert rep.count >= 1


def test_spot_check(table3):
    row = next(r for r in table3 if r[0] == "P_32,1")
    sc = spot_check("pure", row[2])
    assert sc.d == 8 and sc.triple == row[4] and sc.even and not sc.self_dual
