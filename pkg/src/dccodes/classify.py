"""Exhaustive search for optimal double circulant even codes that are not self-dual.

Conditions, in order: the code is even, it is not self-dual, its minimum
weight is the largest possible for the family and length, and its weight
distribution is lexicographically smallest among those. Every code meeting
all four is kept, and the result is reduced to equivalence classes.

Candidates are first rows up to cyclic shift (binary necklaces) with the
parity that makes the code even.
"""

from __future__ import annotations

import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import _kernels as K
from .canon import canonical_form
from .circulant import DccSpec, Family, border_bit, build
from .errors import BudgetExceeded, DccError
from .gf2 import BitVector, LinearCode, is_even, is_self_dual
from .gleason import fit, instantiate, solve_parametric
from .wdist import (
    WeightDistribution,
    bounded_distribution,
    default_jobs,
    full_distribution,
    min_weight,
)

EXHAUSTIVE_MAX_LENGTH = 40
DEFAULT_MAX_CANDIDATES = 1 << 24
FULL_DISTRIBUTION_MAX_K = 22
SCREEN_CHUNK = 4096


def is_equivalent(c1: LinearCode, c2: LinearCode) -> bool:
    """True iff a coordinate permutation maps one code onto the other."""
    if (c1.n, c1.k) != (c2.n, c2.k):
        return False
    if c1 == c2:
        return True
    if c1.k <= FULL_DISTRIBUTION_MAX_K:
        if full_distribution(c1) != full_distribution(c2):
            return False
    else:
        d1, d2 = min_weight(c1), min_weight(c2)
        if d1 != d2 or bounded_distribution(c1, d1 + 4) != bounded_distribution(c2, d2 + 4):
            return False
    return canonical_form(c1) == canonical_form(c2)


# --------------------------------------------------------------------------
# candidates


def necklaces(length: int) -> Iterator[int]:
    """Lexicographically smallest rotations of binary strings, in increasing order.

    Yields packed payloads (string position i in bit i). Uses the
    Fredricksen-Kessler-Maiorana construction.
    """
    if length == 0:
        yield 0
        return
    a = [0] * (length + 1)
    t = 1
    # Iterative form of the FKM recursion.
    yield 0
    while True:
        t = length
        while t > 0 and a[t] == 1:
            t -= 1
        if t == 0:
            return
        a[t] = 1
        for i in range(t + 1, length + 1):
            a[i] = a[i - t]
        if length % t == 0:
            payload = 0
            for i in range(1, length + 1):
                if a[i]:
                    payload |= 1 << (i - 1)
            yield payload


def row_length(family: Family, n: int) -> int:
    return n if family is Family.PURE else n - 1


def row_parity(family: Family) -> int:
    """Required first-row weight parity for an even code."""
    return 1 if family is Family.PURE else 0


@dataclass(frozen=True)
class SearchConfig:
    n: int
    family: Family
    worker_count: int = 1
    max_candidates: int = DEFAULT_MAX_CANDIDATES
    extended: bool = False

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if 2 * self.n > 64:
            raise BudgetExceeded("exhaustive search supports lengths up to 64")
        if 2 * self.n > EXHAUSTIVE_MAX_LENGTH and not self.extended:
            raise BudgetExceeded(
                f"exhaustive search beyond length {EXHAUSTIVE_MAX_LENGTH} needs the extended flag"
            )

    @property
    def length(self) -> int:
        return 2 * self.n


def enumerate_candidates(config: SearchConfig) -> Iterator[BitVector]:
    """One first row per cyclic-shift class with the even-code parity, in lex order."""
    L = row_length(config.family, config.n)
    want = row_parity(config.family)
    for p in necklaces(L):
        if p.bit_count() % 2 == want:
            yield BitVector(L, p)


def candidate_array(config: SearchConfig) -> np.ndarray:
    L = row_length(config.family, config.n)
    want = row_parity(config.family)
    out = []
    for p in necklaces(L):
        if p.bit_count() % 2 == want:
            out.append(p)
            if len(out) > config.max_candidates:
                raise BudgetExceeded(f"more than {config.max_candidates} candidates")
    return np.array(out, dtype=np.uint64)


# --------------------------------------------------------------------------
# search


@dataclass(frozen=True)
class ClassificationReport:
    n: int
    family: Family
    d_max: int
    A_triple: tuple[int, int, int]
    count: int
    representatives: tuple[BitVector, ...]
    distribution: WeightDistribution | None = None
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def length(self) -> int:
        return 2 * self.n

    @property
    def d(self) -> int:
        return self.d_max

    @property
    def A_d(self) -> int:
        return self.A_triple[0]


def _screen_chunk(cands: np.ndarray, n: int, bordered: bool, alpha: int) -> tuple[int, np.ndarray, np.ndarray]:
    out_d = np.zeros(cands.shape[0], dtype=np.int64)
    out_sd = np.zeros(cands.shape[0], dtype=np.bool_)
    best = K.dcc_batch_screen(cands, n, bordered, alpha, 0, out_d, out_sd)
    return int(best), out_d, out_sd


def screen(cands: np.ndarray, n: int, family: Family, workers: int = 1) -> tuple[int, np.ndarray]:
    """Largest minimum weight among non-self-dual candidates, and the indices attaining it."""
    bordered = family is Family.BORDERED
    alpha = border_bit(n) if bordered else 0
    chunks = [cands[i : i + SCREEN_CHUNK] for i in range(0, len(cands), SCREEN_CHUNK)] or [cands]
    args = [(c, n, bordered, alpha) for c in chunks]
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_screen_chunk, *zip(*args)))
    else:
        results = [_screen_chunk(*a) for a in args]
    best = max(r[0] for r in results)
    idx = []
    offset = 0
    for chunk, (_, out_d, out_sd) in zip(chunks, results):
        hit = np.flatnonzero((out_d == best) & ~out_sd)
        idx.extend(int(offset + h) for h in hit)
        offset += len(chunk)
    return best, np.array(idx, dtype=np.int64)


def _spec(family: Family, n: int, payload: int) -> DccSpec:
    L = row_length(family, n)
    alpha = border_bit(n) if family is Family.BORDERED else 0
    return DccSpec(family, n, BitVector(L, payload), alpha)


def _full(code: LinearCode, d: int, partial) -> WeightDistribution:
    if code.k <= FULL_DISTRIBUTION_MAX_K:
        return full_distribution(code)
    # Isodual even codes: the three coefficients after A_0 pin the enumerator.
    pwe = solve_parametric(code.n, d)
    known = {0: 1}
    known.update({w: partial[w] for w in range(1, d + 5)})
    return instantiate(pwe, fit(known, pwe))


def search_optimal(config: SearchConfig) -> ClassificationReport:
    t0 = time.perf_counter()
    n, family = config.n, config.family
    cands = candidate_array(config)
    workers = config.worker_count or default_jobs()
    best, idx = screen(cands, n, family, workers)
    if len(idx) == 0:
        raise DccError("no non-self-dual candidate found")
    t1 = time.perf_counter()

    # Raise the cutoff in steps, keeping only the lexicographic minimum each
    # time; counting up to A_d alone is far cheaper than up to A_{d+4}.
    tied = [int(i) for i in idx]
    partials = {}
    for cutoff in (best, best + 2, best + 4):
        for i in tied:
            code = build(_spec(family, n, int(cands[i])))
            partials[i] = bounded_distribution(code, cutoff)
        low = min(partials[i].counts for i in tied)
        tied = [i for i in tied if partials[i].counts == low]
    best_triple = partials[tied[0]].triple(best)
    fulls = {}
    for i in tied:
        code = build(_spec(family, n, int(cands[i])))
        fulls[i] = _full(code, best, partials[i])
    best_wd = min(fulls.values(), key=lambda wd: wd.counts)
    winners = [i for i in tied if fulls[i] == best_wd]
    t2 = time.perf_counter()

    classes: dict[bytes, list[int]] = defaultdict(list)
    for i in winners:
        code = build(_spec(family, n, int(cands[i])))
        if not is_even(code) or is_self_dual(code):
            raise DccError("screening admitted a code violating the search conditions")
        classes[canonical_form(code)].append(i)
    reps = sorted(
        (min((BitVector(row_length(family, n), int(cands[i])) for i in members), key=str) for members in classes.values()),
        key=str,
    )
    t3 = time.perf_counter()
    stats = {
        "candidates": int(len(cands)),
        "at_best_d": int(len(idx)),
        "at_best_distribution": len(winners),
        "screen_s": t1 - t0,
        "distribution_s": t2 - t1,
        "equivalence_s": t3 - t2,
    }
    return ClassificationReport(n, family, best, best_triple, len(classes), tuple(reps), best_wd, stats)


# --------------------------------------------------------------------------
# single-row checks for lengths beyond exhaustive search


@dataclass(frozen=True)
class SpotCheck:
    spec: DccSpec
    d: int
    triple: tuple[int, int, int]
    even: bool
    self_dual: bool


def spot_check(family: Family | str, row: str) -> SpotCheck:
    spec = DccSpec.parse(family, row)
    code = build(spec)
    d = min_weight(code)
    part = bounded_distribution(code, d + 4)
    return SpotCheck(spec, d, part.triple(d), is_even(code), is_self_dual(code))
