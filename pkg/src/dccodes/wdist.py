"""Exact weight distributions of binary linear codes."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Iterable, Mapping

import numpy as np

from . import _kernels as K
from .errors import BudgetExceeded, DccError
from .gf2 import LinearCode

DEFAULT_MAX_K = 36
DEFAULT_MAX_STEPS = 1 << 36


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("DCCODES_JOBS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class WeightDistribution:
    n: int
    counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if len(counts) < self.n + 1:
            counts = counts + (0,) * (self.n + 1 - len(counts))
        if len(counts) != self.n + 1:
            raise ValueError(f"need {self.n + 1} counts, got {len(counts)}")
        if any(c < 0 for c in counts):
            raise ValueError("counts must be nonnegative")
        object.__setattr__(self, "counts", counts)

    @classmethod
    def from_mapping(cls, n: int, counts: Mapping[int, int]) -> WeightDistribution:
        vals = [0] * (n + 1)
        for w, c in counts.items():
            vals[int(w)] = int(c)
        return cls(n, tuple(vals))

    @classmethod
    def parse_sparse(cls, text: str, n: int | None = None) -> WeightDistribution:
        """Parse ``"0:1 8:348 10:2176 ..."``; ``n`` defaults to the largest weight."""
        pairs = {}
        for tok in text.replace(",", " ").split():
            w, c = tok.split(":")
            pairs[int(w)] = int(c)
        if n is None:
            n = max(pairs)
        return cls.from_mapping(n, pairs)

    def __getitem__(self, i: int) -> int:
        return self.counts[i] if 0 <= i <= self.n else 0

    def __iter__(self):
        return iter(self.counts)

    def total(self) -> int:
        return sum(self.counts)

    def min_weight(self) -> int | None:
        return next((i for i in range(1, self.n + 1) if self.counts[i]), None)

    def triple(self, d: int | None = None) -> tuple[int, int, int]:
        if d is None:
            d = self.min_weight()
        return self[d], self[d + 2], self[d + 4]

    def is_even(self) -> bool:
        return all(c == 0 for c in self.counts[1::2])

    def sparse(self) -> str:
        return " ".join(f"{i}:{c}" for i, c in enumerate(self.counts) if c)


@dataclass(frozen=True)
class PartialWeightDistribution:
    n: int
    cutoff: int
    counts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if len(self.counts) != self.cutoff + 1:
            raise ValueError("counts must cover 0..cutoff")

    def __getitem__(self, i: int) -> int:
        if i > self.cutoff:
            raise KeyError(f"weight {i} is beyond the cutoff {self.cutoff}")
        return self.counts[i] if i >= 0 else 0

    def min_weight(self) -> int | None:
        return next((i for i in range(1, self.cutoff + 1) if self.counts[i]), None)

    def triple(self, d: int | None = None) -> tuple[int, int, int]:
        if d is None:
            d = self.min_weight()
        return self[d], self[d + 2], self[d + 4]

    def sparse(self) -> str:
        return " ".join(f"{i}:{c}" for i, c in enumerate(self.counts) if c)

    def agrees_with(self, full: WeightDistribution) -> bool:
        return all(self.counts[i] == full[i] for i in range(self.cutoff + 1))


def pack_rows(rows: Iterable[int], n: int) -> np.ndarray:
    rows = list(rows)
    words = max(1, (n + 63) // 64)
    out = np.zeros((len(rows), words), dtype=np.uint64)
    mask = (1 << 64) - 1
    for i, r in enumerate(rows):
        for w in range(words):
            out[i, w] = (r >> (64 * w)) & mask
    return out


def unpack_rows(arr: np.ndarray) -> list[int]:
    out = []
    for row in arr:
        v = 0
        for w, word in enumerate(row):
            v |= int(word) << (64 * w)
        out.append(v)
    return out


@dataclass(frozen=True)
class _InfoSets:
    """Two information sets of a code.

    ``rows1`` is systematic on the pivot columns ``A``; ``rows2`` (if any) is
    systematic on a second set made of as many columns outside ``A`` as
    possible plus ``overlap`` columns of ``A``. ``mask`` marks ``A``.
    """

    rows1: np.ndarray
    rows2: np.ndarray | None
    overlap: int
    mask: np.ndarray

    @property
    def split(self) -> bool:
        return self.rows2 is not None


def _second_information_set(code: LinearCode, first: list[int]) -> list[int] | None:
    fs = set(first)
    outside = [c for c in range(code.n) if c not in fs]
    # Greedily take independent columns, outside ones first.
    chosen: list[int] = []
    basis: dict[int, int] = {}
    cols = code.gen.transpose().ints()
    for c in outside + first:
        v = cols[c]
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                chosen.append(c)
                break
            v ^= basis[top]
        if len(chosen) == code.k:
            break
    if all(c in fs for c in chosen):
        return None
    return sorted(chosen)


def _info_sets(code: LinearCode) -> _InfoSets:
    a = code.information_set()
    rows1 = code.systematic(a)
    mask = pack_rows([sum(1 << c for c in a)], code.n)[0]
    rows2 = None
    overlap = code.k
    if code.k > 0:
        b = _second_information_set(code, a)
        if b is not None:
            r2 = code.systematic(b)
            overlap = len(set(a) & set(b))
            if overlap < code.k:
                rows2 = pack_rows(r2, code.n)
    return _InfoSets(pack_rows(rows1, code.n), rows2, overlap, mask)


def _second_depth(w_max: int, depth1: int, overlap: int, k: int) -> int:
    """Message depth on the second set that reaches every codeword missed by pass 1.

    A missed codeword of weight <= w_max has a > depth1 ones on the first set,
    hence at most (w_max - a) + min(a, overlap) ones on the second.
    """
    worst = -1
    for a in range(depth1 + 1, min(w_max, k) + 1):
        worst = max(worst, w_max - a + min(a, overlap))
    return min(worst, k)


def _plan(code: LinearCode, sets: _InfoSets, w_max: int) -> tuple[int, int, int]:
    """Pass depths (depth1, depth2) minimizing visited messages, and that count."""
    k = code.k
    best = (subset_count(k, w_max), min(w_max, k), -1)
    if sets.split:
        for d1 in range(min(w_max, k) + 1):
            d2 = _second_depth(w_max, d1, sets.overlap, k)
            cost = subset_count(k, d1) + (subset_count(k, d2) if d2 > 0 else 0)
            if cost < best[0]:
                best = (cost, d1, d2)
    return best[1], best[2], best[0]


def _gray_job(rows: np.ndarray, hbits: int, lo: int, hi: int, n: int) -> np.ndarray:
    counts = np.zeros(n + 1, dtype=np.int64)
    K.gray_counts(rows, hbits, lo, hi, counts)
    return counts


def _subset_job(
    rows: np.ndarray, depth: int, wmax: int, mask: np.ndarray, thr: int, firsts: np.ndarray, n: int
) -> np.ndarray:
    counts = np.zeros(n + 1, dtype=np.int64)
    K.subset_counts(rows, depth, wmax, mask, thr, firsts, counts)
    return counts


def _run(jobs: list[tuple], fn, workers: int, n: int) -> list[int]:
    total = np.zeros(n + 1, dtype=object)
    if workers <= 1 or len(jobs) <= 1:
        results = [fn(*j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(fn, *zip(*jobs)))
    for r in results:
        total += r.astype(object)
    return [int(x) for x in total]


def full_distribution(
    code: LinearCode, *, jobs: int | None = None, max_k: int = DEFAULT_MAX_K, chunks: int | None = None
) -> WeightDistribution:
    """All 2^k codewords, walked in Gray order and split into sub-ranges."""
    n, k = code.n, code.k
    if k > max_k:
        raise BudgetExceeded(f"k = {k} exceeds the enumeration budget k <= {max_k}")
    if k == 0:
        return WeightDistribution(n, (1,) + (0,) * n)
    workers = jobs or default_jobs()
    rows = _info_sets(code).rows1
    want = chunks if chunks is not None else (4 * workers if workers > 1 else 1)
    hbits = min(k, max(0, (want - 1).bit_length()))
    nchunks = 1 << hbits
    per = -(-nchunks // max(1, min(want, nchunks)))
    jobs_list = [(rows, hbits, lo, min(lo + per, nchunks), n) for lo in range(0, nchunks, per)]
    return WeightDistribution(n, tuple(_run(jobs_list, _gray_job, workers, n)))


def subset_count(k: int, depth: int) -> int:
    return sum(comb(k, i) for i in range(min(depth, k) + 1))


def bounded_work(code: LinearCode, w_max: int) -> int:
    """Number of messages ``bounded_distribution`` would visit."""
    return _plan(code, _info_sets(code), min(w_max, code.n))[2]


def bounded_distribution(
    code: LinearCode,
    w_max: int,
    *,
    jobs: int | None = None,
    split: bool = True,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> PartialWeightDistribution:
    """Exact A_0..A_{w_max}.

    A codeword of weight w comes from a message of weight <= w on any
    information set. A second information set, overlapping the first in as
    few columns as possible, lets each pass stop at roughly w_max/2: pass 1
    walks shallow messages on the first set, pass 2 walks the second set and
    keeps only codewords pass 1 could not have produced. With ``split=False``
    all messages of weight <= w_max are walked on the first set.
    """
    n, k = code.n, code.k
    if w_max < 0:
        raise ValueError("w_max must be nonnegative")
    w_max = min(w_max, n)
    counts = [0] * (w_max + 1)
    counts[0] = 1
    if k == 0 or w_max == 0:
        return PartialWeightDistribution(n, w_max, tuple(counts))
    sets = _info_sets(code)
    if split:
        d1, d2, steps = _plan(code, sets, w_max)
    else:
        d1, d2, steps = min(w_max, k), -1, subset_count(k, w_max)
    if steps > max_steps:
        raise BudgetExceeded(f"bounded enumeration needs {steps} steps (> {max_steps})")
    workers = jobs or default_jobs()
    passes = [(sets.rows1, d1, -1)]
    if d2 > 0:
        passes.append((sets.rows2, d2, d1))
    jobs_list = []
    for rows, depth, thr in passes:
        if depth <= 0:
            continue
        for j in range(workers):
            firsts = np.arange(j, k, workers, dtype=np.int64)
            if firsts.size:
                jobs_list.append((rows, depth, w_max, sets.mask, thr, firsts, n))
    total = _run(jobs_list, _subset_job, workers, n) if jobs_list else [0] * (n + 1)
    for i in range(1, w_max + 1):
        counts[i] += total[i]
    return PartialWeightDistribution(n, w_max, tuple(counts))


def min_weight(code: LinearCode) -> int:
    if code.k == 0:
        raise DccError("the zero code has no minimum weight")
    sets = _info_sets(code)
    r2 = sets.rows2 if sets.split else sets.rows1
    return int(K.min_weight_levels(sets.rows1, r2, sets.split, sets.overlap, 0, code.n))


def low_weight_codewords(code: LinearCode, w_max: int) -> list[int]:
    """Payloads of all nonzero codewords of weight <= w_max (sorted)."""
    n, k = code.n, code.k
    if k == 0 or w_max <= 0:
        return []
    part = bounded_distribution(code, w_max)
    total = sum(part.counts[1:])
    sets = _info_sets(code)
    d1, d2, _ = _plan(code, sets, min(w_max, n))
    out = np.zeros((max(total, 1), sets.rows1.shape[1]), dtype=np.uint64)
    pos = K.subset_collect(sets.rows1, d1, w_max, sets.mask, -1, out, 0)
    if d2 > 0:
        pos = K.subset_collect(sets.rows2, d2, w_max, sets.mask, d1, out, pos)
    if pos != total:
        raise RuntimeError("codeword collection disagrees with the count")
    return sorted(unpack_rows(out[:pos]))


def krawtchouk(j: int, i: int, n: int) -> int:
    return sum((-1) ** s * comb(i, s) * comb(n - i, j - s) for s in range(j + 1))


def macwilliams_transform(wd: WeightDistribution, k: int) -> WeightDistribution:
    n = wd.n
    size = 1 << k
    if wd.total() != size:
        raise DccError(f"distribution sums to {wd.total()}, not 2^{k}")
    out = []
    for j in range(n + 1):
        s = sum(a * krawtchouk(j, i, n) for i, a in enumerate(wd.counts) if a)
        q, r = divmod(s, size)
        if r or q < 0:
            raise DccError(f"dual count at weight {j} is {s}/{size}: not a valid distribution")
        out.append(q)
    return WeightDistribution(n, tuple(out))


def is_formally_self_dual(code: LinearCode, wd: WeightDistribution | None = None) -> bool:
    if code.n != 2 * code.k:
        raise DccError(f"formal self-duality needs n = 2k, got [{code.n},{code.k}]")
    if wd is None:
        wd = full_distribution(code)
    return macwilliams_transform(wd, code.k) == wd
