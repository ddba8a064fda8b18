"""Canonical forms of binary linear codes under coordinate permutations.

Coordinates are coloured by refinement against the low-weight codewords: a
word's colour is its old colour plus the multiset of colours of its
coordinates, and a coordinate's colour is its old colour plus the multiset
of colours of the words containing it. Labels come from sorting the
signatures, so they do not depend on the input order.

When refinement stalls, the search individualizes each coordinate of the
first non-singleton cell in turn. Every discrete colouring orders the
coordinates, and the certificate of that ordering is the reduced echelon form
of the permuted code. The canonical form is the smallest certificate. Leaves
with equal certificates expose automorphisms, which prune sibling branches
lying in the same orbit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetExceeded
from .gf2 import LinearCode, rref_ints
from .wdist import low_weight_codewords, min_weight

DEFAULT_MAX_LEAVES = 200_000


def incidence(words: list[int], n: int) -> np.ndarray:
    """0/1 matrix with one row per packed codeword."""
    if not words:
        return np.zeros((0, n), dtype=np.uint8)
    nbytes = (n + 7) // 8
    buf = b"".join(w.to_bytes(nbytes, "little") for w in words)
    arr = np.frombuffer(buf, dtype=np.uint8).reshape(len(words), nbytes)
    return np.unpackbits(arr, axis=1, bitorder="little")[:, :n]


def spanning_words(code: LinearCode) -> list[int]:
    """All codewords up to the smallest weight at which they span the code."""
    if code.k == 0:
        return []
    w = min_weight(code)
    while True:
        words = low_weight_codewords(code, w)
        if len(rref_ints(words, code.n)[1]) == code.k:
            return words
        w += 1


def _relabel(sig: np.ndarray) -> np.ndarray:
    _, inv = np.unique(sig, axis=0, return_inverse=True)
    return inv.reshape(-1).astype(np.int64)


@dataclass
class _Structure:
    n: int
    rows: np.ndarray  # word index of each incidence
    cols: np.ndarray  # coordinate index of each incidence
    nwords: int
    word_init: np.ndarray

    def refine(self, ccol: np.ndarray, wcol: np.ndarray | None = None) -> np.ndarray:
        n, m = self.n, self.nwords
        ccol = _relabel(ccol[:, None])
        wcol = self.word_init if wcol is None else wcol
        nc, nw = -1, -1
        while True:
            kc = int(ccol.max()) + 1
            wsig = np.bincount(self.rows * kc + ccol[self.cols], minlength=m * kc).reshape(m, kc)
            wcol = _relabel(np.column_stack([wcol, wsig]))
            kw = int(wcol.max()) + 1
            csig = np.bincount(self.cols * kw + wcol[self.rows], minlength=n * kw).reshape(n, kw)
            ccol = _relabel(np.column_stack([ccol, csig]))
            new_nc, new_nw = int(ccol.max()) + 1, kw
            if new_nc == nc and new_nw == nw:
                return ccol
            nc, nw = new_nc, new_nw


def _structure(code: LinearCode) -> _Structure:
    words = spanning_words(code)
    inc = incidence(words, code.n)
    r, c = np.nonzero(inc)
    weights = inc.sum(axis=1).astype(np.int64)
    return _Structure(code.n, r.astype(np.int64), c.astype(np.int64), len(words), _relabel(weights[:, None]))


def _certificate(rows: list[int], n: int, perm: np.ndarray) -> bytes:
    """Reduced echelon form of the code after moving coordinate i to perm[i]."""
    moved = []
    for r in rows:
        v = 0
        i = 0
        while r:
            if r & 1:
                v |= 1 << int(perm[i])
            r >>= 1
            i += 1
        moved.append(v)
    reduced, _ = rref_ints(moved, n)
    nbytes = (n + 7) // 8
    return n.to_bytes(2, "big") + len(reduced).to_bytes(2, "big") + b"".join(
        x.to_bytes(nbytes, "big") for x in reduced
    )


def _orbits(gens: list[np.ndarray], n: int) -> np.ndarray:
    parent = np.arange(n)

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for i in range(n):
            a, b = find(i), find(int(g[i]))
            if a != b:
                parent[max(a, b)] = min(a, b)
    return np.array([find(i) for i in range(n)])


@dataclass
class _Search:
    st: _Structure
    rows: list[int]
    n: int
    max_leaves: int
    best: bytes | None = None
    best_perm: np.ndarray | None = None
    first: bytes | None = None
    first_perm: np.ndarray | None = None
    autos: list[np.ndarray] = field(default_factory=list)
    leaves: int = 0

    def leaf(self, ccol: np.ndarray) -> None:
        self.leaves += 1
        if self.leaves > self.max_leaves:
            raise BudgetExceeded(f"canonical labelling exceeded {self.max_leaves} leaves")
        cert = _certificate(self.rows, self.n, ccol)
        for ref, ref_perm in ((self.first, self.first_perm), (self.best, self.best_perm)):
            if ref is not None and cert == ref:
                inv = np.empty(self.n, dtype=np.int64)
                inv[ref_perm] = np.arange(self.n)
                self.autos.append(inv[ccol])
                break
        if self.first is None:
            self.first, self.first_perm = cert, ccol.copy()
        if self.best is None or cert < self.best:
            self.best, self.best_perm = cert, ccol.copy()

    def run(self, ccol: np.ndarray, prefix: list[int]) -> None:
        ccol = self.st.refine(ccol)
        counts = np.bincount(ccol)
        if counts.max() == 1:
            self.leaf(ccol)
            return
        target = int(np.flatnonzero(counts > 1)[0])
        cell = np.flatnonzero(ccol == target)
        explored: list[int] = []
        for v in cell:
            v = int(v)
            if explored:
                stab = [g for g in self.autos if all(g[p] == p for p in prefix)]
                if stab:
                    orb = _orbits(stab, self.n)
                    if any(orb[v] == orb[u] for u in explored):
                        continue
            explored.append(v)
            child = 2 * ccol + 1
            child[v] = 2 * ccol[v]
            self.run(child, prefix + [v])


@dataclass(frozen=True)
class CanonicalResult:
    form: bytes
    perm: tuple[int, ...]
    automorphisms: int
    leaves: int


def canonical_labelling(code: LinearCode, *, max_leaves: int = DEFAULT_MAX_LEAVES) -> CanonicalResult:
    n = code.n
    if code.k == 0:
        return CanonicalResult(n.to_bytes(2, "big") + b"\0\0", tuple(range(n)), 0, 0)
    st = _structure(code)
    search = _Search(st, code.gen.ints(), n, max_leaves)
    search.run(np.zeros(n, dtype=np.int64), [])
    return CanonicalResult(search.best, tuple(int(x) for x in search.best_perm), len(search.autos), search.leaves)


def canonical_form(code: LinearCode, *, max_leaves: int = DEFAULT_MAX_LEAVES) -> bytes:
    """Byte string equal for two codes exactly when they are permutation equivalent."""
    return canonical_labelling(code, max_leaves=max_leaves).form
