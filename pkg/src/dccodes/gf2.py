"""Bit-packed GF(2) vectors, matrices and binary linear codes.

Vectors are stored as Python ints: coordinate ``i`` (0-based, leftmost in the
string form) lives in bit ``i`` of the payload. The string form is what the
outside world sees, so the packing order never leaks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np


def _mask(length: int) -> int:
    return (1 << length) - 1


@dataclass(frozen=True)
class BitVector:
    length: int
    payload: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("length must be nonnegative")
        if self.payload < 0 or self.payload >> self.length:
            raise ValueError("payload has bits beyond length")

    @classmethod
    def from_str(cls, s: str) -> BitVector:
        """Parse ``'0110'`` (parentheses and whitespace are ignored)."""
        s = "".join(ch for ch in s if ch not in "() \t\n")
        if any(ch not in "01" for ch in s):
            raise ValueError(f"not a binary string: {s!r}")
        payload = 0
        for i, ch in enumerate(s):
            if ch == "1":
                payload |= 1 << i
        return cls(len(s), payload)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> BitVector:
        bits = list(bits)
        payload = 0
        for i, b in enumerate(bits):
            if b & 1:
                payload |= 1 << i
        return cls(len(bits), payload)

    @classmethod
    def zeros(cls, length: int) -> BitVector:
        return cls(length, 0)

    @classmethod
    def ones(cls, length: int) -> BitVector:
        return cls(length, _mask(length))

    @classmethod
    def unit(cls, length: int, i: int) -> BitVector:
        return cls(length, 1 << i)

    def __str__(self) -> str:
        return "".join("1" if (self.payload >> i) & 1 else "0" for i in range(self.length))

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if not -self.length <= i < self.length:
            raise IndexError(i)
        return (self.payload >> (i % self.length)) & 1

    def __iter__(self) -> Iterator[int]:
        for i in range(self.length):
            yield (self.payload >> i) & 1

    def _check(self, other: BitVector) -> None:
        if self.length != other.length:
            raise ValueError(f"length mismatch: {self.length} vs {other.length}")

    def __xor__(self, other: BitVector) -> BitVector:
        self._check(other)
        return BitVector(self.length, self.payload ^ other.payload)

    __add__ = __xor__

    def __and__(self, other: BitVector) -> BitVector:
        self._check(other)
        return BitVector(self.length, self.payload & other.payload)

    def __or__(self, other: BitVector) -> BitVector:
        self._check(other)
        return BitVector(self.length, self.payload | other.payload)

    def dot(self, other: BitVector) -> int:
        self._check(other)
        return (self.payload & other.payload).bit_count() & 1

    def weight(self) -> int:
        return self.payload.bit_count()

    def support(self) -> list[int]:
        return [i for i in range(self.length) if (self.payload >> i) & 1]

    def rotate_right(self, s: int = 1) -> BitVector:
        """Cyclic shift moving the entry at position ``i`` to ``i + s``."""
        n = self.length
        if n == 0:
            return self
        s %= n
        p = self.payload
        return BitVector(n, ((p << s) | (p >> (n - s))) & _mask(n))

    def concat(self, other: BitVector) -> BitVector:
        return BitVector(self.length + other.length, self.payload | (other.payload << self.length))

    def permute(self, perm: Sequence[int]) -> BitVector:
        """Move coordinate ``i`` to ``perm[i]``."""
        out = 0
        p = self.payload
        for i, j in enumerate(perm):
            if (p >> i) & 1:
                out |= 1 << j
        return BitVector(self.length, out)


def weight(v: BitVector) -> int:
    return v.weight()


def rref_ints(rows: Sequence[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form of packed rows.

    Pivots are taken in increasing column order and, within a column, from the
    lowest-index remaining row, so the result is reproducible. Returns the
    nonzero reduced rows and their pivot columns.
    """
    rows = list(rows)
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        bit = 1 << col
        sel = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= pr
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


@dataclass(frozen=True)
class BitMatrix:
    cols: int
    row_data: tuple[BitVector, ...]

    def __post_init__(self):
        for row in self.row_data:
            if row.length != self.cols:
                raise ValueError("every row must have length equal to cols")

    @classmethod
    def from_ints(cls, rows: Iterable[int], cols: int) -> BitMatrix:
        return cls(cols, tuple(BitVector(cols, r) for r in rows))

    @classmethod
    def from_strs(cls, rows: Iterable[str]) -> BitMatrix:
        vecs = tuple(BitVector.from_str(r) for r in rows)
        if not vecs:
            raise ValueError("need at least one row to infer the width")
        return cls(vecs[0].length, vecs)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls.from_ints((1 << i for i in range(n)), n)

    @property
    def rows(self) -> int:
        return len(self.row_data)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def ints(self) -> list[int]:
        return [r.payload for r in self.row_data]

    def __getitem__(self, i: int) -> BitVector:
        return self.row_data[i]

    def __iter__(self) -> Iterator[BitVector]:
        return iter(self.row_data)

    def __str__(self) -> str:
        return "\n".join(str(r) for r in self.row_data)

    def hstack(self, other: BitMatrix) -> BitMatrix:
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return BitMatrix(
            self.cols + other.cols,
            tuple(a.concat(b) for a, b in zip(self.row_data, other.row_data)),
        )

    def transpose(self) -> BitMatrix:
        out = []
        for c in range(self.cols):
            v = 0
            for i, r in enumerate(self.row_data):
                if (r.payload >> c) & 1:
                    v |= 1 << i
            out.append(v)
        return BitMatrix.from_ints(out, self.rows)

    def __matmul__(self, other: BitMatrix) -> BitMatrix:
        if self.cols != other.rows:
            raise ValueError("inner dimension mismatch")
        orows = other.ints()
        out = []
        for r in self.row_data:
            acc = 0
            p = r.payload
            i = 0
            while p:
                if p & 1:
                    acc ^= orows[i]
                p >>= 1
                i += 1
            out.append(acc)
        return BitMatrix.from_ints(out, other.cols)

    def rref(self) -> tuple[BitMatrix, list[int]]:
        rows, pivots = rref_ints(self.ints(), self.cols)
        return BitMatrix.from_ints(rows, self.cols), pivots

    def rank(self) -> int:
        return len(rref_ints(self.ints(), self.cols)[1])

    def to_numpy(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.uint8)
        for i, r in enumerate(self.row_data):
            for j in r.support():
                out[i, j] = 1
        return out


def vec_times_rows(payload: int, rows: Sequence[int]) -> int:
    """XOR of ``rows[i]`` over the set bits ``i`` of ``payload``."""
    acc = 0
    i = 0
    while payload:
        if payload & 1:
            acc ^= rows[i]
        payload >>= 1
        i += 1
    return acc


@dataclass(frozen=True, eq=False)
class LinearCode:
    """A binary ``[n, k]`` code given by a full-rank generator matrix."""

    gen: BitMatrix
    name: str = ""

    def __post_init__(self):
        if self.gen.rank() != self.gen.rows:
            raise ValueError("generator matrix must have full row rank")

    @classmethod
    def span(cls, rows: Iterable[BitVector | int], n: int, name: str = "") -> LinearCode:
        """Code spanned by possibly dependent rows."""
        ints = [r.payload if isinstance(r, BitVector) else int(r) for r in rows]
        basis, _ = rref_ints(ints, n)
        return cls(BitMatrix.from_ints(basis, n), name)

    @property
    def n(self) -> int:
        return self.gen.cols

    @property
    def k(self) -> int:
        return self.gen.rows

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<LinearCode{label} [{self.n},{self.k}]>"

    def __eq__(self, other: object) -> bool:
        """Equal as sets of codewords (not merely equivalent)."""
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.n == other.n and self.reduced_rows() == other.reduced_rows()

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.reduced_rows())))

    def reduced_rows(self) -> list[int]:
        return rref_ints(self.gen.ints(), self.n)[0]

    def encode(self, msg: BitVector) -> BitVector:
        if msg.length != self.k:
            raise ValueError(f"message length {msg.length} != k = {self.k}")
        return BitVector(self.n, vec_times_rows(msg.payload, self.gen.ints()))

    def codewords(self) -> Iterator[BitVector]:
        rows = self.gen.ints()
        for m in range(1 << self.k):
            yield BitVector(self.n, vec_times_rows(m, rows))

    def contains(self, v: BitVector) -> bool:
        if v.length != self.n:
            return False
        rows, pivots = rref_ints(self.gen.ints(), self.n)
        p = v.payload
        for r, c in zip(rows, pivots):
            if (p >> c) & 1:
                p ^= r
        return p == 0

    def systematic(self, cols: Sequence[int]) -> list[int] | None:
        """Generator rows that restrict to the identity on ``cols``.

        Returns ``None`` when ``cols`` is not an information set.
        """
        cols = list(cols)
        if len(cols) != self.k:
            return None
        rows = self.gen.ints()
        # Gauss-Jordan restricted to the chosen columns.
        for r, c in enumerate(cols):
            bit = 1 << c
            sel = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
            if sel is None:
                return None
            rows[r], rows[sel] = rows[sel], rows[r]
            for i in range(len(rows)):
                if i != r and rows[i] & bit:
                    rows[i] ^= rows[r]
        return rows

    def information_set(self) -> list[int]:
        return rref_ints(self.gen.ints(), self.n)[1]

    def permuted(self, perm: Sequence[int]) -> LinearCode:
        """Image under the coordinate map ``i -> perm[i]``."""
        return LinearCode(BitMatrix(self.n, tuple(r.permute(perm) for r in self.gen)), self.name)


def dual_code(code: LinearCode) -> LinearCode:
    n, k = code.n, code.k
    rows, pivots = rref_ints(code.gen.ints(), n)
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    out = []
    for f in free:
        v = 1 << f
        for r, p in zip(rows, pivots):
            if (r >> f) & 1:
                v |= 1 << p
        out.append(v)
    if not out:
        return LinearCode(BitMatrix(n, ()), f"{code.name}^perp" if code.name else "")
    return LinearCode(BitMatrix.from_ints(out, n), f"{code.name}^perp" if code.name else "")


def is_self_orthogonal(code: LinearCode) -> bool:
    rows = code.gen.ints()
    return all((a & b).bit_count() % 2 == 0 for i, a in enumerate(rows) for b in rows[i:])


def is_self_dual(code: LinearCode) -> bool:
    return code.n == 2 * code.k and is_self_orthogonal(code)


def is_even(code: LinearCode) -> bool:
    return all(r.weight() % 2 == 0 for r in code.gen)


def is_doubly_even(code: LinearCode) -> bool:
    """All weights divisible by 4 (needs a self-orthogonal code)."""
    return is_self_orthogonal(code) and all(r.weight() % 4 == 0 for r in code.gen)
