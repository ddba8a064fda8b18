"""Pure and bordered double circulant codes.

A pure code of length 2n has generator ``[I_n | R]`` with ``R`` circulant.
A bordered code has generator::

    [ I_n | a 1 ... 1 ]
    [     | 1         ]
    [     | :   R'    ]
    [     | 1         ]

with ``R'`` an (n-1) x (n-1) circulant and border bit ``a``. Only even codes
are built: the pure first row must have odd weight, the bordered first row
even weight, and ``a = n mod 2``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import ParityError
from .gf2 import BitMatrix, BitVector, LinearCode


class Family(str, enum.Enum):
    PURE = "pure"
    BORDERED = "bordered"

    @property
    def letter(self) -> str:
        return "P" if self is Family.PURE else "B"


def border_bit(n: int) -> int:
    return n % 2


@dataclass(frozen=True)
class DccSpec:
    family: Family
    n: int
    first_row: BitVector
    alpha: int = 0

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        want = self.n if self.family is Family.PURE else self.n - 1
        if self.first_row.length != want:
            raise ValueError(
                f"{self.family.value} first row must have length {want}, got {self.first_row.length}"
            )
        wt = self.first_row.weight()
        if self.family is Family.PURE:
            if wt % 2 != 1:
                raise ParityError(f"pure first row must have odd weight, got {wt}")
        else:
            if wt % 2 != 0:
                raise ParityError(f"bordered first row must have even weight, got {wt}")
            if self.alpha != border_bit(self.n):
                raise ParityError(f"border bit must be {border_bit(self.n)} for n = {self.n}")

    @classmethod
    def parse(cls, family: Family | str, row: str, n: int | None = None) -> DccSpec:
        """Build from a table-style row; ``n`` and ``alpha`` are inferred."""
        family = Family(family)
        bits = BitVector.from_str(row)
        inferred = bits.length if family is Family.PURE else bits.length + 1
        if n is not None and n != inferred:
            raise ValueError(f"row of length {bits.length} does not fit n = {n}")
        alpha = border_bit(inferred) if family is Family.BORDERED else 0
        return cls(family, inferred, bits, alpha)

    @property
    def length(self) -> int:
        return 2 * self.n

    def label(self) -> str:
        return f"{self.family.letter}[{self.length}]({self.first_row})"


def circulant_matrix(row: BitVector) -> BitMatrix:
    """Square matrix whose i-th row is ``row`` right-shifted i times."""
    if row.length == 0:
        raise ValueError("row must be nonempty")
    return BitMatrix(row.length, tuple(row.rotate_right(i) for i in range(row.length)))


def right_matrix(spec: DccSpec) -> BitMatrix:
    """The n x n block to the right of ``I_n``."""
    n = spec.n
    if spec.family is Family.PURE:
        return circulant_matrix(spec.first_row)
    if n == 1:
        return BitMatrix.from_ints([spec.alpha], 1)
    inner = circulant_matrix(spec.first_row).ints()
    rows = [spec.alpha | (((1 << (n - 1)) - 1) << 1)]
    rows += [1 | (r << 1) for r in inner]
    return BitMatrix.from_ints(rows, n)


def _build(spec: DccSpec) -> LinearCode:
    n = spec.n
    gen = BitMatrix.identity(n).hstack(right_matrix(spec))
    return LinearCode(gen, spec.label())


def build_pure(spec: DccSpec) -> LinearCode:
    if spec.family is not Family.PURE:
        raise ValueError("build_pure needs a pure spec")
    return _build(spec)


def build_bordered(spec: DccSpec) -> LinearCode:
    if spec.family is not Family.BORDERED:
        raise ValueError("build_bordered needs a bordered spec")
    return _build(spec)


def build(spec: DccSpec) -> LinearCode:
    return _build(spec)


def cyclic_canonical(row: BitVector) -> BitVector:
    """Lexicographically smallest string among all cyclic shifts."""
    if row.length == 0:
        return row
    return min((row.rotate_right(i) for i in range(row.length)), key=str)
