from __future__ import annotations

from importlib import resources
from pathlib import Path

import pytest
from hypothesis import strategies as st

from dccodes.circulant import DccSpec, Family, border_bit
from dccodes.gf2 import BitVector, LinearCode
from dccodes.wdist import WeightDistribution

DATA = Path(__file__).parent / "data"


def brute_distribution(code: LinearCode) -> WeightDistribution:
    counts = [0] * (code.n + 1)
    for c in code.codewords():
        counts[c.weight()] += 1
    return WeightDistribution(code.n, tuple(counts))


def table_rows(which: int) -> list[tuple[str, int, str, int, tuple[int, int, int]]]:
    name = f"table{which}.tsv"
    text = resources.files("dccodes.data").joinpath(name).read_text()
    out = []
    for line in text.splitlines():
        if not line or line.startswith("#"):
            continue
        code, L, row, d, a, b, c = line.split("\t")
        out.append((code, int(L), row, int(d), (int(a), int(b), int(c))))
    return out


def table_spec(which: int, row: str) -> DccSpec:
    return DccSpec.parse(Family.PURE if which == 3 else Family.BORDERED, row)


@st.composite
def dcc_specs(draw, min_n: int = 2, max_n: int = 12) -> DccSpec:
    family = draw(st.sampled_from([Family.PURE, Family.BORDERED]))
    n = draw(st.integers(min_n, max_n))
    L = n if family is Family.PURE else n - 1
    bits = draw(st.lists(st.integers(0, 1), min_size=L, max_size=L))
    want = 1 if family is Family.PURE else 0
    if sum(bits) % 2 != want:
        bits[0] ^= 1
    alpha = border_bit(n) if family is Family.BORDERED else 0
    return DccSpec(family, n, BitVector.from_bits(bits), alpha)


@st.composite
def permutations(draw, n: int) -> list[int]:
    return draw(st.permutations(list(range(n))))


@pytest.fixture(scope="session")
def table3():
    return table_rows(3)


@pytest.fixture(scope="session")
def table4():
    return table_rows(4)
