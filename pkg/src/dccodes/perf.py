"""Performance order on weight distributions and bounded distance decoding.

For a small symbol error probability, a code whose weight distribution is
lexicographically smaller has smaller error probability under bounded
distance decoding. ``bdd_error_probability`` evaluates that probability
exactly, so the ordering can be checked directly at a given p.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from decimal import Context, Decimal
from fractions import Fraction
from importlib import resources
from math import comb
from typing import Iterable, Sequence

from .errors import DccError, ReferenceIncomplete
from .wdist import PartialWeightDistribution, WeightDistribution

DEFAULT_P = Fraction(1, 1000)


# --------------------------------------------------------------------------
# lexicographic order


class Outcome(str, enum.Enum):
    FIRST_BETTER = "first-better"
    SECOND_BETTER = "second-better"
    EQUAL = "equal"


@dataclass(frozen=True)
class LexVerdict:
    outcome: Outcome
    split_index: int | None = None

    def describe(self, left: str = "left", right: str = "right") -> str:
        if self.outcome is Outcome.EQUAL:
            return "identical weight distributions"
        winner = left if self.outcome is Outcome.FIRST_BETTER else right
        return f"{winner} performs better (s = {self.split_index})"


def _counts(wd: WeightDistribution | PartialWeightDistribution) -> tuple[Sequence[int], int]:
    if isinstance(wd, PartialWeightDistribution):
        return wd.counts, wd.cutoff
    return wd.counts, wd.n


def lex_compare(
    wd1: WeightDistribution | PartialWeightDistribution,
    wd2: WeightDistribution | PartialWeightDistribution,
) -> LexVerdict:
    """Lexicographic comparison of ``(A_0, ..., A_n)``; smaller performs better.

    Partial distributions are accepted as long as they differ within the
    weights both of them cover.
    """
    if wd1.n != wd2.n:
        raise ValueError(f"length mismatch: {wd1.n} vs {wd2.n}")
    c1, top1 = _counts(wd1)
    c2, top2 = _counts(wd2)
    top = min(top1, top2)
    for s in range(top + 1):
        if c1[s] != c2[s]:
            return LexVerdict(Outcome.FIRST_BETTER if c1[s] < c2[s] else Outcome.SECOND_BETTER, s)
    if top < wd1.n:
        raise DccError(f"distributions agree through weight {top}; extend the cutoff to decide")
    return LexVerdict(Outcome.EQUAL)


# --------------------------------------------------------------------------
# bounded distance decoding


def _as_fraction(p) -> Fraction:
    if isinstance(p, Fraction):
        return p
    if isinstance(p, float):
        # Go through the decimal repr so 1e-3 means exactly 1/1000.
        return Fraction(repr(p))
    return Fraction(p)


@dataclass(frozen=True)
class BddChannel:
    p: Fraction
    t: int

    def __post_init__(self):
        object.__setattr__(self, "p", _as_fraction(self.p))
        if not 0 < self.p < Fraction(1, 2):
            raise ValueError("symbol error probability must lie in (0, 1/2)")
        if self.t < 0:
            raise ValueError("decoding radius must be nonnegative")

    @classmethod
    def for_distance(cls, p, d: int) -> BddChannel:
        return cls(_as_fraction(p), max((d - 1) // 2, 0))


def bdd_error_probability(wd: WeightDistribution, channel: BddChannel) -> Fraction:
    """Probability that the received word falls within radius t of a wrong codeword.

    The all-zero word is sent over a binary symmetric channel. Decoding
    spheres of radius ``t <= (d-1)/2`` are disjoint, so the events add.
    """
    n = wd.n
    d = wd.min_weight()
    if d is None:
        return Fraction(0)
    if channel.t > (d - 1) // 2:
        raise ValueError(f"radius {channel.t} exceeds (d-1)/2 for d = {d}")
    t = channel.t
    # coef[e] counts (codeword, error) pairs where the error pattern has weight e.
    coef = [0] * (n + 1)
    for w in range(1, n + 1):
        a = wd[w]
        if not a:
            continue
        for s in range(t + 1):
            for k in range(max(0, s - (n - w)), min(w, s) + 1):
                coef[w + s - 2 * k] += a * comb(w, k) * comb(n - w, s - k)
    p = channel.p
    q = 1 - p
    total = Fraction(0)
    for e, c in enumerate(coef):
        if c:
            total += c * p**e * q ** (n - e)
    return total


def render_probability(x: Fraction, digits: int = 15) -> str:
    ctx = Context(prec=digits)
    return str(ctx.divide(Decimal(x.numerator), Decimal(x.denominator)))


# --------------------------------------------------------------------------
# reference data


@dataclass(frozen=True)
class Interval:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("interval with lower > upper")

    @classmethod
    def parse(cls, text: str) -> Interval | None:
        text = text.strip()
        if text in ("", "-"):
            return None
        if "-" in text:
            lo, hi = text.split("-")
            return cls(int(lo), int(hi))
        v = int(text)
        return cls(v, v)

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, v: int) -> bool:
        return self.lo <= v <= self.hi

    def __str__(self) -> str:
        return str(self.lo) if self.exact else f"{self.lo}-{self.hi}"


@dataclass(frozen=True)
class ReferenceEntry:
    length: int
    d_SD: Interval
    A_SD: Interval | None
    citation_key: str


@dataclass(frozen=True)
class OptimalSummary:
    """One family's column group of the reference table."""

    length: int
    family: str
    d: int
    A_d: int
    count: int


@dataclass(frozen=True)
class Table2Row:
    pure: OptimalSummary
    bordered: OptimalSummary
    reference: ReferenceEntry


def parse_table2(lines: Iterable[str]) -> dict[int, Table2Row]:
    """Rows: length, d_P, A_dP, N_P, d_B, A_dB, N_B, d_SD, A_SD, citation (tab separated)."""
    out: dict[int, Table2Row] = {}
    for line in lines:
        line = line.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        cells = line.split("\t")
        if len(cells) != 10:
            raise ValueError(f"expected 10 columns: {line!r}")
        L = int(cells[0])
        cite = cells[9].strip()
        out[L] = Table2Row(
            OptimalSummary(L, "pure", int(cells[1]), int(cells[2]), int(cells[3])),
            OptimalSummary(L, "bordered", int(cells[4]), int(cells[5]), int(cells[6])),
            ReferenceEntry(
                L,
                Interval.parse(cells[7]),
                Interval.parse(cells[8]),
                "" if cite == "-" else cite,
            ),
        )
    return out


def load_table2() -> dict[int, Table2Row]:
    text = resources.files("dccodes.data").joinpath("table2.tsv").read_text()
    return parse_table2(text.splitlines())


# --------------------------------------------------------------------------
# verdicts


class Verdict(str, enum.Enum):
    BETTER = "performs better"
    NOT_BETTER = "not better"
    LARGER_D = "larger minimum weight"
    CONDITIONAL = "conditional"


@dataclass(frozen=True)
class Theorem1Result:
    length: int
    d: int
    A_d: int
    verdict: Verdict
    text: str


def _best(reports: Sequence) -> tuple[int, int]:
    d = max(r.d for r in reports)
    return d, min(r.A_d for r in reports if r.d == d)


def theorem1_report(classified, reference: ReferenceEntry) -> Theorem1Result:
    """Compare the optimal non-self-dual double circulant codes with self-dual ones.

    ``classified`` is one summary or a sequence of them (pure and bordered);
    anything with ``d`` and ``A_d`` attributes works.
    """
    reports = list(classified) if isinstance(classified, (list, tuple)) else [classified]
    d, a = _best(reports)
    L = reference.length
    dsd = reference.d_SD
    if dsd is None:
        raise ReferenceIncomplete(f"no self-dual reference minimum weight at length {L}")
    if dsd.hi < d:
        return Theorem1Result(
            L, d, a, Verdict.LARGER_D,
            f"[{L},{L // 2},{d}] has larger minimum weight than any self-dual code of length {L}",
        )
    if dsd.lo > d:
        return Theorem1Result(
            L, d, a, Verdict.NOT_BETTER,
            f"self-dual codes of length {L} reach d = {dsd.lo} > {d}; not better",
        )
    if not dsd.exact:
        raise ReferenceIncomplete(
            f"self-dual minimum weight at length {L} is only known to lie in {dsd}"
        )
    ref = reference.A_SD
    if ref is None:
        raise ReferenceIncomplete(f"no reference A_{d} for self-dual codes of length {L}")
    if a < ref.lo:
        return Theorem1Result(
            L, d, a, Verdict.BETTER,
            f"[{L},{L // 2},{d}]: A_{d} = {a} < {ref}; performs better than any self-dual code",
        )
    if a > ref.hi:
        return Theorem1Result(
            L, d, a, Verdict.NOT_BETTER,
            f"[{L},{L // 2},{d}]: A_{d} = {a} > {ref}; a self-dual code performs better",
        )
    if ref.exact:
        return Theorem1Result(
            L, d, a, Verdict.CONDITIONAL,
            f"[{L},{L // 2},{d}]: A_{d} = {a} ties the self-dual reference; later coefficients decide",
        )
    return Theorem1Result(
        L, d, a, Verdict.CONDITIONAL,
        f"[{L},{L // 2},{d}]: A_{d} = {a} against self-dual range {ref}; better only if every "
        f"self-dual code has A_{d} > {a}",
    )
