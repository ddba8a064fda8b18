"""Gleason-basis weight enumerators with exact rational arithmetic.

Two bases are supported, both dehomogenized at x = 1:

* formally self-dual even codes of length 2m:
  ``(1 + y^2)^(m - 4j) * (y^2 (1 - y^2)^2)^j`` for ``0 <= j <= m // 4``;
* doubly even self-dual codes of length N (N divisible by 8):
  ``(1 + 14 y^4 + y^8)^(N/8 - 3j) * (y^4 (1 - y^4)^4)^j`` for ``0 <= j <= N // 24``.

Basis element ``j`` starts at ``y^(step*j)`` with coefficient 1, so the change
of coordinates between enumerator coefficients and Gleason coefficients is
unit triangular.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

from .errors import InfeasibleError, NegativeCoefficientError, NotInFamilyError
from .wdist import WeightDistribution

Number = Union[int, Fraction]

PARAM_NAMES = ("a", "b", "c")


def _frac(x: Number) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _as_int_if_integral(x: Fraction) -> Number:
    return int(x) if x.denominator == 1 else x


# --------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class UnivariatePoly:
    """Polynomial in y with exact coefficients, lowest degree first."""

    coefficients: tuple[Fraction, ...] = ()

    def __post_init__(self):
        cs = [_frac(c) for c in self.coefficients]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coefficients", tuple(cs))

    @classmethod
    def from_terms(cls, terms: Mapping[int, Number]) -> UnivariatePoly:
        if not terms:
            return cls()
        cs = [0] * (max(terms) + 1)
        for e, c in terms.items():
            cs[e] = c
        return cls(tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, i: int) -> Fraction:
        return self.coefficients[i] if 0 <= i < len(self.coefficients) else Fraction(0)

    def __add__(self, other: UnivariatePoly) -> UnivariatePoly:
        n = max(len(self.coefficients), len(other.coefficients))
        return UnivariatePoly(tuple(self[i] + other[i] for i in range(n)))

    def __sub__(self, other: UnivariatePoly) -> UnivariatePoly:
        return self + other.scale(-1)

    def scale(self, c: Number) -> UnivariatePoly:
        return UnivariatePoly(tuple(c * x for x in self.coefficients))

    def __mul__(self, other: UnivariatePoly) -> UnivariatePoly:
        if not self.coefficients or not other.coefficients:
            return UnivariatePoly()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return UnivariatePoly(tuple(out))

    def __pow__(self, e: int) -> UnivariatePoly:
        if e < 0:
            raise ValueError("negative power")
        result = UnivariatePoly((1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, s: int) -> UnivariatePoly:
        return UnivariatePoly((0,) * s + self.coefficients)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def terms(self) -> dict[int, Number]:
        return {i: _as_int_if_integral(c) for i, c in enumerate(self.coefficients) if c}

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coefficients):
            if not c:
                continue
            mono = "" if i == 0 else ("y" if i == 1 else f"y^{i}")
            coef = _as_int_if_integral(c)
            if mono and coef == 1:
                parts.append(mono)
            elif mono and coef == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{coef}{mono}")
        return " + ".join(parts).replace("+ -", "- ") or "0"


def Y(e: int = 1) -> UnivariatePoly:
    return UnivariatePoly.from_terms({e: 1})


ONE = UnivariatePoly((1,))


# --------------------------------------------------------------------------
# affine expressions in named parameters


@dataclass(frozen=True)
class AffineExpr:
    """``constant + sum(coef * param)`` with exact rational coefficients."""

    constant: Fraction = Fraction(0)
    terms: tuple[tuple[str, Fraction], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "constant", _frac(self.constant))
        merged: dict[str, Fraction] = {}
        for name, c in self.terms:
            merged[name] = merged.get(name, Fraction(0)) + _frac(c)
        object.__setattr__(self, "terms", tuple((k, v) for k, v in merged.items() if v))

    @classmethod
    def const(cls, c: Number) -> AffineExpr:
        return cls(_frac(c))

    @classmethod
    def param(cls, name: str) -> AffineExpr:
        return cls(Fraction(0), ((name, Fraction(1)),))

    def coeff(self, name: str) -> Fraction:
        return dict(self.terms).get(name, Fraction(0))

    @property
    def params(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.terms)

    def is_constant(self) -> bool:
        return not self.terms

    def __add__(self, other: AffineExpr | Number) -> AffineExpr:
        if not isinstance(other, AffineExpr):
            return AffineExpr(self.constant + other, self.terms)
        return AffineExpr(self.constant + other.constant, self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> AffineExpr:
        return self * -1

    def __sub__(self, other: AffineExpr | Number) -> AffineExpr:
        return self + (-other)

    def __rsub__(self, other: Number) -> AffineExpr:
        return (-self) + other

    def __mul__(self, c: Number) -> AffineExpr:
        if isinstance(c, AffineExpr):
            raise TypeError("affine expressions only scale by numbers")
        c = _frac(c)
        return AffineExpr(self.constant * c, tuple((n, v * c) for n, v in self.terms))

    __rmul__ = __mul__

    def substitute(self, values: Mapping[str, AffineExpr | Number]) -> AffineExpr:
        out = AffineExpr(self.constant)
        for name, c in self.terms:
            if name in values:
                v = values[name]
                out = out + (v * c if isinstance(v, AffineExpr) else AffineExpr.const(_frac(v) * c))
            else:
                out = out + AffineExpr(Fraction(0), ((name, c),))
        return out

    def evaluate(self, values: Mapping[str, Number]) -> Fraction:
        missing = [n for n in self.params if n not in values]
        if missing:
            raise KeyError(f"unassigned parameters: {missing}")
        return self.constant + sum((c * _frac(values[n]) for n, c in self.terms), Fraction(0))

    def render(self, order: Sequence[str] | None = None) -> str:
        """Compact style: ``4960-8a``, ``-4a+b``, ``1``."""
        names = list(order) if order is not None else []
        names += [n for n in self.params if n not in names]
        out = ""
        if self.constant or not self.terms:
            out = str(_as_int_if_integral(self.constant))
        for n in names:
            c = self.coeff(n)
            if not c:
                continue
            c = _as_int_if_integral(c)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = n if mag == 1 else f"{mag}{n}"
            if not out:
                out = body if sign == "+" else f"-{body}"
            else:
                out += f"{sign}{body}"
        return out

    def __str__(self) -> str:
        return self.render()


def _zero() -> AffineExpr:
    return AffineExpr()


# --------------------------------------------------------------------------
# bases


class GleasonBasis(str, enum.Enum):
    FSD_EVEN = "fsd"
    DOUBLY_EVEN = "doubly-even"

    @property
    def step(self) -> int:
        return 2 if self is GleasonBasis.FSD_EVEN else 4


@lru_cache(maxsize=None)
def expand_fsd_basis(n_half: int, j: int) -> UnivariatePoly:
    """``(1+y^2)^(n_half-4j) * (y^2 (1-y^2)^2)^j``."""
    if not 0 <= j <= n_half // 4:
        raise ValueError(f"j must lie in [0, {n_half // 4}], got {j}")
    g1 = ONE + Y(2)
    g2 = (ONE - Y(2)) ** 2
    return (g1 ** (n_half - 4 * j)) * (g2**j).shift(2 * j)


@lru_cache(maxsize=None)
def expand_doubly_even_basis(length: int, j: int) -> UnivariatePoly:
    """``(1+14y^4+y^8)^(length/8-3j) * (y^4 (1-y^4)^4)^j``."""
    if length % 8:
        raise ValueError("doubly even self-dual lengths are multiples of 8")
    if not 0 <= j <= length // 24:
        raise ValueError(f"j must lie in [0, {length // 24}], got {j}")
    g8 = UnivariatePoly.from_terms({0: 1, 4: 14, 8: 1})
    g24 = ((ONE - Y(4)) ** 4).shift(4)
    return (g8 ** (length // 8 - 3 * j)) * (g24**j)


def basis_polys(length: int, basis: GleasonBasis) -> list[UnivariatePoly]:
    if basis is GleasonBasis.FSD_EVEN:
        if length % 2:
            raise InfeasibleError("formally self-dual even codes have even length")
        m = length // 2
        return [expand_fsd_basis(m, j) for j in range(m // 4 + 1)]
    if length % 8:
        raise InfeasibleError("doubly even self-dual codes have length divisible by 8")
    return [expand_doubly_even_basis(length, j) for j in range(length // 24 + 1)]


@dataclass(frozen=True)
class GleasonExpansion:
    """``W = sum_j coeffs[j] * basis_j`` (``coeffs[0] = 1`` for a code)."""

    basis: GleasonBasis
    length: int
    coeffs: tuple[Fraction | AffineExpr, ...]

    def polys(self) -> list[UnivariatePoly]:
        return basis_polys(self.length, self.basis)

    def evaluate(self) -> UnivariatePoly:
        out = UnivariatePoly()
        for c, g in zip(self.coeffs, self.polys()):
            if isinstance(c, AffineExpr):
                raise TypeError("parametric expansion; use ParametricWE")
            out = out + g.scale(c)
        return out


def gleason_coordinates(coeff_at, length: int, basis: GleasonBasis) -> list:
    """Invert the triangular change of basis.

    ``coeff_at(w)`` returns the enumerator coefficient of ``y^w`` (number or
    AffineExpr). The result is exact but only meaningful if the enumerator
    lies in the span of the basis.
    """
    gs = basis_polys(length, basis)
    step = basis.step
    out = []
    for j in range(len(gs)):
        v = coeff_at(step * j)
        for i in range(j):
            v = v - out[i] * gs[i][step * j]
        out.append(v)
    return out


# --------------------------------------------------------------------------
# parametric families


@dataclass(frozen=True)
class ParametricWE:
    """Enumerator coefficients as affine expressions in the free parameters."""

    length: int
    d: int
    basis: GleasonBasis
    coeff_exprs: tuple[AffineExpr, ...]
    free_params: tuple[str, ...]
    gleason: tuple[AffineExpr, ...] = field(default=(), compare=False)

    @property
    def n(self) -> int:
        return self.length

    def __getitem__(self, w: int) -> AffineExpr:
        return self.coeff_exprs[w] if 0 <= w < len(self.coeff_exprs) else _zero()

    def table_row(self, extra: int = 4) -> list[AffineExpr]:
        """``A_0, A_d, A_{d+step}, ...`` as printed in a table row."""
        step = self.basis.step
        return [self[0]] + [self[self.d + step * t] for t in range(extra)]

    def render_row(self, extra: int = 4) -> list[str]:
        return [e.render(self.free_params) for e in self.table_row(extra)]

    def substitute(self, values: Mapping[str, AffineExpr | Number]) -> tuple[AffineExpr, ...]:
        return tuple(e.substitute(values) for e in self.coeff_exprs)


def _solve_affine(
    rows: list[AffineExpr], unknowns: Sequence[str]
) -> tuple[dict[str, AffineExpr], list[str]]:
    """Solve ``rows[i] == 0`` for ``unknowns``; unknowns left free stay symbolic.

    Pivoting takes the lowest-index unknown first. Returns the substitution
    and the list of free unknowns. Raises InfeasibleError on inconsistency.
    """
    eqs = [r for r in rows]
    solved: dict[str, AffineExpr] = {}
    order: list[str] = []
    for u in unknowns:
        sel = next((i for i, e in enumerate(eqs) if e.coeff(u) != 0), None)
        if sel is None:
            continue
        e = eqs.pop(sel)
        c = e.coeff(u)
        rest = e - AffineExpr.param(u) * c
        expr = rest * (-1 / c)
        eqs = [q.substitute({u: expr}) for q in eqs]
        solved = {k: v.substitute({u: expr}) for k, v in solved.items()}
        solved[u] = expr
        order.append(u)
    for e in eqs:
        if e.is_constant() and e.constant != 0:
            raise InfeasibleError("inconsistent constraints")
        if not e.is_constant():
            raise InfeasibleError("constraints involve unknowns that could not be eliminated")
    free = [u for u in unknowns if u not in solved]
    return solved, free


def param_names(count: int) -> tuple[str, ...]:
    names = list(PARAM_NAMES[:count])
    names += [f"p{i}" for i in range(len(names), count)]
    return tuple(names)


def solve_parametric(length: int, d: int, basis: GleasonBasis | str = GleasonBasis.FSD_EVEN) -> ParametricWE:
    """Enumerators of minimum weight >= d in the Gleason span, in table parameters.

    The first parameter is ``A_d``; each later one absorbs the constant of the
    next pivot coefficient, so ``A_{d+step*t}`` equals the t-th parameter plus
    multiples of earlier parameters and nothing else.
    """
    basis = GleasonBasis(basis)
    step = basis.step
    if d <= 0 or d % step:
        raise InfeasibleError(f"d must be a positive multiple of {step}")
    gs = basis_polys(length, basis)
    m = len(gs) - 1
    unknowns = [f"_g{j}" for j in range(1, m + 1)]
    gleason = [AffineExpr.const(1)] + [AffineExpr.param(u) for u in unknowns]

    def coeff(w: int, gl: Sequence[AffineExpr]) -> AffineExpr:
        acc = _zero()
        for c, g in zip(gl, gs):
            gw = g[w]
            if gw:
                acc = acc + c * gw
        return acc

    constraints = [coeff(step * i, gleason) for i in range(1, d // step)]
    solved, free = _solve_affine(constraints, unknowns)
    gleason = [g.substitute(solved) for g in gleason]

    names = param_names(len(free))
    # Pivot coefficients are unit triangular in the free Gleason coefficients.
    pivots = [coeff(d + step * t, gleason) for t in range(len(free))]
    for t, e in enumerate(pivots):
        if e.coeff(free[t]) != 1 or any(e.coeff(f) for f in free[t + 1 :]):
            raise InfeasibleError("pivot coefficients are not triangular in the free parameters")
    # Choose shifts c_t so that free[t] = name[t] - c_t kills every pivot constant.
    shifts: list[Fraction] = []
    for t, e in enumerate(pivots):
        s = e.constant - sum((e.coeff(free[i]) * shifts[i] for i in range(t)), Fraction(0))
        shifts.append(s)
    rename = {f: AffineExpr.param(nm) - s for f, nm, s in zip(free, names, shifts)}
    gleason = [g.substitute(rename) for g in gleason]
    exprs = tuple(coeff(w, gleason) for w in range(length + 1))
    return ParametricWE(length, d, basis, exprs, names, tuple(gleason))


def instantiate(pwe: ParametricWE, values: Mapping[str, Number] | None = None) -> WeightDistribution:
    values = dict(values or {})
    missing = [p for p in pwe.free_params if p not in values]
    if missing:
        raise KeyError(f"unassigned parameters: {missing}")
    counts = []
    for w, e in enumerate(pwe.coeff_exprs):
        v = e.evaluate(values)
        if v.denominator != 1:
            raise NegativeCoefficientError(f"A_{w} = {v} is not an integer")
        if v < 0:
            raise NegativeCoefficientError(f"A_{w} = {v} is negative")
        counts.append(int(v))
    return WeightDistribution(pwe.length, tuple(counts))


def fit_exprs(
    exprs: Sequence[AffineExpr], params: Sequence[str], known: Mapping[int, Number]
) -> dict[str, Number]:
    """Unique parameter values satisfying ``exprs[w] == known[w]`` for every known w."""
    rows = []
    for w, v in known.items():
        e = exprs[w] if 0 <= w < len(exprs) else _zero()
        rows.append(e - v)
    try:
        solved, free = _solve_affine(rows, list(params))
    except InfeasibleError as exc:
        raise NotInFamilyError(f"distribution is not in the family: {exc}") from None
    if free:
        raise NotInFamilyError(f"known coefficients do not determine {free}")
    out: dict[str, Number] = {}
    for p in params:
        v = solved[p].constant
        out[p] = _as_int_if_integral(v)
    return out


def fit(wd: WeightDistribution | Mapping[int, Number], pwe: ParametricWE) -> dict[str, Number]:
    """Parameter values reproducing ``wd``.

    ``wd`` may be a full distribution (every coefficient is checked) or a
    mapping of known coefficients.
    """
    if isinstance(wd, WeightDistribution):
        if wd.n != pwe.length:
            raise NotInFamilyError(f"length {wd.n} does not match family length {pwe.length}")
        known = dict(enumerate(wd.counts))
    else:
        known = {int(k): v for k, v in wd.items()}
        if any(w > pwe.length or w < 0 for w in known):
            raise NotInFamilyError("weight outside 0..length")
    return fit_exprs(pwe.coeff_exprs, pwe.free_params, known)


def doubly_even_extremal(length: int) -> WeightDistribution:
    """The extremal enumerator of a doubly even self-dual code of this length."""
    d = 4 * (length // 24) + 4
    return instantiate(solve_parametric(length, d, GleasonBasis.DOUBLY_EVEN))


def family_total(pwe: ParametricWE) -> AffineExpr:
    total = _zero()
    for e in pwe.coeff_exprs:
        total = total + e
    return total


def format_family_row(pwe: ParametricWE) -> str:
    cells = [f"({pwe.length},{pwe.d})"] + pwe.render_row()
    return " | ".join(cells)
