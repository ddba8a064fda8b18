"""Shadow enumerators of singly even self-dual codes and the families they cut out.

For ``W = sum_j a_j (x^2+y^2)^(m-4j) (x^2 y^2 (x^2-y^2)^2)^j`` of length
``n = 2m``, the shadow enumerator is ``W((x+y)/sqrt2, i(x-y)/sqrt2)``. Under
this substitution ``x^2+y^2 -> 2xy`` and ``x^2 y^2 (x^2-y^2)^2 ->
-(1/4)(x^4-y^4)^2``, so term ``j`` maps to
``(-1)^j 2^(m-6j) y^(m-4j) (1-y^4)^(2j)`` at ``x = 1``.

Write ``p_j = (-1)^j 2^(m-6j) a_j``. Then ``S_(m-4j)`` is ``p_j`` plus
integer multiples of ``p_(j')`` with ``j' > j``, which makes the ``p_j`` the
natural family parameters.

Two distinct shadow vectors add up to a codeword. So a shadow weight ``s``
with ``2s < d`` occurs at most once, and if it occurs, no shadow weight ``w``
with ``s + w < d`` can occur alongside it. Each such ``s`` gives one family,
and one more family has none of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InfeasibleError
from .gleason import (
    AffineExpr,
    GleasonBasis,
    ParametricWE,
    UnivariatePoly,
    Y,
    ONE,
    _solve_affine,
    expand_fsd_basis,
    gleason_coordinates,
    solve_parametric,
)

UNBOUNDED_CAP = 10**6


def shadow_basis(m: int, j: int) -> UnivariatePoly:
    """Shadow image of the j-th Gleason term, scaled to leading coefficient 1."""
    return ((ONE - Y(4)) ** (2 * j)).shift(m - 4 * j)


def shadow_scale(m: int, j: int) -> Fraction:
    """``(-1)^j 2^(m-6j)``."""
    return Fraction((-1) ** j) * (Fraction(2) ** (m - 6 * j))


def _shadow_from_gleason(coords: Sequence, n: int) -> list:
    m = n // 2
    out: list = [0] * (n + 1)
    for j, a in enumerate(coords):
        g = shadow_basis(m, j)
        s = shadow_scale(m, j)
        for w, c in enumerate(g.coefficients):
            if c:
                out[w] = out[w] + a * (s * c)
    return out


def _is_doubly_even_poly(poly: UnivariatePoly) -> bool:
    return all(c == 0 for w, c in enumerate(poly.coefficients) if w % 4)


def shadow_transform(code_we: UnivariatePoly | ParametricWE, n: int | None = None):
    """Shadow enumerator of ``code_we``.

    A plain polynomial returns a ``UnivariatePoly``. A ``ParametricWE`` returns
    a tuple of ``AffineExpr`` indexed by weight.
    """
    if isinstance(code_we, ParametricWE):
        if n is not None and n != code_we.length:
            raise ValueError("length does not match the parametric enumerator")
        n = code_we.length
        if n % 2:
            raise InfeasibleError("self-dual codes have even length")
        out = _shadow_from_gleason(code_we.gleason, n)
        return tuple(e if isinstance(e, AffineExpr) else AffineExpr.const(e) for e in out)

    if n is None:
        raise ValueError("length is required for a plain polynomial")
    if n % 2 or code_we.degree > n:
        raise InfeasibleError(f"not an enumerator of an even-length code of length {n}")
    if code_we[0] != 1:
        raise InfeasibleError("enumerator must have constant term 1")
    if _is_doubly_even_poly(code_we):
        raise InfeasibleError("doubly even enumerator; the shadow is defined here for singly even codes")
    coords = gleason_coordinates(lambda w: code_we[w], n, GleasonBasis.FSD_EVEN)
    rebuilt = UnivariatePoly()
    for a, j in zip(coords, range(len(coords))):
        rebuilt = rebuilt + expand_fsd_basis(n // 2, j).scale(a)
    if rebuilt != code_we:
        raise InfeasibleError("polynomial is not in the span of the Gleason basis")
    s = UnivariatePoly(tuple(_shadow_from_gleason(coords, n)))
    if not s.is_integral():
        raise InfeasibleError("shadow has non-integral coefficients")
    m = n // 2
    if any(c and (w - m) % 4 for w, c in enumerate(s.coefficients)):
        raise InfeasibleError("shadow has weights outside n/2 mod 4")
    return s


# --------------------------------------------------------------------------
# families

# Parameter names and signs for lengths with an established presentation:
# ``name -> (j, sign)`` meaning ``name = sign * p_j``. ``order`` lists the
# family keys (fixed low shadow weight, or None for the generic family) in
# label order.
_CONVENTIONS: dict[int, dict] = {
    54: {"params": {"β": (5, 1)}, "order": [None, 3]},
    112: {"params": {"a": (10, 1), "b": (11, -1)}, "order": [4, 8, None]},
}


@dataclass(frozen=True)
class ShadowFamily:
    n: int
    d: int
    label: int
    fixed_shadow: tuple[tuple[int, int], ...]
    code_we: ParametricWE
    shadow_exprs: tuple[AffineExpr, ...]
    param_range: tuple[int, int] | None = None
    values: tuple[int, ...] | None = field(default=None, compare=False)

    @property
    def free_params(self) -> tuple[str, ...]:
        return self.code_we.free_params

    @property
    def leading_shadow_weight(self) -> int | None:
        """The shadow weight forced to 1, or None for the generic family."""
        ones = [w for w, v in self.fixed_shadow if v == 1]
        return ones[0] if ones else None

    def shadow(self, w: int) -> AffineExpr:
        return self.shadow_exprs[w] if 0 <= w < len(self.shadow_exprs) else AffineExpr()

    def code(self, w: int) -> AffineExpr:
        return self.code_we[w]

    def render(self, terms: int = 3) -> tuple[str, str]:
        code = _render_poly(self.code_we.coeff_exprs, self.free_params, terms, skip_zero_weight=True)
        sh = _render_poly(self.shadow_exprs, self.free_params, terms)
        return (f"W_{self.label}(C) = 1 + {code} + ...", f"W_{self.label}(S) = {sh} + ...")


def _render_term(e: AffineExpr, w: int, order: Sequence[str]) -> str:
    mono = f"y^{w}"
    if e.is_constant():
        c = e.constant
        if c == 1:
            return mono
        if c == -1:
            return f"-{mono}"
        return f"{e.render(order)}{mono}"
    if e.constant == 0 and len(e.terms) == 1:
        return f"{e.render(order)}{mono}"
    return f"({e.render(order)}){mono}"


def _render_poly(exprs, order, terms, skip_zero_weight=False) -> str:
    parts = []
    for w, e in enumerate(exprs):
        if skip_zero_weight and w == 0:
            continue
        if e.is_constant() and e.constant == 0:
            continue
        parts.append(_render_term(e, w, order))
        if len(parts) == terms:
            break
    out = " + ".join(parts)
    return out.replace("+ -", "- ")


def _family_keys(m: int, d: int) -> list[int | None]:
    """Shadow weights that may occur once below d/2, then the generic family."""
    low = [w for w in range(1, d) if (w - m) % 4 == 0 and 2 * w < d]
    return low + [None]


def _constraints(m: int, d: int, key: int | None) -> dict[int, int]:
    shadow_ws = [w for w in range(0, d) if (w - m) % 4 == 0]
    fixed = {0: 0} if m % 4 == 0 else {}
    if key is None:
        for w in shadow_ws:
            if 2 * w < d:
                fixed[w] = 0
    else:
        for w in shadow_ws:
            if w + key < d:
                fixed[w] = 0
        fixed[key] = 1
    return fixed


def _bounds_1d(exprs: Sequence[AffineExpr], name: str) -> tuple[Fraction | None, Fraction | None]:
    lo: Fraction | None = None
    hi: Fraction | None = None
    for e in exprs:
        c = e.coeff(name)
        k = e.constant
        if c == 0:
            if k < 0:
                return Fraction(1), Fraction(0)
            continue
        bound = -k / c
        if c > 0:
            lo = bound if lo is None else max(lo, bound)
        else:
            hi = bound if hi is None else min(hi, bound)
    return lo, hi


def _integral_at(exprs: Sequence[AffineExpr], values: Mapping[str, int]) -> bool:
    return all(e.evaluate(values).denominator == 1 for e in exprs)


def _feasible_values(exprs: Sequence[AffineExpr], name: str) -> list[int] | None:
    """Integer values of the single parameter keeping every coefficient a nonnegative integer.

    Returns None when the admissible interval is unbounded.
    """
    lo, hi = _bounds_1d(exprs, name)
    if lo is None or hi is None:
        return None
    ilo, ihi = math.ceil(lo), math.floor(hi)
    if ihi - ilo > UNBOUNDED_CAP:
        return None
    # Integrality of k + c*t depends only on t modulo the common denominator.
    period = 1
    for e in exprs:
        period = math.lcm(period, e.constant.denominator, e.coeff(name).denominator)
    good = [r for r in range(period) if _integral_at(exprs, {name: r})]
    return [t for t in range(ilo, ihi + 1) if t % period in good]


def _lp_feasible(exprs: Sequence[AffineExpr], names: Sequence[str]) -> bool:
    """Real relaxation: does some point make every expression nonnegative?"""
    from scipy.optimize import linprog

    rows, rhs = [], []
    for e in exprs:
        if e.is_constant():
            if e.constant < 0:
                return False
            continue
        rows.append([-float(e.coeff(nm)) for nm in names])
        rhs.append(float(e.constant))
    if not rows:
        return True
    res = linprog(
        c=[0.0] * len(names),
        A_ub=rows,
        b_ub=rhs,
        bounds=[(None, None)] * len(names),
        method="highs",
    )
    return res.status in (0, 3)


def _names_for(n: int, free_js: Sequence[int]) -> dict[int, tuple[str, int]]:
    conv = _CONVENTIONS.get(n, {}).get("params", {})
    by_j = {j: (nm, sgn) for nm, (j, sgn) in conv.items()}
    if all(j in by_j for j in free_js):
        return {j: by_j[j] for j in free_js}
    return {j: (f"p{j}", 1) for j in free_js}


def derive_families(n: int, d: int, *, check_feasible: bool = True) -> list[ShadowFamily]:
    """Possible (code, shadow) enumerator pairs of singly even self-dual [n, n/2, >=d] codes.

    Families with no admissible parameter value are dropped, so the result
    may be empty.
    """
    if n % 2 or d % 2 or d <= 0:
        raise InfeasibleError("need even length and even minimum weight")
    m = n // 2
    gs = [expand_fsd_basis(m, j) for j in range(m // 4 + 1)]
    M = len(gs) - 1
    unknowns = [f"_p{j}" for j in range(1, M + 1)]
    gleason: list[AffineExpr] = [AffineExpr.const(1)] + [
        AffineExpr.param(u) * (1 / shadow_scale(m, j)) for j, u in enumerate(unknowns, start=1)
    ]

    def code_coeff(w: int, gl) -> AffineExpr:
        acc = AffineExpr()
        for c, g in zip(gl, gs):
            if g[w]:
                acc = acc + c * g[w]
        return acc

    base_eqs = [code_coeff(2 * i, gleason) for i in range(1, d // 2)]
    shadow_all = _shadow_from_gleason(gleason, n)

    keys = _family_keys(m, d)
    order = _CONVENTIONS.get(n, {}).get("order")
    if order is not None and sorted(order, key=lambda k: (k is None, k or 0)) == keys:
        keys = list(order)

    families: list[ShadowFamily] = []
    for key in keys:
        fixed = _constraints(m, d, key)
        eqs = list(base_eqs)
        for w, v in fixed.items():
            eqs.append(shadow_all[w] - v)
        try:
            solved, free = _solve_affine(eqs, unknowns)
        except InfeasibleError:
            continue
        free_js = [int(u[2:]) for u in free]
        naming = _names_for(n, free_js)
        rename = {f"_p{j}": AffineExpr.param(nm) * sgn for j, (nm, sgn) in naming.items()}
        gl = [g.substitute(solved).substitute(rename) for g in gleason]
        names = tuple(nm for _, (nm, _) in sorted(naming.items()))
        conv = list(_CONVENTIONS.get(n, {}).get("params", {}))
        if set(names) <= set(conv):
            names = tuple(nm for nm in conv if nm in names)
        code_exprs = tuple(code_coeff(w, gl) for w in range(n + 1))
        shadow_exprs = tuple(
            e if isinstance(e, AffineExpr) else AffineExpr.const(e) for e in _shadow_from_gleason(gl, n)
        )
        pwe = ParametricWE(n, d, GleasonBasis.FSD_EVEN, code_exprs, names, tuple(gl))
        everything = code_exprs + shadow_exprs
        prange = None
        vals = None
        if check_feasible:
            if not names:
                if any(e.constant < 0 or e.constant.denominator != 1 for e in everything):
                    continue
            elif len(names) == 1:
                vals_list = _feasible_values(everything, names[0])
                if vals_list is not None:
                    if not vals_list:
                        continue
                    prange = (vals_list[0], vals_list[-1])
                    vals = tuple(vals_list)
            elif not _lp_feasible(everything, names):
                continue
        families.append(
            ShadowFamily(n, d, 0, tuple(sorted(fixed.items())), pwe, shadow_exprs, prange, vals)
        )
    return [
        ShadowFamily(f.n, f.d, i, f.fixed_shadow, f.code_we, f.shadow_exprs, f.param_range, f.values)
        for i, f in enumerate(families, start=1)
    ]


def pair_constraint(family: ShadowFamily) -> tuple[AffineExpr, AffineExpr] | None:
    """``(A_d, S_(d-s))`` for a family with a single shadow vector of weight s.

    Adding that vector to each shadow vector of weight ``d - s`` gives distinct
    codewords of weight d, so ``A_d >= S_(d-s)``.
    """
    s = family.leading_shadow_weight
    if s is None:
        return None
    return family.code(family.d), family.shadow(family.d - s)


def bound_parameter(family: ShadowFamily, max_Ad: int) -> list[int]:
    """Admissible values of a one-parameter family subject to ``A_d < max_Ad``."""
    if len(family.free_params) != 1:
        raise ValueError("bounding needs a one-parameter family")
    if family.values is None:
        raise InfeasibleError("parameter range is unbounded")
    name = family.free_params[0]
    a_d = family.code(family.d)
    pair = pair_constraint(family)
    out = []
    for t in family.values:
        v = {name: t}
        if a_d.evaluate(v) >= max_Ad:
            continue
        if pair is not None and pair[0].evaluate(v) < pair[1].evaluate(v):
            continue
        out.append(t)
    return out


def bound_beta_54(family: ShadowFamily, max_A10: int) -> list[int]:
    """Surviving β for a length-54 family when ``A_10 < max_A10``."""
    if family.n != 54 or family.d != 10:
        raise ValueError("expects a family from derive_families(54, 10)")
    return bound_parameter(family, max_A10)


OPEN_EXISTENCE_NOTE = {
    112: "existence of an extremal singly even self-dual [112,56,20] code is open",
}
