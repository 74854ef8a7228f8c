"""Checkers that compute both sides of each identity and compare them exactly.

Left- and right-hand sides are assembled through different routes: symbolic
polynomials versus scalar numbers, polynomial composition versus binomial
sums, the unified engine versus independently coded generating functions.
"""

from __future__ import annotations

import enum
import itertools
import math
from fractions import Fraction
from typing import Iterable, Sequence

from . import combinatorial_bases as cb
from .exact_algebra import ArgumentError, TSeries, XPoly, as_fraction, series_mul
from .reports import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    ExactZero,
    FirstMismatch,
    IdentityReport,
    NumericDiagnostic,
    combine,
    first_mismatch,
    fmt,
    verdict_for,
)
from .unified_family import (
    FamilyParams,
    family_numbers,
    family_polynomials,
    family_series,
    denominator_series,
    numerator_series,
    reference_family,
)


class IdentityId(str, enum.Enum):
    ADD_11 = "ADD_11"
    SHIFT_12 = "SHIFT_12"
    EXPAND_13_14 = "EXPAND_13_14"
    REFLECT_15 = "REFLECT_15"
    CONV_16 = "CONV_16"
    MULTINOMIAL_17 = "MULTINOMIAL_17"
    NORLUND_18 = "NORLUND_18"
    NORLUND_19 = "NORLUND_19"
    CARLITZ_20 = "CARLITZ_20"
    CARLITZ_21 = "CARLITZ_21"
    GENSTIRLING_22 = "GENSTIRLING_22"
    STIRLING_23 = "STIRLING_23"
    LAGUERRE_24 = "LAGUERRE_24"
    JACOBI_25 = "JACOBI_25"
    HERMITE_26 = "HERMITE_26"
    LAH_9999 = "LAH_9999"
    BBH_28 = "BBH_28"


def table1_id(row: int) -> str:
    return f"TABLE1_ROW({row})"


TABLE1_EQUATIONS = {
    1: "M^[0,r]_n(x;1;a,b,c;lam) = B^(r)_n(x;lam;a,b,c)",
    2: "M^[0,r]_n(x;0;a,b,c;-lam) = (-1)^r E^(r)_n(x;lam;a,b,c)",
    3: "M^[0,r]_n(x;k;a,b,b;beta) = y^(r)_(n,beta)(x;k;a,b)",
    4: "M^[m-1,r]_n(x/ln a;1;1,c^(1/ln a),c;lam) ~ (ln a)^(mr) B^[m-1,r]_n(x;c,a;lam)",
    5: "M^[m-1,r]_n(x/ln a;0;1,c^(1/ln a),c;-lam) ~ (-1)^r (ln a)^(mr) E^[m-1,r]_n(x;c,a;lam)",
    6: "M^[m-1,1]_n(x;1;1,e,e;1) = B^[m-1]_n(x)",
    7: "M^[m-1,1]_n(x;0;1,e,e;-1) = -E^[m-1]_n(x)",
    8: "M^[m-1,r]_n(x;1;1,e,e;1) = B^[m-1,r]_n(x)",
    9: "M^[m-1,r]_n(x;0;1,e,e;-1) = (-1)^r E^[m-1,r]_n(x)",
    10: "M^[m-1,r]_n(x;1;1,e,e;-1) = (-1)^r 2^(-rm) G^[m-1,r]_n(x)",
    11: "M^[m-1,r]_n(x;1;1,e,e;lam) = B^[m-1,r]_n(x;lam)",
    12: "M^[m-1,r]_n(x;0;1,e,e;-lam) = (-1)^r E^[m-1,r]_n(x;lam)",
    13: "M^[0,r]_n(x;k;1,e,e;-alphas) = M^(r)_n(x;k;alphas)",
}


STRUCTURAL = (
    IdentityId.ADD_11, IdentityId.SHIFT_12, IdentityId.EXPAND_13_14,
    IdentityId.REFLECT_15, IdentityId.CONV_16, IdentityId.MULTINOMIAL_17,
)
MULTIPLICATION = (
    IdentityId.NORLUND_18, IdentityId.NORLUND_19, IdentityId.CARLITZ_20, IdentityId.CARLITZ_21,
)
CONNECTION = (
    IdentityId.GENSTIRLING_22, IdentityId.STIRLING_23, IdentityId.LAGUERRE_24,
    IdentityId.JACOBI_25, IdentityId.HERMITE_26, IdentityId.BBH_28,
)

# M_n(...) abbreviates M^{[m-1,r]}_n(...; k; a,b,c; alphas); D is the m=1,
# a=1, b=c=e specialisation.
EQUATIONS = {
    IdentityId.ADD_11: "M_n(x+y) = sum_l C(n,l) x^(n-l) (ln c)^(n-l) M_l(y)",
    IdentityId.SHIFT_12: "M_n(x+r; a,b,c) = M_n(x; a/c, b/c, c)",
    IdentityId.EXPAND_13_14: "M_n(x) = sum_l C(n,l) (x ln c)^(n-l) M_l(0) = sum_l C(n,n-l) (x ln c)^l M_(n-l)(0)",
    IdentityId.REFLECT_15: "M^[0,r]_n(r-x; alphas) = (-1)^(r(1-k)+n)/prod(alphas) sum_j C(n,j) (r ln(ab/c))^(n-j) M^[0,r]_j(x; 1/alphas)",
    IdentityId.CONV_16: "M^[m-1,r]_n(0) = sum_l C(n,l) M^[m-1,s]_l(0; alphas[:s]) M^[m-1,r-s]_(n-l)(0; alphas[s:])",
    IdentityId.MULTINOMIAL_17: "sum_{k1+..+kl=n} prod_i M^[m-1,r_i]_(k_i)(x_i)/k_i! = M^[m-1,|r|]_n(|x|)/n!",
    IdentityId.NORLUND_18: "sum_s prod alpha_(i-1)^(s_i) D_l(x + |s|/n; alphas^n) = n^(rk-l) D_l(nx; alphas)",
    IdentityId.NORLUND_19: "sum_s prod alpha_(i-1)^(s_i) D_(r+l)(x + |s|/n; k; alphas^n) = n^(r(k-1)-l) 2^(-r) (l+r)!/l! D_l(nx; k-1; alphas)",
    IdentityId.CARLITZ_20: "n^l sum_s prod alpha^(q s_i) D_l(x/n + |s|q/n; alphas^n) = q^(l-rk) n^(rk) sum_p prod alpha^(n p_i) D_l(x/q + |p|n/q; alphas^q)",
    IdentityId.CARLITZ_21: "n^(l+r) sum_s prod alpha^(q s_i) D_(l+r)(x/n + |s|q/n; k; alphas^n) = q^(l-r(k-1)) n^(rk) 2^(-r) (l+r)!/l! sum_p prod alpha^(n p_i) D_l(x/q + |p|n/q; k-1; alphas^q)",
    IdentityId.GENSTIRLING_22: "M_n(x) = sum_j (x; nodes)_j sum_(l>=j) C(n,n-l) (ln c)^l S(l,j; nodes) M_(n-l)(0)",
    IdentityId.STIRLING_23: "M_n(x) = sum_j (x)_j sum_(l>=j) C(n,n-l) (ln c)^l S(l,j) M_(n-l)(0)",
    IdentityId.LAGUERRE_24: "M_n(x) = sum_j sum_(l>=j) (-1)^j l! C(n,n-l) (ln c)^l C(l+a,l-j) L^(a)_j(x) M_(n-l)(0)",
    IdentityId.JACOBI_25: "M_n(x) = sum_j sum_(l>=j) (-1)^j l! C(n,n-l) (ln c)^l C(l+a,l-j) (a+b+2j+1)/(a+b+j+1)_(l+1) P^(a,b)_j(1-2x) M_(n-l)(0)",
    IdentityId.HERMITE_26: "M_n(x) = sum_j sum_(l>=2j) 2^(-l) C(n,n-l) C(l,2j) (2j)!/j! (ln c)^l H_(l-2j)(x) M_(n-l)(0)",
    IdentityId.LAH_9999: "M^(r)_n(x; k; alphas) = n!/prod(alphas) sum_(m>=r) 2^((1-k)(r-m)) prod(betas[:m]) C(m,r; 1/alphas; 1/betas) M^(m)_(n+k(m-r))(x; k; betas[:m]) / (n+k(m-r))!",
    IdentityId.BBH_28: "p_n(x; k, r) = prod(alphas)/(r k!) (x/(1+ax))^(rk) sum_j s(r,j; 1/alphas) sum_l j^(n-l) C(n,l) M^(r)_l((1+bx)/(1+ax); k; alphas)",
}


def _report(id_, params_text: str, order: int, residual, notes=(), variants=()) -> IdentityReport:
    if isinstance(id_, IdentityId):
        equation = EQUATIONS[id_]
    else:
        equation = TABLE1_EQUATIONS.get(int(id_[len("TABLE1_ROW("):-1]), "")
    return IdentityReport(
        id=str(id_.value if isinstance(id_, IdentityId) else id_),
        equation=equation,
        params=params_text,
        order=order,
        residual=residual,
        verdict=verdict_for(residual),
        notes=tuple(notes),
        variants=tuple(variants),
    )


def _poly_sum(terms: Iterable[XPoly]) -> XPoly:
    out = XPoly()
    for t in terms:
        out = out + t
    return out


def _shift_poly(p: XPoly, shift, scale=1) -> XPoly:
    """p(scale*x + shift)."""
    return p(XPoly((as_fraction(shift), as_fraction(scale))))


def _require_power_series(*params: FamilyParams) -> None:
    from .unified_family import pole_order
    from .exact_algebra import PoleError

    for p in params:
        v = pole_order(p)
        if v:
            raise PoleError(v, f"pole of order {v} at t=0 for {p.describe()}")


# ---------------------------------------------------------------------------
# structural identities


def check_structural(id_, params: FamilyParams, order: int = 10, *, y=1, split: int | None = None,
                     blocks: Sequence[tuple[int, object]] | None = None) -> IdentityReport:
    id_ = IdentityId(id_)
    if id_ not in STRUCTURAL:
        raise ArgumentError(f"{id_.value} is not a structural identity")
    text = params.describe()
    notes: list[str] = []
    N = order

    if id_ is IdentityId.ADD_11:
        y = as_fraction(y)
        polys = family_polynomials(params, N)
        lhs = [_shift_poly(p, y) for p in polys]
        vals_y = [p(y) for p in polys]
        lc = params.log_c
        rhs = [
            _poly_sum(XPoly.monomial(n - l, math.comb(n, l) * lc ** (n - l) * vals_y[l]) for l in range(n + 1))
            for n in range(N + 1)
        ]
        text += f" y={y}"
        return _report(id_, text, N, first_mismatch(lhs, rhs))

    if id_ is IdentityId.SHIFT_12:
        polys = family_polynomials(params, N)
        shifted = params.replace(log_a=params.log_a - params.log_c, log_b=params.log_b - params.log_c)
        lhs = [_shift_poly(p, params.r) for p in polys]
        rhs = list(family_polynomials(shifted, N))
        return _report(id_, text, N, first_mismatch(lhs, rhs))

    if id_ is IdentityId.EXPAND_13_14:
        polys = list(family_polynomials(params, N))
        nums = family_numbers(params, N, route="scalar")
        lc = params.log_c
        rhs13 = [
            _poly_sum(XPoly.monomial(n - l, math.comb(n, l) * lc ** (n - l) * nums[l]) for l in range(n + 1))
            for n in range(N + 1)
        ]
        rhs14 = [
            _poly_sum(XPoly.monomial(l, math.comb(n, n - l) * lc**l * nums[n - l]) for l in range(n + 1))
            for n in range(N + 1)
        ]
        return _report(id_, text, N, combine(first_mismatch(polys, rhs13), first_mismatch(polys, rhs14)))

    if id_ is IdentityId.REFLECT_15:
        if params.m != 1:
            raise ArgumentError("the reflection identity needs m = 1")
        if any(a == 0 for a in params.alphas):
            raise ArgumentError("the reflection identity needs every alpha_i != 0")
        r = params.r
        polys = family_polynomials(params, N)
        recip = family_polynomials(params.replace(alphas=tuple(1 / a for a in params.alphas)), N)
        lhs = [_shift_poly(p, r, -1) for p in polys]
        prod = math.prod(params.alphas, start=Fraction(1))
        u = r * (params.log_a + params.log_b - params.log_c)
        rhs = []
        for n in range(N + 1):
            sign = (-1) ** (r * (1 - params.k) + n)
            s = _poly_sum(recip[j] * (math.comb(n, j) * u ** (n - j)) for j in range(n + 1))
            rhs.append(s * (Fraction(sign) / prod))
        return _report(id_, text, N, first_mismatch(lhs, rhs))

    if id_ is IdentityId.CONV_16:
        s = params.r // 2 if split is None else split
        if not 0 <= s <= params.r:
            raise ArgumentError(f"split {s} outside 0..{params.r}")
        left = params.replace(alphas=params.alphas[:s])
        right = params.replace(alphas=params.alphas[s:])
        full = family_numbers(params, N)
        A, B = family_numbers(left, N), family_numbers(right, N)
        rhs = [sum(math.comb(n, l) * A[l] * B[n - l] for l in range(n + 1)) for n in range(N + 1)]
        text += f" split={s}"
        return _report(id_, text, N, first_mismatch(full, rhs))

    # MULTINOMIAL_17
    if blocks is None:
        blocks = [(params.r, 0)]
    sizes = [int(b[0]) for b in blocks]
    shifts = [as_fraction(b[1]) for b in blocks]
    if sum(sizes) != params.r or any(s < 0 for s in sizes):
        raise ArgumentError(f"block sizes {sizes} must partition r={params.r}")
    starts = list(itertools.accumulate([0] + sizes))
    block_polys = []
    for i, size in enumerate(sizes):
        bp = family_polynomials(params.replace(alphas=params.alphas[starts[i]:starts[i + 1]]), N)
        # block 0 carries the symbolic x, the rest are evaluated at x_i
        if i == 0:
            block_polys.append([_shift_poly(p, shifts[0]) for p in bp])
        else:
            block_polys.append([XPoly((p(shifts[i]),)) for p in bp])
    lhs = []
    for n in range(N + 1):
        acc = XPoly()
        for comp in _compositions(n, len(sizes)):
            term = XPoly((Fraction(1, math.prod(math.factorial(c) for c in comp)),))
            for i, c in enumerate(comp):
                term = term * block_polys[i][c]
            acc = acc + term
        lhs.append(acc)
    total = sum(shifts, Fraction(0))
    full = family_polynomials(params, N)
    rhs = [_shift_poly(p, total) / math.factorial(n) for n, p in enumerate(full)]
    text += " blocks=" + ";".join(f"({s},{fmt(x)})" for s, x in zip(sizes, shifts))
    return _report(id_, text, N, first_mismatch(lhs, rhs))


def _compositions(n: int, parts: int):
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


def reflect_sequence(polys: Sequence[XPoly], params: FamilyParams) -> tuple[list[XPoly], FamilyParams]:
    """Map M(x; alphas) to M(x; 1/alphas) by inverting the reflection identity."""
    if params.m != 1 or any(a == 0 for a in params.alphas):
        raise ArgumentError("reflection needs m = 1 and nonzero alphas")
    r = params.r
    prod = math.prod(params.alphas, start=Fraction(1))
    u = r * (params.log_a + params.log_b - params.log_c)
    w = [
        _shift_poly(p, r, -1) * (prod * (-1) ** (m + r * (1 - params.k)))
        for m, p in enumerate(polys)
    ]
    out = [
        _poly_sum(w[m] * (math.comb(n, m) * (-u) ** (n - m)) for m in range(n + 1))
        for n in range(len(polys))
    ]
    return out, params.replace(alphas=tuple(1 / a for a in params.alphas))


# ---------------------------------------------------------------------------
# multiplication theorems


def _d_params(alphas, k: int) -> FamilyParams:
    return FamilyParams(k, 1, tuple(alphas), 0, 1, 1)


def _weighted_shift_sum(polys, alphas, n: int, weight_power: int, arg_scale, shift_unit, ell: int) -> XPoly:
    """sum_{s in [0,n)^r} prod alpha_i^(weight_power s_i) P_ell(arg_scale x + |s| shift_unit)."""
    r = len(alphas)
    acc = XPoly()
    for s in itertools.product(range(n), repeat=r):
        w = Fraction(1)
        for a, si in zip(alphas, s):
            w *= a ** (weight_power * si)
        acc = acc + _shift_poly(polys[ell], sum(s) * shift_unit, arg_scale) * w
    return acc


def check_multiplication(id_, params: FamilyParams, n: int, mm: int | None = None,
                         ell_max: int = 6) -> IdentityReport:
    """Norlund and Carlitz multiplication theorems at ``m=1, a=1, b=c=e``.

    ``mm`` is the second modulus of the Carlitz forms.
    """
    id_ = IdentityId(id_)
    if id_ not in MULTIPLICATION:
        raise ArgumentError(f"{id_.value} is not a multiplication theorem")
    if params.m != 1 or (params.log_a, params.log_b, params.log_c) != (0, 1, 1):
        raise ArgumentError("multiplication theorems need m=1, a=1, b=c=e")
    if n < 1:
        raise ArgumentError("modulus n must be >= 1")
    if id_ in (IdentityId.CARLITZ_20, IdentityId.CARLITZ_21) and (mm is None or mm < 1):
        raise ArgumentError("second modulus must be >= 1")
    r, k, al = params.r, params.k, params.alphas
    shifted_index = id_ in (IdentityId.NORLUND_19, IdentityId.CARLITZ_21)
    if shifted_index and k < 1:
        raise ArgumentError("the k-1 forms need k >= 1")
    order = ell_max + (r if shifted_index else 0)
    text = params.describe() + f" n={n}" + (f" second_modulus={mm}" if mm is not None else "")
    notes: list[str] = []
    lhs, rhs, printed = [], [], []

    if id_ in (IdentityId.NORLUND_18, IdentityId.NORLUND_19):
        pow_n = _d_params([a**n for a in al], k)
        _require_power_series(pow_n)
        left = family_polynomials(pow_n, order)
        if id_ is IdentityId.NORLUND_18:
            right = family_polynomials(params, order)
            for ell in range(ell_max + 1):
                lhs.append(_weighted_shift_sum(left, al, n, 1, 1, Fraction(1, n), ell))
                rhs.append(right[ell].scale_var(n) * Fraction(n) ** (r * k - ell))
        else:
            lower = _d_params(al, k - 1)
            _require_power_series(lower)
            right = family_polynomials(lower, order)
            for ell in range(ell_max + 1):
                lhs.append(_weighted_shift_sum(left, al, n, 1, 1, Fraction(1, n), ell + r))
                base = right[ell].scale_var(n) * (Fraction(n) ** (r * (k - 1) - ell)
                                                  * math.factorial(ell + r) / math.factorial(ell))
                rhs.append(base / 2**r)
                printed.append(base)
            notes.append("right side carries 2^(-r) from the t^r 2^(-r) ratio between k and k-1")
    else:
        pow_n = _d_params([a**n for a in al], k)
        pow_m = _d_params([a**mm for a in al], k if id_ is IdentityId.CARLITZ_20 else k - 1)
        _require_power_series(pow_n, pow_m)
        left = family_polynomials(pow_n, order)
        right = family_polynomials(pow_m, order)
        for ell in range(ell_max + 1):
            if id_ is IdentityId.CARLITZ_20:
                lhs.append(_weighted_shift_sum(left, al, n, mm, Fraction(1, n), Fraction(mm, n), ell)
                           * Fraction(n) ** ell)
                s = _weighted_shift_sum(right, al, mm, n, Fraction(1, mm), Fraction(n, mm), ell)
                rhs.append(s * (Fraction(mm) ** (ell - r * k) * Fraction(n) ** (r * k)))
            else:
                lhs.append(_weighted_shift_sum(left, al, n, mm, Fraction(1, n), Fraction(mm, n), ell + r)
                           * Fraction(n) ** (ell + r))
                s = _weighted_shift_sum(right, al, mm, n, Fraction(1, mm), Fraction(n, mm), ell)
                base = s * (Fraction(mm) ** (ell - r * (k - 1)) * Fraction(n) ** (r * k) / 2**r)
                rhs.append(base * Fraction(math.factorial(ell + r), math.factorial(ell)))
                printed.append(base)
        if id_ is IdentityId.CARLITZ_21:
            notes.append("right side carries (l+r)!/l! from the index shift D_(l+r)(k) -> D_l(k-1)")
    residual = first_mismatch(lhs, rhs)
    variants = []
    if printed:
        pres = first_mismatch(lhs, printed)
        variants.append(("printed", verdict_for(pres), pres))
        variants.append(("derived", verdict_for(residual), residual))
    return _report(id_, text, ell_max, residual, notes, variants)


# ---------------------------------------------------------------------------
# connection formulas


def _connection_rhs(nums, log_c, N, coeff_of_power) -> list[XPoly]:
    """sum_l C(n,l) (ln c)^l x^l M_(n-l)(0) with x^l replaced by coeff_of_power(l)."""
    out = []
    for n in range(N + 1):
        acc = XPoly()
        for l in range(n + 1):
            w = math.comb(n, n - l) * log_c**l * nums[n - l]
            if w:
                acc = acc + coeff_of_power(l) * w
        out.append(acc)
    return out


def check_connection(id_, params: FamilyParams, order: int = 8, *, nodes: Sequence | None = None,
                     alpha=0, beta=0, x=None, a=None, b=None,
                     factorial_mode=cb.DEFAULT_FACTORIAL_MODE) -> IdentityReport:
    id_ = IdentityId(id_)
    if id_ not in CONNECTION:
        raise ArgumentError(f"{id_.value} is not a connection formula")
    if id_ is IdentityId.BBH_28:
        return _check_bbh(params, order, x, a, b, factorial_mode)
    N = order
    text = params.describe()
    lhs = list(family_polynomials(params, N))
    nums = family_numbers(params, N, route="scalar")
    lc = params.log_c

    if id_ in (IdentityId.GENSTIRLING_22, IdentityId.STIRLING_23):
        if id_ is IdentityId.STIRLING_23:
            nodes = cb.ordinary_nodes(N)
            S = cb.stirling_matrix("second", N)
        else:
            if nodes is None:
                raise ArgumentError("generalized Stirling check needs a node sequence")
            nodes = tuple(as_fraction(v) for v in nodes)
            S = cb.gen_stirling_matrix("second", N, nodes)
            text += " nodes=(" + ",".join(fmt(v) for v in nodes) + ")"
        ff = [cb.falling_factorial_poly(nodes, j) for j in range(N + 1)]
        rhs = []
        for n in range(N + 1):
            acc = XPoly()
            for j in range(n + 1):
                inner = sum(
                    (math.comb(n, n - l) * lc**l * S(l, j) * nums[n - l] for l in range(j, n + 1)),
                    Fraction(0),
                )
                acc = acc + ff[j] * inner
            rhs.append(acc)
        return _report(id_, text, N, first_mismatch(lhs, rhs))

    kind = {
        IdentityId.LAGUERRE_24: cb.OrthoKind.LAGUERRE,
        IdentityId.JACOBI_25: cb.OrthoKind.JACOBI,
        IdentityId.HERMITE_26: cb.OrthoKind.HERMITE,
    }[id_]
    alpha, beta = as_fraction(alpha), as_fraction(beta)
    if kind is cb.OrthoKind.LAGUERRE:
        text += f" laguerre_alpha={fmt(alpha)}"
    elif kind is cb.OrthoKind.JACOBI:
        text += f" jacobi=({fmt(alpha)},{fmt(beta)})"
    basis = [cb.basis_poly(kind, j, alpha, beta) for j in range(N + 1)]

    def expand(l):
        c = cb.monomial_expand(kind, l, alpha, beta)
        return _poly_sum(basis[j] * cj for j, cj in enumerate(c) if cj)

    rhs = _connection_rhs(nums, lc, N, expand)
    return _report(id_, text, N, first_mismatch(lhs, rhs))


def bbh_rhs(params: FamilyParams, order: int, x, a, b, prefactor: Fraction) -> list[Fraction]:
    """Right side of the BBH/Stirling identity with an explicit factorial prefactor."""
    x, a, b = as_fraction(x), as_fraction(a), as_fraction(b)
    if params.m != 1 or (params.log_a, params.log_b, params.log_c) != (0, 1, 1):
        raise ArgumentError("the BBH identity uses m=1, a=1, b=c=e on the family side")
    if any(al == 0 for al in params.alphas):
        raise ArgumentError("the BBH identity needs every alpha_i != 0")
    d = 1 + a * x
    if not d:
        raise ArgumentError("singular parameters: 1 + a*x = 0")
    r, k = params.r, params.k
    w = (1 + b * x) / d
    Mw = family_polynomials(params, order).at(w)
    recip = [1 / al for al in params.alphas]
    s = [cb.gen_stirling("first", r, j, recip) for j in range(r + 1)]
    lead = math.prod(params.alphas, start=Fraction(1)) * prefactor * (x / d) ** (r * k)
    out = []
    for n in range(order + 1):
        acc = Fraction(0)
        for j in range(r + 1):
            if not s[j]:
                continue
            acc += s[j] * sum(
                (Fraction(j) ** (n - l) * math.comb(n, l) * Mw[l] for l in range(n + 1)), Fraction(0)
            )
        out.append(lead * acc)
    return out


def rhs_prefactor(r: int, k: int, reading: str = "precedence") -> Fraction:
    """1/(r k!) read by ordinary precedence, or 1/((rk)!) when reading='grouped'."""
    if reading == "precedence":
        return Fraction(1, r * math.factorial(k))
    if reading == "grouped":
        return Fraction(1, math.factorial(r * k))
    raise ArgumentError(f"unknown reading {reading!r}")


def _check_bbh(params: FamilyParams, order: int, x, a, b, factorial_mode) -> IdentityReport:
    if x is None or a is None or b is None:
        raise ArgumentError("BBH check needs x, a, b")
    mode = cb.FactorialMode(factorial_mode)
    r, k = params.r, params.k
    lhs = cb.bbh_basis(x, k, r, a, b, order, mode)
    rhs = bbh_rhs(params, order, x, a, b, rhs_prefactor(r, k, "precedence"))
    text = params.describe() + f" x={fmt(as_fraction(x))} a={fmt(as_fraction(a))} b={fmt(as_fraction(b))} mode={mode.value}"
    notes = ["right-side prefactor read as 1/(r*k!) (factorial binds tighter than the product)"]
    grouped = first_mismatch(lhs, bbh_rhs(params, order, x, a, b, rhs_prefactor(r, k, "grouped")))
    variants = [("rhs-grouped-(rk)!", verdict_for(grouped), grouped)]
    return _report(IdentityId.BBH_28, text, order, first_mismatch(lhs, rhs), notes, variants)


# ---------------------------------------------------------------------------
# generalized Lah expansion


def lah_rhs(r: int, alphas, betas, k: int, n: int, M_max: int, x=None, denominator: str = "derived"):
    """Truncated right side of the Lah expansion (terms m = r..M_max).

    ``denominator="printed"`` uses (n + k(m-1))! in place of (n + k(m-r))!.
    Returns an XPoly, or a scalar when ``x`` is given.
    """
    alphas = [as_fraction(v) for v in alphas]
    betas = [as_fraction(v) for v in betas]
    if M_max < r:
        raise ArgumentError(f"M_max={M_max} < r={r}")
    if len(betas) < M_max:
        raise ArgumentError(f"need {M_max} betas, have {len(betas)}")
    if any(v == 0 for v in alphas) or any(v == 0 for v in betas[:M_max]):
        raise ArgumentError("alphas and betas must be nonzero")
    C = cb.gen_lah(r, [1 / v for v in alphas], [1 / v for v in betas[:M_max]], M_max)
    prod_alpha = math.prod(alphas, start=Fraction(1))
    acc = XPoly()
    top = n + k * (M_max - r)
    for m in range(r, M_max + 1):
        c = C(m, r)
        if not c:
            continue
        p = _d_params(betas[:m], k)
        _require_power_series(p)
        idx = n + k * (m - r)
        D = family_polynomials(p, top)[idx]
        den_index = idx if denominator == "derived" else n + k * (m - 1)
        w = (Fraction(2) ** ((1 - k) * (r - m)) * math.prod(betas[:m], start=Fraction(1)) * c
             / math.factorial(den_index))
        acc = acc + D * w
    acc = acc * (Fraction(math.factorial(n)) / prod_alpha)
    return acc if x is None else acc(as_fraction(x))


def _magnitude(v) -> Fraction:
    if isinstance(v, XPoly):
        return max((abs(c) for c in v.coeffs), default=Fraction(0))
    return abs(Fraction(v))


def check_lah(r: int, alphas, betas, k: int, n: int, levels: Sequence[int] | None = None,
              x=None) -> IdentityReport:
    """Compare M^(r)_n with the truncated Lah expansion at each truncation level."""
    alphas = [as_fraction(v) for v in alphas]
    betas = [as_fraction(v) for v in betas]
    if len(alphas) != r:
        raise ArgumentError(f"need r={r} alphas")
    if levels is None:
        levels = [r + 2, r + 4, r + 6, r + 8]
    levels = list(levels)
    if any(L < r for L in levels):
        raise ArgumentError(f"truncation level below r={r}")
    p = _d_params(alphas, k)
    _require_power_series(p)
    lhs = family_polynomials(p, n)[n]
    if x is not None:
        lhs = lhs(as_fraction(x))
    residuals = [lhs - lah_rhs(r, alphas, betas, k, n, L, x) for L in levels]
    text = (f"r={r} k={k} n={n} alphas=({','.join(fmt(v) for v in alphas)}) "
            f"betas=({','.join(fmt(v) for v in betas[:max(levels)])})"
            + (f" x={fmt(as_fraction(x))}" if x is not None else ""))
    notes = ["denominator (n+k(m-r))! from matching t^(k(r-m)) * sum_j M_j t^j/j!"]
    printed = [lhs - lah_rhs(r, alphas, betas, k, n, L, x, denominator="printed") for L in levels]
    printed_mags = tuple(_magnitude(v) for v in printed)
    if all(not v for v in residuals):
        residual = ExactZero()
        verdict = PASS
    else:
        residual = NumericDiagnostic(tuple(levels), tuple(_magnitude(v) for v in residuals))
        verdict = INCONCLUSIVE
    notes.append("printed (n+k(m-1))! denominator residuals: "
                 + ", ".join(f"M={L}:{float(v):.3e}" for L, v in zip(levels, printed_mags)))
    return IdentityReport(
        id=IdentityId.LAH_9999.value,
        equation=EQUATIONS[IdentityId.LAH_9999],
        params=text,
        order=n,
        residual=residual,
        verdict=verdict,
        notes=tuple(notes),
    )


# ---------------------------------------------------------------------------
# reductions to known families, one per parameter-table row


def _polys(params: FamilyParams, N: int) -> list[XPoly]:
    return list(family_polynomials(params, N))


def _ref(kind, N, **kw) -> list[XPoly]:
    return list(reference_family(kind, N, **kw).polys)


def _scaled(seq, c) -> list[XPoly]:
    return [p * c for p in seq]


def _k_shift(base: list[XPoly], s: int, N: int) -> list[XPoly]:
    """Coefficients of t^s 2^(-s) F from those of F."""
    out = []
    for n in range(N + 1):
        if n < s:
            out.append(XPoly())
        else:
            out.append(base[n - s] * Fraction(math.factorial(n), math.factorial(n - s) * 2**s))
    return out


def _convolution_power(params_one: FamilyParams, r: int, log_c, N: int) -> list[XPoly]:
    """Order-r family assembled as the r-th power of the order-1 numbers times c^(xt)."""
    nums = family_numbers(params_one, N)
    F = TSeries(N, tuple(v / math.factorial(j) for j, v in enumerate(nums))) ** r
    from .exact_algebra import series_exp_linear, extract_poly
    carrier = series_exp_linear(XPoly((0, as_fraction(log_c))), N)
    G = series_mul(F.map(lambda c: XPoly((c,))), carrier)
    return [extract_poly(G, n) for n in range(N + 1)]


def _defining_relation(params: FamilyParams, N: int):
    """denominator * F == numerator, multiplied out with series_mul."""
    F = family_series(params, N)
    den = denominator_series(params, N).map(lambda c: XPoly((c,)))
    lhs = series_mul(F, den)
    rhs = numerator_series(params, N)
    return first_mismatch(list(lhs.coeffs), list(rhs.coeffs))


def table1_check(row: int, sample: dict | None = None, order: int = 10,
                 row13_sign: str = "both") -> IdentityReport:
    """Check one reduction row of the parameter table.

    ``sample`` keys (all optional): r, lam, m, k, beta, L, log_a, log_b,
    log_c, alphas. For row 13 ``row13_sign`` selects ``"printed"`` (negated
    alphas), ``"corrected"`` or ``"both"``.
    """
    s = dict(sample or {})
    N = order
    r = int(s.get("r", 1))
    lam = as_fraction(s.get("lam", 2))
    m = int(s.get("m", 1))
    k = int(s.get("k", 1))
    la, lb, lc = (as_fraction(s.get(key, d)) for key, d in (("log_a", 0), ("log_b", 1), ("log_c", 1)))
    checks: list[tuple[str, object]] = []
    notes: list[str] = []

    def P(k_, m_, alphas, a=la, b=lb, c=lc):
        return FamilyParams(k_, m_, tuple(alphas), a, b, c)

    def add(label, lhs, rhs):
        checks.append((label, first_mismatch(lhs, rhs)))

    if row == 1:
        add("vs generalized Bernoulli (a,b,c)",
            _polys(P(1, 1, [lam] * r), N),
            _ref("SrivastavaBernoulli", N, power=r, lam=lam, log_a=la, log_b=lb, log_c=lc))
        text = f"r={r} lam={fmt(lam)} log_a={fmt(la)} log_b={fmt(lb)} log_c={fmt(lc)}"
    elif row == 2:
        add("vs (-1)^r generalized Euler (a,b,c)",
            _polys(P(0, 1, [-lam] * r), N),
            _scaled(_ref("SrivastavaEuler", N, power=r, lam=lam, log_a=la, log_b=lb, log_c=lc), (-1) ** r))
        text = f"r={r} lam={fmt(lam)} log_a={fmt(la)} log_b={fmt(lb)} log_c={fmt(lc)}"
    elif row == 3:
        beta = as_fraction(s.get("beta", lam))
        engine = _polys(P(k, 1, [beta] * r, la, lb, lb), N)
        if k == 0:
            ref = _scaled(_ref("SrivastavaEuler", N, power=r, lam=-beta, log_a=la, log_b=lb, log_c=lb), (-1) ** r)
            add("k=0 vs (-1)^r generalized Euler at lam=-beta, c=b", engine, ref)
        else:
            base = _ref("SrivastavaBernoulli", N, power=r, lam=beta, log_a=la, log_b=lb, log_c=lb)
            add(f"k={k} vs t^(r(k-1)) 2^(-r(k-1)) times generalized Bernoulli, c=b",
                engine, _k_shift(base, r * (k - 1), N))
        checks.append(("defining relation", _defining_relation(P(k, 1, [beta] * r, la, lb, lb), N)))
        notes.append("target family defined by this row; checked through the c=b Bernoulli/Euler reductions")
        text = f"r={r} k={k} beta={fmt(beta)} log_a={fmt(la)} log_b={fmt(lb)}"
    elif row in (4, 5):
        L = as_fraction(s.get("L", Fraction(1, 2)))
        if not L:
            raise ArgumentError("row 4/5 needs ln a != 0")
        kk, al = (1, [lam] * r) if row == 4 else (0, [-lam] * r)

        def scaled_engine(m_):
            seq = _polys(P(kk, m_, al, 0, lc / L, lc), N)
            return [p.scale_var(1 / L) * L**n for n, p in enumerate(seq)]

        if row == 4:
            add("m=1: (ln a)^n M_n(x/ln a) vs (ln a)^r generalized Bernoulli (1,c,c)",
                scaled_engine(1),
                _scaled(_ref("SrivastavaBernoulli", N, power=r, lam=lam, log_a=0, log_b=lc, log_c=lc), L**r))
            add(f"ln a=1, c=e, m={m}: vs generalized Apostol-Bernoulli",
                _polys(P(1, m, [lam] * r, 0, 1, 1), N),
                _ref("TremblayBernoulli", N, power=r, lam=lam, m=m))
        else:
            add("m=1: (ln a)^n M_n(x/ln a) vs (-1)^r generalized Euler (1,c,c)",
                scaled_engine(1),
                _scaled(_ref("SrivastavaEuler", N, power=r, lam=lam, log_a=0, log_b=lc, log_c=lc), (-1) ** r))
            add(f"m={m}: order r equals r-fold convolution of order 1",
                _polys(P(0, m, al, 0, lc / L, lc), N),
                _convolution_power(P(0, m, al[:1], 0, lc / L, lc), r, lc, N))
            notes.append("the (ln a)^(mr) factor belongs to the external family's normalisation; "
                         "at m=1 the reduction holds without it")
        notes.append("t -> t ln a rescaling contributes (ln a)^n to the n-th coefficient")
        text = f"r={r} m={m} lam={fmt(lam)} ln_a={fmt(L)} log_c={fmt(lc)}"
    elif row == 6:
        add("vs Natalini-Bernardini generalized Bernoulli",
            _polys(P(1, m, [1], 0, 1, 1), N), _ref("NataliniBernoulli", N, m=m))
        text = f"m={m}"
    elif row == 7:
        add("m=1: vs -Euler", _polys(P(0, 1, [-1], 0, 1, 1), N),
            _scaled(_ref("ClassicalEuler", N, power=1), -1))
        checks.append((f"m={m} defining relation", _defining_relation(P(0, m, [-1], 0, 1, 1), N)))
        notes.append("general m is definitional; checked by multiplying back the denominator")
        text = f"m={m}"
    elif row == 8:
        add(f"m={m} vs generalized Apostol-Bernoulli at lam=1",
            _polys(P(1, m, [1] * r, 0, 1, 1), N), _ref("TremblayBernoulli", N, power=r, lam=1, m=m))
        add("m=1 vs Bernoulli of order r",
            _polys(P(1, 1, [1] * r, 0, 1, 1), N), _ref("ClassicalBernoulli", N, power=r))
        text = f"r={r} m={m}"
    elif row == 9:
        add("m=1: (-1)^r M vs Euler of order r",
            _scaled(_polys(P(0, 1, [-1] * r, 0, 1, 1), N), (-1) ** r), _ref("ClassicalEuler", N, power=r))
        add(f"m={m}: order r equals r-fold convolution of row 7",
            _polys(P(0, m, [-1] * r, 0, 1, 1), N), _convolution_power(P(0, m, [-1], 0, 1, 1), r, 1, N))
        checks.append((f"m={m} defining relation", _defining_relation(P(0, m, [-1] * r, 0, 1, 1), N)))
        text = f"r={r} m={m}"
    elif row == 10:
        add("r=m=1: M vs -1/2 Genocchi",
            _polys(P(1, 1, [-1], 0, 1, 1), N), _scaled(_ref("ClassicalGenocchi", N, power=1), Fraction(-1, 2)))
        add("m=1: M vs (-1)^r 2^(-r) Genocchi of order r",
            _polys(P(1, 1, [-1] * r, 0, 1, 1), N),
            _scaled(_ref("ClassicalGenocchi", N, power=r), Fraction((-1) ** r, 2**r)))
        add(f"m={m}: order r equals r-fold convolution of order 1",
            _polys(P(1, m, [-1] * r, 0, 1, 1), N), _convolution_power(P(1, m, [-1], 0, 1, 1), r, 1, N))
        checks.append((f"m={m} defining relation", _defining_relation(P(1, m, [-1] * r, 0, 1, 1), N)))
        text = f"r={r} m={m}"
    elif row == 11:
        add("vs generalized Apostol-Bernoulli",
            _polys(P(1, m, [lam] * r, 0, 1, 1), N), _ref("TremblayBernoulli", N, power=r, lam=lam, m=m))
        text = f"r={r} m={m} lam={fmt(lam)}"
    elif row == 12:
        add("m=1: (-1)^r M vs Apostol-Euler of order r",
            _scaled(_polys(P(0, 1, [-lam] * r, 0, 1, 1), N), (-1) ** r),
            _ref("ApostolEuler", N, power=r, lam=lam))
        add(f"m={m}: order r equals r-fold convolution of order 1",
            _polys(P(0, m, [-lam] * r, 0, 1, 1), N), _convolution_power(P(0, m, [-lam], 0, 1, 1), r, 1, N))
        checks.append((f"m={m} defining relation", _defining_relation(P(0, m, [-lam] * r, 0, 1, 1), N)))
        text = f"r={r} m={m} lam={fmt(lam)}"
    elif row == 13:
        return _table1_row13(s, N, row13_sign)
    else:
        raise ArgumentError(f"no table row {row}")

    residual = combine(*(res for _, res in checks))
    notes = [f"{label}: {verdict_for(res)}" for label, res in checks] + notes
    return _report(table1_id(row), text, N, residual, notes)


def _table1_row13(s: dict, N: int, sign: str) -> IdentityReport:
    alphas = tuple(as_fraction(v) for v in s.get("alphas", (2,)))
    k = int(s.get("k", 1))
    ref = _ref("ProductApostol", N, k=k, alphas=alphas)
    text = f"k={k} alphas=({','.join(fmt(v) for v in alphas)})"
    corrected = first_mismatch(_polys(FamilyParams(k, 1, alphas, 0, 1, 1), N), ref)
    try:
        printed = first_mismatch(_polys(FamilyParams(k, 1, tuple(-v for v in alphas), 0, 1, 1), N), ref)
    except ArithmeticError as exc:  # negated alphas can create a pole
        printed = FirstMismatch(0, Fraction(0), Fraction(0))
        text += f" (printed sign: {exc})"
    variants = (("printed (-alphas)", verdict_for(printed), printed),
                ("corrected (+alphas)", verdict_for(corrected), corrected))
    if sign == "printed":
        return _report(table1_id(13), text + " sign=printed", N, printed,
                       ["alphas negated as in the table"])
    if sign == "corrected":
        return _report(table1_id(13), text + " sign=corrected", N, corrected,
                       ["alphas used without the minus sign"])
    if sign != "both":
        raise ArgumentError(f"unknown row-13 sign choice {sign!r}")
    notes = [
        f"as printed with -alphas: {verdict_for(printed)}",
        f"without the minus sign: {verdict_for(corrected)}",
        "verdict follows the corrected form; the minus sign disagrees with the family's own generating function",
    ]
    return _report(table1_id(13), text, N, corrected, notes, variants)
