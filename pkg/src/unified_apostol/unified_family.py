"""The unified multiparameter Apostol-type family and its reference families.

The generating function is

    t^(r k m) 2^(r m (1-k)) c^(x t)
    ------------------------------------------------------------
    prod_{i<r} ( alpha_i b^t - a^t sum_{l<m} t^l / l! )

with ``a, b, c`` stored through their logarithms so every coefficient stays
rational (``log_b = 1`` means ``b = e``).
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact_algebra import (
    ArgumentError,
    PoleError,
    TSeries,
    XPoly,
    as_fraction,
    extract_poly,
    series_div,
    series_exp_linear,
    series_mul,
)

DEFAULT_ORDER = 12


@dataclass(frozen=True)
class FamilyParams:
    """Parameters ``(k, m, alphas, ln a, ln b, ln c)``; ``r = len(alphas)``."""

    k: int
    m: int
    alphas: tuple[Fraction, ...]
    log_a: Fraction = Fraction(0)
    log_b: Fraction = Fraction(1)
    log_c: Fraction = Fraction(1)

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 0:
            raise ArgumentError(f"k must be a natural number, got {self.k!r}")
        if not isinstance(self.m, int) or self.m < 1:
            raise ArgumentError(f"m must be a positive integer, got {self.m!r}")
        object.__setattr__(self, "alphas", tuple(as_fraction(a) for a in self.alphas))
        for name in ("log_a", "log_b", "log_c"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.log_a == self.log_b:
            warnings.warn("a == b (log_a == log_b); factors with alpha_i = 1 vanish", stacklevel=3)

    @property
    def r(self) -> int:
        return len(self.alphas)

    def replace(self, **changes) -> FamilyParams:
        fields = dict(
            k=self.k, m=self.m, alphas=self.alphas,
            log_a=self.log_a, log_b=self.log_b, log_c=self.log_c,
        )
        fields.update(changes)
        return FamilyParams(**fields)

    def describe(self) -> str:
        al = ",".join(str(a) for a in self.alphas)
        return (
            f"k={self.k} m={self.m} r={self.r} alphas=({al}) "
            f"log_a={self.log_a} log_b={self.log_b} log_c={self.log_c}"
        )

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "m": self.m,
            "r": self.r,
            "alphas": [str(a) for a in self.alphas],
            "log_a": str(self.log_a),
            "log_b": str(self.log_b),
            "log_c": str(self.log_c),
        }


def make_params(k, m, alphas, log_a=0, log_b=1, log_c=1) -> FamilyParams:
    return FamilyParams(k, m, tuple(alphas), log_a, log_b, log_c)


@dataclass(frozen=True)
class PolySequence:
    params: object
    order: int
    polys: tuple[XPoly, ...] = field(repr=False)

    def __getitem__(self, n: int) -> XPoly:
        return self.polys[n]

    def __len__(self) -> int:
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def at(self, x) -> list[Fraction]:
        x = as_fraction(x)
        return [p(x) for p in self.polys]


def _partial_exp(m: int, order: int) -> TSeries:
    return TSeries.from_coeffs([Fraction(1, math.factorial(l)) for l in range(m)], order)


def denominator_series(params: FamilyParams, order: int) -> TSeries:
    """prod_i (alpha_i e^(log_b t) - e^(log_a t) S_m(t)), truncated."""
    eb = series_exp_linear(params.log_b, order)
    ea_s = series_mul(series_exp_linear(params.log_a, order), _partial_exp(params.m, order))
    out = TSeries.one(order)
    for alpha in params.alphas:
        out = series_mul(out, eb.scale(alpha) - ea_s)
    return out


def _two_power(params: FamilyParams) -> Fraction:
    return Fraction(2) ** (params.r * params.m * (1 - params.k))


def _numerator_power(params: FamilyParams) -> int:
    return params.r * params.k * params.m


def numerator_series(params: FamilyParams, order: int) -> TSeries:
    """t^(rkm) 2^(rm(1-k)) exp(log_c x t) over XPoly."""
    carrier = series_exp_linear(XPoly((0, params.log_c)), order)
    return carrier.shift(_numerator_power(params)).scale(_two_power(params))


def numerator_scalars(params: FamilyParams, order: int) -> TSeries:
    """The numerator at x = 0: t^(rkm) 2^(rm(1-k))."""
    # computed apart from _two_power so the two routes stay independent
    scale = Fraction(2) ** (params.r * params.m * (1 - params.k))
    return TSeries.monomial(_numerator_power(params), order, scale)


def _quotient(numerator, params: FamilyParams, order: int) -> TSeries:
    # each factor has valuation <= m unless it vanishes, so r*m spare terms suffice
    work = order + params.r * params.m
    q = series_div(numerator(params, work), denominator_series(params, work))
    return q.truncate(order)


def family_series(params: FamilyParams, order: int = DEFAULT_ORDER) -> TSeries:
    """Truncated generating function; coefficient n is M_n(x)/n!."""
    return _quotient(numerator_series, params, order)


def family_polynomials(params: FamilyParams, order: int = DEFAULT_ORDER) -> PolySequence:
    F = family_series(params, order)
    return PolySequence(params, order, tuple(extract_poly(F, n) for n in range(order + 1)))


def family_numbers(params: FamilyParams, order: int = DEFAULT_ORDER, route: str = "scalar") -> list[Fraction]:
    """M_n(0) for n <= order.

    ``route="scalar"`` runs the division with scalar coefficients;
    ``route="symbolic"`` evaluates the polynomials at zero.
    """
    if route == "symbolic":
        return family_polynomials(params, order).at(0)
    if route != "scalar":
        raise ArgumentError(f"unknown route {route!r}")
    q = _quotient(numerator_scalars, params, order)
    return [c * math.factorial(n) for n, c in enumerate(q.coeffs)]


def pole_order(params: FamilyParams) -> int:
    """Order of the pole at t=0 (0 when the generating function is a power series)."""
    work = params.r * params.m + 1
    v = denominator_series(params, work).valuation()
    if v is None:
        raise ArgumentError("denominator vanishes identically")
    return max(0, v - _numerator_power(params))


# ---------------------------------------------------------------------------
# Reference families, each built from its own generating function.


class ReferenceKind(str, enum.Enum):
    CLASSICAL_BERNOULLI = "ClassicalBernoulli"
    CLASSICAL_EULER = "ClassicalEuler"
    APOSTOL_BERNOULLI = "ApostolBernoulli"
    APOSTOL_EULER = "ApostolEuler"
    NATALINI_BERNOULLI = "NataliniBernoulli"
    TREMBLAY_BERNOULLI = "TremblayBernoulli"
    SRIVASTAVA_BERNOULLI = "SrivastavaBernoulli"
    SRIVASTAVA_EULER = "SrivastavaEuler"
    CLASSICAL_GENOCCHI = "ClassicalGenocchi"
    PRODUCT_APOSTOL = "ProductApostol"


def _exp(L, order):
    return series_exp_linear(L, order)


def _power_with_carrier(base: TSeries, power: int, log_c, order: int) -> tuple[XPoly, ...]:
    F = base.truncate(order) ** power
    carrier = series_exp_linear(XPoly((0, as_fraction(log_c))), order)
    F = series_mul(F.map(lambda c: XPoly((c,))), carrier)
    return tuple(extract_poly(F, n) for n in range(order + 1))


def reference_family(kind, order: int = DEFAULT_ORDER, *, power: int = 1, lam=1, m: int = 1,
                     log_a=0, log_b=1, log_c=1, k: int = 1,
                     alphas: Sequence = ()) -> PolySequence:
    """Polynomials of a classical or published family.

    ``power`` is the integer order of the family (the exponent on the bracket),
    ``lam`` the Apostol parameter. ``alphas`` and ``k`` apply only to
    ``ProductApostol``: t^(rk) 2^(r(1-k)) e^(xt) / prod (alpha_i e^t - 1).
    """
    kind = ReferenceKind(kind)
    lam = as_fraction(lam)
    if power < 0:
        raise ArgumentError("order of a reference family must be >= 0")
    work = order + 2 * max(1, m) + 1
    t = TSeries.monomial(1, work)
    one = TSeries.one(work)
    args = dict(kind=kind.value, power=power, lam=str(lam))

    if kind is ReferenceKind.CLASSICAL_BERNOULLI:
        base = series_div(t, _exp(1, work) - one)
        polys = _power_with_carrier(base, power, 1, order)
    elif kind is ReferenceKind.CLASSICAL_EULER:
        base = series_div(one.scale(2), _exp(1, work) + one)
        polys = _power_with_carrier(base, power, 1, order)
    elif kind is ReferenceKind.CLASSICAL_GENOCCHI:
        base = series_div(t.scale(2), _exp(1, work) + one)
        polys = _power_with_carrier(base, power, 1, order)
    elif kind is ReferenceKind.APOSTOL_BERNOULLI:
        base = series_div(t, _exp(1, work).scale(lam) - one)
        polys = _power_with_carrier(base, power, 1, order)
    elif kind is ReferenceKind.APOSTOL_EULER:
        base = series_div(one.scale(2), _exp(1, work).scale(lam) + one)
        polys = _power_with_carrier(base, power, 1, order)
    elif kind is ReferenceKind.SRIVASTAVA_BERNOULLI:
        den = _exp(log_b, work).scale(lam) - _exp(log_a, work)
        polys = _power_with_carrier(series_div(t, den), power, log_c, order)
        args.update(log_a=str(log_a), log_b=str(log_b), log_c=str(log_c))
    elif kind is ReferenceKind.SRIVASTAVA_EULER:
        den = _exp(log_b, work).scale(lam) + _exp(log_a, work)
        polys = _power_with_carrier(series_div(one.scale(2), den), power, log_c, order)
        args.update(log_a=str(log_a), log_b=str(log_b), log_c=str(log_c))
    elif kind in (ReferenceKind.NATALINI_BERNOULLI, ReferenceKind.TREMBLAY_BERNOULLI):
        if m < 1:
            raise ArgumentError("m must be positive")
        partial = TSeries.from_coeffs([Fraction(1, math.factorial(l)) for l in range(m)], work)
        eff_lam = Fraction(1) if kind is ReferenceKind.NATALINI_BERNOULLI else lam
        if kind is ReferenceKind.NATALINI_BERNOULLI:
            power = 1
        base = series_div(TSeries.monomial(m, work), _exp(1, work).scale(eff_lam) - partial)
        polys = _power_with_carrier(base, power, 1, order)
        args.update(m=m)
    elif kind is ReferenceKind.PRODUCT_APOSTOL:
        if k < 0:
            raise ArgumentError("k must be >= 0")
        alphas = [as_fraction(a) for a in alphas]
        work = order + len(alphas) + 1
        F = TSeries.one(work)
        for a in alphas:
            factor = series_div(TSeries.monomial(k, work, Fraction(2) ** (1 - k)),
                                _exp(1, work).scale(a) - TSeries.one(work))
            low = min(F.order, factor.order)
            F = series_mul(F.truncate(low), factor.truncate(low))
        polys = _power_with_carrier(F, 1, 1, order)
        args.update(k=k, alphas=[str(a) for a in alphas])
    else:  # pragma: no cover
        raise ArgumentError(f"unhandled family {kind}")
    return PolySequence(args, order, polys)
