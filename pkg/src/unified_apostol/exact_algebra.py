"""Exact truncated power series and dense polynomials over the rationals.

Scalars are :class:`fractions.Fraction`. Series coefficients live in a ring
that is either the scalars or :class:`XPoly`; both support ``+ - *``, division
by a nonzero scalar, and truthiness as a zero test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

__all__ = [
    "ArgumentError",
    "PoleError",
    "XPoly",
    "TSeries",
    "as_fraction",
    "gen_binomial",
    "series_mul",
    "series_div",
    "series_exp_linear",
    "series_scale_var",
    "extract_poly",
]


class ArgumentError(ValueError):
    """Invalid arguments to an exact-algebra or family operation."""


class PoleError(ArithmeticError):
    """A quotient of series has a pole at t = 0."""

    def __init__(self, order: int, message: str | None = None):
        self.order = order
        super().__init__(message or f"pole of order {order} at t=0")


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ArgumentError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError as exc:
            raise ArgumentError(f"not a rational: {value!r}") from exc
    raise ArgumentError(f"not an exact rational: {value!r}")


def gen_binomial(z, j: int) -> Fraction:
    """C(z, j) = z(z-1)...(z-j+1)/j! for rational z; zero for j < 0."""
    if j < 0:
        return Fraction(0)
    z = as_fraction(z)
    num = Fraction(1)
    for i in range(j):
        num *= z - i
    return num / math.factorial(j)


def _trim(coeffs: Iterable[Fraction]) -> tuple[Fraction, ...]:
    out = list(coeffs)
    while out and not out[-1]:
        out.pop()
    return tuple(out)


class XPoly:
    """Dense polynomial in x, coefficient ``i`` multiplies ``x**i``.

    Immutable; trailing zeros are trimmed so the zero polynomial has no
    coefficients at all.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _trim(as_fraction(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("XPoly is immutable")

    @classmethod
    def constant(cls, c) -> XPoly:
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c=1) -> XPoly:
        return cls([0] * degree + [c])

    @classmethod
    def x(cls) -> XPoly:
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, XPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _trim((Fraction(other),))
        return NotImplemented

    def __hash__(self) -> int:
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else 0)
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"XPoly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms).replace("+ -", "- ")

    @staticmethod
    def _lift(other) -> XPoly | None:
        if isinstance(other, XPoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return XPoly((other,))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return XPoly(self.coeff(i) + o.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> XPoly:
        return XPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return XPoly(c * other for c in self.coeffs)
        if not isinstance(other, XPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return XPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return XPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, XPoly):
            if other.degree != 0:
                raise ArgumentError("XPoly division only by nonzero constants")
            other = other.coeffs[0]
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        if not other:
            raise ZeroDivisionError("XPoly division by zero")
        return XPoly(c / other for c in self.coeffs)

    def __pow__(self, e: int) -> XPoly:
        if e < 0:
            raise ArgumentError("negative power of XPoly")
        out = XPoly((1,))
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __call__(self, value):
        """Horner evaluation; an XPoly argument gives composition."""
        acc = Fraction(0) if not isinstance(value, XPoly) else XPoly()
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def derivative(self) -> XPoly:
        return XPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def scale_var(self, sigma) -> XPoly:
        """p(sigma*x)."""
        sigma = as_fraction(sigma)
        return XPoly(c * sigma**i for i, c in enumerate(self.coeffs))


Ring = Union[Fraction, XPoly]


def _is_zero(c) -> bool:
    return not c


@dataclass(frozen=True)
class TSeries:
    """Truncated series sum_{j<=order} coeffs[j] t^j."""

    order: int
    coeffs: tuple

    def __post_init__(self):
        if self.order < 0:
            raise ArgumentError("series order must be >= 0")
        coeffs = tuple(
            c if isinstance(c, XPoly) else as_fraction(c) for c in self.coeffs
        )
        if len(coeffs) != self.order + 1:
            raise ArgumentError(
                f"series of order {self.order} needs {self.order + 1} coefficients,"
                f" got {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, order: int) -> TSeries:
        """Pad with zeros (or truncate) to the requested order."""
        cs = list(coeffs[: order + 1])
        cs.extend([Fraction(0)] * (order + 1 - len(cs)))
        return cls(order, tuple(cs))

    @classmethod
    def one(cls, order: int) -> TSeries:
        return cls.from_coeffs([1], order)

    @classmethod
    def monomial(cls, power: int, order: int, c=1) -> TSeries:
        """c * t**power, truncated (vanishes entirely if power > order)."""
        return cls.from_coeffs([0] * power + [c], order)

    def __getitem__(self, j: int):
        return self.coeffs[j]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, None if all vanish."""
        for j, c in enumerate(self.coeffs):
            if not _is_zero(c):
                return j
        return None

    def truncate(self, order: int) -> TSeries:
        if order > self.order:
            raise ArgumentError(f"cannot extend a series of order {self.order} to {order}")
        return TSeries(order, self.coeffs[: order + 1])

    def shift(self, s: int) -> TSeries:
        """Multiply by t**s, keeping the order."""
        if s < 0:
            raise ArgumentError("negative shift")
        return TSeries.from_coeffs([Fraction(0)] * s + list(self.coeffs), self.order)

    def _check(self, other: TSeries) -> None:
        if not isinstance(other, TSeries):
            raise ArgumentError(f"expected TSeries, got {type(other).__name__}")
        if other.order != self.order:
            raise ArgumentError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other: TSeries) -> TSeries:
        self._check(other)
        return TSeries(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: TSeries) -> TSeries:
        self._check(other)
        return TSeries(self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> TSeries:
        return TSeries(self.order, tuple(-c for c in self.coeffs))

    def scale(self, c) -> TSeries:
        """Multiply every coefficient by the ring element c."""
        return TSeries(self.order, tuple(a * c for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, TSeries):
            return series_mul(self, other)
        return self.scale(other)

    def __pow__(self, e: int) -> TSeries:
        if e < 0:
            raise ArgumentError("negative power of a series")
        out = TSeries.one(self.order)
        for _ in range(e):
            out = series_mul(out, self)
        return out

    def map(self, fn) -> TSeries:
        return TSeries(self.order, tuple(fn(c) for c in self.coeffs))


def series_mul(a: TSeries, b: TSeries) -> TSeries:
    """Cauchy product, truncated at the common order."""
    a._check(b)
    out = []
    for j in range(a.order + 1):
        acc = a[0] * b[j]
        for i in range(1, j + 1):
            acc = acc + a[i] * b[j - i]
        out.append(acc)
    return TSeries(a.order, tuple(out))


def series_div(num: TSeries, den: TSeries) -> TSeries:
    """Quotient num/den as a power series of order ``N - valuation(den)``.

    The leading coefficient of ``den`` must be an invertible scalar (or a
    nonzero constant XPoly).
    """
    num._check(den)
    v = den.valuation()
    if v is None:
        raise ArgumentError(f"denominator vanishes identically to order {den.order}")
    vn = num.valuation()
    if vn is not None and vn < v:
        raise PoleError(v - vn)
    lead = den[v]
    if isinstance(lead, XPoly) and lead.degree != 0:
        raise ArgumentError("leading denominator coefficient must be a scalar")
    order = den.order - v
    q = []
    for j in range(order + 1):
        acc = num[j + v]
        for i in range(j):
            acc = acc - q[i] * den[v + j - i]
        q.append(acc / lead)
    return TSeries(order, tuple(q))


def series_exp_linear(L, order: int) -> TSeries:
    """exp(L t) truncated; L may be a scalar or an XPoly."""
    if not isinstance(L, XPoly):
        L = as_fraction(L)
    out = [Fraction(1) if not isinstance(L, XPoly) else XPoly((1,))]
    for j in range(1, order + 1):
        out.append(out[-1] * L / j)
    return TSeries(order, tuple(out))


def series_scale_var(a: TSeries, sigma) -> TSeries:
    """a(sigma t)."""
    sigma = as_fraction(sigma)
    return TSeries(a.order, tuple(c * sigma**j for j, c in enumerate(a.coeffs)))


def extract_poly(F: TSeries, n: int) -> XPoly:
    """n! [t^n] F, as an XPoly."""
    if n < 0 or n > F.order:
        raise ArgumentError(f"index {n} outside series of order {F.order}")
    c = F[n] * math.factorial(n)
    return c if isinstance(c, XPoly) else XPoly((c,))
