"""Stirling and Lah numbers, node falling factorials, classical orthogonal
polynomials, monomial expansions and the unified Bernstein/BBH basis."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact_algebra import (
    ArgumentError,
    TSeries,
    XPoly,
    as_fraction,
    gen_binomial,
    series_div,
    series_exp_linear,
    series_mul,
)


class Kind(str, enum.Enum):
    FIRST = "first"
    SECOND = "second"


class ConnectionKind(str, enum.Enum):
    STIRLING1 = "Stirling1"
    STIRLING2 = "Stirling2"
    GEN_STIRLING1 = "GenStirling1"
    GEN_STIRLING2 = "GenStirling2"
    GEN_LAH = "GenLah"


class FactorialMode(str, enum.Enum):
    MK_FACT = "mk-fact"  # 1/((m k)!)
    M_TIMES_KFACT = "m-times-kfact"  # 1/(m * k!)


# Shipped default: the reading under which the BBH/Stirling identity holds
# when its prefactor is parsed by ordinary precedence (see README).
DEFAULT_FACTORIAL_MODE = FactorialMode.M_TIMES_KFACT


def _nodes(nodes: Sequence) -> tuple[Fraction, ...]:
    return tuple(as_fraction(a) for a in nodes)


def ordinary_nodes(n: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(i) for i in range(n))


@dataclass(frozen=True)
class ConnectionMatrix:
    """Lower-triangular table ``entries[n][k]`` for ``0 <= k <= n <= n_max``."""

    kind: ConnectionKind
    entries: tuple[tuple[Fraction, ...], ...]

    @property
    def n_max(self) -> int:
        return len(self.entries) - 1

    def __call__(self, n: int, k: int) -> Fraction:
        if k < 0 or k > n or n > self.n_max:
            return Fraction(0)
        row = self.entries[n]
        return row[k] if k < len(row) else Fraction(0)


def falling_factorial_poly(nodes: Sequence, ell: int) -> XPoly:
    """(x - a_0)(x - a_1)...(x - a_{ell-1})."""
    nodes = _nodes(nodes)
    if ell < 0 or ell > len(nodes):
        raise ArgumentError(f"need {ell} nodes, have {len(nodes)}")
    out = XPoly((1,))
    for a in nodes[:ell]:
        out = out * XPoly((-a, 1))
    return out


def _newton_coordinates(p: XPoly, nodes: tuple[Fraction, ...]) -> list[Fraction]:
    """Coordinates of p in the basis (x; nodes)_j, by back substitution."""
    n = p.degree
    if n > len(nodes):
        raise ArgumentError(f"degree {n} needs {n} nodes, have {len(nodes)}")
    basis = [falling_factorial_poly(nodes, j) for j in range(n + 1)]
    coords = [Fraction(0)] * (n + 1)
    residual = p
    for j in range(n, -1, -1):
        c = residual.coeff(j)
        coords[j] = c
        if c:
            residual = residual - basis[j] * c
    if residual:
        raise AssertionError("triangular solve left a residual")  # pragma: no cover
    return coords


def gen_stirling(kind, n: int, k: int, nodes: Sequence) -> Fraction:
    """Comtet's generalized Stirling numbers.

    First kind: (x; nodes)_n = sum_k s(n,k) x^k.
    Second kind: x^n = sum_k S(n,k) (x; nodes)_k.
    """
    kind = Kind(kind)
    nodes = _nodes(nodes)
    if n < 0:
        raise ArgumentError("n must be >= 0")
    if n > len(nodes):
        raise ArgumentError(f"S({n},.) needs {n} nodes, have {len(nodes)}")
    if k < 0 or k > n:
        return Fraction(0)
    if kind is Kind.FIRST:
        return falling_factorial_poly(nodes, n).coeff(k)
    return _newton_coordinates(XPoly.monomial(n), nodes)[k]


def gen_stirling_matrix(kind, n_max: int, nodes: Sequence) -> ConnectionMatrix:
    kind = Kind(kind)
    nodes = _nodes(nodes)
    if n_max > len(nodes):
        raise ArgumentError(f"need {n_max} nodes, have {len(nodes)}")
    rows = []
    for n in range(n_max + 1):
        if kind is Kind.FIRST:
            p = falling_factorial_poly(nodes, n)
            rows.append(tuple(p.coeff(k) for k in range(n + 1)))
        else:
            rows.append(tuple(_newton_coordinates(XPoly.monomial(n), nodes)))
    tag = ConnectionKind.GEN_STIRLING1 if kind is Kind.FIRST else ConnectionKind.GEN_STIRLING2
    return ConnectionMatrix(tag, tuple(rows))


def stirling(kind, n: int, k: int) -> Fraction:
    """Ordinary Stirling numbers (first kind signed)."""
    return gen_stirling(kind, n, k, ordinary_nodes(n))


def stirling_matrix(kind, n_max: int) -> ConnectionMatrix:
    m = gen_stirling_matrix(kind, n_max, ordinary_nodes(n_max))
    tag = ConnectionKind.STIRLING1 if Kind(kind) is Kind.FIRST else ConnectionKind.STIRLING2
    return ConnectionMatrix(tag, m.entries)


# ---------------------------------------------------------------------------
# classical orthogonal polynomials


class OrthoKind(str, enum.Enum):
    HERMITE = "hermite"
    LAGUERRE = "laguerre"
    JACOBI = "jacobi"


def hermite(n: int) -> XPoly:
    """Physicists' Hermite polynomial H_n."""
    if n < 0:
        raise ArgumentError("n must be >= 0")
    prev, cur = XPoly((1,)), XPoly((0, 2))
    if n == 0:
        return prev
    for j in range(1, n):
        prev, cur = cur, XPoly((0, 2)) * cur - prev * (2 * j)
    return cur


def laguerre(n: int, alpha=0) -> XPoly:
    """Generalized Laguerre polynomial L_n^(alpha)."""
    if n < 0:
        raise ArgumentError("n must be >= 0")
    alpha = as_fraction(alpha)
    prev, cur = XPoly((1,)), XPoly((1 + alpha, -1))
    if n == 0:
        return prev
    for j in range(1, n):
        nxt = (XPoly((2 * j + 1 + alpha, -1)) * cur - prev * (j + alpha)) / (j + 1)
        prev, cur = cur, nxt
    return cur


def jacobi(n: int, alpha=0, beta=0) -> XPoly:
    """Jacobi polynomial P_n^(alpha,beta)(y), returned in the variable y."""
    if n < 0:
        raise ArgumentError("n must be >= 0")
    a, b = as_fraction(alpha), as_fraction(beta)
    prev = XPoly((1,))
    if n == 0:
        return prev
    cur = XPoly(((a - b) / 2, (a + b + 2) / 2))
    for j in range(2, n + 1):
        s = 2 * j + a + b
        c0 = 2 * j * (j + a + b) * (s - 2)
        if not c0:
            raise ArgumentError(f"Jacobi recurrence degenerates at n={j} for alpha+beta={a + b}")
        lin = XPoly(((s - 1) * (a * a - b * b), (s - 1) * s * (s - 2)))
        nxt = (lin * cur - prev * (2 * (j + a - 1) * (j + b - 1) * s)) / c0
        prev, cur = cur, nxt
    return cur


def classical_orthopoly(kind, n: int, alpha=0, beta=0) -> XPoly:
    kind = OrthoKind(kind)
    if kind is OrthoKind.HERMITE:
        return hermite(n)
    if kind is OrthoKind.LAGUERRE:
        return laguerre(n, alpha)
    return jacobi(n, alpha, beta)


def rising_factorial(z, n: int) -> Fraction:
    z = as_fraction(z)
    out = Fraction(1)
    for i in range(n):
        out *= z + i
    return out


def monomial_expand(kind, ell: int, alpha=0, beta=0) -> list[Fraction]:
    """Coefficients c_j with x^ell = sum_j c_j B_j(x).

    B_j is H_j for Hermite, L_j^(alpha) for Laguerre and P_j^(alpha,beta)(1-2x)
    for Jacobi.
    """
    kind = OrthoKind(kind)
    if ell < 0:
        raise ArgumentError("ell must be >= 0")
    alpha, beta = as_fraction(alpha), as_fraction(beta)
    fact = math.factorial(ell)
    out = [Fraction(0)] * (ell + 1)
    if kind is OrthoKind.HERMITE:
        for j in range(ell // 2 + 1):
            out[ell - 2 * j] = (Fraction(math.comb(ell, 2 * j) * math.factorial(2 * j), math.factorial(j))
                                / 2**ell)
        return out
    for j in range(ell + 1):
        c = (-1) ** j * fact * gen_binomial(ell + alpha, ell - j)
        if kind is OrthoKind.JACOBI:
            rf = rising_factorial(alpha + beta + j + 1, ell + 1)
            if not rf:
                raise ArgumentError(
                    f"rising factorial ({alpha + beta + j + 1})_{ell + 1} vanishes"
                )
            c = c * (alpha + beta + 2 * j + 1) / rf
        out[j] = c
    return out


def basis_poly(kind, j: int, alpha=0, beta=0) -> XPoly:
    """B_j(x) as used by :func:`monomial_expand` (Jacobi taken at 1-2x)."""
    kind = OrthoKind(kind)
    p = classical_orthopoly(kind, j, alpha, beta)
    if kind is OrthoKind.JACOBI:
        return p(XPoly((1, -2)))
    return p


# ---------------------------------------------------------------------------
# generalized Lah numbers


def _reciprocal_factorial_u(nodes: Sequence[Fraction], count: int, order: int) -> TSeries:
    """1/(y; nodes)_count expanded in u = 1/y: u^count prod 1/(1 - a u)."""
    out = TSeries.monomial(count, order)
    one = TSeries.one(order)
    for a in nodes[:count]:
        out = series_mul(out, series_div(one, one - TSeries.monomial(1, order, a)))
    return out


def gen_lah(r: int, alpha_star: Sequence, beta_star: Sequence, M: int) -> ConnectionMatrix:
    """Coefficients C(m, j) of 1/(y; a*)_j = sum_{m>=j} C(m,j) / (y; b*)_m.

    Column j uses the length-j prefix of ``alpha_star`` for ``j <= r``; rows run
    to ``m = M``. The expansion is matched in powers of 1/y.
    """
    alpha_star, beta_star = _nodes(alpha_star), _nodes(beta_star)
    if r < 0:
        raise ArgumentError("r must be >= 0")
    if r > M:
        raise ArgumentError(f"r={r} exceeds truncation M={M}")
    if len(alpha_star) < r:
        raise ArgumentError(f"need {r} alpha* nodes, have {len(alpha_star)}")
    if len(beta_star) < M:
        raise ArgumentError(f"need {M} beta* nodes, have {len(beta_star)}")
    basis = [_reciprocal_factorial_u(beta_star, m, M) for m in range(M + 1)]
    columns = []
    for j in range(r + 1):
        residual = _reciprocal_factorial_u(alpha_star, j, M)
        col = [Fraction(0)] * (M + 1)
        for m in range(j, M + 1):
            c = residual[m]
            col[m] = c
            if c:
                residual = residual - basis[m].scale(c)
        columns.append(col)
    rows = tuple(
        tuple(columns[j][m] for j in range(min(m, r) + 1)) for m in range(M + 1)
    )
    return ConnectionMatrix(ConnectionKind.GEN_LAH, rows)


def lah_residual(r: int, alpha_star: Sequence, beta_star: Sequence, M: int) -> TSeries:
    """u-series difference of both sides of the defining expansion (zero when solved)."""
    alpha_star, beta_star = _nodes(alpha_star), _nodes(beta_star)
    C = gen_lah(r, alpha_star, beta_star, M)
    lhs = _reciprocal_factorial_u(alpha_star, r, M)
    rhs = TSeries.from_coeffs([], M)
    for m in range(r, M + 1):
        rhs = rhs + _reciprocal_factorial_u(beta_star, m, M).scale(C(m, r))
    return lhs - rhs


# ---------------------------------------------------------------------------
# unified Bernstein / Bleimann-Butzer-Hahn basis


def factorial_factor(k: int, m: int, mode) -> Fraction:
    mode = FactorialMode(mode)
    if mode is FactorialMode.MK_FACT:
        return Fraction(1, math.factorial(m * k))
    return Fraction(1, m * math.factorial(k))


def bbh_basis(x, k: int, m: int, a, b, order: int, factorial_mode=DEFAULT_FACTORIAL_MODE) -> list[Fraction]:
    """p_n^(a,b)(x; k, m) for n <= order.

    n! [t^n] of (2^(1-k) x^k t^k / (1+ax)^k)^m * F * exp(t (1+bx)/(1+ax)),
    with F = 1/((mk)!) or 1/(m k!) per ``factorial_mode``.
    """
    x, a, b = as_fraction(x), as_fraction(a), as_fraction(b)
    if k < 0 or m < 1:
        raise ArgumentError("need k >= 0 and m >= 1")
    d = 1 + a * x
    if not d:
        raise ArgumentError("singular parameters: 1 + a*x = 0")
    lead = (Fraction(2) ** (1 - k) * x**k / d**k) ** m * factorial_factor(k, m, factorial_mode)
    series = series_exp_linear((1 + b * x) / d, order).shift(k * m).scale(lead)
    return [c * math.factorial(n) for n, c in enumerate(series.coeffs)]
