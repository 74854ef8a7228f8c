import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unified_apostol import combinatorial_bases as cb
from unified_apostol.exact_algebra import ArgumentError, XPoly

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
node_lists = st.lists(rationals, min_size=8, max_size=8)


def test_ordinary_stirling_against_recurrences(oracles):
    S2 = oracles.stirling2_triangle(10)
    s1 = oracles.stirling1_signed_triangle(10)
    M2 = cb.stirling_matrix("second", 10)
    M1 = cb.stirling_matrix("first", 10)
    for n in range(11):
        assert [M2(n, k) for k in range(n + 1)] == S2[n]
        assert [M1(n, k) for k in range(n + 1)] == s1[n]


def test_stirling_examples():
    assert [cb.stirling("second", 4, k) for k in range(5)] == [0, 1, 7, 6, 1]
    assert cb.stirling("first", 3, 1) == 2
    assert cb.stirling("second", 3, 5) == 0


@settings(max_examples=20, deadline=None)
@given(node_lists)
def test_generalized_stirling_orthogonality(nodes):
    S = cb.gen_stirling_matrix("second", 8, nodes)
    s = cb.gen_stirling_matrix("first", 8, nodes)
    for n in range(9):
        for j in range(9):
            assert sum(S(n, k) * s(k, j) for k in range(9)) == (n == j)


@settings(max_examples=20, deadline=None)
@given(node_lists)
def test_second_kind_reconstructs_monomials(nodes):
    S = cb.gen_stirling_matrix("second", 6, nodes)
    for n in range(7):
        rebuilt = sum((cb.falling_factorial_poly(nodes, k) * S(n, k) for k in range(n + 1)), XPoly())
        assert rebuilt == XPoly.monomial(n)


def test_stirling_needs_enough_nodes():
    with pytest.raises(ArgumentError):
        cb.gen_stirling("second", 4, 1, [1, 2])


def test_orthogonal_polynomial_values():
    assert cb.hermite(2).coeffs == (-2, 0, 4)
    assert cb.hermite(3).coeffs == (0, -12, 0, 8)
    assert cb.laguerre(2).coeffs == (1, -2, Fraction(1, 2))
    assert cb.laguerre(1, Fraction(1, 2)).coeffs == (Fraction(3, 2), -1)
    # P_2^(0,0) is the Legendre polynomial (3y^2 - 1)/2
    assert cb.jacobi(2).coeffs == (Fraction(-1, 2), 0, Fraction(3, 2))
    assert cb.jacobi(1, Fraction(1, 2), Fraction(1, 3)).coeffs == (Fraction(1, 12), Fraction(17, 12))


def test_jacobi_at_one_is_binomial():
    a, b = Fraction(1, 2), Fraction(1, 3)
    for n in range(6):
        assert cb.jacobi(n, a, b)(1) == cb.rising_factorial(a + 1, n) / math.factorial(n)


def test_jacobi_degeneracy_is_reported():
    with pytest.raises(ArgumentError):
        cb.jacobi(2, -1, -1)


@pytest.mark.parametrize(
    "kind, alpha, beta",
    [("hermite", 0, 0), ("laguerre", 0, 0), ("laguerre", Fraction(1, 2), 0),
     ("jacobi", 0, 0), ("jacobi", Fraction(1, 2), Fraction(1, 3))],
)
def test_monomial_expansion_reconstructs(kind, alpha, beta):
    for ell in range(9):
        c = cb.monomial_expand(kind, ell, alpha, beta)
        rebuilt = sum((cb.basis_poly(kind, j, alpha, beta) * c[j] for j in range(ell + 1)), XPoly())
        assert rebuilt == XPoly.monomial(ell)


@settings(max_examples=15, deadline=None)
@given(st.fractions(min_value=0, max_value=4, max_denominator=5), st.fractions(min_value=0, max_value=4, max_denominator=5))
def test_jacobi_expansion_property(alpha, beta):
    for ell in range(5):
        c = cb.monomial_expand("jacobi", ell, alpha, beta)
        rebuilt = sum((cb.basis_poly("jacobi", j, alpha, beta) * c[j] for j in range(ell + 1)), XPoly())
        assert rebuilt == XPoly.monomial(ell)


def test_lah_example():
    C = cb.gen_lah(1, [Fraction(1, 2)], [Fraction(1, 3)] * 4, 4)
    assert [C(m, 1) for m in range(5)] == [0, 1, Fraction(1, 6), Fraction(1, 36), Fraction(1, 216)]


@settings(max_examples=20, deadline=None)
@given(st.lists(rationals, min_size=2, max_size=2), st.lists(rationals, min_size=7, max_size=7))
def test_lah_residual_vanishes(alpha_star, beta_star):
    for r in (1, 2):
        res = cb.lah_residual(r, alpha_star, beta_star, 7)
        assert all(c == 0 for c in res)


def test_lah_identity_nodes():
    nodes = [Fraction(1, 2), Fraction(2), 3, 4, 5]
    C = cb.gen_lah(2, nodes, nodes, 5)
    assert all(C(m, 2) == (m == 2) for m in range(6))


def test_lah_argument_checks():
    with pytest.raises(ArgumentError):
        cb.gen_lah(3, [1, 2, 3], [1] * 2, 2)
    with pytest.raises(ArgumentError):
        cb.gen_lah(2, [1], [1] * 4, 4)


def test_bbh_examples():
    assert cb.bbh_basis(1, 1, 1, 1, 2, 2) == [0, Fraction(1, 2), Fraction(3, 2)]
    # k = 0, m = 1: 2 e^(t w) with w = (1+bx)/(1+ax) = 1
    assert cb.bbh_basis(1, 0, 1, 1, 1, 3) == [2, 2, 2, 2]


def test_bbh_factorial_modes():
    assert cb.factorial_factor(2, 2, "mk-fact") == Fraction(1, 24)
    assert cb.factorial_factor(2, 2, "m-times-kfact") == Fraction(1, 4)
    assert cb.factorial_factor(1, 1, "mk-fact") == cb.factorial_factor(1, 1, "m-times-kfact")
    assert cb.DEFAULT_FACTORIAL_MODE is cb.FactorialMode.M_TIMES_KFACT


def test_bbh_singular():
    with pytest.raises(ArgumentError):
        cb.bbh_basis(1, 1, 1, -1, 2, 2)
