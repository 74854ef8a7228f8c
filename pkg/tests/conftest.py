"""Independent oracles and the acceptance summary hook."""

from __future__ import annotations

import math
from fractions import Fraction

import pytest


def bernoulli_numbers(N: int) -> list[Fraction]:
    """sum_{j<=n} C(n+1, j) B_j = 0 with B_0 = 1."""
    B = [Fraction(1)]
    for n in range(1, N + 1):
        B.append(-sum(math.comb(n + 1, j) * B[j] for j in range(n)) / (n + 1))
    return B


def bernoulli_poly(n: int) -> list[Fraction]:
    B = bernoulli_numbers(n)
    return [math.comb(n, j) * B[n - j] for j in range(n + 1)]


def euler_poly(n: int) -> list[Fraction]:
    """Coefficients of E_n from E_n(x) + E_n(x+1) = 2 x^n, built degree by degree.

    E_n(x) = sum_j C(n,j) e_j x^(n-j) with e_j = E_j(0); the functional
    equation at x = 0 gives 2 e_n + sum_{j<n} C(n,j) e_j = 0 for n >= 1.
    """
    e = [Fraction(1)]
    for m in range(1, n + 1):
        e.append(-sum(math.comb(m, j) * e[j] for j in range(m)) / 2)
    return [math.comb(n, n - i) * e[n - i] for i in range(n + 1)]


def genocchi_numbers(N: int) -> list[Fraction]:
    """G_n = 2 (1 - 2^n) B_n."""
    return [2 * (1 - 2**n) * b for n, b in enumerate(bernoulli_numbers(N))]


def stirling2_triangle(N: int) -> list[list[int]]:
    T = [[1]]
    for n in range(1, N + 1):
        prev = T[-1] + [0]
        T.append([0] + [k * prev[k] + prev[k - 1] for k in range(1, n + 1)])
    return T


def stirling1_signed_triangle(N: int) -> list[list[int]]:
    T = [[1]]
    for n in range(1, N + 1):
        prev = T[-1] + [0]
        T.append([0] + [prev[k - 1] - (n - 1) * prev[k] for k in range(1, n + 1)])
    return T


def trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(Fraction(c) for c in coeffs)


@pytest.fixture
def oracles():
    import types

    return types.SimpleNamespace(
        bernoulli_numbers=bernoulli_numbers,
        bernoulli_poly=bernoulli_poly,
        euler_poly=euler_poly,
        genocchi_numbers=genocchi_numbers,
        stirling2_triangle=stirling2_triangle,
        stirling1_signed_triangle=stirling1_signed_triangle,
        trim=trim,
    )


# acceptance lines: one PASS/FAIL per criterion, printed after the run
_ACCEPTANCE: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[name] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, verdict in _ACCEPTANCE.items():
        terminalreporter.write_line(f"{verdict}  {name}")
