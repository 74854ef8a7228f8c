import json
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from unified_apostol import FamilyParams, family_polynomials, make_params
from unified_apostol.exact_algebra import ArgumentError
from unified_apostol.identities import (
    EQUATIONS,
    STRUCTURAL,
    IdentityId,
    check_connection,
    check_lah,
    check_multiplication,
    check_structural,
    reflect_sequence,
    table1_check,
)
from unified_apostol.reports import ExactZero, FirstMismatch, IdentityReport, NumericDiagnostic, first_mismatch
from unified_apostol.suite import SuiteConfig, run_suite
from unified_apostol.unified_family import pole_order

GENERIC = FamilyParams(2, 2, (Fraction(3), Fraction(-1, 2)), Fraction(1, 3), Fraction(2), Fraction(-3, 4))
BERN = make_params(1, 1, [1])
small = st.fractions(min_value=-4, max_value=4, max_denominator=5)


@pytest.mark.parametrize("id_", STRUCTURAL)
def test_structural_generic(id_):
    p = GENERIC.replace(m=1) if id_ is IdentityId.REFLECT_15 else GENERIC
    rep = check_structural(id_, p, 8, y=Fraction(2, 3), split=1, blocks=[(1, Fraction(1, 2)), (1, -2)])
    assert rep.verdict == "PASS", rep.to_dict()
    assert rep.equation == EQUATIONS[id_]


@settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(st.integers(0, 2), st.lists(small.filter(lambda a: a not in (0, 1)), min_size=1, max_size=2),
       small, small, small, small)
def test_addition_property(k, alphas, la, lb, lc, y):
    assume(la != lb)
    p = FamilyParams(k, 1, tuple(alphas), la, lb, lc)
    assume(pole_order(p) == 0)
    assert check_structural(IdentityId.ADD_11, p, 6, y=y).passed


@settings(max_examples=15, deadline=None)
@given(st.lists(small.filter(lambda a: a not in (0, 1)), min_size=1, max_size=2), small, small, small)
def test_reflection_is_an_involution(alphas, la, lb, lc):
    assume(la != lb)
    p = FamilyParams(1, 1, tuple(alphas), la, lb, lc)
    polys = list(family_polynomials(p, 6))
    once, q = reflect_sequence(polys, p)
    assert once == list(family_polynomials(q, 6))
    twice, back = reflect_sequence(once, q)
    assert back == p and twice == polys


def test_structural_rejects_other_ids():
    with pytest.raises(ArgumentError):
        check_structural(IdentityId.NORLUND_18, BERN)


@pytest.mark.parametrize("id_", [IdentityId.NORLUND_18, IdentityId.CARLITZ_20])
def test_multiplication_plain(id_):
    p = make_params(1, 1, [Fraction(2), Fraction(-1, 3)])
    for n in (2, 3):
        assert check_multiplication(id_, p, n, 3).passed


@pytest.mark.parametrize("id_", [IdentityId.NORLUND_19, IdentityId.CARLITZ_21])
def test_multiplication_lowered_k_records_printed_variant(id_):
    rep = check_multiplication(id_, make_params(2, 1, [Fraction(2)]), 2, 3)
    assert rep.passed
    variants = {name: verdict for name, verdict, _ in rep.variants}
    assert variants == {"printed": "FAIL", "derived": "PASS"}


def test_multiplication_preconditions():
    with pytest.raises(ArgumentError):
        check_multiplication(IdentityId.NORLUND_18, make_params(1, 2, [2]), 2)
    with pytest.raises(ArgumentError):
        check_multiplication(IdentityId.CARLITZ_20, BERN, 2)


def test_raabe_spot_value():
    B2 = family_polynomials(BERN, 2)[2]
    assert B2(0) + B2(Fraction(1, 2)) == Fraction(1, 12)


@pytest.mark.parametrize("params", [BERN, GENERIC])
def test_connection_formulas(params):
    nodes = [Fraction(j, 3) - 1 for j in range(8)]
    assert check_connection(IdentityId.GENSTIRLING_22, params, 8, nodes=nodes).passed
    assert check_connection(IdentityId.STIRLING_23, params, 8).passed
    assert check_connection(IdentityId.LAGUERRE_24, params, 8, alpha=Fraction(1, 2)).passed
    assert check_connection(IdentityId.JACOBI_25, params, 8, alpha=Fraction(1, 2), beta=Fraction(1, 3)).passed
    assert check_connection(IdentityId.HERMITE_26, params, 8).passed


def test_bbh_modes():
    p = make_params(2, 1, [Fraction(2), Fraction(-1, 2)])
    kw = dict(x=Fraction(1, 3), a=Fraction(2), b=Fraction(-1, 2))
    assert check_connection(IdentityId.BBH_28, p, 6, factorial_mode="m-times-kfact", **kw).passed
    assert not check_connection(IdentityId.BBH_28, p, 6, factorial_mode="mk-fact", **kw).passed


def test_lah_delta_case_is_exact():
    al = [Fraction(2), Fraction(-1, 3)]
    rep = check_lah(2, al, al + [Fraction(5)] * 8, 1, 4)
    assert rep.verdict == "PASS"
    assert isinstance(rep.residual, ExactZero)


def test_lah_generic_case_is_a_diagnostic():
    rep = check_lah(1, [2], [3] * 9, 0, 3)
    assert rep.verdict == "INCONCLUSIVE"
    assert isinstance(rep.residual, NumericDiagnostic)
    assert rep.residual.levels == (3, 5, 7, 9)


@pytest.mark.parametrize("row", range(1, 14))
def test_table1_rows(row):
    sample = dict(r=2, lam=3, m=2, k=2, beta=Fraction(1, 2), L=Fraction(3, 2), log_a=Fraction(1, 2),
                  log_b=2, log_c=Fraction(-1, 3), alphas=[2, Fraction(-1, 3)])
    assert table1_check(row, sample, 8).passed


def test_table1_row13_signs():
    both = table1_check(13, dict(alphas=[2]), 6)
    assert both.passed
    assert {n: v for n, v, _ in both.variants} == {"printed (-alphas)": "FAIL", "corrected (+alphas)": "PASS"}
    assert table1_check(13, dict(alphas=[2]), 6, row13_sign="printed").verdict == "FAIL"


def test_report_invariants():
    with pytest.raises(ValueError):
        IdentityReport("ADD_11", "", "", 1, FirstMismatch(0, Fraction(1), Fraction(0)), "PASS")
    with pytest.raises(ValueError):
        IdentityReport("ADD_11", "", "", 1, NumericDiagnostic((1,), (Fraction(1),)), "INCONCLUSIVE")


def test_first_mismatch_locates_power():
    res = first_mismatch([Fraction(1)], [Fraction(2)])
    assert (res.n, res.lhs, res.rhs) == (0, 1, 2)
    p = family_polynomials(BERN, 2)
    res = first_mismatch(list(p), [p[0], p[1], p[2] + 1])
    assert (res.n, res.power) == (2, 0)


def test_run_suite_is_deterministic_and_ordered():
    cfg = SuiteConfig("structural", 6, 2, 11)
    a = [r.to_dict() for r in run_suite(cfg)]
    b = [r.to_dict() for r in run_suite(cfg)]
    assert json.dumps(a) == json.dumps(b)
    assert [r["id"] for r in a] == [i.value for i in STRUCTURAL for _ in range(2)]
    assert run_suite(SuiteConfig("all", 6, 0, 1)) == []


def test_run_suite_rejects_unknown_suite():
    with pytest.raises(ValueError):
        run_suite(SuiteConfig("bogus"))


def test_reports_serialize_rationals_as_strings():
    rep = check_lah(1, [2], [3] * 9, 0, 3)
    d = json.loads(json.dumps(rep.to_dict()))
    mags = [Fraction(v) for v in d["residual"]["magnitudes"]]
    assert tuple(mags) == rep.residual.magnitudes


def test_uniform_normalisation_mutation_is_caught_by_reductions(monkeypatch):
    # the structural identities are invariant under any normalisation that is
    # multiplicative in r, so a change applied to both routes must be caught
    # by comparison with the independently coded reference families
    from unified_apostol import unified_family as uf
    from unified_apostol.exact_algebra import TSeries

    monkeypatch.setattr(uf, "_two_power", lambda p: Fraction(2) ** (p.r * p.m))
    monkeypatch.setattr(uf, "numerator_scalars", lambda p, order: TSeries.monomial(
        p.r * p.k * p.m, order, Fraction(2) ** (p.r * p.m)))
    structural = run_suite(SuiteConfig("structural", 8, 3, 5))
    assert all(r.passed for r in structural)
    sample = dict(r=2, lam=3, m=2, k=2, beta=Fraction(1, 2), alphas=[2, 3])
    assert not table1_check(8, sample, 6).passed
