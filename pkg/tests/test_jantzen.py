import json
from fractions import Fraction as F

import pytest

from affjantzen.charbox import NoFormulaError, ch_restricted_verma, ch_simple_subgeneric, char_shift
from affjantzen.exactalg import PolyT
from affjantzen.jantzen import (compare_determinants, linkage_check, down_ord_crosscheck,
                                real_factor_comparison, restricted_expansion, subgeneric_filtration,
                                sum_formula_rhs, sum_formula_terms, verify_shapovalov, verify_sum_formula)
from affjantzen.rootdata import build_root_system
from affjantzen.weylcalc import Box, BoxCoords, Kind, down, leq, linkage_orbit

from conftest import A1_GENERIC, A1_SUBGENERIC, A2_GENERAL, A2_GENERIC, A2_SUBGENERIC, crit


def B(c0, *cfin):
    return BoxCoords(c0, tuple(cfin))


# Values computed by the oracle for A1, n = 1, Box(2, 4) and frozen here.
A1_N1_RHS = {B(0, 1): 1, B(0, 2): 1, B(0, 3): 1, B(0, 4): 1, B(1, 2): 1, B(1, 3): 2, B(1, 4): 2,
             B(2, 2): 1, B(2, 3): 2, B(2, 4): 4}


def test_rhs_examples_a1(A1):
    lam = crit(A1, A1_SUBGENERIC[1])
    rhs = sum_formula_rhs(A1, lam, Box(2, 4))
    a, d = A1.root_weight((1,)), A1.delta
    assert rhs.coefficient_at(lam - a) == 1
    assert rhs.coefficient_at(lam - d) == 0
    assert rhs.coefficient_at(lam - a - d) == 1
    assert rhs.coefficient_at(lam - d.scale(2)) == 1
    assert rhs.as_dict == A1_N1_RHS


def test_rhs_terms_alternate(A1):
    lam = crit(A1, A1_SUBGENERIC[2])
    terms = sum_formula_terms(A1, lam, Box(3, 6))
    assert [t.sign for t in terms] == [1, -1, 1, -1, 1, -1][:len(terms)]
    assert [t.offset for t in terms][:3] == [B(0, 2), B(2, 2), B(2, 4)]


def test_rhs_vanishes_for_generic_and_pairing_zero(A1, A2):
    for s, fin in ((A1, A1_GENERIC[0]), (A2, A2_GENERIC[0]), (A1, [-1])):
        assert sum_formula_rhs(s, crit(s, fin), Box(2, 4)).is_zero()


def test_rhs_requires_critical(A1):
    from affjantzen.weylcalc import NotCriticalError
    with pytest.raises(NotCriticalError):
        sum_formula_rhs(A1, A1.weight([0]), Box(1, 1))


def test_rhs_is_the_simple_character_of_the_first_down(A1, A2):
    """Subgeneric: RHS = ch L(alpha(down) lam), with coefficient 1 at alpha(down) lam."""
    for s, fin, a in ((A1, A1_SUBGENERIC[2], (1,)), (A2, A2_SUBGENERIC, (1, 0))):
        lam = crit(s, fin)
        box = Box(2, 4)
        low = down(s, a, lam)
        simple = char_shift(ch_simple_subgeneric(s, low, box), lam, box)
        rhs = sum_formula_rhs(s, lam, box)
        assert rhs.coeffs == simple.coeffs
        assert rhs.coefficient_at(low) == 1


def test_filtration_subgeneric(A1):
    lam = crit(A1, A1_SUBGENERIC[1])
    box = Box(2, 4)
    filt = subgeneric_filtration(A1, lam, box)
    assert filt.kind is Kind.SUBGENERIC
    full = ch_restricted_verma(A1, lam, box)
    total = {nu: filt.layer(0).at(nu) + filt.layer(1).at(nu) for nu in box.points(1)}
    assert total == full.as_dict
    assert filt.layer(2).is_zero() and filt.layer(5).is_zero()
    assert filt.layer(1).coefficient_at(down(A1, (1,), lam)) == 1
    # layer 0 is the simple quotient
    assert filt.layer(0).coeffs == ch_simple_subgeneric(A1, lam, box).coeffs


def test_filtration_generic_and_general(A1, A2):
    filt = subgeneric_filtration(A1, crit(A1, A1_GENERIC[0]), Box(2, 4))
    assert filt.kind is Kind.GENERIC and filt.layer(1).is_zero()
    with pytest.raises(NoFormulaError, match="no formula in scope"):
        subgeneric_filtration(A2, crit(A2, A2_GENERAL), Box(1, 2))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sum_formula_a1_subgeneric(A1, n):
    report = verify_sum_formula(A1, crit(A1, A1_SUBGENERIC[n]), Box(2, 5))
    assert report.verdict is True


@pytest.mark.parametrize("fin", A1_GENERIC)
def test_sum_formula_a1_generic(A1, fin):
    report = verify_sum_formula(A1, crit(A1, fin), Box(2, 5))
    assert report.verdict is True
    assert all(r.lhs == 0 for r in report.rows)


@pytest.mark.parametrize("fin,box", [(A2_SUBGENERIC, Box(2, 3)), (A2_GENERIC[0], Box(1, 4)),
                                     (A2_GENERAL, Box(1, 3))])
def test_sum_formula_a2(A2, fin, box):
    assert verify_sum_formula(A2, crit(A2, fin), box).verdict is True


def test_sum_formula_unverified_outside_type_a():
    s = build_root_system("B2")
    lam = crit(s, [0, F(1, 3)])
    report = verify_sum_formula(s, lam, Box(1, 2))
    assert report.verdict == "unverified"
    assert all(r.match is None for r in report.rows)


def test_report_json_shape(A1):
    report = verify_sum_formula(A1, crit(A1, A1_SUBGENERIC[1]), Box(1, 2))
    data = json.loads(report.dumps())
    assert set(data) == {"lambda", "box", "rows", "verdict"}
    assert set(data["rows"][0]) == {"mu", "lhs", "rhs", "match"}
    assert report.dumps() == report.dumps()


def test_shapovalov_along_rho(A1, A2):
    for s, lam, box in ((A1, crit(A1, [0]), Box(2, 4)), (A1, A1.weight([1], level=0), Box(2, 4)),
                        (A2, crit(A2, A2_SUBGENERIC), Box(1, 3))):
        report = verify_shapovalov(s, lam, box, "rho")
        assert report.verdict
        assert {r.status for r in report.rows} == {"constant ratio"}


def test_shapovalov_both_zero_along_rhobar(A1):
    report = verify_shapovalov(A1, crit(A1, A1_GENERIC[0]), Box(2, 4), "rhobar")
    assert report.verdict
    for r in report.rows:
        # an imaginary factor (m delta, k) needs eta >= delta, i.e. c0 >= 1 and height >= 1
        assert (r.status == "both zero") == (r.eta.c0 >= 1 and r.eta.cfin[0] >= 1)
    assert any(r.status == "both zero" for r in report.rows)
    assert json.loads(report.dumps())["direction"] == "rhobar"


def test_compare_determinants():
    t = PolyT.t()
    assert compare_determinants(t * 3, t) == ("constant ratio", 3)
    assert compare_determinants(PolyT([]), PolyT([])) == ("both zero", None)
    assert compare_determinants(t, PolyT([])) == ("mismatch", None)
    assert compare_determinants(t * t, t)[0] == "mismatch"


def test_linkage_via_expansion(A1, A2):
    for s, fin, box in ((A1, A1_SUBGENERIC[1], Box(2, 6)), (A1, A1_SUBGENERIC[3], Box(2, 6)),
                        (A2, A2_SUBGENERIC, Box(2, 4))):
        lam = crit(s, fin)
        assert linkage_check(s, lam, box).verdict


def test_literal_support_is_not_linked(A1):
    """lam - 2 alpha carries RHS coefficient 1 yet lies outside the orbit: it is not a highest weight."""
    lam = crit(A1, A1_SUBGENERIC[1])
    box = Box(2, 4)
    rhs = sum_formula_rhs(A1, lam, box)
    mu = lam - A1.root_weight((1,)).scale(2)
    assert rhs.coefficient_at(mu) == 1
    assert mu not in linkage_orbit(A1, lam, box)
    rep = linkage_check(A1, lam, box)
    assert B(0, 2) in rep.support_outside_orbit and B(0, 2) not in dict(rep.expansion)


def test_restricted_expansion_round_trip(A1):
    lam = crit(A1, A1_SUBGENERIC[2])
    box = Box(2, 5)
    exp = restricted_expansion(sum_formula_rhs(A1, lam, box))
    terms = {t.offset: t.sign for t in sum_formula_terms(A1, lam, box)}
    assert exp == terms


@pytest.mark.parametrize("name,fin", [("A1", A1_SUBGENERIC[1]), ("A1", A1_SUBGENERIC[2]),
                                      ("A2", A2_SUBGENERIC)])
def test_down_ord_crosscheck(name, fin):
    s = build_root_system(name)
    out = down_ord_crosscheck(s, crit(s, fin))
    assert out["agree"] and out["restricted"] == 1


def test_down_ord_needs_subgeneric(A1):
    with pytest.raises(ValueError):
        down_ord_crosscheck(A1, crit(A1, A1_GENERIC[0]))


def test_real_factor_comparison_reports(A1):
    gen = real_factor_comparison(A1, crit(A1, A1_GENERIC[0]), Box(2, 4))
    assert all(row["equal"] for row in gen)
    sub = real_factor_comparison(A1, crit(A1, A1_SUBGENERIC[1]), Box(2, 4))
    assert {"offset", "restricted", "real_factors", "equal"} <= set(sub[0])
