from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from affjantzen.rootdata import (AffineRoot, CartanDatum, UnknownSeriesError, build_root_system)

# (number of roots, dual Coxeter number) from the classification tables
TABLE = {
    "A1": (2, 2), "A2": (6, 3), "A3": (12, 4), "B2": (8, 3), "B3": (18, 5), "C3": (18, 4),
    "D4": (24, 6), "E6": (72, 12), "E7": (126, 18), "F4": (48, 9), "G2": (12, 4),
}


@pytest.mark.parametrize("name", sorted(TABLE))
def test_classification_counts(name):
    s = build_root_system(name)
    count, hv = TABLE[name]
    assert len(s.roots) == count
    assert len(s.positive) == count // 2
    assert s.dual_coxeter == hv
    assert s.root_form(s.theta, s.theta) == 2


def test_e8_dual_coxeter():
    s = build_root_system("E8")
    assert len(s.roots) == 240 and s.dual_coxeter == 30


def test_short_roots_of_g2_and_b2():
    g2 = build_root_system("G2")
    lengths = sorted({g2.root_form(a, a) for a in g2.roots})
    assert lengths == [F(2, 3), 2]
    b2 = build_root_system("B2")
    assert sorted({b2.root_form(a, a) for a in b2.roots}) == [1, 2]


def test_parse_and_errors():
    assert CartanDatum.parse("a2").name == "A2"
    for bad in ("Z9", "A0", "E5", "D2", "X"):
        with pytest.raises(UnknownSeriesError):
            CartanDatum.parse(bad)


def test_cartan_convention(A2):
    assert A2.cartan == ((2, -1), (-1, 2))
    g2 = build_root_system("G2")
    # alpha_1 short: <alpha_2, alpha_1^vee> = -3
    assert g2.cartan[0][1] == -3 and g2.cartan[1][0] == -1


def test_theta_and_rho(A2):
    assert A2.theta == (1, 1)
    assert A2.rho_bar_simple == (1, 1)
    assert A2.bilinear(A2.rho(), A2.delta) == 3
    assert A2.bilinear(A2.lambda0, A2.delta) == 1
    assert A2.bilinear(A2.delta, A2.delta) == 0


def test_affine_root_arithmetic():
    r = AffineRoot((1, 0), 1)
    assert (-r).n == -1 and r.is_real and r.is_positive
    assert AffineRoot((0, 0), 2).is_imaginary
    assert not AffineRoot((1, 0), 0).__neg__().is_positive
    with pytest.raises(ValueError):
        AffineRoot((0, 0), 0)


def test_mult(A2):
    assert A2.mult(AffineRoot((0, 0), 1)) == 2
    assert A2.mult(AffineRoot((1, 1), -3)) == 1


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@given(rationals, rationals, rationals, rationals, st.sampled_from([(1, 0), (0, 1), (1, 1)]),
       st.integers(-3, 3))
def test_reflections_are_involutions_and_isometries(a, b, lev, dd, fin, n):
    s = build_root_system("A2")
    x = s.weight([a, b], level=lev, ddeg=dd)
    y = s.weight([b, a], level=dd, ddeg=lev)
    beta = AffineRoot(fin, n)
    assert s.reflect(beta, s.reflect(beta, x)) == x
    assert s.bilinear(s.reflect(beta, x), s.reflect(beta, y)) == s.bilinear(x, y)
    assert s.coroot_pairing(s.root_weight(beta), beta) == 2


@given(st.sampled_from(sorted(TABLE)))
def test_form_matrix_symmetric_and_cartan_compatible(name):
    s = build_root_system(name)
    m, a = s.form_matrix, s.cartan
    for i in range(s.rank):
        for j in range(s.rank):
            assert m[i][j] == m[j][i]
            assert a[i][j] == 2 * m[i][j] / m[i][i]


def test_level_of_rho_is_dual_coxeter(A1):
    assert A1.rho().level == 2
    assert A1.coroot_pairing(A1.rho(), AffineRoot((-1,), 1)) == 1
