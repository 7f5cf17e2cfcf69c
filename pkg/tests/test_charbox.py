from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from affjantzen.charbox import (NoFormulaError, OutOfBoxError, ch_restricted_verma,
                                ch_simple_subgeneric, ch_verma, char_add, char_shift, char_sub,
                                colored_partitions, kostant_P, restricted_P)
from affjantzen.weylcalc import Box, BoxCoords, NotCriticalError, below, down

from brute import enumerate_multisets
from conftest import A1_GENERIC, A1_SUBGENERIC, A2_GENERAL, A2_SUBGENERIC, crit


def B(c0, *cfin):
    return BoxCoords(c0, tuple(cfin))


def test_partition_examples(A1, A2):
    assert kostant_P(A1, B(0, 0)) == 1
    assert kostant_P(A1, B(1, 1)) == 2  # delta
    assert kostant_P(A1, B(2, 2)) == 6  # 2 delta
    assert restricted_P(A1, B(1, 1)) == 1
    assert restricted_P(A1, B(2, 1)) == 2  # 2 delta - alpha
    assert kostant_P(A2, B(0, 1, 1)) == 2
    assert kostant_P(A1, B(0, -1)) == 0


def test_colored_partitions():
    assert [colored_partitions(m, 1) for m in range(6)] == [1, 1, 2, 3, 5, 7]
    assert [colored_partitions(m, 2) for m in range(5)] == [1, 2, 5, 10, 20]


@pytest.mark.parametrize("name,hmax", [("A1", 6), ("A2", 6)])
def test_partition_functions_match_brute_force(name, hmax):
    from affjantzen.rootdata import build_root_system
    s = build_root_system(name)
    full = enumerate_multisets(s, 2, hmax)
    real = enumerate_multisets(s, 2, hmax, with_imaginary=False)
    for nu in Box(2, hmax).points(s.rank):
        assert kostant_P(s, nu) == full[nu], nu
        assert restricted_P(s, nu) == real[nu], nu


@pytest.mark.parametrize("name,hmax", [("A1", 8), ("A2", 6)])
def test_convolution_identity(name, hmax):
    from affjantzen.rootdata import build_root_system
    s = build_root_system(name)
    delta = B(1, *s.theta)
    for nu in Box(3, hmax).points(s.rank):
        total = 0
        for k in range(nu.c0 + 1):
            rest = nu - delta.scale(k)
            total += restricted_P(s, rest) * colored_partitions(k, s.rank)
        assert kostant_P(s, nu) == total


def test_verma_characters(A1, A2):
    lam = crit(A1, [0])
    ch = ch_verma(A1, lam, Box(1, 2))
    assert ch.coefficient_at(lam) == 1
    assert ch.coefficient_at(lam - A1.delta) == 2
    chr_ = ch_restricted_verma(A1, lam, Box(1, 2))
    assert chr_.coefficient_at(lam) == 1
    assert chr_.coefficient_at(lam - A1.delta) == 1
    assert chr_.coefficient_at(lam - A1.root_weight((1,))) == 1
    mu = crit(A2, [0, 0])
    assert ch_verma(A2, mu, Box(0, 2)).coefficient_at(mu - A2.root_weight((1, 1))) == 2
    with pytest.raises(NotCriticalError):
        ch_restricted_verma(A1, A1.weight([0]), Box(1, 1))


def test_out_of_box_is_a_signal(A1):
    lam = crit(A1, [0])
    ch = ch_restricted_verma(A1, lam - A1.root_weight((1,)), Box(1, 2))
    with pytest.raises(OutOfBoxError):
        ch.coefficient_at(lam)
    with pytest.raises(OutOfBoxError):
        ch.at(B(2, 0))


def test_character_arithmetic(A1):
    lam = crit(A1, [F(-1, 2)])
    ch = ch_restricted_verma(A1, lam, Box(2, 4))
    assert char_sub(ch, ch).is_zero()
    assert char_add(ch, ch).at(B(1, 1)) == 2
    # shifting by delta re-indexes the coefficients
    up = lam + A1.delta
    shifted = char_shift(ch, up, Box(3, 5))
    for nu, v in ch.coeffs:
        assert shifted.coefficient_at(below(A1, lam, nu)) == v
    assert shifted.coefficient_at(lam) == ch.coefficient_at(lam)
    with pytest.raises(ValueError):
        char_add(ch, ch_restricted_verma(A1, up, Box(2, 4)))


def test_character_json_is_stable(A1):
    ch = ch_restricted_verma(A1, crit(A1, [0]), Box(1, 1))
    assert ch.dumps() == ch_restricted_verma(A1, crit(A1, [0]), Box(1, 1)).dumps()
    assert ch.to_json()["entries"][0] == {"c0": 0, "cfin": [0], "value": 1}


def test_simple_subgeneric_examples(A1):
    lam = crit(A1, A1_SUBGENERIC[1])
    low = down(A1, (1,), lam)
    ch = ch_simple_subgeneric(A1, low, Box(3, 6))
    assert ch.coefficient_at(lam - A1.delta) == 0
    assert ch.coefficient_at(lam - A1.delta.scale(2)) == 1
    gen = crit(A1, A1_GENERIC[0])
    assert ch_simple_subgeneric(A1, gen, Box(2, 4)) == ch_restricted_verma(A1, gen, Box(2, 4))


def test_simple_general_has_no_formula(A2):
    with pytest.raises(NoFormulaError, match="no formula in scope"):
        ch_simple_subgeneric(A2, crit(A2, A2_GENERAL), Box(1, 2))


@pytest.mark.parametrize("name,fin", [("A1", A1_SUBGENERIC[1]), ("A1", A1_SUBGENERIC[2]),
                                      ("A1", A1_SUBGENERIC[3]), ("A2", A2_SUBGENERIC)])
def test_short_exact_sequence(name, fin):
    """ch L(lam) + ch L(alpha(down)lam) = ch of the restricted Verma module."""
    from affjantzen.rootdata import build_root_system
    from affjantzen.weylcalc import integral_roots
    s = build_root_system(name)
    lam = crit(s, fin)
    box = Box(2, 5)
    alpha = integral_roots(s, lam).alpha
    top = ch_simple_subgeneric(s, lam, box)
    low = char_shift(ch_simple_subgeneric(s, down(s, alpha, lam), box), lam, box)
    assert char_add(top, low).coeffs == ch_restricted_verma(s, lam, box).coeffs
    for _, v in top.coeffs + low.coeffs:
        assert v >= 0


@given(st.integers(-5, 5), st.integers(0, 2), st.integers(0, 5))
def test_coefficients_nonnegative(m, dmax, hmax):
    from affjantzen.rootdata import build_root_system
    s = build_root_system("A1")
    lam = crit(s, [m])
    for ch in (ch_verma(s, lam, Box(dmax, hmax)), ch_restricted_verma(s, lam, Box(dmax, hmax)),
               ch_simple_subgeneric(s, lam, Box(dmax, hmax))):
        assert all(v > 0 for _, v in ch.coeffs)
