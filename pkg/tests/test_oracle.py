import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from affjantzen.charbox import kostant_P, restricted_P
from affjantzen.exactalg import INF, PolyT, det_exact, eval_rows, rank_q
from affjantzen.oracle import LoopAlgebra, UnsupportedSeriesError, VermaLattice
from affjantzen.oracle.checks import antisymmetry_failures, contravariance_defect, jacobi_failures
from affjantzen.oracle.sums import DegenerateFormError, oracle_jantzen_sum, oracle_quotient_dims
from affjantzen.rootdata import build_root_system
from affjantzen.weylcalc import Box, BoxCoords, NotCriticalError

from conftest import A1_GENERIC, A1_SUBGENERIC, A2_GENERAL, A2_GENERIC, A2_SUBGENERIC, crit


def B(c0, *cfin):
    return BoxCoords(c0, tuple(cfin))


@pytest.fixture(scope="module")
def alg1(A1):
    return LoopAlgebra(A1)


def test_bracket_examples(alg1):
    e1, f1 = alg1.E(0, 1, 1), alg1.E(1, 0, -1)
    terms, central = alg1.bracket(e1, f1)
    assert terms == ((alg1.H(0, 0), 1),) and central == 1
    h1, hm1 = alg1.H(0, 1), alg1.H(0, -1)
    assert alg1.bracket(h1, hm1) == ((), 2)
    for x in alg1.basis_ids(2):
        assert alg1.bracket(alg1.c, x) == ((), 0)


def test_unsupported_series():
    with pytest.raises(UnsupportedSeriesError):
        LoopAlgebra(build_root_system("B2"))


def test_sigma_is_an_anti_involution(alg1):
    for x in alg1.basis_ids(3):
        assert alg1.sigma(alg1.sigma(x)) == x
        for y in alg1.basis_ids(1):
            # sigma([x, y]) = [sigma(y), sigma(x)]
            terms, central = alg1.bracket(x, y)
            lhs = {alg1.sigma(z): v for z, v in terms}
            if central:
                lhs[alg1.c] = central
            assert lhs == alg1.bracket_vec({alg1.sigma(y): 1}, {alg1.sigma(x): 1})


@pytest.mark.parametrize("name", ["A1", "A2"])
def test_antisymmetry(name):
    alg = LoopAlgebra(build_root_system(name))
    assert antisymmetry_failures(alg, 3) == []


def test_verma_dims_equal_kostant(A1, A2):
    for s, box in ((A1, Box(2, 5)), (A2, Box(2, 3))):
        v = VermaLattice(s, crit(s, [0] * s.rank), None)
        for nu in box.points(s.rank):
            assert v.dim(nu) == kostant_P(s, nu)


def test_action_examples(A1):
    lam = crit(A1, [F(1, 3)])
    v = VermaLattice(A1, lam, "rhobar")
    alg = v.alg
    e, f = alg.E(0, 1), alg.E(1, 0)
    # e f v = <lam + t rhobar, alpha^vee> v
    assert v.act(e, v.act(f, {(): PolyT.const(1)})) == {(): PolyT([F(1, 3), 1])}
    assert v.act(e, {(): PolyT.const(1)}) == {}
    assert v.act(alg.E(1, 0, 1), {(): PolyT.const(1)}) == {}
    x = v.act(f, {(): PolyT.const(1)})
    assert v.act(alg.c, x) == {m: c * -2 for m, c in x.items()}


def test_gram_examples(A1):
    lam = crit(A1, A1_SUBGENERIC[1])
    v = VermaLattice(A1, lam, "rhobar")
    assert v.gram_matrix(B(0, 0)).rows() == [[PolyT.const(1)]]
    assert v.gram_matrix(B(0, 1)).rows() == [[PolyT.t()]]
    g = v.gram_matrix(B(1, 1))
    assert g.nrows == 2 and det_exact(g) == PolyT([])
    rows = g.rows()
    assert all(rows[i][j] == rows[j][i] for i in range(2) for j in range(2))


def test_singular_vectors(A1):
    assert VermaLattice(A1, A1.weight([F(1, 2)], level=1), "rho").singular_vectors(1) == []
    assert VermaLattice(A1, A1.weight([F(1, 2)], level=F(-1, 3)), None).singular_vectors(2) == []
    gen = VermaLattice(A1, crit(A1, A1_GENERIC[0]), "rhobar")
    assert len(gen.singular_vectors(1)) >= 1
    with pytest.raises(ValueError):
        gen.singular_vectors(0)


def test_singular_vectors_are_killed(A2):
    v = VermaLattice(A2, crit(A2, A2_SUBGENERIC), "rhobar")
    nu = B(1, 1, 1)
    sv = v.singular_vectors(1)
    assert sv
    for row in sv:
        vec = v.sparse(nu, row)
        for e in v.alg.chevalley_e():
            assert v.act(e, vec) == {}


def test_restricted_needs_rhobar(A1):
    v = VermaLattice(A1, crit(A1, [0]), "rho")
    with pytest.raises(ValueError):
        v.submodule_basis(B(1, 1))


def test_restricted_examples(A1):
    v = VermaLattice(A1, crit(A1, A1_SUBGENERIC[1]), "rhobar")
    assert v.quotient_dim(B(1, 1)) == 1
    assert v.restricted_ord(B(0, 1)) == 1
    assert v.restricted_ord(B(1, 1)) == 0
    # degree-zero weights never meet the singular submodule
    for h in range(5):
        assert v.submodule_basis(B(0, h)) == []


def test_noncritical_quotient_is_everything(A1):
    v = VermaLattice(A1, A1.weight([F(1, 2)], level=F(1, 3)), "rhobar")
    for nu in Box(2, 3).points(1):
        assert v.quotient_dim(nu) == v.dim(nu)


@pytest.mark.parametrize("name,fin,box", [
    ("A1", A1_SUBGENERIC[1], Box(2, 5)), ("A1", A1_GENERIC[0], Box(2, 5)),
    ("A2", A2_SUBGENERIC, Box(1, 3)), ("A2", A2_GENERAL, Box(1, 3)),
])
def test_quotient_dims_and_radical(name, fin, box):
    """Quotient dims follow the real-root partition function; the submodule is the whole radical."""
    s = build_root_system(name)
    lam = crit(s, fin)
    v = VermaLattice(s, lam, "rhobar")
    for nu, d in oracle_quotient_dims(s, lam, box).items():
        assert d == restricted_P(s, nu)
        g = v.gram_matrix(nu).rows()
        assert len(v.submodule_basis(nu)) == len(g) - rank_q(eval_rows(g, F(7, 13)))


def test_oracle_jantzen_examples(A1):
    lam = crit(A1, A1_SUBGENERIC[1])
    ch = oracle_jantzen_sum(A1, lam, Box(2, 2))
    assert ch.coefficient_at(lam - A1.root_weight((1,))) == 1
    assert ch.coefficient_at(lam - A1.delta) == 0
    gen = crit(A1, A1_GENERIC[1])
    assert oracle_jantzen_sum(A1, gen, Box(2, 4)).is_zero()
    with pytest.raises(NotCriticalError):
        oracle_jantzen_sum(A1, A1.weight([0]), Box(1, 1))


def test_unrestricted_sum_uses_rho(A1):
    from affjantzen.shapodet import ord_profile_at
    lam = crit(A1, A1_SUBGENERIC[1])
    ch = oracle_jantzen_sum(A1, lam, Box(2, 4), restricted=False)
    for nu in Box(2, 4).points(1):
        assert ch.at(nu) == ord_profile_at(A1, lam, nu, "rho")


def test_radical_interpretation(A1):
    """ord >= 1 exactly where the induced form at t = 0 is degenerate."""
    from affjantzen.exactalg import complement_columns
    lam = crit(A1, A1_SUBGENERIC[2])
    v = VermaLattice(A1, lam, "rhobar")
    for nu in Box(2, 4).points(1):
        g = v.gram_matrix(nu).rows()
        cols = complement_columns(v.submodule_basis(nu), len(g))
        block = [[g[i][j].at(0) for j in cols] for i in cols]
        degenerate = rank_q(block) < len(cols)
        assert (v.restricted_ord(nu) >= 1) == degenerate


def test_jacobi_a1():
    alg = LoopAlgebra(build_root_system("A1"))
    assert jacobi_failures(alg, 3) == []


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_contravariance_random(seed):
    s = build_root_system("A2" if seed % 2 else "A1")
    rng = random.Random(seed)
    lam = s.weight([F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(s.rank)],
                   level=F(rng.randint(-6, 6), rng.randint(1, 2)))
    v = VermaLattice(s, lam, rng.choice(["rho", "rhobar"]))
    assert contravariance_defect(v, rng, max_c0=1, max_height=2) is None


def test_direct_pairing_matches_gram(A2):
    from affjantzen.exactalg import as_poly
    v = VermaLattice(A2, A2.weight([F(1, 3), 2], level=F(5, 2)), "rho")
    nu = B(1, 2, 1)
    g = v.gram_matrix(nu).rows()
    one = as_poly(1)
    basis = v.basis(nu)
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            assert v.pair_direct({a: one}, {b: one}) == g[i][j]


def test_contravariance_deep_direct():
    rng = random.Random(5)
    s = build_root_system("A2")
    v = VermaLattice(s, crit(s, [F(1, 2), 0]), "rho")
    for _ in range(50):
        assert contravariance_defect(v, rng, max_c0=3, max_height=3, max_degree=3, direct=True) is None


def test_degenerate_form_error_is_reported():
    assert issubclass(DegenerateFormError, ArithmeticError)
