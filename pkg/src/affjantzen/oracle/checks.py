"""Sanity checks on the realized algebra and its Verma modules."""

from __future__ import annotations

import random
from itertools import product
from typing import Dict, List, Optional, Tuple

from ..exactalg import as_poly
from ..weylcalc import BoxCoords
from .liealg import LoopAlgebra
from .verma import VermaLattice


def jacobiator(alg: LoopAlgebra, a: int, b: int, c: int) -> Dict[int, int]:
    """``[a,[b,c]] + [b,[c,a]] + [c,[a,b]]``; empty when the identity holds."""
    total: Dict[int, int] = {}
    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
        for k, v in alg.bracket_vec({x: 1}, alg.bracket_vec({y: 1}, {z: 1})).items():
            total[k] = total.get(k, 0) + v
    return {k: v for k, v in total.items() if v}


def jacobi_failures(alg: LoopAlgebra, max_degree: int) -> List[Tuple[int, int, int]]:
    ids = alg.basis_ids(max_degree)
    return [(a, b, c) for a, b, c in product(ids, repeat=3)
            if a < b < c and jacobiator(alg, a, b, c)]


def antisymmetry_failures(alg: LoopAlgebra, max_degree: int) -> List[Tuple[int, int]]:
    ids = alg.basis_ids(max_degree)
    bad = []
    for a in ids:
        for b in ids:
            ab = alg.bracket_vec({a: 1}, {b: 1})
            ba = alg.bracket_vec({b: 1}, {a: 1})
            if {k: -v for k, v in ba.items()} != ab:
                bad.append((a, b))
    return bad


def random_monomial(v: VermaLattice, rng: random.Random, nu: BoxCoords):
    basis = v.basis(nu)
    return rng.choice(basis)


def contravariance_defect(v: VermaLattice, rng: random.Random, max_c0: int = 1,
                          max_height: int = 2, max_degree: Optional[int] = None,
                          direct: bool = False) -> Optional[tuple]:
    """Test ``F(u x, y) = F(x, sigma(u) y)`` on one random triple; returns the triple on failure.

    ``x`` is a PBW monomial at offset ``nu``, ``u`` a basis element of the
    algebra of loop degree at most ``max_degree`` (default ``max_c0 + 1``)
    moving ``nu`` to ``nu2``, and ``y`` a PBW monomial at ``nu2``.  With
    ``direct`` the form is evaluated as a vacuum coefficient instead of
    through the recursive Gram matrix, which keeps deep weight spaces cheap.
    """
    alg = v.alg
    l = v.system.rank
    nu = BoxCoords(rng.randint(0, max_c0), tuple(rng.randint(0, max_height) for _ in range(l)))
    x = random_monomial(v, rng, nu)
    u = rng.choice(alg.basis_ids(max_c0 + 1 if max_degree is None else max_degree))
    el = alg.elements[u]
    # offsets grow when u lowers the weight
    if el.box is None:
        nu2 = nu
    elif el.kind == "neg":
        nu2 = nu + el.box
    else:
        nu2 = nu - el.box
    if not nu2.is_nonneg():
        return None
    y = random_monomial(v, rng, nu2)
    one = as_poly(1)
    if direct:
        lhs = v.pair_direct(v.act(u, {x: one}), {y: one})
        rhs = v.pair_direct({x: one}, v.act(alg.sigma(u), {y: one}))
    else:
        lhs = v.pair(nu2, v.act(u, {x: one}), {y: one})
        rhs = v.pair(nu, {x: one}, v.act(alg.sigma(u), {y: one}))
    return None if lhs == rhs else (x, u, y)
