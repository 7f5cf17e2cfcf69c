"""The restricted Jantzen sum formula at the critical level, and drivers that check it.

The right-hand side is an alternating sum of restricted Verma characters
along the down-chains of the integral positive roots.  The left-hand side
comes from the oracle (ord_t of restricted Gram determinants).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from .charbox import (Character, NoFormulaError, ch_restricted_verma, ch_simple_subgeneric, char_shift,
                      char_sub, counter, weight_json)
from .exactalg import INF, PolyT
from .rootdata import AffineWeight, FiniteRootSystem
from .shapodet import ord_profile_at, product_polynomial, real_ord_profile_at, shapovalov_factors
from .weylcalc import (Box, BoxCoords, Kind, below, down, integral_roots, leq, linkage_orbit,
                       require_critical)


# -- right-hand side ---------------------------------------------------------------

@dataclass(frozen=True)
class RhsTerm:
    alpha: Tuple[int, ...]
    k: int
    sign: int
    offset: BoxCoords  # lam - alpha(down)^k lam


def sum_formula_terms(system: FiniteRootSystem, lam: AffineWeight, box: Box) -> List[RhsTerm]:
    """Signed restricted Verma characters in the sum formula whose highest weight meets ``box``.

    Roots with ``<lam + rho, alpha^vee> = 0`` are fixed by down and telescope to zero.
    """
    require_critical(system, lam)
    data = integral_roots(system, lam)
    terms = []
    for alpha, n in data.pairings:
        if n == 0:
            continue
        cur, k = lam, 0
        while True:
            cur = down(system, alpha, cur)
            k += 1
            off = leq(system, cur, lam)
            if off.c0 > box.dmax or off.height > box.hmax:
                # offsets grow along the chain, so nothing later re-enters the box
                break
            terms.append(RhsTerm(alpha, k, (-1) ** (k - 1), off))
    return terms


def sum_formula_rhs(system: FiniteRootSystem, lam: AffineWeight, box: Box) -> Character:
    pc = counter(system)
    terms = sum_formula_terms(system, lam, box)
    vals: Dict[BoxCoords, int] = {}
    for nu in box.points(system.rank):
        vals[nu] = sum(t.sign * pc.restricted(nu - t.offset) for t in terms)
    return Character.build(system, lam, box, vals)


def restricted_expansion(ch: Character) -> Dict[BoxCoords, int]:
    """Write ``ch`` as a sum of restricted Verma characters (by offsets below ``ch.base``).

    Peels off a maximal weight of the support each time; the transition matrix
    is unitriangular so the result is unique within the box.
    """
    pc = counter(ch.system)
    points = ch.box.points(ch.system.rank)
    rest = ch.as_dict
    out: Dict[BoxCoords, int] = {}
    while rest:
        top = min(rest, key=lambda nu: (nu.c0, nu.height, nu))
        c = rest[top]
        out[top] = c
        nxt = {}
        for nu in points:
            w = rest.get(nu, 0) - c * pc.restricted(nu - top)
            if w:
                nxt[nu] = w
        rest = nxt
    return dict(sorted(out.items()))


# -- subgeneric filtration ------------------------------------------------------------

class FiltrationMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class FiltrationDescriptor:
    kind: Kind
    layers: Tuple[Character, ...]

    def layer(self, i: int) -> Character:
        if i < len(self.layers):
            return self.layers[i]
        base = self.layers[0]
        return Character.build(base.system, base.base, base.box, {})


def subgeneric_filtration(system: FiniteRootSystem, lam: AffineWeight, box: Box) -> FiltrationDescriptor:
    """Layers of the Jantzen filtration for generic or subgeneric ``lam``.

    Subgeneric: ``Delta(lam) > L(alpha(down)lam) > 0``; layer 0 is ch L(lam).
    """
    require_critical(system, lam)
    data = integral_roots(system, lam)
    full = ch_restricted_verma(system, lam, box)
    if data.kind is Kind.GENERIC:
        return FiltrationDescriptor(Kind.GENERIC, (full,))
    if data.kind is not Kind.SUBGENERIC:
        raise NoFormulaError("no formula in scope: the filtration is only known for generic and subgeneric weights")
    lower = down(system, data.alpha, lam)
    one = char_shift(ch_simple_subgeneric(system, lower, box), lam, box)
    zero = char_sub(full, one)
    two = Character.build(system, lam, box, {})
    rhs = sum_formula_rhs(system, lam, box)
    if one.coeffs != rhs.coeffs:
        raise FiltrationMismatch("layer 1 does not reproduce the sum formula")
    return FiltrationDescriptor(Kind.SUBGENERIC, (zero, one, two))


# -- reports ------------------------------------------------------------------------

def _mu_json(system, lam, nu: BoxCoords) -> dict:
    return {"offset": nu.to_json(), "weight": weight_json(below(system, lam, nu))}


@dataclass(frozen=True)
class SumRow:
    offset: BoxCoords
    lhs: Optional[int]
    rhs: int

    @property
    def match(self) -> Optional[bool]:
        return None if self.lhs is None else self.lhs == self.rhs


@dataclass(frozen=True)
class SumFormulaReport:
    system: FiniteRootSystem = field(compare=False, repr=False)
    lam: AffineWeight
    box: Box
    rows: Tuple[SumRow, ...]
    verified: bool = True

    @property
    def verdict(self) -> Union[bool, str]:
        if not self.verified:
            return "unverified"
        return all(r.match for r in self.rows)

    def to_json(self) -> dict:
        return {
            "lambda": weight_json(self.lam),
            "box": self.box.to_json(),
            "rows": [{"mu": _mu_json(self.system, self.lam, r.offset), "lhs": r.lhs, "rhs": r.rhs,
                      "match": r.match} for r in self.rows],
            "verdict": self.verdict,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def verify_sum_formula(system: FiniteRootSystem, lam: AffineWeight, box: Box) -> SumFormulaReport:
    from .oracle.sums import oracle_jantzen_sum, oracle_supported

    rhs = sum_formula_rhs(system, lam, box)
    if not oracle_supported(system):
        rows = tuple(SumRow(nu, None, rhs.at(nu)) for nu in box.points(system.rank))
        return SumFormulaReport(system, lam, box, rows, verified=False)
    lhs = oracle_jantzen_sum(system, lam, box, restricted=True)
    rows = tuple(SumRow(nu, lhs.at(nu), rhs.at(nu)) for nu in box.points(system.rank))
    return SumFormulaReport(system, lam, box, rows)


@dataclass(frozen=True)
class ShapovalovRow:
    eta: BoxCoords
    oracle_det: PolyT
    product: PolyT
    status: str  # "constant ratio", "both zero" or "mismatch"
    ratio: Optional[object]

    @property
    def ok(self) -> bool:
        return self.status != "mismatch"


@dataclass(frozen=True)
class ShapovalovReport:
    lam: AffineWeight
    direction: str
    rows: Tuple[ShapovalovRow, ...]

    @property
    def verdict(self) -> bool:
        return all(r.ok for r in self.rows)

    def to_json(self) -> dict:
        return {"lambda": weight_json(self.lam), "direction": self.direction,
                "rows": [{"eta": r.eta.to_json(), "oracle_det": repr(r.oracle_det),
                          "product": repr(r.product), "status": r.status,
                          "ratio": None if r.ratio is None else str(r.ratio)} for r in self.rows],
                "verdict": self.verdict}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def compare_determinants(det: PolyT, prod: PolyT) -> Tuple[str, Optional[object]]:
    if not det and not prod:
        return "both zero", None
    if not det or not prod:
        return "mismatch", None
    q, r = det.divmod(prod)
    if r or q.degree != 0:
        return "mismatch", None
    return "constant ratio", q.constant()


def verify_shapovalov(system: FiniteRootSystem, lam: AffineWeight, box: Box,
                      dir_name: str = "rho") -> ShapovalovReport:
    """Oracle Gram determinants along ``lam + t*dir`` against the product formula.

    Along rho-bar at the critical level any eta with an imaginary factor
    gives two identically zero sides, reported as "both zero".
    """
    from .oracle.sums import lattice

    v = lattice(system, lam, dir_name)
    rows = []
    for eta in box.points(system.rank):
        det = v.det(eta)
        prod = product_polynomial(system, shapovalov_factors(system, eta), lam, dir_name)
        status, ratio = compare_determinants(det, prod)
        rows.append(ShapovalovRow(eta, det, prod, status, ratio))
    return ShapovalovReport(lam, dir_name, tuple(rows))


@dataclass(frozen=True)
class LinkageReport:
    lam: AffineWeight
    expansion: Tuple[Tuple[BoxCoords, int], ...]  # restricted Verma multiplicities of the RHS
    violations: Tuple[BoxCoords, ...]  # expansion weights outside the orbit
    support_outside_orbit: Tuple[BoxCoords, ...]  # informational: weights of the support itself

    @property
    def verdict(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"lambda": weight_json(self.lam),
                "expansion": [{"offset": k.to_json(), "coeff": c} for k, c in self.expansion],
                "violations": [k.to_json() for k in self.violations],
                "support_outside_orbit": [k.to_json() for k in self.support_outside_orbit],
                "verdict": self.verdict}


def linkage_check(system: FiniteRootSystem, lam: AffineWeight, box: Box) -> LinkageReport:
    """Highest weights in the sum formula must be linked to and below ``lam``.

    A character sum also has non-highest weights in its support (e.g. every
    weight of L(alpha(down)lam)), so the check runs on the expansion into
    restricted Verma characters; the raw support is reported alongside.
    """
    rhs = sum_formula_rhs(system, lam, box)
    orbit = {leq(system, w, lam) for w in linkage_orbit(system, lam, box)}
    exp = restricted_expansion(rhs)
    bad = tuple(nu for nu in exp if nu not in orbit or not nu.is_nonneg())
    outside = tuple(nu for nu in rhs.support() if nu not in orbit)
    return LinkageReport(lam, tuple(exp.items()), bad, outside)


# -- cross-checks ----------------------------------------------------------------------

def down_ord_crosscheck(system: FiniteRootSystem, lam: AffineWeight) -> Dict[str, object]:
    """At ``mu = alpha(down)lam`` the restricted and unrestricted determinants share their order."""
    from .oracle.sums import lattice

    data = integral_roots(system, lam)
    if data.kind is not Kind.SUBGENERIC:
        raise ValueError("the cross-check needs a subgeneric weight")
    nu = leq(system, down(system, data.alpha, lam), lam)
    restricted = lattice(system, lam, "rhobar").restricted_ord(nu)
    unrestricted = lattice(system, lam, "rho").ord_det(nu)
    formula = ord_profile_at(system, lam, nu, "rho")
    return {"offset": nu, "restricted": restricted, "unrestricted": unrestricted, "formula": formula,
            "agree": restricted == unrestricted == formula}


def real_factor_comparison(system: FiniteRootSystem, lam: AffineWeight, box: Box) -> List[Dict[str, object]]:
    """Oracle restricted ords next to the real-root-factor sum along rho-bar (no equality asserted)."""
    from .oracle.sums import lattice

    v = lattice(system, lam, "rhobar")
    out = []
    for nu in box.points(system.rank):
        o = v.restricted_ord(nu)
        r = real_ord_profile_at(system, lam, nu, "rhobar")
        out.append({"offset": nu, "restricted": o, "real_factors": r, "equal": o == r})
    return out
