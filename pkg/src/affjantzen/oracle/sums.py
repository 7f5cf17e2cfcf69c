"""Jantzen sums read off oracle Gram determinants (one ord_t per weight)."""

from __future__ import annotations

from typing import Dict, Optional, Tuple

from ..charbox import Character
from ..exactalg import INF
from ..rootdata import AffineWeight, FiniteRootSystem
from ..weylcalc import Box, require_critical
from .verma import VermaLattice


class DegenerateFormError(ArithmeticError):
    """The restricted form vanished identically at some weight, which should never happen."""


_LATTICES: Dict[Tuple[str, AffineWeight, Optional[str]], VermaLattice] = {}


def oracle_supported(system: FiniteRootSystem) -> bool:
    return system.datum.series == "A"


def lattice(system: FiniteRootSystem, lam: AffineWeight, dir_name: Optional[str]) -> VermaLattice:
    """Shared lattice per (system, weight, direction) so caches survive between calls."""
    key = (system.name, lam, dir_name)
    v = _LATTICES.get(key)
    if v is None:
        v = _LATTICES[key] = VermaLattice(system, lam, dir_name)
    return v


def oracle_jantzen_sum(system: FiniteRootSystem, lam: AffineWeight, box: Box,
                       restricted: bool = True) -> Character:
    """Coefficient at ``lam - nu`` is ord_t of the (restricted) Gram determinant there.

    Restricted mode deforms along rho-bar and quotients by the singular
    submodule; unrestricted mode deforms along rho on the full Verma lattice.
    """
    if restricted:
        require_critical(system, lam)
        v = lattice(system, lam, "rhobar")
    else:
        v = lattice(system, lam, "rho")
    vals = {}
    for nu in box.points(system.rank):
        o = v.restricted_ord(nu) if restricted else v.ord_det(nu)
        if o is INF:
            raise DegenerateFormError(f"form is identically zero at offset {nu} for {lam}")
        vals[nu] = o
    return Character.build(system, lam, box, vals)


def oracle_quotient_dims(system: FiniteRootSystem, lam: AffineWeight, box: Box) -> Dict:
    v = lattice(system, lam, "rhobar")
    return {nu: v.quotient_dim(nu) for nu in box.points(system.rank)}
