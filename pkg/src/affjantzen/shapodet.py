"""Shapovalov determinant as a product of linear factors, and its t-adic profile.

A factor ``(beta, n)`` stands for ``(lam + rho | beta) - n (beta|beta)/2``
evaluated along a deformation ``lam + t*dir``; this differs from the
coroot-style ``h_beta + rho(h_beta) - n(beta|beta)/2`` only by the
identification of h with h^* through the form, so zero sets agree.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import List, Tuple

from .charbox import kostant_P
from .exactalg import INF, PolyT, as_poly, ord_t
from .rootdata import AffineRoot, AffineWeight, FiniteRootSystem
from .weylcalc import BoxCoords, leq, positive_real_roots, root_box


@dataclass(frozen=True)
class DetFactor:
    beta: AffineRoot
    n: int
    exponent: int

    def to_json(self) -> dict:
        kind = "real" if self.beta.is_real else "imaginary"
        return {"beta": {"kind": kind, "root": list(self.beta.finite), "n": self.beta.n},
                "n": self.n, "exponent": self.exponent}


@dataclass(frozen=True)
class DetFactorization:
    eta: BoxCoords
    factors: Tuple[DetFactor, ...]

    @property
    def total_exponent(self) -> int:
        return sum(f.exponent for f in self.factors)

    def to_json(self) -> list:
        return [f.to_json() for f in self.factors]

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def positive_roots_upto(system: FiniteRootSystem, dmax: int) -> List[AffineRoot]:
    out = positive_real_roots(system, dmax)
    out.extend(AffineRoot((0,) * system.rank, m) for m in range(1, dmax + 1))
    return out


def shapovalov_factors(system: FiniteRootSystem, eta: BoxCoords) -> DetFactorization:
    """All ``(beta, n)`` with ``P(eta - n beta) > 0`` and their exponents ``mult(beta) P(eta - n beta)``."""
    factors = []
    for beta in positive_roots_upto(system, eta.c0):
        b = root_box(system, beta)
        n = 1
        while True:
            rest = eta - b.scale(n)
            if not rest.is_nonneg():
                break
            p = kostant_P(system, rest)
            if p:
                factors.append(DetFactor(beta, n, system.mult(beta) * p))
            n += 1
    factors.sort(key=lambda f: (f.beta.n, f.beta.is_imaginary, f.beta.finite, f.n))
    return DetFactorization(eta, tuple(factors))


def direction(system: FiniteRootSystem, name: str) -> AffineWeight:
    if name == "rho":
        return system.rho()
    if name in ("rhobar", "rho_bar"):
        return system.rho_bar()
    raise ValueError(f"unknown deformation direction {name!r} (expected 'rho' or 'rhobar')")


def specialize(system: FiniteRootSystem, f: DetFactor, lam: AffineWeight, dir_name: str) -> PolyT:
    """``(lam + rho + t*dir | beta) - n (beta|beta)/2`` as a polynomial of degree <= 1."""
    b = system.root_weight(f.beta)
    base = system.bilinear(lam + system.rho(), b) - f.n * system.bilinear(b, b) / 2
    slope = system.bilinear(direction(system, dir_name), b)
    return PolyT.linear(base, slope)


def product_polynomial(system: FiniteRootSystem, fact: DetFactorization, lam: AffineWeight, dir_name: str) -> PolyT:
    out = as_poly(1)
    for f in fact.factors:
        out = out * specialize(system, f, lam, dir_name) ** f.exponent
    return out


def ord_profile(system: FiniteRootSystem, lam: AffineWeight, mu: AffineWeight, dir_name: str):
    """ord_t of the specialized product at weight ``mu``; ``INF`` if a factor vanishes identically."""
    eta = leq(system, mu, lam)
    if eta is None:
        raise ValueError(f"{mu} is not below {lam}")
    return ord_profile_at(system, lam, eta, dir_name)


def ord_profile_at(system: FiniteRootSystem, lam: AffineWeight, eta: BoxCoords, dir_name: str):
    total = 0
    for f in shapovalov_factors(system, eta).factors:
        o = ord_t(specialize(system, f, lam, dir_name))
        if o is INF:
            return INF
        total += f.exponent * o
    return total


def real_ord_profile_at(system: FiniteRootSystem, lam: AffineWeight, eta: BoxCoords, dir_name: str) -> int:
    """Like :func:`ord_profile_at` but over real-root factors only (reported, never asserted)."""
    total = 0
    for f in shapovalov_factors(system, eta).factors:
        if f.beta.is_real:
            o = ord_t(specialize(system, f, lam, dir_name))
            if o is INF:
                return INF
            total += f.exponent * o
    return total
