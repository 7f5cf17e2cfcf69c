"""Truncated formal characters and the partition functions behind them."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple

from .rootdata import AffineRoot, AffineWeight, FiniteRootSystem
from .weylcalc import (Box, BoxCoords, Kind, below, down, integral_roots, leq, require_critical,
                       root_box)


class OutOfBoxError(LookupError):
    """The requested weight is not covered by the character's truncation box."""


class NoFormulaError(ValueError):
    """No simple-character formula is available for this weight."""


class PartitionCounter:
    """Kostant partition function and its real-roots-only variant for one root system.

    Memo tables only grow; the root list is extended when a query needs a
    larger delta-degree than seen so far.
    """

    def __init__(self, system: FiniteRootSystem) -> None:
        self.system = system
        self._dmax = -1
        self._roots: Dict[bool, List[Tuple[BoxCoords, int]]] = {}
        self._memo: Dict[Tuple[bool, BoxCoords, int], int] = {}

    def _ensure(self, d: int) -> None:
        if d <= self._dmax:
            return
        d = max(d, 2 * self._dmax, 1)
        s = self.system
        real: List[Tuple[BoxCoords, int]] = [(root_box(s, AffineRoot(a, 0)), 1) for a in s.positive]
        imag: List[Tuple[BoxCoords, int]] = []
        for n in range(1, d + 1):
            real.extend((root_box(s, AffineRoot(a, n)), 1) for a in s.roots)
            imag.append((root_box(s, AffineRoot((0,) * s.rank, n)), s.rank))
        self._roots = {True: real, False: real + imag}
        self._dmax = d
        self._memo.clear()

    def _count(self, restricted: bool, nu: BoxCoords, k: int) -> int:
        if nu.is_zero():
            return 1
        roots = self._roots[restricted]
        if k == len(roots):
            return 0
        key = (restricted, nu, k)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        beta, colors = roots[k]
        total = 0
        # a root with multiplicity m contributes m independent colors
        rest = nu
        j = 0
        while rest.is_nonneg():
            total += _multichoose(colors, j) * self._count(restricted, rest, k + 1)
            rest = rest - beta
            j += 1
        self._memo[key] = total
        return total

    def kostant(self, nu: BoxCoords) -> int:
        if not nu.is_nonneg():
            return 0
        self._ensure(nu.c0)
        return self._count(False, nu, 0)

    def restricted(self, nu: BoxCoords) -> int:
        if not nu.is_nonneg():
            return 0
        self._ensure(nu.c0)
        return self._count(True, nu, 0)


@lru_cache(maxsize=None)
def _multichoose(colors: int, j: int) -> int:
    """Number of multisets of size j from ``colors`` kinds."""
    from math import comb
    return comb(colors + j - 1, j)


@lru_cache(maxsize=None)
def colored_partitions(m: int, colors: int) -> int:
    """Partitions of m where every part size comes in ``colors`` colors."""
    ways = [1] + [0] * m
    for part in range(1, m + 1):
        for _ in range(colors):
            for s in range(part, m + 1):
                ways[s] += ways[s - part]
    return ways[m]


_COUNTERS: Dict[FiniteRootSystem, PartitionCounter] = {}


def counter(system: FiniteRootSystem) -> PartitionCounter:
    c = _COUNTERS.get(system)
    if c is None:
        c = _COUNTERS[system] = PartitionCounter(system)
    return c


def kostant_P(system: FiniteRootSystem, nu: BoxCoords) -> int:
    return counter(system).kostant(nu)


def restricted_P(system: FiniteRootSystem, nu: BoxCoords) -> int:
    return counter(system).restricted(nu)


@dataclass(frozen=True)
class Character:
    """Coefficients of ``e^(base - nu)`` for ``nu`` in ``box``; absent keys are zero."""

    system: FiniteRootSystem = field(compare=False, repr=False)
    base: AffineWeight
    box: Box
    coeffs: Tuple[Tuple[BoxCoords, int], ...]

    @classmethod
    def build(cls, system, base, box, values: Dict[BoxCoords, int]) -> "Character":
        items = tuple(sorted((k, v) for k, v in values.items() if v != 0 and box.contains(k)))
        return cls(system, base, box, items)

    @property
    def as_dict(self) -> Dict[BoxCoords, int]:
        return dict(self.coeffs)

    def at(self, nu: BoxCoords) -> int:
        if not self.box.contains(nu):
            raise OutOfBoxError(f"{nu} lies outside {self.box}")
        return self.as_dict.get(nu, 0)

    def coefficient_at(self, mu: AffineWeight) -> int:
        nu = leq(self.system, mu, self.base)
        if nu is None:
            raise OutOfBoxError(f"{mu} is not below the base weight {self.base}")
        return self.at(nu)

    def support(self) -> List[BoxCoords]:
        return [k for k, _ in self.coeffs]

    def support_weights(self) -> List[AffineWeight]:
        return [below(self.system, self.base, k) for k, _ in self.coeffs]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, o: "Character") -> "Character":
        return char_add(self, o)

    def __sub__(self, o: "Character") -> "Character":
        return char_sub(self, o)

    def to_json(self) -> dict:
        return {
            "base": weight_json(self.base),
            "box": self.box.to_json(),
            "entries": [{"c0": k.c0, "cfin": list(k.cfin), "value": v} for k, v in self.coeffs],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def weight_json(w: AffineWeight) -> dict:
    return {"finite": [str(x) for x in w.finite], "level": str(w.level), "ddeg": str(w.ddeg)}


def _combine(a: Character, b: Character, sign: int) -> Character:
    if a.base != b.base:
        raise ValueError("characters must share a base weight; use char_shift first")
    box = a.box.intersect(b.box)
    vals: Dict[BoxCoords, int] = {}
    for k, v in a.coeffs:
        vals[k] = vals.get(k, 0) + v
    for k, v in b.coeffs:
        vals[k] = vals.get(k, 0) + sign * v
    return Character.build(a.system, a.base, box, vals)


def char_add(a: Character, b: Character) -> Character:
    return _combine(a, b, 1)


def char_sub(a: Character, b: Character) -> Character:
    return _combine(a, b, -1)


def char_scale(a: Character, k: int) -> Character:
    return Character.build(a.system, a.base, a.box, {n: k * v for n, v in a.coeffs})


def char_shift(ch: Character, new_base: AffineWeight, box: Box) -> Character:
    """Re-index ``ch`` below ``new_base`` (which must lie above ``ch.base``) on ``box``.

    Raises :class:`OutOfBoxError` if ``box`` needs values ``ch`` does not know.
    """
    s = ch.system
    offset = leq(s, ch.base, new_base)
    if offset is None:
        raise ValueError("new base must lie above the old base")
    vals: Dict[BoxCoords, int] = {}
    for nu in box.points(s.rank):
        rel = nu - offset
        if not rel.is_nonneg():
            continue
        vals[nu] = ch.at(rel)
    return Character.build(s, new_base, box, vals)


def character_from(system: FiniteRootSystem, base: AffineWeight, box: Box,
                   fn: Callable[[BoxCoords], int]) -> Character:
    return Character.build(system, base, box, {nu: fn(nu) for nu in box.points(system.rank)})


def ch_verma(system: FiniteRootSystem, lam: AffineWeight, box: Box) -> Character:
    pc = counter(system)
    return character_from(system, lam, box, pc.kostant)


def ch_restricted_verma(system: FiniteRootSystem, lam: AffineWeight, box: Box) -> Character:
    require_critical(system, lam)
    pc = counter(system)
    return character_from(system, lam, box, pc.restricted)


def restricted_term(system: FiniteRootSystem, lam: AffineWeight, top: AffineWeight, nu: BoxCoords) -> int:
    """Coefficient of ``e^(lam - nu)`` in ch of the restricted Verma module with highest weight ``top``."""
    off = leq(system, top, lam)
    if off is None:
        return 0
    return restricted_P(system, nu - off)


def down_series(system: FiniteRootSystem, alpha, lam: AffineWeight, box: Box) -> List[BoxCoords]:
    """Offsets ``lam - alpha(down)^k lam`` for k = 1, 2, ... while they fit in ``box``."""
    out = []
    cur = lam
    while True:
        nxt = down(system, alpha, cur)
        if nxt == cur:
            return out
        off = leq(system, nxt, lam)
        if not (off.c0 <= box.dmax and off.height <= box.hmax):
            return out
        out.append(off)
        cur = nxt


def ch_simple_subgeneric(system: FiniteRootSystem, lam: AffineWeight, box: Box) -> Character:
    """ch L(lam) for generic or subgeneric critical ``lam`` via the alternating down-series."""
    require_critical(system, lam)
    data = integral_roots(system, lam)
    if data.kind is Kind.GENERIC:
        return ch_restricted_verma(system, lam, box)
    if data.kind is not Kind.SUBGENERIC:
        raise NoFormulaError("no formula in scope for simple characters of general weights")
    offs = [BoxCoords.zero(system.rank)] + down_series(system, data.alpha, lam, box)
    pc = counter(system)

    def coeff(nu: BoxCoords) -> int:
        return sum((-1) ** k * pc.restricted(nu - off) for k, off in enumerate(offs))

    return character_from(system, lam, box, coeff)
