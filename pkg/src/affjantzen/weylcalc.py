"""Dot action, the ordering on weights, integrality and linkage at the critical level."""

from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Set, Tuple

from .rootdata import AffineRoot, AffineWeight, FiniteRootSystem


@dataclass(frozen=True, order=True)
class BoxCoords:
    """``nu = c0 * (delta - theta) + sum_i cfin[i] * alpha_i``."""

    c0: int
    cfin: Tuple[int, ...]

    def __add__(self, o: "BoxCoords") -> "BoxCoords":
        return BoxCoords(self.c0 + o.c0, tuple(a + b for a, b in zip(self.cfin, o.cfin)))

    def __sub__(self, o: "BoxCoords") -> "BoxCoords":
        return BoxCoords(self.c0 - o.c0, tuple(a - b for a, b in zip(self.cfin, o.cfin)))

    def scale(self, k: int) -> "BoxCoords":
        return BoxCoords(self.c0 * k, tuple(k * a for a in self.cfin))

    @property
    def height(self) -> int:
        return sum(self.cfin)

    def is_nonneg(self) -> bool:
        return self.c0 >= 0 and all(a >= 0 for a in self.cfin)

    def is_zero(self) -> bool:
        return self.c0 == 0 and not any(self.cfin)

    def leq(self, o: "BoxCoords") -> bool:
        return self.c0 <= o.c0 and all(a <= b for a, b in zip(self.cfin, o.cfin))

    @classmethod
    def zero(cls, rank: int) -> "BoxCoords":
        return cls(0, (0,) * rank)

    def to_json(self) -> dict:
        return {"c0": self.c0, "cfin": list(self.cfin)}

    def __str__(self) -> str:
        return f"({self.c0};{','.join(map(str, self.cfin))})"


@dataclass(frozen=True)
class Box:
    """Truncation window ``{nu : c0 <= dmax, sum(cfin) <= hmax}`` below a base weight."""

    dmax: int
    hmax: int

    def contains(self, nu: BoxCoords) -> bool:
        return nu.is_nonneg() and nu.c0 <= self.dmax and nu.height <= self.hmax

    def points(self, rank: int) -> List[BoxCoords]:
        out = []
        for c0 in range(self.dmax + 1):
            for h in range(self.hmax + 1):
                for comp in _compositions(h, rank):
                    out.append(BoxCoords(c0, comp))
        return sorted(out)

    def intersect(self, o: "Box") -> "Box":
        return Box(min(self.dmax, o.dmax), min(self.hmax, o.hmax))

    def to_json(self) -> dict:
        return {"dmax": self.dmax, "hmax": self.hmax}


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


class Kind(enum.Enum):
    GENERIC = "generic"
    SUBGENERIC = "subgeneric"
    GENERAL = "general"


@dataclass(frozen=True)
class IntegralData:
    finite_integral: Tuple[Tuple[int, ...], ...]
    positive: Tuple[Tuple[int, ...], ...]
    pairings: Tuple[Tuple[Tuple[int, ...], int], ...]  # (alpha, <lambda+rho, alpha^vee>) over positive
    kind: Kind
    alpha: Optional[Tuple[int, ...]] = None

    @property
    def moving(self) -> List[Tuple[int, ...]]:
        """Positive integral roots whose reflection moves the weight."""
        return [a for a, n in self.pairings if n != 0]


class NotCriticalError(ValueError):
    pass


def box_coords(system: FiniteRootSystem, nu: AffineWeight) -> Optional[BoxCoords]:
    """Decompose a level-0 difference over the affine simple roots, if integral."""
    if nu.level != 0:
        return None
    c0 = nu.ddeg
    simple = system.simple_of_fund(nu.finite)
    cfin = [s + c0 * th for s, th in zip(simple, system.theta)]
    if isinstance(c0, Fraction) and c0.denominator != 1:
        return None
    if any(Fraction(x).denominator != 1 for x in cfin):
        return None
    return BoxCoords(int(c0), tuple(int(x) for x in cfin))


def box_weight(system: FiniteRootSystem, nu: BoxCoords) -> AffineWeight:
    simple = [Fraction(c - nu.c0 * th) for c, th in zip(nu.cfin, system.theta)]
    return AffineWeight(system.fund_of_simple(simple), Fraction(0), Fraction(nu.c0))


def root_box(system: FiniteRootSystem, beta: AffineRoot) -> BoxCoords:
    return BoxCoords(beta.n, tuple(g + beta.n * th for g, th in zip(beta.finite, system.theta)))


def delta_box(system: FiniteRootSystem) -> BoxCoords:
    return BoxCoords(1, tuple(system.theta))


def simple_affine_boxes(system: FiniteRootSystem) -> List[BoxCoords]:
    """Box coordinates of alpha_0 = delta - theta, alpha_1, ..., alpha_l."""
    l = system.rank
    return [BoxCoords(1, (0,) * l)] + [BoxCoords(0, tuple(int(i == j) for j in range(l))) for i in range(l)]


def leq(system: FiniteRootSystem, mu: AffineWeight, lam: AffineWeight) -> Optional[BoxCoords]:
    """Coefficients of ``lam - mu`` over the affine simple roots when ``mu <= lam``, else None."""
    nu = box_coords(system, lam - mu)
    if nu is None or not nu.is_nonneg():
        return None
    return nu


def is_leq(system: FiniteRootSystem, mu: AffineWeight, lam: AffineWeight) -> bool:
    return leq(system, mu, lam) is not None


def below(system: FiniteRootSystem, lam: AffineWeight, nu: BoxCoords) -> AffineWeight:
    """The weight ``lam - nu``."""
    return lam - box_weight(system, nu)


def level_of(lam: AffineWeight):
    return lam.level


def is_critical(system: FiniteRootSystem, lam: AffineWeight) -> bool:
    return lam.level == -system.dual_coxeter


def require_critical(system: FiniteRootSystem, lam: AffineWeight) -> None:
    if not is_critical(system, lam):
        raise NotCriticalError(
            f"weight {lam} is not critical: level {lam.level} != {-system.dual_coxeter} (= -h^vee)")


def critical_weight(system: FiniteRootSystem, finite, ddeg=0) -> AffineWeight:
    return system.weight(finite, level=-system.dual_coxeter, ddeg=ddeg)


def dot_reflect(system: FiniteRootSystem, beta: AffineRoot, lam: AffineWeight) -> AffineWeight:
    """``s_beta . lam = lam - <lam + rho, beta^vee> beta``."""
    if not beta.is_real:
        raise ValueError("dot action is only defined for real roots")
    n = system.coroot_pairing(lam + system.rho(), beta)
    return lam - system.root_weight(beta).scale(n)


def rho_pairing(system: FiniteRootSystem, lam: AffineWeight, alpha: Tuple[int, ...]) -> Fraction:
    return system.coroot_pairing(lam + system.rho(), AffineRoot(tuple(alpha), 0))


def integral_roots(system: FiniteRootSystem, lam: AffineWeight) -> IntegralData:
    integral = []
    pairings = []
    for a in system.roots:
        n = rho_pairing(system, lam, a)
        if n.denominator == 1:
            integral.append(a)
            if a in system.positive:
                pairings.append((a, int(n)))
    positive = tuple(a for a, _ in pairings)
    moving = [a for a, n in pairings if n != 0]
    if not moving:
        kind, alpha = Kind.GENERIC, None
    elif len(moving) == 1 and len(positive) == 1:
        kind, alpha = Kind.SUBGENERIC, moving[0]
    else:
        kind, alpha = Kind.GENERAL, None
    return IntegralData(tuple(integral), positive, tuple(pairings), kind, alpha)


def down(system: FiniteRootSystem, alpha: Tuple[int, ...], lam: AffineWeight, check: bool = True) -> AffineWeight:
    """``alpha (down) lam``: whichever of ``s_alpha . lam``, ``s_{-alpha+delta} . lam`` lies below ``lam``."""
    require_critical(system, lam)
    alpha = tuple(alpha)
    if alpha not in system.positive:
        raise ValueError(f"{alpha} is not a positive finite root")
    n = rho_pairing(system, lam, alpha)
    if n.denominator != 1:
        raise ValueError(f"{alpha} is not integral for {lam}: pairing {n}")
    a = system.root_weight(alpha)
    if n > 0:
        out = lam - a.scale(n)
    elif n < 0:
        out = lam - a.scale(n) + system.delta.scale(n)
    else:
        out = lam
    if check:
        cands = [dot_reflect(system, AffineRoot(alpha, 0), lam),
                 dot_reflect(system, AffineRoot(tuple(-x for x in alpha), 1), lam)]
        if out not in cands or not is_leq(system, out, lam):
            raise AssertionError("closed form for the down operator disagrees with its definition")
        if n != 0 and sum(is_leq(system, c, lam) for c in cands) != 1:
            raise AssertionError("exactly one reflection should lie below lam")
    return out


def down_chain(system: FiniteRootSystem, alpha, lam: AffineWeight, k: int) -> List[AffineWeight]:
    """``[alpha (down)^1 lam, ..., alpha (down)^k lam]``."""
    out = []
    cur = lam
    for _ in range(k):
        cur = down(system, alpha, cur)
        out.append(cur)
    return out


def positive_real_roots(system: FiniteRootSystem, dmax: int) -> List[AffineRoot]:
    out = [AffineRoot(a, 0) for a in system.positive]
    for n in range(1, dmax + 1):
        out.extend(AffineRoot(a, n) for a in system.roots)
    return out


def _in_box(system, lam, mu, box) -> bool:
    nu = leq(system, mu, lam)
    return nu is not None and box.contains(nu)


def kk_lower_set(system: FiniteRootSystem, lam: AffineWeight, box: Box) -> Set[AffineWeight]:
    """Weights reachable from ``lam`` by the generating steps of the KK ordering, truncated to ``box``.

    Step from ``x``: ``x - n beta`` for a positive root ``beta`` and ``n >= 1``
    with ``2(x + rho | beta) = n (beta | beta)``.
    """
    rho = system.rho()
    real = positive_real_roots(system, box.dmax)
    seen = {lam}
    queue = deque([lam])
    while queue:
        x = queue.popleft()
        steps = []
        for beta in real:
            n = system.coroot_pairing(x + rho, beta)
            if n.denominator == 1 and n > 0:
                steps.append(x - system.root_weight(beta).scale(n))
        if system.bilinear(x + rho, system.delta) == 0:
            # imaginary roots j*delta: the condition 0 = n*0 holds for every n
            for k in range(1, box.dmax + 1):
                steps.append(x - system.delta.scale(k))
        for y in steps:
            if y not in seen and _in_box(system, lam, y, box):
                seen.add(y)
                queue.append(y)
    return seen


def linkage_orbit(system: FiniteRootSystem, lam: AffineWeight, box: Box) -> Set[AffineWeight]:
    """Integral affine Weyl group dot-orbit of a critical ``lam``, truncated below ``lam`` to ``box``."""
    require_critical(system, lam)
    integral = integral_roots(system, lam).positive
    rho = system.rho()
    seen = {lam}
    queue = deque([lam])
    while queue:
        x = queue.popleft()
        cx = leq(system, x, lam)
        for alpha in integral:
            m = system.coroot_pairing(x + rho, AffineRoot(alpha, 0))
            if m == 0:
                continue
            m = int(m)
            # s_{alpha + n delta} . x = x - m (alpha + n delta); keep c0 within [0, dmax]
            lo, hi = sorted((Fraction(-cx.c0, m), Fraction(box.dmax - cx.c0, m)))
            for n in range(_ceil(lo), _floor(hi) + 1):
                y = dot_reflect(system, AffineRoot(alpha, n), x)
                if y not in seen and _in_box(system, lam, y, box):
                    seen.add(y)
                    queue.append(y)
    return seen


def _floor(q: Fraction) -> int:
    return q.numerator // q.denominator


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def sort_weights(system: FiniteRootSystem, lam: AffineWeight, weights) -> List[AffineWeight]:
    """Deterministic order: by box coordinates below ``lam``."""
    return sorted(weights, key=lambda w: leq(system, w, lam) or BoxCoords(10**9, ()))
