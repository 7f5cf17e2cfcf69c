"""Finite and untwisted affine root data.

Conventions: ``cartan[i][j] = <alpha_j, alpha_i^vee>``.  Roots are integer
vectors in the simple-root basis; weights carry their finite part as
fundamental-weight coordinates ``<lambda, alpha_i^vee>``, the level (the
coefficient of Lambda_0) and the coefficient of delta.  The invariant form is
normalized so that long roots, in particular theta, have square length 2.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .exactalg import PolyT, as_poly

Coord = Union[Fraction, PolyT]

ROOT_COUNTS = {
    "A": lambda l: l * (l + 1),
    "B": lambda l: 2 * l * l,
    "C": lambda l: 2 * l * l,
    "D": lambda l: 2 * l * (l - 1),
    "E": lambda l: {6: 72, 7: 126, 8: 240}[l],
    "F": lambda l: 48,
    "G": lambda l: 12,
}


class UnknownSeriesError(ValueError):
    pass


def _cartan_matrix(series: str, l: int) -> List[List[int]]:
    a = [[2 if i == j else 0 for j in range(l)] for i in range(l)]

    def link(i: int, j: int, aij: int = -1, aji: int = -1) -> None:
        a[i][j] = aij
        a[j][i] = aji

    if series == "A" and l >= 1:
        for i in range(l - 1):
            link(i, i + 1)
    elif series == "B" and l >= 2:
        for i in range(l - 2):
            link(i, i + 1)
        link(l - 2, l - 1, -1, -2)  # alpha_l short
    elif series == "C" and l >= 2:
        for i in range(l - 2):
            link(i, i + 1)
        link(l - 2, l - 1, -2, -1)  # alpha_l long
    elif series == "D" and l >= 3:
        for i in range(l - 2):
            link(i, i + 1)
        link(l - 3, l - 1)
    elif series == "E" and l in (6, 7, 8):
        # Bourbaki: 1-3-4-5-6(-7-8), 2 attached to 4
        chain = [0, 2, 3, 4, 5, 6, 7][: l - 1]
        for x, y in zip(chain, chain[1:]):
            link(x, y)
        link(1, 3)
    elif series == "F" and l == 4:
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif series == "G" and l == 2:
        link(0, 1, -3, -1)  # alpha_1 short
    else:
        raise UnknownSeriesError(f"unknown series {series}{l}")
    return a


@dataclass(frozen=True)
class CartanDatum:
    series: str
    rank: int
    cartan_matrix: Tuple[Tuple[int, ...], ...]
    symmetrizers: Tuple[Fraction, ...]

    @classmethod
    def from_series(cls, series: str, rank: int) -> "CartanDatum":
        a = _cartan_matrix(series, rank)
        d = _symmetrizers(a)
        return cls(series, rank, tuple(map(tuple, a)), d)

    @classmethod
    def parse(cls, text: str) -> "CartanDatum":
        """Parse ``"A2"``, ``"g2"``, ``"E 8"``..."""
        m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", text)
        if not m:
            raise UnknownSeriesError(f"unknown series {text!r}")
        return cls.from_series(m.group(1).upper(), int(m.group(2)))

    @property
    def name(self) -> str:
        return f"{self.series}{self.rank}"


def _symmetrizers(a: List[List[int]]) -> Tuple[Fraction, ...]:
    """d_i with d_i a_ij = d_j a_ji, scaled so the longest simple root has d = 1."""
    l = len(a)
    d: List[Optional[Fraction]] = [None] * l
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(l):
            if j != i and a[i][j] != 0 and d[j] is None:
                d[j] = d[i] * a[i][j] / a[j][i]
                stack.append(j)
    if any(x is None for x in d):
        raise ValueError("Cartan matrix is decomposable")
    top = max(d)
    return tuple(x / top for x in d)


def _inverse(m: List[List[Fraction]]) -> List[List[Fraction]]:
    n = len(m)
    a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    for c in range(n):
        p = next(i for i in range(c, n) if a[i][c] != 0)
        a[c], a[p] = a[p], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [r[n:] for r in a]


@dataclass(frozen=True)
class AffineWeight:
    """Element of the affine weight space, possibly deformed along ``t``.

    ``finite`` holds ``<lambda, alpha_i^vee>``; ``level`` is ``lambda(c)``;
    ``ddeg`` is the coefficient of delta.  Coordinates are ``Fraction`` for
    ordinary weights and :class:`PolyT` for deformed ones.
    """

    finite: Tuple[Coord, ...]
    level: Coord = Fraction(0)
    ddeg: Coord = Fraction(0)

    @classmethod
    def make(cls, finite: Sequence, level=0, ddeg=0) -> "AffineWeight":
        conv = lambda x: x if isinstance(x, PolyT) else Fraction(x)
        return cls(tuple(conv(x) for x in finite), conv(level), conv(ddeg))

    def __add__(self, o: "AffineWeight") -> "AffineWeight":
        return AffineWeight(tuple(a + b for a, b in zip(self.finite, o.finite)),
                            self.level + o.level, self.ddeg + o.ddeg)

    def __sub__(self, o: "AffineWeight") -> "AffineWeight":
        return AffineWeight(tuple(a - b for a, b in zip(self.finite, o.finite)),
                            self.level - o.level, self.ddeg - o.ddeg)

    def __neg__(self) -> "AffineWeight":
        return AffineWeight(tuple(-a for a in self.finite), -self.level, -self.ddeg)

    def scale(self, c) -> "AffineWeight":
        return AffineWeight(tuple(a * c for a in self.finite), self.level * c, self.ddeg * c)

    def __rmul__(self, c) -> "AffineWeight":
        return self.scale(c)

    @property
    def is_deformed(self) -> bool:
        return any(isinstance(x, PolyT) for x in (*self.finite, self.level, self.ddeg))

    def deform(self, direction: "AffineWeight") -> "AffineWeight":
        """The weight ``self + t * direction`` with polynomial coordinates."""
        t = PolyT.t()
        return AffineWeight(tuple(as_poly(a) + t * b for a, b in zip(self.finite, direction.finite)),
                            as_poly(self.level) + t * direction.level,
                            as_poly(self.ddeg) + t * direction.ddeg)

    def at_zero(self) -> "AffineWeight":
        ev = lambda x: x.at(0) if isinstance(x, PolyT) else x
        return AffineWeight(tuple(ev(a) for a in self.finite), ev(self.level), ev(self.ddeg))

    def __str__(self) -> str:
        fin = ",".join(str(x) for x in self.finite)
        return f"[{fin}; level={self.level}, d={self.ddeg}]"


@dataclass(frozen=True, order=True)
class AffineRoot:
    """``finite + n*delta``; imaginary when ``finite`` is zero (then ``n != 0``)."""

    finite: Tuple[int, ...]
    n: int

    def __post_init__(self) -> None:
        if not any(self.finite) and self.n == 0:
            raise ValueError("zero is not a root")

    @property
    def is_real(self) -> bool:
        return any(self.finite)

    @property
    def is_imaginary(self) -> bool:
        return not self.is_real

    @property
    def is_positive(self) -> bool:
        if self.n != 0:
            return self.n > 0
        return all(x >= 0 for x in self.finite)

    def __neg__(self) -> "AffineRoot":
        return AffineRoot(tuple(-x for x in self.finite), -self.n)

    def __str__(self) -> str:
        if self.is_imaginary:
            return f"{self.n}delta"
        s = "(" + ",".join(map(str, self.finite)) + ")"
        return s if self.n == 0 else f"{s}{self.n:+d}delta"


@dataclass(frozen=True)
class FiniteRootSystem:
    datum: CartanDatum
    roots: Tuple[Tuple[int, ...], ...]
    positive: Tuple[Tuple[int, ...], ...]
    theta: Tuple[int, ...]
    dual_coxeter: int
    form_matrix: Tuple[Tuple[Fraction, ...], ...]  # (alpha_i | alpha_j)
    _cache: Dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def rank(self) -> int:
        return self.datum.rank

    @property
    def cartan(self) -> Tuple[Tuple[int, ...], ...]:
        return self.datum.cartan_matrix

    @property
    def name(self) -> str:
        return self.datum.name

    @cached_property
    def cartan_inverse(self) -> List[List[Fraction]]:
        return _inverse([[Fraction(x) for x in r] for r in self.cartan])

    @cached_property
    def rho_bar_simple(self) -> Tuple[Fraction, ...]:
        """Half the sum of positive roots, in simple-root coordinates."""
        return tuple(Fraction(sum(r[i] for r in self.positive), 2) for i in range(self.rank))

    # -- coordinates ----------------------------------------------------------

    def fund_of_simple(self, c: Sequence) -> Tuple:
        """Fundamental coordinates <x, alpha_i^vee> of x = sum c_j alpha_j."""
        a = self.cartan
        return tuple(sum((a[i][j] * c[j] for j in range(self.rank)), Fraction(0)) for i in range(self.rank))

    def simple_of_fund(self, x: Sequence) -> Tuple:
        inv = self.cartan_inverse
        return tuple(sum((inv[j][i] * x[i] for i in range(self.rank)), Fraction(0)) for j in range(self.rank))

    def finite_form(self, x: Sequence, y: Sequence) -> Coord:
        """(x|y) for finite weights given in fundamental coordinates."""
        cx, cy = self.simple_of_fund(x), self.simple_of_fund(y)
        b = self.form_matrix
        acc = Fraction(0)
        for i in range(self.rank):
            if not cx[i]:
                continue
            for j in range(self.rank):
                if b[i][j] and cy[j]:
                    acc = acc + cx[i] * b[i][j] * cy[j]
        return acc

    def root_form(self, a: Sequence[int], b: Sequence[int]) -> Fraction:
        m = self.form_matrix
        return sum((a[i] * m[i][j] * b[j] for i in range(self.rank) for j in range(self.rank)), Fraction(0))

    # -- affine weights -------------------------------------------------------

    def weight(self, finite: Sequence = None, level=0, ddeg=0) -> AffineWeight:
        if finite is None:
            finite = [0] * self.rank
        if len(finite) != self.rank:
            raise ValueError(f"{self.name} weights need {self.rank} finite coordinates")
        return AffineWeight.make(finite, level, ddeg)

    def root_weight(self, beta: Union[AffineRoot, Sequence[int]]) -> AffineWeight:
        if isinstance(beta, AffineRoot):
            return AffineWeight(self.fund_of_simple([Fraction(x) for x in beta.finite]), Fraction(0), Fraction(beta.n))
        return AffineWeight(self.fund_of_simple([Fraction(x) for x in beta]), Fraction(0), Fraction(0))

    @property
    def delta(self) -> AffineWeight:
        return self.weight(ddeg=1)

    @property
    def lambda0(self) -> AffineWeight:
        return self.weight(level=1)

    def rho_bar(self) -> AffineWeight:
        return self.weight([1] * self.rank)

    def rho(self) -> AffineWeight:
        return self.weight([1] * self.rank, level=self.dual_coxeter)

    def bilinear(self, x: AffineWeight, y: AffineWeight) -> Coord:
        """(x|y) = finite part + x.level*y.ddeg + x.ddeg*y.level."""
        return self.finite_form(x.finite, y.finite) + x.level * y.ddeg + x.ddeg * y.level

    def coroot_pairing(self, x: AffineWeight, beta: AffineRoot) -> Coord:
        """<x, beta^vee> = 2(x|beta)/(beta|beta) for a real root beta."""
        if not beta.is_real:
            raise ValueError("coroot pairing is undefined for imaginary roots")
        b = self.root_weight(beta)
        return self.bilinear(x, b) * (2 / self.root_form(beta.finite, beta.finite))

    def reflect(self, beta: AffineRoot, x: AffineWeight) -> AffineWeight:
        return x - self.root_weight(beta).scale(self.coroot_pairing(x, beta))

    def mult(self, beta: AffineRoot) -> int:
        return 1 if beta.is_real else self.rank

    def is_root(self, finite: Sequence[int]) -> bool:
        return tuple(finite) in self._root_set

    @cached_property
    def _root_set(self):
        return frozenset(self.roots)

    def height(self, finite: Sequence[int]) -> int:
        return sum(finite)

    def summary(self) -> Dict[str, object]:
        return {
            "series": self.name,
            "num_roots": len(self.roots),
            "num_positive": len(self.positive),
            "theta": list(self.theta),
            "dual_coxeter": self.dual_coxeter,
            "rho_bar": [str(x) for x in self.rho_bar_simple],
            "form_matrix": [[str(x) for x in r] for r in self.form_matrix],
        }


def build_root_system(datum: Union[CartanDatum, str]) -> FiniteRootSystem:
    """Close the simple roots under simple reflections and collect invariants."""
    if isinstance(datum, str):
        datum = CartanDatum.parse(datum)
    a = datum.cartan_matrix
    l = datum.rank
    bound = ROOT_COUNTS[datum.series](l)
    for i in range(l):
        for j in range(l):
            if datum.symmetrizers[i] * a[i][j] != datum.symmetrizers[j] * a[j][i]:
                raise ValueError("matrix is not symmetrizable by the given d_i")
    simple = [tuple(int(i == j) for j in range(l)) for i in range(l)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(l):
                pair = sum(a[i][j] * r[j] for j in range(l))
                s = tuple(r[j] - pair * int(i == j) for j in range(l))
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
                    if len(seen) > bound:
                        raise ValueError(f"{datum.name}: closure exceeds {bound} roots, not of finite type")
        frontier = nxt
    roots = tuple(sorted(seen, key=lambda r: (sum(r), r)))
    positive = tuple(r for r in roots if all(x >= 0 for x in r))
    if len(roots) != bound:
        raise ValueError(f"{datum.name}: found {len(roots)} roots, expected {bound}")
    theta = max(positive, key=lambda r: (sum(r), r))
    form = tuple(tuple(datum.symmetrizers[i] * a[i][j] for j in range(l)) for i in range(l))
    # normalize (theta|theta) = 2
    tt = sum(theta[i] * form[i][j] * theta[j] for i in range(l) for j in range(l))
    form = tuple(tuple(x * 2 / tt for x in r) for r in form)
    rho_simple = [Fraction(sum(r[i] for r in positive), 2) for i in range(l)]
    rho_theta = sum(rho_simple[i] * form[i][j] * theta[j] for i in range(l) for j in range(l))
    hv = 1 + rho_theta  # 1 + <rho_bar, theta^vee> with (theta|theta) = 2
    if hv.denominator != 1:
        raise ValueError("non-integral dual Coxeter number")
    return FiniteRootSystem(datum, roots, positive, theta, int(hv), form)
