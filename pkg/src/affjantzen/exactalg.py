"""Exact scalars, polynomials in ``t`` and local linear algebra at ``t = 0``.

Everything here is exact: rationals are :class:`fractions.Fraction`,
polynomials carry ``Fraction`` coefficients.  The lattice routines work over
the local ring ``Q[t]_(t)``: a polynomial with nonzero constant term is a
unit there, so only ``t``-adic information survives.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, List, Optional, Sequence, Tuple, Union

Rat = Fraction

Scalar = Union[int, Fraction]


class _Infinity:
    """The valuation of the zero polynomial.  Not a number on purpose."""

    _instance: Optional["_Infinity"] = None

    def __new__(cls) -> "_Infinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __add__(self, other: object) -> "_Infinity":
        if isinstance(other, (int, _Infinity)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __eq__(self, other: object) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("affjantzen-infinity")

    def __lt__(self, other: object) -> bool:
        if isinstance(other, (int, _Infinity)):
            return False
        return NotImplemented

    def __le__(self, other: object) -> bool:
        if isinstance(other, (int, _Infinity)):
            return other is self
        return NotImplemented

    def __gt__(self, other: object) -> bool:
        if isinstance(other, (int, _Infinity)):
            return other is not self
        return NotImplemented

    def __ge__(self, other: object) -> bool:
        if isinstance(other, (int, _Infinity)):
            return True
        return NotImplemented


INF = _Infinity()


class NotSaturatedError(ValueError):
    """A submodule basis has a non-unit elementary divisor at ``t``."""


def _frac(c: Scalar) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class PolyT:
    """Immutable univariate polynomial over Q in the variable ``t``.

    ``coeffs[k]`` is the coefficient of ``t**k``; trailing zeros are stripped,
    so the zero polynomial has ``coeffs == ()``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()) -> None:
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def _raw(cls, coeffs: Tuple[Fraction, ...]) -> "PolyT":
        p = object.__new__(cls)
        p.coeffs = coeffs
        return p

    @classmethod
    def const(cls, c: Scalar) -> "PolyT":
        return cls((c,))

    @classmethod
    def t(cls) -> "PolyT":
        return cls((0, 1))

    @classmethod
    def linear(cls, c0: Scalar, c1: Scalar) -> "PolyT":
        return cls((c0, c1))

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other: object) -> Optional["PolyT"]:
        if isinstance(other, PolyT):
            return other
        if isinstance(other, (int, Fraction)):
            return PolyT.const(other)
        return None

    def __add__(self, other: object) -> "PolyT":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        while out and out[-1] == 0:
            out.pop()
        return PolyT._raw(tuple(out))

    __radd__ = __add__

    def __neg__(self) -> "PolyT":
        return PolyT._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other: object) -> "PolyT":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "PolyT":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: object) -> "PolyT":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return ZERO
            return PolyT._raw(tuple(c * other for c in self.coeffs))
        if not isinstance(other, PolyT):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        if len(b) == 1:
            return PolyT._raw(tuple(c * b[0] for c in a))
        if len(a) == 1:
            return PolyT._raw(tuple(a[0] * c for c in b))
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return PolyT._raw(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PolyT":
        if k < 0:
            raise ValueError("negative power")
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other: "PolyT") -> Tuple["PolyT", "PolyT"]:
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        lead = other.coeffs[-1]
        if len(rem) - 1 < db:
            return ZERO, self
        quot = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            q = rem[k + db] / lead
            quot[k] = q
            if q:
                for j, c in enumerate(other.coeffs):
                    rem[k + j] -= q * c
        return PolyT(quot), PolyT(rem[:db])

    def exact_div(self, other: "PolyT") -> "PolyT":
        q, r = self.divmod(other)
        if r:
            raise ValueError(f"{other} does not divide {self}")
        return q

    def shift_down(self, k: int) -> "PolyT":
        """Divide by ``t**k``; the low ``k`` coefficients must vanish."""
        if any(self.coeffs[:k]):
            raise ValueError("not divisible by t^%d" % k)
        return PolyT._raw(self.coeffs[k:])

    # -- inspection ---------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self) -> int:
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else 0)
        return hash(self.coeffs)

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def ord_t(self):
        return ord_t(self)

    def at(self, x: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    __call__ = at

    def constant(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def is_unit_at_zero(self) -> bool:
        return bool(self.coeffs) and self.coeffs[0] != 0

    def monic(self) -> "PolyT":
        if not self.coeffs:
            return self
        return self * (1 / self.coeffs[-1])

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            elif mono:
                terms.append(f"{c}*{mono}")
            else:
                terms.append(str(c))
        return " + ".join(terms).replace("+ -", "- ")


ZERO = PolyT()
ONE = PolyT.const(1)
T = PolyT.t()


def as_poly(x: Union[Scalar, PolyT]) -> PolyT:
    return x if isinstance(x, PolyT) else PolyT.const(x)


def ord_t(p: Union[PolyT, Scalar]):
    """t-adic valuation; ``INF`` for the zero polynomial."""
    p = as_poly(p)
    for k, c in enumerate(p.coeffs):
        if c != 0:
            return k
    return INF


def poly_gcd(a: PolyT, b: PolyT) -> PolyT:
    """Monic gcd over Q (zero if both inputs are zero)."""
    while b:
        a, b = b, a.divmod(b)[1]
    return a.monic()


class RatFunc:
    """Element of Q(t) kept as a reduced fraction with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Union[PolyT, Scalar], den: Union[PolyT, Scalar] = 1) -> None:
        num, den = as_poly(num), as_poly(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = ZERO, ONE
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num.exact_div(g), den.exact_div(g)
        lead = den.coeffs[-1]
        if lead != 1:
            num, den = num * (1 / lead), den * (1 / lead)
        self.num, self.den = num, den

    def __add__(self, o: "RatFunc") -> "RatFunc":
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, o: "RatFunc") -> "RatFunc":
        return self + (-o)

    def __mul__(self, o: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * o.num, self.den * o.den)

    def __truediv__(self, o: "RatFunc") -> "RatFunc":
        if not o.num:
            raise ZeroDivisionError("division by zero in Q(t)")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __bool__(self) -> bool:
        return bool(self.num)

    def __repr__(self) -> str:
        return f"({self.num})/({self.den})"


@dataclass(frozen=True)
class LocalMatrix:
    """Rectangular matrix of polynomials with optional opaque labels."""

    entries: Tuple[Tuple[PolyT, ...], ...]
    row_labels: Optional[Tuple[object, ...]] = None
    col_labels: Optional[Tuple[object, ...]] = None

    def __post_init__(self) -> None:
        widths = {len(r) for r in self.entries}
        if len(widths) > 1:
            raise ValueError("ragged matrix")
        if self.row_labels is not None:
            if len(self.row_labels) != len(self.entries) or len(set(self.row_labels)) != len(self.row_labels):
                raise ValueError("row labels must be unique, one per row")
        if self.col_labels is not None:
            if len(self.col_labels) != self.ncols or len(set(self.col_labels)) != len(self.col_labels):
                raise ValueError("column labels must be unique, one per column")

    @classmethod
    def of(cls, rows: Sequence[Sequence[Union[PolyT, Scalar]]], row_labels=None, col_labels=None) -> "LocalMatrix":
        return cls(tuple(tuple(as_poly(x) for x in r) for r in rows),
                   None if row_labels is None else tuple(row_labels),
                   None if col_labels is None else tuple(col_labels))

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def rows(self) -> List[List[PolyT]]:
        return [list(r) for r in self.entries]


Matrixish = Union[LocalMatrix, Sequence[Sequence[Union[PolyT, Scalar]]]]


def _rows(m: Matrixish) -> List[List[PolyT]]:
    if isinstance(m, LocalMatrix):
        return m.rows()
    return [[as_poly(x) for x in r] for r in m]


# -- integer polynomial helpers for fraction-free elimination ---------------

def _ip_trim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _ip_mul(a: List[int], b: List[int]) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _ip_sub(a: List[int], b: List[int]) -> List[int]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _ip_trim(out)


def _ip_exact_div(a: List[int], b: List[int]) -> List[int]:
    rem = list(a)
    db = len(b) - 1
    if len(rem) - 1 < db:
        if rem:
            raise ArithmeticError("inexact division in Bareiss step")
        return []
    lead = b[-1]
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - 1 - db, -1, -1):
        q, r = divmod(rem[k + db], lead)
        if r:
            raise ArithmeticError("inexact division in Bareiss step")
        quot[k] = q
        if q:
            for j, c in enumerate(b):
                rem[k + j] -= q * c
    if any(rem):
        raise ArithmeticError("inexact division in Bareiss step")
    return _ip_trim(quot)


def _integerize_rows(rows: List[List[PolyT]]) -> Tuple[List[List[List[int]]], Fraction]:
    """Scale each row to integer coefficients; return rows and the product of scales."""
    out = []
    scale = Fraction(1)
    for r in rows:
        dens = [c.denominator for p in r for c in p.coeffs]
        m = reduce(lcm, dens, 1)
        out.append([_ip_trim([int(c * m) for c in p.coeffs]) for p in r])
        scale *= m
    return out, scale


def det_exact(m: Matrixish) -> PolyT:
    """Determinant by fraction-free (Bareiss) elimination over Z[t]."""
    rows = _rows(m)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return ONE
    a, scale = _integerize_rows(rows)
    sign = 1
    prev: List[int] = [1]
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return ZERO
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = _ip_sub(_ip_mul(piv, a[i][j]), _ip_mul(aik, a[k][j]))
                a[i][j] = _ip_exact_div(num, prev)
            a[i][k] = []
        prev = piv
    det = a[n - 1][n - 1]
    return PolyT(det) * Fraction(sign, 1) * (1 / scale)


def eval_rows(rows: Sequence[Sequence[PolyT]], x: Scalar) -> List[List[Fraction]]:
    return [[p.at(x) for p in r] for r in rows]


def rref(rows: Sequence[Sequence[Fraction]]) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form over Q; returns nonzero rows and pivot columns."""
    a = [list(r) for r in rows]
    pivots: List[int] = []
    ncols = len(a[0]) if a else 0
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank_q(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(rows)[1]) if rows else 0


def independent_rows_q(rows: Sequence[Sequence[Fraction]]) -> List[int]:
    """Indices of a maximal linearly independent subset, greedy in input order."""
    basis: List[Tuple[int, List[Fraction]]] = []
    keep: List[int] = []
    for idx, row in enumerate(rows):
        v = list(row)
        for c, b in basis:
            if v[c]:
                f = v[c]
                v = [x - f * y for x, y in zip(v, b)]
        c = next((j for j, x in enumerate(v) if x != 0), None)
        if c is None:
            continue
        inv = 1 / v[c]
        v = [x * inv for x in v]
        basis.append((c, v))
        keep.append(idx)
    return keep


def _left_dependency(rows: Sequence[Sequence[Fraction]]) -> Optional[List[Fraction]]:
    """A nonzero c with sum c_i rows_i = 0 whose last nonzero entry is 1, or None."""
    basis: List[Tuple[int, List[Fraction], List[Fraction]]] = []
    n = len(rows)
    for idx, row in enumerate(rows):
        v = list(row)
        comb = [Fraction(0)] * n
        comb[idx] = Fraction(1)
        for c, b, bc in basis:
            if v[c]:
                f = v[c]
                v = [x - f * y for x, y in zip(v, b)]
                comb = [x - f * y for x, y in zip(comb, bc)]
        c = next((j for j, x in enumerate(v) if x != 0), None)
        if c is None:
            return comb
        inv = 1 / v[c]
        basis.append((c, [x * inv for x in v], [x * inv for x in comb]))
    return None


def independent_rows_qt(rows: Sequence[Sequence[PolyT]]) -> List[int]:
    """Maximal Q(t)-independent subset of polynomial rows, exact elimination in Q(t)."""
    basis: List[Tuple[int, List[RatFunc]]] = []
    keep: List[int] = []
    for idx, row in enumerate(rows):
        v = [RatFunc(p) for p in row]
        for c, b in basis:
            if v[c]:
                f = v[c]
                v = [x - f * y if y else x for x, y in zip(v, b)]
        c = next((j for j, x in enumerate(v) if x), None)
        if c is None:
            continue
        inv = RatFunc(1) / v[c]
        basis.append((c, [x * inv if x else x for x in v]))
        keep.append(idx)
    return keep


def nullspace_qt(m: Matrixish) -> List[List[PolyT]]:
    """Basis of the right kernel over Q(t), each vector cleared to polynomials."""
    rows = _rows(m)
    if not rows:
        return []
    ncols = len(rows[0])
    a = [[RatFunc(p) for p in r] for r in rows]
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = RatFunc(1) / a[r][c]
        a[r] = [x * inv if x else x for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y if y else x for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fcol in free:
        vec = [RatFunc(0)] * ncols
        vec[fcol] = RatFunc(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -a[i][fcol]
        den = reduce(lambda x, y: x * y.exact_div(poly_gcd(x, y)), (v.den for v in vec), ONE)
        out.append(_primitive([v.num * den.exact_div(v.den) for v in vec]))
    return out


def _primitive(vec: List[PolyT]) -> List[PolyT]:
    """Remove the common power of t and rational content."""
    k = min((ord_t(p) for p in vec if p), default=0)
    if k:
        vec = [p.shift_down(k) for p in vec]
    nums = [c.numerator for p in vec for c in p.coeffs]
    dens = [c.denominator for p in vec for c in p.coeffs]
    if nums:
        g = Fraction(reduce(gcd, nums, 0), reduce(lcm, dens, 1))
        vec = [p * (1 / g) for p in vec]
    return vec


def _saturate_independent(rows: List[List[PolyT]]) -> List[List[PolyT]]:
    rows = [list(r) for r in rows]
    while True:
        dep = _left_dependency(eval_rows(rows, 0))
        if dep is None:
            return rows
        i = max(j for j, c in enumerate(dep) if c != 0)
        w = [ZERO] * len(rows[0])
        for c, r in zip(dep, rows):
            if c:
                w = [x + p * c for x, p in zip(w, r)]
        k = min(ord_t(p) for p in w if p) if any(w) else INF
        if k is INF:
            raise ArithmeticError("rows passed as independent are dependent over Q(t)")
        rows[i] = [p.shift_down(k) for p in w]


def saturate_at_t(span: Matrixish, ambient_dim: int, independent: bool = False) -> LocalMatrix:
    """Basis of the t-saturation of the row span in the lattice over Q[t]_(t).

    Rows are first thinned to a Q(t)-basis (skipped when ``independent``).
    Then, while the rows are dependent at ``t = 0``, the offending combination
    is divisible by ``t`` and replaces one of its rows after dividing out the
    largest power of ``t``.
    """
    rows = _rows(span)
    if any(len(r) != ambient_dim for r in rows):
        raise ValueError("span rows must have the ambient dimension")
    rows = [r for r in rows if any(r)]
    if not rows:
        return LocalMatrix((), None, None)
    if not independent:
        rows = [rows[i] for i in independent_rows_qt(rows)]
    rows = [_primitive(r) for r in rows]
    return LocalMatrix.of(_saturate_independent(rows))


def is_saturated(basis: Matrixish) -> bool:
    rows = _rows(basis)
    return rank_q(eval_rows(rows, 0)) == len(rows)


def _matvec_rows(a: List[List[PolyT]], g: List[List[PolyT]]) -> List[List[PolyT]]:
    n = len(g)
    out = []
    for r in a:
        row = []
        for j in range(n):
            acc = ZERO
            for i, x in enumerate(r):
                if x and g[i][j]:
                    acc = acc + x * g[i][j]
            row.append(acc)
        out.append(row)
    return out


def complement_columns(basis: Matrixish, ambient_dim: int) -> List[int]:
    """Standard basis indices completing a saturated basis to a lattice basis."""
    rows = _rows(basis)
    if not rows:
        return list(range(ambient_dim))
    _, piv = rref(eval_rows(rows, 0))
    if len(piv) != len(rows):
        raise NotSaturatedError("submodule basis is not saturated at t")
    return [j for j in range(ambient_dim) if j not in piv]


def induced_gram(gram: Matrixish, complement: Sequence[Sequence[PolyT]]) -> List[List[PolyT]]:
    g = _rows(gram)
    c = [[as_poly(x) for x in r] for r in complement]
    cg = _matvec_rows(c, g)
    return [[reduce(lambda acc, xy: acc + xy[0] * xy[1] if xy[0] and xy[1] else acc,
                    zip(cg_row, c_row), ZERO) for c_row in c] for cg_row in cg]


def complement_gram_ord(gram: Matrixish, submodule_basis: Matrixish,
                        complement: Optional[Sequence[Sequence[PolyT]]] = None,
                        check_radical: bool = True):
    """ord_t of the determinant of the form induced on lattice / submodule.

    ``complement`` defaults to the standard basis vectors outside the pivot
    columns of the submodule basis at ``t = 0``; any complement yields the
    same order since changes of complement are units at ``t``.
    """
    g = _rows(gram)
    n = len(g)
    if any(len(r) != n for r in g):
        raise ValueError("Gram matrix must be square")
    sub = _rows(submodule_basis)
    if sub and not is_saturated(sub):
        raise NotSaturatedError("submodule basis is not saturated at t")
    if check_radical and sub:
        for r in _matvec_rows(sub, g):
            if any(r):
                raise ValueError("submodule does not lie in the radical of the form")
    if complement is None:
        cols = complement_columns(sub, n)
        block = [[g[i][j] for j in cols] for i in cols]
        return ord_t(det_exact(block))
    comp = [[as_poly(x) for x in r] for r in complement]
    if len(comp) + len(sub) != n or not is_saturated(sub + comp):
        raise ValueError("complement does not complete the submodule to a lattice basis")
    return ord_t(det_exact(induced_gram(g, comp)))
