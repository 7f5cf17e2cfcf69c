"""Verma modules over Q[t] for the affine sl(l+1), by explicit PBW straightening.

Vectors are dicts ``{monomial: PolyT}`` where a monomial is a sorted tuple of
negative generator ids applied to the highest weight vector.  The highest
weight is ``lam + t*dir``; everything is exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..exactalg import (INF, LocalMatrix, PolyT, ZERO, _saturate_independent, as_poly,
                        complement_gram_ord, det_exact, eval_rows, independent_rows_q,
                        independent_rows_qt, nullspace_qt, ord_t, rank_q)
from ..rootdata import AffineWeight, FiniteRootSystem
from ..shapodet import direction
from ..weylcalc import BoxCoords, delta_box, leq, simple_affine_boxes
from .liealg import CARTAN, CENTRAL, NEG, POS, LoopAlgebra

Mono = Tuple[int, ...]
Vec = Dict[Mono, PolyT]

# rational points used to certify ranks over Q(t); fixed so runs are reproducible
_PROBES = (Fraction(7, 13), Fraction(-11, 5), Fraction(17, 3))


def vec_add(u: Vec, v: Vec, c: PolyT = None) -> Vec:
    out = dict(u)
    for m, x in v.items():
        y = out.get(m, ZERO) + (x if c is None else x * c)
        if y:
            out[m] = y
        else:
            out.pop(m, None)
    return out


class VermaLattice:
    """The Q[t]-form of the Verma module with highest weight ``lam + t*dir``.

    ``dir_name`` is ``"rho"``, ``"rhobar"`` or ``None`` (undeformed).
    """

    def __init__(self, system: FiniteRootSystem, lam: AffineWeight,
                 dir_name: Optional[str] = "rhobar", loop_bound: int = 8) -> None:
        self.system = system
        self.lam = lam
        self.dir_name = dir_name
        self.alg = LoopAlgebra(system, loop_bound)
        t = PolyT.t()
        d = direction(system, dir_name) if dir_name else system.weight()
        self.h_scalars = [as_poly(a) + t * b for a, b in zip(lam.finite, d.finite)]
        self.level = as_poly(lam.level) + t * d.level
        l = system.rank
        # fundamental-coordinate pairing of each positive root box, for Cartan scalars
        self._pair: Dict[int, Tuple[Fraction, ...]] = {}
        for i, el in enumerate(self.alg.elements):
            if el.root is not None:
                root = el.root if el.root.is_positive else -el.root
                self._pair[i] = system.root_weight(root).finite
        self._neg = sorted(i for i, el in enumerate(self.alg.elements) if el.kind == NEG)
        self._mono_box: Dict[Mono, BoxCoords] = {(): BoxCoords.zero(l)}
        self._act: Dict[Tuple[int, Mono], Vec] = {}
        self._basis: Dict[BoxCoords, List[Mono]] = {}
        self._gram: Dict[BoxCoords, List[List[PolyT]]] = {}
        self._sub: Dict[BoxCoords, List[List[PolyT]]] = {}

    # -- PBW basis --------------------------------------------------------------

    def box_of(self, mono: Mono) -> BoxCoords:
        b = self._mono_box.get(mono)
        if b is None:
            b = self.box_of(mono[1:]) + self.alg.elements[mono[0]].box
            self._mono_box[mono] = b
        return b

    def basis(self, nu: BoxCoords) -> List[Mono]:
        """PBW monomials of weight ``lam - nu``, in a fixed order."""
        hit = self._basis.get(nu)
        if hit is not None:
            return hit
        gens = [g for g in self._neg if self.alg.elements[g].box.leq(nu)]
        out: List[Mono] = []

        def rec(start: int, rest: BoxCoords, acc: Tuple[int, ...]) -> None:
            if rest.is_zero():
                out.append(acc)
                return
            for k in range(start, len(gens)):
                b = self.alg.elements[gens[k]].box
                if b.leq(rest):
                    rec(k, rest - b, acc + (gens[k],))

        rec(0, nu, ())
        out.sort()
        self._basis[nu] = out
        return out

    def dim(self, nu: BoxCoords) -> int:
        return len(self.basis(nu))

    # -- action -----------------------------------------------------------------

    def _cartan_scalar(self, x: int, mono: Mono) -> PolyT:
        k = self.alg.elements[x].key[1]
        # negative generators lower the weight by their positive root
        shift = sum((self._pair[g][k] for g in mono), Fraction(0))
        return self.h_scalars[k] - shift

    def act_mono(self, x: int, mono: Mono) -> Vec:
        key = (x, mono)
        hit = self._act.get(key)
        if hit is not None:
            return hit
        el = self.alg.elements[x]
        if el.kind == CARTAN:
            s = self._cartan_scalar(x, mono)
            out: Vec = {mono: s} if s else {}
        elif el.kind == CENTRAL:
            out = {mono: self.level} if self.level else {}
        elif el.kind == POS and not el.box.leq(self.box_of(mono)):
            out = {}
        elif not mono:
            out = {(x,): as_poly(1)} if el.kind == NEG else {}
        elif el.kind == NEG and x <= mono[0]:
            out = {(x,) + mono: as_poly(1)}
        else:
            y, rest = mono[0], mono[1:]
            out = {}
            for m, c in self.act_mono(x, rest).items():
                out = vec_add(out, self.act_mono(y, m), c)
            terms, central = self.alg.bracket(x, y)
            for z, cz in terms:
                out = vec_add(out, self.act_mono(z, rest), as_poly(cz))
            if central:
                out = vec_add(out, {rest: self.level * central})
        self._act[key] = out
        return out

    def act(self, x: int, v: Vec) -> Vec:
        out: Vec = {}
        for m, c in v.items():
            out = vec_add(out, self.act_mono(x, m), c)
        return out

    def act_word(self, word: Sequence[int], v: Vec) -> Vec:
        """Apply ``word[0] word[1] ... word[-1]`` (rightmost first)."""
        for x in reversed(word):
            v = self.act(x, v)
        return v

    # -- contravariant form -----------------------------------------------------

    def gram_matrix(self, nu: BoxCoords) -> LocalMatrix:
        B = self.basis(nu)
        return LocalMatrix.of(self._gram_rows(nu), B, B)

    def _gram_rows(self, nu: BoxCoords) -> List[List[PolyT]]:
        hit = self._gram.get(nu)
        if hit is not None:
            return hit
        B = self.basis(nu)
        n = len(B)
        if nu.is_zero():
            g = [[as_poly(1)]]
        else:
            g = [[ZERO] * n for _ in range(n)]
            for i, a in enumerate(B):
                y1 = a[0]
                sub = nu - self.alg.elements[y1].box
                subB = self.basis(sub)
                idx = {m: k for k, m in enumerate(subB)}
                subG = self._gram_rows(sub)
                ai = idx[a[1:]]
                p = self.alg.sigma(y1)
                for j in range(i, n):
                    acc = ZERO
                    for m, c in self.act_mono(p, B[j]).items():
                        e = subG[ai][idx[m]]
                        if e:
                            acc = acc + c * e
                    g[i][j] = acc
                    g[j][i] = acc
        self._gram[nu] = g
        return g

    def pair(self, nu: BoxCoords, u: Vec, v: Vec) -> PolyT:
        """Contravariant pairing of two vectors of weight ``lam - nu``."""
        B = self.basis(nu)
        idx = {m: k for k, m in enumerate(B)}
        g = self._gram_rows(nu)
        acc = ZERO
        for a, x in u.items():
            for b, y in v.items():
                e = g[idx[a]][idx[b]]
                if e:
                    acc = acc + x * y * e
        return acc

    def pair_direct(self, u: Vec, v: Vec) -> PolyT:
        """Same pairing as the vacuum coefficient of ``sigma(u) v``, without a Gram matrix."""
        acc = ZERO
        for m, x in u.items():
            w = self.act_word([self.alg.sigma(y) for y in reversed(m)], v)
            c = w.get(())
            if c:
                acc = acc + x * c
        return acc

    def dense(self, nu: BoxCoords, v: Vec) -> List[PolyT]:
        B = self.basis(nu)
        idx = {m: k for k, m in enumerate(B)}
        row = [ZERO] * len(B)
        for m, c in v.items():
            row[idx[m]] = c
        return row

    def sparse(self, nu: BoxCoords, row: Sequence[PolyT]) -> Vec:
        return {m: c for m, c in zip(self.basis(nu), row) if c}

    # -- singular vectors and the restricted quotient -----------------------------

    def singular_vectors(self, n: int) -> List[List[PolyT]]:
        """Q(t)-basis of vectors of weight ``lam - n delta`` killed by e_0, ..., e_l."""
        if n < 1:
            raise ValueError("singular vectors are sought at lam - n*delta with n >= 1")
        nu = delta_box(self.system).scale(n)
        B = self.basis(nu)
        rows: List[List[PolyT]] = []
        for e, a in zip(self.alg.chevalley_e(), simple_affine_boxes(self.system)):
            tgt = nu - a
            if not tgt.is_nonneg():
                continue
            cols = [self.dense(tgt, self.act_mono(e, m)) for m in B]
            rows.extend([cols[j][i] for j in range(len(B))] for i in range(self.dim(tgt)))
        if not rows:
            return [[as_poly(int(i == j)) for j in range(len(B))] for i in range(len(B))]
        return nullspace_qt(LocalMatrix.of(rows))

    def _require_restricted(self) -> None:
        if self.dir_name == "rho":
            raise ValueError("the restricted lattice needs a deformation that stays critical (use rhobar)")

    def submodule_basis(self, nu: BoxCoords) -> List[List[PolyT]]:
        """Saturated basis of the weight space of U(n-) applied to singular vectors at lam - k delta."""
        self._require_restricted()
        hit = self._sub.get(nu)
        if hit is not None:
            return hit
        gens: List[List[PolyT]] = []
        if not nu.is_zero():
            for f, a in zip(self.alg.chevalley_f(), simple_affine_boxes(self.system)):
                prev = nu - a
                if not prev.is_nonneg():
                    continue
                for row in self.submodule_basis(prev):
                    gens.append(self.dense(nu, self.act(f, self.sparse(prev, row))))
            db = delta_box(self.system)
            k = nu.c0
            if k >= 1 and db.scale(k) == nu:
                gens.extend(self.singular_vectors(k))
        gens = [g for g in gens if any(g)]
        basis = self._independent(nu, gens)
        out = _saturate_independent(basis) if basis else []
        self._sub[nu] = out
        return out

    def _independent(self, nu: BoxCoords, gens: List[List[PolyT]]) -> List[List[PolyT]]:
        """A Q(t)-basis of the span of ``gens`` (which lie in the radical of the form).

        A rank found at a rational point is a lower bound for the generic rank,
        and ``dim - rank G`` there is an upper bound since the span sits in the
        radical.  When they meet, the rows chosen at that point are a basis.
        """
        if not gens:
            return []
        G = self._gram_rows(nu)
        for x in _PROBES:
            pick = independent_rows_q(eval_rows(gens, x))
            upper = len(G) - rank_q(eval_rows(G, x))
            if len(pick) == upper:
                return [gens[i] for i in pick]
        return [gens[i] for i in independent_rows_qt(gens)]

    def quotient_dim(self, nu: BoxCoords) -> int:
        return self.dim(nu) - len(self.submodule_basis(nu))

    def restricted_ord(self, nu: BoxCoords):
        """ord_t of the determinant of the form on the restricted Verma quotient at ``lam - nu``."""
        return complement_gram_ord(self._gram_rows(nu), self.submodule_basis(nu))

    def ord_det(self, nu: BoxCoords):
        return ord_t(det_exact(self._gram_rows(nu)))

    def det(self, nu: BoxCoords) -> PolyT:
        return det_exact(self._gram_rows(nu))
