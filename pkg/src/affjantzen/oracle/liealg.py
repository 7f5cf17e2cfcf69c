"""The affine algebra of sl(l+1) realized by matrix units.

Basis elements are ``E_ij (x) t^m`` (i != j), ``h_k (x) t^m`` with
``h_k = E_kk - E_{k+1,k+1}`` and the central ``c``.  The cocycle uses the
trace form, which is the invariant form with ``(theta|theta) = 2``.
The derivation ``d`` only grades and never appears as a basis element.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ..rootdata import AffineRoot, FiniteRootSystem
from ..weylcalc import BoxCoords, root_box

Key = Tuple  # ("E", i, j, m) | ("H", k, m) | ("C",)

NEG, POS, CARTAN, CENTRAL = "neg", "pos", "cartan", "central"


class UnsupportedSeriesError(ValueError):
    pass


@dataclass(frozen=True)
class LoopElement:
    """Descriptor of one basis element of the loop algebra plus ``c``."""

    key: Key
    kind: str  # one of NEG, POS, CARTAN (h_k at loop degree 0), CENTRAL
    root: Optional[AffineRoot]  # weight; None for degree-0 Cartan and c
    box: Optional[BoxCoords]  # box coordinates of the positive root +-root

    @property
    def loop_degree(self) -> int:
        return 0 if self.key[0] == "C" else self.key[-1]


class LoopAlgebra:
    """Structure constants of the affine Lie algebra for type A.

    Element ids are assigned in a fixed canonical order for loop degrees up to
    ``loop_bound``; keys beyond it get ids lazily (never needed inside boxes).
    """

    def __init__(self, system: FiniteRootSystem, loop_bound: int = 8) -> None:
        if system.datum.series != "A":
            raise UnsupportedSeriesError(f"structure constants are realized for type A only, not {system.name}")
        self.system = system
        self.N = system.rank + 1
        self._ids: Dict[Key, int] = {}
        self.elements: List[LoopElement] = []
        self._bracket: Dict[Tuple[int, int], Tuple[Tuple[Tuple[int, int], ...], int]] = {}
        keys = [("C",)]
        for m in range(-loop_bound, loop_bound + 1):
            for k in range(self.N - 1):
                keys.append(("H", k, m))
            for i in range(self.N):
                for j in range(self.N):
                    if i != j:
                        keys.append(("E", i, j, m))
        keys.sort(key=self._canonical)
        for k in keys:
            self.id(k)

    @staticmethod
    def _canonical(key: Key):
        if key[0] == "C":
            return (0, 0, ())
        return (key[-1], 0 if key[0] == "H" else 1, key[1:-1])

    # -- bookkeeping -----------------------------------------------------------

    def _root(self, key: Key) -> Optional[AffineRoot]:
        l = self.N - 1
        if key[0] == "C":
            return None
        if key[0] == "H":
            m = key[2]
            return AffineRoot((0,) * l, m) if m else None
        _, i, j, m = key
        fin = [0] * l
        if i < j:
            for k in range(i, j):
                fin[k] = 1
        else:
            for k in range(j, i):
                fin[k] = -1
        return AffineRoot(tuple(fin), m)

    def id(self, key: Key) -> int:
        found = self._ids.get(key)
        if found is not None:
            return found
        root = self._root(key)
        if key[0] == "C":
            kind = CENTRAL
        elif root is None:
            kind = CARTAN
        else:
            kind = POS if root.is_positive else NEG
        box = None
        if root is not None:
            box = root_box(self.system, root if root.is_positive else -root)
        idx = len(self.elements)
        self.elements.append(LoopElement(key, kind, root, box))
        self._ids[key] = idx
        return idx

    def E(self, i: int, j: int, m: int = 0) -> int:
        return self.id(("E", i, j, m))

    def H(self, k: int, m: int = 0) -> int:
        return self.id(("H", k, m))

    @property
    def c(self) -> int:
        return self.id(("C",))

    def kind(self, x: int) -> str:
        return self.elements[x].kind

    def sigma(self, x: int) -> int:
        """Anti-involution: E_ij t^m -> E_ji t^-m, h t^m -> h t^-m, c -> c."""
        key = self.elements[x].key
        if key[0] == "C":
            return x
        if key[0] == "H":
            return self.H(key[1], -key[2])
        return self.E(key[2], key[1], -key[3])

    def chevalley_e(self) -> List[int]:
        """e_0 = E_{l+1,1} t, then e_1..e_l."""
        n = self.N
        return [self.E(n - 1, 0, 1)] + [self.E(k, k + 1, 0) for k in range(n - 1)]

    def chevalley_f(self) -> List[int]:
        return [self.sigma(e) for e in self.chevalley_e()]

    def basis_ids(self, max_degree: int) -> List[int]:
        return [i for i, el in enumerate(self.elements)
                if el.key[0] == "C" or abs(el.loop_degree) <= max_degree]

    # -- structure constants -----------------------------------------------------

    def _matrix(self, key: Key) -> Dict[Tuple[int, int], int]:
        if key[0] == "E":
            return {(key[1], key[2]): 1}
        k = key[1]
        return {(k, k): 1, (k + 1, k + 1): -1}

    def _trace_form(self, a: Key, b: Key) -> int:
        ma, mb = self._matrix(a), self._matrix(b)
        return sum(va * vb for (i, j), va in ma.items() for (k, l), vb in mb.items() if j == k and l == i)

    def bracket(self, a: int, b: int) -> Tuple[Tuple[Tuple[int, int], ...], int]:
        """``[a, b]`` as ((id, coeff), ...) plus the coefficient of ``c``."""
        hit = self._bracket.get((a, b))
        if hit is not None:
            return hit
        ka, kb = self.elements[a].key, self.elements[b].key
        if ka[0] == "C" or kb[0] == "C":
            out: Tuple[Tuple[Tuple[int, int], ...], int] = ((), 0)
        else:
            ma, mb = self._matrix(ka), self._matrix(kb)
            na, nb = ka[-1], kb[-1]
            comm: Dict[Tuple[int, int], int] = {}
            for (i, j), x in ma.items():
                for (k, l), y in mb.items():
                    if j == k:
                        comm[(i, l)] = comm.get((i, l), 0) + x * y
                    if l == i:
                        comm[(k, j)] = comm.get((k, j), 0) - x * y
            terms: Dict[int, int] = {}
            diag = [0] * self.N
            for (i, j), v in comm.items():
                if not v:
                    continue
                if i == j:
                    diag[i] += v
                else:
                    z = self.E(i, j, na + nb)
                    terms[z] = terms.get(z, 0) + v
            acc = 0
            for k in range(self.N - 1):
                acc += diag[k]
                if acc:
                    z = self.H(k, na + nb)
                    terms[z] = terms.get(z, 0) + acc
            central = na * self._trace_form(ka, kb) if na + nb == 0 else 0
            out = (tuple(sorted((z, v) for z, v in terms.items() if v)), central)
        self._bracket[(a, b)] = out
        return out

    def bracket_vec(self, u: Dict[int, int], v: Dict[int, int]) -> Dict[int, int]:
        """Bracket of linear combinations; ``c`` appears under its own id."""
        out: Dict[int, int] = {}
        for a, x in u.items():
            for b, y in v.items():
                terms, central = self.bracket(a, b)
                for z, w in terms:
                    out[z] = out.get(z, 0) + x * y * w
                if central:
                    out[self.c] = out.get(self.c, 0) + x * y * central
        return {k: v for k, v in out.items() if v}
