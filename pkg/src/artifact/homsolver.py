"""Hom groups between diagrams of abelian groups.

Hom_six, Hom_Lambda^red and the endomorphism ring used for Aut are all
solution groups of one integer system: the unknowns are the matrix entries
of one homomorphism per component, and each natural map contributes the
congruences saying that its square commutes modulo the target relations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from . import exactla as la
from .coeffs import CoeffHom, CoeffInvariant, InvariantError, fkey
from .fgab import (FgAbGroup, GroupError, GroupHom, Subquotient, compose, enumerate_homs, hom,
                   identity_hom)
from .sixterm import SixTerm, SixTermHom

ENUMERATION_LIMIT = 10 ** 6


class HomSolverError(RuntimeError):
    pass


Diagram = Tuple[Dict[str, FgAbGroup], Dict[str, Tuple[str, str, GroupHom]]]


def six_diagram(s: SixTerm) -> Diagram:
    groups = {fkey(1, i): s.groups[i] for i in range(6)}
    arrows = {f"f[1,{i}]": (fkey(1, i), fkey(1, i + 1), s.maps[i]) for i in range(6)}
    return groups, arrows


def invariant_diagram(inv: CoeffInvariant) -> Diagram:
    return dict(inv.groups), {a.name: (a.source, a.target, a.map) for a in inv.arrows.values()}


@dataclass(eq=False)
class HomLambdaGroup:
    """Solution group of a family of homomorphisms between two diagrams."""
    keys: List[str]  # unknown blocks in solver order
    sources: Dict[str, FgAbGroup]
    targets: Dict[str, FgAbGroup]
    offsets: Dict[str, int]
    nvars: int
    sq: Subquotient
    wrap: Callable[[Dict[str, GroupHom]], object] = field(repr=False)

    @property
    def group(self) -> FgAbGroup:
        return self.sq.group

    def _vector(self, comps: Dict[str, GroupHom]) -> List[int]:
        x = [0] * self.nvars
        for k in self.keys:
            s, t = self.sources[k].ngens, self.targets[k].ngens
            M = comps[k].mat
            for r in range(t):
                for c in range(s):
                    x[self.offsets[k] + r * s + c] = M[r][c]
        return x

    def _comps(self, x: Sequence[int]) -> Dict[str, GroupHom]:
        out = {}
        for k in self.keys:
            s, t = self.sources[k].ngens, self.targets[k].ngens
            o = self.offsets[k]
            M = [[x[o + r * s + c] for c in range(s)] for r in range(t)]
            out[k] = hom(self.sources[k], self.targets[k], M)
        return out

    def family(self, coords: Sequence[int]):
        """The family with the given coordinates in the solution group."""
        x = [0] * self.nvars
        for g, c in enumerate(coords):
            if c:
                x = [a + c * b for a, b in zip(x, self.sq.lift(g))]
        return self.wrap(self._comps(x))

    @property
    def basis(self) -> list:
        out = []
        for g in range(self.group.ngens):
            e = [0] * self.group.ngens
            e[g] = 1
            out.append(self.family(e))
        return out

    def coords(self, fam) -> List[int]:
        comps = fam.comps if isinstance(fam, CoeffHom) else _six_comps(fam)
        x = self._vector(comps)
        if not self.sq.contains(x):
            raise HomSolverError("family does not satisfy the relations")
        return self.sq.coords(x)

    def contains(self, fam) -> bool:
        comps = fam.comps if isinstance(fam, CoeffHom) else _six_comps(fam)
        return self.sq.contains(self._vector(comps))

    def elements(self) -> Iterator:
        if not self.group.is_finite():
            raise HomSolverError("solution group is infinite")
        for c in self.group.elements():
            yield self.family(c)

    def to_json(self) -> dict:
        return {"hom_group": self.group.to_json(),
                "basis": [_family_json(b) for b in self.basis]}


def _six_comps(h: SixTermHom) -> Dict[str, GroupHom]:
    return {fkey(1, i): h.maps[i] for i in range(6)}


def _family_json(fam) -> dict:
    if isinstance(fam, CoeffHom):
        return fam.to_json()
    return {fkey(1, i): m.mat for i, m in enumerate(fam.maps)}


def solve_homs(d1: Diagram, d2: Diagram, wrap) -> HomLambdaGroup:
    g1, a1 = d1
    g2, a2 = d2
    if sorted(g1) != sorted(g2) or sorted(a1) != sorted(a2):
        raise HomSolverError("diagrams have different shapes (support mismatch?)")
    keys = sorted(g1)
    offsets, n = {}, 0
    for k in keys:
        offsets[k] = n
        n += g1[k].ngens * g2[k].ngens

    def var(k, r, c):
        return offsets[k] + r * g1[k].ngens + c

    rows: List[Dict[int, int]] = []
    mods: List[int] = []

    def emit(row: Dict[int, int], e: int):
        row = {j: v for j, v in row.items() if v}
        if e:
            row = {j: v % e for j, v in row.items() if v % e}
        if row:
            rows.append(row)
            mods.append(e)

    # well-definedness of each block
    for k in keys:
        S, T = g1[k], g2[k]
        for c, d in enumerate(S.torsion):
            for r in range(T.ngens):
                emit({var(k, r, c): d}, T.orders[r])
    # commuting squares, in sorted arrow order
    for name in sorted(a1):
        s, t, A = a1[name]
        s2, t2, A2 = a2[name]
        if (s, t) != (s2, t2):
            raise HomSolverError(f"natural map {name} has different endpoints")
        Am, Bm = A.mat, A2.mat
        T, S = g2[t], g1[s]
        for r in range(T.ngens):
            for c in range(S.ngens):
                row: Dict[int, int] = {}
                for q in range(g1[t].ngens):  # alpha_t A
                    if Am[q][c]:
                        j = var(t, r, q)
                        row[j] = row.get(j, 0) + Am[q][c]
                for q in range(g2[s].ngens):  # - A2 alpha_s
                    if Bm[r][q]:
                        j = var(s, q, c)
                        row[j] = row.get(j, 0) - Bm[r][q]
                emit(row, T.orders[r])

    M = [[row.get(j, 0) for j in range(n)] for row in rows]
    mod_rows = [i for i, e in enumerate(mods) if e]
    R = [[mods[i] if i == mod_rows[j] else 0 for j in range(len(mod_rows))] for i in range(len(rows))]
    sol = la.solve_mod_subgroup(M, [0] * len(rows), R, cols=n, rcols=len(mod_rows))
    lattice = sol[1]
    null = []
    for k in keys:
        T = g2[k]
        for r, e in enumerate(T.orders):
            if e:
                for c in range(g1[k].ngens):
                    v = [0] * n
                    v[var(k, r, c)] = e
                    null.append(v)
    sq = Subquotient(n, lattice, null)
    return HomLambdaGroup(keys, g1, g2, offsets, n, sq, wrap)


def hom_six(s1: SixTerm, s2: SixTerm) -> HomLambdaGroup:
    def wrap(comps):
        return SixTermHom(s1, s2, tuple(comps[fkey(1, i)] for i in range(6)))
    return solve_homs(six_diagram(s1), six_diagram(s2), wrap)


def hom_lambda_red(inv1: CoeffInvariant, inv2: CoeffInvariant) -> HomLambdaGroup:
    if tuple(inv1.support) != tuple(inv2.support):
        raise HomSolverError(f"support mismatch: {list(inv1.support)} vs {list(inv2.support)}")

    def wrap(comps):
        return CoeffHom(inv1, inv2, {k: comps[k] for k in inv1.groups})
    return solve_homs(invariant_diagram(inv1), invariant_diagram(inv2), wrap)


def delta(h: CoeffHom) -> SixTermHom:
    return h.delta()


def delta_matrix(hl: HomLambdaGroup, hs: HomLambdaGroup) -> GroupHom:
    """Delta as a homomorphism between the two solution groups."""
    cols = [hs.coords(delta(b)) for b in hl.basis]
    return hom(hl.group, hs.group, la.from_columns(cols, hs.group.ngens))


def kernel_of_delta(inv1: CoeffInvariant, inv2: CoeffInvariant) -> FgAbGroup:
    from .fgab import kernel
    hl = hom_lambda_red(inv1, inv2)
    hs = hom_six(inv1.base, inv2.base)
    return kernel(delta_matrix(hl, hs))[0]


# ---------------------------------------------------------------------------
# automorphisms


@dataclass(eq=False)
class AutReport:
    mode: str  # "enumeration", "rank-one" or "predicate"
    finite: Optional[bool]
    order: Optional[int]
    generators: List[CoeffHom]
    inverses: List[CoeffHom]
    end_group: FgAbGroup
    is_unit: Callable[[CoeffHom], bool] = field(repr=False, default=lambda h: h.is_isomorphism())

    def to_json(self) -> dict:
        return {"mode": self.mode, "finite": self.finite, "order": self.order,
                "end_group": self.end_group.to_json(),
                "generators": [g.to_json() for g in self.generators],
                "certification": [{"inverse": v.to_json(), "all_components_isomorphisms": True}
                                  for v in self.inverses]}


def _key(h: CoeffHom) -> Tuple:
    return tuple((k, h.comps[k].matrix) for k in sorted(h.comps))


def _closure(gens: List[CoeffHom], ident: CoeffHom) -> Dict[Tuple, CoeffHom]:
    seen = {_key(ident): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g.compose(x)
                k = _key(y)
                if k not in seen:
                    seen[k] = y
                    nxt.append(y)
        frontier = nxt
    return seen


def aut_lambda_red(inv: CoeffInvariant) -> AutReport:
    end = hom_lambda_red(inv, inv)
    G = end.group
    ident = CoeffHom.identity(inv)
    if G.is_finite() and G.order() <= ENUMERATION_LIMIT:
        units = [h for h in end.elements() if h.is_isomorphism()]
        gens: List[CoeffHom] = []
        reached = {_key(ident)}
        for u in units:
            if _key(u) not in reached:
                gens.append(u)
                reached = set(_closure(gens, ident))
        inverses = [g.inverse() for g in gens]
        for g, v in zip(gens, inverses):
            if not g.compose(v) == ident or not v.is_valid():
                raise HomSolverError("inverse of a generator is not a valid family")
        return AutReport("enumeration", True, len(units), gens, inverses, G)
    if G.free_rank == 1 and not G.torsion:
        c = end.coords(ident)
        if abs(c[0]) != 1:
            raise HomSolverError("identity is not a generator of the rank-one endomorphism group")
        neg = -ident
        gens = [] if neg == ident else [neg]
        return AutReport("rank-one", True, 1 + len(gens), gens, list(gens), G)
    return AutReport("predicate", False if not G.is_finite() else None, None, [], [], G)


# ---------------------------------------------------------------------------
# brute force oracle


@dataclass
class BruteForceResult:
    families: List[CoeffHom]

    @property
    def order(self) -> int:
        return len(self.families)

    def keyset(self) -> set:
        return {_key(f) for f in self.families}


def brute_force_hom_lambda(inv1: CoeffInvariant, inv2: CoeffInvariant) -> BruteForceResult:
    if tuple(inv1.support) != tuple(inv2.support):
        raise HomSolverError("support mismatch")
    if not (inv1.is_finite() and inv2.is_finite()):
        raise HomSolverError("brute force needs every group finite")
    keys = list(inv1.groups)
    pos = {k: i for i, k in enumerate(keys)}
    cands = {k: list(enumerate_homs(inv1.groups[k], inv2.groups[k])) for k in keys}
    # arrows become checkable once both endpoints are assigned
    checks: Dict[int, List[str]] = {i: [] for i in range(len(keys))}
    for name, a in inv1.arrows.items():
        checks[max(pos[a.source], pos[a.target])].append(name)

    out: List[CoeffHom] = []
    chosen: Dict[str, GroupHom] = {}

    def ok(i: int) -> bool:
        for name in checks[i]:
            a, b = inv1.arrows[name], inv2.arrows[name]
            if compose(chosen[a.target], a.map) != compose(b.map, chosen[a.source]):
                return False
        return True

    def rec(i: int):
        if i == len(keys):
            out.append(CoeffHom(inv1, inv2, dict(chosen)))
            return
        k = keys[i]
        for h in cands[k]:
            chosen[k] = h
            if ok(i):
                rec(i + 1)
        chosen.pop(k, None)

    rec(0)
    return BruteForceResult(out)


def compare_with_oracle(inv1: CoeffInvariant, inv2: CoeffInvariant) -> Tuple[bool, int, int]:
    """Elementwise comparison of the solver against brute force."""
    hl = hom_lambda_red(inv1, inv2)
    bf = brute_force_hom_lambda(inv1, inv2)
    solved = {_key(f) for f in hl.elements()}
    return solved == bf.keyset(), len(solved), bf.order
