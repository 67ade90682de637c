"""Finitely generated abelian groups in invariant-factor form.

A group is Z/d1 + ... + Z/dt + Z^r with d1 | d2 | ... | dt and every
d_j >= 2. Elements are integer coordinate vectors with torsion entries
reduced into [0, d_j). Homomorphisms are integer matrices whose columns
are the images of the source generators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd, prod
from typing import Iterator, List, Optional, Sequence, Tuple

from . import exactla as la
from .exactla import IntMatrix, Vector


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class FgAbGroup:
    torsion: Tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        t = tuple(int(d) for d in self.torsion)
        object.__setattr__(self, "torsion", t)
        if any(d < 2 for d in t):
            raise GroupError(f"invariant factors must be >= 2, got {t}")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise GroupError(f"invariant factors must form a divisibility chain, got {t}")
        if self.free_rank < 0:
            raise GroupError("free rank must be nonnegative")

    @property
    def ngens(self) -> int:
        return len(self.torsion) + self.free_rank

    @property
    def orders(self) -> Tuple[int, ...]:
        """Generator orders, 0 standing for infinite order."""
        return self.torsion + (0,) * self.free_rank

    def is_trivial(self) -> bool:
        return self.ngens == 0

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def is_free(self) -> bool:
        return not self.torsion

    def order(self) -> Optional[int]:
        return prod(self.torsion) if self.free_rank == 0 else None

    def exponent(self) -> int:
        return self.torsion[-1] if self.torsion else 1

    def relations(self) -> IntMatrix:
        """ngens x len(torsion) relation matrix diag(torsion) padded with zeros."""
        out = la.zeros(self.ngens, len(self.torsion))
        for j, d in enumerate(self.torsion):
            out[j][j] = d
        return out

    def reduce(self, v: Sequence[int]) -> Vector:
        out = list(v)
        for j, d in enumerate(self.torsion):
            out[j] %= d
        return out

    def zero(self) -> Vector:
        return [0] * self.ngens

    def elements(self) -> Iterator[Tuple[int, ...]]:
        if self.free_rank:
            raise GroupError("cannot enumerate an infinite group")
        return itertools.product(*(range(d) for d in self.torsion))

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"torsion": list(self.torsion), "free_rank": self.free_rank}

    @classmethod
    def from_json(cls, obj: dict) -> "FgAbGroup":
        return cls(tuple(obj.get("torsion", ())), int(obj.get("free_rank", 0)))


def cyclic(n: int) -> FgAbGroup:
    """Z/n for n >= 2, Z for n == 0, trivial for n == 1."""
    if n == 0:
        return FgAbGroup((), 1)
    if n == 1:
        return FgAbGroup()
    return FgAbGroup((n,), 0)


ZERO = FgAbGroup()
Z = FgAbGroup((), 1)


@dataclass(frozen=True, eq=False)
class GroupHom:
    source: FgAbGroup
    target: FgAbGroup
    matrix: Tuple[Tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        m = self.matrix
        rows, cols = self.target.ngens, self.source.ngens
        if rows == 0 and all(len(r) == 0 for r in m):
            m = ()
        if not m and cols == 0:
            m = ((),) * rows
        if rows and len(m) != rows:
            raise GroupError(f"matrix needs {rows} rows, got {len(m)}")
        if any(len(r) != cols for r in m):
            raise GroupError(f"matrix needs {cols} columns")
        red = [list(r) for r in m] if rows else []
        for i, d in enumerate(self.target.torsion):
            red[i] = [x % d for x in red[i]]
        object.__setattr__(self, "matrix", tuple(tuple(r) for r in red))
        for j, a in enumerate(self.source.torsion):
            col = [self.matrix[i][j] * a for i in range(rows)]
            if any(self.target.reduce(col)):
                raise GroupError(f"ill-defined map: generator {j} of order {a} "
                                 f"sent to an element of incompatible order")

    @property
    def mat(self) -> IntMatrix:
        return [list(r) for r in self.matrix]

    def __call__(self, x: Sequence[int]) -> Vector:
        return self.target.reduce(la.matvec(self.matrix, x))

    def __eq__(self, other) -> bool:
        return (isinstance(other, GroupHom) and self.source == other.source
                and self.target == other.target and self.matrix == other.matrix)

    def __hash__(self):
        return hash((self.source, self.target, self.matrix))

    def __add__(self, other: "GroupHom") -> "GroupHom":
        _same_shape(self, other)
        return GroupHom(self.source, self.target,
                        tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.matrix, other.matrix)))

    def __neg__(self) -> "GroupHom":
        return self.scale(-1)

    def __sub__(self, other: "GroupHom") -> "GroupHom":
        return self + (-other)

    def scale(self, k: int) -> "GroupHom":
        return GroupHom(self.source, self.target, tuple(tuple(k * a for a in r) for r in self.matrix))

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.matrix for a in r)

    def to_json(self) -> dict:
        return {"source": self.source.to_json(), "target": self.target.to_json(),
                "matrix": [list(r) for r in self.matrix]}

    @classmethod
    def from_json(cls, obj: dict) -> "GroupHom":
        return cls(FgAbGroup.from_json(obj["source"]), FgAbGroup.from_json(obj["target"]),
                   tuple(tuple(int(x) for x in r) for r in obj["matrix"]))


def _same_shape(g: GroupHom, h: GroupHom):
    if g.source != h.source or g.target != h.target:
        raise GroupError("homomorphisms have different source or target")


def hom(source: FgAbGroup, target: FgAbGroup, matrix: Sequence[Sequence[int]]) -> GroupHom:
    return GroupHom(source, target, tuple(tuple(int(x) for x in r) for r in matrix))


def zero_hom(source: FgAbGroup, target: FgAbGroup) -> GroupHom:
    return hom(source, target, la.zeros(target.ngens, source.ngens))


def identity_hom(G: FgAbGroup) -> GroupHom:
    return hom(G, G, la.identity(G.ngens))


def compose(g: GroupHom, h: GroupHom) -> GroupHom:
    """g after h."""
    if h.target != g.source:
        raise GroupError(f"cannot compose: {h.target} is not {g.source}")
    return hom(h.source, g.target,
               la.matmul(g.matrix, h.matrix, inner=g.source.ngens, cols=h.source.ngens))


# ---------------------------------------------------------------------------
# presentations and subquotients


@dataclass
class Presentation:
    """Canonical form of Z^k / span(relations).

    `proj` (ngens x k) sends old coordinates to canonical ones and `lift`
    (k x ngens) sends canonical generators back to representatives.
    """
    group: FgAbGroup
    proj: IntMatrix
    lift: IntMatrix
    k: int

    def coords(self, v: Sequence[int]) -> Vector:
        return self.group.reduce(la.matvec(self.proj, v))

    def lift_of(self, g: int) -> Vector:
        return [self.lift[i][g] for i in range(self.k)]


def present(k: int, relations: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Presentation:
    if k and not relations:
        relations = [[] for _ in range(k)]
    ncols = len(relations[0]) if k else (ncols or 0)
    U, D, _, Ui = la.smith_decomposition(relations if k else [], cols=ncols)
    diag = [D[i][i] if i < ncols else 0 for i in range(k)]
    keep = [i for i in range(k) if diag[i] != 1]
    torsion = tuple(diag[i] for i in keep if diag[i] > 1)
    G = FgAbGroup(torsion, sum(1 for i in keep if diag[i] == 0))
    proj = [list(U[i]) for i in keep]
    for j, d in enumerate(torsion):
        proj[j] = [x % d for x in proj[j]]
    lift = [[Ui[r][i] for i in keep] for r in range(k)]
    return Presentation(G, proj, lift, k)


def from_presentation(generator_count: int, relations: Sequence[Sequence[int]],
                      ncols: Optional[int] = None) -> Tuple[FgAbGroup, GroupHom]:
    """Canonical group Z^n / span(relations) and the coordinate map.

    The coordinate map is returned as a GroupHom from the free group Z^n.
    """
    pres = present(generator_count, relations, ncols)
    return pres.group, hom(FgAbGroup((), generator_count), pres.group, pres.proj)


class Subquotient:
    """The group Z / B for lattices B <= Z <= Z^N.

    `cycles` is a basis of Z (as vectors in Z^N), `boundaries` spans B.
    """

    def __init__(self, dim: int, cycles: Sequence[Sequence[int]], boundaries: Sequence[Sequence[int]]):
        self.dim = dim
        self.cycles = [list(v) for v in cycles]
        k = len(self.cycles)
        self._ech = la.Echelon(la.from_columns(self.cycles, dim), dim, k)
        rel_cols = []
        for b in boundaries:
            c = self._ech.solve(b)
            if c is None:
                raise GroupError("boundary vector does not lie in the cycle lattice")
            rel_cols.append(c)
        self.pres = present(k, la.from_columns(rel_cols, k), len(rel_cols))
        self.group = self.pres.group

    def coords(self, v: Sequence[int]) -> Vector:
        c = self._ech.solve(v)
        if c is None:
            raise GroupError("vector is not a cycle")
        return self.pres.coords(c)

    def contains(self, v: Sequence[int]) -> bool:
        return self._ech.solve(v) is not None

    def lift(self, g: int) -> Vector:
        c = self.pres.lift_of(g)
        out = [0] * self.dim
        for coef, z in zip(c, self.cycles):
            if coef:
                for i in range(self.dim):
                    out[i] += coef * z[i]
        return out

    def lifts(self) -> List[Vector]:
        return [self.lift(g) for g in range(self.group.ngens)]


def induced_map(src: Subquotient, tgt: Subquotient, L: Sequence[Sequence[int]]) -> GroupHom:
    """Map on subquotients induced by the linear map L: Z^src.dim -> Z^tgt.dim."""
    cols = [tgt.coords(la.matvec(L, v)) if src.dim else tgt.coords([0] * tgt.dim)
            for v in src.lifts()]
    return hom(src.group, tgt.group, la.from_columns(cols, tgt.group.ngens))


# ---------------------------------------------------------------------------
# kernels, images, cokernels


def kernel(h: GroupHom) -> Tuple[FgAbGroup, GroupHom]:
    A, B = h.source, h.target
    sol = la.solve_mod_subgroup(h.mat if B.ngens else [], [0] * B.ngens, B.relations(),
                                cols=A.ngens, rcols=len(B.torsion))
    lattice = sol[1]
    sq = Subquotient(A.ngens, lattice, la.columns(A.relations(), len(A.torsion)))
    incl = [A.reduce(v) for v in sq.lifts()]
    return sq.group, hom(sq.group, A, la.from_columns(incl, A.ngens))


def image(h: GroupHom) -> Tuple[FgAbGroup, GroupHom]:
    B = h.target
    rels = la.columns(B.relations(), len(B.torsion))
    gens = la.columns(h.mat, h.source.ngens) + rels
    sq = Subquotient(B.ngens, la.lattice_basis(gens, B.ngens), rels)
    incl = [B.reduce(v) for v in sq.lifts()]
    return sq.group, hom(sq.group, B, la.from_columns(incl, B.ngens))


def cokernel(h: GroupHom) -> Tuple[FgAbGroup, GroupHom]:
    B = h.target
    rel = la.hstack(h.mat, B.relations(), rows=B.ngens)
    pres = present(B.ngens, rel, h.source.ngens + len(B.torsion))
    return pres.group, hom(B, pres.group, pres.proj)


def is_injective(h: GroupHom) -> bool:
    return kernel(h)[0].is_trivial()


def is_surjective(h: GroupHom) -> bool:
    return cokernel(h)[0].is_trivial()


def is_isomorphism(h: GroupHom) -> bool:
    return is_injective(h) and is_surjective(h)


def inverse(h: GroupHom) -> GroupHom:
    """Inverse of an isomorphism."""
    if not is_isomorphism(h):
        raise GroupError("map is not an isomorphism")
    A, B = h.source, h.target
    cols = []
    for j in range(B.ngens):
        e = [0] * B.ngens
        e[j] = 1
        sol = la.solve_mod_subgroup(h.mat, e, B.relations(), cols=A.ngens, rcols=len(B.torsion))
        cols.append(A.reduce(sol[0]))
    return hom(B, A, la.from_columns(cols, A.ngens))


def in_image(h: GroupHom, y: Sequence[int]) -> Optional[Vector]:
    """A preimage of y under h, or None."""
    B = h.target
    sol = la.solve_mod_subgroup(h.mat if B.ngens else [], list(y), B.relations(),
                                cols=h.source.ngens, rcols=len(B.torsion))
    return None if sol is None else h.source.reduce(sol[0])


def direct_sum(groups: Sequence[FgAbGroup]) -> Tuple[FgAbGroup, List[GroupHom], List[GroupHom]]:
    """Canonical direct sum with injections and projections."""
    sizes = [G.ngens for G in groups]
    N = sum(sizes)
    rel = la.block_diag(*[(G.relations(), G.ngens, len(G.torsion)) for G in groups])
    pres = present(N, rel, sum(len(G.torsion) for G in groups))
    S = pres.group
    inj, proj = [], []
    off = 0
    for G, n in zip(groups, sizes):
        emb = la.zeros(N, n)
        for i in range(n):
            emb[off + i][i] = 1
        inj.append(hom(G, S, la.matmul(pres.proj, emb, inner=N, cols=n)))
        sel = [[pres.lift[off + i][g] for g in range(S.ngens)] for i in range(n)]
        proj.append(hom(S, G, sel))
        off += n
    return S, inj, proj


# ---------------------------------------------------------------------------
# functors


@dataclass
class HomGroup:
    """Hom(A, B) as a canonical group together with explicit generators."""
    group: FgAbGroup
    basis: List[GroupHom]
    _pairs: List[Tuple[int, int, int, int]]
    _pres: Presentation

    def __iter__(self):
        return iter((self.group, self.basis))

    def coordinates(self, h: GroupHom) -> Vector:
        v = []
        for (j, i, unit, _o) in self._pairs:
            a = h.matrix[j][i]
            if a % unit:
                raise GroupError("matrix entry incompatible with generator orders")
            v.append(a // unit)
        return self._pres.coords(v)


def hom_group(A: FgAbGroup, B: FgAbGroup) -> HomGroup:
    pairs = []  # (target row, source col, unit, order)
    for i, a in enumerate(A.orders):
        for j, b in enumerate(B.orders):
            if a == 0:
                pairs.append((j, i, 1, b))
            elif b == 0:
                continue
            else:
                g = gcd(a, b)
                if g > 1:
                    pairs.append((j, i, b // g, g))
    k = len(pairs)
    rel = la.zeros(k, k)
    for r, p in enumerate(pairs):
        rel[r][r] = p[3]
    pres = present(k, rel, k)
    basis = []
    for g in range(pres.group.ngens):
        c = pres.lift_of(g)
        M = la.zeros(B.ngens, A.ngens)
        for coef, (j, i, unit, _o) in zip(c, pairs):
            M[j][i] += coef * unit
        basis.append(hom(A, B, M))
    return HomGroup(pres.group, basis, pairs, pres)


def ext_group(A: FgAbGroup, B: FgAbGroup) -> FgAbGroup:
    orders = []
    for a in A.torsion:
        for b in B.orders:
            orders.append(a if b == 0 else gcd(a, b))
    k = len(orders)
    rel = la.zeros(k, k)
    for i, o in enumerate(orders):
        rel[i][i] = o
    return present(k, rel, k).group


def tensor_zn(A: FgAbGroup, n: int) -> Tuple[FgAbGroup, GroupHom]:
    if n < 2:
        raise GroupError("n must be at least 2")
    k = A.ngens
    rel = la.hstack(A.relations(), [[n if i == j else 0 for j in range(k)] for i in range(k)], rows=k)
    pres = present(k, rel, len(A.torsion) + k)
    return pres.group, hom(A, pres.group, pres.proj)


def torsion_n(A: FgAbGroup, n: int) -> Tuple[FgAbGroup, GroupHom]:
    if n < 2:
        raise GroupError("n must be at least 2")
    gens, orders = [], []
    for i, a in enumerate(A.torsion):
        g = gcd(a, n)
        if g > 1:
            v = [0] * A.ngens
            v[i] = a // g
            gens.append(v)
            orders.append(g)
    k = len(gens)
    pres = present(k, [[orders[i] if i == j else 0 for j in range(k)] for i in range(k)], k)
    incl = la.matmul(la.from_columns(gens, A.ngens), pres.lift, inner=k, cols=pres.group.ngens)
    return pres.group, hom(pres.group, A, incl)


def torsion_subgroup(A: FgAbGroup) -> FgAbGroup:
    return FgAbGroup(A.torsion, 0)


def enumerate_homs(A: FgAbGroup, B: FgAbGroup) -> Iterator[GroupHom]:
    """Every homomorphism A -> B, each exactly once."""
    if A.free_rank and B.free_rank:
        raise GroupError("Hom(A, B) is infinite; enumeration unsupported")
    choices = []
    for a in A.orders:
        if a == 0:
            choices.append(list(B.elements()))
        else:
            col = []
            for x in FgAbGroup(B.torsion, 0).elements():
                y = list(x) + [0] * B.free_rank
                if not any(B.reduce([a * c for c in y])):
                    col.append(y)
            choices.append(col)
    for cols in itertools.product(*choices):
        yield hom(A, B, la.from_columns(list(cols), B.ngens))


def all_groups_of_order(n: int) -> List[FgAbGroup]:
    """All abelian groups of order n in invariant-factor form."""
    out: List[FgAbGroup] = []

    def rec(rem: int, chain: Tuple[int, ...]):
        # build from the largest factor down: chain holds factors, each dividing the next
        if rem == 1:
            out.append(FgAbGroup(tuple(reversed(chain)), 0))
            return
        for d in range(2, rem + 1):
            if rem % d == 0 and (not chain or chain[-1] % d == 0):
                rec(rem // d, chain + (d,))

    if n == 1:
        return [FgAbGroup()]
    for top in range(2, n + 1):
        if n % top == 0:
            rec(n // top, (top,))
    # keep only genuine chains where the largest factor comes first
    uniq = sorted(set(out), key=lambda G: (len(G.torsion), G.torsion))
    return uniq
