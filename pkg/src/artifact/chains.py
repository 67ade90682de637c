"""Chain-level models of one-ideal extensions.

An extension is modelled by two Z/2-graded free complexes X0 (ideal) and
X2 (quotient) glued by an odd map t: X2 -> X0 with d t + t d = 0. The
middle complex is X1 = X0 + X2 with differential [[d, t], [0, d]]. The
six-term data of a model is

    G0 = H^0(X0)  G1 = H^0(X1)  G2 = H^0(X2)
    G3 = H^1(X0)  G4 = H^1(X1)  G5 = H^1(X2)

with f0, f3 induced by the inclusion, f1, f4 by the projection and f2, f5
by t. Morphisms are block upper-triangular chain maps. Mapping cones,
shifts and the mod-n construction are computed on the nose, so every
natural map of the coefficient invariant is an honest chain map.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import exactla as la
from .fgab import FgAbGroup, GroupHom, Subquotient, hom


class ModelError(RuntimeError):
    pass


def zmat(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=object)


def eye(n: int, scale: int = 1) -> np.ndarray:
    out = zmat(n, n)
    for i in range(n):
        out[i, i] = scale
    return out


def obj(M, r: Optional[int] = None, c: Optional[int] = None) -> np.ndarray:
    if isinstance(M, np.ndarray) and M.dtype == object:
        return M
    A = np.array(M, dtype=object)
    if r is not None and c is not None:
        A = A.reshape(r, c)
    return A


def block(rows: Sequence[Sequence[np.ndarray]]) -> np.ndarray:
    """np.block that tolerates zero-sized pieces."""
    heights = [next((b.shape[0] for b in row), 0) for row in rows]
    widths = [b.shape[1] for b in rows[0]] if rows else []
    out = zmat(sum(heights), sum(widths))
    r0 = 0
    for h, row in zip(heights, rows):
        c0 = 0
        for w, b in zip(widths, row):
            if b.shape != (h, w):
                raise ModelError(f"block shape {b.shape} does not fit ({h}, {w})")
            out[r0:r0 + h, c0:c0 + w] = b
            c0 += w
        r0 += h
    return out


def tolist(M: np.ndarray) -> List[List[int]]:
    return [[int(x) for x in row] for row in M]


def _is_zero(M: np.ndarray) -> bool:
    return not M.size or not any(x != 0 for x in M.flat)


def solve_block(A: np.ndarray, b: Sequence[int]) -> Optional[List[int]]:
    sol = la.solve_linear(tolist(A), list(b), cols=A.shape[1])
    return None if sol is None else sol[0]


# ---------------------------------------------------------------------------
# complexes


@dataclass(eq=False)
class Complex:
    """Z/2-graded free complex; d[0]: C^0 -> C^1 and d[1]: C^1 -> C^0."""
    d0: np.ndarray
    d1: np.ndarray

    def __post_init__(self):
        self.d0, self.d1 = obj(self.d0), obj(self.d1)
        r0, r1 = self.d0.shape[1], self.d0.shape[0]
        if self.d1.shape != (r0, r1):
            raise ModelError("differential shapes are inconsistent")
        if not (_is_zero(self.d1 @ self.d0) and _is_zero(self.d0 @ self.d1)):
            raise ModelError("d^2 != 0")

    @classmethod
    def zero(cls, r0: int, r1: int) -> "Complex":
        return cls(zmat(r1, r0), zmat(r0, r1))

    @property
    def ranks(self) -> Tuple[int, int]:
        return self.d0.shape[1], self.d0.shape[0]

    def d(self, k: int) -> np.ndarray:
        return self.d0 if k % 2 == 0 else self.d1

    def shift(self) -> "Complex":
        return Complex(-self.d1, -self.d0)

    def homology(self, k: int) -> Subquotient:
        k %= 2
        n = self.ranks[k]
        dk = self.d(k)
        cyc = la.kernel_basis(tolist(dk), cols=n) if dk.shape[0] else [list(r) for r in la.identity(n)]
        dprev = self.d(k + 1)
        bnd = [list(map(int, dprev[:, j])) for j in range(dprev.shape[1])]
        bnd = [v for v in bnd if any(v)]
        return Subquotient(n, cyc, bnd)


def direct_sum(*cs: Complex) -> Complex:
    d0 = _bdiag([c.d0 for c in cs])
    d1 = _bdiag([c.d1 for c in cs])
    return Complex(d0, d1)


def _bdiag(blocks: Sequence[np.ndarray]) -> np.ndarray:
    R = sum(b.shape[0] for b in blocks)
    C = sum(b.shape[1] for b in blocks)
    out = zmat(R, C)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def cone(f: Sequence[np.ndarray], X: Complex, Y: Complex) -> Complex:
    """Mapping cone of an even chain map f = (f0, f1): X -> Y.

    cone^k = Y^k + X^(k+1) with D(y, x) = (d y + f x, -d x).
    """
    x0, x1 = X.ranks
    y0, y1 = Y.ranks
    D0 = block([[Y.d0, f[1]], [zmat(x0, y0), -X.d1]])
    D1 = block([[Y.d1, f[0]], [zmat(x1, y1), -X.d0]])
    return Complex(D0, D1)


# ---------------------------------------------------------------------------
# extension models


@dataclass(eq=False)
class ExtModel:
    X0: Complex
    X2: Complex
    t: Tuple[np.ndarray, np.ndarray]  # t[k]: X2^k -> X0^(k+1)

    def __post_init__(self):
        self.t = (obj(self.t[0]), obj(self.t[1]))
        a0, a1 = self.X0.ranks
        b0, b1 = self.X2.ranks
        if self.t[0].shape != (a1, b0) or self.t[1].shape != (a0, b1):
            raise ModelError("twist has the wrong shape")
        for k in (0, 1):
            lhs = self.X0.d(k + 1) @ self.t[k] + self.t[1 - k] @ self.X2.d(k)
            if not _is_zero(lhs):
                raise ModelError("twist is not anti-commuting with the differentials")

    @cached_property
    def X1(self) -> Complex:
        a0, a1 = self.X0.ranks
        b0, b1 = self.X2.ranks
        d0 = block([[self.X0.d0, self.t[0]], [zmat(b1, a0), self.X2.d0]])
        d1 = block([[self.X0.d1, self.t[1]], [zmat(b0, a1), self.X2.d1]])
        return Complex(d0, d1)

    def component(self, c: int) -> Complex:
        return (self.X0, self.X1, self.X2)[c]

    def dim(self, i: int) -> int:
        """Ambient rank behind six-term index i."""
        return self.component(i % 3).ranks[(i // 3) % 2]

    @cached_property
    def homologies(self) -> List[Subquotient]:
        return [self.component(i % 3).homology(i // 3) for i in range(6)]

    def group(self, i: int) -> FgAbGroup:
        return self.homologies[i % 6].group

    def iota(self, k: int) -> np.ndarray:
        a, b = self.X0.ranks[k], self.X2.ranks[k]
        return block([[eye(a)], [zmat(b, a)]])

    def proj(self, k: int) -> np.ndarray:
        a, b = self.X0.ranks[k], self.X2.ranks[k]
        return block([[zmat(b, a), eye(b)]])

    def structure_matrix(self, i: int) -> np.ndarray:
        """Linear map on ambients inducing f_i."""
        i %= 6
        k = i // 3
        if i % 3 == 0:
            return self.iota(k)
        if i % 3 == 1:
            return self.proj(k)
        return self.t[k]

    @cached_property
    def six_maps(self) -> List[GroupHom]:
        H = self.homologies
        return [induced(H[i], H[(i + 1) % 6], self.structure_matrix(i)) for i in range(6)]

    def shift(self) -> "ExtModel":
        return ExtModel(self.X0.shift(), self.X2.shift(), (-self.t[1], -self.t[0]))

    def identity(self) -> "ModelMap":
        a0, a1 = self.X0.ranks
        b0, b1 = self.X2.ranks
        return ModelMap(self, self, (eye(a0), eye(a1)), (eye(b0), eye(b1)),
                        (zmat(a0, b0), zmat(a1, b1)))

    def scaled_identity(self, n: int) -> "ModelMap":
        idm = self.identity()
        return ModelMap(self, self, tuple(n * m for m in idm.a0), tuple(n * m for m in idm.a2), idm.c)

    def mod(self, n: int) -> "ExtModel":
        """The mod-n model: cone of multiplication by n."""
        return self.scaled_identity(n).cone()

    def to_json(self) -> dict:
        return {"X0": [tolist(self.X0.d0), tolist(self.X0.d1)],
                "X2": [tolist(self.X2.d0), tolist(self.X2.d1)],
                "t": [tolist(self.t[0]), tolist(self.t[1])],
                "ranks": [list(self.X0.ranks), list(self.X2.ranks)]}


def induced(src: Subquotient, tgt: Subquotient, L: np.ndarray) -> GroupHom:
    cols = []
    for v in src.lifts():
        w = L @ np.array(v, dtype=object) if L.shape[1] else np.zeros(L.shape[0], dtype=object)
        cols.append(tgt.coords([int(x) for x in w]))
    return hom(src.group, tgt.group, la.from_columns(cols, tgt.group.ngens))


@dataclass(eq=False)
class ModelMap:
    """Morphism of models: even maps a0: X0 -> Y0, a2: X2 -> Y2, c: X2 -> Y0."""
    source: ExtModel
    target: ExtModel
    a0: Tuple[np.ndarray, np.ndarray]
    a2: Tuple[np.ndarray, np.ndarray]
    c: Tuple[np.ndarray, np.ndarray]
    check: bool = True

    def __post_init__(self):
        self.a0 = tuple(obj(m) for m in self.a0)
        self.a2 = tuple(obj(m) for m in self.a2)
        self.c = tuple(obj(m) for m in self.c)
        if self.check:
            self.verify()

    def verify(self):
        X, Y = self.source, self.target
        for k in (0, 1):
            kk = 1 - k
            if not _is_zero(Y.X0.d(k) @ self.a0[k] - self.a0[kk] @ X.X0.d(k)):
                raise ModelError("ideal component is not a chain map")
            if not _is_zero(Y.X2.d(k) @ self.a2[k] - self.a2[kk] @ X.X2.d(k)):
                raise ModelError("quotient component is not a chain map")
            lhs = Y.X0.d(k) @ self.c[k] - self.c[kk] @ X.X2.d(k)
            rhs = self.a0[kk] @ X.t[k] - Y.t[k] @ self.a2[k]
            if not _is_zero(lhs - rhs):
                raise ModelError("middle component is not a chain map")

    def middle(self, k: int) -> np.ndarray:
        X, Y = self.source, self.target
        return block([[self.a0[k], self.c[k]],
                      [zmat(Y.X2.ranks[k], X.X0.ranks[k]), self.a2[k]]])

    def component(self, i: int) -> np.ndarray:
        i %= 6
        k = i // 3
        return (self.a0[k], self.middle(k), self.a2[k])[i % 3]

    def on_six(self, i: int) -> GroupHom:
        return induced(self.source.homologies[i % 6], self.target.homologies[i % 6], self.component(i))

    def six(self) -> List[GroupHom]:
        return [self.on_six(i) for i in range(6)]

    def compose(self, other: "ModelMap") -> "ModelMap":
        """self after other."""
        return ModelMap(other.source, self.target,
                        tuple(self.a0[k] @ other.a0[k] for k in (0, 1)),
                        tuple(self.a2[k] @ other.a2[k] for k in (0, 1)),
                        tuple(self.a0[k] @ other.c[k] + self.c[k] @ other.a2[k] for k in (0, 1)))

    def __add__(self, other: "ModelMap") -> "ModelMap":
        return ModelMap(self.source, self.target,
                        tuple(a + b for a, b in zip(self.a0, other.a0)),
                        tuple(a + b for a, b in zip(self.a2, other.a2)),
                        tuple(a + b for a, b in zip(self.c, other.c)))

    def scale(self, n: int) -> "ModelMap":
        return ModelMap(self.source, self.target, tuple(n * m for m in self.a0),
                        tuple(n * m for m in self.a2), tuple(n * m for m in self.c))

    def cone(self) -> ExtModel:
        X, Y = self.source, self.target
        Z0 = cone(self.a0, X.X0, Y.X0)
        Z2 = cone(self.a2, X.X2, Y.X2)
        t = []
        for k in (0, 1):
            kk = 1 - k
            # Z2^k = Y2^k + X2^(k+1)  ->  Z0^(k+1) = Y0^(k+1) + X0^k
            t.append(block([[Y.t[k], self.c[kk]],
                            [zmat(X.X0.ranks[k], Y.X2.ranks[k]), -X.t[kk]]]))
        return ExtModel(Z0, Z2, tuple(t))

    def cone_inclusion(self, C: ExtModel) -> "ModelMap":
        """Target -> cone, y |-> (y, 0)."""
        X, Y = self.source, self.target
        a0 = tuple(block([[eye(Y.X0.ranks[k])], [zmat(X.X0.ranks[1 - k], Y.X0.ranks[k])]]) for k in (0, 1))
        a2 = tuple(block([[eye(Y.X2.ranks[k])], [zmat(X.X2.ranks[1 - k], Y.X2.ranks[k])]]) for k in (0, 1))
        c = tuple(zmat(C.X0.ranks[k], Y.X2.ranks[k]) for k in (0, 1))
        return ModelMap(Y, C, a0, a2, c)

    def cone_projection(self, C: ExtModel) -> "ModelMap":
        """Cone -> shifted source, (y, x) |-> x."""
        X, Y = self.source, self.target
        S = X.shift()
        a0 = tuple(block([[zmat(X.X0.ranks[1 - k], Y.X0.ranks[k]), eye(X.X0.ranks[1 - k])]]) for k in (0, 1))
        a2 = tuple(block([[zmat(X.X2.ranks[1 - k], Y.X2.ranks[k]), eye(X.X2.ranks[1 - k])]]) for k in (0, 1))
        c = tuple(zmat(S.X0.ranks[k], C.X2.ranks[k]) for k in (0, 1))
        return ModelMap(C, S, a0, a2, c)

    def shift(self) -> "ModelMap":
        return ModelMap(self.source.shift(), self.target.shift(),
                        (self.a0[1], self.a0[0]), (self.a2[1], self.a2[0]), (self.c[1], self.c[0]))


def zero_map(X: ExtModel, Y: ExtModel) -> ModelMap:
    return ModelMap(X, Y,
                    tuple(zmat(Y.X0.ranks[k], X.X0.ranks[k]) for k in (0, 1)),
                    tuple(zmat(Y.X2.ranks[k], X.X2.ranks[k]) for k in (0, 1)),
                    tuple(zmat(Y.X0.ranks[k], X.X2.ranks[k]) for k in (0, 1)))


# ---------------------------------------------------------------------------
# free models: direct sums of the representing objects P_j


# For each j: which ambient slots a copy of P_j occupies.
# Slots are (component, degree); component 0 is the ideal, 2 the quotient.
_SLOTS = {
    0: [(0, 0)],
    1: [(2, 0)],
    2: [(2, 0), (0, 1)],  # v, u with t v = u
    3: [(0, 1)],
    4: [(2, 1)],
    5: [(2, 1), (0, 0)],
}

# Order of copies inside each slot.
_SLOT_ORDER = {(0, 0): [0, 5], (0, 1): [2, 3], (2, 0): [1, 2], (2, 1): [4, 5]}


@dataclass(eq=False)
class FreeModel:
    """Model of the free six-term module with `counts[j]` copies of P_j."""
    counts: Tuple[int, ...]
    model: ExtModel = field(init=False)
    offsets: Dict[Tuple[int, int, int], int] = field(init=False)

    def __post_init__(self):
        self.counts = tuple(int(c) for c in self.counts)
        self.offsets = {}
        size = {}
        for slot, js in _SLOT_ORDER.items():
            off = 0
            for j in js:
                self.offsets[(slot[0], slot[1], j)] = off
                off += self.counts[j]
            size[slot] = off
        a0, a1, b0, b1 = size[(0, 0)], size[(0, 1)], size[(2, 0)], size[(2, 1)]
        t0, t1 = zmat(a1, b0), zmat(a0, b1)
        for l in range(self.counts[2]):
            t0[self.offsets[(0, 1, 2)] + l, self.offsets[(2, 0, 2)] + l] = 1
        for l in range(self.counts[5]):
            t1[self.offsets[(0, 0, 5)] + l, self.offsets[(2, 1, 5)] + l] = 1
        self.model = ExtModel(Complex.zero(a0, a1), Complex.zero(b0, b1), (t0, t1))

    def index(self, comp: int, deg: int, j: int, l: int) -> int:
        return self.offsets[(comp, deg, j)] + l

    def module_rank(self, i: int) -> int:
        """Rank of the free module at index i: copies of P_i then of P_(i-1)."""
        return self.counts[i] + self.counts[(i - 1) % 6]

    def rep(self, i: int, v: Sequence[int]) -> List[int]:
        """Cycle in the ambient of index i representing module element v."""
        i %= 6
        c, k = i % 3, i // 3
        X = self.model
        out = [0] * X.dim(i)
        n_own = self.counts[i]
        gens = [(i, l) for l in range(n_own)] + [((i - 1) % 6, l) for l in range(self.counts[(i - 1) % 6])]
        a = X.X0.ranks[k]
        for coef, (j, l) in zip(v, gens):
            if not coef:
                continue
            if c == 0:
                pos = self.index(0, k, j, l)
            elif c == 2:
                pos = self.index(2, k, j, l)
            else:
                slot = (0, k) if (0, k, j) in self.offsets else (2, k)
                pos = self.index(slot[0], k, j, l) + (a if slot[0] == 2 else 0)
            out[pos] += coef
        return out

    def map_to(self, Y: ExtModel, images: Dict[Tuple[int, int], Sequence[int]]) -> ModelMap:
        """Model map sending the generator of copy l of P_j to the cycle images[(j, l)].

        images[(j, l)] lives in the ambient of index j of Y.
        """
        X = self.model
        a0 = [zmat(Y.X0.ranks[k], X.X0.ranks[k]) for k in (0, 1)]
        a2 = [zmat(Y.X2.ranks[k], X.X2.ranks[k]) for k in (0, 1)]
        c = [zmat(Y.X0.ranks[k], X.X2.ranks[k]) for k in (0, 1)]
        for (j, l), y in images.items():
            y = np.array(list(y), dtype=object)
            k = j // 3
            if j in (0, 3):
                a0[k][:, self.index(0, k, j, l)] = y
            elif j in (1, 4):
                a = Y.X0.ranks[k]
                col = self.index(2, k, j, l)
                c[k][:, col] = y[:a]
                a2[k][:, col] = y[a:]
            else:
                col = self.index(2, k, j, l)
                a2[k][:, col] = y
                a0[1 - k][:, self.index(0, 1 - k, j, l)] = Y.t[k] @ y
        return ModelMap(X, Y, tuple(a0), tuple(a2), tuple(c))


def null_homotopy(F: ModelMap, free: FreeModel) -> Tuple[Tuple[np.ndarray, ...], ...]:
    """Solve F = D h + h D for a map out of a free model.

    Returns odd maps (h0, h2, kk) with h0: X0 -> Y0, h2: X2 -> Y2 and
    kk: X2 -> Y0. The source has zero differential, and its twist only
    pairs the two generators of a P_2 or P_5 copy, so the system splits
    into one small problem per copy.
    """
    X, Y = F.source, F.target
    h0 = [zmat(Y.X0.ranks[1 - k], X.X0.ranks[k]) for k in (0, 1)]
    h2 = [zmat(Y.X2.ranks[1 - k], X.X2.ranks[k]) for k in (0, 1)]
    kk = [zmat(Y.X0.ranks[1 - k], X.X2.ranks[k]) for k in (0, 1)]
    for j in range(6):
        for l in range(free.counts[j]):
            slots = _SLOTS[j]
            u = next(((deg, free.index(0, deg, j, l)) for comp, deg in slots if comp == 0), None)
            v = next(((deg, free.index(2, deg, j, l)) for comp, deg in slots if comp == 2), None)
            blocks_rows = []
            rhs: List[int] = []
            # unknown layout: [h0 u | h2 v | kk v]
            nu = Y.X0.ranks[1 - u[0]] if u else 0
            nv2 = Y.X2.ranks[1 - v[0]] if v else 0
            nk = Y.X0.ranks[1 - v[0]] if v else 0
            if u:
                ku, cu = u
                d = Y.X0.d(ku + 1)
                blocks_rows.append([d, zmat(d.shape[0], nv2), zmat(d.shape[0], nk)])
                rhs += [int(x) for x in F.a0[ku][:, cu]]
            if v:
                kv, cv = v
                d2 = Y.X2.d(kv + 1)
                blocks_rows.append([zmat(d2.shape[0], nu), d2, zmat(d2.shape[0], nk)])
                rhs += [int(x) for x in F.a2[kv][:, cv]]
                d0 = Y.X0.d(kv + 1)
                blocks_rows.append([eye(nu) if u else zmat(d0.shape[0], 0), Y.t[1 - kv], d0])
                rhs += [int(x) for x in F.c[kv][:, cv]]
            A = block(blocks_rows)
            sol = solve_block(A, rhs)
            if sol is None:
                raise ModelError(f"no null-homotopy for the copy {l} of P_{j}; the map is not zero")
            if u:
                h0[u[0]][:, u[1]] = sol[:nu]
            if v:
                h2[v[0]][:, v[1]] = sol[nu:nu + nv2]
                kk[v[0]][:, v[1]] = sol[nu + nv2:]
    return tuple(h0), tuple(h2), tuple(kk)


def cone_map(phi: ModelMap, C: ExtModel, A: ModelMap, hty) -> ModelMap:
    """Map cone(phi) -> Y from A: target(phi) -> Y and a null-homotopy of A phi."""
    h0, h2, kk = hty
    Y = A.target
    a0 = tuple(block([[A.a0[k], h0[1 - k]]]) for k in (0, 1))
    a2 = tuple(block([[A.a2[k], h2[1 - k]]]) for k in (0, 1))
    c = tuple(block([[A.c[k], kk[1 - k]]]) for k in (0, 1))
    return ModelMap(C, Y, a0, a2, c)
