"""Cyclic six-term exact sequences and Cuntz-Krieger ingestion.

Index convention: G0, G1, G2 are K0 of ideal, algebra and quotient, and
G3, G4, G5 the corresponding K1 groups; f_i maps G_i to G_(i+1 mod 6).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .chains import Complex, ExtModel, zmat
from .fgab import (FgAbGroup, GroupError, GroupHom, compose, hom, identity_hom,
                   in_image, kernel, zero_hom)


class SixTermError(ValueError):
    pass


@dataclass(frozen=True)
class SixTerm:
    groups: Tuple[FgAbGroup, ...]
    maps: Tuple[GroupHom, ...]

    def __post_init__(self):
        if len(self.groups) != 6 or len(self.maps) != 6:
            raise SixTermError("a six-term sequence needs six groups and six maps")
        for i, f in enumerate(self.maps):
            if f.source != self.groups[i] or f.target != self.groups[(i + 1) % 6]:
                raise SixTermError(f"f{i} does not run from G{i} to G{(i + 1) % 6}")

    @classmethod
    def from_matrices(cls, groups: Sequence[FgAbGroup], mats: Sequence[Sequence[Sequence[int]]]) -> "SixTerm":
        groups = tuple(groups)
        return cls(groups, tuple(hom(groups[i], groups[(i + 1) % 6], mats[i]) for i in range(6)))

    @classmethod
    def from_model(cls, model: ExtModel) -> "SixTerm":
        return cls(tuple(model.group(i) for i in range(6)), tuple(model.six_maps))

    def to_json(self) -> dict:
        return {"groups": [g.to_json() for g in self.groups],
                "maps": [f.mat for f in self.maps]}

    @classmethod
    def from_json(cls, obj: dict) -> "SixTerm":
        try:
            groups = [FgAbGroup.from_json(g) for g in obj["groups"]]
            return cls.from_matrices(groups, obj["maps"])
        except (KeyError, TypeError, IndexError) as exc:
            raise SixTermError(f"malformed six-term literal: {exc}") from exc

    def __str__(self) -> str:
        return " -> ".join(str(g) for g in self.groups) + " ->"


@dataclass(frozen=True)
class SixTermHom:
    source: SixTerm
    target: SixTerm
    maps: Tuple[GroupHom, ...]

    def __post_init__(self):
        if len(self.maps) != 6:
            raise SixTermError("a six-term morphism needs six components")
        for i, phi in enumerate(self.maps):
            if phi.source != self.source.groups[i] or phi.target != self.target.groups[i]:
                raise SixTermError(f"component {i} has the wrong source or target")
        bad = self.failing_square()
        if bad is not None:
            i, g = bad
            raise SixTermError(f"square {i} does not commute on generator {g} of G{i}")

    def failing_square(self) -> Optional[Tuple[int, int]]:
        for i in range(6):
            lhs = compose(self.maps[(i + 1) % 6], self.source.maps[i])
            rhs = compose(self.target.maps[i], self.maps[i])
            if lhs != rhs:
                for g in range(self.source.groups[i].ngens):
                    e = [0] * self.source.groups[i].ngens
                    e[g] = 1
                    if lhs(e) != rhs(e):
                        return i, g
        return None

    @classmethod
    def identity(cls, s: SixTerm) -> "SixTermHom":
        return cls(s, s, tuple(identity_hom(g) for g in s.groups))

    @classmethod
    def zero(cls, s: SixTerm, t: SixTerm) -> "SixTermHom":
        return cls(s, t, tuple(zero_hom(a, b) for a, b in zip(s.groups, t.groups)))

    def to_json(self) -> dict:
        return {"maps": [m.mat for m in self.maps]}


def six_hom(s: SixTerm, t: SixTerm, mats: Sequence[Sequence[Sequence[int]]]) -> SixTermHom:
    return SixTermHom(s, t, tuple(hom(s.groups[i], t.groups[i], mats[i]) for i in range(6)))


# ---------------------------------------------------------------------------
# exactness


@dataclass
class NodeResult:
    index: int
    ok: bool
    kind: str = ""
    witness: Optional[List[int]] = None


@dataclass
class ExactnessReport:
    nodes: List[NodeResult]

    @property
    def ok(self) -> bool:
        return all(n.ok for n in self.nodes)

    def first_failure(self) -> Optional[NodeResult]:
        return next((n for n in self.nodes if not n.ok), None)

    def to_json(self) -> dict:
        return {"exact": self.ok,
                "nodes": [{"index": n.index, "ok": n.ok, "kind": n.kind, "witness": n.witness}
                          for n in self.nodes]}


def exact_at(f_in: GroupHom, f_out: GroupHom) -> Tuple[bool, str, Optional[List[int]]]:
    """Exactness of A -> B -> C at B, with a witness on failure."""
    comp = compose(f_out, f_in)
    if not comp.is_zero():
        for g in range(f_in.source.ngens):
            e = [0] * f_in.source.ngens
            e[g] = 1
            if any(comp(e)):
                return False, "image not in kernel", f_in(e)
    K, incl = kernel(f_out)
    for g in range(K.ngens):
        e = [0] * K.ngens
        e[g] = 1
        x = incl(e)
        if in_image(f_in, x) is None:
            return False, "kernel not in image", x
    return True, "", None


def check_exact(s: SixTerm) -> ExactnessReport:
    nodes = []
    for i in range(6):
        ok, kind, w = exact_at(s.maps[(i - 1) % 6], s.maps[i])
        nodes.append(NodeResult(i, ok, kind, w))
    return ExactnessReport(nodes)


def suspend(s: SixTerm) -> SixTerm:
    return SixTerm(tuple(s.groups[(i + 3) % 6] for i in range(6)),
                   tuple(s.maps[(i + 3) % 6] for i in range(6)))


def class_flags(s: SixTerm) -> Dict[str, bool]:
    return {"zero_exponential": s.maps[2].is_zero(),
            "quotient_K1_free": not s.groups[5].torsion,
            "ideal_K1_zero": s.groups[3].is_trivial(),
            "all_finitely_generated": True}


# ---------------------------------------------------------------------------
# Cuntz-Krieger input


@dataclass(frozen=True)
class CKInput:
    adjacency: Tuple[Tuple[int, ...], ...]
    ideal_block: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        A = tuple(tuple(int(x) for x in row) for row in self.adjacency)
        N = len(A)
        if any(len(r) != N for r in A):
            raise SixTermError("adjacency matrix must be square")
        if any(x < 0 for r in A for x in r):
            raise SixTermError("adjacency entries must be nonnegative")
        ideal = tuple(sorted(set(int(i) for i in self.ideal_block)))
        if any(not 0 <= i < N for i in ideal):
            raise SixTermError("ideal block index out of range")
        for i in ideal:
            for j in range(N):
                if j not in ideal and A[i][j]:
                    raise SixTermError(f"edge {i}->{j} leaves the ideal block; "
                                       "the matrix is not block-triangular")
        object.__setattr__(self, "adjacency", A)
        object.__setattr__(self, "ideal_block", ideal)

    @property
    def quotient_block(self) -> Tuple[int, ...]:
        return tuple(i for i in range(len(self.adjacency)) if i not in self.ideal_block)

    def to_json(self) -> dict:
        return {"adjacency": [list(r) for r in self.adjacency], "ideal_block": list(self.ideal_block)}

    @classmethod
    def from_json(cls, obj: dict) -> "CKInput":
        try:
            return cls(tuple(tuple(r) for r in obj["adjacency"]), tuple(obj.get("ideal_block", ())))
        except (KeyError, TypeError) as exc:
            raise SixTermError(f"malformed CK literal: {exc}") from exc


def ck_model(inp: CKInput) -> ExtModel:
    """Chain model of the ideal-quotient sequence of a Cuntz-Krieger algebra.

    Each component is Z^V in both degrees with d from odd to even equal to
    I - A^T restricted to the block; the off-diagonal block is the twist.
    """
    A = np.array(inp.adjacency, dtype=object).reshape(len(inp.adjacency), len(inp.adjacency))
    H, Q = list(inp.ideal_block), list(inp.quotient_block)
    M = np.identity(A.shape[0], dtype=object) - A.T if A.size else zmat(0, 0)
    h, q = len(H), len(Q)
    X0 = Complex(zmat(h, h), M[np.ix_(H, H)] if h else zmat(0, 0))
    X2 = Complex(zmat(q, q), M[np.ix_(Q, Q)] if q else zmat(0, 0))
    t1 = M[np.ix_(H, Q)] if h and q else zmat(h, q)
    return ExtModel(X0, X2, (zmat(h, q), t1))


def ck_ktheory(inp: CKInput) -> SixTerm:
    s = SixTerm.from_model(ck_model(inp))
    rep = check_exact(s)
    if not rep.ok:
        bad = rep.first_failure()
        raise SixTermError(f"Cuntz-Krieger six-term fails exactness at node {bad.index}")
    return s
