"""Reduced ideal-related K-theory with coefficients.

Every group is the homology of an explicit chain model: F_n comes from the
mod-n model (cone of multiplication by n), H_n from the cone of n times the
projection X1 -> X2 in odd degree. Every natural map is induced by a chain
map, so naturality in the extension is automatic and the diagrams can be
checked on the nose.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from . import exactla as la
from .chains import Complex, ExtModel, ModelMap, block, cone, eye, induced, zmat
from .fgab import (FgAbGroup, GroupError, GroupHom, Subquotient, compose, hom, identity_hom,
                   inverse, is_isomorphism, zero_hom)
from .sixterm import SixTerm, SixTermHom, check_exact, exact_at
from .realize import Realization, lift_hom, realize


class InvariantError(RuntimeError):
    def __init__(self, message: str, relation: str = ""):
        super().__init__(message)
        self.relation = relation


# Signs attached to the raw chain-level maps so that the three diagrams
# commute with the tilde convention (f~ = -f at indices 0 and 3).
SIGNS = {
    "h11in": 1, "h11out": -1, "hn1in": 1, "hn1out": 1, "h1nin": 1, "h1nout": 1,
    "beta": (1, 1, 1, 1, -1, 1),
}


def fkey(n: int, i: int) -> str:
    return f"F{n},{i % 6}"


def hkey(n: int) -> str:
    return f"H{n},4"


def support_pairs(support: Sequence[int]) -> List[Tuple[int, int]]:
    """Pairs (a, b) in the support with a | b and a < b."""
    return [(a, b) for a in support for b in support if a < b and b % a == 0]


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str
    map: GroupHom


@dataclass(eq=False)
class CoeffInvariant:
    base: SixTerm
    support: Tuple[int, ...]
    groups: Dict[str, FgAbGroup]
    arrows: Dict[str, Arrow]
    model: Optional[ExtModel] = None
    theta: Optional[List[GroupHom]] = None
    realization: Optional[Realization] = None
    builder: Optional["_Builder"] = field(default=None, repr=False)

    def F(self, n: int, i: int) -> FgAbGroup:
        return self.groups[fkey(n, i)]

    def H(self, n: int) -> FgAbGroup:
        return self.groups[hkey(n)]

    def arrow(self, name: str) -> GroupHom:
        return self.arrows[name].map

    def f(self, n: int, i: int) -> GroupHom:
        return self.arrow(f"f[{n},{i % 6}]")

    def ftilde(self, n: int, i: int) -> GroupHom:
        g = self.f(n, i)
        return -g if i % 3 == 0 else g

    def rho(self, n: int, i: int) -> GroupHom:
        return self.arrow(f"rho[{n},{i % 6}]")

    def beta(self, n: int, i: int) -> GroupHom:
        return self.arrow(f"beta[{n},{i % 6}]")

    def h(self, kind: str, n: int) -> GroupHom:
        return self.arrow(f"{kind}[{n}]")

    def kappa(self, n: int, mn: int, i: int) -> GroupHom:
        return self.arrow(f"kappa[{n},{mn},{i % 6}]")

    def varkappa(self, mn: int, m: int, i: int) -> GroupHom:
        return self.arrow(f"varkappa[{mn},{m},{i % 6}]")

    def omega(self, n: int, mn: int) -> GroupHom:
        return self.arrow(f"omega[{n},{mn}]")

    def chi(self, mn: int, m: int) -> GroupHom:
        return self.arrow(f"chi[{mn},{m}]")

    def component_keys(self) -> List[str]:
        return list(self.groups)

    def is_finite(self) -> bool:
        return all(g.is_finite() for g in self.groups.values())

    def to_json(self) -> dict:
        return {"base": self.base.to_json(),
                "support": list(self.support),
                "groups": {k: g.to_json() for k, g in self.groups.items()},
                "maps": {a.name: {"source": a.source, "target": a.target, "matrix": a.map.mat}
                         for a in self.arrows.values()}}

    @classmethod
    def from_json(cls, obj: dict) -> "CoeffInvariant":
        try:
            base = SixTerm.from_json(obj["base"])
            groups = {k: FgAbGroup.from_json(g) for k, g in obj["groups"].items()}
            arrows = {}
            for name, a in obj["maps"].items():
                arrows[name] = Arrow(name, a["source"], a["target"],
                                     hom(groups[a["source"]], groups[a["target"]], a["matrix"]))
            return cls(base, tuple(obj["support"]), groups, arrows)
        except (KeyError, TypeError) as exc:
            raise InvariantError(f"malformed invariant literal: {exc}") from exc


# ---------------------------------------------------------------------------
# default support


def _prime_powers(d: int) -> List[int]:
    out = []
    p = 2
    while p * p <= d:
        if d % p == 0:
            q = p
            while d % q == 0:
                out.append(q)
                q *= p
            while d % p == 0:
                d //= p
        p += 1
    if d > 1:
        out.append(d)
    return out


def default_support(s: SixTerm) -> List[int]:
    out = set()
    for g in s.groups:
        for d in g.torsion:
            out.update(_prime_powers(d))
    return sorted(out)


# ---------------------------------------------------------------------------
# chain-level pieces


def _pieces(e: ExtModel) -> Tuple[Tuple[int, int], Tuple[int, int]]:
    return e.X0.ranks, e.X2.ranks


def _diag_cone_map(src: ExtModel, tgt: ExtModel, base: ExtModel, x: int, y: int) -> ModelMap:
    """Map between two mod-n models of `base` acting by x on the base part and y on the shift."""
    (a0, a1), (b0, b1) = _pieces(base)
    a, b = (a0, a1), (b0, b1)
    A0 = tuple(block([[eye(a[k], x), zmat(a[k], a[1 - k])], [zmat(a[1 - k], a[k]), eye(a[1 - k], y)]])
               for k in (0, 1))
    A2 = tuple(block([[eye(b[k], x), zmat(b[k], b[1 - k])], [zmat(b[1 - k], b[k]), eye(b[1 - k], y)]])
               for k in (0, 1))
    C = tuple(zmat(a[k] + a[1 - k], b[k] + b[1 - k]) for k in (0, 1))
    return ModelMap(src, tgt, A0, A2, C)


def _middle_split(base: ExtModel, k: int) -> np.ndarray:
    """Reorder the middle ambient of a mod-n model in degree k as X1^k + X1^(k+1)."""
    (a0, a1), (b0, b1) = _pieces(base)
    a, b = (a0, a1), (b0, b1)
    ak, ak1, bk, bk1 = a[k], a[1 - k], b[k], b[1 - k]
    N = ak + ak1 + bk + bk1
    order = (list(range(0, ak)) + list(range(ak + ak1, ak + ak1 + bk))
             + list(range(ak, ak + ak1)) + list(range(ak + ak1 + bk, N)))
    P = zmat(N, N)
    for r, c in enumerate(order):
        P[r, c] = 1
    return P


def _h_complex(e: ExtModel, n: int) -> Complex:
    p = (n * e.proj(0), n * e.proj(1))
    return cone(p, e.X1, e.X2)


class _Builder:
    """Raw maps of the invariant of a model, before conjugation by theta."""

    def __init__(self, e: ExtModel, support: Sequence[int]):
        self.e = e
        self.support = list(support)
        self.mods = {n: e.mod(n) for n in self.support}
        self.hcx = {n: _h_complex(e, n) for n in self.support}
        self.hsq = {n: self.hcx[n].homology(1) for n in self.support}

    def rho(self, n: int, i: int) -> GroupHom:
        M = self.mods[n]
        incl = self.e.scaled_identity(n).cone_inclusion(M)
        return incl.on_six(i)

    def beta(self, n: int, i: int) -> GroupHom:
        M = self.mods[n]
        proj = self.e.scaled_identity(n).cone_projection(M)
        return induced(M.homologies[i % 6], self.e.homologies[(i + 3) % 6], proj.component(i))

    def kappa(self, n: int, mn: int, i: int) -> GroupHom:
        m = mn // n
        return _diag_cone_map(self.mods[mn], self.mods[n], self.e, 1, m).on_six(i)

    def varkappa(self, mn: int, m: int, i: int) -> GroupHom:
        n = mn // m
        return _diag_cone_map(self.mods[m], self.mods[mn], self.e, n, 1).on_six(i)

    def hmap(self, kind: str, n: int) -> GroupHom:
        e = self.e
        (a0, a1), (b0, b1) = _pieces(e)
        H = self.hsq[n]
        c0 = a0 + b0  # rank of X1^0
        if kind == "h11in":
            L = block([[eye(b1)], [zmat(c0, b1)]])
            return induced(e.homologies[5], H, L)
        if kind == "h11out":
            L = block([[zmat(c0, b1), eye(c0)]])
            return induced(H, e.homologies[1], L)
        if kind == "hn1in":
            P = _middle_split(e, 1)
            c1 = a1 + b1
            L = block([[e.proj(1), zmat(b1, c0)], [zmat(c0, c1), eye(c0)]]) @ P
            return induced(self.mods[n].homologies[4], H, L)
        if kind == "hn1out":
            L = block([[e.t[1], eye(a0, n), zmat(a0, b0)]])
            return induced(H, e.homologies[0], L)
        if kind == "h1nin":
            L = block([[zmat(b1, a0)], [e.iota(0)]])
            return induced(e.homologies[0], H, L)
        if kind == "h1nout":
            L = block([[eye(b1), zmat(b1, c0)], [zmat(b0, b1), e.proj(0)]])
            return induced(H, self.mods[n].homologies[5], L)
        raise KeyError(kind)

    def omega(self, n: int, mn: int) -> GroupHom:
        (a0, a1), (b0, b1) = _pieces(self.e)
        L = block([[eye(b1), zmat(b1, a0 + b0)], [zmat(a0 + b0, b1), eye(a0 + b0, mn // n)]])
        return induced(self.hsq[mn], self.hsq[n], L)

    def chi(self, mn: int, m: int) -> GroupHom:
        (a0, a1), (b0, b1) = _pieces(self.e)
        L = block([[eye(b1, mn // m), zmat(b1, a0 + b0)], [zmat(a0 + b0, b1), eye(a0 + b0)]])
        return induced(self.hsq[m], self.hsq[mn], L)


def _sign(g: GroupHom, s: int) -> GroupHom:
    return g if s == 1 else -g


def build_invariant(source: Union[SixTerm, ExtModel], support: Optional[Sequence[int]] = None,
                    check: bool = True, signs: Optional[dict] = None) -> CoeffInvariant:
    """Compute K_E^red over a finite support from a six-term sequence or a chain model."""
    signs = signs or SIGNS
    realization = None
    if isinstance(source, SixTerm):
        rep = check_exact(source)
        if not rep.ok:
            bad = rep.first_failure()
            raise InvariantError(f"six-term input is not exact at node {bad.index} ({bad.kind})",
                                 "six-term exactness")
        realization = realize(source)
        base, e, theta = source, realization.model, realization.theta
    else:
        e = source
        base = SixTerm.from_model(e)
        theta = [identity_hom(g) for g in base.groups]
    if support is None:
        support = default_support(base)
    support = tuple(sorted(set(int(n) for n in support)))
    if any(n < 2 for n in support):
        raise InvariantError("support entries must be at least 2")
    tinv = [inverse(t) for t in theta]
    B = _Builder(e, support)

    groups: Dict[str, FgAbGroup] = {}
    arrows: Dict[str, Arrow] = {}

    def add(name: str, src: str, tgt: str, g: GroupHom):
        arrows[name] = Arrow(name, src, tgt, g)

    for i in range(6):
        groups[fkey(1, i)] = base.groups[i]
    for i in range(6):
        add(f"f[1,{i}]", fkey(1, i), fkey(1, i + 1), base.maps[i])
    for n in support:
        M = B.mods[n]
        for i in range(6):
            groups[fkey(n, i)] = M.group(i)
        groups[hkey(n)] = B.hsq[n].group
        for i in range(6):
            add(f"f[{n},{i}]", fkey(n, i), fkey(n, i + 1), M.six_maps[i])
        for i in range(6):
            add(f"rho[{n},{i}]", fkey(1, i), fkey(n, i), compose(B.rho(n, i), theta[i]))
        for i in range(6):
            add(f"beta[{n},{i}]", fkey(n, i), fkey(1, i + 3),
                _sign(compose(tinv[(i + 3) % 6], B.beta(n, i)), signs["beta"][i]))
        add(f"h11in[{n}]", fkey(1, 5), hkey(n), _sign(compose(B.hmap("h11in", n), theta[5]), signs["h11in"]))
        add(f"h11out[{n}]", hkey(n), fkey(1, 1), _sign(compose(tinv[1], B.hmap("h11out", n)), signs["h11out"]))
        add(f"hn1in[{n}]", fkey(n, 4), hkey(n), _sign(B.hmap("hn1in", n), signs["hn1in"]))
        add(f"hn1out[{n}]", hkey(n), fkey(1, 0), _sign(compose(tinv[0], B.hmap("hn1out", n)), signs["hn1out"]))
        add(f"h1nin[{n}]", fkey(1, 0), hkey(n), _sign(compose(B.hmap("h1nin", n), theta[0]), signs["h1nin"]))
        add(f"h1nout[{n}]", hkey(n), fkey(n, 5), _sign(B.hmap("h1nout", n), signs["h1nout"]))
    for a, b in support_pairs(support):
        for i in range(6):
            add(f"kappa[{a},{b},{i}]", fkey(b, i), fkey(a, i), B.kappa(a, b, i))
        for i in range(6):
            add(f"varkappa[{b},{a},{i}]", fkey(a, i), fkey(b, i), B.varkappa(b, a, i))
        add(f"omega[{a},{b}]", hkey(b), hkey(a), B.omega(a, b))
        add(f"chi[{b},{a}]", hkey(a), hkey(b), B.chi(b, a))

    inv = CoeffInvariant(base, support, groups, arrows, e, theta, realization, B)
    if check:
        rep = verify_invariant(inv)
        bad = rep.first_failure()
        if bad is not None:
            raise InvariantError(f"built invariant violates {bad.name}", bad.name)
    return inv


# ---------------------------------------------------------------------------
# verification


@dataclass
class RelationResult:
    name: str
    ok: bool
    witness: Optional[dict] = None


@dataclass
class VerifyReport:
    items: List[RelationResult]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.items)

    def first_failure(self) -> Optional[RelationResult]:
        return next((r for r in self.items if not r.ok), None)

    def failures(self) -> List[RelationResult]:
        return [r for r in self.items if not r.ok]

    def to_json(self) -> dict:
        return {"ok": self.ok, "checked": len(self.items),
                "failures": [{"name": r.name, "witness": r.witness} for r in self.failures()]}


def _unit(k: int, j: int) -> List[int]:
    e = [0] * k
    e[j] = 1
    return e


def _equal(name: str, lhs: GroupHom, rhs: GroupHom) -> RelationResult:
    if lhs.source != rhs.source or lhs.target != rhs.target:
        return RelationResult(name, False, {"reason": "shape mismatch"})
    if lhs == rhs:
        return RelationResult(name, True)
    for j in range(lhs.source.ngens):
        x = _unit(lhs.source.ngens, j)
        if lhs(x) != rhs(x):
            return RelationResult(name, False, {"generator": j, "lhs": lhs(x), "rhs": rhs(x)})
    return RelationResult(name, False, {"reason": "maps differ"})


def _exact(name: str, f: GroupHom, g: GroupHom) -> RelationResult:
    if f.target != g.source:
        return RelationResult(name, False, {"reason": "maps do not compose"})
    ok, kind, w = exact_at(f, g)
    return RelationResult(name, ok, None if ok else {"kind": kind, "element": w})


def _times(G: FgAbGroup, k: int) -> GroupHom:
    return identity_hom(G).scale(k)


def relation_checks(inv: CoeffInvariant) -> Iterable[Tuple[str, Callable[[], RelationResult]]]:
    """All named relations, lazily evaluated."""
    F, H = inv.F, inv.H
    for i in range(6):
        yield (f"exactness of f-row (n=1,i={i})",
               lambda i=i: _exact(f"exactness of f-row (n=1,i={i})", inv.f(1, i - 1), inv.f(1, i)))
    for n in inv.support:
        for i in range(6):
            nm = f"exactness of f-row (n={n},i={i})"
            yield nm, lambda nm=nm, i=i, n=n: _exact(nm, inv.f(n, i - 1), inv.f(n, i))
        for i in range(6):
            # F1_i -x n-> F1_i -rho-> Fn_i -beta-> F1_(i+3) -x n-> F1_(i+3)
            chain = [_times(F(1, i), n), inv.rho(n, i), inv.beta(n, i), _times(F(1, i + 3), n)]
            for j in range(3):
                nm = f"bockstein sequence (n={n},i={i},node={j})"
                yield nm, lambda nm=nm, a=chain[j], b=chain[j + 1]: _exact(nm, a, b)
        # three h-sequences around H_{n,4}
        seq1 = [inv.f(1, 4).scale(n), inv.h("h11in", n), inv.h("h11out", n), inv.f(1, 1).scale(n)]
        seq2 = [compose(inv.f(n, 3), inv.rho(n, 3)), inv.h("hn1in", n), inv.h("hn1out", n),
                compose(inv.f(n, 0), inv.rho(n, 0))]
        seq3 = [compose(inv.beta(n, 3), inv.f(n, 2)), inv.h("h1nin", n), inv.h("h1nout", n),
                compose(inv.beta(n, 0), inv.f(n, 5))]
        for label, seq in (("first", seq1), ("second", seq2), ("third", seq3)):
            for j in range(3):
                nm = f"{label} h-sequence (n={n},node={j})"
                yield nm, lambda nm=nm, a=seq[j], b=seq[j + 1]: _exact(nm, a, b)
        yield from _diagram_checks(inv, n)
    for a, b in support_pairs(inv.support):
        yield from _pair_checks(inv, a, b)


def _diagram_checks(inv: CoeffInvariant, n: int):
    h = lambda k: inv.h(k, n)
    ft = inv.ftilde
    F = inv.F
    items = [
        ("diagram 1 left square", lambda: (compose(h("h11in"), ft(1, 4)), compose(h("hn1in"), inv.rho(n, 4)))),
        ("diagram 1 upper triangle", lambda: (compose(h("hn1out"), h("h11in")), ft(1, 5))),
        ("diagram 1 lower triangle", lambda: (compose(h("h11out"), h("hn1in")), inv.beta(n, 4))),
        ("diagram 1 right square", lambda: (compose(ft(1, 0), h("hn1out")), h("h11out").scale(n))),
        ("diagram 2 left square", lambda: (h("h11in").scale(n), compose(h("h1nin"), ft(1, 5)))),
        ("diagram 2 upper triangle", lambda: (compose(h("h1nout"), h("h11in")), inv.rho(n, 5))),
        ("diagram 2 lower triangle", lambda: (compose(h("h11out"), h("h1nin")), ft(1, 0))),
        ("diagram 2 right square", lambda: (-compose(inv.beta(n, 5), h("h1nout")), compose(ft(1, 1), h("h11out")))),
        ("diagram 3 left square", lambda: (compose(h("hn1in"), ft(n, 3)), -compose(h("h1nin"), inv.beta(n, 3)))),
        ("diagram 3 upper triangle", lambda: (compose(h("h1nout"), h("hn1in")), ft(n, 4))),
        ("diagram 3 lower triangle", lambda: (compose(h("hn1out"), h("h1nin")), _times(F(1, 0), n))),
        ("diagram 3 right square", lambda: (compose(ft(n, 5), h("h1nout")), compose(inv.rho(n, 0), h("hn1out")))),
    ]
    for label, fn in items:
        nm = f"{label} (n={n})"
        yield nm, lambda nm=nm, fn=fn: _equal(nm, *fn())


def _pair_checks(inv: CoeffInvariant, a: int, b: int):
    """Identities among kappa, varkappa, omega, chi for the pair a | b."""
    m = b // a
    for i in range(6):
        tag = f"(n={a},m={m},i={i})"
        yield (f"kappa-rho square {tag}",
               lambda i=i, tag=tag: _equal(f"kappa-rho square {tag}", compose(inv.kappa(a, b, i), inv.rho(b, i)), inv.rho(a, i)))
        yield (f"beta-kappa square {tag}",
               lambda i=i, tag=tag: _equal(f"beta-kappa square {tag}", compose(inv.beta(a, i), inv.kappa(a, b, i)),
                                           inv.beta(b, i).scale(m)))
        yield (f"kappa-f square {tag}",
               lambda i=i, tag=tag: _equal(f"kappa-f square {tag}", compose(inv.kappa(a, b, i + 1), inv.f(b, i)),
                                           compose(inv.f(a, i), inv.kappa(a, b, i))))
    # varkappa_{b,a}: F_a -> F_b, here b = a * (b // a), so mn = b with m = a and n = b // a
    nn = b // a
    for i in range(6):
        tag = f"(n={nn},m={a},i={i})"
        yield (f"varkappa-rho square {tag}",
               lambda i=i, tag=tag: _equal(f"varkappa-rho square {tag}", compose(inv.varkappa(b, a, i), inv.rho(a, i)),
                                           inv.rho(b, i).scale(nn)))
        yield (f"beta-varkappa square {tag}",
               lambda i=i, tag=tag: _equal(f"beta-varkappa square {tag}", compose(inv.beta(b, i), inv.varkappa(b, a, i)),
                                           inv.beta(a, i)))
        yield (f"varkappa-f square {tag}",
               lambda i=i, tag=tag: _equal(f"varkappa-f square {tag}", compose(inv.varkappa(b, a, i + 1), inv.f(a, i)),
                                           compose(inv.f(b, i), inv.varkappa(b, a, i))))
    tag = f"(n={a},m={m})"
    om = inv.omega(a, b)
    items = [
        (f"omega-h1nout square {tag}", lambda: (compose(inv.h("h1nout", a), om), compose(inv.kappa(a, b, 5), inv.h("h1nout", b)))),
        (f"omega-h1nin square {tag}", lambda: (compose(om, inv.h("h1nin", b)), inv.h("h1nin", a).scale(m))),
        (f"omega-h11in square {tag}", lambda: (compose(om, inv.h("h11in", b)), inv.h("h11in", a))),
        (f"omega-h11out square {tag}", lambda: (compose(inv.h("h11out", a), om), inv.h("h11out", b).scale(m))),
    ]
    ch = inv.chi(b, a)
    tag2 = f"(n={nn},m={a})"
    items += [
        (f"chi-h1nout square {tag2}", lambda: (compose(inv.varkappa(b, a, 5), inv.h("h1nout", a)), compose(inv.h("h1nout", b), ch))),
        (f"chi-h1nin square {tag2}", lambda: (compose(ch, inv.h("h1nin", a)), inv.h("h1nin", b))),
        (f"chi-h11in square {tag2}", lambda: (compose(ch, inv.h("h11in", a)), inv.h("h11in", b).scale(nn))),
        (f"chi-h11out square {tag2}", lambda: (compose(inv.h("h11out", b), ch), inv.h("h11out", a))),
    ]
    for nm, fn in items:
        yield nm, lambda nm=nm, fn=fn: _equal(nm, *fn())


def verify_invariant(inv: CoeffInvariant) -> VerifyReport:
    items = []
    for name, fn in relation_checks(inv):
        try:
            items.append(fn())
        except (GroupError, KeyError) as exc:
            items.append(RelationResult(name, False, {"reason": str(exc)}))
    return VerifyReport(items)


# ---------------------------------------------------------------------------
# morphisms of invariants


@dataclass(eq=False)
class CoeffHom:
    source: CoeffInvariant
    target: CoeffInvariant
    comps: Dict[str, GroupHom]

    def __post_init__(self):
        if list(self.source.groups) != list(self.target.groups):
            raise InvariantError("invariants have different component layouts")
        for k, g in self.comps.items():
            if g.source != self.source.groups[k] or g.target != self.target.groups[k]:
                raise InvariantError(f"component {k} has the wrong source or target")

    @classmethod
    def identity(cls, inv: CoeffInvariant) -> "CoeffHom":
        return cls(inv, inv, {k: identity_hom(g) for k, g in inv.groups.items()})

    @classmethod
    def zero(cls, a: CoeffInvariant, b: CoeffInvariant) -> "CoeffHom":
        return cls(a, b, {k: zero_hom(a.groups[k], b.groups[k]) for k in a.groups})

    def failures(self) -> List[str]:
        """Names of natural maps that the family fails to commute with."""
        bad = []
        for name, a in self.source.arrows.items():
            b = self.target.arrows[name]
            if compose(self.comps[a.target], a.map) != compose(b.map, self.comps[a.source]):
                bad.append(name)
        return bad

    def is_valid(self) -> bool:
        return not self.failures()

    def compose(self, other: "CoeffHom") -> "CoeffHom":
        """self after other."""
        return CoeffHom(other.source, self.target,
                        {k: compose(self.comps[k], other.comps[k]) for k in self.comps})

    def __add__(self, other: "CoeffHom") -> "CoeffHom":
        return CoeffHom(self.source, self.target, {k: self.comps[k] + other.comps[k] for k in self.comps})

    def __neg__(self) -> "CoeffHom":
        return CoeffHom(self.source, self.target, {k: -g for k, g in self.comps.items()})

    def __sub__(self, other: "CoeffHom") -> "CoeffHom":
        return self + (-other)

    def scale(self, k: int) -> "CoeffHom":
        return CoeffHom(self.source, self.target, {c: g.scale(k) for c, g in self.comps.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, CoeffHom) and self.comps == other.comps

    def __hash__(self):
        return hash(tuple(self.comps[k] for k in sorted(self.comps)))

    def is_zero(self) -> bool:
        return all(g.is_zero() for g in self.comps.values())

    def is_isomorphism(self) -> bool:
        return all(is_isomorphism(g) for g in self.comps.values())

    def inverse(self) -> "CoeffHom":
        return CoeffHom(self.target, self.source, {k: inverse(g) for k, g in self.comps.items()})

    def delta(self) -> SixTermHom:
        return SixTermHom(self.source.base, self.target.base,
                          tuple(self.comps[fkey(1, i)] for i in range(6)))

    def to_json(self) -> dict:
        return {k: g.mat for k, g in self.comps.items()}


def _mod_map(F: ModelMap, M1: ExtModel, M2: ExtModel) -> ModelMap:
    """F applied to both summands of the mod-n cones."""
    def d(m):
        return tuple(block([[m[k], zmat(m[k].shape[0], m[1 - k].shape[1])],
                            [zmat(m[1 - k].shape[0], m[k].shape[1]), m[1 - k]]]) for k in (0, 1))
    return ModelMap(M1, M2, d(F.a0), d(F.a2), d(F.c))


def model_family(F: ModelMap, inv1: CoeffInvariant, inv2: CoeffInvariant) -> Dict[str, GroupHom]:
    """Components of the family induced by a model map inv1.model -> inv2.model."""
    B1, B2 = inv1.builder, inv2.builder
    t2inv = [inverse(t) for t in inv2.theta]
    comps: Dict[str, GroupHom] = {}
    for i in range(6):
        comps[fkey(1, i)] = compose(t2inv[i], compose(F.on_six(i), inv1.theta[i]))
    for n in inv1.support:
        Fn = _mod_map(F, B1.mods[n], B2.mods[n])
        for i in range(6):
            comps[fkey(n, i)] = Fn.on_six(i)
        L = block([[F.a2[1], zmat(F.a2[1].shape[0], F.middle(0).shape[1])],
                   [zmat(F.middle(0).shape[0], F.a2[1].shape[1]), F.middle(0)]])
        comps[hkey(n)] = induced(B1.hsq[n], B2.hsq[n], L)
    return {k: comps[k] for k in inv1.groups}


def _realized(inv: CoeffInvariant) -> Tuple[CoeffInvariant, Optional[CoeffHom]]:
    """An invariant built on a free-cone model, with a comparison isomorphism to inv."""
    if inv.realization is not None:
        return inv, None
    if inv.model is None:
        raise InvariantError("invariant carries no chain model; rebuild it from its base")
    invR = build_invariant(inv.base, inv.support, check=False)
    w = lift_hom(invR.realization, inv.model, inv.theta)
    return invR, CoeffHom(invR, inv, model_family(w, invR, inv))


def induce_hom(phi: SixTermHom, inv1: CoeffInvariant, inv2: CoeffInvariant) -> CoeffHom:
    """The family induced by a lift of phi to the chain models."""
    if inv1.support != inv2.support:
        raise InvariantError("invariants have different supports")
    if inv2.model is None:
        raise InvariantError("target invariant carries no chain model; rebuild it from its base")
    invR, w = _realized(inv1)
    lifted = lift_hom(invR.realization, inv2.model,
                      [compose(inv2.theta[i], phi.maps[i]) for i in range(6)])
    fam = model_family(lifted, invR, inv2)
    out = CoeffHom(invR, inv2, fam)
    if w is not None:
        out = CoeffHom(inv1, inv2, out.compose(w.inverse()).comps)
    bad = out.failures()
    if bad:
        raise InvariantError(f"induced family does not commute with {bad[0]}", bad[0])
    return out
