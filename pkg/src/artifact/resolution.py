"""Explicit projective resolutions of six-term sequences with G3 = 0 and G5 free.

The free row F is the sum of the obvious elementary exact pieces

    F0 = G5 + F~0,  F1 = F~0 + F2,  F2 = Z^(sum m + s),  F3 = 0,
    F4 = G4,        F5 = G4 + G5,

and eta : F -> G uses the canonical generators, primary generators of G2
and a fixed lift zeta of those to G1. H is the kernel row.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from . import exactla as la
from .chains import ModelMap, block, eye as ceye, tolist, zmat
from .coeffs import CoeffHom, CoeffInvariant, build_invariant, fkey, hkey, model_family
from .fgab import (FgAbGroup, GroupHom, compose, cyclic, direct_sum, hom, in_image, is_injective,
                   is_surjective, kernel, ZERO)
from .homsolver import hom_lambda_red, HomLambdaGroup
from .realize import lift_hom
from .sixterm import SixTerm, SixTermHom, check_exact, class_flags, exact_at


class ResolutionError(ValueError):
    pass


@dataclass(frozen=True)
class PrimaryDecomposition:
    primes: Tuple[int, ...]
    exponents: Tuple[Tuple[int, ...], ...]
    mults: Tuple[Tuple[int, ...], ...]
    free_rank: int

    def entries(self) -> List[Tuple[int, int, int]]:
        """(p, a, multiplicity) in ascending order."""
        return [(p, a, m) for p, es, ms in zip(self.primes, self.exponents, self.mults)
                for a, m in zip(es, ms)]

    def prime_powers(self) -> List[int]:
        """Orders of the cyclic summands, repeated by multiplicity, in order."""
        return [p ** a for p, a, m in self.entries() for _ in range(m)]

    def reassemble(self) -> FgAbGroup:
        return direct_sum([cyclic(q) for q in self.prime_powers()] + [FgAbGroup((), self.free_rank)])[0]

    def to_json(self) -> dict:
        return {"primes": list(self.primes), "exponents": [list(e) for e in self.exponents],
                "multiplicities": [list(m) for m in self.mults], "free_rank": self.free_rank}


def _factor(n: int) -> Dict[int, int]:
    out: Dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def primary_decompose(G: FgAbGroup) -> PrimaryDecomposition:
    counts: Dict[int, Dict[int, int]] = {}
    for d in G.torsion:
        for p, a in _factor(d).items():
            counts.setdefault(p, {})
            counts[p][a] = counts[p].get(a, 0) + 1
    primes = tuple(sorted(counts))
    exps = tuple(tuple(sorted(counts[p])) for p in primes)
    mults = tuple(tuple(counts[p][a] for a in sorted(counts[p])) for p in primes)
    return PrimaryDecomposition(primes, exps, mults, G.free_rank)


def primary_generators(G: FgAbGroup) -> List[Tuple[int, List[int]]]:
    """(order, element) for each primary cyclic summand, then the free generators (order 0)."""
    dec = primary_decompose(G)
    out = []
    for p, a, _ in dec.entries():
        q = p ** a
        for j, d in enumerate(G.torsion):
            f = _factor(d)
            if f.get(p) == a:
                v = [0] * G.ngens
                v[j] = d // q
                out.append((q, v))
    for j in range(G.free_rank):
        v = [0] * G.ngens
        v[len(G.torsion) + j] = 1
        out.append((0, v))
    return out


@dataclass(eq=False)
class Resolution:
    G: SixTerm
    F: SixTerm
    H: SixTerm
    lam: SixTermHom
    eta: SixTermHom
    F0tilde: FgAbGroup
    zeta: GroupHom
    decomposition: PrimaryDecomposition

    def lambda2_diagonal(self) -> List[int]:
        M = self.lam.maps[2].mat
        return [M[k][k] for k in range(self.H.groups[2].ngens)]

    def to_json(self) -> dict:
        return {"F": self.F.to_json(), "H": self.H.to_json(),
                "lambda": self.lam.to_json(), "eta": self.eta.to_json(),
                "F0tilde_rank": self.F0tilde.free_rank,
                "zeta": self.zeta.mat,
                "lambda2_diagonal": self.lambda2_diagonal(),
                "decomposition": self.decomposition.to_json()}


def _free(r: int) -> FgAbGroup:
    return FgAbGroup((), r)


def _kernel_lattice(eta: GroupHom) -> List[List[int]]:
    """Basis of ker(eta) for eta defined on a free group."""
    T = eta.target
    sol = la.solve_mod_subgroup(eta.mat if T.ngens else [], [0] * T.ngens, T.relations(),
                                cols=eta.source.ngens, rcols=len(T.torsion))
    return sol[1]


def build_resolution(G: SixTerm) -> Resolution:
    flags = class_flags(G)
    if not (flags["ideal_K1_zero"] and flags["quotient_K1_free"]):
        raise ResolutionError("resolution needs G3 = 0 and G5 torsion free")
    if not check_exact(G).ok:
        raise ResolutionError("input is not exact")
    g = G.groups
    f = G.maps
    r4, r5 = g[4].free_rank, g[5].free_rank
    if g[4].torsion:
        raise ResolutionError("G4 has torsion although G3 = 0 and G5 is free")
    dec = primary_decompose(g[2])
    prim = primary_generators(g[2])
    k2 = len(prim)
    k0 = g[0].ngens

    F0t = _free(k0)
    F = [_free(r5 + k0), _free(k0 + k2), _free(k2), ZERO, _free(r4), _free(r4 + r5)]

    eta0t = la.identity(k0)  # canonical generators of G0
    eta2 = la.from_columns([v for _, v in prim], g[2].ngens)
    zeta_cols = []
    for _, v in prim:
        x = in_image(f[1], v)
        if x is None:
            raise ResolutionError("a primary generator of G2 does not lift to G1")
        zeta_cols.append(x)
    zeta = hom(F[2], g[1], la.from_columns(zeta_cols, g[1].ngens))

    f0_eta = compose(f[0], hom(F0t, g[0], eta0t)).mat
    eta_m = [
        la.hstack(f[5].mat, eta0t, rows=g[0].ngens),
        la.hstack(f0_eta, zeta.mat, rows=g[1].ngens),
        eta2,
        [],
        la.identity(r4),
        la.hstack(f[4].mat, la.identity(r5), rows=r5),
    ]
    eta = tuple(hom(F[i], g[i], eta_m[i]) for i in range(6))

    Z_, I_ = zmat, ceye
    fF = [tolist(block([[Z_(k0, r5), I_(k0)], [Z_(k2, r5), Z_(k2, k0)]])),
          tolist(block([[Z_(k2, k0), I_(k2)]])),
          [],
          [],
          tolist(block([[I_(r4)], [Z_(r5, r4)]])),
          tolist(block([[Z_(r5, r4), I_(r5)], [Z_(k0, r4), Z_(k0, r5)]]))]
    Fs = SixTerm.from_matrices(F, fF)
    eta_h = SixTermHom(Fs, G, eta)

    # kernels; H2 gets the diagonal basis
    Hbases: List[List[List[int]]] = []
    for i in range(6):
        if i == 2:
            basis = []
            for k, (q, _) in enumerate(prim):
                if q:
                    v = [0] * k2
                    v[k] = q
                    basis.append(v)
            Hbases.append(basis)
        else:
            Hbases.append(_kernel_lattice(eta[i]))
    Hg = [_free(len(b)) for b in Hbases]
    lam = [hom(Hg[i], F[i], la.from_columns(Hbases[i], F[i].ngens)) for i in range(6)]
    fH = []
    for i in range(6):
        j = (i + 1) % 6
        cols = []
        for v in Hbases[i]:
            w = la.matvec(fF[i], v) if F[j].ngens else []
            x = in_image(lam[j], w)
            if x is None:
                raise ResolutionError(f"F-row map {i} does not preserve the kernel row")
            cols.append(x)
        fH.append(la.from_columns(cols, Hg[j].ngens))
    Hs = SixTerm.from_matrices(Hg, fH)
    lam_h = SixTermHom(Hs, Fs, tuple(lam))
    res = Resolution(G, Fs, Hs, lam_h, eta_h, F0t, zeta, dec)
    _check_resolution(res)
    return res


def _check_resolution(res: Resolution):
    for i in range(6):
        if not is_injective(res.lam.maps[i]):
            raise ResolutionError(f"lambda_{i} is not injective")
        if not is_surjective(res.eta.maps[i]):
            raise ResolutionError(f"eta_{i} is not surjective")
        if not compose(res.eta.maps[i], res.lam.maps[i]).is_zero():
            raise ResolutionError(f"eta_{i} lambda_{i} is not zero")
        ok, _, _ = exact_at(res.lam.maps[i], res.eta.maps[i])
        if not ok:
            raise ResolutionError(f"0 -> H_{i} -> F_{i} -> G_{i} -> 0 is not exact in the middle")
        if not (res.F.groups[i].is_free() and res.H.groups[i].is_free()):
            raise ResolutionError(f"index {i} is not free")
    for label, s in (("F", res.F), ("H", res.H)):
        if not check_exact(s).ok:
            raise ResolutionError(f"{label}-row is not exact")
    diag = res.lambda2_diagonal()
    if sorted(diag) != sorted(res.decomposition.prime_powers()):
        raise ResolutionError("lambda_2 is not the diagonal of prime powers")


# ---------------------------------------------------------------------------
# the induced map on H and the Hom sequences


@dataclass(eq=False)
class _Geometric:
    """Chain-level realization of H -> F with the fiber sequence around it."""
    inv_H: CoeffInvariant
    inv_F: CoeffInvariant
    psi: ModelMap


def _geometric(res: Resolution, support) -> _Geometric:
    inv_H = build_invariant(res.H, support, check=False)
    inv_F = build_invariant(res.F, support, check=False)
    psi = lift_hom(inv_H.realization, inv_F.model,
                   [compose(inv_F.theta[i], res.lam.maps[i]) for i in range(6)])
    return _Geometric(inv_H, inv_F, psi)


def kernel_formula(res: Resolution, n: int) -> FgAbGroup:
    """Direct sum of Z/gcd(q, n) over the diagonal entries q of lambda_2."""
    from math import gcd
    return direct_sum([cyclic(gcd(q, n)) for q in res.decomposition.prime_powers()] + [ZERO])[0]


def map_on_H(res: Resolution, n: int) -> GroupHom:
    """The map induced by the resolution on the H-group at index one."""
    geo = _geometric(res, [])
    psi1 = geo.psi.shift()
    src = build_invariant(psi1.source, [n], check=False)
    tgt = build_invariant(psi1.target, [n], check=False)
    return model_family(psi1, src, tgt)[hkey(n)]


def kernel_on_H(res: Resolution, n: int) -> Tuple[FgAbGroup, GroupHom]:
    """Kernel of map_on_H, checked against the closed formula."""
    if n not in res.decomposition.prime_powers():
        raise ResolutionError(f"{n} is not a prime power of the decomposition of G2")
    K, incl = kernel(map_on_H(res, n))
    if K != kernel_formula(res, n):
        raise ResolutionError(f"kernel {K} differs from the expected {kernel_formula(res, n)}")
    return K, incl


def _precompose_matrix(dom: HomLambdaGroup, cod: HomLambdaGroup, fam: CoeffHom) -> GroupHom:
    cols = [cod.coords(b.compose(fam)) for b in dom.basis]
    return hom(dom.group, cod.group, la.from_columns(cols, cod.group.ngens))


@dataclass
class HomSequenceReport:
    groups: Dict[str, FgAbGroup]
    middle_exact: bool
    continuation_exact: bool
    witness: Optional[dict]

    @property
    def ok(self) -> bool:
        return self.middle_exact and self.continuation_exact

    def to_json(self) -> dict:
        return {"groups": {k: g.to_json() for k, g in self.groups.items()},
                "middle_exact": self.middle_exact, "continuation_exact": self.continuation_exact,
                "witness": self.witness}


def hom_sequence_report(res: Resolution, target: CoeffInvariant) -> HomSequenceReport:
    """Exactness of Hom(e', Se2) -> Hom(e'', Se2) -> Hom(Se1, Se2) -> Hom(e'[-1], Se2)."""
    flags = class_flags(target.base)
    if not (flags["zero_exponential"] and flags["quotient_K1_free"]):
        raise ResolutionError("target is outside the class with zero exponential map and free K1 quotient")
    if target.model is None:
        raise ResolutionError("target invariant carries no chain model")
    support = list(target.support)
    geo = _geometric(res, support)
    C = geo.psi.cone()
    fib = C.shift()
    phi = geo.psi.cone_projection(C).shift()          # fib -> e''
    conn = geo.psi.cone_inclusion(C).shift()          # e'[-1] -> fib
    inv_fib = build_invariant(fib, support, check=False)
    inv_Fm = build_invariant(geo.inv_F.model.shift(), support, check=False)
    inv_S2 = build_invariant(target.model.shift(), support, check=False)

    K_psi = CoeffHom(geo.inv_H, geo.inv_F, model_family(geo.psi, geo.inv_H, geo.inv_F))
    K_phi = CoeffHom(inv_fib, geo.inv_H, model_family(phi, inv_fib, geo.inv_H))
    K_conn = CoeffHom(inv_Fm, inv_fib, model_family(conn, inv_Fm, inv_fib))

    hF = hom_lambda_red(geo.inv_F, inv_S2)
    hH = hom_lambda_red(geo.inv_H, inv_S2)
    hS = hom_lambda_red(inv_fib, inv_S2)
    hFm = hom_lambda_red(inv_Fm, inv_S2)
    psi_star = _precompose_matrix(hF, hH, K_psi)
    phi_star = _precompose_matrix(hH, hS, K_phi)
    conn_star = _precompose_matrix(hS, hFm, K_conn)
    ok1, kind1, w1 = exact_at(psi_star, phi_star)
    ok2, kind2, w2 = exact_at(phi_star, conn_star)
    witness = None
    if not ok1:
        witness = {"node": "Hom(e'', Se2)", "kind": kind1, "element": w1}
    elif not ok2:
        witness = {"node": "Hom(Se1, Se2)", "kind": kind2, "element": w2}
    groups = {"Hom(e',Se2)": hF.group, "Hom(e'',Se2)": hH.group,
              "Hom(Se1,Se2)": hS.group, "Hom(e'[-1],Se2)": hFm.group}
    return HomSequenceReport(groups, ok1, ok2, witness)
