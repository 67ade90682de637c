"""Chain models for abstract six-term sequences.

A six-term exact sequence is realized as the cone of a map between free
models: the free model P0 surjects onto the sequence, the kernel is again
free (projective dimension one), and a second free model P1 covers it.
Homomorphisms of six-term sequences lift to model maps because maps out
of a free model are determined up to homotopy by the classes of their
generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np

from . import exactla as la
from .chains import ExtModel, FreeModel, ModelError, ModelMap, cone_map, null_homotopy
from .fgab import GroupHom, Subquotient, compose, hom, is_isomorphism
from .sixterm import SixTerm, SixTermHom


@dataclass(eq=False)
class Realization:
    base: SixTerm
    model: ExtModel
    theta: List[GroupHom]  # G_i -> H_i(model), isomorphisms
    free0: FreeModel
    free1: FreeModel
    phi: ModelMap  # free1 -> free0; model = cone(phi)


def _free_structure(counts, i: int) -> List[List[int]]:
    """Structure map of the free module from index i to i+1."""
    gi, gp = counts[i], counts[(i - 1) % 6]
    gn = counts[(i + 1) % 6]
    M = la.zeros(gn + gi, gi + gp)
    for l in range(gi):
        M[gn + l][l] = 1
    return M


def realize(s: SixTerm) -> Realization:
    G = s.groups
    counts = tuple(g.ngens for g in G)
    free0 = FreeModel(counts)
    n = [free0.module_rank(i) for i in range(6)]

    # eta_i : P0_i -> G_i, own generators then images of the previous ones
    kernels = []
    for i in range(6):
        prev = s.maps[(i - 1) % 6].mat
        eta = la.hstack(la.identity(counts[i]), prev, rows=counts[i])
        sol = la.solve_mod_subgroup(eta, [0] * counts[i], G[i].relations(),
                                    cols=n[i], rcols=len(G[i].torsion))
        kernels.append(sol[1])

    gens: List[List[List[int]]] = []
    for i in range(6):
        fprev = _free_structure(counts, (i - 1) % 6)
        pushed = [la.matvec(fprev, k) for k in kernels[(i - 1) % 6]]
        q = Subquotient(n[i], kernels[i], [v for v in pushed if any(v)])
        if q.group.torsion:
            raise ModelError(f"kernel of the free cover is not free at index {i}")
        gens.append(q.lifts())
    counts1 = tuple(len(g) for g in gens)
    for i in range(6):
        if counts1[i] + counts1[(i - 1) % 6] != len(kernels[i]):
            raise ModelError(f"free cover of the kernel has the wrong rank at index {i}")

    free1 = FreeModel(counts1)
    P0 = free0.model
    images = {(j, l): free0.rep(j, v) for j in range(6) for l, v in enumerate(gens[j])}
    phi = free1.map_to(P0, images)
    model = phi.cone()
    incl = phi.cone_inclusion(model)

    theta = []
    for i in range(6):
        Hi = model.homologies[i]
        L = incl.component(i)
        cols = []
        for g in range(counts[i]):
            e = [0] * n[i]
            e[g] = 1
            y = L @ np.array(free0.rep(i, e), dtype=object)
            cols.append(Hi.coords([int(x) for x in y]))
        theta.append(hom(G[i], Hi.group, la.from_columns(cols, Hi.group.ngens)))
    for i in range(6):
        if not is_isomorphism(theta[i]):
            raise ModelError(f"realization is not an isomorphism at index {i}")
        if compose(theta[(i + 1) % 6], s.maps[i]) != compose(model.six_maps[i], theta[i]):
            raise ModelError(f"realization does not commute with f{i}")
    return Realization(s, model, theta, free0, free1, phi)


def class_lift(model: ExtModel, i: int, coords) -> List[int]:
    """A cycle in the ambient of index i representing the given class."""
    H = model.homologies[i]
    out = [0] * H.dim
    for g, c in enumerate(coords):
        if c:
            v = H.lift(g)
            out = [a + c * b for a, b in zip(out, v)]
    return out


def lift_classes(R: Realization, target: ExtModel, classes) -> ModelMap:
    """Model map from R.model sending generator g of G_i to classes[i][g]."""
    images = {}
    for i in range(6):
        for g in range(R.free0.counts[i]):
            images[(i, g)] = class_lift(target, i, classes[i][g])
    A = R.free0.map_to(target, images)
    hty = null_homotopy(A.compose(R.phi), R.free1)
    return cone_map(R.phi, R.model, A, hty)


def lift_hom(R: Realization, target: ExtModel, phi: List[GroupHom]) -> ModelMap:
    """Lift phi_i : G_i -> H_i(target) to a model map R.model -> target."""
    classes = []
    for i in range(6):
        cols = la.columns(phi[i].mat, phi[i].source.ngens) if phi[i].target.ngens else \
            [[] for _ in range(phi[i].source.ngens)]
        classes.append(cols)
    F = lift_classes(R, target, classes)
    for i in range(6):
        if compose(F.on_six(i), R.theta[i]) != phi[i]:
            raise ModelError(f"lifted map does not induce the requested map at index {i}")
    return F


def lift_six_hom(phi: SixTermHom, R1: Realization, R2: Realization) -> ModelMap:
    return lift_hom(R1, R2.model, [compose(R2.theta[i], phi.maps[i]) for i in range(6)])
