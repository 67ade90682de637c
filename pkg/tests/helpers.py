"""Brute-force tools shared by the tests. Nothing here calls the SNF code."""

import itertools
from math import gcd, prod

from artifact.fgab import FgAbGroup


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def mul(G, d, x):
    return tuple(G.reduce([d * c for c in x]))


def add(G, x, y):
    return tuple(G.reduce([a + b for a, b in zip(x, y)]))


def kill_count(G, d):
    """#{x in G : d x = 0} straight from the invariant factors."""
    return prod(gcd(d, t) for t in G.torsion)


def profile_of_group(G, up_to):
    return tuple(kill_count(G, d) for d in divisors(up_to))


def profile_of_set(elements, times, zero, up_to):
    """Counts of d-torsion in an explicitly listed finite group."""
    return tuple(sum(1 for x in elements if times(d, x) == zero) for d in divisors(up_to))


def same_finite_group(G, elements, times, zero):
    """A finite abelian group is determined by the counts #{x : d x = 0}."""
    if G.free_rank or G.order() != len(elements):
        return False
    e = 1
    for t in G.torsion:
        e = e * t // gcd(e, t)
    n = max(e, len(elements))
    return profile_of_group(G, n) == profile_of_set(elements, times, zero, n)


def product_profile(factors, up_to):
    """Profile of a direct product given each factor's element list and its multiplication."""
    out = []
    for d in divisors(up_to):
        out.append(prod(sum(1 for x in els if times(d, x) == zero) for els, times, zero in factors))
    return tuple(out)


def coset_quotient(G, sub):
    """Elements of G / sub as frozensets, with the d-multiple map on cosets."""
    sub = set(sub)
    cosets = {}
    for x in G.elements():
        key = frozenset(add(G, x, s) for s in sub)
        cosets[key] = x
    reps = list(cosets.values())
    zero = frozenset(sub)

    def times(d, rep):
        y = mul(G, d, rep)
        return frozenset(add(G, y, s) for s in sub)

    return reps, times, zero


def minor_gcds(M, k):
    """gcd of all k x k minors, by cofactor expansion."""
    rows, cols = len(M), len(M[0]) if M else 0
    g = 0
    for R in itertools.combinations(range(rows), k):
        for C in itertools.combinations(range(cols), k):
            g = gcd(g, _det([[M[r][c] for c in C] for r in R]))
    return g


def _det(M):
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * _det([row[:j] + row[j + 1:] for row in M[1:]])
               for j in range(n) if M[0][j])


def snf_oracle(M):
    """Diagonal of the SNF as ratios of successive minor gcds."""
    out, prev = [], 1
    for k in range(1, min(len(M), len(M[0]) if M else 0) + 1):
        g = minor_gcds(M, k)
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def finite_groups(max_order):
    from artifact.fgab import all_groups_of_order
    out = []
    for n in range(1, max_order + 1):
        out.extend(all_groups_of_order(n))
    return out


def trivial():
    return FgAbGroup((), 0)
