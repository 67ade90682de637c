"""Shared inputs for the test suite.

The CK part is exhaustive for two vertices and sampled (fixed seed) for
three and four; the handcrafted part is torsion heavy on purpose.
"""

import itertools
import random

from artifact.fgab import FgAbGroup, ZERO, Z, cyclic
from artifact.sixterm import CKInput, SixTerm, ck_model

SEED = 20240611


def z2z():
    """Z --x2--> Z --> Z/2 --> 0 --> 0 --> 0."""
    return SixTerm.from_matrices([Z, Z, cyclic(2), ZERO, ZERO, ZERO], [[[2]], [[1]], [], [], [], []])


def z3_loop():
    """0, 0, 0, 0, Z/3 --id--> Z/3."""
    return SixTerm.from_matrices([ZERO, ZERO, ZERO, ZERO, cyclic(3), cyclic(3)],
                                 [[], [], [], [], [[1]], []])


def two_four():
    """Z^2 --diag(2,4)--> Z^2 --> Z/2 + Z/4 --> 0 --> 0 --> 0."""
    return SixTerm.from_matrices([FgAbGroup((), 2), FgAbGroup((), 2), FgAbGroup((2, 4)), ZERO, ZERO, ZERO],
                                 [[[2, 0], [0, 4]], [[1, 0], [0, 1]], [], [], [], []])


def four_eight():
    """0 --> Z/4 --x2--> Z/8 --> Z/2 --> 0, padded with zeros."""
    return SixTerm.from_matrices([cyclic(4), cyclic(8), cyclic(2), ZERO, ZERO, ZERO],
                                 [[[2]], [[1]], [], [], [], []])


def index_loop():
    """Z/2 --id--> Z/2 across the index map."""
    return SixTerm.from_matrices([ZERO, ZERO, cyclic(2), cyclic(2), ZERO, ZERO],
                                 [[], [], [[1]], [], [], []])


def nine_three():
    """0 --> Z/3 --> Z/3 + Z/9 --> Z/9 --> 0, not split."""
    return SixTerm.from_matrices([cyclic(3), FgAbGroup((3, 9)), cyclic(9), ZERO, ZERO, ZERO],
                                 [[[1], [3]], [[-3, 1]], [], [], [], []])


HANDCRAFTED = {
    "z2z": z2z,
    "z3_loop": z3_loop,
    "two_four": two_four,
    "four_eight": four_eight,
    "index_loop": index_loop,
    "nine_three": nine_three,
}


def ck_two_vertex():
    out = []
    for a, b, c in itertools.product(range(4), repeat=3):
        out.append(CKInput(((a, b), (0, c)), (1,)))
    return out


def _random_ck(rng, n):
    h = rng.randint(1, n - 1)
    ideal = tuple(range(n - h, n))
    A = [[0 if (i in ideal and j not in ideal) else rng.randint(0, 3) for j in range(n)]
         for i in range(n)]
    return CKInput(tuple(map(tuple, A)), ideal)


def ck_sampled(count=60, seed=SEED):
    rng = random.Random(seed)
    return [_random_ck(rng, rng.choice((3, 4))) for _ in range(count)]


def ck_corpus():
    return ck_two_vertex() + ck_sampled()


def corpus_sources():
    """(label, source) pairs; sources are SixTerm or chain models."""
    out = [(f"ck{list(map(list, c.adjacency))}|{list(c.ideal_block)}", ck_model(c)) for c in ck_corpus()]
    out += [(name, make()) for name, make in HANDCRAFTED.items()]
    return out


def with_two(support):
    """Default support with 2 added, so torsion-free inputs still see coefficients."""
    return sorted(set(support) | {2})
