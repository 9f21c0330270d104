"""Random generators, hypothesis strategies and a sympy reference for the tests."""

from __future__ import annotations

import random
from math import gcd

import sympy
from hypothesis import strategies as st

from clusterlab.laurent import LaurentPoly
from clusterlab.quiver import Quiver
from clusterlab.seed import Seed
from clusterlab.semifield import TropMonomial


def random_matrix(rng: random.Random, n: int, bound: int = 3, skew: bool = False) -> tuple:
    """A random skew-symmetrizable ``n x n`` matrix with entries in ``[-bound, bound]``."""
    d = [1] * n if skew else [rng.choice((1, 1, 2, 3)) for _ in range(n)]
    B = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            g = gcd(d[i], d[j])
            step_ij, step_ji = d[j] // g, d[i] // g
            top = bound // max(step_ij, step_ji)
            k = rng.randint(-top, top)
            B[i][j] = k * step_ij
            B[j][i] = -k * step_ji
    return tuple(tuple(r) for r in B)


def random_seed(rng: random.Random, n: int, m: int, bound: int = 3, skew: bool = False) -> Seed:
    B = random_matrix(rng, n, bound, skew)
    y = tuple(TropMonomial(tuple(rng.randint(-bound, bound) for _ in range(m))) for _ in range(n))
    return Seed.initial(B, y, m)


def random_acyclic_source_freezing(rng: random.Random, n: int, m: int, bound: int = 2) -> Seed:
    """Acyclic seed with every y exponent nonnegative.

    Arrows only run from lower to higher positions of a random order, so the
    graph ``i -> j`` for ``B[j][i] > 0`` is acyclic.
    """
    B = [list(r) for r in random_matrix(rng, n, bound)]
    order = list(range(n))
    rng.shuffle(order)
    pos = {v: p for p, v in enumerate(order)}
    for i in range(n):
        for j in range(n):
            # an arrow i -> j must go forward in the order
            if B[j][i] > 0 and pos[i] > pos[j]:
                B[j][i], B[i][j] = -B[j][i], -B[i][j]
    y = tuple(TropMonomial(tuple(rng.randint(0, bound) for _ in range(m))) for _ in range(n))
    return Seed.initial(tuple(tuple(r) for r in B), y, m)


def random_quiver(rng: random.Random, n: int, m: int, bound: int = 2, density: float = 0.5) -> Quiver:
    N = n + m
    adj = [[0] * N for _ in range(N)]
    for i in range(N):
        for j in range(i + 1, N):
            if i >= n and j >= n:
                continue
            if rng.random() < density:
                v = rng.choice([c for c in range(-bound, bound + 1) if c])
                adj[i][j], adj[j][i] = v, -v
    return Quiver.from_matrix(n, m, adj)


@st.composite
def seeds(draw, max_n: int = 4, max_m: int = 3, bound: int = 3, skew: bool = False) -> Seed:
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(0, max_m))
    return random_seed(random.Random(draw(st.integers(0, 2**32))), n, m, bound, skew)


@st.composite
def quivers(draw, max_n: int = 5, max_m: int = 2, bound: int = 2) -> Quiver:
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(0, max_m))
    return random_quiver(random.Random(draw(st.integers(0, 2**32))), n, m, bound)


@st.composite
def laurent_polys(draw, n: int = 2, m: int = 1, max_terms: int = 4, spread: int = 2) -> LaurentPoly:
    exps = st.tuples(*[st.integers(-spread, spread)] * (n + m))
    terms = draw(st.dictionaries(exps, st.integers(-5, 5), max_size=max_terms))
    return LaurentPoly(n, m, terms)


# -- sympy reference -----------------------------------------------------------


def sym_vars(n: int, m: int):
    xs = sympy.symbols(f"x1:{n + 1}") if n else ()
    zs = sympy.symbols(f"z1:{m + 1}") if m else ()
    return tuple(xs), tuple(zs)


def to_sympy(p: LaurentPoly):
    xs, zs = sym_vars(p.n, p.m)
    gens = xs + zs
    out = sympy.Integer(0)
    for key, c in p:
        term = sympy.Integer(c)
        for g, e in zip(gens, key):
            term *= g**e
        out += term
    return out


def extended_mutation(B: list[list[int]], k: int) -> list[list[int]]:
    """Sign form of matrix mutation on an extended (rows n+m) matrix."""
    def sgn(v: int) -> int:
        return (v > 0) - (v < 0)

    rows, cols = len(B), len(B[0])
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        for j in range(cols):
            if i == k or j == k:
                out[i][j] = -B[i][j]
            else:
                out[i][j] = B[i][j] + sgn(B[i][k]) * max(B[i][k] * B[k][j], 0)
    return out


def reference_cluster(seed: Seed, path) -> list:
    """Cluster variables along ``path`` from the textbook exchange relation over sympy.

    The frozen generators enter through the bottom rows of the extended
    matrix, not through the tropical sum, so this is independent of the
    library's coefficient and division code.
    """
    n, m = seed.n, seed.m
    xs, zs = sym_vars(n, m)
    ext = [list(r) for r in seed.B.entries] + [[seed.y[j].exps[a] for j in range(n)] for a in range(m)]
    cur = list(xs)
    for k in path:
        plus = minus = sympy.Integer(1)
        for i in range(n + m):
            b = ext[i][k]
            g = cur[i] if i < n else zs[i - n]
            if b > 0:
                plus *= g**b
            elif b < 0:
                minus *= g ** (-b)
        cur[k] = sympy.cancel((plus + minus) / cur[k])
        ext = extended_mutation(ext, k)
    return cur
