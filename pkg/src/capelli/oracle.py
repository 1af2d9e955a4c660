"""Brute-force reference for products in U(g).

Works in the free algebra on the basis: concatenate words, then repeatedly pick
a random out-of-order adjacent pair and apply ``x y -> y x + [x, y]``.  The
structure constants are recomputed here from dense matrix products, so nothing
is shared with the PBW engine except the basis and its coordinate solver.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .coeff import UnivPoly
from .pbw import EnvElement
from .realizations import LieRealization


def _dense(R: LieRealization, k: int) -> list:
    N = R.N
    M = [[Fraction(0)] * N for _ in range(N)]
    for (i, j), x in R.matrices[k].items():
        M[i - 1][j - 1] = Fraction(x)
    return M


def structure_constants(R: LieRealization) -> dict:
    """{(a, b): {c: coeff}} for a < b, from [X_a, X_b] = X_a X_b - X_b X_a."""
    N = R.N
    mats = [_dense(R, k) for k in range(R.dim)]
    out = {}
    for a in range(R.dim):
        for b in range(a + 1, R.dim):
            A, B = mats[a], mats[b]
            comm = {}
            for i in range(N):
                for j in range(N):
                    x = sum(A[i][t] * B[t][j] - B[i][t] * A[t][j] for t in range(N))
                    if x:
                        comm[(i + 1, j + 1)] = x
            if comm:
                out[(a, b)] = R.coordinates(comm)
    return out


def _rewrite(words: dict, consts: dict, rng: random.Random) -> dict:
    done: dict = {}
    pending = dict(words)
    while pending:
        w, c = pending.popitem()
        if not c:
            continue
        descents = [p for p in range(len(w) - 1) if w[p] > w[p + 1]]
        if not descents:
            done[w] = done.get(w, 0) + c
            continue
        p = rng.choice(descents)
        x, y = w[p], w[p + 1]
        swapped = w[:p] + (y, x) + w[p + 2 :]
        pending[swapped] = pending.get(swapped, 0) + c
        # [x, y] with x > y is -[y, x]
        for z, s in consts.get((y, x), {}).items():
            shorter = w[:p] + (z,) + w[p + 2 :]
            pending[shorter] = pending.get(shorter, 0) - c * s
    return {w: c for w, c in done.items() if c}


def oracle_mul(a: EnvElement, b: EnvElement, rng: Optional[random.Random] = None, consts: Optional[dict] = None) -> EnvElement:
    """Normal form of ``a * b`` by randomized free-algebra rewriting."""
    if a.R is not b.R:
        raise ValueError("factors live over different realizations")
    R = a.R
    rng = rng or random.Random(0)
    consts = structure_constants(R) if consts is None else consts
    words: dict = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            w = tuple(m1) + tuple(m2)
            words[w] = words.get(w, 0) + c1 * c2
    out = _rewrite(words, consts, rng)
    return EnvElement(R, {w: UnivPoly.coerce(c) for w, c in out.items()})


def random_element(R: LieRealization, rng: random.Random, degree: int = 4, terms: int = 3) -> EnvElement:
    """Small random element with monomials of degree at most ``degree``."""
    parts = []
    for _ in range(terms):
        word = [rng.randrange(R.dim) for _ in range(rng.randint(0, degree))]
        c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        e = EnvElement.scalar(R, c)
        for g in word:
            e = e * EnvElement.generator(R, g)
        parts.append(e)
    out = EnvElement.zero(R)
    for p in parts:
        out = out + p
    return out
