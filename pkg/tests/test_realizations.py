from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from capelli import linalg
from capelli.matrices import adjustment_diagonal, generator_matrix
from capelli.pbw import EnvElement, env_commutator
from capelli.realizations import (
    RealizationError,
    closed_form_bracket,
    epsilon,
    general_realization,
    gl_realization,
    make_realization,
    normalize_kind,
    o_identity_realization,
    o_split_realization,
    prime,
    sp_split_realization,
    split_form,
)


def idx(R, i, j):
    return R.index[next(g for g in R.basis if (g.i, g.j) == (i, j))]


def combo(R, **named):
    return {idx(R, *map(int, k[1:])): Fraction(v) for k, v in named.items()}


def test_gl_brackets():
    R = gl_realization(2)
    assert R.bracket(idx(R, 1, 1), idx(R, 1, 2)) == {idx(R, 1, 2): 1}
    assert R.bracket(idx(R, 1, 2), idx(R, 2, 1)) == {idx(R, 1, 1): 1, idx(R, 2, 2): -1}
    assert R.bracket(idx(R, 1, 1), idx(R, 2, 2)) == {}


def test_sp_split_n2():
    R = sp_split_realization(2)
    assert [str(g) for g in R.basis] == ["F[2,1]", "F[1,1]", "F[1,2]"]
    assert R.bracket(idx(R, 1, 2), idx(R, 2, 1)) == {idx(R, 1, 1): 4}
    assert R.gen(2, 2) == {idx(R, 1, 1): -1}
    sign, g = R.canonicalize(2, 2)
    assert sign == -1 and (g.i, g.j) == (1, 1)


def test_sp_signs_n4():
    assert [epsilon(i, 4) for i in range(1, 5)] == [-1, -1, 1, 1]
    assert [prime(i, 4) for i in range(1, 5)] == [4, 3, 2, 1]


def test_o_split_small():
    R = o_split_realization(2)
    assert R.dim == 1 and str(R.basis[0]) == "F[1,1]"
    assert R.gen(1, 2) == {}
    R3 = o_split_realization(3)
    assert R3.dim == 3
    assert R3.gen(2, 2) == {}


def test_o_identity():
    R = o_identity_realization(2)
    assert R.bracket(0, 0) == {}
    R3 = o_identity_realization(3)
    assert R3.bracket(idx(R3, 1, 2), idx(R3, 2, 3)) == {idx(R3, 1, 3): 1}
    assert o_identity_realization(4).dim == 6
    assert not R3.is_graded
    with pytest.raises(RealizationError):
        R3.cartan()


@pytest.mark.parametrize("N", [2, 3, 4])
def test_general_reproduces_split(N):
    for kind, split in (("o", o_split_realization), ("sp", sp_split_realization)):
        if kind == "sp" and N % 2:
            continue
        R = split(N)
        G = general_realization(kind, split_form(kind, N))
        assert G.dim == R.dim
        # compare brackets through the gl embedding
        for a, b in itertools.combinations(range(G.dim), 2):
            m = G.element_matrix(G.bracket(a, b))
            coords = R.coordinates(m)
            assert R.element_matrix(coords) == m


def test_general_identity_is_o1():
    G = general_realization("o", linalg.identity(3))
    R = o_identity_realization(3)
    assert G.dim == R.dim
    for a, b in itertools.combinations(range(G.dim), 2):
        assert G.element_matrix(G.bracket(a, b)) == R.element_matrix(R.coordinates(G.element_matrix(G.bracket(a, b))))


def test_general_rejects_bad_forms():
    with pytest.raises((RealizationError, ValueError)):
        general_realization("sp", linalg.identity(2))
    with pytest.raises((RealizationError, ValueError)):
        general_realization("o", [[1, 0], [0, 0]])


def test_aliases():
    assert normalize_kind("sp") == "sp-split"
    assert normalize_kind("o-id") == "o-identity"
    assert make_realization("o", 3) is o_split_realization(3)
    with pytest.raises(RealizationError):
        make_realization("sp-general", 2)


def all_realizations(max_n):
    for N in range(1, max_n + 1):
        yield gl_realization(N)
        if N >= 2:
            yield o_identity_realization(N)
            yield o_split_realization(N)
        if N % 2 == 0:
            yield sp_split_realization(N)


def _jacobi(R):
    def br(x, y):
        return R.bracket_combo(x, y)

    for a, b, c in itertools.combinations(range(R.dim), 3):
        A, B, C = {a: 1}, {b: 1}, {c: 1}
        total: dict = {}
        for part in (br(br(A, B), C), br(br(B, C), A), br(br(C, A), B)):
            for key, v in part.items():
                total[key] = total.get(key, 0) + v
        if any(total.values()):
            return (a, b, c)
    return None


@pytest.mark.parametrize("R", list(all_realizations(6)), ids=lambda R: R.descriptor())
def test_jacobi(R):
    assert _jacobi(R) is None


@pytest.mark.parametrize("R", [R for R in all_realizations(6) if R.kind != "o-identity"], ids=lambda R: R.descriptor())
def test_closed_form_matches_embedding(R):
    for a, ga in enumerate(R.basis):
        for b, gb in enumerate(R.basis):
            if a != b:
                assert closed_form_bracket(R, ga.i, ga.j, gb.i, gb.j) == R.bracket(a, b)


@pytest.mark.parametrize("R", [sp_split_realization(2), sp_split_realization(4), o_split_realization(3), o_split_realization(4), gl_realization(3)], ids=lambda R: R.descriptor())
def test_infinitesimal_invariance(R):
    # ([X, M_ij])_ij = tX M - M tX for the defining matrix X of each basis generator
    M = generator_matrix(R)
    N = R.N
    for g in range(R.dim):
        X = R.matrices[g]
        x = EnvElement.generator(R, g)
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                lhs = env_commutator(x, M[i - 1, j - 1])
                rhs = EnvElement.zero(R)
                for t in range(1, N + 1):
                    rhs = rhs + M[t - 1, j - 1].scale(X.get((t, i), 0)) - M[i - 1, t - 1].scale(X.get((j, t), 0))
                assert lhs == rhs, (str(R.basis[g]), i, j)


@pytest.mark.parametrize("R", [sp_split_realization(4), o_split_realization(3), general_realization("o", [[2, 1], [1, 3]])], ids=lambda R: R.descriptor())
def test_trace_vanishes(R):
    assert not generator_matrix(R).trace()


def test_adjustments():
    assert adjustment_diagonal(sp_split_realization(2), "tilde") == [0, -1]
    assert adjustment_diagonal(o_split_realization(3), "tilde") == [0, Fraction(1, 2), 1]
    assert adjustment_diagonal(sp_split_realization(2), "hat") == [1, 0]


def test_graded_order():
    R = sp_split_realization(4)
    grades = [R.grading[k] for k in range(R.dim)]
    order = {"minus": 0, "zero": 1, "plus": 2}
    assert grades == sorted(grades, key=order.get)


def test_random_general_forms_satisfy_jacobi():
    rng = random.Random(7)
    for _ in range(3):
        g = linalg.random_invertible(3, rng)
        S = linalg.matmul(linalg.transpose(g), g)
        assert _jacobi(general_realization("o", S)) is None
