from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from capelli.coeff import U, UnivPoly
from capelli.elements import build_element
from capelli.oracle import oracle_mul, random_element, structure_constants
from capelli.pbw import (
    EnvElement,
    RealizationMismatch,
    act_on_highest_weight,
    eigenvalue,
    env_commutator,
    env_mul,
    first_term,
    hc_project,
    render,
    weight_from_partition,
)
from capelli.realizations import (
    RealizationError,
    gl_realization,
    o_identity_realization,
    o_split_realization,
    sp_split_realization,
)

E = EnvElement.gen


def test_add_scale_examples():
    R = gl_realization(2)
    e = E(R, 1, 2) + 3
    assert e + EnvElement.zero(R) == e
    assert not (e - e)
    assert E(R, 1, 1).scale(2) == E(R, 1, 1) + E(R, 1, 1)


def test_mul_examples():
    R = gl_realization(2)
    assert render(env_mul(E(R, 1, 2), E(R, 2, 1))) == "E[1,1] - E[2,2] + E[2,1]*E[1,2]"
    a = E(R, 1, 2) * E(R, 2, 2) + U
    assert EnvElement.scalar(R, 1) * a == a
    S = sp_split_realization(2)
    assert env_mul(E(S, 1, 2), E(S, 2, 1)) == E(S, 2, 1) * E(S, 1, 2) + E(S, 1, 1).scale(4)


def test_commutator_examples():
    R = gl_realization(2)
    assert not env_commutator(E(R, 1, 1), E(R, 1, 1))
    assert env_commutator(E(R, 1, 1), E(R, 1, 2)) == E(R, 1, 2)
    C = build_element("C.gl", 2)
    for i in (1, 2):
        for j in (1, 2):
            assert not env_commutator(C, E(R, i, j))


def test_mismatch_raises():
    with pytest.raises(RealizationMismatch):
        E(gl_realization(2), 1, 1) * E(gl_realization(3), 1, 1)


def test_hc_projection_examples():
    R = gl_realization(2)
    assert not hc_project(E(R, 2, 1) * E(R, 1, 2))
    C = build_element("C.gl", 2)
    assert C == E(R, 1, 1) * E(R, 2, 2) + E(R, 1, 1) * U + E(R, 2, 2) * (U + 1) + U * (U + 1) - E(R, 2, 1) * E(R, 1, 2)
    assert hc_project(C) == C + E(R, 2, 1) * E(R, 1, 2)
    one = EnvElement.scalar(R, 1)
    assert hc_project(one) == one
    with pytest.raises(RealizationError):
        hc_project(EnvElement.generator(o_identity_realization(3), 0))


def test_eigenvalue_examples():
    C = build_element("C.gl", 2)
    assert eigenvalue(C, weight_from_partition(C.R, (1, 0))) == U**2 + 2 * U
    C1 = build_element("C.gl", 1)
    assert eigenvalue(C1, weight_from_partition(C1.R, (Fraction(5, 2),))) == U + Fraction(5, 2)
    D = build_element("D.sp", 2, 1)
    for lam in (0, 3, 7):
        assert eigenvalue(D, weight_from_partition(D.R, (lam,))) == 2 * U


def test_weight_from_partition():
    R = gl_realization(2)
    w = weight_from_partition(R, (1, 0))
    assert {str(R.basis[k]): v for k, v in w.items()} == {"E[1,1]": 1, "E[2,2]": 0}
    S = sp_split_realization(2)
    assert {str(S.basis[k]): v for k, v in weight_from_partition(S, (3,)).items()} == {"F[1,1]": 3}
    O = o_split_realization(3)
    assert {str(O.basis[k]): v for k, v in weight_from_partition(O, (2,)).items()} == {"F[1,1]": 2}
    with pytest.raises(RealizationError):
        weight_from_partition(R, (1,))


REALIZATIONS = [gl_realization(2), gl_realization(3), sp_split_realization(2), o_split_realization(3), o_identity_realization(3), sp_split_realization(4), o_split_realization(4)]


def test_associativity_100_triples():
    rng = random.Random(11)
    for t in range(100):
        R = REALIZATIONS[t % len(REALIZATIONS)]
        a, b, c = (random_element(R, rng, degree=3) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_oracle_agrees_on_200_products():
    rng = random.Random(3)
    small = [R for R in REALIZATIONS if R.N <= 3]
    consts = {R.descriptor(): structure_constants(R) for R in small}
    for t in range(200):
        R = small[t % len(small)]
        a = random_element(R, rng, degree=4)
        b = random_element(R, rng, degree=4)
        assert a * b == oracle_mul(a, b, rng, consts[R.descriptor()])


def test_oracle_small_examples():
    R = gl_realization(2)
    assert oracle_mul(E(R, 1, 2), E(R, 2, 1)) == E(R, 1, 2) * E(R, 2, 1)
    one = EnvElement.scalar(R, 1)
    assert oracle_mul(one, one) == one


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_rewrite_order_independent(seed):
    R = gl_realization(3)
    rng = random.Random(seed)
    a = random_element(R, rng, degree=3)
    b = random_element(R, rng, degree=3)
    assert oracle_mul(a, b, random.Random(seed + 1)) == oracle_mul(a, b, random.Random(seed + 2))


def _top(e):
    d = e.degree
    return {m: c for m, c in e.terms.items() if len(m) == d}


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_filtration(seed):
    R = sp_split_realization(4)
    rng = random.Random(seed)
    a = random_element(R, rng, degree=3)
    b = random_element(R, rng, degree=3)
    p = a * b
    if not a or not b:
        return
    assert p.degree <= a.degree + b.degree
    # top part of the product is the commutative product of top parts
    expect: dict = {}
    for m1, c1 in _top(a).items():
        for m2, c2 in _top(b).items():
            m = tuple(sorted(m1 + m2))
            expect[m] = expect.get(m, UnivPoly()) + c1 * c2
    expect = {m: c for m, c in expect.items() if c}
    got = {m: c for m, c in p.terms.items() if len(m) == a.degree + b.degree}
    assert got == expect


@pytest.mark.parametrize(
    "name,N,k,lam",
    [("C.gl", 2, None, (2, 1)), ("C.gl", 3, None, (2, 1, 0)), ("D.gl.k", 3, 2, (1, 1, 0)), ("D.sp", 2, 2, (2,)), ("C.oS0", 3, None, (1,))],
)
def test_eigenvalue_matches_action(name, N, k, lam):
    e = build_element(name, N, k)
    w = weight_from_partition(e.R, lam)
    assert act_on_highest_weight(e, w) == {(): eigenvalue(e, w)}


def test_first_term_and_subs():
    R = gl_realization(2)
    e = E(R, 1, 2) * E(R, 2, 1) + U
    assert first_term(e) == "u"
    assert e.subs_u(2).scalar_part() == UnivPoly.const(2)
