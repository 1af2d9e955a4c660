"""Executable instances of the exterior/symmetric-algebra identities.

Every entry of :data:`LEMMAS` produces a list of ``(label, lhs, rhs)`` cases at
a given size; a lemma passes when every pair is equal as exact elements.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Iterator, Optional

from . import linalg
from .coeff import U, UnivPoly
from .elements import coeff_R
from .matrices import (
    NCMatrix,
    column_det,
    column_per,
    generator_matrix,
    multiplicity_factorial,
    per_k,
    submatrix_with_shifts,
    sym_det,
    weak_sequences,
)
from .pbw import EnvElement, env_sum
from .realizations import epsilon, gl_realization, prime, sp_split_realization, split_form
from .weyl import (
    EXTERIOR,
    SYMMETRIC,
    ExtElement,
    SpCalculus,
    block_transform,
    bracket,
    eta,
    eta_dag,
    ext_sum,
    fischer_pair,
    interleaved_top,
    inverse_transpose,
    transform,
    xi,
)

Case = tuple  # (label, lhs, rhs)

# generic shift parameters: distinct, non-integral offsets so accidental cancellations are unlikely
SHIFTS = [U, U - 1, U + Fraction(3, 2), U + Fraction(1, 3)]


@dataclass(frozen=True)
class LemmaDef:
    id: str
    title: str
    algebra: str  # "gl" or "sp"
    sizes: tuple  # default (N, k_max) pairs
    cases: Callable[[int, int], Iterator[Case]]


# -- gl_N identities ------------------------------------------------------------------------


def _E(N: int) -> NCMatrix:
    return generator_matrix(gl_realization(N))


def _product(factors, R, flavor):
    out = ExtElement.scalar(R, flavor, 1)
    for f in factors:
        out = out * f
    return out


def _rect(Z: NCMatrix, alpha, beta, shifts=None) -> NCMatrix:
    """(Z_{alpha_i beta_j} + delta_{alpha_i beta_j} a_j)."""
    rows = []
    for ai in alpha:
        row = []
        for j, bj in enumerate(beta):
            e = Z.rows[ai - 1][bj - 1]
            if shifts is not None and ai == bj:
                e = e + UnivPoly.coerce(shifts[j])
            row.append(e)
        rows.append(row)
    return NCMatrix(Z.R, rows)


def _sym_per_rect(Z: NCMatrix, alpha, beta) -> EnvElement:
    """(1/k!) sum over (sigma, sigma') of prod_t Z_{alpha_sigma(t) beta_sigma'(t)}."""
    k = len(alpha)
    R = Z.R
    terms = []
    for s in itertools.permutations(range(k)):
        for s2 in itertools.permutations(range(k)):
            p = EnvElement.scalar(R, 1)
            for t in range(k):
                p = p * Z.rows[alpha[s[t]] - 1][beta[s2[t]] - 1]
            terms.append(p)
    return env_sum(terms, R).scale(Fraction(1, factorial(k)))


def _eq2_1(N, kmax):
    E = _E(N)
    R = E.R
    a = SHIFTS[:N]
    lhs = _product((eta(E, j, a[j - 1], EXTERIOR) for j in range(1, N + 1)), R, EXTERIOR)
    rhs = ExtElement.monomial(R, EXTERIOR, range(N), column_det(E.add_diag(a)))
    yield (f"N={N}", lhs, rhs)


def _eq2_2(N, kmax):
    E = _E(N)
    R = E.R
    a = SHIFTS[:N]
    lhs = _product((xi(E, x, EXTERIOR) for x in a), R, EXTERIOR)
    rhs = ExtElement.monomial(R, EXTERIOR, interleaved_top(N), sym_det(E, a).scale(factorial(N)))
    yield (f"N={N}", lhs, rhs)


def _eq2_3(N, kmax):
    E = _E(N)
    R = E.R
    a = U
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            lhs = eta(E, i, a + 1, EXTERIOR) * eta(E, j, a, EXTERIOR) + eta(E, j, a + 1, EXTERIOR) * eta(E, i, a, EXTERIOR)
            yield (f"i={i},j={j}", lhs, ExtElement.zero(R, EXTERIOR))


def _e_word(R, alpha, flavor=SYMMETRIC, star=False):
    off = R.N if star else 0
    return ExtElement.monomial(R, flavor, [off + a - 1 for a in alpha])


def _eq2_4(N, kmax):
    E = _E(N)
    R = E.R
    for k in range(1, kmax + 1):
        for beta in weak_sequences(N, k):
            lhs = _product((eta(E, b) for b in beta), R, SYMMETRIC)
            rhs = ext_sum(
                (
                    _e_word(R, alpha).scale(column_per(_rect(E, alpha, beta)).scale(Fraction(1, multiplicity_factorial(alpha))))
                    for alpha in weak_sequences(N, k)
                ),
                R,
            )
            yield (f"beta={beta}", lhs, rhs)


def _eq2_5(N, kmax):
    E = _E(N)
    R = E.R
    for k in range(1, kmax + 1):
        a = SHIFTS[:k]
        for beta in weak_sequences(N, k):
            lhs = _product((eta(E, b, a[t]) for t, b in enumerate(beta)), R, SYMMETRIC)
            rhs = ext_sum(
                (
                    _e_word(R, alpha).scale(column_per(_rect(E, alpha, beta, a)).scale(Fraction(1, multiplicity_factorial(alpha))))
                    for alpha in weak_sequences(N, k)
                ),
                R,
            )
            yield (f"beta={beta}", lhs, rhs)


def _eq2_6(N, kmax):
    E = _E(N)
    R = E.R
    X = xi(E)
    for k in range(1, kmax + 1):
        lhs = (X ** k).scale(Fraction(1, factorial(k)))
        parts = []
        for alpha in weak_sequences(N, k):
            for beta in weak_sequences(N, k):
                c = _sym_per_rect(E, alpha, beta).scale(Fraction(1, multiplicity_factorial(alpha) * multiplicity_factorial(beta)))
                parts.append(_e_word(R, alpha) * _e_word(R, beta, star=True).scale(c))
        yield (f"k={k}", lhs, ext_sum(parts, R))


def _eq2_7(N, kmax):
    E = _E(N)
    R = E.R
    for k in range(1, kmax + 1):
        a = SHIFTS[:k]
        prod = _product((xi(E, x) for x in a), R, SYMMETRIC)
        yield (f"k={k},shifted", bracket(prod).scale(Fraction(1, factorial(k))), per_k(E, k, a))
        yield (f"k={k},plain", bracket(xi(E) ** k).scale(Fraction(1, factorial(k))), per_k(E, k))


def _eq2_8(N, kmax):
    E = _E(N)
    R = E.R
    for k in range(1, kmax + 1):
        a = [Fraction(2), Fraction(-1), Fraction(1, 2), Fraction(0)][:k]
        for alpha in weak_sequences(N, k):
            lhs = column_per(submatrix_with_shifts(E, alpha, [U + x for x in a]))
            rhs = bracket(_product((eta_dag(E, al, U + a[t]) for t, al in enumerate(alpha)), R, SYMMETRIC))
            yield (f"alpha={alpha}", lhs, rhs)


def eta_dagger_exchange_cases(N: int, row: bool):
    E = _E(N)
    R = E.R
    a = U
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            lhs = eta_dag(E, i, a, row=row) * eta_dag(E, j, a + 1, row=row) - eta_dag(E, j, a, row=row) * eta_dag(E, i, a + 1, row=row)
            yield (f"i={i},j={j}", lhs, ExtElement.zero(R, SYMMETRIC))


def _eq2_9(N, kmax):
    # eta_j(u) = sum_i e_i E_ij(u), the convention shared with the symplectic identities
    yield from eta_dagger_exchange_cases(N, row=False)


def _random_phi(R, rng, degree, count, scalar):
    M = 2 * R.N
    out = ExtElement.zero(R, SYMMETRIC)
    for _ in range(count):
        word = [rng.randrange(M) for _ in range(rng.randint(0, degree))]
        c = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        if scalar:
            coeff = EnvElement.scalar(R, c)
        else:
            coeff = EnvElement.generator(R, rng.randrange(R.dim)).scale(c) + c
        out = out + ExtElement.monomial(R, SYMMETRIC, word, coeff)
    return out


def _lem2_1(N, kmax, seed=2024):
    R = gl_realization(N)
    rng = random.Random(seed + N)
    for trial in range(5):
        g = linalg.random_invertible(2 * N, rng)
        phi = _random_phi(R, rng, 3, 6, scalar=False)
        psi = _random_phi(R, rng, 3, 6, scalar=True)
        # bias toward overlap so the pairing is not trivially zero
        psi = psi + ExtElement(R, SYMMETRIC, {w: EnvElement.scalar(R, 1) for w in phi.terms})
        lhs = fischer_pair(phi, psi)
        rhs = fischer_pair(transform(phi, g), transform(psi, inverse_transpose(g)))
        yield (f"trial={trial}", lhs, rhs)


# -- split sp identities ------------------------------------------------------------------------


_CALC: dict = {}


def calculus(N: int) -> SpCalculus:
    if N not in _CALC:
        _CALC[N] = SpCalculus(sp_split_realization(N))
    return _CALC[N]


def _zero(C):
    return ExtElement.zero(C.R, SYMMETRIC)


def _lem5_2(N, kmax):
    C = calculus(N)
    u = U
    for j in range(1, N + 1):
        for l in range(1, N + 1):
            paired = prime(j, N) == l
            lhs = C.eta(j, u) * C.eta(l, u + 1) - C.eta(l, u) * C.eta(j, u + 1)
            rhs = C.theta.scale(epsilon(j, N)) if paired else _zero(C)
            yield (f"eta j={j},l={l}", lhs, rhs)
            lhs = C.eta_dag(j, u) * C.eta_dag(l, u + 1) - C.eta_dag(l, u) * C.eta_dag(j, u + 1)
            stars = ExtElement.monomial(C.R, SYMMETRIC, [N + j - 1, N + l - 1])
            rhs = (C.theta * stars).scale(epsilon(j, N)) if paired else _zero(C)
            yield (f"eta-dagger j={j},l={l}", lhs, rhs)
    alt = ext_sum((C.eta(prime(b, N), u) * ExtElement.monomial(C.R, SYMMETRIC, [b - 1], epsilon(b, N)) for b in range(1, N + 1)), C.R)
    yield ("theta from eta", alt, C.theta)


def _lem5_3(N, kmax):
    C = calculus(N)
    n = N // 2
    u = U
    for half in (range(1, n + 1), range(n + 1, N + 1)):
        for i in half:
            for j in half:
                yield (f"i={i},j={j}", C.eta_dag(i, u) * C.eta_dag(j, u + 1), C.eta_dag(j, u) * C.eta_dag(i, u + 1))


def _lem5_4(N, kmax):
    C = calculus(N)
    for k in range(0, kmax + 1):
        yield (f"W halves k={k}", C.W(k), C.W_from_halves(k))
        if k >= 1:
            yield (f"k={k}", C.V(k), C.W(k) + (C.V(k - 1) * C.tau_plus).scale(k))


def _lem5_5(N, kmax):
    C = calculus(N)
    u = U
    lhs = C.xi_plus(u - 1) * C.xi_minus(u) - C.xi_minus(u - 1) * C.xi_plus(u)
    yield ("", lhs, C.theta * C.rho_star)


def _lem5_6(N, kmax):
    C = calculus(N)
    u = U
    for j in range(1, N + 1):
        yield (f"eta j={j}", C.eta(j, u) * C.theta, C.theta * C.eta(j, u + 2))
    yield ("xi", C.xi(u) * C.theta, C.theta * C.xi(u + 2))
    yield ("xi-", C.xi_minus(u) * C.theta, C.theta * C.xi_minus(u + 2))
    yield ("xi+", C.xi_plus(u) * C.theta, C.theta * C.xi_plus(u + 2))


def _lem5_7(N, kmax):
    C = calculus(N)
    u = U
    tr = C.theta * C.rho_star
    for k in range(1, kmax + 1):
        lhs = C.xip_rising(u, k) * C.xi_minus(u + k) - C.xi_minus(u) * C.xip_rising(u + 1, k)
        yield (f"k={k}", lhs, (C.xip_rising(u, k - 1) * tr).scale(k))


def _lem5_8(N, kmax):
    C = calculus(N)
    u = U
    tr = C.theta * C.rho_star
    for k in range(0, kmax):
        lhs = C.V(k, u) * C.xi(u + k) - C.V(k + 1, u)
        rhs = (C.V(k - 1, u) * tr).scale(k) if k else _zero(C)
        yield (f"k={k}", lhs, rhs)


def theta_rho_power(C, l):
    """Theta^l rho*^l."""
    return (C.theta ** l) * (C.rho_star ** l)


def _lem5_9(N, kmax):
    C = calculus(N)
    u = U
    for k in range(0, kmax + 1):
        rhs = ext_sum(
            ((C.V(k - 2 * l, u) * theta_rho_power(C, l)).scale(coeff_R(k, l)) for l in range(k // 2 + 1)), C.R
        )
        yield (f"k={k}", C.xi_rising(u, k), rhs)


def _lem5_10(N, kmax):
    C = calculus(N)
    u = U
    for k in range(0, kmax + 1):
        rhs = ext_sum(
            ((C.xi_rising(u, k - 2 * l) * theta_rho_power(C, l)).scale((-1) ** l * coeff_R(k, l)) for l in range(k // 2 + 1)),
            C.R,
        )
        yield (f"k={k}", C.V(k, u), rhs)


def _lem5_11(N, kmax):
    C = calculus(N)
    u = U
    top = min(kmax, 2)
    for k in range(0, top + 1):
        for l in range(0, top + 1):
            for m in range(0, top + 1):
                if l == 0:
                    # the second term carries Theta^(l-1); the relation is stated for l >= 1
                    continue
                total = bracket(C.xi_double(u, k) * theta_rho_power(C, l - 1) * C.tau ** m * C.omega).scale(l)
                if k:
                    total = total + bracket(C.xi_double(u, k - 1) * theta_rho_power(C, l) * C.tau ** m).scale(k)
                yield (f"k={k},l={l},m={m}", total, EnvElement.zero(C.R))


def theta_rho_bracket_rhs(C, k, l, u=U):
    """l <Xi^{rising k}(u) Theta^(l-1) rho*^(l-1) omega>."""
    return bracket(C.xi_rising(u, k) * theta_rho_power(C, l - 1) * C.omega).scale(l)


def _lem5_12(N, kmax):
    # the bracket of k W'_{k-1} Theta^l rho*^l is minus the right side; this is the
    # form produced by combining the double-rising expansion with lem5.11
    C = calculus(N)
    u = U
    for k in range(1, kmax + 1):
        for l in range(1, min(kmax, 2) + 1):
            lhs = bracket(C.W_prime(k - 1, u) * theta_rho_power(C, l)).scale(k)
            rhs = theta_rho_bracket_rhs(C, k, l, u).scale(-1)
            yield (f"k={k},l={l}", lhs, rhs)


def _lem5_1(N, kmax):
    C = calculus(N)
    for k in range(0, kmax + 1):
        yield (f"W' forms k={k}", C.W_prime(k), C.W_prime_alt(k))
        yield (f"k={k}", bracket(C.W(k)), bracket(C.W_prime(k)))


TRANSFORM_TUPLES = [
    (1, 1, 0, 1),
    (2, 3, 5, 7),
    (Fraction(1, 2), -1, 3, 2),
    (1, 0, 1, 1),
]


def _eq5_6(N, kmax):
    C = calculus(N)
    J = split_form("sp", N)
    X = C.xi()
    for a, b, c, d in TRANSFORM_TUPLES:
        a, b, c, d = (Fraction(x) for x in (a, b, c, d))
        g = block_transform(N, a, b, c, d, J)
        tag = f"(a,b,c,d)=({a},{b},{c},{d})"

        def g_of(x):
            return transform(x, g)

        yield (f"tau {tag}", g_of(C.tau), C.tau.scale(a * d - b * c))
        yield (f"rho {tag}", g_of(C.rho), C.rho.scale(a * a) + C.rho_star.scale(c * c) + C.omega.scale(a * c))
        yield (f"xi {tag}", g_of(X), X.scale(a * d + b * c) + C.theta.scale(a * b) + C.theta_star.scale(c * d))
        yield (f"theta {tag}", g_of(C.theta), C.theta.scale(a * a) + C.theta_star.scale(c * c) + X.scale(2 * a * c))
        yield (
            f"omega {tag}",
            g_of(C.omega),
            C.omega.scale(a * d + b * c) + C.rho.scale(2 * a * b) + C.rho_star.scale(2 * c * d),
        )
        yield (f"rho* {tag}", g_of(C.rho_star), C.rho.scale(b * b) + C.rho_star.scale(d * d) + C.omega.scale(b * d))
        yield (
            f"theta* {tag}",
            g_of(C.theta_star),
            C.theta.scale(b * b) + C.theta_star.scale(d * d) + X.scale(2 * b * d),
        )
        yield (f"inverse-transpose tau {tag}", transform(C.tau, inverse_transpose(g)), C.tau.scale(1 / (a * d - b * c)))


LEMMAS: dict[str, LemmaDef] = {
    d.id: d
    for d in [
        LemmaDef("eq2.1", "ordered eta product is e_1..e_N times the column-determinant", "gl", ((2, 0), (3, 0)), _eq2_1),
        LemmaDef("eq2.2", "product of Xi's is N! e_1e*_1..e_Ne*_N times Det", "gl", ((2, 0), (3, 0)), _eq2_2),
        LemmaDef("eq2.3", "eta_i(a+1) eta_j(a) + eta_j(a+1) eta_i(a) = 0 (exterior)", "gl", ((2, 0), (3, 0)), _eq2_3),
        LemmaDef("eq2.4", "eta_beta expands in per(Z_alpha beta)", "gl", ((2, 3), (3, 2)), _eq2_4),
        LemmaDef("eq2.5", "shifted eta products expand in shifted permanents", "gl", ((2, 3), (3, 2)), _eq2_5),
        LemmaDef("eq2.6", "divided powers of Xi expand in Per(Z_alpha beta)", "gl", ((2, 3), (3, 2)), _eq2_6),
        LemmaDef("eq2.7", "Per_k is the bracket of a Xi product", "gl", ((2, 3), (3, 2)), _eq2_7),
        LemmaDef("eq2.8", "column-permanents are brackets of eta-dagger products", "gl", ((2, 3), (3, 2)), _eq2_8),
        LemmaDef("eq2.9", "eta-dagger exchange relation (symmetric)", "gl", ((2, 0), (3, 0)), _eq2_9),
        LemmaDef("lem2.1", "Fischer pairing is invariant under (g, g^-t)", "gl", ((2, 0), (3, 0)), _lem2_1),
        LemmaDef("lem5.2", "eta commutation produces Theta", "sp", ((2, 0), (4, 0)), _lem5_2),
        LemmaDef("lem5.3", "eta-daggers from the same half commute after shift", "sp", ((2, 0), (4, 0)), _lem5_3),
        LemmaDef("lem5.4", "V_k = W_k + k V_{k-1} tau_+", "sp", ((2, 3), (4, 2)), _lem5_4),
        LemmaDef("lem5.5", "Xi_+(u-1)Xi_-(u) - Xi_-(u-1)Xi_+(u) = Theta rho*", "sp", ((2, 0),), _lem5_5),
        LemmaDef("lem5.6", "eta_j(u) Theta = Theta eta_j(u+2)", "sp", ((2, 0), (4, 0)), _lem5_6),
        LemmaDef("lem5.7", "rising powers of Xi_+ past Xi_-", "sp", ((2, 3),), _lem5_7),
        LemmaDef("lem5.8", "V_k(u) Xi(u+k) - V_{k+1}(u) = k V_{k-1}(u) Theta rho*", "sp", ((2, 3),), _lem5_8),
        LemmaDef("lem5.9", "Xi rising power in terms of V", "sp", ((2, 3),), _lem5_9),
        LemmaDef("lem5.10", "V in terms of Xi rising powers", "sp", ((2, 3),), _lem5_10),
        LemmaDef("lem5.11", "bracket relation from the variable transformation", "sp", ((2, 2),), _lem5_11),
        LemmaDef("lem5.12", "k <W'_{k-1} Theta^l rho*^l> = -l <Xi rising k Theta^(l-1) rho*^(l-1) omega>", "sp", ((2, 3),), _lem5_12),
        LemmaDef("lem5.1", "<W_k(u)> = <W'_k(u)>", "sp", ((2, 3),), _lem5_1),
        LemmaDef("eq5.6", "block variable transformation on the named elements", "sp", ((2, 0), (4, 0)), _eq5_6),
    ]
}


def lemma_ids() -> list[str]:
    return list(LEMMAS)


def lemma_cases(lemma_id: str, N: Optional[int] = None, k: Optional[int] = None) -> Iterator[tuple[int, Case]]:
    """Yield (N, case) for the configured sizes, or the single requested size."""
    if lemma_id not in LEMMAS:
        raise KeyError(f"unknown lemma {lemma_id!r}; known: {', '.join(LEMMAS)}")
    d = LEMMAS[lemma_id]
    if N is None:
        sizes = d.sizes
    else:
        default_k = max((kk for nn, kk in d.sizes), default=0)
        sizes = ((N, default_k if k is None else k),)
    for n, kmax in sizes:
        if d.algebra == "sp" and n % 2:
            raise ValueError(f"{lemma_id} needs an even N")
        for case in d.cases(n, kmax):
            yield n, case
