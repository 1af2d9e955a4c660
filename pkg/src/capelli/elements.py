"""Named central elements and the closed-form eigenvalues they should have.

Each element is built from a generator matrix with a staircase of diagonal
shifts.  Column forms (``C.*``, ``D.*``) use column-determinants or
column-permanents of minors; primed forms (``C'.*``, ``D'.*``) use the
symmetrized Det_k / Per_k.  ``u`` defaults to the formal parameter.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Optional, Sequence

from .coeff import ONE, U, UnivPoly, product, rat
from .matrices import (
    NCMatrix,
    adjusted_matrix,
    column_det,
    column_per,
    det_k,
    generator_matrix,
    multiplicity_factorial,
    per_k,
    strict_sequences,
    submatrix_with_shifts,
    sym_det,
    weak_sequences,
)
from .pbw import EnvElement, env_sum
from .realizations import LieRealization, RealizationError, make_realization

log = logging.getLogger(__name__)

# -- shift families -------------------------------------------------------------------


def natural(k: int) -> list[Fraction]:
    """(k-1, k-2, ..., 0)."""
    return [Fraction(k - 1 - t) for t in range(k)]


def tilde_natural(k: int) -> list[Fraction]:
    """Symmetric staircase: (k/2-1, ..., 0, 0, ..., -k/2+1) for even k,
    (k/2-1, ..., 1/2, 0, -1/2, ..., -k/2+1) for odd k."""
    half = Fraction(k, 2)
    top = [half - 1 - t for t in range(k // 2)]
    if k % 2:
        return top + [Fraction(0)] + [-x for x in reversed(top)]
    return top + [-x for x in reversed(top)]


def desc_half(k: int) -> list[Fraction]:
    """(k/2-1, k/2-2, ..., -k/2)."""
    return [Fraction(k, 2) - 1 - t for t in range(k)]


def hat_seq(k: int) -> list[Fraction]:
    """(k/2, k/2-1, ..., -k/2+1)."""
    return [Fraction(k, 2) - t for t in range(k)]


def _plus(u, seq) -> list[UnivPoly]:
    u = UnivPoly.coerce(u)
    return [u + s for s in seq]


def _minus(u, seq) -> list[UnivPoly]:
    u = UnivPoly.coerce(u)
    return [u - s for s in seq]


# -- generic minor sums -----------------------------------------------------------------


def column_det_minors(Z: NCMatrix, k: int, shifts: Sequence) -> EnvElement:
    """Sum over strict alpha of det(Z_alpha + diag(shifts))."""
    if k == 0:
        return EnvElement.scalar(Z.R, 1)
    if k > Z.size:
        log.warning("minor size %d exceeds matrix size %d; the sum is empty", k, Z.size)
    return env_sum((column_det(submatrix_with_shifts(Z, a, shifts)) for a in strict_sequences(Z.size, k)), Z.R)


def column_per_minors(Z: NCMatrix, k: int, shifts: Sequence) -> EnvElement:
    """Sum over weak alpha of (1/alpha!) per(Z_alpha + 1_alpha diag(shifts))."""
    if k == 0:
        return EnvElement.scalar(Z.R, 1)
    parts = (
        column_per(submatrix_with_shifts(Z, a, shifts)).scale(Fraction(1, multiplicity_factorial(a)))
        for a in weak_sequences(Z.size, k)
    )
    return env_sum(parts, Z.R)


def _general_kind(kind: str) -> str:
    return kind.split("-")[0] + "-general"


def _require(R: LieRealization, kind: str, any_form: bool = False) -> None:
    if R.kind != kind and not (any_form and R.kind == _general_kind(kind)):
        raise RealizationError(f"expected a {kind} realization, got {R.descriptor()}")


def _check_k(R: LieRealization, k: int) -> None:
    if k < 0:
        raise ValueError("k must be nonnegative")


# -- gl_N -------------------------------------------------------------------------------


def gl_capelli_det(R: LieRealization, u=U) -> EnvElement:
    """det(E + u + diag(N-1, ..., 0))."""
    _require(R, "gl")
    return column_det(generator_matrix(R).add_diag(_plus(u, natural(R.N))))


def gl_capelli_minors(R: LieRealization, k: int, u=U) -> EnvElement:
    """Sum over strict alpha of det(E_alpha + u + diag(k-1, ..., 0)); zero when k > N."""
    _require(R, "gl")
    _check_k(R, k)
    return column_det_minors(generator_matrix(R), k, _plus(u, natural(k)))


def gl_permanent_minors(R: LieRealization, k: int, u=U) -> EnvElement:
    """Sum over weak alpha of (1/alpha!) per(E_alpha + u 1_alpha - 1_alpha diag(k-1, ..., 0))."""
    _require(R, "gl")
    _check_k(R, k)
    return column_per_minors(generator_matrix(R), k, _minus(u, natural(k)))


def gl_sym_det(R: LieRealization, u=U) -> EnvElement:
    _require(R, "gl")
    return sym_det(generator_matrix(R).add_scalar(u), natural(R.N))


def gl_sym_det_minors(R: LieRealization, k: int, u=U) -> EnvElement:
    """Det_k(E + u; k-1, ..., 0)."""
    _require(R, "gl")
    return det_k(generator_matrix(R).add_scalar(u), k, natural(k))


def gl_sym_per_minors(R: LieRealization, k: int, u=U) -> EnvElement:
    """Per_k(E + u; -(k-1), ..., 0)."""
    _require(R, "gl")
    return per_k(generator_matrix(R).add_scalar(u), k, [-s for s in natural(k)])


# -- o(1): alternating matrices --------------------------------------------------------------


def o_identity_det(R: LieRealization, u=U) -> EnvElement:
    _require(R, "o-identity")
    return column_det(generator_matrix(R).add_diag(_plus(u, natural(R.N))))


def o_identity_sym_det(R: LieRealization, u=U) -> EnvElement:
    _require(R, "o-identity")
    return sym_det(generator_matrix(R).add_scalar(u), natural(R.N))


def o_identity_minors(R: LieRealization, k: int, u=U) -> EnvElement:
    _require(R, "o-identity")
    return column_det_minors(generator_matrix(R), k, _plus(u, natural(k)))


def o_identity_sym_minors(R: LieRealization, k: int, u=U) -> EnvElement:
    _require(R, "o-identity")
    return det_k(generator_matrix(R).add_scalar(u), k, natural(k))


# -- split orthogonal ---------------------------------------------------------------------


def o_split_det(R: LieRealization, u=U) -> EnvElement:
    """det(F + u + diag(tilde-natural_N))."""
    _require(R, "o-split")
    return column_det(generator_matrix(R).add_diag(_plus(u, tilde_natural(R.N))))


def o_split_sym_det(R: LieRealization, u=U) -> EnvElement:
    _require(R, "o-split", any_form=True)
    return sym_det(generator_matrix(R).add_scalar(u), tilde_natural(R.N))


def o_split_minors(R: LieRealization, k: int, u=U) -> EnvElement:
    """Sum over strict alpha of det(F~_alpha + u + diag(k/2-1, ..., -k/2))."""
    _require(R, "o-split")
    return column_det_minors(adjusted_matrix(R, "tilde"), k, _plus(u, desc_half(k)))


def o_split_minors_hat(R: LieRealization, k: int, u=U) -> EnvElement:
    """Same element through F^ and the shifts (k/2, ..., -k/2+1)."""
    _require(R, "o-split")
    return column_det_minors(adjusted_matrix(R, "hat"), k, _plus(u, hat_seq(k)))


def o_split_sym_minors(R: LieRealization, k: int, u=U) -> EnvElement:
    """Det_k(F + u; tilde-natural_k)."""
    _require(R, "o-split", any_form=True)
    return det_k(generator_matrix(R).add_scalar(u), k, tilde_natural(k))


# -- split symplectic -------------------------------------------------------------------------


def sp_permanent_minors(R: LieRealization, k: int, u=U) -> EnvElement:
    """Sum over weak alpha of (1/alpha!) per(F~_alpha + u 1_alpha - 1_alpha diag(k/2-1, ..., -k/2))."""
    _require(R, "sp-split")
    _check_k(R, k)
    return column_per_minors(adjusted_matrix(R, "tilde"), k, _minus(u, desc_half(k)))


def sp_permanent_minors_hat(R: LieRealization, k: int, u=U) -> EnvElement:
    _require(R, "sp-split")
    _check_k(R, k)
    return column_per_minors(adjusted_matrix(R, "hat"), k, _minus(u, hat_seq(k)))


def sp_sym_per_minors(R: LieRealization, k: int, u=U) -> EnvElement:
    """Per_k(F + u; tilde-natural_k)."""
    _require(R, "sp-split", any_form=True)
    _check_k(R, k)
    return per_k(generator_matrix(R).add_scalar(u), k, tilde_natural(k))


# -- registry -------------------------------------------------------------------------------------


@dataclass(frozen=True)
class ElementDef:
    name: str
    algebra: str
    builder: Callable
    takes_k: bool
    eig: Optional[str] = None  # key into eig_formula
    doc: str = ""
    eig_full: Optional[str] = None  # closed form that applies only at k = N
    any_form: bool = False  # also central over o(S) / sp(J) for a general form

    def accepts(self, R: LieRealization) -> bool:
        return R.kind == self.algebra or (self.any_form and R.kind == _general_kind(self.algebra))


def _full(f):
    return lambda R, k, u: f(R, u)


def _minor(f):
    return lambda R, k, u: f(R, k, u)


ELEMENTS: dict[str, ElementDef] = {
    e.name: e
    for e in [
        ElementDef("C.gl", "gl", _full(gl_capelli_det), False, "gl.det", "column-det of E + u + diag(N-1..0)"),
        ElementDef("C'.gl", "gl", _full(gl_sym_det), False, "gl.det", "Det(E + u; N-1..0)"),
        ElementDef("C.gl.k", "gl", _minor(gl_capelli_minors), True, "gl.C", "strict-minor column-dets"),
        ElementDef("D.gl.k", "gl", _minor(gl_permanent_minors), True, "gl.D", "weak-minor column-pers"),
        ElementDef("C'.gl.k", "gl", _minor(gl_sym_det_minors), True, "gl.C", "Det_k(E + u; k-1..0)"),
        ElementDef("D'.gl.k", "gl", _minor(gl_sym_per_minors), True, "gl.D", "Per_k(E + u; -(k-1)..0)"),
        ElementDef("C.o1", "o-identity", _full(o_identity_det), False, None, "column-det over o(1)"),
        ElementDef("C'.o1", "o-identity", _full(o_identity_sym_det), False, None, "Det over o(1)"),
        ElementDef("C.o1.k", "o-identity", _minor(o_identity_minors), True, None, "strict-minor column-dets over o(1)"),
        ElementDef("C'.o1.k", "o-identity", _minor(o_identity_sym_minors), True, None, "Det_k over o(1)"),
        ElementDef("C.oS0", "o-split", _full(o_split_det), False, "o-split.det", "column-det, tilde-natural shifts"),
        ElementDef("C'.oS0", "o-split", _full(o_split_sym_det), False, "o-split.det", "Det, tilde-natural shifts", any_form=True),
        ElementDef("C.oS0.k", "o-split", _minor(o_split_minors), True, None, "strict-minor column-dets of F~", eig_full="o-split.det"),
        ElementDef("C.oS0.k.hat", "o-split", _minor(o_split_minors_hat), True, None, "strict-minor column-dets of F^", eig_full="o-split.det"),
        ElementDef("C'.oS0.k", "o-split", _minor(o_split_sym_minors), True, None, "Det_k(F + u; tilde-natural_k)", eig_full="o-split.det", any_form=True),
        ElementDef("D.sp", "sp-split", _minor(sp_permanent_minors), True, "sp.D", "weak-minor column-pers of F~"),
        ElementDef("D.sp.hat", "sp-split", _minor(sp_permanent_minors_hat), True, "sp.D", "weak-minor column-pers of F^"),
        ElementDef("D'.sp", "sp-split", _minor(sp_sym_per_minors), True, "sp.D", "Per_k(F + u; tilde-natural_k)", any_form=True),
    ]
}

# pairs of registered elements that must coincide
IDENTITIES: list[tuple[str, str]] = [
    ("C.gl", "C'.gl"),
    ("C.gl.k", "C'.gl.k"),
    ("D.gl.k", "D'.gl.k"),
    ("C.o1", "C'.o1"),
    ("C.o1.k", "C'.o1.k"),
    ("C.oS0", "C'.oS0"),
    ("C.oS0.k", "C'.oS0.k"),
    ("C.oS0.k", "C.oS0.k.hat"),
    ("D.sp", "D'.sp"),
    ("D.sp", "D.sp.hat"),
]


def lookup(name: str) -> ElementDef:
    try:
        return ELEMENTS[name]
    except KeyError:
        raise KeyError(f"unknown element {name!r}; known: {', '.join(ELEMENTS)}") from None


def build(name: str, R: LieRealization, k: Optional[int] = None, u=U) -> EnvElement:
    d = lookup(name)
    if not d.accepts(R):
        raise RealizationError(f"{name} lives over {d.algebra}, not {R.descriptor()}")
    if d.takes_k:
        if k is None:
            raise ValueError(f"{name} needs k")
    else:
        k = R.N
    return d.builder(R, k, u)


def build_element(name: str, N: int, k: Optional[int] = None, u=U) -> EnvElement:
    d = lookup(name)
    return build(name, make_realization(d.algebra, N), k, u)


def partners(name: str) -> list[str]:
    out = []
    for a, b in IDENTITIES:
        if a == name:
            out.append(b)
        elif b == name:
            out.append(a)
    return out


# -- eigenvalue formulas ----------------------------------------------------------------------


def _lam(kind: str, N: int, lam) -> list[Fraction]:
    lam = [rat(x) for x in lam]
    need = N if kind.startswith("gl") else N // 2
    if len(lam) != need:
        raise ValueError(f"{kind} at N={N} needs a partition of length {need}, got {len(lam)}")
    return lam


def eig_formula(kind: str, N: int, k: Optional[int], lam, u=U) -> UnivPoly:
    """Closed-form eigenvalue on the irreducible module with highest weight ``lam``.

    ``kind``: ``gl.det`` (product of u + l_i, l_i = lam_i + N - i), ``gl.C`` and
    ``gl.D`` (strict/weak minor sums), ``o-split.det`` (product of u^2 - l_i^2,
    times u for odd N, l_i = lam_i + N/2 - i) and ``sp.D``.
    """
    u = UnivPoly.coerce(u)
    lam = _lam(kind, N, lam)
    if kind == "gl.det":
        return product(u + lam[i - 1] + N - i for i in range(1, N + 1))
    if kind == "gl.C":
        return sum(
            (product(u + lam[a[t] - 1] + k - 1 - t for t in range(k)) for a in strict_sequences(N, k)),
            UnivPoly(),
        ) if k else ONE
    if kind == "gl.D":
        return sum(
            (product(u + lam[a[t] - 1] - (k - 1 - t) for t in range(k)) for a in weak_sequences(N, k)),
            UnivPoly(),
        ) if k else ONE
    if kind == "o-split.det":
        h = N // 2
        ls = [lam[i - 1] + Fraction(N, 2) - i for i in range(1, h + 1)]
        out = product(u * u - l * l for l in ls)
        return out * u if N % 2 else out
    if kind == "sp.D":
        return _sp_eigenvalue(N, k, lam, u)
    raise ValueError(f"unknown eigenvalue formula {kind!r}")


def _sp_eigenvalue(N: int, k: int, lam, u: UnivPoly) -> UnivPoly:
    n = N // 2
    half = Fraction(k, 2)
    total = UnivPoly()
    for l in range(k + 1):
        for first in itertools.combinations_with_replacement(range(1, n + 1), l):
            left = product(u + lam[first[t - 1] - 1] - half + t for t in range(1, l + 1))
            for second in itertools.combinations_with_replacement(range(n + 1, N + 1), k - l):
                # the primed index N+1-a lands back in 1..n
                right = product(
                    u - lam[N - second[s - 1]] - half + l + s - 1 for s in range(1, k - l + 1)
                )
                total = total + left * right
    return total


def eigen_kind(name: str) -> Optional[str]:
    return lookup(name).eig


# -- factorial powers and R^k_l ------------------------------------------------------------------


def double_factorial_odd(l: int) -> int:
    """(2l-1)!!, with (-1)!! = 1."""
    out = 1
    for t in range(1, 2 * l, 2):
        out *= t
    return out


def coeff_R(k: int, l: int) -> Fraction:
    """R^k_l = C(k, 2l) (2l-1)!!; R^k_0 = 1 for every k, zero for l < 0 or 2l > k."""
    if l == 0:
        return Fraction(1)
    if l < 0 or k < 0 or 2 * l > k:
        return Fraction(0)
    return Fraction(comb(k, 2 * l) * double_factorial_odd(l))


def rising(x: UnivPoly, k: int, step: int = 1) -> UnivPoly:
    """x (x + step) ... (x + (k-1) step)."""
    return product(x + step * t for t in range(k))


def rising_expansion_lhs_rhs(k: int) -> tuple[UnivPoly, UnivPoly]:
    """u^(k rising) and sum_l (-1)^l R^k_l u^(k-l, step 2)."""
    lhs = rising(U, k)
    rhs = sum(((-1) ** l * coeff_R(k, l) * rising(U, k - l, 2) for l in range(k + 1)), UnivPoly())
    return lhs, rhs


def double_expansion_lhs_rhs(k: int) -> tuple[UnivPoly, UnivPoly]:
    """u^(k, step 2) and sum_l R^{k+l-1}_l u^(k-l rising)."""
    lhs = rising(U, k, 2)
    rhs = sum((coeff_R(k + l - 1, l) * rising(U, k - l) for l in range(k + 1)), UnivPoly())
    return lhs, rhs


def orthogonality_sum(k: int, m: int) -> Fraction:
    """sum_l (-1)^l R^k_l R^{k-2l}_{m-l}; equals 1 if m == 0 else 0."""
    return sum((Fraction((-1) ** l) * coeff_R(k, l) * coeff_R(k - 2 * l, m - l) for l in range(m + 1)), Fraction(0))


def factorial_ratio(k: int, alpha) -> Fraction:
    return Fraction(factorial(k), multiplicity_factorial(alpha))
