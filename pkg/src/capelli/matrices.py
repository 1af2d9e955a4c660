"""Matrices over U(g) and their noncommutative determinants and permanents.

Column-determinant/permanent take factors column by column, left to right.
The symmetrized versions average over row and column permutations and weave
the shift parameters a_1, ..., a_k into successive factors.  The (sigma,
sigma') double sums are accumulated by a subset recursion over the rows and
columns used so far; :func:`sym_det_naive` and friends enumerate the
permutation pairs literally and serve as the reference.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial
from typing import Optional, Sequence

from . import linalg
from .coeff import UnivPoly, rat
from .pbw import EnvElement, env_sum
from .realizations import LieRealization, RealizationError


class NCMatrix:
    """Square matrix of EnvElements over a single realization."""

    def __init__(self, R: LieRealization, rows: Sequence[Sequence[EnvElement]]):
        self.R = R
        self.rows = [list(r) for r in rows]
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise ValueError("NCMatrix must be square")
        for r in self.rows:
            for x in r:
                if x.R is not R:
                    raise ValueError("entries must live over the matrix's realization")

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij) -> EnvElement:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, NCMatrix) and self.R is other.R and self.rows == other.rows

    def add_diag(self, shifts) -> "NCMatrix":
        """Add the scalar diagonal ``diag(shifts)``."""
        shifts = list(shifts)
        if len(shifts) != self.size:
            raise ValueError("diagonal length mismatch")
        rows = [list(r) for r in self.rows]
        for i, s in enumerate(shifts):
            rows[i][i] = rows[i][i] + UnivPoly.coerce(s)
        return NCMatrix(self.R, rows)

    def add_scalar(self, c) -> "NCMatrix":
        return self.add_diag([c] * self.size)

    def left_mul(self, g) -> "NCMatrix":
        """Rational matrix ``g`` times this matrix."""
        n = self.size
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                row.append(env_sum((self.rows[p][j].scale(g[i][p]) for p in range(n) if g[i][p]), self.R))
            rows.append(row)
        return NCMatrix(self.R, rows)

    def right_mul(self, g) -> "NCMatrix":
        n = self.size
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                row.append(env_sum((self.rows[i][q].scale(g[q][j]) for q in range(n) if g[q][j]), self.R))
            rows.append(row)
        return NCMatrix(self.R, rows)

    def submatrix(self, alpha: Sequence[int]) -> "NCMatrix":
        """(Z_{alpha_i alpha_j}) with 1-based ``alpha`` (repeats allowed)."""
        return NCMatrix(self.R, [[self.rows[a - 1][b - 1] for b in alpha] for a in alpha])

    def trace(self) -> EnvElement:
        return env_sum((self.rows[i][i] for i in range(self.size)), self.R)

    def __str__(self) -> str:
        return "\n".join(" | ".join(str(x) for x in r) for r in self.rows)


# -- construction ---------------------------------------------------------------------


def generator_matrix(R: LieRealization) -> NCMatrix:
    """The matrix (E_ij) or (F_ij), each entry written in the realization's basis."""
    N = R.N
    return NCMatrix(R, [[EnvElement.gen(R, i, j) for j in range(1, N + 1)] for i in range(1, N + 1)])


def adjustment_diagonal(R: LieRealization, variant: str) -> list[Fraction]:
    N = R.N
    h = N // 2
    odd = N % 2 == 1
    if R.kind == "sp-split":
        if variant == "tilde":
            return [Fraction(0)] * h + [Fraction(-1)] * h
        if variant == "hat":
            return [Fraction(1)] * h + [Fraction(0)] * h
    elif R.kind == "o-split":
        mid = [Fraction(1, 2)] if odd else []
        if variant == "tilde":
            return [Fraction(0)] * h + mid + [Fraction(1)] * h
        if variant == "hat":
            return [Fraction(-1)] * h + [-x for x in mid] + [Fraction(0)] * h
    else:
        raise RealizationError("adjusted matrices exist for the split o/sp realizations only")
    raise ValueError(f"unknown variant {variant!r}")


def adjusted_matrix(R: LieRealization, variant: str) -> NCMatrix:
    """F-tilde or F-hat: the generator matrix plus the variant's scalar diagonal."""
    return generator_matrix(R).add_diag(adjustment_diagonal(R, variant))


def conjugate(Z: NCMatrix, g) -> NCMatrix:
    """g Z g^{-1} for an invertible rational matrix g."""
    g = linalg.to_matrix(g)
    ginv = linalg.inverse(g)
    return Z.left_mul(g).right_mul(ginv)


# -- entries with shifts --------------------------------------------------------------


def shifted_entry(Z: NCMatrix, i: int, j: int, a) -> EnvElement:
    """Z_ij + delta_ij a (1-based indices)."""
    n = Z.size
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"entry {(i, j)} out of range for size {n}")
    e = Z.rows[i - 1][j - 1]
    return e + UnivPoly.coerce(a) if i == j else e


def submatrix_with_shifts(Z: NCMatrix, alpha: Sequence[int], a: Sequence) -> NCMatrix:
    """Entry (i, j) is Z_{alpha_i alpha_j} + delta_{alpha_i alpha_j} a_j."""
    if len(alpha) != len(a):
        raise ValueError("index and shift sequences differ in length")
    a = [UnivPoly.coerce(x) for x in a]
    rows = []
    for ai in alpha:
        row = []
        for j, aj in enumerate(alpha):
            row.append(shifted_entry(Z, ai, aj, a[j]))
        rows.append(row)
    return NCMatrix(Z.R, rows)


# -- index sequences ------------------------------------------------------------------


def strict_sequences(N: int, k: int):
    return itertools.combinations(range(1, N + 1), k)


def weak_sequences(N: int, k: int):
    return itertools.combinations_with_replacement(range(1, N + 1), k)


def multiplicity_factorial(alpha: Sequence[int]) -> int:
    out = 1
    for _, grp in itertools.groupby(sorted(alpha)):
        out *= factorial(len(list(grp)))
    return out


# -- column determinant / permanent -----------------------------------------------------


def _above(mask: int, r: int) -> int:
    return bin(mask >> (r + 1)).count("1")


def _column_sum(Z: NCMatrix, signed: bool) -> EnvElement:
    R, n = Z.R, Z.size
    states = {0: EnvElement.scalar(R, 1)}
    for col in range(n):
        nxt: dict = {}
        for mask, acc in states.items():
            for r in range(n):
                if mask >> r & 1:
                    continue
                entry = Z.rows[r][col]
                if not entry:
                    continue
                term = acc * entry
                if signed and _above(mask, r) % 2:
                    term = -term
                m2 = mask | 1 << r
                nxt[m2] = nxt[m2] + term if m2 in nxt else term
        states = nxt
    return states.get((1 << n) - 1, EnvElement.zero(R))


def column_det(Z: NCMatrix) -> EnvElement:
    """sum_sigma sgn(sigma) Z_{sigma(1)1} Z_{sigma(2)2} ... Z_{sigma(n)n}."""
    return _column_sum(Z, signed=True)


def column_per(Z: NCMatrix) -> EnvElement:
    return _column_sum(Z, signed=False)


# -- symmetrized determinant / permanent ---------------------------------------------------


def _double_sum(Z: NCMatrix, alpha: Sequence[int], a: Sequence[UnivPoly], signed: bool) -> EnvElement:
    """sum_{sigma, sigma'} (signs) prod_t Z_{alpha_sigma(t) alpha_sigma'(t)}(a_t), no prefactor."""
    R, k = Z.R, len(alpha)
    states = {(0, 0): EnvElement.scalar(R, 1)}
    for t in range(k):
        nxt: dict = {}
        for (rm, cm), acc in states.items():
            for r in range(k):
                if rm >> r & 1:
                    continue
                sr = _above(rm, r)
                for c in range(k):
                    if cm >> c & 1:
                        continue
                    entry = shifted_entry(Z, alpha[r], alpha[c], a[t])
                    if not entry:
                        continue
                    term = acc * entry
                    if signed and (sr + _above(cm, c)) % 2:
                        term = -term
                    key = (rm | 1 << r, cm | 1 << c)
                    nxt[key] = nxt[key] + term if key in nxt else term
        states = nxt
    full = (1 << k) - 1
    return states.get((full, full), EnvElement.zero(R))


def _shifts(a, k: int) -> list[UnivPoly]:
    a = [UnivPoly.coerce(x) for x in a]
    if len(a) != k:
        raise ValueError(f"expected {k} shift parameters, got {len(a)}")
    return a


def sym_det(Z: NCMatrix, a: Optional[Sequence] = None) -> EnvElement:
    """Det(Z; a_1..a_n) = (1/n!) sum sgn(s) sgn(s') Z_{s(1)s'(1)}(a_1) ... Z_{s(n)s'(n)}(a_n)."""
    n = Z.size
    a = _shifts([0] * n if a is None else a, n)
    return _double_sum(Z, range(1, n + 1), a, True).scale(Fraction(1, factorial(n)))


def sym_per(Z: NCMatrix, a: Optional[Sequence] = None) -> EnvElement:
    n = Z.size
    a = _shifts([0] * n if a is None else a, n)
    return _double_sum(Z, range(1, n + 1), a, False).scale(Fraction(1, factorial(n)))


def det_k(Z: NCMatrix, k: int, a: Optional[Sequence] = None) -> EnvElement:
    """Sum over strict alpha of Det(Z_alpha; a)."""
    a = _shifts([0] * k if a is None else a, k)
    if k == 0:
        return EnvElement.scalar(Z.R, 1)
    parts = [_double_sum(Z, alpha, a, True) for alpha in strict_sequences(Z.size, k)]
    return env_sum(parts, Z.R).scale(Fraction(1, factorial(k)))


def per_k(Z: NCMatrix, k: int, a: Optional[Sequence] = None) -> EnvElement:
    """Sum over weak alpha of (1/alpha!) Per(Z_alpha; a), shifts weighted by delta_{alpha_i alpha_j}."""
    a = _shifts([0] * k if a is None else a, k)
    if k == 0:
        return EnvElement.scalar(Z.R, 1)
    parts = [
        _double_sum(Z, alpha, a, False).scale(Fraction(1, multiplicity_factorial(alpha)))
        for alpha in weak_sequences(Z.size, k)
    ]
    return env_sum(parts, Z.R).scale(Fraction(1, factorial(k)))


# -- literal enumerations (reference implementations) ------------------------------------


def _sign(p: Sequence[int]) -> int:
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return -1 if inv % 2 else 1


def _prod(R, factors):
    out = EnvElement.scalar(R, 1)
    for f in factors:
        out = out * f
    return out


def column_det_naive(Z: NCMatrix) -> EnvElement:
    n = Z.size
    return env_sum(
        (_prod(Z.R, (Z.rows[s[c]][c] for c in range(n))).scale(_sign(s)) for s in itertools.permutations(range(n))),
        Z.R,
    )


def column_per_naive(Z: NCMatrix) -> EnvElement:
    n = Z.size
    return env_sum((_prod(Z.R, (Z.rows[s[c]][c] for c in range(n))) for s in itertools.permutations(range(n))), Z.R)


def _double_sum_naive(Z, alpha, a, signed):
    k = len(alpha)
    terms = []
    for s in itertools.permutations(range(k)):
        for s2 in itertools.permutations(range(k)):
            f = _prod(Z.R, (shifted_entry(Z, alpha[s[t]], alpha[s2[t]], a[t]) for t in range(k)))
            terms.append(f.scale(_sign(s) * _sign(s2)) if signed else f)
    return env_sum(terms, Z.R)


def sym_det_naive(Z: NCMatrix, a=None) -> EnvElement:
    n = Z.size
    a = _shifts([0] * n if a is None else a, n)
    return _double_sum_naive(Z, list(range(1, n + 1)), a, True).scale(Fraction(1, factorial(n)))


def sym_per_naive(Z: NCMatrix, a=None) -> EnvElement:
    n = Z.size
    a = _shifts([0] * n if a is None else a, n)
    return _double_sum_naive(Z, list(range(1, n + 1)), a, False).scale(Fraction(1, factorial(n)))


def per_k_naive(Z: NCMatrix, k: int, a=None) -> EnvElement:
    a = _shifts([0] * k if a is None else a, k)
    if k == 0:
        return EnvElement.scalar(Z.R, 1)
    parts = [
        _double_sum_naive(Z, alpha, a, False).scale(Fraction(1, multiplicity_factorial(alpha)))
        for alpha in weak_sequences(Z.size, k)
    ]
    return env_sum(parts, Z.R).scale(Fraction(1, factorial(k)))


def det_k_naive(Z: NCMatrix, k: int, a=None) -> EnvElement:
    a = _shifts([0] * k if a is None else a, k)
    if k == 0:
        return EnvElement.scalar(Z.R, 1)
    parts = [_double_sum_naive(Z, alpha, a, True) for alpha in strict_sequences(Z.size, k)]
    return env_sum(parts, Z.R).scale(Fraction(1, factorial(k)))


# -- Pfaffian and Hafnian -------------------------------------------------------------------


class NotAlternatingError(ValueError):
    pass


def _matching_sum(Z: NCMatrix, signed: bool) -> EnvElement:
    n = Z.size
    if n % 2:
        raise ValueError("Pfaffian/Hafnian need an even size")
    k = n // 2
    terms = []
    for s in itertools.permutations(range(n)):
        f = _prod(Z.R, (Z.rows[s[2 * t]][s[2 * t + 1]] for t in range(k)))
        terms.append(f.scale(_sign(s)) if signed else f)
    return env_sum(terms, Z.R).scale(Fraction(1, 2**k * factorial(k)))


def pfaffian(Z: NCMatrix) -> EnvElement:
    """(1/2^k k!) sum_sigma sgn(sigma) Z_{s1 s2} ... Z_{s(2k-1) s(2k)}; factors in sigma order."""
    n = Z.size
    for i in range(n):
        for j in range(n):
            if Z.rows[i][j] != -Z.rows[j][i]:
                raise NotAlternatingError(f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) are not opposite")
    return _matching_sum(Z, True)


def hafnian(Z: NCMatrix) -> EnvElement:
    n = Z.size
    for i in range(n):
        for j in range(i + 1, n):
            if Z.rows[i][j] != Z.rows[j][i]:
                raise NotAlternatingError(f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) differ")
    return _matching_sum(Z, False)


def scalar_matrix(R: LieRealization, rows) -> NCMatrix:
    """Matrix of central scalars, handy for commutative desk checks."""
    return NCMatrix(R, [[EnvElement.scalar(R, rat(x) if not isinstance(x, UnivPoly) else x) for x in r] for r in rows])
