"""Dense rational matrices as lists of lists of Fractions."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .coeff import format_rat, rat

Matrix = list  # list[list[Fraction]]


class SingularMatrixError(ValueError):
    pass


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    m = [[rat(x) for x in row] for row in rows]
    if any(len(r) != len(m[0]) for r in m):
        raise ValueError("ragged matrix")
    return m


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(n: int, m: int | None = None) -> Matrix:
    return [[Fraction(0)] * (n if m is None else m) for _ in range(n)]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def scale(a: Matrix, c) -> Matrix:
    return [[x * c for x in row] for row in a]


def add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def inverse(a: Matrix) -> Matrix:
    """Gauss-Jordan inverse; raises :class:`SingularMatrixError`."""
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("inverse of a non-square matrix")
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def det(a: Matrix) -> Fraction:
    n = len(a)
    m = [list(r) for r in a]
    out = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            out = -out
        p = m[col][col]
        out *= p
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] / p
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return out


def independent_rows(vectors: Sequence[Sequence[Fraction]]) -> list[int]:
    """Indices of a maximal independent subset, greedily in the given order."""
    echelon: list[tuple[int, list]] = []  # (pivot column, reduced row)
    chosen = []
    for idx, v in enumerate(vectors):
        w = list(v)
        for pc, row in echelon:
            if w[pc]:
                f = w[pc] / row[pc]
                w = [x - f * y for x, y in zip(w, row)]
        pc = next((c for c, x in enumerate(w) if x), None)
        if pc is not None:
            echelon.append((pc, w))
            chosen.append(idx)
    return chosen


class Coordinates:
    """Solve for coordinates of vectors in the span of fixed basis vectors."""

    def __init__(self, basis: Sequence[Sequence[Fraction]]):
        self.basis = [list(b) for b in basis]
        d = len(self.basis)
        dim = len(self.basis[0]) if d else 0
        # choose d coordinate positions on which the basis is invertible
        cols = independent_rows(transpose(self.basis)) if d else []
        if len(cols) != d:
            raise SingularMatrixError("basis vectors are dependent")
        self.cols = cols
        sub = [[b[c] for c in cols] for b in self.basis]  # d x d, rows = basis
        self.inv = inverse(sub)
        self.dim = dim

    def solve(self, v: Sequence[Fraction]) -> list[Fraction]:
        rhs = [v[c] for c in self.cols]
        # coords @ sub = rhs  =>  coords = rhs @ inv
        d = len(self.basis)
        coords = [sum((rhs[i] * self.inv[i][j] for i in range(d)), Fraction(0)) for j in range(d)]
        recon = [Fraction(0)] * self.dim
        for c, b in zip(coords, self.basis):
            if c:
                for k, x in enumerate(b):
                    if x:
                        recon[k] += c * x
        if recon != list(v):
            raise ValueError("vector is not in the span of the basis")
        return coords


def parse_matrix(text: str) -> Matrix:
    """Parse ``"0,1;-1,0"`` (rows split by ``;`` or newlines) into a matrix."""
    rows = [r for r in text.replace("\n", ";").split(";") if r.strip()]
    return to_matrix([[rat(x) for x in r.split(",")] for r in rows])


def format_matrix(a: Matrix) -> str:
    return ";".join(",".join(format_rat(x) for x in row) for row in a)


def random_invertible(n: int, rng: random.Random, bound: int = 3) -> Matrix:
    while True:
        g = [[Fraction(rng.randint(-bound, bound), rng.randint(1, 2)) for _ in range(n)] for _ in range(n)]
        if det(g):
            return g
