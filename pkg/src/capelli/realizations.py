"""Concrete realizations of gl_N, o(S) and sp(J) inside gl_N.

Every realization carries an ordered basis of generator labels, the
defining N x N matrix of each basis element, sparse structure constants and
(for gl and the split forms) the triangular grading.  Structure constants of
o/sp are always derived through the gl embedding; for the split forms they
are additionally re-derived from the closed-form commutation relation and
compared.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from . import linalg
from .linalg import Matrix

GRADES = ("minus", "zero", "plus")
KINDS = ("gl", "o-identity", "o-split", "o-general", "sp-split", "sp-general")


class RealizationError(ValueError):
    pass


class InternalConsistencyError(AssertionError):
    """Two independent derivations of the same structure constants disagree."""


@dataclass(frozen=True, order=True)
class GenId:
    """Label of a basis generator: ``E[i,j]`` for gl, ``F[i,j]`` otherwise (1-based)."""

    tag: str
    i: int
    j: int

    def __str__(self) -> str:
        return f"{self.tag}[{self.i},{self.j}]"


def _grade(i: int, j: int) -> str:
    return "minus" if i > j else ("zero" if i == j else "plus")


def epsilon(i: int, N: int) -> int:
    """Sign attached to index ``i`` in the split symplectic form (-1 on the first half)."""
    return -1 if i <= N // 2 else 1


def prime(i: int, N: int) -> int:
    return N + 1 - i


def split_form(kind: str, N: int) -> Matrix:
    """S_0 = (delta_{i,N+1-j}) or J_0 = (eps(j) delta_{i,j'})."""
    if kind == "o":
        return [[Fraction(int(j == N - 1 - i)) for j in range(N)] for i in range(N)]
    return [[Fraction(epsilon(j + 1, N)) if j == N - 1 - i else Fraction(0) for j in range(N)] for i in range(N)]


class LieRealization:
    """A Lie algebra given by an ordered basis inside gl_N.

    Attributes of interest: ``kind``, ``N``, ``basis`` (tuple of GenId in the
    fixed total order), ``grading`` (tuple of grade names, or None), ``form``
    (the matrix S or J, or None for gl).
    """

    def __init__(self, kind: str, N: int, labels, matrices, form: Optional[Matrix], graded: bool):
        self.kind = kind
        self.N = N
        self.form = form
        if graded:
            order = sorted(range(len(labels)), key=lambda t: (GRADES.index(_grade(labels[t].i, labels[t].j)), labels[t].i, labels[t].j))
        else:
            order = sorted(range(len(labels)), key=lambda t: (labels[t].i, labels[t].j))
        self.basis = tuple(labels[t] for t in order)
        self.matrices = tuple(matrices[t] for t in order)  # sparse {(i,j): Fraction}, 1-based
        self.index = {g: k for k, g in enumerate(self.basis)}
        self.grading = tuple(_grade(g.i, g.j) for g in self.basis) if graded else None
        self._coords = linalg.Coordinates([self._flatten(m) for m in self.matrices])
        self._brackets = self._embedded_brackets()
        self._entry_cache: dict = {}
        # memo of normal-ordered products, owned by the PBW engine
        self.memo: dict = {}
        self.memo_lock = threading.Lock()
        self.memo_hits = 0

    # -- basics --------------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_graded(self) -> bool:
        return self.grading is not None

    @property
    def tag(self) -> str:
        return "E" if self.kind == "gl" else "F"

    def descriptor(self) -> str:
        return f"{self.kind}:N={self.N}"

    def __repr__(self) -> str:
        return f"<LieRealization {self.descriptor()} dim={self.dim}>"

    def cartan(self) -> list[int]:
        if not self.is_graded:
            raise RealizationError(f"{self.descriptor()} has no triangular decomposition")
        return [k for k, g in enumerate(self.grading) if g == "zero"]

    def _flatten(self, m: dict) -> list:
        N = self.N
        v = [Fraction(0)] * (N * N)
        for (i, j), x in m.items():
            v[(i - 1) * N + (j - 1)] = x
        return v

    def coordinates(self, m: dict) -> dict[int, Fraction]:
        """Coordinates of a gl_N matrix (sparse, 1-based) in this basis."""
        coords = self._coords.solve(self._flatten(m))
        return {k: c for k, c in enumerate(coords) if c}

    def element_matrix(self, combo: dict[int, Fraction]) -> dict:
        out: dict = {}
        for k, c in combo.items():
            for key, x in self.matrices[k].items():
                out[key] = out.get(key, 0) + c * x
        return {key: x for key, x in out.items() if x}

    # -- structure constants -------------------------------------------------

    def _embedded_brackets(self) -> dict:
        out = {}
        for a in range(self.dim):
            for b in range(a + 1, self.dim):
                comm = _commutator(self.matrices[a], self.matrices[b])
                if comm:
                    out[(a, b)] = self.coordinates(comm)
        return out

    def bracket(self, a: int, b: int) -> dict[int, Fraction]:
        """[x_a, x_b] as a sparse combination of basis indices."""
        if a == b:
            return {}
        if a < b:
            return self._brackets.get((a, b), {})
        return {c: -x for c, x in self._brackets.get((b, a), {}).items()}

    def bracket_combo(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for c, cc in self.bracket(a, b).items():
                    out[c] = out.get(c, 0) + ca * cb * cc
        return {c: v for c, v in out.items() if v}

    def gen(self, i: int, j: int) -> dict[int, Fraction]:
        """The (i,j) generator E_ij or F_ij expressed in this basis (cached)."""
        key = (i, j)
        if key not in self._entry_cache:
            if not (1 <= i <= self.N and 1 <= j <= self.N):
                raise IndexError(f"generator index {(i, j)} out of range for N={self.N}")
            self._entry_cache[key] = self.coordinates(_generator_matrix(self.kind, self.N, self.form, i, j))
        return self._entry_cache[key]

    # -- split forms ---------------------------------------------------------

    def canonicalize(self, i: int, j: int) -> Optional[tuple[int, GenId]]:
        """Rewrite the symbol F_ij as ``sign * F_canonical`` (None when F_ij = 0).

        Defined for the split forms and gl; uses F_ij = -theta F_{j'i'} with
        theta = eps(i) eps(j) for sp and 1 for o.
        """
        N = self.N
        if self.kind == "gl":
            return 1, GenId("E", i, j)
        if self.kind not in ("o-split", "sp-split"):
            raise RealizationError("canonicalize is defined for split realizations only")
        ip, jp = prime(i, N), prime(j, N)
        if (i, j) == (jp, ip):
            if self.kind == "o-split":
                return None
            return 1, GenId("F", i, j)
        if (i, j) < (jp, ip):
            return 1, GenId("F", i, j)
        theta = epsilon(i, N) * epsilon(j, N) if self.kind == "sp-split" else 1
        return -theta, GenId("F", jp, ip)


def _commutator(x: dict, y: dict) -> dict:
    out: dict = {}
    for (i, j), a in x.items():
        for (k, l), b in y.items():
            if j == k:
                out[(i, l)] = out.get((i, l), 0) + a * b
            if l == i:
                out[(k, j)] = out.get((k, j), 0) - a * b
    return {key: v for key, v in out.items() if v}


def _generator_matrix(kind: str, N: int, form: Optional[Matrix], i: int, j: int) -> dict:
    """Defining matrix of E_ij (gl) or F_ij = E_ij - B^{-1} E_ji B."""
    if kind == "gl":
        return {(i, j): Fraction(1)}
    binv = _cached_inverse(form)
    out: dict = {(i, j): Fraction(1)}
    # (B^{-1} E_ji B)_{pq} = Binv[p][j] * B[i][q]
    for p in range(N):
        a = binv[p][j - 1]
        if not a:
            continue
        for q in range(N):
            b = form[i - 1][q]
            if b:
                key = (p + 1, q + 1)
                out[key] = out.get(key, 0) - a * b
    return {key: v for key, v in out.items() if v}


_INV_CACHE: dict = {}


def _cached_inverse(form: Matrix) -> Matrix:
    key = tuple(tuple(r) for r in form)
    if key not in _INV_CACHE:
        _INV_CACHE[key] = linalg.inverse(form)
    return _INV_CACHE[key]


# -- constructors --------------------------------------------------------------


@lru_cache(maxsize=None)
def gl_realization(N: int) -> LieRealization:
    if N < 1:
        raise RealizationError("gl_N needs N >= 1")
    labels = [GenId("E", i, j) for i in range(1, N + 1) for j in range(1, N + 1)]
    mats = [{(g.i, g.j): Fraction(1)} for g in labels]
    R = LieRealization("gl", N, labels, mats, None, graded=True)
    _check_against_closed_form(R)
    return R


@lru_cache(maxsize=None)
def sp_split_realization(N: int) -> LieRealization:
    if N < 2 or N % 2:
        raise RealizationError("the split symplectic realization needs an even N >= 2")
    return _split("sp", N)


@lru_cache(maxsize=None)
def o_split_realization(N: int) -> LieRealization:
    if N < 2:
        raise RealizationError("the split orthogonal realization needs N >= 2")
    return _split("o", N)


def _split(kind: str, N: int) -> LieRealization:
    form = split_form(kind, N)
    full = f"{kind}-split"
    labels, mats = [], []
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            ip, jp = prime(i, N), prime(j, N)
            if (i, j) > (jp, ip):
                continue
            if kind == "o" and (i, j) == (jp, ip):
                continue
            labels.append(GenId("F", i, j))
            mats.append(_generator_matrix(full, N, form, i, j))
    R = LieRealization(full, N, labels, mats, form, graded=True)
    _check_against_closed_form(R)
    return R


@lru_cache(maxsize=None)
def o_identity_realization(N: int) -> LieRealization:
    if N < 2:
        raise RealizationError("o(1) needs N >= 2")
    form = linalg.identity(N)
    labels = [GenId("F", i, j) for i in range(1, N + 1) for j in range(i + 1, N + 1)]
    mats = [_generator_matrix("o-identity", N, form, g.i, g.j) for g in labels]
    return LieRealization("o-identity", N, labels, mats, form, graded=False)


def general_realization(kind: str, B) -> LieRealization:
    """o(S) for symmetric S, sp(J) for alternating J (any invertible rational form)."""
    B = linalg.to_matrix(B)
    N = len(B)
    if any(len(r) != N for r in B):
        raise RealizationError("form matrix must be square")
    if not linalg.det(B):
        raise RealizationError("form matrix must be invertible")
    if kind == "o":
        if B != linalg.transpose(B):
            raise RealizationError("o(S) needs a symmetric S")
    elif kind == "sp":
        if N % 2 or any(B[i][j] != -B[j][i] for i in range(N) for j in range(N)):
            raise RealizationError("sp(J) needs an alternating J of even size")
    else:
        raise RealizationError(f"unknown kind {kind!r}")
    full = f"{kind}-general"
    cand = [(i, j) for i in range(1, N + 1) for j in range(1, N + 1)]
    mats = [_generator_matrix(full, N, B, i, j) for i, j in cand]
    flat = []
    for m in mats:
        v = [Fraction(0)] * (N * N)
        for (p, q), x in m.items():
            v[(p - 1) * N + (q - 1)] = x
        flat.append(v)
    keep = linalg.independent_rows(flat)
    labels = [GenId("F", *cand[t]) for t in keep]
    return LieRealization(full, N, labels, [mats[t] for t in keep], B, graded=False)


def realization_from_descriptor(text: str, form: Optional[Matrix] = None) -> LieRealization:
    """Parse ``"sp-split:N=4"``-style descriptors (``sp``/``o-id`` aliases accepted)."""
    m = re.fullmatch(r"\s*([a-z\-]+)\s*:\s*N\s*=\s*(\d+)\s*", text)
    if not m:
        raise RealizationError(f"bad realization descriptor {text!r}")
    kind, N = normalize_kind(m.group(1)), int(m.group(2))
    return make_realization(kind, N, form)


ALIASES = {"sp": "sp-split", "o-id": "o-identity", "o1": "o-identity", "o": "o-split"}


def normalize_kind(kind: str) -> str:
    kind = ALIASES.get(kind, kind)
    if kind not in KINDS:
        raise RealizationError(f"unknown algebra kind {kind!r}")
    return kind


def make_realization(kind: str, N: int, form: Optional[Matrix] = None) -> LieRealization:
    kind = normalize_kind(kind)
    if kind == "gl":
        return gl_realization(N)
    if kind == "o-identity":
        return o_identity_realization(N)
    if kind == "o-split":
        return o_split_realization(N)
    if kind == "sp-split":
        return sp_split_realization(N)
    if form is None:
        raise RealizationError(f"{kind} needs a form matrix")
    R = general_realization(kind.split("-")[0], form)
    if R.N != N:
        raise RealizationError(f"form matrix has size {R.N}, expected {N}")
    return R


# -- closed-form cross-check -----------------------------------------------------


def closed_form_bracket(R: LieRealization, i: int, j: int, k: int, l: int) -> dict:
    """[X_ij, X_kl] from the closed-form relation, as a combination of basis indices.

    gl:  d_kj E_il - d_il E_kj
    split o/sp:  d_kj F_il - d_il F_kj + th(k)th(l) d_ik' F_l'j + th(i)th(j) d_j'l F_ki'
    with th = eps for sp and th = 1 for o.
    """
    N = R.N
    terms = []
    if k == j:
        terms.append((1, i, l))
    if i == l:
        terms.append((-1, k, j))
    if R.kind != "gl":
        th = (lambda a: epsilon(a, N)) if R.kind == "sp-split" else (lambda a: 1)
        if i == prime(k, N):
            terms.append((th(k) * th(l), prime(l, N), j))
        if prime(j, N) == l:
            terms.append((th(i) * th(j), k, prime(i, N)))
    out: dict = {}
    for s, a, b in terms:
        can = R.canonicalize(a, b)
        if can is None:
            continue
        sign, g = can
        idx = R.index[g]
        out[idx] = out.get(idx, 0) + s * sign
    return {c: Fraction(v) for c, v in out.items() if v}


def _check_against_closed_form(R: LieRealization) -> None:
    for a, ga in enumerate(R.basis):
        for b, gb in enumerate(R.basis):
            if a == b:
                continue
            if closed_form_bracket(R, ga.i, ga.j, gb.i, gb.j) != R.bracket(a, b):
                raise InternalConsistencyError(f"bracket mismatch for [{ga},{gb}] in {R.descriptor()}")
