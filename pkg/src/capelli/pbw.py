"""Arithmetic in U(g) through PBW normal ordering.

A PBW monomial is a non-decreasing tuple of basis indices (the realization's
total order); an :class:`EnvElement` maps monomials to :class:`UnivPoly`
coefficients.  Products are normal-ordered by feeding the right factor in one
generator at a time and moving it left past larger generators with
``x y -> y x + [x, y]``; monomial-times-generator results are memoised on the
realization.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .coeff import ONE, UnivPoly, format_poly, rat
from .realizations import LieRealization, RealizationError

Monomial = tuple


class RealizationMismatch(ValueError):
    pass


# -- normal ordering kernel --------------------------------------------------------


def _mul_gen(R: LieRealization, m: Monomial, g: int) -> dict:
    """Normal form of ``m * x_g`` for a sorted monomial ``m`` (memoised per realization)."""
    if not m or m[-1] <= g:
        return {m + (g,): Fraction(1)}
    key = (m, g)
    memo = R.memo
    hit = memo.get(key)
    if hit is not None:
        R.memo_hits += 1
        return hit
    x = m[-1]
    head = m[:-1]
    out: dict = {}
    # head x g = head g x + head [x, g]
    for p, c in _mul_gen(R, head, g).items():
        for q, d in _mul_gen(R, p, x).items():
            out[q] = out.get(q, 0) + c * d
    for y, c in R.bracket(x, g).items():
        for q, d in _mul_gen(R, head, y).items():
            out[q] = out.get(q, 0) + c * d
    out = {q: v for q, v in out.items() if v}
    with R.memo_lock:
        memo[key] = out
    return out


def mono_mul(R: LieRealization, m1: Monomial, m2: Monomial) -> dict:
    """Normal form of the product of two PBW monomials, as {monomial: Fraction}."""
    if not m2:
        return {m1: Fraction(1)}
    if not m1 or m1[-1] <= m2[0]:
        return {m1 + m2: Fraction(1)}
    key = ("mm", m1, m2)
    hit = R.memo.get(key)
    if hit is not None:
        R.memo_hits += 1
        return hit
    acc = {m1: Fraction(1)}
    for g in m2:
        nxt: dict = {}
        for m, c in acc.items():
            for q, d in _mul_gen(R, m, g).items():
                nxt[q] = nxt.get(q, 0) + c * d
        acc = {q: v for q, v in nxt.items() if v}
    with R.memo_lock:
        R.memo[key] = acc
    return acc


def normal_form_word(R: LieRealization, word: Iterable[int]) -> dict:
    """Normal form of an arbitrary word of generators."""
    acc = {(): Fraction(1)}
    for g in word:
        nxt: dict = {}
        for m, c in acc.items():
            for q, d in _mul_gen(R, m, g).items():
                nxt[q] = nxt.get(q, 0) + c * d
        acc = {q: v for q, v in nxt.items() if v}
    return acc


# -- elements -------------------------------------------------------------------------


class EnvElement:
    """Element of U(g): a map from PBW monomials to polynomials in ``u``."""

    __slots__ = ("R", "terms")

    def __init__(self, R: LieRealization, terms: Optional[Mapping[Monomial, UnivPoly]] = None):
        self.R = R
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def _raw(cls, R, terms):
        e = cls.__new__(cls)
        e.R = R
        e.terms = terms
        return e

    # constructors

    @classmethod
    def zero(cls, R: LieRealization) -> "EnvElement":
        return cls._raw(R, {})

    @classmethod
    def scalar(cls, R: LieRealization, c) -> "EnvElement":
        c = UnivPoly.coerce(c)
        return cls._raw(R, {(): c} if c else {})

    @classmethod
    def generator(cls, R: LieRealization, idx: int) -> "EnvElement":
        return cls._raw(R, {(idx,): ONE})

    @classmethod
    def from_combo(cls, R: LieRealization, combo: Mapping[int, Fraction]) -> "EnvElement":
        return cls._raw(R, {(k,): UnivPoly.const(v) for k, v in combo.items() if v})

    @classmethod
    def gen(cls, R: LieRealization, i: int, j: int) -> "EnvElement":
        """E_ij or F_ij (canonicalised) as an element."""
        return cls.from_combo(R, R.gen(i, j))

    # inspection

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=-1)

    def is_scalar(self) -> bool:
        return all(not m for m in self.terms)

    def scalar_part(self) -> UnivPoly:
        return self.terms.get((), UnivPoly())

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, EnvElement):
            return self.R is other.R and self.terms == other.terms
        if isinstance(other, (int, Fraction, UnivPoly)):
            return self.terms == EnvElement.scalar(self.R, other).terms
        return NotImplemented

    __hash__ = None

    def _check(self, other: "EnvElement") -> None:
        if self.R is not other.R:
            raise RealizationMismatch(f"{self.R.descriptor()} vs {other.R.descriptor()}")

    def _lift(self, other) -> "EnvElement":
        if isinstance(other, EnvElement):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, UnivPoly)):
            return EnvElement.scalar(self.R, other)
        raise TypeError(f"cannot combine EnvElement with {type(other).__name__}")

    # arithmetic

    def __add__(self, other) -> "EnvElement":
        other = self._lift(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            s = t.get(m)
            s = c if s is None else s + c
            if s:
                t[m] = s
            else:
                t.pop(m, None)
        return EnvElement._raw(self.R, t)

    __radd__ = __add__

    def __neg__(self) -> "EnvElement":
        return EnvElement._raw(self.R, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "EnvElement":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "EnvElement":
        return self._lift(other) - self

    def scale(self, c) -> "EnvElement":
        c = UnivPoly.coerce(c) if not isinstance(c, (int, Fraction)) else c
        if not c:
            return EnvElement.zero(self.R)
        return EnvElement._raw(self.R, {m: v * c for m, v in self.terms.items() if v * c})

    def __mul__(self, other) -> "EnvElement":
        if isinstance(other, (int, Fraction, UnivPoly)):
            return self.scale(other)
        if not isinstance(other, EnvElement):
            return NotImplemented
        return env_mul(self, other)

    def __rmul__(self, other) -> "EnvElement":
        if isinstance(other, (int, Fraction, UnivPoly)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "EnvElement":
        out = EnvElement.scalar(self.R, 1)
        for _ in range(n):
            out = out * self
        return out

    def map_coeffs(self, f) -> "EnvElement":
        return EnvElement(self.R, {m: f(c) for m, c in self.terms.items()})

    def subs_u(self, x) -> "EnvElement":
        """Evaluate every coefficient at ``u = x``."""
        return self.map_coeffs(lambda c: UnivPoly.const(c(x)))

    # text

    def render(self) -> str:
        return render(self)

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"EnvElement({render(self)})"


def env_add(a: EnvElement, b: EnvElement) -> EnvElement:
    return a + b


def env_scale(e: EnvElement, c) -> EnvElement:
    return e.scale(c)


def env_mul(a: EnvElement, b: EnvElement) -> EnvElement:
    """PBW normal form of ``a * b``."""
    a._check(b)
    R = a.R
    acc: dict = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            c = c1 * c2
            if not c:
                continue
            for m, r in mono_mul(R, m1, m2).items():
                t = c * r
                s = acc.get(m)
                acc[m] = t if s is None else s + t
    return EnvElement._raw(R, {m: c for m, c in acc.items() if c})


def env_commutator(a: EnvElement, b: EnvElement) -> EnvElement:
    return env_mul(a, b) - env_mul(b, a)


def env_sum(items: Iterable[EnvElement], R: LieRealization) -> EnvElement:
    acc: dict = {}
    for e in items:
        if e.R is not R:
            raise RealizationMismatch("summands live over different realizations")
        for m, c in e.terms.items():
            s = acc.get(m)
            acc[m] = c if s is None else s + c
    return EnvElement._raw(R, {m: c for m, c in acc.items() if c})


# -- Harish-Chandra projection and eigenvalues ----------------------------------------


class Weight(dict):
    """Values of a highest weight on the Cartan basis indices."""

    def __init__(self, R: LieRealization, values: Mapping[int, Fraction]):
        super().__init__({k: rat(v) for k, v in values.items()})
        self.R = R
        cartan = set(R.cartan())
        if set(self) != cartan:
            missing = sorted(cartan - set(self))
            raise RealizationError(f"weight must be defined exactly on the Cartan generators (missing {missing})")


def weight_from_partition(R: LieRealization, lam) -> Weight:
    """gl: E_ii -> lam_i.  sp-split: F_ii -> lam_i (i <= N/2).  o-split: F_ii -> lam_i (i <= [N/2])."""
    lam = [rat(x) for x in lam]
    N = R.N
    if R.kind == "gl":
        need = N
    elif R.kind in ("sp-split", "o-split"):
        need = N // 2
    else:
        raise RealizationError(f"{R.descriptor()} has no highest-weight convention")
    if len(lam) != need:
        raise RealizationError(f"partition for {R.descriptor()} must have length {need}, got {len(lam)}")
    values = {}
    for i in range(1, need + 1):
        values[R.index[_cartan_label(R, i)]] = lam[i - 1]
    return Weight(R, values)


def _cartan_label(R, i):
    from .realizations import GenId

    return GenId(R.tag, i, i)


def hc_project(e: EnvElement) -> EnvElement:
    """Keep the monomials built only from Cartan (zero-graded) generators."""
    R = e.R
    if not R.is_graded:
        raise RealizationError(f"{R.descriptor()} is not graded")
    zero = [g == "zero" for g in R.grading]
    return EnvElement._raw(R, {m: c for m, c in e.terms.items() if all(zero[k] for k in m)})


def eigenvalue(e: EnvElement, w: Weight) -> UnivPoly:
    """Value of the Harish-Chandra projection at the weight ``w``.

    For a central ``e`` this is its eigenvalue on the highest-weight module.
    """
    if w.R is not e.R:
        raise RealizationMismatch("weight and element live over different realizations")
    out = UnivPoly()
    for m, c in hc_project(e).terms.items():
        v = Fraction(1)
        for k in m:
            v *= w[k]
        out = out + c * v
    return out


def act_on_highest_weight(e: EnvElement, w: Weight) -> dict:
    """Apply ``e`` to a highest-weight vector ``v`` one generator at a time.

    Vectors are maps {sorted lowering monomial: UnivPoly} standing for
    ``monomial * v`` in the Verma module.  Raising generators kill ``v``; Cartan
    generators act by the weight.
    """
    R = e.R
    if not R.is_graded:
        raise RealizationError(f"{R.descriptor()} is not graded")
    grade = R.grading
    out: dict = {}
    for mono, c in e.terms.items():
        vec = {(): c}
        for g in reversed(mono):
            vec = _act_gen(R, g, vec, w, grade)
            if not vec:
                break
        for m, v in vec.items():
            s = out.get(m, UnivPoly()) + v
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


def _act_gen(R, g, vec, w, grade):
    out: dict = {}
    for m, c in vec.items():
        # x_g * (m v): normal order x_g m = sum (lower)(cartan)(raise)
        for q, r in mono_mul(R, (g,), m).items():
            if any(grade[k] == "plus" for k in q):
                continue
            lower = tuple(k for k in q if grade[k] == "minus")
            val = Fraction(r)
            for k in q:
                if grade[k] == "zero":
                    val *= w[k]
            if val:
                s = out.get(lower, UnivPoly()) + c * val
                if s:
                    out[lower] = s
                else:
                    out.pop(lower, None)
    return out


# -- rendering ------------------------------------------------------------------------


def format_monomial(R: LieRealization, m: Monomial) -> str:
    return "*".join(str(R.basis[k]) for k in m)


def render(e: EnvElement) -> str:
    """Deterministic text: terms by (degree, monomial), e.g. ``(u + 1)*E[2,2] - E[2,1]*E[1,2]``."""
    if not e.terms:
        return "0"
    parts = []
    for m in sorted(e.terms, key=lambda m: (len(m), m)):
        c = e.terms[m]
        neg = False
        if len(c.coeffs) == 1 and next(iter(c.coeffs.values())) < 0:
            neg, c = True, -c
        ctext = format_poly(c)
        if not m:
            body = ctext
        elif ctext == "1":
            body = format_monomial(e.R, m)
        elif len(c.coeffs) == 1:
            body = f"{ctext}*{format_monomial(e.R, m)}"
        else:
            body = f"({ctext})*{format_monomial(e.R, m)}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def first_term(e: EnvElement) -> str:
    """The lexicographically first nonzero term, rendered (used as a failure witness)."""
    if not e.terms:
        return "0"
    m = min(e.terms, key=lambda m: (len(m), m))
    return render(EnvElement._raw(e.R, {m: e.terms[m]}))
