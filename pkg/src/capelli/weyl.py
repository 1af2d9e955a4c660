"""Exterior and symmetric algebras in 2N variables tensored with U(g).

Variables e_1..e_N get ids 0..N-1 and e*_1..e*_N get ids N..2N-1.  A word is a
sorted tuple of ids; exterior words have no repeats and carry the sorting sign
into the coefficient.  Variables commute with everything in U(g).

The bracket <phi> pairs phi against the divided powers of tau = sum e_i e*_i
under the Fischer inner product, in which distinct monomials are orthogonal
and <m|m> is the product of the factorials of the variable multiplicities.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import reduce
from math import comb, factorial
from typing import Callable, Iterable, Mapping, Optional, Sequence

from . import linalg
from .coeff import U, UnivPoly, rat
from .matrices import NCMatrix, adjusted_matrix, generator_matrix, weak_sequences
from .pbw import EnvElement, env_sum, first_term, render
from .realizations import LieRealization, RealizationError, epsilon, prime

EXTERIOR = "exterior"
SYMMETRIC = "symmetric"
FLAVORS = (EXTERIOR, SYMMETRIC)


class FlavorError(ValueError):
    pass


# -- words ------------------------------------------------------------------------------


def merge_words(w1: tuple, w2: tuple, flavor: str) -> tuple[int, tuple]:
    """(sign, sorted word) for the product w1 * w2; sign 0 means the product vanishes."""
    if flavor == SYMMETRIC:
        return 1, tuple(sorted(w1 + w2))
    if not w1 or not w2:
        return 1, w1 + w2
    if set(w1) & set(w2):
        return 0, ()
    inversions = 0
    j = 0
    # count pairs x in w1, y in w2 with x > y
    for x in w1:
        while j < len(w2) and w2[j] < x:
            j += 1
        inversions += j
    return (-1 if inversions % 2 else 1), tuple(sorted(w1 + w2))


def sort_word(ids: Sequence[int], flavor: str) -> tuple[int, tuple]:
    """Canonicalize an ordered list of variable ids."""
    ids = list(ids)
    if flavor == SYMMETRIC:
        return 1, tuple(sorted(ids))
    if len(set(ids)) != len(ids):
        return 0, ()
    inv = sum(1 for i in range(len(ids)) for j in range(i + 1, len(ids)) if ids[i] > ids[j])
    return (-1 if inv % 2 else 1), tuple(sorted(ids))


def multiplicity_factorial(word: tuple) -> int:
    out = 1
    for m in Counter(word).values():
        out *= factorial(m)
    return out


def var_name(v: int, N: int) -> str:
    return f"e{v + 1}" if v < N else f"e*{v - N + 1}"


def format_word(word: tuple, N: int) -> str:
    if not word:
        return "1"
    parts = []
    for v, m in sorted(Counter(word).items()):
        parts.append(var_name(v, N) + (f"^{m}" if m > 1 else ""))
    return "*".join(parts)


# -- elements ----------------------------------------------------------------------------


class ExtElement:
    """Map from words to EnvElement coefficients, over one realization and flavor."""

    __slots__ = ("R", "flavor", "N", "terms")

    def __init__(self, R: LieRealization, flavor: str, terms: Optional[Mapping[tuple, EnvElement]] = None, N: Optional[int] = None):
        if flavor not in FLAVORS:
            raise FlavorError(f"unknown flavor {flavor!r}")
        self.R = R
        self.flavor = flavor
        self.N = R.N if N is None else N
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def _raw(cls, R, flavor, N, terms):
        x = cls.__new__(cls)
        x.R, x.flavor, x.N, x.terms = R, flavor, N, terms
        return x

    # constructors

    @classmethod
    def zero(cls, R, flavor) -> "ExtElement":
        return cls._raw(R, flavor, R.N, {})

    @classmethod
    def scalar(cls, R, flavor, c) -> "ExtElement":
        e = EnvElement.scalar(R, c)
        return cls._raw(R, flavor, R.N, {(): e} if e else {})

    @classmethod
    def monomial(cls, R, flavor, ids: Sequence[int], coeff=1) -> "ExtElement":
        """An ordered product of variables times a coefficient (EnvElement or scalar)."""
        s, w = sort_word(ids, flavor)
        c = coeff if isinstance(coeff, EnvElement) else EnvElement.scalar(R, coeff)
        if not s or not c:
            return cls.zero(R, flavor)
        return cls._raw(R, flavor, R.N, {w: c if s > 0 else -c})

    # inspection

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExtElement):
            return NotImplemented
        return self.R is other.R and self.flavor == other.flavor and self.terms == other.terms

    __hash__ = None

    def coefficient(self, ids: Sequence[int]) -> EnvElement:
        """Coefficient of the ordered variable product ``ids`` (sign-adjusted in exterior flavor)."""
        s, w = sort_word(ids, self.flavor)
        if not s:
            return EnvElement.zero(self.R)
        c = self.terms.get(w, EnvElement.zero(self.R))
        return c if s > 0 else -c

    def term_count(self) -> int:
        return sum(len(c.terms) for c in self.terms.values())

    def _check(self, other: "ExtElement") -> None:
        if not isinstance(other, ExtElement):
            raise TypeError(f"expected ExtElement, got {type(other).__name__}")
        if self.flavor != other.flavor:
            raise FlavorError(f"{self.flavor} vs {other.flavor}")
        if self.R is not other.R:
            raise RealizationError("extended elements over different realizations")

    # arithmetic

    def __add__(self, other) -> "ExtElement":
        if not isinstance(other, ExtElement):
            other = ExtElement.scalar(self.R, self.flavor, other)
        self._check(other)
        t = dict(self.terms)
        for w, c in other.terms.items():
            s = t[w] + c if w in t else c
            if s:
                t[w] = s
            else:
                t.pop(w, None)
        return ExtElement._raw(self.R, self.flavor, self.N, t)

    __radd__ = __add__

    def __neg__(self) -> "ExtElement":
        return ExtElement._raw(self.R, self.flavor, self.N, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other) -> "ExtElement":
        if not isinstance(other, ExtElement):
            other = ExtElement.scalar(self.R, self.flavor, other)
        return self + (-other)

    def scale(self, c) -> "ExtElement":
        if isinstance(c, EnvElement):
            return ExtElement(self.R, self.flavor, {w: v * c for w, v in self.terms.items()}, self.N)
        return ExtElement(self.R, self.flavor, {w: v.scale(c) for w, v in self.terms.items()}, self.N)

    def __mul__(self, other) -> "ExtElement":
        if isinstance(other, ExtElement):
            return ext_mul(self, other)
        if isinstance(other, (int, Fraction, UnivPoly, EnvElement)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other) -> "ExtElement":
        if isinstance(other, (int, Fraction, UnivPoly)):
            return self.scale(other)
        if isinstance(other, EnvElement):
            return ExtElement(self.R, self.flavor, {w: other * v for w, v in self.terms.items()}, self.N)
        return NotImplemented

    def __pow__(self, n: int) -> "ExtElement":
        out = ExtElement.scalar(self.R, self.flavor, 1)
        for _ in range(n):
            out = out * self
        return out

    # text

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            parts.append(f"[{format_word(w, self.N)}]*({render(self.terms[w])})")
        return " + ".join(parts)

    def first_term(self) -> str:
        if not self.terms:
            return "0"
        w = min(self.terms, key=lambda w: (len(w), w))
        return f"[{format_word(w, self.N)}]*({first_term(self.terms[w])})"

    __str__ = render

    def __repr__(self) -> str:
        return f"ExtElement({self.render()})"


def ext_mul(a: ExtElement, b: ExtElement) -> ExtElement:
    a._check(b)
    acc: dict = {}
    for w1, c1 in a.terms.items():
        for w2, c2 in b.terms.items():
            s, w = merge_words(w1, w2, a.flavor)
            if not s:
                continue
            c = c1 * c2
            if not c:
                continue
            if s < 0:
                c = -c
            acc[w] = acc[w] + c if w in acc else c
    return ExtElement(a.R, a.flavor, acc, a.N)


def ext_sum(items: Iterable[ExtElement], R: Optional[LieRealization] = None, flavor: str = SYMMETRIC) -> ExtElement:
    """Sum of extended elements; ``R`` is needed only when ``items`` may be empty."""
    items = list(items)
    if R is None:
        if not items:
            raise ValueError("an empty sum needs a realization")
        R, flavor = items[0].R, items[0].flavor
    out = ExtElement.zero(R, flavor)
    for x in items:
        out = out + x
    return out


def commutator(a: ExtElement, b: ExtElement) -> ExtElement:
    return a * b - b * a


# -- building blocks ---------------------------------------------------------------------------


def _entry(Z: NCMatrix, i: int, j: int, u) -> EnvElement:
    e = Z.rows[i - 1][j - 1]
    return e + UnivPoly.coerce(u) if i == j else e


def eta(Z: NCMatrix, j: int, u=0, flavor: str = SYMMETRIC, row: bool = False) -> ExtElement:
    """eta_j(u) = sum_i e_i Z_ij(u); with ``row=True`` the transposed sum_i e_i Z_ji(u)."""
    R = Z.R
    terms = {}
    for i in range(1, Z.size + 1):
        c = _entry(Z, j, i, u) if row else _entry(Z, i, j, u)
        if c:
            terms[(i - 1,)] = c
    return ExtElement(R, flavor, terms)


def estar(R: LieRealization, j: int, flavor: str = SYMMETRIC) -> ExtElement:
    return ExtElement.monomial(R, flavor, [R.N + j - 1])


def evar(R: LieRealization, i: int, flavor: str = SYMMETRIC) -> ExtElement:
    return ExtElement.monomial(R, flavor, [i - 1])


def eta_dag(Z: NCMatrix, j: int, u=0, flavor: str = SYMMETRIC, row: bool = False) -> ExtElement:
    """eta_j(u) e*_j."""
    return eta(Z, j, u, flavor, row) * estar(Z.R, j, flavor)


def xi(Z: NCMatrix, u=0, flavor: str = SYMMETRIC, cols: Optional[Iterable[int]] = None) -> ExtElement:
    """sum_{i, j in cols} e_i e*_j Z_ij(u); all columns by default."""
    R, N = Z.R, Z.size
    cols = range(1, N + 1) if cols is None else cols
    terms: dict = {}
    for j in cols:
        for i in range(1, N + 1):
            c = _entry(Z, i, j, u)
            if not c:
                continue
            s, w = sort_word([i - 1, N + j - 1], flavor)
            terms[w] = (terms[w] if w in terms else EnvElement.zero(R)) + (c if s > 0 else -c)
    return ExtElement(R, flavor, terms)


def tau(R: LieRealization, flavor: str = SYMMETRIC, idx: Optional[Iterable[int]] = None) -> ExtElement:
    N = R.N
    idx = range(1, N + 1) if idx is None else idx
    return ext_sum((ExtElement.monomial(R, flavor, [i - 1, N + i - 1]) for i in idx), R, flavor)


def _split_only(R: LieRealization) -> int:
    if R.kind not in ("sp-split", "o-split") or R.N % 2:
        raise RealizationError("this element needs the split realization with even N")
    return R.N // 2


def tau_minus(R, flavor=SYMMETRIC) -> ExtElement:
    return tau(R, flavor, range(1, _split_only(R) + 1))


def tau_plus(R, flavor=SYMMETRIC) -> ExtElement:
    n = _split_only(R)
    return tau(R, flavor, range(n + 1, R.N + 1))


def omega(R, flavor=SYMMETRIC) -> ExtElement:
    """sum_i eps(i) e_i e*_i."""
    _split_only(R)
    N = R.N
    return ext_sum((ExtElement.monomial(R, flavor, [i - 1, N + i - 1], epsilon(i, N)) for i in range(1, N + 1)), R, flavor)


def rho(R, flavor=SYMMETRIC) -> ExtElement:
    """-sum_{i <= n} e_i e_{i'}."""
    n = _split_only(R)
    N = R.N
    return ext_sum((ExtElement.monomial(R, flavor, [i - 1, prime(i, N) - 1], -1) for i in range(1, n + 1)), R, flavor)


def rho_star(R, flavor=SYMMETRIC) -> ExtElement:
    """sum_{i <= n} e*_i e*_{i'}."""
    n = _split_only(R)
    N = R.N
    return ext_sum((ExtElement.monomial(R, flavor, [N + i - 1, N + prime(i, N) - 1]) for i in range(1, n + 1)), R, flavor)


def theta(R, flavor=SYMMETRIC) -> ExtElement:
    """sum_{a,b} eps(b) e_a e_b F_{a b'}."""
    _split_only(R)
    N = R.N
    F = generator_matrix(R)
    terms = []
    for a in range(1, N + 1):
        for b in range(1, N + 1):
            c = F.rows[a - 1][prime(b, N) - 1]
            if c:
                terms.append(ExtElement.monomial(R, flavor, [a - 1, b - 1], c.scale(epsilon(b, N))))
    return ext_sum(terms, R, flavor)


def theta_star(R, flavor=SYMMETRIC) -> ExtElement:
    """-sum_{i,j} eps(i) e*_i e*_j F_{i' j}."""
    _split_only(R)
    N = R.N
    F = generator_matrix(R)
    terms = []
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            c = F.rows[prime(i, N) - 1][j - 1]
            if c:
                terms.append(ExtElement.monomial(R, flavor, [N + i - 1, N + j - 1], c.scale(-epsilon(i, N))))
    return ext_sum(terms, R, flavor)


class SpCalculus:
    """The named elements over the split symplectic realization, in symmetric flavor."""

    def __init__(self, R: LieRealization):
        if R.kind != "sp-split":
            raise RealizationError("the sp calculus needs the split symplectic realization")
        self.R = R
        self.N = R.N
        self.n = R.N // 2
        self.F = generator_matrix(R)
        self.Ft = adjusted_matrix(R, "tilde")
        self.tau = tau(R)
        self.tau_minus = tau_minus(R)
        self.tau_plus = tau_plus(R)
        self.omega = omega(R)
        self.rho = rho(R)
        self.rho_star = rho_star(R)
        self.theta = theta(R)
        self.theta_star = theta_star(R)
        self._xi0 = xi(self.F)
        self._xim0 = xi(self.F, cols=range(1, self.n + 1))
        self._xip0 = xi(self.F, cols=range(self.n + 1, self.N + 1))

    def one(self) -> ExtElement:
        return ExtElement.scalar(self.R, SYMMETRIC, 1)

    def eta(self, j, u=0) -> ExtElement:
        return eta(self.F, j, u)

    def eta_dag(self, j, u=0) -> ExtElement:
        return eta_dag(self.F, j, u)

    def eta_tilde_dag(self, j, u=0) -> ExtElement:
        """Built from the adjusted matrix F~ directly."""
        return eta_dag(self.Ft, j, u)

    def xi(self, u=0) -> ExtElement:
        return self._xi0 + self.tau.scale(UnivPoly.coerce(u)) if u != 0 else self._xi0

    def xi_minus(self, u=0) -> ExtElement:
        return self._xim0 + self.tau_minus.scale(UnivPoly.coerce(u)) if u != 0 else self._xim0

    def xi_plus(self, u=0) -> ExtElement:
        return self._xip0 + self.tau_plus.scale(UnivPoly.coerce(u)) if u != 0 else self._xip0

    def named(self, name: str, u=0) -> ExtElement:
        table: dict[str, Callable[[], ExtElement]] = {
            "tau": lambda: self.tau,
            "tau_minus": lambda: self.tau_minus,
            "tau_plus": lambda: self.tau_plus,
            "omega": lambda: self.omega,
            "rho": lambda: self.rho,
            "rho_star": lambda: self.rho_star,
            "theta": lambda: self.theta,
            "theta_star": lambda: self.theta_star,
            "xi": lambda: self.xi(u),
            "xi_minus": lambda: self.xi_minus(u),
            "xi_plus": lambda: self.xi_plus(u),
        }
        if name not in table:
            raise KeyError(f"unknown element {name!r}; known: {', '.join(table)}")
        return table[name]()

    # factorial powers

    def rising(self, f: Callable, u, k: int, step: int = 1) -> ExtElement:
        u = UnivPoly.coerce(u)
        out = self.one()
        for t in range(k):
            out = out * f(u + step * t)
        return out

    def xi_rising(self, u, k):
        return self.rising(self.xi, u, k)

    def xi_double(self, u, k):
        return self.rising(self.xi, u, k, 2)

    def xim_rising(self, u, k):
        return self.rising(self.xi_minus, u, k)

    def xip_rising(self, u, k):
        return self.rising(self.xi_plus, u, k)

    def W(self, k: int, u=U) -> ExtElement:
        """sum over weak alpha of (k!/alpha!) eta~+_{alpha_1}(u) ... eta~+_{alpha_k}(u+k-1)."""
        u = UnivPoly.coerce(u)
        out = ExtElement.zero(self.R, SYMMETRIC)
        for alpha in weak_sequences(self.N, k):
            term = self.one()
            for t, a in enumerate(alpha):
                term = term * self.eta_tilde_dag(a, u + t)
            out = out + term.scale(Fraction(factorial(k), multiplicity_factorial(alpha)))
        return out if k else self.one()

    def W_from_halves(self, k: int, u=U) -> ExtElement:
        """sum_l C(k,l) Xi_-^(l rising)(u) Xi_+^(k-l rising)(u+l-1)."""
        u = UnivPoly.coerce(u)
        return ext_sum(
            (self.xim_rising(u, l) * self.xip_rising(u + l - 1, k - l)).scale(comb(k, l)) for l in range(k + 1)
        ) if k else self.one()

    def V(self, k: int, u=U) -> ExtElement:
        """sum_l C(k,l) Xi_-^(l rising)(u) Xi_+^(k-l rising)(u+l)."""
        if k < 0:
            return ExtElement.zero(self.R, SYMMETRIC)
        u = UnivPoly.coerce(u)
        return ext_sum(
            ((self.xim_rising(u, l) * self.xip_rising(u + l, k - l)).scale(comb(k, l)) for l in range(k + 1)),
            self.R,
            SYMMETRIC,
        )

    def W_prime(self, k: int, u=U) -> ExtElement:
        """Xi^(k-1 rising)(u) Xi(u + k/2 - 1)."""
        if k == 0:
            return self.one()
        u = UnivPoly.coerce(u)
        return self.xi_rising(u, k - 1) * self.xi(u + Fraction(k, 2) - 1)

    def W_prime_alt(self, k: int, u=U) -> ExtElement:
        """Xi^(k rising)(u) - (k/2) Xi^(k-1 rising)(u) tau."""
        if k == 0:
            return self.one()
        u = UnivPoly.coerce(u)
        return self.xi_rising(u, k) - (self.xi_rising(u, k - 1) * self.tau).scale(Fraction(k, 2))


def build_WVW(R: LieRealization, k: int, u=U) -> tuple[ExtElement, ExtElement, ExtElement]:
    """(W_k(u), V_k(u), W'_k(u)) over the split symplectic realization."""
    calc = SpCalculus(R)
    return calc.W(k, u), calc.V(k, u), calc.W_prime(k, u)


# -- pairing and bracket -----------------------------------------------------------------------


def _require_symmetric(phi: ExtElement) -> None:
    if phi.flavor != SYMMETRIC:
        raise FlavorError("the Fischer pairing is defined on the symmetric flavor")


def _scalar_coeffs(psi) -> dict:
    if isinstance(psi, ExtElement):
        _require_symmetric(psi)
        out = {}
        for w, c in psi.terms.items():
            if not c.is_scalar():
                raise ValueError("the right argument of the pairing must have scalar coefficients")
            out[w] = c.scalar_part()
        return out
    return {tuple(sorted(w)): UnivPoly.coerce(c) for w, c in psi.items()}


def fischer_pair(phi: ExtElement, psi) -> EnvElement:
    """<phi | psi>: bilinear, monomials orthogonal, <m|m> = product of multiplicity factorials."""
    _require_symmetric(phi)
    R = phi.R
    out = EnvElement.zero(R)
    for w, c in _scalar_coeffs(psi).items():
        if w in phi.terms and c:
            out = out + phi.terms[w].scale(c * multiplicity_factorial(w))
    return out


def _is_balanced(w: tuple, N: int) -> bool:
    return Counter(v for v in w if v < N) == Counter(v - N for v in w if v >= N)


def bracket(phi: ExtElement) -> EnvElement:
    """<phi> = sum_k <phi | tau^k / k!>, evaluated termwise: a balanced word e_a e*_a contributes a!."""
    _require_symmetric(phi)
    N = phi.N
    parts = []
    for w, c in phi.terms.items():
        if _is_balanced(w, N):
            half = tuple(v for v in w if v < N)
            parts.append(c.scale(multiplicity_factorial(half)))
    return env_sum(parts, phi.R)


def divided_tau_power(R: LieRealization, k: int) -> ExtElement:
    return (tau(R) ** k).scale(Fraction(1, factorial(k)))


def bracket_via_pairing(phi: ExtElement) -> EnvElement:
    """Literal sum of Fischer pairings against tau^(k); reference for :func:`bracket`."""
    _require_symmetric(phi)
    degrees = {len(w) for w in phi.terms}
    out = EnvElement.zero(phi.R)
    for d in sorted(degrees):
        if d % 2 == 0:
            out = out + fischer_pair(phi, divided_tau_power(phi.R, d // 2))
    return out


def top_coefficient(phi: ExtElement, ids: Optional[Sequence[int]] = None) -> EnvElement:
    """Coefficient of e_1 ... e_N (default) or of the given ordered word, exterior flavor."""
    if phi.flavor != EXTERIOR:
        raise FlavorError("top coefficients are taken in the exterior flavor")
    ids = list(range(phi.N)) if ids is None else ids
    return phi.coefficient(ids)


def interleaved_top(N: int) -> list[int]:
    """Ordered ids of e_1 e*_1 e_2 e*_2 ... e_N e*_N."""
    out = []
    for i in range(N):
        out += [i, N + i]
    return out


# -- linear substitutions ---------------------------------------------------------------------


def _poly_mul(p: dict, q: dict, flavor: str) -> dict:
    out: dict = {}
    for w1, a in p.items():
        for w2, b in q.items():
            s, w = merge_words(w1, w2, flavor)
            if s:
                out[w] = out.get(w, 0) + s * a * b
    return {w: v for w, v in out.items() if v}


def transform(phi: ExtElement, g) -> ExtElement:
    """Apply the substitution b_j -> sum_i g_ij b_i (b = (e, e*)), extended multiplicatively."""
    g = linalg.to_matrix(g)
    M = 2 * phi.N
    if len(g) != M or any(len(r) != M for r in g):
        raise ValueError(f"transformation must be {M}x{M}")
    if not linalg.det(g):
        raise linalg.SingularMatrixError("transformation must be invertible")
    images = [{(i,): g[i][j] for i in range(M) if g[i][j]} for j in range(M)]
    cache: dict = {}
    out: dict = {}
    R = phi.R
    for w, c in phi.terms.items():
        if w not in cache:
            cache[w] = reduce(lambda p, v: _poly_mul(p, images[v], phi.flavor), w, {(): Fraction(1)})
        for w2, s in cache[w].items():
            t = c.scale(s)
            out[w2] = out[w2] + t if w2 in out else t
    return ExtElement(R, phi.flavor, out, phi.N)


def inverse_transpose(g) -> list:
    return linalg.transpose(linalg.inverse(linalg.to_matrix(g)))


def block_transform(N: int, a, b, c, d, J) -> list:
    """[[a 1, b tJ], [c tJ^{-1}, d 1]] as a 2N x 2N rational matrix."""
    a, b, c, d = (rat(x) for x in (a, b, c, d))
    J = linalg.to_matrix(J)
    Jt = linalg.transpose(J)
    Jti = linalg.inverse(Jt)
    g = linalg.zeros(2 * N)
    for i in range(N):
        g[i][i] = a
        g[N + i][N + i] = d
        for j in range(N):
            g[i][N + j] = b * Jt[i][j]
            g[N + i][j] = c * Jti[i][j]
    return g
