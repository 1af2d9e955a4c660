"""Exact coefficients: rationals and sparse univariate polynomials in ``u``."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Rat = Fraction
Scalar = Union[int, Fraction]


def rat(x) -> Fraction:
    """Coerce ints, Fractions and strings like ``"-3/2"`` to a reduced Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def format_rat(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class UnivPoly:
    """Sparse polynomial in the formal parameter ``u`` over the rationals.

    Immutable.  Only nonzero coefficients are stored, keyed by exponent.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, Scalar] | None = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                if e < 0:
                    raise ValueError("negative exponent")
                v = rat(v)
                if v:
                    c[e] = v
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict) -> "UnivPoly":
        p = cls.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def const(cls, x: Scalar) -> "UnivPoly":
        x = rat(x)
        return cls._raw({0: x} if x else {})

    @classmethod
    def u(cls) -> "UnivPoly":
        return cls._raw({1: Fraction(1)})

    @classmethod
    def coerce(cls, x) -> "UnivPoly":
        if isinstance(x, UnivPoly):
            return x
        return cls.const(x)

    # -- inspection --------------------------------------------------------

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def items(self):
        return self._c.items()

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return max(self._c) if self._c else -1

    def is_zero(self) -> bool:
        return not self._c

    def is_const(self) -> bool:
        return not self._c or (len(self._c) == 1 and 0 in self._c)

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError(f"{self} is not constant")
        return self._c.get(0, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, UnivPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == ({0: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "UnivPoly":
        if not isinstance(other, UnivPoly):
            if isinstance(other, (int, Fraction)):
                other = UnivPoly.const(other)
            else:
                return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return UnivPoly._raw(c)

    __radd__ = __add__

    def __neg__(self) -> "UnivPoly":
        return UnivPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other) -> "UnivPoly":
        if not isinstance(other, (UnivPoly, int, Fraction)):
            return NotImplemented
        return self + (-UnivPoly.coerce(other))

    def __rsub__(self, other) -> "UnivPoly":
        return UnivPoly.coerce(other) - self

    def __mul__(self, other) -> "UnivPoly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return UnivPoly._raw({})
            return UnivPoly._raw({e: v * other for e, v in self._c.items()})
        if not isinstance(other, UnivPoly):
            return NotImplemented
        c: dict = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return UnivPoly._raw({e: v for e, v in c.items() if v})

    __rmul__ = __mul__

    def __truediv__(self, other) -> "UnivPoly":
        if isinstance(other, UnivPoly):
            other = other.const_value()
        other = rat(other)
        return self * (1 / other)

    def __pow__(self, n: int) -> "UnivPoly":
        if n < 0:
            raise ValueError("negative power")
        out = UnivPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __call__(self, x) -> Fraction:
        return poly_eval(self, x)

    def shift(self, a: Scalar) -> "UnivPoly":
        """Substitute ``u -> u + a``."""
        a = rat(a)
        upa = UnivPoly._raw({1: Fraction(1), 0: a} if a else {1: Fraction(1)})
        out = UnivPoly()
        for e, v in self._c.items():
            out = out + (upa ** e) * v
        return out

    # -- text ---------------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"UnivPoly({format_poly(self)!r})"


U = UnivPoly.u()
ZERO = UnivPoly()
ONE = UnivPoly.const(1)


def poly_add(p: UnivPoly, q: UnivPoly) -> UnivPoly:
    return p + q


def poly_mul(p: UnivPoly, q: UnivPoly) -> UnivPoly:
    return p * q


def poly_eval(p: UnivPoly, x) -> Fraction:
    """Horner evaluation at a rational point."""
    x = rat(x)
    if not p._c:
        return Fraction(0)
    acc = Fraction(0)
    for e in range(p.degree, -1, -1):
        acc = acc * x + p._c.get(e, 0)
    return acc


def _monomial(e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return "u"
    return f"u^{e}"


def format_poly(p: UnivPoly) -> str:
    """Render as e.g. ``u^2 + 3/2*u - 1`` (descending exponents)."""
    if not p._c:
        return "0"
    parts = []
    for idx, e in enumerate(sorted(p._c, reverse=True)):
        v = p._c[e]
        neg = v < 0
        a = -v if neg else v
        mono = _monomial(e)
        if not mono:
            body = format_rat(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_rat(a)}*{mono}"
        if idx == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def parse_poly(text: str) -> UnivPoly:
    """Inverse of :func:`format_poly` (accepts the same grammar)."""
    s = text.replace(" ", "")
    if s in ("", "0"):
        return UnivPoly()
    if s[0] not in "+-":
        s = "+" + s
    terms = []
    i = 0
    while i < len(s):
        j = i + 1
        while j < len(s) and s[j] not in "+-":
            j += 1
        terms.append(s[i:j])
        i = j
    c: dict = {}
    for t in terms:
        sign = -1 if t[0] == "-" else 1
        body = t[1:]
        if "u" in body:
            coef, _, mono = body.rpartition("u")
            coef = coef.rstrip("*")
            v = rat(coef) if coef else Fraction(1)
            e = int(mono[1:]) if mono.startswith("^") else 1
        else:
            v, e = rat(body), 0
        c[e] = c.get(e, 0) + sign * v
    return UnivPoly(c)


def product(factors: Iterable[UnivPoly]) -> UnivPoly:
    out = ONE
    for f in factors:
        out = out * f
    return out
