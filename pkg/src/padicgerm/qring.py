"""Exact arithmetic in Q(q), the rational functions of one variable.

The variable ``q`` stands for the residue-field cardinality.  Everything here is
exact: coefficients are Python ints or :class:`fractions.Fraction`, never floats.

A :class:`RationalFunctionQ` is stored in canonical form, so ``==`` is semantic
equality:

* numerator and denominator share no nontrivial polynomial factor,
* the denominator is a polynomial with nonzero constant term and leading
  coefficient 1 (all powers of ``q`` live in the numerator).
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from numbers import Rational

from sympy.polys.densearith import dup_exquo
from sympy.polys.domains import ZZ
from sympy.polys.euclidtools import dup_gcd

from .errors import DomainError

__all__ = [
    "LaurentPolyQ",
    "RationalFunctionQ",
    "q",
    "qpow",
    "one",
    "zero",
    "qbinom",
    "mu_gl",
    "q_factorial",
    "verify_newton_identity",
    "parse_rational_function",
]


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _as_scalar(c):
    if isinstance(c, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return _norm(c)
    if isinstance(c, Rational):
        return _norm(Fraction(c.numerator, c.denominator))
    raise TypeError(f"not an exact rational: {c!r}")


class LaurentPolyQ:
    """Finitely supported map ``exponent -> rational``; zero coefficients are dropped."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for k, v in dict(coeffs).items():
                v = _as_scalar(v)
                if v:
                    c[int(k)] = v
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c):
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, k, c=1):
        c = _as_scalar(c)
        return cls._raw({k: c} if c else {})

    @classmethod
    def constant(cls, c):
        return cls.monomial(0, c)

    @property
    def coeffs(self):
        return dict(self._c)

    def items(self):
        return self._c.items()

    def coeff(self, k):
        return self._c.get(k, 0)

    def is_zero(self):
        return not self._c

    def is_constant(self):
        return not self._c or (len(self._c) == 1 and 0 in self._c)

    def degree(self):
        if not self._c:
            raise DomainError("degree of zero polynomial")
        return max(self._c)

    def valuation(self):
        if not self._c:
            raise DomainError("valuation of zero polynomial")
        return min(self._c)

    def leading_coeff(self):
        return self._c[self.degree()]

    def __len__(self):
        return len(self._c)

    def __bool__(self):
        return bool(self._c)

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, LaurentPolyQ):
            try:
                other = LaurentPolyQ.constant(other)
            except TypeError:
                return NotImplemented
        if len(other._c) > len(self._c):
            a, b = other._c, self._c
        else:
            a, b = self._c, other._c
        c = dict(a)
        for k, v in b.items():
            s = c.get(k, 0) + v
            if s:
                c[k] = _norm(s)
            else:
                c.pop(k, None)
        return LaurentPolyQ._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolyQ._raw({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPolyQ):
            try:
                other = LaurentPolyQ.constant(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s):
        s = _as_scalar(s)
        if not s:
            return LaurentPolyQ._raw({})
        if s == 1:
            return self
        return LaurentPolyQ._raw({k: _norm(v * s) for k, v in self._c.items()})

    def shift(self, k):
        """Multiply by ``q**k``."""
        if k == 0:
            return self
        return LaurentPolyQ._raw({e + k: v for e, v in self._c.items()})

    def __mul__(self, other):
        if not isinstance(other, LaurentPolyQ):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        a, b = self._c, other._c
        if not a or not b:
            return LaurentPolyQ._raw({})
        if len(b) == 1:
            (k, v), = b.items()
            return LaurentPolyQ._raw({e + k: _norm(c * v) for e, c in a.items()})
        if len(a) == 1:
            return other * self
        c = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + c1 * c2
        return LaurentPolyQ._raw({k: _norm(v) for k, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if len(self._c) != 1:
                raise DomainError("negative power of a non-monomial Laurent polynomial")
            (e, v), = self._c.items()
            return LaurentPolyQ._raw({e * k: _norm(Fraction(1) / v ** -k)})
        result = LaurentPolyQ.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPolyQ):
            return self._c == other._c
        if isinstance(other, RationalFunctionQ):
            return other == self
        try:
            return self._c == LaurentPolyQ.constant(other)._c
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def evaluate(self, value):
        value = Fraction(value)
        if value == 0 and self._c and min(self._c) < 0:
            raise DomainError("negative power of q evaluated at 0")
        return _norm(sum((Fraction(v) * value ** k for k, v in self._c.items()), Fraction(0)))

    def __repr__(self):
        return f"LaurentPolyQ({self._c!r})"

    def __str__(self):
        return _format_poly(self._c)


def _format_poly(c):
    if not c:
        return "0"
    parts = []
    for k in sorted(c, reverse=True):
        v = c[k]
        sign = "-" if v < 0 else "+"
        a = abs(v)
        if k == 0:
            body = str(a)
        else:
            mono = "q" if k == 1 else f"q^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += sign + body
    return out


def _to_int_dup(c, shift):
    """Dense integer list (highest degree first) of ``L * poly * q**shift``, and ``L``."""
    den = 1
    for v in c.values():
        if type(v) is Fraction:
            den = lcm(den, v.denominator)
    top = max(c) + shift
    dense = [ZZ(0)] * (top + 1)
    for k, v in c.items():
        dense[top - (k + shift)] = ZZ(int(v * den))
    return dense, den


def _from_int_dup(dense, shift, scale):
    top = len(dense) - 1
    out = {}
    for i, v in enumerate(dense):
        if v:
            out[top - i + shift] = _norm(Fraction(int(v)) * scale)
    return LaurentPolyQ._raw(out)


class RationalFunctionQ:
    """Element of Q(q) in canonical reduced form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        num = _to_laurent(num)
        den = LaurentPolyQ.constant(1) if den is None else _to_laurent(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self._hash = None
        self.num, self.den = _normalize(num, den)

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def from_laurent(cls, p):
        return cls._raw(p, _ONE_POLY)

    def is_laurent(self):
        """True when the denominator is 1."""
        return self.den.is_constant()

    def is_polynomial(self):
        return self.is_laurent() and (self.num.is_zero() or self.num.valuation() >= 0)

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def as_laurent(self):
        if not self.is_laurent():
            raise DomainError(f"{self} is not a Laurent polynomial")
        return self.num

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            if self.is_laurent():
                return RationalFunctionQ._raw(self.num + other.num, _ONE_POLY)
            return RationalFunctionQ(self.num + other.num, self.den)
        return RationalFunctionQ(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunctionQ._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.is_laurent() and other.is_laurent():
            return RationalFunctionQ._raw(self.num * other.num, _ONE_POLY)
        if other.is_laurent() and len(other.num) == 1 and next(iter(other.num.items()))[0] == 0:
            # scalar
            return RationalFunctionQ._raw(self.num * other.num, self.den)
        return RationalFunctionQ(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFunctionQ(self.den, self.num)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunctionQ(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if self.is_laurent():
            return RationalFunctionQ._raw(self.num ** k, _ONE_POLY)
        return RationalFunctionQ._raw(self.num ** k, self.den ** k)

    def shift(self, k):
        """Multiply by ``q**k``."""
        return RationalFunctionQ._raw(self.num.shift(k), self.den)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def evaluate(self, value):
        """Exact value at a rational ``q``; refuses poles."""
        value = Fraction(value)
        d = self.den.evaluate(value)
        if d == 0:
            raise DomainError(f"q={value} is a pole of {self}")
        return _norm(Fraction(self.num.evaluate(value)) / d)

    def to_text(self):
        """Canonical ``(num)/(den)`` with integer-coefficient polynomials in q."""
        if self.num.is_zero():
            return "0"
        shift = max(0, -self.num.valuation())
        num = self.num.shift(shift)
        den = self.den.shift(shift)
        scale = 1
        for v in list(num._c.values()) + list(den._c.values()):
            if type(v) is Fraction:
                scale = lcm(scale, v.denominator)
        num, den = num.scale(scale), den.scale(scale)
        g = 0
        for v in list(num._c.values()) + list(den._c.values()):
            g = gcd(g, int(v))
        num, den = num.scale(Fraction(1, g)), den.scale(Fraction(1, g))
        if den.is_constant() and den.coeff(0) == 1:
            return _format_poly(num._c)
        return f"({_format_poly(num._c)})/({_format_poly(den._c)})"

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"RationalFunctionQ('{self.to_text()}')"


_ONE_POLY = LaurentPolyQ.constant(1)


def _to_laurent(x):
    if isinstance(x, LaurentPolyQ):
        return x
    return LaurentPolyQ.constant(x)


def _coerce(x):
    if isinstance(x, RationalFunctionQ):
        return x
    if isinstance(x, LaurentPolyQ):
        return RationalFunctionQ._raw(x, _ONE_POLY)
    try:
        return RationalFunctionQ._raw(LaurentPolyQ.constant(x), _ONE_POLY)
    except TypeError:
        return NotImplemented


def _normalize(num, den):
    if num.is_zero():
        return LaurentPolyQ._raw({}), _ONE_POLY
    # move every power of q into the numerator
    v = den.valuation()
    if v:
        den = den.shift(-v)
        num = num.shift(-v)
    if den.is_constant():
        c = den.coeff(0)
        return num.scale(Fraction(1) / c), _ONE_POLY
    nv = num.valuation()
    n_int, n_scale = _to_int_dup(num._c, -nv)
    d_int, d_scale = _to_int_dup(den._c, 0)
    h = dup_gcd(n_int, d_int, ZZ)
    if len(h) > 1:
        n_int = dup_exquo(n_int, h, ZZ)
        d_int = dup_exquo(d_int, h, ZZ)
    lead = Fraction(int(d_int[0]))
    num = _from_int_dup(n_int, nv, Fraction(d_scale, n_scale) / lead)
    den = _from_int_dup(d_int, 0, 1 / lead)
    if den.is_constant():
        return num.scale(Fraction(1) / den.coeff(0)), _ONE_POLY
    return num, den


@lru_cache(maxsize=None)
def qpow(k):
    """``q**k`` as a rational function (k may be negative)."""
    return RationalFunctionQ._raw(LaurentPolyQ.monomial(k), _ONE_POLY)


q = qpow(1)
one = qpow(0)
zero = RationalFunctionQ._raw(LaurentPolyQ._raw({}), _ONE_POLY)


@lru_cache(maxsize=None)
def q_factorial(n):
    """``[n]_q! = prod_{i=1}^n (1 - q^i)/(1 - q)``."""
    if n < 0:
        raise DomainError("negative factorial")
    out = one
    for i in range(1, n + 1):
        out = out * RationalFunctionQ(1 - LaurentPolyQ.monomial(i), 1 - LaurentPolyQ.monomial(1))
    return out


@lru_cache(maxsize=None)
def qbinom(n, beta):
    """Gaussian binomial coefficient ``(n choose beta)_q``."""
    if n < 0 or beta < 0:
        raise DomainError("qbinom needs nonnegative arguments")
    if beta > n:
        raise DomainError(f"qbinom({n}, {beta}): beta exceeds n")
    return q_factorial(n) / (q_factorial(beta) * q_factorial(n - beta))


@lru_cache(maxsize=None)
def mu_gl(n):
    """``mu(GL_n) = prod_{i=1}^n (1 - q^-1)/(1 - q^-i)``; ``mu_gl(0) = 1``."""
    if n < 0:
        raise DomainError("mu_gl needs n >= 0")
    out = one
    inv_q = LaurentPolyQ.monomial(-1)
    for i in range(1, n + 1):
        out = out * RationalFunctionQ(1 - inv_q, 1 - LaurentPolyQ.monomial(-i))
    return out


def _xpoly_mul(a, b):
    out = [zero] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca.is_zero():
            continue
        for j, cb in enumerate(b):
            out[i + j] = out[i + j] + ca * cb
    return out


def verify_newton_identity(n):
    """Check ``X^n = sum_beta (n choose beta)_q prod_{i<beta} (X - q^i)`` in Q(q)[X]."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    lhs = [zero] * n + [one]
    rhs = [zero] * (n + 1)
    falling = [one]
    for beta in range(n + 1):
        c = qbinom(n, beta)
        for i, f in enumerate(falling):
            rhs[i] = rhs[i] + c * f
        falling = _xpoly_mul(falling, [-qpow(beta), one])
    return lhs == rhs


_TERM = re.compile(
    r"""\s*([+-])?\s*
        (?:(\d+)\s*\*?\s*)?
        (q(?:\s*\^\s*(\(?-?\d+\)?))?)?\s*""",
    re.VERBOSE,
)


def _parse_poly(text):
    s = text.strip()
    if s.startswith("(") and s.endswith(")") and _balanced(s[1:-1]):
        s = s[1:-1]
    if not s:
        raise ValueError("empty polynomial")
    pos = 0
    out = LaurentPolyQ()
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise ValueError(f"cannot parse {text!r} at {s[pos:]!r}")
        if pos > 0 and m.group(1) is None:
            raise ValueError(f"missing operator in {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        c = int(m.group(2)) if m.group(2) else 1
        if m.group(3):
            e = int(m.group(4).strip("()")) if m.group(4) else 1
        else:
            e = 0
        out = out + LaurentPolyQ.monomial(e, sign * c)
        pos = m.end()
    return out


def _balanced(s):
    depth = 0
    for ch in s:
        depth += ch == "("
        depth -= ch == ")"
        if depth < 0:
            return False
    return depth == 0


def parse_rational_function(text):
    """Inverse of :meth:`RationalFunctionQ.to_text` (also accepts ``a/b`` forms)."""
    depth = 0
    split = None
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            if split is not None:
                raise ValueError(f"more than one '/' in {text!r}")
            split = i
    if split is None:
        return RationalFunctionQ(_parse_poly(text))
    return RationalFunctionQ(_parse_poly(text[:split]), _parse_poly(text[split + 1:]))
