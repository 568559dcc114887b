"""Unramified local L-factors as truncated power series in T = q^{-s}.

Everything is exact over Q.  The half-integral shift in L(s + 1/2, ...) is
handled by requiring the residue cardinality to be a perfect square of a
rational, so that q^{1/2} is rational.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import isqrt

from .errors import DomainError

__all__ = [
    "SatakeData",
    "TruncatedSeries",
    "UnramifiedTorusData",
    "std_lfactor",
    "ext_sq_lfactor",
    "check_ext_sq_shift",
    "tate_series",
    "spherical_whittaker_gl2",
    "bf_local_integral",
    "bf_product_side",
    "bf_unramified_check",
    "exact_sqrt",
    "CONVENTIONS",
]

CONVENTIONS = ("pairs-ordered", "pairs-distinct")


def _sign(e):
    e = int(e)
    if e not in (1, -1):
        raise DomainError(f"character sign must be +1 or -1, got {e}")
    return e


@dataclass(frozen=True)
class SatakeData:
    params: tuple
    q_val: Fraction = Fraction(3)

    def __post_init__(self):
        params = tuple(Fraction(a) for a in self.params)
        if any(a == 0 for a in params):
            raise DomainError("Satake parameters must be nonzero")
        q_val = Fraction(self.q_val)
        if q_val <= 1:
            raise DomainError("residue cardinality must exceed 1")
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "q_val", q_val)


@dataclass(frozen=True)
class TruncatedSeries:
    """c_0 + c_1 T + ... + c_D T^D, exact through degree D."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        if not self.coeffs:
            raise DomainError("a truncated series needs at least one coefficient")

    @property
    def order(self):
        return len(self.coeffs) - 1

    @classmethod
    def from_poly(cls, poly, D):
        c = list(poly[: D + 1]) + [0] * max(0, D + 1 - len(poly))
        return cls(c)

    def __add__(self, other):
        D = min(self.order, other.order)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs[: D + 1], other.coeffs[: D + 1])])

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([c * other for c in self.coeffs])
        D = min(self.order, other.order)
        out = [Fraction(0)] * (D + 1)
        for i, a in enumerate(self.coeffs[: D + 1]):
            if a:
                for j in range(D + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return TruncatedSeries(out)

    __rmul__ = __mul__

    def inverse(self):
        c = self.coeffs
        if c[0] == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv = [Fraction(1) / c[0]]
        for k in range(1, len(c)):
            s = sum(c[j] * inv[k - j] for j in range(1, k + 1))
            inv.append(-s / c[0])
        return TruncatedSeries(inv)

    def rescale(self, factor):
        """Substitute T -> factor * T."""
        factor = Fraction(factor)
        return TruncatedSeries([c * factor ** k for k, c in enumerate(self.coeffs)])

    def to_json(self):
        return {"coeffs": [str(c) for c in self.coeffs], "order": self.order}


@dataclass(frozen=True)
class UnramifiedTorusData:
    """T = prod_i Res_{F_i/F} G_m with F_i/F unramified of degree d_i, eta(w) = eps_i on factor i."""

    factors: tuple

    def __post_init__(self):
        clean = []
        for d, eps in self.factors:
            if int(d) < 1:
                raise DomainError("factor degree must be >= 1")
            clean.append((int(d), _sign(eps)))
        object.__setattr__(self, "factors", tuple(clean))


def _euler_product(values, D):
    """prod (1 - v T)^{-1} through degree D, by inverting the polynomial prod (1 - v T)."""
    poly = [Fraction(1)]
    for v in values:
        nxt = poly + [Fraction(0)]
        for i, c in enumerate(poly):
            nxt[i + 1] -= v * c
        poly = nxt
    return TruncatedSeries.from_poly(poly, D).inverse()


def std_lfactor(s, eta_sign, D):
    """L(s, pi x eta) = prod_i (1 - eta(w) alpha_i T)^{-1}."""
    if D < 0:
        raise DomainError("order D must be >= 0")
    e = _sign(eta_sign)
    return _euler_product([e * a for a in s.params], D)


def _pair_products(params, convention):
    m = len(params)
    if convention == "pairs-ordered":
        return [params[i] * params[j] for i in range(m) for j in range(i + 1, m)]
    if convention == "pairs-distinct":
        return [params[i] * params[j] for i in range(m) for j in range(m) if i != j]
    raise DomainError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")


def ext_sq_lfactor(s, eta_sign, D, convention="pairs-ordered"):
    """Exterior-square factor prod (1 - eta(w) alpha_i alpha_j T)^{-1}.

    ``pairs-ordered`` runs over i < j (the usual exterior square);
    ``pairs-distinct`` runs over i != j, which squares every factor.
    """
    if len(s.params) < 2:
        raise DomainError("exterior square needs at least two Satake parameters")
    if D < 0:
        raise DomainError("order D must be >= 0")
    e = _sign(eta_sign)
    return _euler_product([e * v for v in _pair_products(s.params, convention)], D)


def check_ext_sq_shift(s, a, D, convention="pairs-ordered"):
    """L(s0 + a, wedge^2) == L(s0, wedge^2 x |.|^a) through degree D."""
    shifted = ext_sq_lfactor(s, 1, D, convention).rescale(s.q_val ** (-a))
    twisted = _euler_product([v * s.q_val ** (-a) for v in _pair_products(s.params, convention)], D)
    return shifted == twisted


def tate_series(t, D):
    """(direct lattice sum, Euler product) for the unramified Tate integral on t.

    The direct side sums eta(x)|x|^s over the integral points of each factor
    F_i^x / O_i^x = w^k, k >= 0, where |w|_F^s contributes T^{d_i}; the joint
    sum runs over all valuation vectors with total T-degree <= D.
    """
    if D < 0:
        raise DomainError("order D must be >= 0")
    direct = [Fraction(0)] * (D + 1)
    ranges = [range(D // d + 1) for d, _ in t.factors]
    for ks in product(*ranges):
        deg = sum(k * d for k, (d, _) in zip(ks, t.factors))
        if deg > D:
            continue
        sign = 1
        for k, (_, eps) in zip(ks, t.factors):
            sign *= eps ** k
        direct[deg] += sign
    poly = [Fraction(1)]
    for d, eps in t.factors:
        factor = [Fraction(1)] + [Fraction(0)] * (d - 1) + [Fraction(-eps)]
        nxt = [Fraction(0)] * (len(poly) + d)
        for i, c in enumerate(poly):
            for j, f in enumerate(factor):
                nxt[i + j] += c * f
        poly = nxt
    closed = TruncatedSeries.from_poly(poly, D).inverse()
    return TruncatedSeries(direct), closed


def exact_sqrt(x):
    x = Fraction(x)
    if x < 0:
        raise DomainError(f"{x} has no real square root")
    rn, rd = isqrt(x.numerator), isqrt(x.denominator)
    if rn * rn != x.numerator or rd * rd != x.denominator:
        raise DomainError(f"{x} is not the square of a rational; choose q a perfect square")
    return Fraction(rn, rd)


def spherical_whittaker_gl2(params, q_half, k1, k2):
    """Normalized spherical Whittaker function of GL_2 at diag(w^k1, w^k2).

    Zero unless k1 >= k2; otherwise delta^{1/2} times the Schur polynomial
    s_{(k1,k2)}(alpha_1, alpha_2), expanded as a sum over semistandard tableaux.
    """
    if k1 < k2:
        return Fraction(0)
    a1, a2 = params
    schur = sum(a1 ** i * a2 ** (k1 + k2 - i) for i in range(k2, k1 + 1))
    return schur / q_half ** (k1 - k2)


def bf_local_integral(s, eta1, eta0, D):
    """Unramified GL_2 Bump-Friedberg integral as {(deg T1, deg T0): coeff}, total degree <= D.

    H' = GL_1 x GL_1 embedded diagonally; the integrand at (w^k1, w^k2) is
    W(diag) * eta(h1/h2) * eta'(h2) * |h1/h2|^{s1} |h2|^{s0} * 1_O(h2).
    """
    if len(s.params) != 2:
        raise DomainError("rank-one Bump-Friedberg needs exactly two Satake parameters")
    e1, e0 = _sign(eta1), _sign(eta0)
    q_half = exact_sqrt(s.q_val)
    out = {}
    for k2 in range(D + 1):
        for k1 in range(k2, k2 + D - k2 + 1):
            j = k1 - k2
            if j + k2 > D:
                continue
            w = spherical_whittaker_gl2(s.params, q_half, k1, k2)
            val = w * e1 ** (k1 - k2) * e0 ** k2
            if val:
                out[(j, k2)] = out.get((j, k2), 0) + val
    return out


def bf_product_side(s, eta1, eta0, D, convention="pairs-ordered"):
    """L(s1 + 1/2, pi x eta) L(s0, pi, wedge^2 x eta') as {(deg T1, deg T0): coeff}."""
    q_half = exact_sqrt(s.q_val)
    std = std_lfactor(SatakeData(tuple(a / q_half for a in s.params), s.q_val), eta1, D)
    ext = ext_sq_lfactor(s, eta0, D, convention)
    out = {}
    for i, a in enumerate(std.coeffs):
        for j, b in enumerate(ext.coeffs[: D - i + 1]):
            if a * b:
                out[(i, j)] = a * b
    return out


def bf_unramified_check(s, eta1, eta0, D, convention="pairs-ordered"):
    """Z^BF(W, 1_O, eta, eta') == L(s1 + 1/2, pi x eta) L(s0, pi, wedge^2 x eta') through degree D."""
    return bf_local_integral(s, eta1, eta0, D) == bf_product_side(s, eta1, eta0, D, convention)
