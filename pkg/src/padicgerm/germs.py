"""Germ expansions  f(x) = sum_{(a,b)} c_{a,b} q^{a x} x^b  of integer sequences.

The fit is exact linear algebra over Q(q).  The sample system is a confluent
Vandermonde system in the nodes q^a, so instead of generic elimination each
exponent block is isolated with the shift operators (E - q^a)^{B+1}, which
annihilate q^{a x} x^b for b <= B.  What remains for the block of a0 is
q^{a0 x} * (triangular polynomial map applied to the unknown coefficients),
solved by interpolation and back substitution.

Exponents ``a`` may be negative: vol_{n,alpha} with alpha < 0 has germs such as
q^{-x} (n = 1, alpha = -1).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import DomainError, FitError
from .qring import RationalFunctionQ, one, qpow, zero
from .volumes import vol_recur2

__all__ = [
    "GermExpansion",
    "eval_germ",
    "fit_germ",
    "germ_of_vol",
    "vol_germ_exponents",
    "VOL_GERM_MAX_N",
]

VOL_GERM_MAX_N = 4


def _as_rf(v):
    return v if isinstance(v, RationalFunctionQ) else one * v


@dataclass(frozen=True)
class GermExpansion:
    """Finite map (a, b) -> coefficient, valid for x >= validity_from."""

    terms: dict = field(default_factory=dict)
    validity_from: int = 0

    def __post_init__(self):
        clean = {}
        for (a, b), c in self.terms.items():
            if b < 0:
                raise DomainError(f"negative power of x in germ term {(a, b)}")
            c = _as_rf(c)
            if not c.is_zero():
                clean[(int(a), int(b))] = c
        object.__setattr__(self, "terms", clean)
        if self.validity_from < 0:
            raise DomainError("validity_from must be >= 0")

    def coefficient(self, a, b):
        return self.terms.get((a, b), zero)

    def shifted(self, da):
        """Multiply by q^{da x}."""
        return GermExpansion({(a + da, b): c for (a, b), c in self.terms.items()}, self.validity_from)

    def scaled(self, s):
        return GermExpansion({k: c * s for k, c in self.terms.items()}, self.validity_from)

    def __add__(self, other):
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, zero) + c
        return GermExpansion(terms, max(self.validity_from, other.validity_from))

    def __eq__(self, other):
        if not isinstance(other, GermExpansion):
            return NotImplemented
        return self.terms == other.terms and self.validity_from == other.validity_from

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.validity_from))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (-kv[0][0], -kv[0][1]))

    def to_json(self):
        return {
            "terms": [{"a": a, "b": b, "coeff": c.to_text()} for (a, b), c in self.sorted_terms()],
            "validity_from": self.validity_from,
        }


def eval_germ(g, x):
    """sum c_{a,b} q^{a x} x^b at an integer x >= g.validity_from."""
    if x < g.validity_from:
        raise DomainError(f"x={x} below validity threshold {g.validity_from}")
    total = zero
    for (a, b), c in g.terms.items():
        total = total + (c * (x ** b)).shift(a * x)
    return total


def _shift_poly(coeffs):
    """Coefficients of P(x + 1) from those of P(x)."""
    k = len(coeffs)
    out = [zero] * k
    for j, c in enumerate(coeffs):
        if c.is_zero():
            continue
        for i in range(j + 1):
            out[i] = out[i] + c * comb(j, i)
    return out


def _lagrange_basis(points):
    """Coefficient vectors (ascending powers) of the Lagrange basis polynomials."""
    basis = []
    for j, xj in enumerate(points):
        poly = [Fraction(1)]
        denom = Fraction(1)
        for m, xm in enumerate(points):
            if m == j:
                continue
            poly = [Fraction(0)] + poly
            for i in range(len(poly) - 1):
                poly[i] -= xm * poly[i + 1]
            denom *= xj - xm
        basis.append([c / denom for c in poly])
    return basis


def _solve_block(samples, x0, a0, others, K):
    """Coefficients c_{a0,b}, b < K, from r*K consecutive samples starting at x0."""
    seq = list(samples)
    # columns[b] = (operator applied to x^b) as ascending coefficient list, times q^{-a0 x}
    columns = [[one if i == b else zero for i in range(K)] for b in range(K)]
    qa0 = qpow(a0)
    for a in others:
        for _ in range(K):
            seq = [seq[j + 1] - seq[j].shift(a) for j in range(len(seq) - 1)]
            columns = [
                [qa0 * s - c.shift(a) for s, c in zip(_shift_poly(col), col)]
                for col in columns
            ]
    assert len(seq) == K
    h = [seq[j].shift(-a0 * (x0 + j)) for j in range(K)]
    basis = _lagrange_basis([x0 + j for j in range(K)])
    hv = [zero] * K
    for j in range(K):
        for i, w in enumerate(basis[j]):
            if w:
                hv[i] = hv[i] + h[j] * w
    coeffs = [zero] * K
    for b in range(K - 1, -1, -1):
        acc = hv[b]
        for b2 in range(b + 1, K):
            if not coeffs[b2].is_zero():
                acc = acc - columns[b2][b] * coeffs[b2]
        coeffs[b] = acc / columns[b][b]
    return coeffs


def fit_germ(sampler, support_bound, x0=0, exponents=None):
    """Fit ``sampler`` on x >= x0 by terms q^{a x} x^b, a in the support, b <= B_max.

    ``support_bound`` is ``(A_max, B_max)``; the exponent set defaults to
    ``range(A_max + 1)`` and can be replaced by an explicit ``exponents``
    iterable (which may contain negative values).  The fit is verified on
    ``max(2, 2 * B_max)`` held-out points; a mismatch raises :class:`FitError`
    carrying the first bad x.
    """
    A_max, B_max = support_bound
    if B_max < 0:
        raise DomainError("B_max must be >= 0")
    exps = sorted(set(range(A_max + 1) if exponents is None else (int(a) for a in exponents)))
    if not exps:
        raise DomainError("empty exponent support")
    if x0 < 0:
        raise DomainError("x0 must be >= 0")
    K = B_max + 1
    n_fit = len(exps) * K
    n_check = max(2, 2 * B_max)
    values = [_as_rf(sampler(x0 + j)) for j in range(n_fit + n_check)]
    terms = {}
    for a0 in exps:
        others = [a for a in exps if a != a0]
        for b, c in enumerate(_solve_block(values[:n_fit], x0, a0, others, K)):
            terms[(a0, b)] = c
    germ = GermExpansion(terms, x0)
    for j, v in enumerate(values):
        if eval_germ(germ, x0 + j) != v:
            raise FitError(f"germ fit fails at x={x0 + j}", x=x0 + j)
    return germ


def vol_germ_exponents(n, alpha):
    """Exponents reachable through the first-segment recursion: 0 and (alpha+k)(n-k)."""
    if n == 0:
        return [0]
    return sorted({0} | {(alpha + k) * (n - k) for k in range(n)})


@lru_cache(maxsize=None)
def germ_of_vol(n, alpha):
    """Germ expansion of x -> vol_{n,alpha}(x), valid for x >= 1."""
    if n < 0:
        raise DomainError("n must be >= 0")
    if n > VOL_GERM_MAX_N:
        raise DomainError(f"germ_of_vol supports n <= {VOL_GERM_MAX_N}")
    sampler = lambda x: vol_recur2(n, alpha, x)  # noqa: E731
    exps = vol_germ_exponents(n, alpha)
    try:
        return fit_germ(sampler, (max(exps), n), x0=1, exponents=exps)
    except FitError:
        # widen once: dense exponent box of twice the width, doubled power bound
        lo, hi = min(exps), max(exps)
        return fit_germ(sampler, (2 * hi, 2 * n), x0=1, exponents=range(min(lo, 2 * lo), 2 * hi + 1))
