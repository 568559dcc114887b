"""Contracted orbital integrals on diagonal configurations and their germs.

A lattice-invariant, bi-K-invariant test function supported in w^{-N} Lambda is
determined on a diagonal pair (x, y) by the *clamped valuations* of the
entries: valuations >= 0 collapse to "integral" (``None`` here, ``"inf"`` in
JSON), valuations in [-N, -1] are kept, anything lower is outside the support.
An :class:`OrbitalProfile` is the table of values on such clamped pairs.

    phi~(x) = sum_lam phi(t w^{-lam}, w^lam) vol(K w^lam K),   x = v(t).
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement

from .cartan import _cell_volume_or_one, cell_volume, partitions_in_box
from .errors import DomainError
from .germs import GermExpansion, germ_of_vol
from .qring import mu_gl, zero
from .volumes import linear_coeff_B

__all__ = [
    "OrbitalProfile",
    "orbital_direct",
    "orbital_coeffs",
    "orbital_germ",
    "check_linear_term",
    "profile_keys",
    "random_profile",
    "germ_threshold",
    "ORBITAL_GERM_MAX_N",
]

ORBITAL_GERM_MAX_N = 3
_KILL = object()


def _canon(vec, n):
    explicit = sorted(v for v in vec if v is not None)
    return tuple(explicit) + (None,) * (n - len(explicit))


def _parse_entry(v):
    if v is None or v == "inf":
        return None
    return int(v)


@dataclass(frozen=True)
class OrbitalProfile:
    """Values of phi on clamped-valuation pairs (first, second); missing pairs are 0."""

    n: int
    N: int
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("profile rank n must be >= 1")
        if self.N < 0:
            raise DomainError("support radius N must be >= 0")
        clean = {}
        for (first, second), val in self.values.items():
            if len(first) != self.n or len(second) != self.n:
                raise DomainError(f"key {(first, second)} does not have length n={self.n}")
            for v in tuple(first) + tuple(second):
                if v is not None and not -self.N <= v <= -1:
                    raise DomainError(f"explicit valuation {v} outside [-{self.N}, -1]")
            key = (_canon(first, self.n), _canon(second, self.n))
            val = Fraction(val)
            if key in clean:
                raise DomainError(f"duplicate profile key {key}")
            if val:
                clean[key] = val
        object.__setattr__(self, "values", clean)

    @property
    def phi0(self):
        """Value at the all-integral pair, i.e. phi(0)."""
        bot = (None,) * self.n
        return self.values.get((bot, bot), Fraction(0))

    def value(self, first, second):
        return self.values.get((_canon(first, self.n), _canon(second, self.n)), Fraction(0))

    def to_json(self):
        enc = lambda vec: ["inf" if v is None else v for v in vec]  # noqa: E731
        return {
            "n": self.n,
            "N": self.N,
            "entries": [
                {"first": enc(f), "second": enc(s), "value": str(v)}
                for (f, s), v in sorted(self.values.items(), key=lambda kv: repr(kv[0]))
            ],
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        try:
            n, N = int(data["n"]), int(data["N"])
            values = {}
            for e in data.get("entries", []):
                key = (tuple(_parse_entry(v) for v in e["first"]), tuple(_parse_entry(v) for v in e["second"]))
                values[key] = Fraction(str(e["value"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed profile JSON: {exc}") from exc
        return cls(n, N, values)

    def combine(self, other, a=1, b=1):
        """a*self + b*other on the same (n, N)."""
        if (self.n, self.N) != (other.n, other.N):
            raise DomainError("profiles of different shape")
        vals = {k: a * v for k, v in self.values.items()}
        for k, v in other.values.items():
            vals[k] = vals.get(k, 0) + b * v
        return OrbitalProfile(self.n, self.N, vals)


def _clamp(v, N):
    if v >= 0:
        return None
    if v < -N:
        return _KILL
    return v


@lru_cache(maxsize=None)
def _direct_weights(n, N, x):
    """Cartan sum grouped by clamped key: {key: sum of cell volumes}."""
    weights = {}
    for lam in partitions_in_box(n, -N, x + N):
        first = [_clamp(x - v, N) for v in lam]
        second = [_clamp(v, N) for v in lam]
        if _KILL in first or _KILL in second:
            continue
        key = (_canon(first, n), _canon(second, n))
        weights[key] = weights.get(key, zero) + cell_volume(lam)
    return weights


def orbital_direct(phi, x):
    """phi~ at v(t) = x as a finite Cartan sum over -N <= lam_i <= x + N."""
    if x < 0:
        raise DomainError("x must be >= 0")
    total = zero
    for key, w in _direct_weights(phi.n, phi.N, x).items():
        val = phi.values.get(key)
        if val:
            total = total + w * val
    return total


def _triples(n):
    return [(n1, n2, n - n1 - n2) for n1 in range(n + 1) for n2 in range(n - n1 + 1)]


@lru_cache(maxsize=None)
def _block_weights(n, N, triple):
    """{key: weight} so that c_triple(phi) = sum weight * phi(key)."""
    n1, n2, n3 = triple
    levi = mu_gl(n1) * mu_gl(n2) * mu_gl(n3) / mu_gl(n)
    out = {}
    xi1s = partitions_in_box(n1, -N, -1)
    xi3s = partitions_in_box(n3, 1, N)
    for xi1 in xi1s:
        v1 = _cell_volume_or_one(xi1)
        for xi3 in xi3s:
            w = (levi * v1 * _cell_volume_or_one(xi3)).shift(-(n2 + n3) * xi1.size + (n1 + n2) * xi3.size)
            first = (None,) * (n1 + n2) + tuple(-v for v in xi3)
            second = tuple(xi1) + (None,) * (n2 + n3)
            key = (_canon(first, n), _canon(second, n))
            out[key] = out.get(key, zero) + w
    return out


def orbital_coeffs(phi):
    """Block coefficients c_{(n1,n2,n3)}(phi); zero ones are omitted."""
    out = {}
    for triple in _triples(phi.n):
        c = zero
        for key, w in _block_weights(phi.n, phi.N, triple).items():
            val = phi.values.get(key)
            if val:
                c = c + w * val
        if not c.is_zero():
            out[triple] = c
    return out


def germ_threshold(N):
    return 2 * N + 2


def orbital_germ(phi):
    """sum over triples of c * germ(q^{n3(n1+n2)x} vol_{n2, n1-n3}(x))."""
    if phi.n > ORBITAL_GERM_MAX_N:
        raise DomainError(f"orbital_germ supports n <= {ORBITAL_GERM_MAX_N}")
    total = GermExpansion({}, germ_threshold(phi.N))
    for (n1, n2, n3), c in orbital_coeffs(phi).items():
        if n1 >= n3:
            g = germ_of_vol(n2, n1 - n3).shifted(n3 * (n1 + n2))
        else:
            # q^{n3(n1+n2)x} vol_{n2,n1-n3}(x) = q^{n1(n3+n2)x} vol_{n2,n3-n1}(x)
            g = germ_of_vol(n2, n3 - n1).shifted(n1 * (n3 + n2))
        total = total + g.scaled(c)
    return GermExpansion(total.terms, germ_threshold(phi.N))


def check_linear_term(phi):
    """The x-coefficient (a=0, b=1) of phi~ equals phi(0) * B_n."""
    return orbital_germ(phi).coefficient(0, 1) == phi.phi0 * linear_coeff_B(phi.n)


def profile_keys(n, N):
    """All clamped pairs reachable by diagonal configurations (explicit slots disjoint)."""
    keys = []
    vals = list(range(-N, 0))
    for k1 in range(n + 1):
        for k2 in range(n - k1 + 1):
            for f in combinations_with_replacement(vals, k1):
                for s in combinations_with_replacement(vals, k2):
                    keys.append((tuple(f) + (None,) * (n - k1), tuple(s) + (None,) * (n - k2)))
    return keys


def random_profile(n, N, rng, density=0.6, phi0=None):
    """Random profile with small rational values; ``rng`` is a numpy Generator."""
    values = {}
    for key in profile_keys(n, N):
        if rng.random() < density:
            values[key] = Fraction(int(rng.integers(-6, 7)), int(rng.integers(1, 5)))
    if phi0 is not None:
        bot = (None,) * n
        values[(bot, bot)] = Fraction(phi0)
    return OrbitalProfile(n, N, values)
