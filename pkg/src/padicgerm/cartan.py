"""Cartan cells K w^lam K of GL_n over a p-adic field.

Partitions follow the *increasing* convention ``lam_1 <= lam_2 <= ... <= lam_n``
throughout this module and everything built on it.  (The branching module uses
the usual decreasing convention; there is no implicit conversion.)

Volumes are normalized so that ``vol(K) = 1`` and are rational functions of the
residue cardinality ``q``.
"""

from functools import lru_cache
from itertools import groupby

from sympy import isprime

from ._lattice import diag_vectors, lattice_census
from .errors import DomainError
from .qring import mu_gl, one, qpow

__all__ = [
    "SignedPartition",
    "type_of",
    "delta_inv",
    "cell_volume",
    "count_cosets_oracle",
    "partitions_in_box",
    "ORACLE_MAX_N",
    "ORACLE_MAX_SPREAD",
]

ORACLE_MAX_N = 3
ORACLE_MAX_SPREAD = 3
# bound on HNF bases enumerated by one oracle call
_ORACLE_WORK = 5 * 10**7


class SignedPartition(tuple):
    """Weakly increasing integer tuple (an element of Z^{n,+})."""

    def __new__(cls, entries=()):
        entries = tuple(int(v) for v in entries)
        if any(a > b for a, b in zip(entries, entries[1:])):
            raise DomainError(f"{entries} is not weakly increasing")
        return super().__new__(cls, entries)

    @property
    def size(self):
        """``|lam| = sum of entries``."""
        return sum(self)

    def shifted(self, c):
        return SignedPartition(v + c for v in self)

    def __repr__(self):
        return f"SignedPartition({tuple(self)!r})"


def partitions_in_box(n, lo, hi):
    """All of Z^{n,+}_{[lo, hi]} in lexicographic order."""
    if n == 0:
        return [SignedPartition()]
    if hi < lo:
        return []
    out = []

    def rec(prefix, start):
        if len(prefix) == n:
            out.append(SignedPartition(prefix))
            return
        for v in range(start, hi + 1):
            rec(prefix + (v,), v)

    rec((), lo)
    return out


def type_of(lam):
    """Run lengths of equal consecutive entries, e.g. (-1,-1,0,2,2) -> (2,1,2)."""
    lam = SignedPartition(lam)
    if not lam:
        raise DomainError("type of the empty partition")
    return tuple(len(list(g)) for _, g in groupby(lam))


def _delta_exponent(lam):
    n = len(lam)
    # sum_{i<j} (lam_j - lam_i) = sum_k (2k - n + 1) lam_k
    return sum((2 * k - n + 1) * v for k, v in enumerate(lam))


def delta_inv(lam):
    """``delta(w^lam)^{-1} = q^{sum_{i<j}(lam_j - lam_i)}``."""
    lam = SignedPartition(lam)
    if not lam:
        raise DomainError("delta of the empty partition")
    return qpow(_delta_exponent(lam))


@lru_cache(maxsize=None)
def _levi_ratio(seg_type):
    n = sum(seg_type)
    num = one
    for k in seg_type:
        num = num * mu_gl(k)
    return num / mu_gl(n)


def cell_volume(lam):
    """``vol(K w^lam K) = mu(M_lam)/mu(GL_n) * delta(w^lam)^{-1}``."""
    lam = SignedPartition(lam)
    if not lam:
        raise DomainError("cell volume of the empty partition")
    return _levi_ratio(type_of(lam)).shift(_delta_exponent(lam))


def _cell_volume_or_one(lam):
    # GL_0 is the trivial group
    return cell_volume(lam) if len(lam) else one


def count_cosets_oracle(lam, p):
    """Number of cosets gK in K w^lam K, by enumerating sublattices of Z_p^n.

    Cosets gK in K w^lam K correspond to lattices g Z_p^n whose elementary
    divisors relative to Z_p^n are ``p^lam``.  After shifting ``lam`` so its
    minimum is 0, these are sublattices of Z_p^n, enumerated through their
    Hermite normal forms and classified by Smith form.
    """
    lam = SignedPartition(lam)
    if not 1 <= len(lam) <= ORACLE_MAX_N:
        raise DomainError(f"oracle supports 1 <= n <= {ORACLE_MAX_N}")
    if not isprime(int(p)):
        raise DomainError(f"{p} is not prime")
    lam = lam.shifted(-lam[0])
    emax = lam[-1]
    if emax > ORACLE_MAX_SPREAD:
        raise DomainError(f"oracle supports max - min <= {ORACLE_MAX_SPREAD}")
    n = len(lam)
    work = sum(p ** sum(j * int(e[j]) for j in range(n)) for e in diag_vectors(n, emax, lam.size))
    if work > _ORACLE_WORK:
        raise DomainError(f"oracle work estimate {work} exceeds desk scale")
    return lattice_census(n, p, emax, total=lam.size).get(tuple(lam), 0)
