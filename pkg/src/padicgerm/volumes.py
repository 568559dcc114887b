"""The weighted volume family vol_{n,alpha}(x).

    vol_{n,alpha}(x) = sum over lam in Z^{n,+}_{[0,x]} of q^{alpha |lam|} vol(K w^lam K),

with vol_{0,alpha} = 1.  Three independent evaluations are provided: the direct
Cartan sum, the first-segment recursion, and the zero-count recursion.  They are
meant to be checked against each other, so none of them calls another (apart
from the shared base case x = 0 of the zero-count recursion).
"""

from functools import lru_cache
from typing import NamedTuple

from .cartan import cell_volume, partitions_in_box
from .errors import DomainError
from .qring import one, qbinom, qpow, zero

__all__ = [
    "VolParams",
    "vol",
    "vol_direct",
    "vol_recur",
    "vol_recur2",
    "const_term_A",
    "linear_coeff_B",
    "check_functional_equation",
    "check_qbinom_product_identity",
    "METHODS",
]


class VolParams(NamedTuple):
    n: int
    alpha: int
    x: int


def _check(n, alpha, x):
    if n < 0 or x < 0:
        raise DomainError(f"vol needs n >= 0 and x >= 0, got n={n}, x={x}")
    return int(n), int(alpha), int(x)


def vol_direct(n, alpha, x):
    """Direct sum over the box Z^{n,+}_{[0,x]}."""
    n, alpha, x = _check(n, alpha, x)
    if n == 0:
        return one
    total = zero
    for lam in partitions_in_box(n, 0, x):
        total = total + cell_volume(lam).shift(alpha * lam.size)
    return total


@lru_cache(maxsize=None)
def _recur(n, alpha, x):
    if n == 0:
        return one
    total = zero
    for y in range(x + 1):
        total = total + qpow(alpha * n * y)
    for beta in range(1, n):
        inner = zero
        for y in range(x):
            inner = inner + _recur(n - beta, alpha + beta, y).shift(-alpha * n * y)
        total = total + qbinom(n, beta) * inner.shift(alpha * (n - beta) + alpha * n * (x - 1))
    return total


def vol_recur(n, alpha, x):
    """Recursion on the length of the first segment of lam."""
    return _recur(*_check(n, alpha, x))


@lru_cache(maxsize=None)
def _recur2(n, alpha, x):
    if n == 0:
        return one
    if x == 0:
        return vol_direct(n, alpha, 0)
    total = zero
    for beta in range(n + 1):
        total = total + qbinom(n, beta) * _recur2(n - beta, alpha + beta, x - 1).shift(alpha * (n - beta))
    return total


def vol_recur2(n, alpha, x):
    """Recursion on the number of zero entries of lam."""
    return _recur2(*_check(n, alpha, x))


METHODS = {"direct": vol_direct, "recur": vol_recur, "recur2": vol_recur2}


def vol(n, alpha, x, method="recur2"):
    try:
        fn = METHODS[method]
    except KeyError:
        raise DomainError(f"unknown method {method!r}; expected one of {sorted(METHODS)}") from None
    return fn(n, alpha, x)


def check_functional_equation(n, alpha, x, method="direct"):
    """vol_{n,alpha}(x) == q^{n alpha x} vol_{n,-alpha}(x)."""
    return vol(n, alpha, x, method) == vol(n, -alpha, x, method).shift(n * alpha * x)


def _inv_product(exponents):
    out = one
    for e in exponents:
        out = out / (1 - qpow(e))
    return out


def const_term_A(n, alpha):
    """A(n, alpha) = prod_{i=0}^{n-1} (1 - q^{alpha+i})^{-1}, for alpha >= 1."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    if alpha < 1:
        raise DomainError(f"A(n, alpha) is only established for alpha >= 1, got {alpha}")
    return _inv_product(alpha + i for i in range(n))


def linear_coeff_B(n):
    """B_n = n prod_{i=1}^{n-1} (1 - q^i)^{-1}."""
    if n < 1:
        raise DomainError(f"B_n needs n >= 1, got {n}")
    return n * _inv_product(range(1, n))


def check_qbinom_product_identity(n, alpha):
    """(1 - q^{alpha n}) A(n, alpha) == sum_{beta=1}^n (n choose beta)_q q^{alpha(n-beta)} A(n-beta, alpha+beta)."""
    lhs = (1 - qpow(alpha * n)) * const_term_A(n, alpha)
    rhs = zero
    for beta in range(1, n + 1):
        rhs = rhs + qbinom(n, beta) * const_term_A(n - beta, alpha + beta).shift(alpha * (n - beta))
    return lhs == rhs
