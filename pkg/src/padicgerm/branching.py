"""Littlewood-Richardson coefficients and GL_n x GL_n-invariants in GL_2n representations.

Weights here use the usual *decreasing* convention ``lam_1 >= ... >= lam_m``,
unlike :mod:`padicgerm.cartan`.  Nothing converts between the two implicitly.
"""

from functools import lru_cache

from .errors import DomainError

__all__ = [
    "DominantWeight",
    "PartitionNN",
    "lr_coeff",
    "self_associate",
    "split_weight",
    "multiplicity_gamma_sum",
    "multiplicity_delta",
    "multiplicity_lr_oracle",
    "branching_multiplicity",
    "dominant_weights",
    "LR_MAX_SIZE",
    "BRANCH_MAX_LEN",
    "BRANCH_MAX_ENTRY",
]

LR_MAX_SIZE = 40
BRANCH_MAX_LEN = 8
BRANCH_MAX_ENTRY = 4


class DominantWeight(tuple):
    def __new__(cls, entries=()):
        entries = tuple(int(v) for v in entries)
        if any(a < b for a, b in zip(entries, entries[1:])):
            raise DomainError(f"{entries} is not weakly decreasing")
        return super().__new__(cls, entries)


class PartitionNN(DominantWeight):
    """Weakly decreasing, nonnegative; trailing zeros are dropped."""

    def __new__(cls, entries=()):
        entries = tuple(int(v) for v in entries)
        if any(v < 0 for v in entries):
            raise DomainError(f"{entries} has a negative part")
        while entries and entries[-1] == 0:
            entries = entries[:-1]
        return super().__new__(cls, entries)


def _contains(lam, mu):
    return len(mu) <= len(lam) and all(m <= l for l, m in zip(lam, mu))


@lru_cache(maxsize=None)
def _lr(lam, mu, nu):
    # fill the skew shape lam/mu row by row, top to bottom, each row right to left;
    # that order is the reverse reading word, which must stay a lattice word
    rows = [(mu[i] if i < len(mu) else 0, lam[i]) for i in range(len(lam))]
    cells = [(i, j) for i, (a, b) in enumerate(rows) for j in range(b - 1, a - 1, -1)]
    k = len(nu)
    grid = {}
    counts = [0] * k

    def ok(i, j, v):
        # rows weakly increase left to right: right neighbour already placed
        right = grid.get((i, j + 1))
        if right is not None and right < v:
            return False
        up = grid.get((i - 1, j))
        return up is None or up < v

    def rec(idx):
        if idx == len(cells):
            return 1
        i, j = cells[idx]
        total = 0
        # a cell in row i holds a value <= i + 1 (columns strictly increase from row 0)
        for v in range(min(k, i + 1)):
            if counts[v] == nu[v]:
                continue
            if v > 0 and counts[v] + 1 > counts[v - 1]:
                continue
            if not ok(i, j, v):
                continue
            grid[(i, j)] = v
            counts[v] += 1
            total += rec(idx + 1)
            counts[v] -= 1
            del grid[(i, j)]
        return total

    return rec(0)


def _lr_any(lam, mu, nu):
    if sum(lam) != sum(mu) + sum(nu) or not _contains(lam, mu) or not _contains(lam, nu):
        return 0
    return _lr(lam, mu, nu)


def lr_coeff(lam, mu, nu):
    """c^lam_{mu,nu}: LR skew tableaux of shape lam/mu and content nu, by enumeration."""
    lam, mu, nu = PartitionNN(lam), PartitionNN(mu), PartitionNN(nu)
    if sum(lam) > LR_MAX_SIZE:
        raise DomainError(f"|lam| = {sum(lam)} exceeds the bound {LR_MAX_SIZE}")
    return _lr_any(lam, mu, nu)


def self_associate(lam):
    """lam_i + lam_{2n+1-i} == 0 for all i."""
    lam = DominantWeight(lam)
    if len(lam) % 2:
        raise DomainError("self_associate needs an even-length weight")
    return all(a + b == 0 for a, b in zip(lam, reversed(lam)))


def split_weight(lam):
    """(lam+, lam-): the positive parts and the negated negative parts, as partitions."""
    lam = DominantWeight(lam)
    return PartitionNN(v for v in lam if v > 0), PartitionNN(-v for v in reversed(lam) if v < 0)


def _check_desk(lam):
    lam = DominantWeight(lam)
    if len(lam) % 2 or not lam:
        raise DomainError("weight must have positive even length 2n")
    if len(lam) > BRANCH_MAX_LEN:
        raise DomainError(f"2n = {len(lam)} exceeds {BRANCH_MAX_LEN}")
    if any(abs(v) > BRANCH_MAX_ENTRY for v in lam):
        raise DomainError(f"entries must lie in [-{BRANCH_MAX_ENTRY}, {BRANCH_MAX_ENTRY}]")
    return lam


def _partitions_of(size, max_len):
    out = []

    def rec(rest, cap, prefix):
        if rest == 0:
            out.append(PartitionNN(prefix))
            return
        if len(prefix) == max_len:
            return
        for v in range(min(rest, cap), 0, -1):
            rec(rest - v, v, prefix + (v,))

    rec(size, size, ())
    return out


def multiplicity_gamma_sum(lam):
    """Sum over gamma = (gamma+, gamma0, gamma-) of c^{g+}_{00} c^{g-}_{00} c^{lam+}_{0 g0} c^{lam-}_{0 g0}."""
    lam = _check_desk(lam)
    n = len(lam) // 2
    lp, lm = split_weight(lam)
    empty = PartitionNN()
    total = 0
    # c^{g+}_{00} forces g+ = 0, likewise g-, so only gamma0 varies
    for g0 in _partitions_of(sum(lp), n):
        total += (
            lr_coeff(empty, empty, empty) ** 2 * lr_coeff(lp, empty, g0) * lr_coeff(lm, empty, g0)
        )
    return total


def multiplicity_delta(lam):
    """Collapsed form: 1 if lam+ == lam- else 0."""
    lp, lm = split_weight(_check_desk(lam))
    return int(lp == lm)


def multiplicity_lr_oracle(lam, m=None):
    """c^{lam + m}_{(m^n), (m^n)} with m >= max(0, -lam_2n)."""
    lam = _check_desk(lam)
    n = len(lam) // 2
    m_min = max(0, -lam[-1])
    m = m_min if m is None else int(m)
    if m < m_min:
        raise DomainError(f"shift m must be >= {m_min}")
    box = PartitionNN((m,) * n)
    # the branching desk bounds already cap the work; sizes past LR_MAX_SIZE only occur
    # when |lam + m| != 2 m n, which is an immediate zero
    return _lr_any(PartitionNN(v + m for v in lam), box, box)


def branching_multiplicity(lam):
    """dim Hom_{GL_n x GL_n}(F^lam, 1), computed three ways that must agree."""
    routes = (multiplicity_gamma_sum(lam), multiplicity_delta(lam), multiplicity_lr_oracle(lam))
    if len(set(routes)) != 1:
        raise ArithmeticError(f"branching routes disagree at {tuple(lam)}: {routes}")
    return routes[0]


def dominant_weights(length, lo, hi):
    """All weakly decreasing tuples of the given length with entries in [lo, hi]."""
    out = []

    def rec(prefix, cap):
        if len(prefix) == length:
            out.append(DominantWeight(prefix))
            return
        for v in range(cap, lo - 1, -1):
            rec(prefix + (v,), v)

    rec((), hi)
    return out
