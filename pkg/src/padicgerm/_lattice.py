"""Brute-force sublattice census of Z_p^n (n <= 3).

A full-rank sublattice L of Z_p^n has a unique row basis in Hermite normal form:
upper triangular, ``H[j, j] = p**e[j]`` and ``0 <= H[i, j] < p**e[j]`` for
``i < j``.  Each basis is classified by its elementary divisors, read off the
determinantal divisors ``d_k = min v_p(k x k minors)``.  The elementary-divisor
exponents come out weakly increasing, i.e. in the same order as ``SignedPartition``.

Two interchangeable kernels: a numba loop and a vectorized numpy version.
"""

from itertools import product

import numpy as np

from ._accel import default_backend, njit

_BIG = 1 << 30


def diag_vectors(n, emax, total):
    """Exponent vectors in ``[0, emax]^n`` with the given sum (``total < 0``: any)."""
    out = [e for e in product(range(emax + 1), repeat=n) if total < 0 or sum(e) == total]
    return np.array(out, dtype=np.int64).reshape(-1, n)


@njit
def _val(x, p):
    if x == 0:
        return _BIG
    if x < 0:
        x = -x
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


@njit
def _census_numba(n, p, diags, hist, width):
    """Add one count per HNF basis to ``hist`` (flattened, base ``width``)."""
    H = np.zeros((n, n), dtype=np.int64)
    nu = np.zeros(n, dtype=np.int64)
    for r in range(diags.shape[0]):
        e = diags[r]
        total = 1
        for j in range(n):
            total *= p ** (j * e[j])
        for idx in range(total):
            H[:, :] = 0
            rest = idx
            for j in range(n):
                H[j, j] = p ** e[j]
                rad = p ** e[j]
                for i in range(j):
                    H[i, j] = rest % rad
                    rest //= rad
            # d1
            d1 = _BIG
            for i in range(n):
                for j in range(i, n):
                    v = _val(H[i, j], p)
                    if v < d1:
                        d1 = v
            det_v = 0
            for j in range(n):
                det_v += e[j]
            if n == 1:
                nu[0] = det_v
            elif n == 2:
                nu[0] = d1
                nu[1] = det_v - d1
            else:
                d2 = _BIG
                for i1 in range(n):
                    for i2 in range(i1 + 1, n):
                        for j1 in range(n):
                            for j2 in range(j1 + 1, n):
                                m = H[i1, j1] * H[i2, j2] - H[i1, j2] * H[i2, j1]
                                v = _val(m, p)
                                if v < d2:
                                    d2 = v
                nu[0] = d1
                nu[1] = d2 - d1
                nu[2] = det_v - d2
            key = 0
            ok = True
            for k in range(n):
                if nu[k] >= width:
                    ok = False
                key = key * width + nu[k]
            if ok:
                hist[key] += 1


def _vals_np(x, p):
    x = np.abs(x)
    zero = x == 0
    x = np.where(zero, 1, x)
    v = np.zeros(x.shape, dtype=np.int64)
    while True:
        m = (x % p) == 0
        if not m.any():
            break
        v += m
        x = np.where(m, x // p, x)
    v[zero] = _BIG
    return v


def _census_numpy(n, p, diags, hist, width):
    for e in diags:
        radices = [int(p ** e[j]) for j in range(n) for _ in range(j)]
        grid = np.indices(radices, dtype=np.int64).reshape(len(radices), -1) if radices else np.zeros((0, 1), dtype=np.int64)
        size = grid.shape[1]
        H = [[np.zeros(size, dtype=np.int64) for _ in range(n)] for _ in range(n)]
        k = 0
        for j in range(n):
            H[j][j] = np.full(size, p ** int(e[j]), dtype=np.int64)
            for i in range(j):
                H[i][j] = grid[k]
                k += 1
        d1 = np.full(size, _BIG, dtype=np.int64)
        for i in range(n):
            for j in range(i, n):
                d1 = np.minimum(d1, _vals_np(H[i][j], p))
        det_v = int(sum(e))
        if n == 1:
            nus = [np.full(size, det_v, dtype=np.int64)]
        elif n == 2:
            nus = [d1, det_v - d1]
        else:
            d2 = np.full(size, _BIG, dtype=np.int64)
            for i1 in range(n):
                for i2 in range(i1 + 1, n):
                    for j1 in range(n):
                        for j2 in range(j1 + 1, n):
                            m = H[i1][j1] * H[i2][j2] - H[i1][j2] * H[i2][j1]
                            d2 = np.minimum(d2, _vals_np(m, p))
            nus = [d1, d2 - d1, det_v - d2]
        ok = np.ones(size, dtype=bool)
        key = np.zeros(size, dtype=np.int64)
        for nu in nus:
            ok &= nu < width
            key = key * width + nu
        np.add.at(hist, key[ok], 1)


def lattice_census(n, p, emax, total=-1, backend=None):
    """Histogram of elementary-divisor types over HNF bases with diagonal exponents <= emax.

    Returns ``{type: count}`` keyed by weakly increasing exponent tuples.  Only
    types whose largest exponent is <= ``emax`` are complete: every lattice of
    such a type contains ``p**emax Z_p^n`` and is therefore enumerated.
    """
    if not 1 <= n <= 3:
        raise ValueError("lattice census supports n in {1, 2, 3}")
    backend = backend or default_backend()
    width = n * emax + 1
    hist = np.zeros(width ** n, dtype=np.int64)
    diags = diag_vectors(n, emax, total)
    if backend == "numba":
        _census_numba(n, p, diags, hist, width)
    elif backend == "numpy":
        _census_numpy(n, p, diags, hist, width)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    out = {}
    for key in np.nonzero(hist)[0]:
        nu = []
        k = int(key)
        for _ in range(n):
            nu.append(k % width)
            k //= width
        out[tuple(reversed(nu))] = int(hist[key])
    return out
