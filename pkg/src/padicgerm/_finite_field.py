"""Subspace counts over F_p, used as an oracle for the q-binomial coefficients."""

from itertools import combinations, product

from .errors import DomainError

# tuples of vectors enumerated by the span route
ENUM_LIMIT = 200_000


def rref_mod_p(rows, p):
    """Reduced row echelon form over F_p as a tuple of nonzero rows."""
    m = [list(r) for r in rows]
    ncols = len(m[0]) if m else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [v * inv % p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r])


def count_subspaces_pivots(n, beta, p):
    """Sum over pivot sets of p^(number of free RREF entries)."""
    if not 0 <= beta <= n:
        raise DomainError("need 0 <= beta <= n")
    total = 0
    for pivots in combinations(range(n), beta):
        free = sum((n - c - 1) - (beta - i - 1) for i, c in enumerate(pivots))
        total += p ** free
    return total


def count_subspaces_enum(n, beta, p):
    """Distinct spans of beta-tuples of vectors in F_p^n having full rank."""
    if not 0 <= beta <= n:
        raise DomainError("need 0 <= beta <= n")
    if p ** (n * beta) > ENUM_LIMIT:
        raise DomainError(f"enumeration of {p ** (n * beta)} tuples exceeds {ENUM_LIMIT}")
    if beta == 0:
        return 1
    vectors = list(product(range(p), repeat=n))
    spans = set()
    for rows in product(vectors, repeat=beta):
        e = rref_mod_p(rows, p)
        if len(e) == beta:
            spans.add(e)
    return len(spans)
