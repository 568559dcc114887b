"""The linear symmetric space X = GL_2n / (GL_n x GL_n) over Q, seen p-adically.

Points are realized as x = g eps g^{-1} with eps = diag(I_n, -I_n), written in
blocks [[A, B], [C, D]].  Only valuations and signs of rational numbers are
ever used, so no completion is constructed.  Characters on matrix arguments
are evaluated on determinants.
"""

from dataclasses import dataclass
from fractions import Fraction

from sympy import Matrix, Poly, Rational, eye, gcd, multiplicity, symbols, zeros
from sympy import isprime

from .errors import DegenerateInputError, DomainError

__all__ = [
    "vp",
    "PAdicScalar",
    "SymmetricSpacePoint",
    "as_matrix",
    "project_sym",
    "car_lin",
    "krylov_matrix",
    "is_strongly_regular",
    "character",
    "parse_signs",
    "transfer_factor",
    "act_pair",
    "check_equivariance",
    "random_block_pair",
    "random_regular_pair",
    "TRIVIAL",
    "QUADRATIC",
]

TRIVIAL = "1"
QUADRATIC = "q"
_t = symbols("t")


def _check_prime(p):
    if not isprime(int(p)):
        raise DomainError(f"{p} is not prime")
    return int(p)


def vp(value, p):
    """p-adic valuation of a nonzero rational."""
    value = Fraction(value)
    if value == 0:
        raise DomainError("valuation of 0 is infinite")
    p = _check_prime(p)
    num, den = abs(value.numerator), value.denominator
    return (multiplicity(p, num) if num % p == 0 else 0) - (multiplicity(p, den) if den % p == 0 else 0)


@dataclass(frozen=True)
class PAdicScalar:
    value: Fraction
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        if self.value == 0:
            raise DomainError("PAdicScalar must be nonzero")
        object.__setattr__(self, "p", _check_prime(self.p))

    @property
    def valuation(self):
        return vp(self.value, self.p)

    @property
    def eta(self):
        """Unramified quadratic character: (-1)^v."""
        return -1 if self.valuation % 2 else 1

    @property
    def abs(self):
        return Fraction(self.p) ** (-self.valuation)


def _rat(v):
    if isinstance(v, str):
        v = Fraction(v)
    if isinstance(v, Fraction):
        return Rational(v.numerator, v.denominator)
    return Rational(v)


def as_matrix(rows):
    """Exact rational sympy Matrix from nested lists of ints, Fractions or strings."""
    if isinstance(rows, Matrix):
        return rows
    m = Matrix([[_rat(v) for v in row] for row in rows])
    if m.rows != m.cols:
        raise DomainError(f"expected a square matrix, got {m.rows}x{m.cols}")
    return m


def _row(w, n):
    if isinstance(w, Matrix):
        w = list(w)
    if isinstance(w, (int, Fraction, str)):
        w = [w]
    w = Matrix([[_rat(v) for v in w]])
    if w.cols != n:
        raise DomainError(f"w must have length {n}, got {w.cols}")
    return w


@dataclass(frozen=True)
class SymmetricSpacePoint:
    A: Matrix
    B: Matrix
    C: Matrix
    D: Matrix
    p: int = 3

    @property
    def n(self):
        return self.A.rows

    def matrix(self):
        n = self.n
        m = zeros(2 * n, 2 * n)
        m[:n, :n], m[:n, n:], m[n:, :n], m[n:, n:] = self.A, self.B, self.C, self.D
        return m

    def act(self, g, h):
        """(g, h) . x = (g A g^-1, g B h^-1, h C g^-1, h D h^-1)."""
        g, h = as_matrix(g), as_matrix(h)
        gi, hi = g.inv(), h.inv()
        return SymmetricSpacePoint(g * self.A * gi, g * self.B * hi, h * self.C * gi, h * self.D * hi, self.p)

    def to_json(self):
        enc = lambda M: [[str(v) for v in M.row(i)] for i in range(M.rows)]  # noqa: E731
        return {"A": enc(self.A), "B": enc(self.B), "C": enc(self.C), "D": enc(self.D), "p": self.p}


def _split(m, n):
    return m[:n, :n], m[:n, n:], m[n:, :n], m[n:, n:]


def project_sym(gamma, p=3):
    """Blocks of gamma eps gamma^{-1}, eps = diag(I_n, -I_n)."""
    gamma = as_matrix(gamma)
    if gamma.rows % 2:
        raise DomainError("gamma must be 2n x 2n")
    if gamma.det() == 0:
        raise DomainError("gamma is singular")
    n = gamma.rows // 2
    eps = eye(2 * n)
    eps[n:, n:] = -eye(n)
    return SymmetricSpacePoint(*_split(gamma * eps * gamma.inv(), n), _check_prime(p))


def car_lin(x):
    """Coefficients (c_1, ..., c_n) of det(t I - A) = t^n + c_1 t^{n-1} + ... + c_n."""
    coeffs = Poly(x.A.charpoly(_t).as_expr(), _t).all_coeffs()
    return tuple(Fraction(int(c.p), int(c.q)) for c in coeffs[1:])


def krylov_matrix(x, w):
    """Rows w, wD, ..., wD^{n-1}."""
    n = x.n
    row = _row(w, n)
    rows = []
    for _ in range(n):
        rows.append(row)
        row = row * x.D
    return Matrix.vstack(*rows)


def is_strongly_regular(x, w):
    """Squarefree char poly of A, det B det C != 0, and w, wD, ..., wD^{n-1} spanning."""
    cp = Poly(x.A.charpoly(_t).as_expr(), _t)
    if gcd(cp, cp.diff(_t)).degree() > 0:
        return False
    if x.B.det() == 0 or x.C.det() == 0:
        return False
    return krylov_matrix(x, w).rank() == x.n


def character(kind, value, p):
    """Trivial or unramified quadratic character at a nonzero rational."""
    value = Fraction(int(value.p), int(value.q)) if isinstance(value, Rational) else Fraction(value)
    if value == 0:
        raise DegenerateInputError("character evaluated at 0")
    if kind == TRIVIAL:
        return 1
    if kind == QUADRATIC:
        return -1 if vp(value, p) % 2 else 1
    raise DomainError(f"unknown character {kind!r}; use '{TRIVIAL}' or '{QUADRATIC}'")


def parse_signs(text):
    """'q,1,q' -> ('q', '1', 'q') for (eta_0, eta_1, eta_2)."""
    parts = tuple(s.strip() for s in (text.split(",") if isinstance(text, str) else text))
    if len(parts) != 3 or any(s not in (TRIVIAL, QUADRATIC) for s in parts):
        raise DomainError(f"signs must be three of '{TRIVIAL}'/'{QUADRATIC}', got {text!r}")
    return parts


def transfer_factor(gamma, w, signs, p):
    """Omega(gamma, w) = eta_2^n(BC) (eta_1 eta_2)(C) eta_0(det(w|wD|...|wD^{n-1})) eta_2(det gamma)."""
    e0, e1, e2 = parse_signs(signs)
    p = _check_prime(p)
    gamma = as_matrix(gamma)
    x = project_sym(gamma, p)
    n = x.n
    dB, dC, dK = x.B.det(), x.C.det(), krylov_matrix(x, w).det()
    if dB == 0 or dC == 0 or dK == 0:
        raise DegenerateInputError("a determinant in the transfer factor vanishes; (gamma, w) is not strongly regular")
    omega = character(e2, dB * dC, p) ** n
    omega *= character(e1, dC, p) * character(e2, dC, p)
    omega *= character(e0, dK, p)
    omega *= character(e2, gamma.det(), p)
    return omega


def _block_diag(pair):
    g1, g2 = as_matrix(pair[0]), as_matrix(pair[1])
    return Matrix.diag(g1, g2)


def _pair_char(kind, pair, p):
    """chi(h) = chi(det h^(1) / det h^(2))."""
    d1, d2 = as_matrix(pair[0]).det(), as_matrix(pair[1]).det()
    if d1 == 0 or d2 == 0:
        raise DegenerateInputError("singular block in the acting pair")
    return character(kind, d1 / d2, p)


def act_pair(gamma, w, h1, h2):
    """(h1, h2) . (gamma, w) = (h1^{-1} gamma h2, w h1^(2))."""
    gamma = as_matrix(gamma)
    H1, H2 = _block_diag(h1), _block_diag(h2)
    if H1.det() == 0 or H2.det() == 0:
        raise DegenerateInputError("singular acting element")
    n = gamma.rows // 2
    return H1.inv() * gamma * H2, _row(w, n) * as_matrix(h1[1])


def check_equivariance(gamma, w, h1, h2, signs, p):
    """Omega(h.(gamma,w)) eta_0(det h1^(2)) eta_1(h1) eta_2(h2) == Omega(gamma, w)."""
    e0, e1, e2 = parse_signs(signs)
    lhs = transfer_factor(*act_pair(gamma, w, h1, h2), signs, p)
    lhs *= character(e0, as_matrix(h1[1]).det(), p)
    lhs *= _pair_char(e1, h1, p) * _pair_char(e2, h2, p)
    return lhs == transfer_factor(gamma, w, signs, p)


def _random_matrix(n, rng, lo=-3, hi=3):
    return Matrix(n, n, [int(v) for v in rng.integers(lo, hi + 1, size=n * n)])


def random_block_pair(n, rng, unit=False, p=3):
    """Random (g1, g2) of integral invertible n x n matrices; ``unit`` forces p-adic unit determinants."""
    out = []
    while len(out) < 2:
        g = _random_matrix(n, rng)
        d = g.det()
        if d == 0 or (unit and d % p == 0):
            continue
        out.append(g)
    return tuple(out)


def random_regular_pair(n, rng, max_tries=1000):
    """Random integral (gamma, w) whose projection is strongly regular."""
    for _ in range(max_tries):
        gamma = _random_matrix(2 * n, rng)
        if gamma.det() == 0:
            continue
        w = [int(v) for v in rng.integers(-3, 4, size=n)]
        if is_strongly_regular(project_sym(gamma), w):
            return gamma, w
    raise DegenerateInputError("no strongly regular pair found")
