from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from sympy import Matrix, eye

from padicgerm.errors import DegenerateInputError, DomainError
from padicgerm.invariants import (
    PAdicScalar,
    act_pair,
    car_lin,
    check_equivariance,
    is_strongly_regular,
    parse_signs,
    project_sym,
    random_block_pair,
    random_regular_pair,
    transfer_factor,
    vp,
)

G = [[1, 1], [1, 2]]


def test_valuation_and_scalar():
    assert vp(Fraction(12, 25), 5) == -2
    assert vp(-8, 2) == 3
    x = PAdicScalar(Fraction(1, 9), 3)
    assert x.eta == 1 and x.abs == 9
    assert PAdicScalar(6, 2).eta == -1
    with pytest.raises(DomainError):
        vp(0, 3)


def test_project_sym_examples():
    x = project_sym(eye(4), 3)
    assert x.A == eye(2) and x.B.is_zero_matrix and x.C.is_zero_matrix and x.D == -eye(2)
    x = project_sym(G)
    assert (x.A[0], x.B[0], x.C[0], x.D[0]) == (3, -2, 4, -3)
    with pytest.raises(DomainError):
        project_sym([[1, 1], [1, 1]])


def test_project_sym_equivariance():
    rng = np.random.default_rng(0)
    for n in (1, 2):
        for _ in range(5):
            gamma, _ = random_regular_pair(n, rng)
            g, h = random_block_pair(n, rng)
            lhs = project_sym(Matrix.diag(g, h) * gamma)
            rhs = project_sym(gamma).act(g, h)
            assert (lhs.A, lhs.B, lhs.C, lhs.D) == (rhs.A, rhs.B, rhs.C, rhs.D)


def test_car_lin():
    assert car_lin(project_sym(eye(4))) == (-2, 1)
    assert car_lin(project_sym(G)) == (-3,)


def test_strong_regularity():
    assert not is_strongly_regular(project_sym(eye(4)), [1, 0])
    assert not is_strongly_regular(project_sym(eye(2)), [1])
    assert is_strongly_regular(project_sym(G), [1])
    rng = np.random.default_rng(1)
    gamma, w = random_regular_pair(2, rng)
    x = project_sym(gamma)
    # a left eigenvector of D makes (w; wD) rank one
    v = x.D.T.eigenvects()
    real = [vec for val, _, vecs in v if val.is_rational for vec in vecs]
    if real:
        assert not is_strongly_regular(x, list(real[0]))
    assert not is_strongly_regular(x, [0, 0])


def test_transfer_factor_examples():
    assert transfer_factor(G, [1], "q,1,q", 3) == 1
    assert transfer_factor(G, [1], "q,1,q", 2) == -1
    assert transfer_factor(G, [1], "1,1,1", 2) == 1


def test_transfer_factor_degenerate():
    with pytest.raises(DegenerateInputError):
        transfer_factor(eye(2), [1], "q,q,q", 3)
    with pytest.raises(DegenerateInputError):
        transfer_factor(G, [0], "q,q,q", 3)


def test_parse_signs():
    assert parse_signs("q,1,q") == ("q", "1", "q")
    with pytest.raises(DomainError):
        parse_signs("q,2,q")
    with pytest.raises(DomainError):
        parse_signs("q,1")


def test_equivariance_examples():
    one = ([[1]], [[1]])
    assert check_equivariance(G, [1], one, one, "q,1,q", 3)
    assert check_equivariance(G, [1], ([[3]], [[1]]), one, "q,1,q", 3)


@pytest.mark.parametrize("n,p", list(product((1, 2), (2, 3, 5))))
def test_cocycle_sweep(n, p):
    rng = np.random.default_rng([n, p])
    for seed in range(20):
        gamma, w = random_regular_pair(n, rng)
        h1 = random_block_pair(n, rng, unit=seed % 2 == 0, p=p)
        h2 = random_block_pair(n, rng, unit=seed % 3 == 0, p=p)
        g2, w2 = act_pair(gamma, w, h1, h2)
        assert car_lin(project_sym(g2)) == car_lin(project_sym(gamma))
        assert is_strongly_regular(project_sym(g2), list(w2))
        for signs in product("1q", repeat=3):
            signs = ",".join(signs)
            assert transfer_factor(gamma, w, signs, p) in (1, -1)
            assert check_equivariance(gamma, w, h1, h2, signs, p)
