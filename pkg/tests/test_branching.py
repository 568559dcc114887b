from math import comb, factorial

import numpy as np
import pytest

from padicgerm.branching import (
    DominantWeight,
    PartitionNN,
    _partitions_of,
    branching_multiplicity,
    dominant_weights,
    lr_coeff,
    multiplicity_delta,
    multiplicity_gamma_sum,
    multiplicity_lr_oracle,
    self_associate,
    split_weight,
)
from padicgerm.errors import DomainError


def hook_dim(lam):
    """Number of standard Young tableaux, by the hook length formula."""
    if not lam:
        return 1
    conj = [sum(1 for r in lam if r > j) for j in range(lam[0])]
    h = 1
    for i, r in enumerate(lam):
        for j in range(r):
            h *= (r - j - 1) + (conj[j] - i - 1) + 1
    return factorial(sum(lam)) // h


def test_lr_examples():
    assert lr_coeff((1,), (1,), (1,)) == 0
    assert lr_coeff((2, 1), (1,), (1, 1)) == 1
    assert lr_coeff((2, 2), (2,), (2,)) == 1
    assert lr_coeff((3, 2, 1), (2, 1), (2, 1)) == 2
    # Pieri: s_2 s_11 = s_31 + s_211
    assert [lr_coeff(lam, (2,), (1, 1)) for lam in [(3, 1), (2, 2), (2, 1, 1), (4,)]] == [1, 0, 1, 0]


def test_lr_size_bound():
    with pytest.raises(DomainError):
        lr_coeff((41,), (20,), (21,))


def test_lr_matches_dimension_count():
    # sum_lam c^lam_{mu nu} f^lam = binom(|mu|+|nu|, |mu|) f^mu f^nu
    for a in range(6):
        for b in range(6):
            for mu in _partitions_of(a, 9):
                for nu in _partitions_of(b, 9):
                    total = sum(lr_coeff(lam, mu, nu) * hook_dim(lam) for lam in _partitions_of(a + b, 20))
                    assert total == comb(a + b, a) * hook_dim(mu) * hook_dim(nu)


def test_lr_symmetry():
    rng = np.random.default_rng(7)
    for _ in range(100):
        a, b = int(rng.integers(0, 6)), int(rng.integers(0, 6))
        mu = _partitions_of(a, 4)[int(rng.integers(len(_partitions_of(a, 4))))]
        nu = _partitions_of(b, 4)[int(rng.integers(len(_partitions_of(b, 4))))]
        for lam in _partitions_of(a + b, 5):
            assert lr_coeff(lam, mu, nu) == lr_coeff(lam, nu, mu)


def test_self_associate():
    assert self_associate((1, 0, 0, -1))
    assert not self_associate((1, 0, 0, 0))
    assert self_associate((0, 0))
    with pytest.raises(DomainError):
        self_associate((1, 0, -1))


def test_branching_examples():
    assert branching_multiplicity((1, 0, 0, -1)) == 1
    assert branching_multiplicity((1, 0, 0, 0)) == 0
    assert branching_multiplicity((0, 0)) == 1
    assert lr_coeff((2, 1, 1, 0), (1, 1), (1, 1)) == 1


def test_conventions_and_guards():
    with pytest.raises(DomainError):
        DominantWeight((0, 1))
    with pytest.raises(DomainError):
        PartitionNN((1, -1))
    with pytest.raises(DomainError):
        branching_multiplicity((1, 0, 0))
    with pytest.raises(DomainError):
        branching_multiplicity((5, 0))
    with pytest.raises(DomainError):
        branching_multiplicity((0,) * 10)
    assert split_weight((2, 1, 0, -1, -2)) == ((2, 1), (2, 1))


@pytest.mark.parametrize("length", [2, 4, 6])
def test_exhaustive_equivalence(length):
    for lam in dominant_weights(length, -3, 3):
        routes = {multiplicity_gamma_sum(lam), multiplicity_delta(lam), multiplicity_lr_oracle(lam)}
        assert routes == {int(self_associate(lam))}, lam


def test_oracle_shift_consistency():
    for lam in dominant_weights(4, -3, 3):
        m = max(0, -lam[-1])
        assert multiplicity_lr_oracle(lam) == multiplicity_lr_oracle(lam, m + 1)
    with pytest.raises(DomainError):
        multiplicity_lr_oracle((1, 0, 0, -2), 1)


def test_nonnegative_weights():
    for lam in dominant_weights(6, 0, 3):
        assert branching_multiplicity(lam) == int(not any(lam))


def test_full_desk_bound_corner():
    assert branching_multiplicity((4, 4, 4, 4, -4, -4, -4, -4)) == 1
    assert branching_multiplicity((4, 4, 4, 4, 4, 4, 4, -4)) == 0
