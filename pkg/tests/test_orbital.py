import json

import numpy as np
import pytest

from padicgerm.errors import DomainError
from padicgerm.germs import eval_germ
from padicgerm.orbital import (
    OrbitalProfile,
    check_linear_term,
    germ_threshold,
    orbital_coeffs,
    orbital_direct,
    orbital_germ,
    random_profile,
)
from padicgerm.qring import one, zero
from padicgerm.volumes import vol_direct

BOT = None


def indicator(n):
    return OrbitalProfile(n, 0, {((BOT,) * n, (BOT,) * n): 1})


SECOND = OrbitalProfile(1, 1, {((BOT,), (BOT,)): 1, ((BOT,), (-1,)): 1})


def test_direct_examples():
    assert orbital_direct(indicator(1), 4) == 5 * one
    assert orbital_direct(SECOND, 0) == 2 * one
    assert orbital_direct(OrbitalProfile(2, 1), 3) == zero


def test_indicator_is_vol():
    for n in range(1, 4):
        for x in range(5):
            assert orbital_direct(indicator(n), x) == vol_direct(n, 0, x)


def test_coeff_examples():
    assert orbital_coeffs(indicator(2)) == {(0, 2, 0): one}
    assert orbital_coeffs(SECOND) == {(0, 1, 0): one, (1, 0, 0): one}
    assert orbital_coeffs(OrbitalProfile(2, 2)) == {}


def test_germ_examples():
    assert orbital_germ(indicator(1)).terms == {(0, 1): one, (0, 0): one}
    assert orbital_germ(OrbitalProfile(1, 0)).terms == {}
    assert orbital_germ(SECOND).terms == {(0, 1): one, (0, 0): 2 * one}


def test_linear_term_examples():
    assert check_linear_term(indicator(1))
    assert check_linear_term(OrbitalProfile(2, 0))
    rng = np.random.default_rng(20)
    assert all(check_linear_term(random_profile(2, 1, rng)) for _ in range(20))


def test_profile_validation():
    with pytest.raises(DomainError):
        OrbitalProfile(1, 1, {((-2,), (BOT,)): 1})
    with pytest.raises(DomainError):
        OrbitalProfile(2, 1, {((BOT,), (BOT,)): 1})
    with pytest.raises(DomainError):
        OrbitalProfile(2, 1, {((-1, BOT), (BOT, BOT)): 1, ((BOT, -1), (BOT, BOT)): 2})


def test_json_round_trip():
    rng = np.random.default_rng(3)
    phi = random_profile(2, 2, rng)
    again = OrbitalProfile.from_json(json.dumps(phi.to_json()))
    assert again == phi
    with pytest.raises(DomainError):
        OrbitalProfile.from_json({"n": 1})


@pytest.mark.parametrize("n,N", [(n, N) for n in (1, 2, 3) for N in (0, 1, 2)])
def test_germ_matches_direct(n, N):
    rng = np.random.default_rng([n, N])
    for _ in range(8):
        phi = random_profile(n, N, rng)
        g = orbital_germ(phi)
        assert g.validity_from == germ_threshold(N)
        for x in range(2 * N + 2, 2 * N + 11):
            assert eval_germ(g, x) == orbital_direct(phi, x)
        assert check_linear_term(phi)


def test_linearity():
    rng = np.random.default_rng(11)
    for n, N in [(1, 2), (2, 1), (3, 1)]:
        f, g = random_profile(n, N, rng), random_profile(n, N, rng)
        h = f.combine(g, 3, -2)
        for x in range(5):
            assert orbital_direct(h, x) == orbital_direct(f, x) * 3 - orbital_direct(g, x) * 2
        cf, cg, ch = orbital_coeffs(f), orbital_coeffs(g), orbital_coeffs(h)
        for t in set(cf) | set(cg) | set(ch):
            assert ch.get(t, zero) == cf.get(t, zero) * 3 - cg.get(t, zero) * 2


def test_nonvanishing_when_phi0_nonzero():
    rng = np.random.default_rng(5)
    for n, N in [(1, 1), (2, 2), (3, 1)]:
        phi = random_profile(n, N, rng, phi0=-2)
        assert not orbital_germ(phi).coefficient(0, 1).is_zero()
        assert not orbital_direct(phi, 20).is_zero()


def test_rank_guard():
    with pytest.raises(DomainError):
        orbital_germ(OrbitalProfile(4, 0))
