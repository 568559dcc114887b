import pytest

from padicgerm.errors import DomainError, FitError
from padicgerm.germs import GermExpansion, eval_germ, fit_germ, germ_of_vol, vol_germ_exponents
from padicgerm.qring import one, q, qpow, zero
from padicgerm.volumes import const_term_A, linear_coeff_B, vol_direct, vol_recur2

GEOM = {(1, 0): q / (q - 1), (0, 0): 1 / (1 - q)}


def test_eval_examples():
    assert eval_germ(GermExpansion({(0, 0): 1}), 9) == one
    assert eval_germ(GermExpansion({(0, 1): 1, (0, 0): 1}), 4) == 5 * one
    assert eval_germ(GermExpansion(GEOM), 2) == 1 + q + q * q


def test_eval_below_threshold():
    with pytest.raises(DomainError):
        eval_germ(GermExpansion({(0, 0): 1}, validity_from=3), 2)


def test_fit_examples():
    g = fit_germ(lambda x: vol_recur2(1, 1, x), (1, 1), x0=1)
    assert g.terms == GermExpansion(GEOM).terms
    assert fit_germ(lambda x: vol_recur2(1, 0, x), (0, 1), x0=0).terms == {(0, 1): one, (0, 0): one}
    assert fit_germ(lambda x: one, (0, 0), x0=0).terms == {(0, 0): one}


def test_fit_error_reports_x():
    # q^{2x} is outside the support {0, 1}
    with pytest.raises(FitError) as info:
        fit_germ(lambda x: qpow(2 * x), (1, 0), x0=0)
    assert info.value.x is not None and info.value.x >= 0


def test_negative_exponents_allowed():
    g = germ_of_vol(1, -1)
    assert any(a < 0 for a, _ in g.terms)
    for x in range(1, 8):
        assert eval_germ(g, x) == vol_direct(1, -1, x)


def test_germ_of_vol_examples():
    assert germ_of_vol(0, 2).terms == {(0, 0): one}
    assert germ_of_vol(1, 1).terms == GermExpansion(GEOM).terms
    assert germ_of_vol(2, 0).coefficient(0, 1) == 2 / (1 - q)
    assert germ_of_vol(1, 1).coefficient(0, 0) == const_term_A(1, 1)


@pytest.mark.parametrize("n", range(5))
def test_round_trip(n):
    for a in range(-3, 4):
        g = germ_of_vol(n, a)
        for x in range(1, 11):
            assert eval_germ(g, x) == vol_direct(n, a, x), (n, a, x)


@pytest.mark.parametrize("n", range(1, 5))
def test_support_and_constant_term(n):
    for a in range(1, 4):
        g = germ_of_vol(n, a)
        assert all(k[0] >= 1 or k == (0, 0) for k in g.terms)
        assert g.coefficient(0, 0) == const_term_A(n, a)


@pytest.mark.parametrize("n", range(1, 5))
def test_linear_coefficient(n):
    assert germ_of_vol(n, 0).coefficient(0, 1) == linear_coeff_B(n)


def test_uniqueness_under_wider_support():
    for n in range(1, 4):
        for a in range(-2, 3):
            exps = vol_germ_exponents(n, a)
            wide = fit_germ(
                lambda x: vol_recur2(n, a, x), (0, n + 1), x0=1, exponents=range(min(exps) - 1, max(exps) + 2)
            )
            assert wide.terms == germ_of_vol(n, a).terms


def test_functional_equation_transport():
    for n in range(1, 4):
        for a in range(-2, 3):
            moved = {(k[0] - n * a, k[1]): c for k, c in germ_of_vol(n, a).terms.items()}
            assert moved == germ_of_vol(n, -a).terms


def test_json_shape():
    js = germ_of_vol(1, 1).to_json()
    assert js["validity_from"] == 1
    assert {t["a"] for t in js["terms"]} == {0, 1}


def test_algebra():
    g = GermExpansion(GEOM)
    assert (g + g.scaled(-1)).terms == {}
    assert g.shifted(2).coefficient(3, 0) == g.coefficient(1, 0)
    assert g.coefficient(5, 5) == zero
