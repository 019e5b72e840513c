import math

import pytest

from cplxinfo.asymptotics import gaussian_ce_asymptotic


def test_examples():
    assert gaussian_ce_asymptotic(1e-4, 1).value == pytest.approx(0.0158324, abs=1e-6)
    assert gaussian_ce_asymptotic(0.01, 10).value == pytest.approx(0.0500664, abs=1e-6)
    r = gaussian_ce_asymptotic(0.3, 0.3)
    assert r.value == pytest.approx((2 * math.pi) ** 0.25, abs=1e-15)


def test_lambda_and_regime_flag():
    r = gaussian_ce_asymptotic(1e-3, 1)
    assert r.lam == pytest.approx(1 / (math.sqrt(2 * math.pi) * 1e-3))
    assert r.regime_ok
    assert not gaussian_ce_asymptotic(1.0, 1.0).regime_ok


@pytest.mark.parametrize("k", [1e-3, 0.5, 7.0, 1e4])
def test_depends_only_on_ratio(k):
    assert gaussian_ce_asymptotic(k * 0.02, k * 3.0).value == pytest.approx(
        gaussian_ce_asymptotic(0.02, 3.0).value, rel=1e-14)


@pytest.mark.parametrize("sigma, beta", [(0, 1), (1, 0), (-1, 1)])
def test_rejects_nonpositive(sigma, beta):
    with pytest.raises(ValueError):
        gaussian_ce_asymptotic(sigma, beta)
