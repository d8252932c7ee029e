import numpy as np
import pytest

from oscbath.baths import Discrete, Drude, Ohmic
from oscbath.errors import DomainError
from oscbath.susceptibility import (
    alpha0,
    det_alpha,
    field_weight,
    lambda_of,
    ohmic_bracket,
    resonance_frequencies,
    response_point,
    spectral_weight,
    spectral_weight_numeric,
    zero_field_weight,
)

GRID = np.geomspace(1e-3, 1e3, 200)
# spectral weight at gamma=0.1, b=0.5, omega=0.7: closed-form bracket and a
# 40-digit mpmath derivative of ln det alpha agree on this value
X_FIXTURE = 5.647644370917193


def test_lambda_values():
    assert lambda_of(Ohmic(0.1), 1.0) == pytest.approx(-0.1j, abs=1e-16)
    assert lambda_of(Ohmic(0.1), 1e-9) == pytest.approx(1.0, abs=1e-9)
    assert lambda_of(Drude(0.1, 10.0), 1.0) == pytest.approx(0.00990099009901 - 0.0990099009901j, rel=1e-12)


def test_lambda_domain():
    with pytest.raises(DomainError):
        lambda_of(Ohmic(0.1), 0.0)


def test_det_alpha_values():
    assert det_alpha(Ohmic(0.1), 0.0, 1.0) == pytest.approx(-1000j, rel=1e-13)
    w = 0.37
    assert det_alpha(Drude(0.2), 0.0, w) == pytest.approx(alpha0(Drude(0.2), w) ** 3, rel=1e-14)
    # the field factor carries omega^2 and drops out at low frequency
    assert det_alpha(Ohmic(0.1), 0.5, 1e-8) == pytest.approx(1.0, rel=1e-7)


def test_response_point_inverse():
    rp = response_point(Drude(0.3, 2.0), 0.4, 0.9)
    assert abs(rp.alpha0_val * rp.lambda_val - 1) < 1e-12


def test_ohmic_bracket_values():
    assert ohmic_bracket(0.1, 0.0, 1.0) == pytest.approx(60.0, rel=1e-14)
    assert ohmic_bracket(0.1, 0.5, 1.0) == pytest.approx(20 + 2 * 0.2 / 0.26, rel=1e-14)
    w = np.linspace(0.1, 3, 11)
    np.testing.assert_allclose(
        ohmic_bracket(0.2, 0.0, w), 3 * 0.2 * (w**2 + 1) / ((w**2 - 1) ** 2 + (0.2 * w) ** 2), rtol=1e-14
    )


def test_spectral_weight_resonance_and_static_limit():
    assert spectral_weight(Ohmic(0.1), 0.0, 1.0) == pytest.approx(6 / 0.1, rel=1e-13)
    assert spectral_weight(Ohmic(0.1), 0.0, 1e-7) == pytest.approx(0.3, rel=1e-10)


def test_regression_fixture_two_routes():
    bath = Ohmic(0.1)
    closed = ohmic_bracket(0.1, 0.5, 0.7)
    numeric = spectral_weight_numeric(bath, 0.5, 0.7)
    assert abs(closed - numeric) / closed < 1e-8
    assert spectral_weight(bath, 0.5, 0.7) == pytest.approx(X_FIXTURE, rel=1e-12)


@pytest.mark.parametrize("b", [0.0, 0.3, 1.0])
def test_ohmic_weight_equals_bracket_on_log_grid(b):
    np.testing.assert_allclose(spectral_weight(Ohmic(0.1), b, GRID), ohmic_bracket(0.1, b, GRID), rtol=1e-10)
    assert np.all(ohmic_bracket(0.1, b, GRID) > 0)


@pytest.mark.parametrize("bath", [Ohmic(0.1), Drude(0.5, 3.0)], ids=["ohmic", "drude"])
def test_zero_field_factor_three(bath):
    w = GRID
    lam = lambda_of(bath, w)
    h = 1e-6 * np.maximum(w, 1.0)
    # independent route: derivative of ln alpha0 by central differences
    dlog = np.angle(alpha0(bath, w + h) / alpha0(bath, w - h)) / (2 * h)
    np.testing.assert_allclose(spectral_weight(bath, 0.0, w), 3 * dlog, rtol=1e-7, atol=1e-12)
    np.testing.assert_allclose(zero_field_weight(bath, w), spectral_weight(bath, 0.0, w), rtol=1e-12)
    assert np.all(np.isfinite(lam))


@pytest.mark.parametrize("bath", [Ohmic(0.1), Drude(0.2, 5.0)], ids=["ohmic", "drude"])
@pytest.mark.parametrize("b", [0.3, 1.0])
def test_field_split_at_integrand_level(bath, b):
    w = np.geomspace(1e-2, 1e2, 80)
    np.testing.assert_allclose(
        field_weight(bath, b, w), spectral_weight(bath, b, w) - spectral_weight(bath, 0.0, w), rtol=1e-8, atol=1e-12
    )
    # and against a numerical derivative of ln[1 - (b w alpha0)^2]
    h = 1e-6 * np.maximum(w, 1.0)

    def g(x):
        return 1 - (b * x * alpha0(bath, x)) ** 2

    numeric = -np.angle(g(w + h) / g(w - h)) / (2 * h)
    np.testing.assert_allclose(field_weight(bath, b, w), numeric, rtol=1e-6, atol=1e-9)


def test_drude_and_discrete_analytic_vs_numeric():
    w = np.linspace(0.05, 4.0, 41)
    for bath, b in ((Drude(0.3, 2.0), 0.4), (Discrete([(0.3, 0.6), (0.1, 2.5)], eta_tilde=0.05), 0.2)):
        np.testing.assert_allclose(
            spectral_weight(bath, b, w), spectral_weight_numeric(bath, b, w), rtol=1e-6, atol=1e-8
        )


def test_resonances():
    assert resonance_frequencies(Ohmic(0.1), 0.0) == [1.0]
    r = resonance_frequencies(Ohmic(0.1), 0.5)
    assert r == pytest.approx([(np.sqrt(4.25) - 0.5) / 2, 1.0, (np.sqrt(4.25) + 0.5) / 2])
    disc = Discrete([(0.2, 0.7), (0.3, 1.8)], eta_tilde=1e-4)
    assert resonance_frequencies(disc, 0.0) == pytest.approx([0.63532579, 0.7, 0.93204660, 1.8, 2.12782760], rel=1e-7)
