"""Exit criteria. Each test carries a ``criterion`` mark; a summary line per
criterion is printed at the end of the pytest run."""
import math
import subprocess
import sys

import numpy as np
import pytest

from oscbath.asymptotics import DEFAULT_FIT_THETAS, fit_third_law_slope
from oscbath.baths import Ohmic
from oscbath.susceptibility import alpha0, ohmic_bracket, spectral_weight
from oscbath.thermo import entropy, free_energy
from oscbath.wigner import entropy_exact, entropy_wigner_closed, entropy_wigner_numeric, wigner_moments, wigner_params

WIGNER_GRID = [(w, t) for w in np.linspace(0.5, 2.0, 5) for t in np.geomspace(0.1, 10.0, 5)]


def criterion(number, text):
    return pytest.mark.criterion(number, text)


@criterion(1, "Wigner entropy -> 1 - log 2 while exact entropy -> 0 at theta = 1e-4")
def test_wigner_zero_temperature_pitfall():
    assert abs(entropy_wigner_closed(1.0, 1e-4) - (1 - math.log(2))) <= 1e-6
    assert entropy_exact(1.0, 1e-4) < 1e-8


@criterion(2, "Wigner and exact entropies agree to 1e-3 relative at theta/omega = 100")
def test_classical_agreement():
    s_w, s_x = entropy_wigner_closed(1.0, 100.0), entropy_exact(1.0, 100.0)
    assert abs(s_w - s_x) / s_x < 1e-3


@criterion(3, "Wigner normalization 1 +- 1e-10 and mean energy 1/a +- 1e-8 on 5x5 grid")
@pytest.mark.parametrize("omega,theta", WIGNER_GRID)
def test_wigner_normalization_and_energy(omega, theta):
    m = wigner_moments(omega, theta)
    assert abs(m.normalization - 1.0) <= 1e-10
    assert abs(m.mean_energy - wigner_params(omega, theta).a_inv) <= 1e-8


@criterion(4, "numeric Wigner entropy = closed form +- 1e-8 on 5x5 grid")
@pytest.mark.parametrize("omega,theta", WIGNER_GRID)
def test_wigner_entropy_numeric_vs_closed(omega, theta):
    assert abs(entropy_wigner_numeric(omega, theta) - entropy_wigner_closed(omega, theta)) <= 1e-8


@criterion(5, "Ohmic F(theta=0.01) = -(pi/2) gamma theta^2 within 1%")
def test_low_temperature_free_energy():
    F = free_energy(Ohmic(0.1), 0.0, 0.01).free_energy_total
    expected = -0.5 * math.pi * 0.1 * 0.01**2
    assert abs(F / expected - 1) < 1e-2


@criterion(6, "third-law slope pi*gamma within 1%, |S(0)| < 1e-6; S decreasing along 10^-k")
@pytest.mark.parametrize("gamma", [0.05, 0.1, 0.5])
def test_third_law_slope(gamma):
    pts = [(t, entropy(Ohmic(gamma), 0.0, t)) for t in DEFAULT_FIT_THETAS]
    fit = fit_third_law_slope(pts, expected_slope=math.pi * gamma)
    assert fit.slope_rel_error < 1e-2
    assert abs(fit.intercept) < 1e-6
    s = [entropy(Ohmic(gamma), 0.0, 10.0**-k) for k in (1, 2, 3)]
    assert s[0] > s[1] > s[2] > 0


@criterion(6, "third-law slope pi*gamma within 1%, |S(0)| < 1e-6; S decreasing along 10^-k")
@pytest.mark.parametrize("gamma", [0.05, 0.1, 0.5])
def test_third_law_check_command(gamma):
    proc = subprocess.run(
        [sys.executable, "-m", "oscbath", "third-law-check", "--gamma", str(gamma)],
        capture_output=True, text=True, timeout=120,
    )
    assert proc.returncode == 0, proc.stderr
    assert "PASS" in proc.stderr


@criterion(7, "S(0.01) field-independent to 1e-2; fitted slopes at b=0, 0.5 agree within 1%")
def test_field_independence():
    s0 = entropy(Ohmic(0.1), 0.0, 0.01)
    sb = entropy(Ohmic(0.1), 0.5, 0.01)
    assert abs(sb - s0) / s0 < 1e-2
    slopes = []
    for b in (0.0, 0.5):
        pts = [(t, entropy(Ohmic(0.1), b, t)) for t in DEFAULT_FIT_THETAS]
        slopes.append(fit_third_law_slope(pts, expected_slope=math.pi * 0.1).slope)
    assert abs(slopes[1] - slopes[0]) / abs(slopes[0]) < 1e-2


@criterion(8, "Ohmic spectral weight = closed-form bracket to 1e-10; b=0 weight = 3 Im[a0'/a0]")
@pytest.mark.parametrize("b", [0.0, 0.3, 1.0])
def test_integrand_identity(b):
    w = np.geomspace(1e-3, 1e3, 200)
    bath = Ohmic(0.1)
    np.testing.assert_allclose(spectral_weight(bath, b, w), ohmic_bracket(0.1, b, w), rtol=1e-10, atol=0)
    if b == 0.0:
        # alpha0' / alpha0 = -lambda' / lambda with lambda' = -2 w - i gamma
        a0 = alpha0(bath, w)
        da0 = -a0**2 * (-2 * w - 0.1j)
        np.testing.assert_allclose(spectral_weight(bath, 0.0, w), 3 * (da0 / a0).imag, rtol=1e-10)


@criterion(9, "entropy = -dF/dtheta (central difference, h = 1e-3 theta) to 1e-6 at theta in {0.05, 0.2, 1}")
@pytest.mark.parametrize("theta", [0.05, 0.2, 1.0])
def test_thermodynamic_consistency(theta):
    bath = Ohmic(0.1)
    h = 1e-3 * theta
    F = lambda t: free_energy(bath, 0.0, t).free_energy_total  # noqa: E731
    fd = -(F(theta + h) - F(theta - h)) / (2 * h)
    assert abs(entropy(bath, 0.0, theta) / fd - 1) < 1e-6


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "oscbath", *args], capture_output=True, text=True, timeout=120)


@criterion(10, "byte-identical CSV; exit codes 0 (PASS), 1 (bad flag), 2 (max_subdivisions=1)")
def test_determinism_and_exit_codes():
    args = ["sweep", "--theta-log", "1e-3:1:6", "--b-field", "0.5", "--gamma", "0.2"]
    first, second = _cli(*args), _cli(*args)
    assert first.returncode == 0
    assert first.stdout.encode() == second.stdout.encode()
    assert _cli("third-law-check").returncode == 0
    assert _cli("entropy", "--theta", "0.1", "--not-a-flag").returncode == 1
    assert _cli("entropy", "--theta", "1", "--max-subdivisions", "1").returncode == 2
