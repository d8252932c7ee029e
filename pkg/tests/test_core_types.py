import math

import pytest
from hypothesis import given, strategies as st
from scipy import constants

from oscbath.core_types import (
    UNIT_TAGS,
    FieldSpec,
    QuadratureSpec,
    Scales,
    ThermoPoint,
    ThermoResult,
    from_internal,
    to_internal,
)
from oscbath.errors import ValidationError


@pytest.fixture
def scales():
    return Scales(omega0_ref=2 * math.pi * 1e9)


def test_temperature_with_kT_equal_hbar_omega0_is_theta_one(scales):
    T = constants.hbar * scales.omega0_ref / constants.k
    assert to_internal(T, "temperature", scales) == pytest.approx(1.0, rel=1e-15)


def test_frequency_identity_and_zero_energy(scales):
    assert to_internal(scales.omega0_ref, "frequency", scales) == 1.0
    assert to_internal(0.0, "energy", scales) == 0.0
    assert from_internal(0.0, "energy", scales) == 0.0


def test_from_internal_frequency(scales):
    assert from_internal(1.0, "frequency", scales) == 2 * math.pi * 1e9


def test_unknown_tag_rejected(scales):
    with pytest.raises(ValidationError):
        to_internal(1.0, "length", scales)
    with pytest.raises(ValidationError):
        from_internal(1.0, "length", scales)


@given(
    value=st.floats(min_value=1e-100, max_value=1e100),
    omega0=st.floats(min_value=1e-3, max_value=1e18),
    tag=st.sampled_from(UNIT_TAGS),
)
def test_round_trip_identity(value, omega0, tag):
    sc = Scales(omega0_ref=omega0)
    back = from_internal(to_internal(value, tag, sc), tag, sc)
    assert back == pytest.approx(value, rel=1e-14)


@pytest.mark.parametrize("kw", [{"omega0_ref": 0.0}, {"omega0_ref": 1.0, "mass_ref": -1.0}])
def test_scales_must_be_positive(kw):
    with pytest.raises(ValidationError):
        Scales(**kw)


def test_force_constant():
    sc = Scales(omega0_ref=3.0, mass_ref=2.0)
    assert sc.force_constant == 18.0


def test_value_type_invariants():
    assert ThermoPoint(0.0).beta == math.inf
    assert ThermoPoint(0.5).beta == 2.0
    with pytest.raises(ValidationError):
        ThermoPoint(-1e-3)
    with pytest.raises(ValidationError):
        FieldSpec(-0.1)
    with pytest.raises(ValidationError):
        QuadratureSpec(cutoff_lambda=5)
    with pytest.raises(ValidationError) as info:
        QuadratureSpec(rel_tol=0, abs_tol=-1, max_subdivisions=0)
    assert len(info.value.violations) == 3


def test_zero_result_satisfies_split():
    r = ThermoResult.zero()
    assert r.free_energy_total == r.free_energy_zero_field + r.delta_free_energy_field == 0.0
