import math

import numpy as np
import pytest
import scipy.constants as sc
from hypothesis import given, strategies as st

from matterwave.units import (
    UnitSystem, codata_units, constants_table, derive_constants, gaussian_field_amplitude, modern_units,
)


def test_reference_hbar_and_h_consistency():
    u = codata_units()
    assert u.hbar == 1.054588e-34
    assert abs(u.h / (2 * math.pi * u.hbar) - 1) < 1e-12


def test_transcribed_constants_match_public_table():
    # scipy ships a later CODATA release; e and c are exact, m_e moved in the 10th digit
    u = codata_units()
    assert u.e == sc.e
    assert u.c == sc.c
    assert abs(u.m_e / sc.m_e - 1) < 2e-9


def test_modern_units_are_self_consistent():
    u = modern_units()
    assert u.h == 6.62607015e-34
    assert abs(u.h / (2 * math.pi * u.hbar) - 1) < 1e-15


def test_sigma_bar_rule_is_charge_to_mass_times_density():
    u = codata_units()
    assert u.sigma_bar_rule(2.0) == pytest.approx(2.0 * u.e / u.m_e, rel=1e-15)


def test_derived_constants_against_published_numbers():
    u = codata_units()
    d = derive_constants(u)
    assert abs(d.beta_f / 2.50e-38 - 1) < 5e-3
    assert abs(d.hbar_estimate / 1.081e-34 - 1) < 2e-3
    assert abs((d.hbar_estimate - u.hbar) / u.hbar - 0.025) <= 0.003


def test_compton_wavelength_against_independent_constants():
    d = derive_constants(codata_units())
    # the reference hbar differs from the exact SI h by 1.4e-5
    assert d.lambda_compton == pytest.approx(sc.h / (sc.m_e * sc.c), rel=5e-5)


def test_derive_constants_is_pure():
    a = derive_constants(codata_units())
    b = derive_constants(codata_units())
    assert a == b


def test_invalid_unit_systems_rejected():
    with pytest.raises(ValueError):
        UnitSystem(e=-1.0, m_e=1.0, c=1.0, h=2 * math.pi, hbar=1.0)
    with pytest.raises(ValueError):
        UnitSystem(e=1.0, m_e=1.0, c=1.0, h=6.0, hbar=1.0)


def test_gaussian_amplitude_examples():
    assert gaussian_field_amplitude(0.0) == 0.0
    # c sqrt(4 pi) evaluated independently
    assert gaussian_field_amplitude(1.0) == pytest.approx(1.0627366e9, rel=1e-7)
    assert gaussian_field_amplitude(4.0) == 2 * gaussian_field_amplitude(1.0)
    with pytest.raises(ValueError):
        gaussian_field_amplitude(-1e-3)


def test_gaussian_amplitude_arrays():
    out = gaussian_field_amplitude(np.array([0.0, 1.0, 4.0]))
    assert out.shape == (3,)
    assert out[2] == 2 * out[1]


@given(st.floats(1e-6, 1e6), st.floats(1e-6, 1e6))
def test_gaussian_amplitude_square_root_scaling(a, r):
    lhs = gaussian_field_amplitude(a * r)
    rhs = math.sqrt(a) * gaussian_field_amplitude(r)
    assert lhs == pytest.approx(rhs, rel=1e-12)


@given(st.floats(1e-9, 1e9))
def test_field_energy_equals_rest_energy_density(rho0):
    u = codata_units()
    e0 = gaussian_field_amplitude(rho0, u)
    assert (e0**2 + e0**2) / (8 * math.pi) == pytest.approx(rho0 * u.c**2, rel=1e-12)


def test_constants_table_shape():
    table = constants_table()
    assert set(table) == {"e", "m_e", "c", "h", "hbar", "beta_f", "hbar_estimate", "lambda_compton"}
    for entry in table.values():
        assert set(entry) == {"value", "unit", "provenance"}
        assert entry["value"] > 0
