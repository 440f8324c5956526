import json
import math

import pytest
from hypothesis import given, strategies as st

from acphase import constants as K
from acphase.errors import ConfigurationError, DomainError
from acphase.units import (Dimension, PhysicalQuantity, field_amplitude_from_flux,
                           from_natural, to_natural)

finite_vals = st.floats(min_value=-1e20, max_value=1e20,
                        allow_nan=False, allow_infinity=False)


def test_zero_length_maps_to_zero():
    assert to_natural(PhysicalQuantity(0.0, Dimension.LENGTH)) == 0.0


def test_one_meter():
    # 1 m / (hbar c) with hbar c = 197.3269631 eV nm
    val = to_natural(PhysicalQuantity(1.0, Dimension.LENGTH))
    assert val == pytest.approx(5.0677e6, rel=1e-4)
    assert val == pytest.approx(1e9 / K.HBAR_C_EV_NM, rel=1e-15)


def test_wavelength_to_omega():
    # omega = 2 pi hbar c / lambda for lambda = 100 um
    lam = to_natural(PhysicalQuantity(100e-6, Dimension.LENGTH))
    omega = 2 * math.pi / lam
    assert omega == pytest.approx(2 * math.pi * K.HBAR_C_EV_NM / 1e5, rel=1e-12)
    assert omega == pytest.approx(1.2399e-2, rel=1e-3)


def test_one_second():
    val = to_natural(PhysicalQuantity(1.0, Dimension.TIME))
    assert val == pytest.approx(1.519268e15, rel=1e-6)


def test_dimensionless_passthrough():
    q = PhysicalQuantity(0.37, Dimension.DIMENSIONLESS)
    assert to_natural(q) == 0.37


@given(finite_vals, st.sampled_from(list(Dimension)))
def test_round_trip(value, dim):
    q = PhysicalQuantity(value, dim)
    back = from_natural(to_natural(q), dim)
    assert back.value == pytest.approx(value, rel=1e-12, abs=1e-300)


def test_unknown_dimension_rejected():
    with pytest.raises(ConfigurationError):
        to_natural(PhysicalQuantity(1.0, "furlongs"))
    with pytest.raises(ConfigurationError):
        to_natural(PhysicalQuantity(float("nan"), Dimension.LENGTH))


def test_elementary_charge_value():
    assert K.E_CHARGE == pytest.approx(0.30282212, abs=5e-8)
    assert K.E_CHARGE**2 == pytest.approx(4 * math.pi * K.ALPHA_FS, rel=1e-15)


class TestFieldAmplitudeFromFlux:
    def test_zero_flux(self):
        assert field_amplitude_from_flux(0.0) == 0.0

    def test_negative_flux_rejected(self):
        with pytest.raises(DomainError):
            field_amplitude_from_flux(-1.0)

    def test_plane_wave_ten_watts(self):
        rho = to_natural(PhysicalQuantity(10.0 * 1e4, Dimension.ENERGY_FLUX))
        e0 = field_amplitude_from_flux(rho)
        assert e0 == pytest.approx(math.sqrt(2 * rho), rel=1e-15)
        # 10 W/cm^2 is about 1.6e-5 eV^4, E0 about 5.66e-3 eV^2
        assert e0 == pytest.approx(5.66e-3, rel=2e-3)

    def test_guide_equals_wave_when_a_is_lambda(self):
        rho = 3.7e-5
        b0 = field_amplitude_from_flux(rho, guide=True, a=2.0, lam=2.0)
        assert b0 == pytest.approx(math.sqrt(rho), rel=1e-15)
        assert field_amplitude_from_flux(rho) == pytest.approx(math.sqrt(2) * b0, rel=1e-15)


def test_constants_table_is_json_serializable_and_consistent():
    table = json.loads(json.dumps(K.constants_table()))
    assert table["eV_inv_per_m"] == pytest.approx(1e9 / table["hbar_c_eV_nm"], rel=1e-15)
    assert table["eV_inv_per_s"] == pytest.approx(1.0 / table["hbar_eV_s"], rel=1e-15)
    assert table["eV_per_kg"] == pytest.approx(
        table["c_m_per_s"] ** 2 / table["J_per_eV"], rel=1e-15)


def test_cmag_invariant_under_energy_anchor_rescaling():
    """|C| is dimensionless: re-expressing every input in a keV-based natural
    system (lengths / 1000, energies x 1000) must leave it unchanged."""
    from acphase.closed_forms import ScenarioParams, evaluate

    def cmag(kappa):
        meter = to_natural(PhysicalQuantity(1.0, Dimension.LENGTH)) / kappa
        lam = 0.01 * meter
        omega = 2 * math.pi / lam
        p = ScenarioParams(E0=1.3e-3 * kappa**2, omega=omega,
                           alpha=5e-4 * meter, theta=0.1 * meter / 1e-5,
                           T=0.2 * meter / 1e-5,
                           d_y=K.E_CHARGE * 1e-9 * meter)
        return evaluate("dipole.diamond.exact", p)["Cmag"]

    assert cmag(1.0) == pytest.approx(cmag(1e3), rel=1e-10)
    assert cmag(1.0) > 0.0
