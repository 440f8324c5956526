"""Physical constants and the single-sourced natural-unit conversion table.

Unit system: Lorentz-Heaviside with c = hbar = 1, everything expressed in
powers of eV.  Lengths and times carry eV^-1, masses and (angular)
frequencies carry eV, energy flux / energy density carry eV^4, E and B
field amplitudes carry eV^2, and the elementary charge is the
dimensionless e = sqrt(4 pi alpha).

Every conversion factor in the package is derived from the primitives
below; no factor is duplicated elsewhere.  CODATA 2018 values except
where noted.
"""

import math

# --- primitives -------------------------------------------------------

#: hbar*c in eV nm.  Pinned conversion anchor for all lengths.
HBAR_C_EV_NM = 197.3269631

#: hbar in eV s (CODATA 2018).
HBAR_EV_S = 6.582119569e-16

#: Joules per eV (CODATA 2018, exact).
J_PER_EV = 1.602176634e-19

#: Speed of light in m/s (exact).
C_M_PER_S = 299792458.0

#: Fine-structure constant (CODATA 2018).
ALPHA_FS = 7.2973525693e-3

#: Elementary charge in Lorentz-Heaviside natural units, e = sqrt(4 pi alpha)
#: (approximately 0.30282212).  Used by both the charge coupling and the
#: dipole scale d = e*L.
E_CHARGE = math.sqrt(4.0 * math.pi * ALPHA_FS)

#: Electron mass in eV (CODATA 2018).
M_ELECTRON_EV = 510998.95000

#: Sodium atom mass in eV; the default interferometry species.
M_SODIUM_EV = 21.41e9

#: Vacuum permittivity in F/m and permeability in H/m (CODATA 2018); used
#: only to convert SI field amplitudes (V/m, T) into natural units.
EPS0_SI = 8.8541878128e-12
MU0_SI = 1.25663706212e-6

# --- derived, still single-sourced ------------------------------------

#: 1 m in eV^-1 (= 1e9 nm / (hbar c)).
EV_INV_PER_M = 1.0e9 / HBAR_C_EV_NM

#: 1 s in eV^-1 (= 1/hbar; approximately 1.519268e15).
EV_INV_PER_S = 1.0 / HBAR_EV_S

#: 1 J in eV.
EV_PER_J = 1.0 / J_PER_EV

#: 1 kg in eV (rest energy m c^2).
EV_PER_KG = C_M_PER_S**2 * EV_PER_J

#: 1 J/m^3 in eV^4.
EV4_PER_J_M3 = EV_PER_J / EV_INV_PER_M**3

#: 1 W/m^2 in eV^4.  With c = 1 energy flux and energy density coincide.
EV4_PER_W_M2 = EV_PER_J / (EV_INV_PER_S * EV_INV_PER_M**2)

#: 1 V/m in eV^2: E_nat^2 must reproduce the SI energy density eps0 E^2.
EV2_PER_V_M = math.sqrt(EPS0_SI * EV4_PER_J_M3)

#: 1 T in eV^2: B_nat^2 must reproduce the SI energy density B^2/mu0.
EV2_PER_T = math.sqrt(EV4_PER_J_M3 / MU0_SI)


def constants_table() -> dict:
    """All constants as a flat dict, for the CLI --show-constants dump."""
    return {
        "hbar_c_eV_nm": HBAR_C_EV_NM,
        "hbar_eV_s": HBAR_EV_S,
        "J_per_eV": J_PER_EV,
        "c_m_per_s": C_M_PER_S,
        "alpha_fs": ALPHA_FS,
        "e_charge_natural": E_CHARGE,
        "m_electron_eV": M_ELECTRON_EV,
        "m_sodium_eV": M_SODIUM_EV,
        "eps0_SI": EPS0_SI,
        "mu0_SI": MU0_SI,
        "eV_inv_per_m": EV_INV_PER_M,
        "eV_inv_per_s": EV_INV_PER_S,
        "eV_per_J": EV_PER_J,
        "eV_per_kg": EV_PER_KG,
        "eV4_per_J_m3": EV4_PER_J_M3,
        "eV4_per_W_m2": EV4_PER_W_M2,
        "eV2_per_V_m": EV2_PER_V_M,
        "eV2_per_T": EV2_PER_T,
    }
