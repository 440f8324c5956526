"""Radiation-pressure force on a dipole, scattering cross sections, and the
mean-free-path bound that caps the usable field intensity.

Cross sections are evaluated in Lorentz-Heaviside units, where the
classical electron radius is r_e = e^2/(4 pi m_e) = alpha/m_e; the Thomson
cross section (8 pi/3) r_e^2 then comes out at its physical 6.652e-29 m^2.
Gaussian-convention write-ups of the same formulas omit the 1/(4 pi) per
factor of e^2; the ratio identities below are convention-free.

Pure functions; unrestricted concurrency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import ALPHA_FS, EV_INV_PER_M, M_ELECTRON_EV
from .errors import ConfigurationError, DomainError
from .fields import Dipole, PlaneWave


# ----------------------------------------------------------------------
# forces
# ----------------------------------------------------------------------

def dipole_force_general(field, coupling: Dipole, point, t, *, rel_step=1e-3):
    """F = grad[d.E + m.B] + d/dt (d x B), by 4th-order finite differences.

    The spatial step is ``rel_step`` of the field's shortest oscillation
    length (or of unity for static fields); source of truth against which
    printed special-case force formulas are verified.
    """
    d = np.asarray(coupling.d, dtype=float)
    m = np.asarray(coupling.m, dtype=float)
    x0 = np.asarray(point, dtype=float)
    w, kx, ky, kz = field.phase_rates()
    kmax = max(w, kx, ky, kz, 1.0)
    h = rel_step / kmax

    def potential(pos, tt):
        E, B = field.eval_EB((tt, pos[0], pos[1], pos[2]))
        return float(d @ E + m @ B)

    def cross_dB(tt):
        E, B = field.eval_EB((tt, x0[0], x0[1], x0[2]))
        return np.cross(d, np.asarray(B, dtype=float).reshape(3))

    # 4th-order central first derivative: (-f2 + 8 f1 - 8 f-1 + f-2) / 12h
    grad = np.zeros(3)
    for i in range(3):
        e = np.zeros(3)
        e[i] = 1.0
        grad[i] = (-potential(x0 + 2 * h * e, t) + 8 * potential(x0 + h * e, t)
                   - 8 * potential(x0 - h * e, t) + potential(x0 - 2 * h * e, t)) / (12 * h)
    ht = rel_step / max(w, 1.0)
    ddt = (-cross_dB(t + 2 * ht) + 8 * cross_dB(t + ht)
           - 8 * cross_dB(t - ht) + cross_dB(t - 2 * ht)) / (12 * ht)
    return grad + ddt


def dipole_force_planewave(field: PlaneWave, coupling: Dipole, point, t,
                           *, check: bool = True):
    """Plane-wave special case F = -k E0 cos(wt - ky)(d_y zhat + m_x yhat).

    With ``check`` the closed form is compared against the general law at
    the same point (1e-8 relative); a mismatch raises.
    """
    d = coupling.d
    m = coupling.m
    y = np.asarray(point, dtype=float)[1]
    c = math.cos(field.omega * t - field.omega * y)
    F = np.array([0.0, -field.omega * field.E0 * c * m[0],
                  -field.omega * field.E0 * c * d[1]])
    if check:
        F_num = dipole_force_general(field, coupling, point, t)
        scale = max(abs(field.omega * field.E0) * (abs(d[1]) + abs(m[0])), 1e-300)
        if np.max(np.abs(F - F_num)) > 1e-8 * scale:
            raise ConfigurationError(
                f"plane-wave force law mismatch: closed {F} vs general {F_num}")
    return F


def te_mode_force_printed(guide, coupling: Dipole, point, t):
    """Quoted TE-mode force on an electric dipole (x and z components; the
    y component vanishes identically for m = 0 couplings).

    Verified against :func:`dipole_force_general` in the test suite.
    """
    d = coupling.d
    kx, kz = guide.k_x, guide.k_z
    w, ky, g2 = guide.omega, guide.k_y, guide.gamma**2
    B0 = guide.amplitude
    _, x, y, z = point
    cx, sx = math.cos(kx * x), math.sin(kx * x)
    cz, sz = math.cos(kz * z), math.sin(kz * z)
    ph = ky * y - w * t
    sp, cp = math.sin(ph), math.cos(ph)
    Fx = (w * kz / g2) * B0 * (d[0] * kx * sx * sz * sp
                               - d[1] * ky * cx * sz * cp
                               - d[2] * kz * cx * cz * sp)
    Fz = (w * kx / g2) * B0 * (d[0] * kx * cx * cz * sp
                               + d[1] * ky * sx * cz * cp
                               - d[2] * kz * sx * sz * sp)
    return np.array([Fx, 0.0, Fz])


# ----------------------------------------------------------------------
# cross sections
# ----------------------------------------------------------------------

def sigma_thomson(m_e: float = M_ELECTRON_EV) -> float:
    """Thomson cross section (8 pi/3)(alpha/m_e)^2, natural units (eV^-2)."""
    if m_e <= 0:
        raise DomainError("electron mass must be positive")
    return (8.0 * math.pi / 3.0) * (ALPHA_FS / m_e) ** 2


def sigma_dipole_planewave(m_A: float, k_y: float, d_y: float, m_x: float = 0.0) -> float:
    """Plane-wave cross section of an oscillating dipole of mass m_A:
    (2/3)(alpha/m_A^2) k_y^2 (d_y^2 + m_x^2) with moments in e*length units."""
    if m_A <= 0:
        raise DomainError("scatterer mass must be positive")
    return (2.0 / 3.0) * (ALPHA_FS / m_A**2) * k_y**2 * (d_y**2 + m_x**2)


def dipole_electron_ratio(L: float, k_y: float, m_A: float,
                          m_e: float = M_ELECTRON_EV) -> float:
    """sigma_d / sigma_e = (k_y L)^2 (m_e/m_A)^2, exact.

    Reads as (L/lam)^2 (m_e/m_A)^2 with lam = 1/k_y the reduced wavelength.
    """
    return (k_y * L) ** 2 * (m_e / m_A) ** 2


def sigma_te(species: str, *, k: float, k_y: float, m_A: float | None = None,
             d_y: float | None = None, m_e: float = M_ELECTRON_EV) -> float:
    """TE-mode cross section: dipole (2/3)(alpha/m_A^2) d_y^2 k k_y;
    electron (8 pi/3)(alpha^2/m_e^2)(k/k_y)."""
    if species == "dipole":
        if m_A is None or d_y is None:
            raise ConfigurationError("sigma_te dipole needs m_A and d_y")
        if m_A <= 0:
            raise DomainError("scatterer mass must be positive")
        return (2.0 / 3.0) * (ALPHA_FS / m_A**2) * d_y**2 * k * k_y
    if species == "electron":
        if k_y <= 0:
            raise DomainError("electron TE cross section is singular at k_y = 0")
        return (8.0 * math.pi / 3.0) * (ALPHA_FS / m_e) ** 2 * (k / k_y)
    raise ConfigurationError(f"unknown species {species!r}")


def sigma_tm(species: str, **kw) -> float:
    """TM-mode cross section, under the sigma_TM ~= sigma_TE approximation."""
    return sigma_te(species, **kw)


def te_ratio_identity(L: float, k_y: float, m_A: float,
                      m_e: float = M_ELECTRON_EV) -> float:
    """sigma_TE^d / sigma_TE^e = k_y^2 L^2 (m_e/m_A)^2, exact."""
    return k_y**2 * L**2 * (m_e / m_A) ** 2


def to_m2(sigma_natural: float) -> float:
    """eV^-2 -> m^2."""
    return sigma_natural / EV_INV_PER_M**2


# ----------------------------------------------------------------------
# mean-free-path bound
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class MeanFreePathReport:
    l_mfp: float            # natural units; inf when sigma*n = 0
    path_scale: float
    margin: float
    passes: bool
    max_density: float      # largest n still passing at this margin


def max_field_bound(sigma: float, number_density: float, path_scale: float,
                    margin: float = 100.0) -> MeanFreePathReport:
    """Check l_mfp = 1/(sigma n) > margin * path_scale.

    ``number_density`` is the scatterer (photon) density, flux/omega for a
    monochromatic beam; the bound is linear in it, so the report carries
    the largest admissible density from which a maximum flux follows.
    """
    if sigma < 0 or number_density < 0 or path_scale <= 0 or margin < 1:
        raise DomainError("need sigma, n >= 0, path_scale > 0, margin >= 1")
    rate = sigma * number_density
    l_mfp = math.inf if rate == 0.0 else 1.0 / rate
    max_density = math.inf if sigma == 0.0 else 1.0 / (sigma * margin * path_scale)
    return MeanFreePathReport(l_mfp, path_scale, margin,
                              l_mfp > margin * path_scale, max_density)
