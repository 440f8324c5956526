"""Classical EM field models, the temporal-gauge potential, and the
charge/dipole connections whose loop integrals give the interference phase.

Conventions (documented here once, relied on everywhere):

* Metric-free componentwise pairing: a connection is the 4-tuple
  (a0, ax, ay, az) and the line integral contracts it componentwise with
  (dt, dx, dy, dz).  The loop phase is phi = -oint a_nu dx^nu; the overall
  sign is a convention (only |C| is observable) fixed once here.
* Emission-time offset t0 enters every monochromatic model as the uniform
  substitution t -> t + t0; pointwise eval_EB(..., t, t0) equals
  eval_EB(..., t + t0, 0).
* Plane wave: propagation +y, E along z, B along x,
  E = E0 sin(w t - k y + w t0) zhat with k = w.
* Rectangular waveguide along y, cross-section centered at the origin:
  x in [-b/2, b/2], z in [-a/2, a/2], transverse profiles taken literally
  as cos/sin(k_x x) and cos/sin(k_z z) with k_x = m pi / b, k_z = l pi / a.
  The plane z = 0 is a nodal plane of the tangential E field.  For odd
  mode indices the bounding rectangle is the half-height idealization of
  a guide whose physical walls sit at the outer nodal planes (x = +-b,
  z = +-a); for even indices the rectangle walls themselves are nodal.
  TE fields derive from the axial B_y = B0 cos(k_x x) cos(k_z z) profile,
  TM from the axial E_y = E0 sin(k_x x) sin(k_z z); transverse components
  follow from Maxwell (enforced by finite-difference residual tests).

All field and coupling objects are immutable after construction and every
evaluation is pure, so instances may be shared and evaluated concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dfield

import numpy as np

from .errors import ConfigurationError, DomainError

_WALL_TOL = 1e-9  # relative slack for boundary-point domain checks


# ----------------------------------------------------------------------
# couplings
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Charge:
    """Point charge q (natural units); couples through the gauge potential."""

    q: float


@dataclass(frozen=True)
class Dipole:
    """Rest-frame electric (d) and magnetic (m) dipole moments."""

    d: tuple[float, float, float]
    m: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        for v in (*self.d, *self.m):
            if not math.isfinite(v):
                raise ConfigurationError("dipole moment components must be finite")


# ----------------------------------------------------------------------
# field models
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PlaneWave:
    """Linearly polarized monochromatic wave, k = omega along +y."""

    E0: float
    omega: float

    def __post_init__(self):
        if self.omega <= 0:
            raise ConfigurationError("plane wave requires omega > 0")

    @property
    def amplitude(self) -> float:
        return abs(self.E0)

    def phase_rates(self):
        """(omega, kx, ky, kz): worst-case phase gradients for quadrature."""
        return (self.omega, 0.0, self.omega, 0.0)

    def eval_EB(self, point, t0=0.0):
        t, x, y, z = point
        s = self.E0 * np.sin(self.omega * (np.asarray(t) + t0) - self.omega * np.asarray(y))
        zero = np.zeros_like(s)
        E = np.stack([zero, zero, s])
        B = np.stack([s, zero, zero])
        return E, B

    def gauge_potential(self, point, t0=0.0):
        """Temporal gauge: A = (E0/w) cos(w t - k y + w t0) zhat, A0 = 0."""
        t, x, y, z = point
        Az = (self.E0 / self.omega) * np.cos(
            self.omega * (np.asarray(t) + t0) - self.omega * np.asarray(y))
        zero = np.zeros_like(Az)
        return np.stack([zero, zero, zero, Az])


@dataclass(frozen=True)
class WaveguideMode:
    """TE or TM mode of a rectangular guide along y.

    ``amplitude`` is |B0| for TE and |E0| for TM; a and b are the z- and
    x-extents of the cross-section, (m, l) the integer mode indices and
    k_y >= 0 the axial wavenumber.  omega = sqrt(gamma^2 + k_y^2).
    """

    kind: str  # "TE" | "TM"
    amplitude: float
    a: float
    b: float
    m: int
    l: int
    k_y: float

    def __post_init__(self):
        if self.kind not in ("TE", "TM"):
            raise ConfigurationError(f"unknown waveguide kind {self.kind!r}")
        if self.a <= 0 or self.b <= 0:
            raise ConfigurationError("guide dimensions must be positive")
        if self.m < 0 or self.l < 0 or self.m == self.l == 0:
            raise ConfigurationError(
                f"invalid mode (m={self.m}, l={self.l}): need non-negative indices, not both zero")
        if self.kind == "TM" and (self.m < 1 or self.l < 1):
            raise ConfigurationError(
                f"invalid TM mode (m={self.m}, l={self.l}): TM needs m >= 1 and l >= 1")
        if self.k_y < 0:
            raise ConfigurationError("k_y must be >= 0")

    @property
    def k_x(self) -> float:
        return self.m * math.pi / self.b

    @property
    def k_z(self) -> float:
        return self.l * math.pi / self.a

    @property
    def gamma(self) -> float:
        return math.hypot(self.k_x, self.k_z)

    @property
    def omega(self) -> float:
        return math.hypot(self.gamma, self.k_y)

    def phase_rates(self):
        return (self.omega, self.k_x, self.k_y, self.k_z)

    def _check_inside(self, x, z):
        bx = self.b / 2 * (1 + _WALL_TOL)
        az = self.a / 2 * (1 + _WALL_TOL)
        if np.any(np.abs(x) > bx) or np.any(np.abs(z) > az):
            raise DomainError(
                "point outside waveguide cross-section "
                f"(|x| <= {self.b / 2}, |z| <= {self.a / 2}); fields vanish outside")

    def _profiles(self, point, t0):
        t, x, y, z = (np.asarray(c, dtype=float) for c in point)
        self._check_inside(x, z)
        phi = self.k_y * y - self.omega * (t + t0)
        return (np.cos(self.k_x * x), np.sin(self.k_x * x),
                np.cos(self.k_z * z), np.sin(self.k_z * z),
                np.cos(phi), np.sin(phi))

    def eval_EB(self, point, t0=0.0):
        cx, sx, cz, sz, cp, sp = self._profiles(point, t0)
        g2 = self.gamma**2
        w, kx, ky, kz = self.omega, self.k_x, self.k_y, self.k_z
        amp = self.amplitude
        zero = np.zeros_like(cp)
        if self.kind == "TE":
            By = amp * cx * cz * cp
            Bx = (ky * kx / g2) * amp * sx * cz * sp
            Bz = (ky * kz / g2) * amp * cx * sz * sp
            Ex = -(w * kz / g2) * amp * cx * sz * sp
            Ez = (w * kx / g2) * amp * sx * cz * sp
            return np.stack([Ex, zero, Ez]), np.stack([Bx, By, Bz])
        Ey = amp * sx * sz * cp
        Ex = -(ky * kx / g2) * amp * cx * sz * sp
        Ez = -(ky * kz / g2) * amp * sx * cz * sp
        Bx = -(w * kz / g2) * amp * sx * cz * sp
        Bz = (w * kx / g2) * amp * cx * sz * sp
        return np.stack([Ex, Ey, Ez]), np.stack([Bx, zero, Bz])

    def gauge_potential(self, point, t0=0.0):
        """Temporal gauge A = -int E dt, closed-form cosine antiderivatives."""
        cx, sx, cz, sz, cp, sp = self._profiles(point, t0)
        g2 = self.gamma**2
        w, kx, ky, kz = self.omega, self.k_x, self.k_y, self.k_z
        amp = self.amplitude
        zero = np.zeros_like(cp)
        if self.kind == "TE":
            Ax = (kz / g2) * amp * cx * sz * cp
            Az = -(kx / g2) * amp * sx * cz * cp
            return np.stack([zero, Ax, zero, Az])
        Ax = (ky * kx / (w * g2)) * amp * cx * sz * cp
        Ay = (amp / w) * sx * sz * sp
        Az = (ky * kz / (w * g2)) * amp * sx * cz * cp
        return np.stack([zero, Ax, Ay, Az])


@dataclass(frozen=True)
class StaticGradientField:
    """Curl-free static field E = E0 (z / scale) zhat, B = 0.

    Zero-frequency stand-in used by the velocity-independence checks: the
    dipole connection on a closed loop picks up a purely geometric phase.
    """

    E0: float
    scale: float

    @property
    def omega(self) -> float:
        return 0.0

    @property
    def amplitude(self) -> float:
        return abs(self.E0)

    def phase_rates(self):
        return (0.0, 0.0, 0.0, 0.0)

    def eval_EB(self, point, t0=0.0):
        t, x, y, z = point
        Ez = self.E0 * np.asarray(z) / self.scale
        zero = np.zeros_like(Ez)
        return np.stack([zero, zero, Ez]), np.stack([zero, zero, zero])

    def gauge_potential(self, point, t0=0.0):
        t, x, y, z = point
        Az = -self.E0 * np.asarray(z) / self.scale * np.asarray(t)
        zero = np.zeros_like(Az)
        return np.stack([zero, zero, zero, Az])


# ----------------------------------------------------------------------
# connections
# ----------------------------------------------------------------------

def eval_EB(field, point, t0=0.0):
    return field.eval_EB(point, t0)


def gauge_potential(field, point, t0=0.0):
    return field.gauge_potential(point, t0)


def ac_connection(coupling: Dipole, field, point, t0=0.0):
    """Dipole connection a = (-m.B - d.E, d x B - m x E), evaluated literally.

    Contracted componentwise with (dt, dx, dy, dz) and fed into
    phi = -oint a_nu dx^nu this reproduces the low-velocity dipole
    Lagrangian phase int [d.E + m.B] dt + int [(m x E) - (d x B)] . dx.
    """
    if not isinstance(coupling, Dipole):
        raise ConfigurationError(
            f"ac_connection needs a Dipole coupling, got {type(coupling).__name__}")
    E, B = field.eval_EB(point, t0)
    d = np.asarray(coupling.d, dtype=float)
    m = np.asarray(coupling.m, dtype=float)
    a0 = -(m[0] * B[0] + m[1] * B[1] + m[2] * B[2]) \
        - (d[0] * E[0] + d[1] * E[1] + d[2] * E[2])
    ax = d[1] * B[2] - d[2] * B[1] - (m[1] * E[2] - m[2] * E[1])
    ay = d[2] * B[0] - d[0] * B[2] - (m[2] * E[0] - m[0] * E[2])
    az = d[0] * B[1] - d[1] * B[0] - (m[0] * E[1] - m[1] * E[0])
    return np.stack([a0, ax, ay, az])


def ab_connection(coupling: Charge, field, point, t0=0.0):
    """Charge connection q * A_nu in the temporal gauge."""
    if not isinstance(coupling, Charge):
        raise ConfigurationError(
            f"ab_connection needs a Charge coupling, got {type(coupling).__name__}")
    return coupling.q * field.gauge_potential(point, t0)


def connection(coupling, field):
    """Dispatch to the AC or AB connection; returns f(point, t0) -> (4, ...)."""
    if isinstance(coupling, Dipole):
        return lambda point, t0=0.0: ac_connection(coupling, field, point, t0)
    if isinstance(coupling, Charge):
        return lambda point, t0=0.0: ab_connection(coupling, field, point, t0)
    raise ConfigurationError(f"unknown coupling {type(coupling).__name__}")
