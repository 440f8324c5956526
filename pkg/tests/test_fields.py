import math

import numpy as np
import pytest

from acphase.errors import ConfigurationError, DomainError
from acphase.fields import (Charge, Dipole, PlaneWave, StaticGradientField,
                            WaveguideMode, ab_connection, ac_connection,
                            eval_EB, gauge_potential)

RNG = np.random.default_rng(42)


# --- finite-difference helpers (4th order) -----------------------------

def _d1(f, x, h):
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h)


def _d2(f, x, h):
    return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) \
        / (12 * h**2)


def _field_component(field, which, comp):
    def g(t, x, y, z):
        E, B = field.eval_EB((t, x, y, z))
        return float((E if which == "E" else B)[comp])
    return g


def _div_B(field, t, x, y, z, h):
    out = 0.0
    for axis, comp in ((1, 0), (2, 1), (3, 2)):
        pt = [t, x, y, z]

        def f(v, axis=axis, comp=comp):
            q = list(pt)
            q[axis] = v
            return _field_component(field, "B", comp)(*q)
        out += _d1(f, pt[axis], h)
    return out


def _curl(field, which, t, x, y, z, h):
    def partial(comp, axis):
        pt = [t, x, y, z]

        def f(v):
            q = list(pt)
            q[axis] = v
            return _field_component(field, which, comp)(*q)
        return _d1(f, pt[axis], h)

    # axes: 1 = x, 2 = y, 3 = z
    return np.array([
        partial(2, 2) - partial(1, 3),
        partial(0, 3) - partial(2, 1),
        partial(1, 1) - partial(0, 2),
    ])


def _dt(field, which, comp, t, x, y, z, h):
    return _d1(lambda v: _field_component(field, which, comp)(v, x, y, z), t, h)


def _sample_points(field, n):
    if isinstance(field, WaveguideMode):
        xs = RNG.uniform(-0.45 * field.b, 0.45 * field.b, n)
        zs = RNG.uniform(-0.45 * field.a, 0.45 * field.a, n)
    else:
        xs = RNG.uniform(-1.0, 1.0, n)
        zs = RNG.uniform(-1.0, 1.0, n)
    ts = RNG.uniform(-3.0, 3.0, n)
    ys = RNG.uniform(-1.0, 1.0, n)
    return zip(ts, xs, ys, zs)


FIELDS = [
    PlaneWave(E0=0.8, omega=2.3),
    WaveguideMode(kind="TE", amplitude=0.7, a=1.1, b=1.4, m=0, l=1, k_y=1.9),
    WaveguideMode(kind="TE", amplitude=0.7, a=1.1, b=1.4, m=2, l=3, k_y=2.2),
    WaveguideMode(kind="TM", amplitude=0.9, a=1.1, b=1.4, m=1, l=2, k_y=1.5),
    StaticGradientField(E0=0.5, scale=2.0),
]


@pytest.mark.parametrize("field", FIELDS, ids=lambda f: type(f).__name__ + getattr(f, "kind", ""))
def test_maxwell_div_b_and_faraday(field):
    w = max(max(field.phase_rates()), 1.0)
    h = 2.5e-3 / w
    scale = max(field.amplitude, 1e-30) * w
    for t, x, y, z in _sample_points(field, 12):
        assert abs(_div_B(field, t, x, y, z, h)) < 1e-8 * scale
        faraday = _curl(field, "E", t, x, y, z, h) + np.array(
            [_dt(field, "B", c, t, x, y, z, h) for c in range(3)])
        assert np.max(np.abs(faraday)) < 1e-8 * scale


@pytest.mark.parametrize("field", FIELDS[:4], ids=lambda f: type(f).__name__ + getattr(f, "kind", ""))
def test_wave_equation_dispersion(field):
    """(d^2/dt^2 - laplacian) E = 0 exercises omega^2 = gamma^2 + k_y^2."""
    w = max(field.phase_rates())
    h = 2.5e-3 / w
    scale = field.amplitude * w**2
    for t, x, y, z in _sample_points(field, 8):
        for comp in range(3):
            g = _field_component(field, "E", comp)
            lap = sum(_d2(lambda v, axis=axis: g(*[v if i == axis else c for i, c in
                                                   enumerate((t, x, y, z))]),
                          (t, x, y, z)[axis], h) for axis in (1, 2, 3))
            dtt = _d2(lambda v: g(v, x, y, z), t, h)
            assert abs(dtt - lap) < 1e-8 * scale


class TestPlaneWave:
    pw = PlaneWave(E0=0.8, omega=2.3)

    def test_zero_phase(self):
        E, B = eval_EB(self.pw, (0.0, 0.1, 0.0, 0.2), t0=0.0)
        assert np.allclose(E, 0.0) and np.allclose(B, 0.0)

    def test_quarter_phase(self):
        # w t - k y + w t0 = pi/2 -> E = E0 zhat, B = E0 xhat
        t = (math.pi / 2) / self.pw.omega
        E, B = eval_EB(self.pw, (t, 0.0, 0.0, 0.0))
        assert E[2] == pytest.approx(self.pw.E0, rel=1e-15)
        assert B[0] == pytest.approx(self.pw.E0, rel=1e-15)
        assert abs(E[0]) == abs(E[1]) == abs(B[1]) == abs(B[2]) == 0.0

    def test_plane_wave_relations_everywhere(self):
        for t, x, y, z in _sample_points(self.pw, 25):
            E, B = eval_EB(self.pw, (t, x, y, z))
            assert np.linalg.norm(E) == pytest.approx(np.linalg.norm(B), abs=1e-15)
            assert abs(float(E @ B)) < 1e-15
            assert abs(E[1]) == 0.0 and abs(B[1]) == 0.0  # orthogonal to yhat

    def test_gauge_potential_closed_form(self):
        t, y = 0.37, 0.12
        A = gauge_potential(self.pw, (t, 0.0, y, 0.0))
        expect = (self.pw.E0 / self.pw.omega) * math.cos(
            self.pw.omega * t - self.pw.omega * y)
        assert A[3] == pytest.approx(expect, rel=1e-15)
        assert A[0] == A[1] == A[2] == 0.0


@pytest.mark.parametrize("field", FIELDS[:4], ids=lambda f: type(f).__name__ + getattr(f, "kind", ""))
def test_gauge_potential_consistency(field):
    """-dA/dt = E exactly (to FD accuracy) and curl A = B to 1e-10."""
    w = max(field.phase_rates())
    h = 2.5e-4 / w
    scale = max(field.amplitude, field.amplitude / w)
    for t, x, y, z in _sample_points(field, 10):
        E, B = field.eval_EB((t, x, y, z))
        minus_dA = -np.array([
            _d1(lambda v, c=c: float(field.gauge_potential((v, x, y, z))[c + 1]), t, h)
            for c in range(3)])
        assert np.max(np.abs(minus_dA - E)) < 1e-10 * scale * w

        def curl_A():
            def partial(comp, axis):
                pt = [t, x, y, z]

                def f(v):
                    q = list(pt)
                    q[axis] = v
                    return float(field.gauge_potential(tuple(q))[comp + 1])
                return _d1(f, pt[axis], h)
            return np.array([partial(2, 2) - partial(1, 3),
                             partial(0, 3) - partial(2, 1),
                             partial(1, 1) - partial(0, 2)])

        assert np.max(np.abs(curl_A() - B)) < 1e-10 * scale * w


def test_te10_curl_at_20_interior_points():
    field = WaveguideMode(kind="TE", amplitude=0.7, a=1.1, b=1.4, m=0, l=1, k_y=1.9)
    w = field.omega
    h = 2.5e-4 / w
    worst = 0.0
    pts = list(_sample_points(field, 20))
    for t, x, y, z in pts:
        _, B = field.eval_EB((t, x, y, z))

        def partial(comp, axis, pt=(t, x, y, z)):
            def f(v):
                q = list(pt)
                q[axis] = v
                return float(field.gauge_potential(tuple(q))[comp + 1])
            return _d1(f, pt[axis], h)
        curl = np.array([partial(2, 2) - partial(1, 3),
                         partial(0, 3) - partial(2, 1),
                         partial(1, 1) - partial(0, 2)])
        worst = max(worst, float(np.max(np.abs(curl - B))) / field.amplitude)
    assert worst < 1e-8


def test_zero_amplitude_gauge_potential():
    pw = PlaneWave(E0=0.0, omega=1.0)
    A = gauge_potential(pw, (0.3, 0.1, 0.2, 0.4))
    assert np.allclose(A, 0.0)


class TestWaveguideGeometry:
    def test_invalid_modes_rejected(self):
        with pytest.raises(ConfigurationError):
            WaveguideMode(kind="TE", amplitude=1.0, a=1.0, b=1.0, m=0, l=0, k_y=1.0)
        with pytest.raises(ConfigurationError):
            WaveguideMode(kind="TM", amplitude=1.0, a=1.0, b=1.0, m=0, l=1, k_y=1.0)

    def test_dispersion_relation(self):
        g = WaveguideMode(kind="TE", amplitude=1.0, a=1.1, b=1.4, m=2, l=3, k_y=2.2)
        assert g.omega == pytest.approx(math.hypot(g.gamma, g.k_y), rel=1e-15)
        assert g.omega >= g.gamma

    def test_outside_cross_section_raises(self):
        g = WaveguideMode(kind="TE", amplitude=1.0, a=1.0, b=1.0, m=0, l=1, k_y=1.0)
        with pytest.raises(DomainError):
            g.eval_EB((0.0, 0.7, 0.0, 0.0))
        with pytest.raises(DomainError):
            g.eval_EB((0.0, 0.0, 0.0, 0.7))

    def test_tangential_e_vanishes_on_nodal_walls(self):
        """Even-index modes have their nodal planes on the domain walls."""
        for kind, m, l in (("TE", 0, 2), ("TE", 2, 2), ("TM", 2, 2)):
            g = WaveguideMode(kind=kind, amplitude=1.0, a=1.2, b=1.5, m=m, l=l, k_y=1.3)
            ts = RNG.uniform(-2, 2, 8)
            line = RNG.uniform(-0.49, 0.49, 8)
            for t, u in zip(ts, line):
                for x, z in ((u * g.b, g.a / 2), (u * g.b, -g.a / 2),
                             (g.b / 2, u * g.a), (-g.b / 2, u * g.a)):
                    E, _ = g.eval_EB((t, x, 0.0, z))
                    tangential = (E[0], E[1]) if abs(abs(z) - g.a / 2) < 1e-12 \
                        else (E[1], E[2])
                    for comp in tangential:
                        assert abs(comp) < 1e-12 * g.amplitude

    def test_te10_tangential_e_vanishes_on_central_nodal_plane(self):
        """For odd l the z = 0 plane (between the two paths) is the node."""
        g = WaveguideMode(kind="TE", amplitude=1.0, a=1.2, b=1.5, m=0, l=1, k_y=1.3)
        for t in RNG.uniform(-2, 2, 6):
            for x in RNG.uniform(-0.7, 0.7, 6):
                E, _ = g.eval_EB((t, x, 0.0, 0.0))
                assert abs(E[0]) < 1e-12 and abs(E[1]) < 1e-12


@pytest.mark.parametrize("field", FIELDS[:4], ids=lambda f: type(f).__name__ + getattr(f, "kind", ""))
def test_emission_time_shift(field):
    """eval_EB(..., t, t0) == eval_EB(..., t + t0, 0) pointwise."""
    t0 = 0.7318
    for t, x, y, z in _sample_points(field, 10):
        E1, B1 = field.eval_EB((t, x, y, z), t0=t0)
        E2, B2 = field.eval_EB((t + t0, x, y, z), t0=0.0)
        assert np.max(np.abs(E1 - E2)) < 1e-12 * max(field.amplitude, 1.0)
        assert np.max(np.abs(B1 - B2)) < 1e-12 * max(field.amplitude, 1.0)


class TestConnections:
    pw = PlaneWave(E0=0.8, omega=2.3)

    def test_zero_dipole(self):
        a = ac_connection(Dipole(d=(0, 0, 0), m=(0, 0, 0)), self.pw, (0.3, 0, 0, 0.1))
        assert np.allclose(a, 0.0)

    def test_plane_wave_dz_only(self):
        # d = d_z zhat, m = 0: a = E0 (-d_z, 0, d_z, 0) sin(w t - k y + w t0)
        dz = 0.4
        t0, t, y = 0.21, 0.37, 0.05
        s = self.pw.E0 * math.sin(self.pw.omega * (t + t0) - self.pw.omega * y)
        a = ac_connection(Dipole(d=(0, 0, dz)), self.pw, (t, 0.0, y, 0.0), t0)
        assert np.allclose(a.ravel(), [-dz * s, 0.0, dz * s, 0.0], atol=1e-15)

    def test_full_components_match_direct_evaluation(self):
        d = np.array([0.2, 0.55, 0.3])
        m = np.array([0.15, 0.25, 0.1])
        coupling = Dipole(d=tuple(d), m=tuple(m))
        for t, x, y, z in _sample_points(self.pw, 100):
            E, B = eval_EB(self.pw, (t, x, y, z))
            a = ac_connection(coupling, self.pw, (t, x, y, z))
            expect = np.concatenate([[-(m @ B) - (d @ E)], np.cross(d, B) - np.cross(m, E)])
            assert np.allclose(np.asarray(a).ravel(), expect, atol=1e-15)

    def test_type_misuse(self):
        with pytest.raises(ConfigurationError):
            ac_connection(Charge(q=1.0), self.pw, (0, 0, 0, 0))
        with pytest.raises(ConfigurationError):
            ab_connection(Dipole(d=(1, 0, 0)), self.pw, (0, 0, 0, 0))

    def test_ab_zero_charge_and_linearity(self):
        pt = (0.3, 0.0, 0.1, 0.2)
        assert np.allclose(ab_connection(Charge(q=0.0), self.pw, pt), 0.0)
        a1 = ab_connection(Charge(q=1.3), self.pw, pt)
        a2 = ab_connection(Charge(q=2.6), self.pw, pt)
        assert np.allclose(2 * np.asarray(a1), np.asarray(a2), rtol=1e-15)

    def test_ab_plane_wave_only_z_component(self):
        a = np.asarray(ab_connection(Charge(q=1.0), self.pw, (0.3, 0.1, 0.2, 0.5)))
        assert a[0] == a[1] == a[2] == 0.0 and a[3] != 0.0
