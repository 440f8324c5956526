"""Parametrized two-path spacetime loops for the interference scenarios.

Each segment maps u in [0, 1] to a 4-point (t, x, y, z) and carries its
analytic derivative so the oscillatory quadrature converges at full order.
A loop is path C1 followed by path C2 with reversed orientation
(delta-Omega = C1 - C2); both arms share start and end events.

Loops are immutable after construction and evaluation is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dfield
from typing import Callable

import numpy as np

from .errors import ConfigurationError, DomainError

_CLOSURE_TOL = 1e-12


@dataclass(frozen=True)
class Segment:
    """u in [0,1] -> spacetime point; position/derivative return (4, n)."""

    position: Callable[[np.ndarray], np.ndarray]
    derivative: Callable[[np.ndarray], np.ndarray]
    label: str = "segment"

    def endpoints(self):
        p = self.position(np.array([0.0, 1.0]))
        return p[:, 0], p[:, 1]


def reparametrized(seg: Segment, fn, dfn, label=None) -> Segment:
    """Chain-rule reparametrization u -> fn(u); used by invariance tests."""
    return Segment(
        position=lambda u: seg.position(fn(u)),
        derivative=lambda u: seg.derivative(fn(u)) * dfn(u),
        label=label or f"{seg.label}|reparam",
    )


@dataclass(frozen=True)
class InterferenceLoop:
    path1: tuple[Segment, ...]
    path2: tuple[Segment, ...]
    meta: dict = dfield(default_factory=dict)

    def __post_init__(self):
        scale = self._scale()
        tol = _CLOSURE_TOL * max(scale, 1.0)
        for path, name in ((self.path1, "C1"), (self.path2, "C2")):
            for prev, nxt in zip(path, path[1:]):
                gap = np.max(np.abs(prev.endpoints()[1] - nxt.endpoints()[0]))
                if gap > tol:
                    raise ConfigurationError(
                        f"{name}: segments {prev.label!r} -> {nxt.label!r} not continuous "
                        f"(gap {gap:.3e})")
        s1, e1 = self.path1[0].endpoints()[0], self.path1[-1].endpoints()[1]
        s2, e2 = self.path2[0].endpoints()[0], self.path2[-1].endpoints()[1]
        mism = max(np.max(np.abs(s1 - s2)), np.max(np.abs(e1 - e2)))
        if mism > tol:
            raise ConfigurationError(
                f"arms do not share start/end events (mismatch {mism:.3e}); "
                f"C1 spans {s1} -> {e1}, C2 spans {s2} -> {e2}")

    def _scale(self) -> float:
        vals = [np.max(np.abs(np.concatenate(seg.endpoints())))
                for seg in (*self.path1, *self.path2)]
        return float(max(vals))

    def reversed(self) -> "InterferenceLoop":
        """Swap the roles of C1 and C2 (negates the loop phase)."""
        return InterferenceLoop(self.path2, self.path1, dict(self.meta))


def _linear_segment(p_start, p_end, label) -> Segment:
    p0 = np.asarray(p_start, dtype=float)
    dp = np.asarray(p_end, dtype=float) - p0

    def pos(u):
        u = np.atleast_1d(np.asarray(u, dtype=float))
        return p0[:, None] + dp[:, None] * u

    def deriv(u):
        u = np.atleast_1d(np.asarray(u, dtype=float))
        return np.repeat(dp[:, None], u.size, axis=1)

    return Segment(pos, deriv, label)


def _ellipse_arm(tau, halfspan, alpha, sign, label) -> Segment:
    # u in [0,1] maps to the angle range [-pi/2, pi/2]
    def pos(u):
        ang = -math.pi / 2 + math.pi * np.atleast_1d(np.asarray(u, dtype=float))
        return np.stack([tau * np.sin(ang), halfspan * np.sin(ang),
                         np.zeros_like(ang), sign * alpha * np.cos(ang)])

    def deriv(u):
        ang = -math.pi / 2 + math.pi * np.atleast_1d(np.asarray(u, dtype=float))
        return np.stack([math.pi * tau * np.cos(ang), math.pi * halfspan * np.cos(ang),
                         np.zeros_like(ang), -sign * math.pi * alpha * np.sin(ang)])

    return Segment(pos, deriv, label)


def _diamond_arm(T, theta, d, l, alpha, sign, tag) -> tuple[Segment, ...]:
    """Three straight segments: out-slope, parallel run at z = sign*alpha, in-slope."""
    a = sign * alpha
    return (
        _linear_segment((-T / 2 - theta, -d - l, 0.0, 0.0), (-T / 2, -d, 0.0, a), f"{tag}-out"),
        _linear_segment((-T / 2, -d, 0.0, a), (T / 2, d, 0.0, a), f"{tag}-run"),
        _linear_segment((T / 2, d, 0.0, a), (T / 2 + theta, d + l, 0.0, 0.0), f"{tag}-in"),
    )


def make_diamond(T, theta, d, l, alpha) -> InterferenceLoop:
    """Six-segment symmetric loop; arms mirror images in z.

    Exposes s = sqrt(alpha^2 + l^2) (slope length) and v = s/theta.
    """
    for name, val in (("T", T), ("theta", theta), ("d", d), ("l", l), ("alpha", alpha)):
        if val <= 0 and not (name == "alpha" and val == 0.0):
            raise DomainError(f"diamond parameter {name} must be positive (got {val})")
    s = math.hypot(alpha, l)
    meta = {"kind": "diamond", "alpha": alpha, "T": T, "theta": theta, "d": d,
            "l": l, "s": s, "v": s / theta, "max_separation": 2 * alpha,
            "path_extent": 2 * (d + l)}
    return InterferenceLoop(_diamond_arm(T, theta, d, l, alpha, +1, "C1"),
                            _diamond_arm(T, theta, d, l, alpha, -1, "C2"), meta)


def arc_length(segment: Segment, n: int = 4097) -> float:
    """Spatial arc length by composite-Simpson quadrature of |dx/du|."""
    u = np.linspace(0.0, 1.0, n)
    dp = segment.derivative(u)
    speed = np.sqrt(dp[1] ** 2 + dp[2] ** 2 + dp[3] ** 2)
    w = np.ones(n)
    w[1:-1:2], w[2:-1:2] = 4.0, 2.0
    return float(np.sum(w * speed) * (u[1] - u[0]) / 3.0)


def make_ellipse(tau, halfspan, alpha) -> InterferenceLoop:
    """Mirror-image elliptical arcs spanning t in [-tau, tau].

    Exposes s' (arc length of one arm, numeric quadrature) and v = s'/tau.
    """
    for name, val in (("tau", tau), ("halfspan", halfspan), ("alpha", alpha)):
        if val <= 0 and not (name == "alpha" and val == 0.0):
            raise DomainError(f"ellipse parameter {name} must be positive (got {val})")
    upper = _ellipse_arm(tau, halfspan, alpha, +1, "C1-arc")
    lower = _ellipse_arm(tau, halfspan, alpha, -1, "C2-arc")
    s_prime = arc_length(upper)
    meta = {"kind": "ellipse", "alpha": alpha, "tau": tau, "halfspan": halfspan,
            "s_prime": s_prime, "v": s_prime / tau, "max_separation": 2 * alpha,
            "path_extent": 2 * halfspan}
    return InterferenceLoop((upper,), (lower,), meta)


def make_asymmetric(tau, T, theta, d, l, alpha) -> InterferenceLoop:
    """Upper arm: elliptical arc (z >= 0); lower arm: straight diamond arm (z <= 0).

    Arm endpoints coincide only when tau = T/2 + theta and the elliptical
    halfspan equals d + l; violations raise with the mismatch.
    """
    for name, val in (("tau", tau), ("T", T), ("theta", theta), ("d", d), ("l", l)):
        if val <= 0:
            raise DomainError(f"asymmetric parameter {name} must be positive (got {val})")
    t_close = T / 2 + theta
    if abs(tau - t_close) > 1e-9 * max(tau, t_close):
        raise ConfigurationError(
            f"arms cannot share endpoints: elliptical arm spans t in [-{tau}, {tau}] "
            f"but the straight arm spans [-{t_close}, {t_close}]; set tau = T/2 + theta")
    halfspan = d + l
    upper = _ellipse_arm(tau, halfspan, alpha, +1, "C1-arc")
    lower = _diamond_arm(T, theta, d, l, alpha, -1, "C2")
    s = math.hypot(alpha, l)
    meta = {"kind": "asymmetric", "alpha": alpha, "tau": tau, "T": T, "theta": theta,
            "d": d, "l": l, "s": s, "halfspan": halfspan,
            "s_prime": arc_length(upper), "v": s / theta,
            "max_separation": 2 * alpha, "path_extent": 2 * halfspan}
    return InterferenceLoop((upper,), lower, meta)


def make_guide_crossing(T, guide, alpha, z_offsets=None) -> InterferenceLoop:
    """Two parallel straight crossings of the guide, x from -b/2 to +b/2.

    The default offsets (z1, z2) = (+alpha, -alpha) straddle the central
    nodal plane z = 0; this is the placement under which the quadrature
    reproduces the analytic TE/TM coefficient with its sin(l pi alpha / a)
    factor (offsets measured from the guide center, half the separation
    each).  Splitting/recombination happens outside the guide where the
    fields vanish, so only the straight crossings contribute.
    """
    if T <= 0:
        raise DomainError(f"crossing time T must be positive (got {T})")
    z1, z2 = z_offsets if z_offsets is not None else (alpha, -alpha)
    half_a = guide.a / 2
    for name, val in (("z1", z1), ("z2", z2)):
        if abs(val) > half_a:
            raise DomainError(
                f"offset {name} = {val} outside the cross-section |z| <= {half_a}")
    b = guide.b
    p1 = _linear_segment((-T / 2, -b / 2, 0.0, z1), (T / 2, b / 2, 0.0, z1), "C1-cross")
    p2 = _linear_segment((-T / 2, -b / 2, 0.0, z2), (T / 2, b / 2, 0.0, z2), "C2-cross")
    meta = {"kind": "guide", "alpha": alpha, "T": T, "z1": z1, "z2": z2,
            "v": b / T, "max_separation": abs(z1 - z2), "path_extent": b,
            "a": guide.a, "b": b}
    loop = InterferenceLoop.__new__(InterferenceLoop)
    # the arms are parallel (loop closed by field-free segments outside the
    # guide), so skip the shared-endpoint validation applied to plane loops
    object.__setattr__(loop, "path1", (p1,))
    object.__setattr__(loop, "path2", (p2,))
    object.__setattr__(loop, "meta", meta)
    return loop
