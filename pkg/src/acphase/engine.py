"""Loop-phase quadrature, (A, B) extraction, visibility, and Monte Carlo.

phi(t0) = -oint_{C1 - C2} a_nu dx^nu for the configured coupling/field;
for monochromatic fields phi(t0) = A cos(w t0) + B sin(w t0) and averaging
exp(i phi) over the emission time gives the visibility F = J0(|C|),
|C| = sqrt(A^2 + B^2).

Everything here is pure; the Monte Carlo uses counter-based substreams
(Philox jumps keyed on (seed, block index)) so results are bit-identical
under any block-aligned execution partitioning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bessel import bessel_j0
from .errors import ConfigurationError, ModelViolationError
from .fields import connection
from .quadrature import adaptive_integrate
from .trajectories import InterferenceLoop, Segment

#: Samples per Monte-Carlo substream block; partition-independence holds
#: for any scheduling aligned to this block size.
MC_BLOCK = 65536

_QUAD_RTOL = 1e-10
_QUAD_ATOL_FACTOR = 1e-12


@dataclass(frozen=True)
class PhaseCoefficients:
    """phi(t0) = A cos(w t0) + B sin(w t0); Cmag = |A + iB|."""

    A: float
    B: float

    @property
    def Cmag(self) -> float:
        return math.hypot(self.A, self.B)


@dataclass(frozen=True)
class MCEstimate:
    mean: complex
    stderr_re: float
    stderr_im: float
    n: int


@dataclass(frozen=True)
class VisibilityResult:
    F: float
    small_phase: float
    mc: MCEstimate | None = None


def _segment_cycles(segment: Segment, field) -> float:
    """Conservative oscillation count of the connection along a segment."""
    u = np.linspace(0.0, 1.0, 33)
    p = segment.position(u)
    spans = np.ptp(p, axis=1)
    w, kx, ky, kz = field.phase_rates()
    return float((w * spans[0] + kx * spans[1] + ky * spans[2] + kz * spans[3])
                 / (2.0 * math.pi))


def _integrand_scale(loop: InterferenceLoop, conn) -> float:
    """Coarse upper bound on |integrand| for the absolute tolerance floor."""
    u = np.linspace(0.0, 1.0, 17)
    worst = 0.0
    for seg in (*loop.path1, *loop.path2):
        a = conn(tuple(seg.position(u)), 0.0)
        dp = seg.derivative(u)
        worst = max(worst, float(np.max(np.sum(np.abs(a) * np.abs(dp), axis=0))))
    return worst


def loop_phase(loop: InterferenceLoop, coupling, field, t0: float = 0.0,
               rtol: float = _QUAD_RTOL, atol_scale: float | None = None) -> float:
    """phi(t0): adaptive quadrature per segment, summed over C1 minus C2."""
    conn = connection(coupling, field)
    if atol_scale is None:
        atol_scale = _integrand_scale(loop, conn)
    atol = _QUAD_ATOL_FACTOR * atol_scale
    n_segs = len(loop.path1) + len(loop.path2)
    total = 0.0
    for sign, path in ((1.0, loop.path1), (-1.0, loop.path2)):
        for seg in path:
            def f(u, seg=seg):
                pts = seg.position(u)
                a = conn(tuple(pts), t0)
                return np.sum(a * seg.derivative(u), axis=0)

            val, _ = adaptive_integrate(
                f, cycles=_segment_cycles(seg, field),
                rtol=rtol / n_segs, atol=atol / n_segs, label=seg.label)
            total += sign * val
    return -total  # phi = -oint a_nu dx^nu


def extract_AB(loop: InterferenceLoop, coupling, field,
               omega: float | None = None, rtol: float = _QUAD_RTOL,
               check_points: int = 8) -> PhaseCoefficients:
    """A = phi(0), B = phi(pi/2w), validated against the sinusoidal model.

    phi is evaluated at ``check_points`` equally spaced t0 over one period
    and the residual of A cos + B sin must stay below 1e-8 of |C| (with a
    quadrature-noise floor); failure raises ModelViolationError.
    """
    if omega is None:
        omega = getattr(field, "omega", 0.0)
    if omega <= 0:
        raise ConfigurationError("extract_AB needs a monochromatic field (omega > 0)")
    conn = connection(coupling, field)
    scale = _integrand_scale(loop, conn)
    A = loop_phase(loop, coupling, field, 0.0, rtol, scale)
    B = loop_phase(loop, coupling, field, math.pi / (2 * omega), rtol, scale)
    cmag = math.hypot(A, B)
    floor = 100.0 * _QUAD_ATOL_FACTOR * scale
    worst = 0.0
    for j in range(check_points):
        t0 = (2 * math.pi / omega) * j / check_points
        phi = loop_phase(loop, coupling, field, t0, rtol, scale)
        model = A * math.cos(omega * t0) + B * math.sin(omega * t0)
        worst = max(worst, abs(phi - model))
    if worst > max(1e-8 * cmag, floor):
        raise ModelViolationError(
            f"phi(t0) deviates from A cos + B sin by {worst:.3e} "
            f"(|C| = {cmag:.3e}); field/loop outside the monochromatic model")
    return PhaseCoefficients(A, B)


def visibility(coeffs: PhaseCoefficients) -> float:
    """Decoherence factor F = J0(|C|): monotone down to the first zero
    2.4048..., then oscillating with decreasing amplitude."""
    return float(bessel_j0(coeffs.Cmag))


def small_phase_limit(coeffs: PhaseCoefficients) -> float:
    """Gaussian small-phase limit 1 - <phi^2>/2 = 1 - |C|^2/4.

    <phi^2> over the emission period is |C|^2/2, which matches the J0
    expansion 1 - |C|^2/4 + O(|C|^4).
    """
    return 1.0 - coeffs.Cmag**2 / 4.0


def monte_carlo_visibility(coeffs: PhaseCoefficients, n: int, seed: int,
                           block: int = MC_BLOCK) -> MCEstimate:
    """Average exp(i phi(t0)) over t0 uniform on one period.

    Sample i draws its uniform from Philox(seed) jumped to block i//block;
    fixed (seed, n) therefore gives bit-identical results regardless of
    how the blocks would be scheduled.
    """
    if n < 2:
        raise ConfigurationError("monte carlo needs n >= 2")
    re_sum = im_sum = re_sq = im_sq = 0.0
    done = 0
    blk = 0
    while done < n:
        take = min(block, n - done)
        rng = np.random.Generator(np.random.Philox(key=seed).jumped(blk))
        x = rng.random(take) * (2.0 * math.pi)  # x = w t0
        phi = coeffs.A * np.cos(x) + coeffs.B * np.sin(x)
        re, im = np.cos(phi), np.sin(phi)
        re_sum += float(np.sum(re))
        im_sum += float(np.sum(im))
        re_sq += float(np.sum(re * re))
        im_sq += float(np.sum(im * im))
        done += take
        blk += 1
    mean_re, mean_im = re_sum / n, im_sum / n
    var_re = max(re_sq / n - mean_re**2, 0.0) * n / (n - 1)
    var_im = max(im_sq / n - mean_im**2, 0.0) * n / (n - 1)
    return MCEstimate(complex(mean_re, mean_im),
                      math.sqrt(var_re / n), math.sqrt(var_im / n), n)


def visibility_result(coeffs: PhaseCoefficients, n_mc: int | None = None,
                      seed: int = 0) -> VisibilityResult:
    mc = monte_carlo_visibility(coeffs, n_mc, seed) if n_mc else None
    return VisibilityResult(visibility(coeffs), small_phase_limit(coeffs), mc)
