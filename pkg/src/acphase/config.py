"""JSON scenario configs: strict schema validation and object assembly.

All SI quantities carry explicit unit suffixes in their keys (lambda_um,
flux_W_cm2, alpha_mm, v_over_c, ...); unknown keys are rejected with the
offending dotted path.  ``build_scenario`` converts a validated config
into natural-unit field/coupling/loop objects plus the matching
closed-form parameter bag.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from . import units
from .closed_forms import ScenarioParams
from .constants import E_CHARGE
from .errors import ConfigurationError
from .fields import Charge, Dipole, PlaneWave, WaveguideMode
from .trajectories import (InterferenceLoop, arc_length, make_asymmetric,
                           make_diamond, make_ellipse, make_guide_crossing,
                           _ellipse_arm)

SCHEMA_VERSION = 1

_FIELD_KEYS = {
    "plane_wave": {"type", "lambda_um", "flux_W_cm2"},
    "waveguide_te": {"type", "lambda_um", "flux_W_cm2", "a_cm", "b_cm",
                     "m_index", "l_index"},
    "waveguide_tm": {"type", "lambda_um", "flux_W_cm2", "a_cm", "b_cm",
                     "m_index", "l_index"},
}
_PARTICLE_KEYS = {
    "dipole": {"species", "L_nm", "d_over_eL", "m_over_eL"},
    "electron": {"species", "q_over_e"},
}
_TRAJ_KEYS = {
    "diamond": {"type", "v_over_c", "alpha_mm", "l_mm", "d_mm"},
    "ellipse": {"type", "v_over_c", "alpha_mm", "halfspan_mm"},
    "asymmetric": {"type", "v_over_c", "alpha_mm", "l_mm", "d_mm"},
    "guide": {"type", "v_over_c", "alpha_mm", "z_offsets_mm"},
}
_RUN_KEYS = {"n_mc", "seed", "oracle_rtol", "quad_rtol", "mc_enabled"}
_SCATTER_KEYS = {"path_scale_mm", "margin", "mass_GeV"}
_TOP_KEYS = {"schema_version", "field", "particle", "trajectory", "run", "scattering"}

_RUN_DEFAULTS = {"n_mc": 100_000, "seed": 20260810, "oracle_rtol": 1e-6,
                 "quad_rtol": 1e-10, "mc_enabled": True}

_FORMULA_FOR = {
    ("plane_wave", "diamond", "dipole"): "dipole.diamond.exact",
    ("plane_wave", "diamond", "electron"): "electron.diamond.exact",
    ("plane_wave", "ellipse", "dipole"): "dipole.ellipse.exact",
    ("plane_wave", "ellipse", "electron"): "electron.ellipse.exact",
    ("plane_wave", "asymmetric", "dipole"): "dipole.asym.exact",
    ("plane_wave", "asymmetric", "electron"): "electron.asym.exact",
    ("waveguide_te", "guide", "dipole"): "dipole.guide_te.exact",
    ("waveguide_te", "guide", "electron"): "electron.guide_te.exact",
    ("waveguide_tm", "guide", "dipole"): "dipole.guide_tm.exact",
}


def _check_keys(block: dict, allowed: set, path: str):
    if not isinstance(block, dict):
        raise ConfigurationError(f"{path}: expected an object")
    for key in block:
        if key not in allowed:
            raise ConfigurationError(f"{path}.{key}: unknown key")


def _need(block: dict, key: str, path: str):
    if key not in block:
        raise ConfigurationError(f"{path}.{key}: required key missing")
    return block[key]


def _number(block: dict, key: str, path: str, *, minimum=None, default=None):
    if key not in block:
        if default is not None:
            return default
        raise ConfigurationError(f"{path}.{key}: required key missing")
    val = block[key]
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise ConfigurationError(f"{path}.{key}: expected a number, got {val!r}")
    if minimum is not None and val < minimum:
        raise ConfigurationError(f"{path}.{key}: must be >= {minimum}, got {val}")
    return float(val)


def validate_config(cfg: dict) -> dict:
    """Strict structural validation; returns cfg with run-block defaults filled."""
    _check_keys(cfg, _TOP_KEYS, "config")
    if cfg.get("schema_version") != SCHEMA_VERSION:
        raise ConfigurationError(
            f"config.schema_version: must be {SCHEMA_VERSION}, got "
            f"{cfg.get('schema_version')!r}")

    fblock = _need(cfg, "field", "config")
    ftype = _need(fblock, "type", "config.field")
    if ftype not in _FIELD_KEYS:
        raise ConfigurationError(f"config.field.type: unknown field type {ftype!r}")
    _check_keys(fblock, _FIELD_KEYS[ftype], "config.field")
    _number(fblock, "lambda_um", "config.field", minimum=1e-30)
    _number(fblock, "flux_W_cm2", "config.field", minimum=0.0)
    if ftype != "plane_wave":
        _number(fblock, "a_cm", "config.field", minimum=1e-30)
        _number(fblock, "b_cm", "config.field", minimum=1e-30)
        m = _need(fblock, "m_index", "config.field")
        l = _need(fblock, "l_index", "config.field")
        if not isinstance(m, int) or not isinstance(l, int) or m < 0 or l < 0:
            raise ConfigurationError("config.field.m_index/l_index: need integers >= 0")
        if m == 0 and l == 0:
            raise ConfigurationError(
                "config.field: invalid mode m_index = l_index = 0")
        if ftype == "waveguide_tm" and (m < 1 or l < 1):
            raise ConfigurationError(
                f"config.field: TM mode needs m_index >= 1 and l_index >= 1 "
                f"(got m={m}, l={l})")

    pblock = _need(cfg, "particle", "config")
    species = _need(pblock, "species", "config.particle")
    if species not in _PARTICLE_KEYS:
        raise ConfigurationError(f"config.particle.species: unknown species {species!r}")
    _check_keys(pblock, _PARTICLE_KEYS[species], "config.particle")
    if species == "dipole":
        _number(pblock, "L_nm", "config.particle", minimum=0.0, default=1.0)
        for key in ("d_over_eL", "m_over_eL"):
            if key in pblock:
                vec = pblock[key]
                if (not isinstance(vec, list) or len(vec) != 3
                        or not all(isinstance(v, (int, float)) for v in vec)):
                    raise ConfigurationError(
                        f"config.particle.{key}: expected a 3-number list")

    tblock = _need(cfg, "trajectory", "config")
    ttype = _need(tblock, "type", "config.trajectory")
    if ttype not in _TRAJ_KEYS:
        raise ConfigurationError(f"config.trajectory.type: unknown type {ttype!r}")
    _check_keys(tblock, _TRAJ_KEYS[ttype], "config.trajectory")
    v = _number(tblock, "v_over_c", "config.trajectory")
    if not (0.0 < v < 1.0):
        raise ConfigurationError(f"config.trajectory.v_over_c: must be in (0, 1), got {v}")
    _number(tblock, "alpha_mm", "config.trajectory", minimum=0.0)
    if ttype in ("diamond", "asymmetric"):
        _number(tblock, "l_mm", "config.trajectory", minimum=1e-30)
        _number(tblock, "d_mm", "config.trajectory", minimum=1e-30)
    if ttype == "ellipse":
        _number(tblock, "halfspan_mm", "config.trajectory", minimum=1e-30)
    if ttype == "guide":
        if ftype == "plane_wave":
            raise ConfigurationError(
                "config.trajectory: guide crossing needs a waveguide field")
        if "z_offsets_mm" in tblock:
            z = tblock["z_offsets_mm"]
            if (not isinstance(z, list) or len(z) != 2
                    or not all(isinstance(x, (int, float)) for x in z)):
                raise ConfigurationError(
                    "config.trajectory.z_offsets_mm: expected a 2-number list")
    elif ftype != "plane_wave":
        raise ConfigurationError(
            f"config.trajectory: {ttype!r} runs in the plane wave, not a guide")

    run = dict(_RUN_DEFAULTS)
    if "run" in cfg:
        _check_keys(cfg["run"], _RUN_KEYS, "config.run")
        run.update(cfg["run"])
    if not isinstance(run["seed"], int) or run["seed"] < 0:
        raise ConfigurationError("config.run.seed: expected a non-negative integer")
    if not isinstance(run["n_mc"], int) or run["n_mc"] < 2:
        raise ConfigurationError("config.run.n_mc: expected an integer >= 2")
    cfg = dict(cfg)
    cfg["run"] = run

    if "scattering" in cfg:
        _check_keys(cfg["scattering"], _SCATTER_KEYS, "config.scattering")
    return cfg


@dataclass
class Scenario:
    field: object
    coupling: object
    loop: InterferenceLoop
    omega: float
    run: dict
    formula_id: str | None
    params: ScenarioParams | None
    cfg: dict


def _mm(x: float) -> float:
    return units.length_m(x * 1e-3)


def build_scenario(cfg: dict) -> Scenario:
    """Assemble natural-unit objects from a validated config."""
    cfg = validate_config(cfg)
    fblock, pblock, tblock = cfg["field"], cfg["particle"], cfg["trajectory"]
    ftype, ttype, species = fblock["type"], tblock["type"], pblock["species"]

    lam = units.length_m(fblock["lambda_um"] * 1e-6)
    omega = units.omega_from_wavelength(lam)
    rho = units.flux_W_cm2(fblock["flux_W_cm2"])

    a = b = k_y = None
    if ftype == "plane_wave":
        field = PlaneWave(E0=units.field_amplitude_from_flux(rho), omega=omega)
    else:
        a = units.length_m(fblock["a_cm"] * 1e-2)
        b = units.length_m(fblock["b_cm"] * 1e-2)
        kx = fblock["m_index"] * math.pi / b
        kz = fblock["l_index"] * math.pi / a
        gamma = math.hypot(kx, kz)
        if omega < gamma:
            raise ConfigurationError(
                f"config.field: mode (m={fblock['m_index']}, l={fblock['l_index']}) "
                f"is evanescent at lambda_um={fblock['lambda_um']} "
                f"(omega {omega:.4e} < cutoff {gamma:.4e})")
        k_y = math.sqrt(omega**2 - gamma**2)
        amp = units.field_amplitude_from_flux(rho, guide=True, a=a, lam=lam)
        field = WaveguideMode(kind="TE" if ftype == "waveguide_te" else "TM",
                              amplitude=amp, a=a, b=b,
                              m=fblock["m_index"], l=fblock["l_index"], k_y=k_y)

    L = None
    if species == "dipole":
        L = units.length_m(pblock.get("L_nm", 1.0) * 1e-9)
        dvec = tuple(E_CHARGE * L * c for c in pblock.get("d_over_eL", [0.0, 1.0, 0.0]))
        mvec = tuple(E_CHARGE * L * c for c in pblock.get("m_over_eL", [0.0, 0.0, 0.0]))
        coupling = Dipole(d=dvec, m=mvec)
    else:
        coupling = Charge(q=pblock.get("q_over_e", 1.0) * E_CHARGE)

    v = tblock["v_over_c"]
    alpha = _mm(tblock["alpha_mm"])
    p = ScenarioParams(omega=omega, alpha=alpha, v=v, L=L,
                       q=abs(getattr(coupling, "q", E_CHARGE)))
    if isinstance(coupling, Dipole):
        p.d_x, p.d_y, p.d_z = coupling.d
        p.m_x, p.m_y, p.m_z = coupling.m

    if ttype == "diamond":
        l = _mm(tblock["l_mm"])
        d = _mm(tblock["d_mm"])
        s = math.hypot(alpha, l)
        theta, T = s / v, 2 * d / v
        loop = make_diamond(T, theta, d, l, alpha)
        p.theta, p.T, p.d, p.l, p.s = theta, T, d, l, s
    elif ttype == "ellipse":
        halfspan = _mm(tblock["halfspan_mm"])
        s_prime = arc_length(_ellipse_arm(1.0, halfspan, alpha, +1, "probe"))
        tau = s_prime / v
        loop = make_ellipse(tau, halfspan, alpha)
        p.tau, p.s_prime = tau, loop.meta["s_prime"]
    elif ttype == "asymmetric":
        l = _mm(tblock["l_mm"])
        d = _mm(tblock["d_mm"])
        s = math.hypot(alpha, l)
        theta, T = s / v, 2 * d / v
        tau = T / 2 + theta
        loop = make_asymmetric(tau, T, theta, d, l, alpha)
        p.theta, p.T, p.tau, p.d, p.l, p.s = theta, T, tau, d, l, s
        p.s_prime = loop.meta["s_prime"]
    else:  # guide
        T = b / v
        z_off = tblock.get("z_offsets_mm")
        z_offsets = (_mm(z_off[0]), _mm(z_off[1])) if z_off is not None else None
        loop = make_guide_crossing(T, field, alpha, z_offsets)
        p.T, p.a, p.b, p.k_y = T, a, b, k_y
        p.m_index, p.l_index = fblock["m_index"], fblock["l_index"]
        p.z1, p.z2 = loop.meta["z1"], loop.meta["z2"]

    if ftype == "waveguide_te":
        p.B0 = field.amplitude
    else:
        p.E0 = field.amplitude

    formula_id = _FORMULA_FOR.get((ftype, ttype, species))
    return Scenario(field=field, coupling=coupling, loop=loop, omega=omega,
                    run=cfg["run"], formula_id=formula_id, params=p, cfg=cfg)


def load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise ConfigurationError(f"{path}: {exc}") from exc
