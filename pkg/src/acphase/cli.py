"""Batch front end: compute | sweep | table1 | xsection | mc-check.

JSON in (strict schema, see config.py), JSON or CSV out.  CSV uses a
header row, '.' decimals and 9-significant-digit scientific notation.
Identical config + seed produce byte-identical output.

Exit codes: 0 success, 2 closed-form deviation above tolerance,
3 config/schema violation, 4 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from importlib import resources

import numpy as np

from . import closed_forms, engine, scattering, units
from .bessel import bessel_j0
from .config import Scenario, build_scenario, load_config
from .constants import E_CHARGE, EV_INV_PER_M, M_ELECTRON_EV, M_SODIUM_EV, constants_table
from .errors import (AcphaseError, ConfigurationError, DomainError,
                     ModelViolationError, QuadratureError)

_EXIT_ORACLE = 2
_EXIT_CONFIG = 3
_EXIT_NUMERIC = 4


def _fmt(x: float) -> str:
    return f"{x:.8e}"


def _write(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump_json(obj: dict, out: str | None):
    _write(json.dumps(obj, indent=2, sort_keys=True) + "\n", out)


# ----------------------------------------------------------------------
# compute
# ----------------------------------------------------------------------

def _evaluate_scenario(scn: Scenario) -> dict:
    coeffs = engine.extract_AB(scn.loop, scn.coupling, scn.field, scn.omega,
                               rtol=scn.run["quad_rtol"])
    report = {
        "A": coeffs.A,
        "B": coeffs.B,
        "Cmag": coeffs.Cmag,
        "F": engine.visibility(coeffs),
        "small_phase": engine.small_phase_limit(coeffs),
    }
    if scn.run["mc_enabled"]:
        mc = engine.monte_carlo_visibility(coeffs, scn.run["n_mc"], scn.run["seed"])
        report["mc"] = {"real": mc.mean.real, "imag": mc.mean.imag,
                        "stderr_re": mc.stderr_re, "stderr_im": mc.stderr_im,
                        "n": mc.n, "seed": scn.run["seed"]}
    if scn.formula_id is not None:
        closed = closed_forms.evaluate(scn.formula_id, scn.params)
        dev = abs(coeffs.Cmag - closed["Cmag"]) / max(abs(closed["Cmag"]), 1e-300) \
            if closed["Cmag"] != 0.0 else abs(coeffs.Cmag)
        report["closed_form"] = {"id": scn.formula_id, "Cmag": closed["Cmag"],
                                 "A": closed.get("A"), "B": closed.get("B"),
                                 "rel_deviation": dev}
    return report


def cmd_compute(args) -> int:
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg.setdefault("run", {})["seed"] = args.seed
    scn = build_scenario(cfg)
    report = _evaluate_scenario(scn)
    status = 0
    if "closed_form" in report and scn.params is not None:
        if report["closed_form"]["rel_deviation"] > scn.run["oracle_rtol"] \
                and report["closed_form"]["Cmag"] != 0.0:
            status = _EXIT_ORACLE
    report["exit_status"] = status
    _dump_json(report, args.out)
    return status


# ----------------------------------------------------------------------
# sweep
# ----------------------------------------------------------------------

def _set_path(cfg: dict, path: str, value):
    keys = path.split(".")
    node = cfg
    for k in keys[:-1]:
        if k not in node or not isinstance(node[k], dict):
            raise ConfigurationError(f"sweep parameter path {path!r}: {k!r} not found")
        node = node[k]
    if keys[-1] not in node:
        raise ConfigurationError(f"sweep parameter path {path!r}: key not in schema")
    node[keys[-1]] = value


def _grid(args) -> list[float]:
    if args.values:
        try:
            return [float(tok) for tok in args.values.split(",") if tok.strip()]
        except ValueError as exc:
            raise ConfigurationError(f"--values: {exc}") from exc
    if args.log_range:
        lo, hi, n = args.log_range
        if lo <= 0 or hi <= 0 or int(n) < 1:
            raise ConfigurationError("--log-range needs lo, hi > 0 and n >= 1")
        return list(np.logspace(math.log10(lo), math.log10(hi), int(n)))
    raise ConfigurationError("sweep needs --values or --log-range")


def _sweep_point(cfg: dict, method: str) -> tuple[float, float, float, float]:
    scn = build_scenario(cfg)
    if method == "engine":
        coeffs = engine.extract_AB(scn.loop, scn.coupling, scn.field, scn.omega,
                                   rtol=scn.run["quad_rtol"])
        A, B, cmag = coeffs.A, coeffs.B, coeffs.Cmag
    else:
        fid = scn.formula_id
        if fid is None:
            raise ConfigurationError("no closed form for this scenario; use --method engine")
        if method == "estimate":
            fid = fid.rsplit(".", 1)[0] + ".estimate"
        res = closed_forms.evaluate(fid, scn.params)
        A, B = res.get("A", 0.0), res.get("B", 0.0)
        cmag = res["Cmag"]
    return A, B, cmag, float(bessel_j0(cmag))


def cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg.setdefault("run", {})["seed"] = args.seed
    values = _grid(args)
    rows = ["param_value,A,B,Cmag,F"]
    cmags = []
    for val in values:
        point_cfg = json.loads(json.dumps(cfg))
        _set_path(point_cfg, args.param, val)
        A, B, cmag, F = _sweep_point(point_cfg, args.method)
        cmags.append(cmag)
        rows.append(",".join([_fmt(val), _fmt(A), _fmt(B), _fmt(cmag), _fmt(F)]))
    if args.param.endswith("v_over_c") and len(values) >= 2 and all(c > 0 for c in cmags):
        slope = float(np.polyfit(np.log10(values), np.log10(cmags), 1)[0])
        rows.append(",".join(["slope_fit", "", "", _fmt(slope), ""]))
    text = "\n".join(rows) + "\n"
    _write(text, args.out)
    if args.gnuplot and args.out:
        gp = (f"set datafile separator ','\nset logscale xy\n"
              f"set xlabel '{args.param}'\nset ylabel '|C|'\n"
              f"plot '{args.out}' using 1:4 every ::1 with linespoints title '|C|'\n")
        _write(gp, args.out + ".gp")
    return 0


# ----------------------------------------------------------------------
# table1
# ----------------------------------------------------------------------

def default_defaults_path() -> str:
    return str(resources.files("acphase").joinpath("defaults/table1_defaults.json"))


def _row_params(row: dict) -> closed_forms.ScenarioParams:
    si = row["params_si"]
    p = closed_forms.ScenarioParams()
    lam = units.length_m(si["lambda_um"] * 1e-6)
    p.omega = 2.0 * math.pi / lam
    if "a_cm" in si:
        p.a = units.length_m(si["a_cm"] * 1e-2)
    if "b_cm" in si:
        p.b = units.length_m(si["b_cm"] * 1e-2)
    rho = units.flux_W_cm2(si["flux_W_cm2"])
    if row["formula"].split(".")[1].startswith("guide"):
        p.B0 = units.field_amplitude_from_flux(rho, guide=True, a=p.a, lam=lam)
        p.E0 = p.B0
    else:
        p.E0 = units.field_amplitude_from_flux(rho)
    if "alpha_mm" in si:
        p.alpha = units.length_m(si["alpha_mm"] * 1e-3)
    if "alpha_over_s" in si:
        p.s = p.alpha / si["alpha_over_s"]
    if "s_prime_um" in si:
        p.s_prime = units.length_m(si["s_prime_um"] * 1e-6)
    if "v_over_c" in si:
        p.v = si["v_over_c"]
    if "L_nm" in si:
        p.L = units.length_m(si["L_nm"] * 1e-9)
    return p


def cmd_table1(args) -> int:
    path = args.defaults or default_defaults_path()
    with open(path, "r", encoding="utf-8") as fh:
        defaults = json.load(fh)
    rows_out = ["trajectory,species,formula,C_computed,C_target,decades_off,pass"]
    all_pass = True
    for row in defaults["rows"]:
        p = _row_params(row)
        cmag = closed_forms.evaluate(row["formula"], p)["Cmag"]
        target = float(row["target_order_of_magnitude"])
        decades = abs(math.log10(cmag) - math.log10(target))
        ok = decades <= 1.0
        all_pass &= ok
        rows_out.append(",".join([
            row["trajectory"], row["species"], row["formula"],
            _fmt(cmag), _fmt(target), f"{decades:.3f}", str(ok).lower()]))
    _write("\n".join(rows_out) + "\n", args.out)
    return 0 if all_pass else _EXIT_ORACLE


# ----------------------------------------------------------------------
# xsection
# ----------------------------------------------------------------------

def cmd_xsection(args) -> int:
    cfg = load_config(args.config)
    scn = build_scenario(cfg)
    sblock = cfg.get("scattering", {})
    margin = float(sblock.get("margin", 100.0))
    m_A = float(sblock.get("mass_GeV", M_SODIUM_EV / 1e9)) * 1e9

    fblock = scn.cfg["field"]
    species = scn.cfg["particle"]["species"]
    p = scn.params
    if fblock["type"] == "plane_wave":
        if species == "dipole":
            sigma = scattering.sigma_dipole_planewave(m_A, scn.omega, p.d_y, p.m_x)
        else:
            sigma = scattering.sigma_thomson(M_ELECTRON_EV)
    else:
        if species == "dipole":
            sigma = scattering.sigma_te("dipole", k=scn.omega, k_y=p.k_y,
                                        m_A=m_A, d_y=p.d_y)
        else:
            sigma = scattering.sigma_te("electron", k=scn.omega, k_y=p.k_y)

    rho = units.flux_W_cm2(fblock["flux_W_cm2"])
    density = rho / scn.omega
    if "path_scale_mm" in sblock:
        path_scale = units.length_m(float(sblock["path_scale_mm"]) * 1e-3)
    else:
        path_scale = scn.loop.meta["path_extent"]
    report = scattering.max_field_bound(sigma, density, path_scale, margin)

    unbounded = not math.isfinite(report.l_mfp)
    out = {
        "sigma_natural": sigma,
        "sigma_m2": scattering.to_m2(sigma),
        "l_mfp_m": None if unbounded else report.l_mfp / EV_INV_PER_M,
        "max_flux_W_cm2": None if unbounded else
            fblock["flux_W_cm2"] * report.max_density / density,
        "pass": report.passes,
        "unbounded": unbounded,
        "margin": margin,
        "path_scale_m": path_scale / EV_INV_PER_M,
    }
    _dump_json(out, args.out)
    return 0


# ----------------------------------------------------------------------
# mc-check
# ----------------------------------------------------------------------

def cmd_mc_check(args) -> int:
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg.setdefault("run", {})["seed"] = args.seed
    scn = build_scenario(cfg)
    coeffs = engine.extract_AB(scn.loop, scn.coupling, scn.field, scn.omega,
                               rtol=scn.run["quad_rtol"])
    n = args.n or scn.run["n_mc"]
    mc = engine.monte_carlo_visibility(coeffs, n, scn.run["seed"])
    F = engine.visibility(coeffs)
    stderr = max(mc.stderr_re, mc.stderr_im, 1e-300)
    within = abs(abs(mc.mean) - abs(F)) <= 3.0 * stderr
    _dump_json({
        "Cmag": coeffs.Cmag, "F_bessel": F,
        "mc_real": mc.mean.real, "mc_imag": mc.mean.imag,
        "stderr_re": mc.stderr_re, "stderr_im": mc.stderr_im,
        "n": mc.n, "seed": scn.run["seed"], "within_3sigma": within,
    }, args.out)
    return 0


# ----------------------------------------------------------------------
# entry point
# ----------------------------------------------------------------------

def _add_common(sp, config_required=True):
    if config_required:
        sp.add_argument("--config", required=True, help="JSON scenario config")
    sp.add_argument("--out", default=None, help="output path (default stdout)")
    sp.add_argument("--seed", type=int, default=None, help="override run.seed")
    sp.add_argument("--show-constants", action="store_true",
                    help="dump the constants table as JSON and exit")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="acphase",
        description="Fluctuating dipole/charge interference phase and visibility toolkit")
    ap.add_argument("--show-constants", action="store_true",
                    help="dump the constants table as JSON and exit")
    sub = ap.add_subparsers(dest="command")

    sp = sub.add_parser("compute", help="single scenario -> JSON report")
    _add_common(sp)
    sp.set_defaults(fn=cmd_compute)

    sp = sub.add_parser("sweep", help="parameter sweep -> CSV")
    _add_common(sp)
    sp.add_argument("--param", required=True,
                    help="dotted config path, e.g. trajectory.v_over_c")
    sp.add_argument("--values", default=None, help="comma-separated grid")
    sp.add_argument("--log-range", nargs=3, type=float, metavar=("LO", "HI", "N"),
                    default=None, help="log-spaced grid")
    sp.add_argument("--method", choices=("engine", "closed", "estimate"),
                    default="engine")
    sp.add_argument("--gnuplot", action="store_true",
                    help="also emit a gnuplot script next to --out")
    sp.set_defaults(fn=cmd_sweep)

    sp = sub.add_parser("table1", help="summary-table reproduction -> CSV")
    _add_common(sp, config_required=False)
    sp.add_argument("--defaults", default=None,
                    help="defaults file (shipped one if omitted)")
    sp.set_defaults(fn=cmd_table1)

    sp = sub.add_parser("xsection", help="scattering cross-section bound -> JSON")
    _add_common(sp)
    sp.set_defaults(fn=cmd_xsection)

    sp = sub.add_parser("mc-check", help="Monte-Carlo vs Bessel visibility -> JSON")
    _add_common(sp)
    sp.add_argument("--n", type=int, default=None, help="override run.n_mc")
    sp.set_defaults(fn=cmd_mc_check)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "show_constants", False):
        _dump_json(constants_table(), getattr(args, "out", None))
        return 0
    if not getattr(args, "command", None):
        build_parser().print_help()
        return 0
    try:
        return args.fn(args)
    except (ConfigurationError, DomainError) as exc:
        print(f"acphase: config error: {exc}", file=sys.stderr)
        return _EXIT_CONFIG
    except (QuadratureError, ModelViolationError) as exc:
        print(f"acphase: numerical error: {exc}", file=sys.stderr)
        return _EXIT_NUMERIC
    except AcphaseError as exc:
        print(f"acphase: error: {exc}", file=sys.stderr)
        return _EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
