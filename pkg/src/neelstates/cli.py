"""JSON command-line front end.

Usage::

    neelstates check --Jx 1 --Jy 1 --Jz 1 --hz 2 --d 1 --s 0.5
    neelstates verify --job job.json
    python -m neelstates params --theta1 1.0 --phi1 0.2 --theta2 2.0 --phi2 -1.1

Exit codes: 0 pass, 1 usage or input error, 2 condition or verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import factor_core as fc
from .errors import NeelError
from .lattice import Lattice
from .spin_algebra import SpinQuantum
from .verifier import bond_residual, check_eigenstate, spectrum_probe

SCHEMA = 1
COMMANDS = ("check", "angles", "params", "verify", "sweep", "spectrum")
DEFAULT_TOLERANCES = {
    "condition": fc.CONDITION_TOL,
    "nullspace": fc.NULLSPACE_TOL,
    "eigen": 1e-10,
}

EXIT_PASS, EXIT_INPUT, EXIT_FAIL = 0, 1, 2


class InputError(ValueError):
    pass


# --- serialization -------------------------------------------------------------


def _encode(obj) -> str:
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return '"nan"'
        if math.isinf(x):
            return '"inf"' if x > 0 else '"-inf"'
        return format(x, ".17g")
    if isinstance(obj, (complex, np.complexfloating)):
        return _encode([obj.real, obj.imag])
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(report: dict) -> str:
    """JSON text with every float written to 17 significant digits."""
    return _encode(report) + "\n"


# --- job parsing ---------------------------------------------------------------


def _parse_spin(job) -> SpinQuantum:
    if "two_s" in job and job["two_s"] is not None:
        two_s = job["two_s"]
        if isinstance(two_s, bool) or not isinstance(two_s, int):
            raise InputError(f"two_s must be an integer, got {two_s!r}")
        return SpinQuantum(two_s)
    if "s" not in job or job["s"] is None:
        raise InputError("spin missing: give 's' (e.g. \"0.5\") or 'two_s'")
    try:
        return SpinQuantum.parse(job["s"])
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def _parse_context(job) -> tuple[fc.ModelContext, Lattice | None]:
    extents = job.get("extents")
    lat = None
    if extents is not None:
        try:
            lat = Lattice(tuple(extents))
        except (TypeError, ValueError) as exc:
            raise InputError(f"bad extents: {exc}") from exc
    d = job.get("d")
    if d is None:
        d = lat.d if lat is not None else 1
    if lat is not None and lat.d != d:
        raise InputError(f"d = {d} does not match {lat.d} extents")
    try:
        ctx = fc.ModelContext(d, _parse_spin(job))
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    return ctx, lat


def _parse_params(job, key="params") -> fc.Params:
    raw = job.get(key)
    if not isinstance(raw, dict):
        raise InputError(f"'{key}' must be an object with keys Jx, Jy, Jz, hx, hy, hz")
    try:
        return fc.Params.from_mapping(raw)
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad {key}: {exc}") from exc


def _parse_angles(job) -> fc.NeelAngles | None:
    raw = job.get("angles")
    if raw is None:
        return None
    if not isinstance(raw, dict):
        raise InputError("'angles' must be an object with theta1, phi1, theta2, phi2")
    unit = raw.get("unit", "rad")
    if unit not in ("rad", "deg"):
        raise InputError(f"angle unit must be 'rad' or 'deg', got {unit!r}")
    factor = math.pi / 180 if unit == "deg" else 1.0
    try:
        vals = [factor * float(raw[k]) for k in ("theta1", "phi1", "theta2", "phi2")]
        return fc.NeelAngles.from_radians(*vals)
    except KeyError as exc:
        raise InputError(f"angles missing {exc.args[0]}") from exc
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad angles: {exc}") from exc


def _tolerances(job) -> dict:
    tol = dict(DEFAULT_TOLERANCES)
    extra = job.get("tolerances") or {}
    unknown = set(extra) - set(tol)
    if unknown:
        raise InputError(f"unknown tolerance keys: {sorted(unknown)}")
    tol.update({k: float(v) for k, v in extra.items()})
    return tol


def _angles_dict(a: fc.NeelAngles) -> dict:
    return dict(zip(("theta1", "phi1", "theta2", "phi2"), a.as_tuple()), unit="rad")


def _complex_or_inf(z):
    return z if (math.isfinite(z.real) and math.isfinite(z.imag)) else "inf"


# --- commands ------------------------------------------------------------------


def _cmd_check(job, ctx, lat, tol):
    p = _parse_params(job)
    res = fc.condition_residual(p, ctx)
    bound = tol["condition"] * ctx.two_ds**2
    return {
        "params": p.as_dict(),
        "residual": res,
        "tolerance": bound,
        "energy_per_site": fc.energy_per_site(p, ctx),
        "pass": abs(res) <= bound,
    }


def _cmd_angles(job, ctx, lat, tol):
    p = _parse_params(job)
    angles = fc.solve_angles(p, ctx, tol=tol["condition"])
    a, b, c = fc.quadratic_coefficients(p, ctx)
    alpha, beta = fc.alpha_beta(p, ctx)
    pair = fc.stereo_roots(p, ctx)
    return {
        "params": p.as_dict(),
        "condition_residual": fc.condition_residual(p, ctx),
        "coefficients": {"a": a, "b": b, "c": c},
        "alpha": _complex_or_inf(alpha),
        "beta": _complex_or_inf(beta),
        "z1": _complex_or_inf(pair.z1),
        "z2": _complex_or_inf(pair.z2),
        "angles": _angles_dict(angles),
        "bond_residual": bond_residual(p, ctx, angles),
        "energy_per_site": fc.energy_per_site(p, ctx),
        "pass": True,
    }


def _resolve_member(ray: fc.ParamRay, ctx, angles):
    # generic member of a degenerate solution space, field rescaled onto the condition surface
    coeffs = 1.0 / np.arange(1, ray.k + 1)
    member = ray.member(coeffs)
    if member.jx < 0:
        member = member.scaled(-1.0)
    try:
        member = member.with_field_scaled(fc.field_normalizing_scale(member, ctx))
    except NeelError as exc:
        return {"params": None, "reason": f"{type(exc).__name__}: {exc}"}
    if member.jx != 0:
        member = member.scaled(1.0 / member.jx)
    return {"params": member.as_dict(), "bond_residual": bond_residual(member, ctx, angles)}


def _cmd_params(job, ctx, lat, tol):
    angles = _parse_angles(job)
    if angles is None:
        raise InputError("params command needs 'angles'")
    ray = fc.solve_params(angles, ctx, rel_tol=tol["nullspace"])
    inv = fc.angle_invariants(angles)
    report = {
        "angles": _angles_dict(angles),
        "invariants": dict(zip(("gamma", "delta", "chi", "zeta"), inv.as_tuple())),
        "nullspace_dim": ray.k,
        "basis": ray.basis,
        "singular_values": ray.singular_values,
        "parameters": None,
        "closed_form": None,
        "closed_form_delta": None,
    }
    if ray.representative is not None:
        rep = ray.representative
        report["parameters"] = rep.as_dict()
        try:
            cf = fc.closed_form_params(inv, ctx)
        except NeelError:
            pass
        else:
            report["closed_form"] = dict(zip(fc.PARAM_NAMES, cf))
            report["closed_form_delta"] = float(np.max(np.abs(rep.as_array() - cf) / np.maximum(1.0, np.abs(cf))))
        try:
            report["condition_residual"] = fc.condition_residual(rep, ctx)
            report["field_scale"] = fc.field_normalizing_scale(rep, ctx)
        except NeelError as exc:
            report["condition_error"] = {"type": type(exc).__name__, "message": str(exc)}
        report["bond_residual"] = bond_residual(rep, ctx, angles)
    if ray.k > 1:
        report["resolved"] = _resolve_member(ray, ctx, angles)
    report["pass"] = True
    return report


def _require_lattice(lat, command):
    if lat is None:
        raise InputError(f"{command} command needs 'extents'")
    return lat


def _cmd_verify(job, ctx, lat, tol):
    lat = _require_lattice(lat, "verify")
    p = _parse_params(job)
    angles = _parse_angles(job)
    solved = angles is None
    if solved:
        angles = fc.solve_angles(p, ctx, tol=tol["condition"])
    chk = check_eigenstate(p, lat, ctx.s, angles)
    swp = check_eigenstate(p, lat, ctx.s, angles.swapped())
    bond = bond_residual(p, ctx, angles)
    ok = chk.passes(tol["eigen"]) and swp.passes(tol["eigen"])
    return {
        "params": p.as_dict(),
        "extents": list(lat.extents),
        "angles": _angles_dict(angles),
        "angles_solved": solved,
        "eigen_residual": chk.residual,
        "eigen_residual_swapped": swp.residual,
        "norm_h_psi": chk.norm_h_psi,
        "bond_residual": bond,
        "energy": chk.energy,
        "expectation": chk.expectation,
        "num_sites": chk.num_sites,
        "pass": bool(ok),
    }


def _cmd_sweep(job, ctx, lat, tol):
    p0 = _parse_params(job)
    sweep = job.get("sweep") or {}
    direction = sweep.get("direction")
    if isinstance(direction, dict):
        direction = [float(direction.get(k, direction.get(k.lower(), 0.0))) for k in fc.PARAM_NAMES]
    if direction is None or len(direction) != 6:
        raise InputError("sweep needs 'direction' with 6 components (Jx, Jy, Jz, hx, hy, hz)")
    t_range = tuple(sweep.get("range", (0.0, 10.0)))
    if len(t_range) != 2:
        raise InputError("sweep 'range' must be [lo, hi]")
    samples = int(sweep.get("samples", 1001))
    try:
        roots = fc.factorizing_field_scan(p0, direction, ctx, t_range=t_range, samples=samples)
    except ValueError as exc:
        if isinstance(exc, NeelError):
            raise
        raise InputError(str(exc)) from exc
    hits = []
    for t in roots:
        p = fc.Params.from_array(p0.as_array() + t * np.asarray(direction, dtype=float))
        hits.append({"t": t, "params": p.as_dict(), "residual": fc.condition_residual(p, ctx)})
    return {
        "params": p0.as_dict(),
        "direction": [float(x) for x in direction],
        "range": [float(x) for x in t_range],
        "roots": roots,
        "hits": hits,
        "pass": True,
    }


def _cmd_spectrum(job, ctx, lat, tol):
    lat = _require_lattice(lat, "spectrum")
    p = _parse_params(job)
    evals = spectrum_probe(p, lat, ctx.s)
    neel = lat.num_sites * fc.energy_per_site(p, ctx)
    scale = max(1.0, abs(neel))
    return {
        "params": p.as_dict(),
        "extents": list(lat.extents),
        "eigenvalues": evals,
        "min_eigenvalue": float(evals[0]),
        "neel_energy": neel,
        "neel_energy_in_spectrum": bool(np.min(np.abs(evals - neel)) <= 1e-9 * scale),
        "pass": True,
    }


_DISPATCH = {
    "check": _cmd_check,
    "angles": _cmd_angles,
    "params": _cmd_params,
    "verify": _cmd_verify,
    "sweep": _cmd_sweep,
    "spectrum": _cmd_spectrum,
}


def run(job: dict) -> tuple[dict, int]:
    """Execute one job and return ``(report, exit_code)``."""
    report = {"schema": SCHEMA, "command": job.get("command") if isinstance(job, dict) else None}
    try:
        if not isinstance(job, dict):
            raise InputError("job must be a JSON object")
        command = job.get("command")
        if command not in _DISPATCH:
            raise InputError(f"command must be one of {list(COMMANDS)}, got {command!r}")
        ctx, lat = _parse_context(job)
        tol = _tolerances(job)
        report.update({"d": ctx.d, "s": str(ctx.s), "two_s": ctx.s.two_s, "tolerances": tol})
        report.update(_DISPATCH[command](job, ctx, lat, tol))
    except InputError as exc:
        report.update({"pass": False, "error": {"type": "InputError", "message": str(exc)}})
        return report, EXIT_INPUT
    except NeelError as exc:
        report.update({"pass": False, "error": {"type": type(exc).__name__, "message": str(exc)}})
        return report, EXIT_FAIL
    return report, EXIT_PASS if report.get("pass") else EXIT_FAIL


# --- argument handling -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="neelstates", description=__doc__.split("\n")[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--job", type=Path, help="JSON job file; inline flags override its fields")
    ap.add_argument("--output", type=Path, help="write the report here instead of stdout")
    for name in fc.PARAM_NAMES:
        ap.add_argument(f"--{name}", type=float, default=None)
    ap.add_argument("--d", type=int, default=None)
    ap.add_argument("--s", default=None, help="spin as an exact half-integer, e.g. 0.5, 1, 3/2")
    ap.add_argument("--two-s", dest="two_s", type=int, default=None)
    ap.add_argument("--extents", type=int, nargs="+", default=None)
    for name in ("theta1", "phi1", "theta2", "phi2"):
        ap.add_argument(f"--{name}", type=float, default=None)
    ap.add_argument("--unit", choices=("rad", "deg"), default=None)
    ap.add_argument("--direction", type=float, nargs=6, default=None, metavar="X")
    ap.add_argument("--range", dest="t_range", type=float, nargs=2, default=None, metavar=("LO", "HI"))
    ap.add_argument("--samples", type=int, default=None)
    for name in DEFAULT_TOLERANCES:
        ap.add_argument(f"--tol-{name}", dest=f"tol_{name}", type=float, default=None)
    return ap


def job_from_args(args) -> dict:
    job: dict = {}
    if args.job is not None:
        try:
            job = json.loads(Path(args.job).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read job file {args.job}: {exc}") from exc
        if not isinstance(job, dict):
            raise InputError("job file must contain a JSON object")
    if job.get("command", args.command) != args.command:
        raise InputError(f"job file command {job['command']!r} conflicts with {args.command!r}")
    job["command"] = args.command

    params = dict(job.get("params") or {})
    for name in fc.PARAM_NAMES:
        value = getattr(args, name)
        if value is not None:
            params = {k: v for k, v in params.items() if k.lower() != name.lower()}
            params[name] = value
    if params:
        job["params"] = params

    angles = dict(job.get("angles") or {})
    for name in ("theta1", "phi1", "theta2", "phi2"):
        if getattr(args, name) is not None:
            angles[name] = getattr(args, name)
    if args.unit is not None:
        angles["unit"] = args.unit
    if angles:
        job["angles"] = angles

    for key in ("d", "extents"):
        if getattr(args, key) is not None:
            job[key] = getattr(args, key)
    if args.s is not None:
        job["s"] = args.s
        job.pop("two_s", None)
    if args.two_s is not None:
        job["two_s"] = args.two_s
        job.pop("s", None)

    sweep = dict(job.get("sweep") or {})
    if args.direction is not None:
        sweep["direction"] = args.direction
    if args.t_range is not None:
        sweep["range"] = args.t_range
    if args.samples is not None:
        sweep["samples"] = args.samples
    if sweep:
        job["sweep"] = sweep

    tols = dict(job.get("tolerances") or {})
    for name in DEFAULT_TOLERANCES:
        if getattr(args, f"tol_{name}") is not None:
            tols[name] = getattr(args, f"tol_{name}")
    if tols:
        job["tolerances"] = tols
    return job


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        job = job_from_args(args)
    except InputError as exc:
        report, code = {"schema": SCHEMA, "command": args.command, "pass": False,
                        "error": {"type": "InputError", "message": str(exc)}}, EXIT_INPUT
    else:
        report, code = run(job)
    if "error" in report:
        print(f"neelstates: {report['error']['type']}: {report['error']['message']}", file=sys.stderr)
    text = dumps(report)
    if args.output is not None:
        args.output.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
