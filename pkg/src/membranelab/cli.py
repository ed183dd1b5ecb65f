"""Command line front end: typed configuration, dispatch, run records.

Commands: trace, sigma0, family, linearize, table1, eigen, certify, mesh,
plus bundled recipes (--recipe fig1|fig2|fig3|table1) that reproduce the
reference parameter sets.  Configuration is a flat ``key = value`` text
file mirrored one-to-one by command line flags; flags override file values,
duplicate keys in a file resolve last-wins with a warning, unknown keys are
rejected.  Every run writes a JSON run record listing inputs, tolerances,
derived scalars and all artifact paths; identical configurations produce
byte-identical artifacts.

Exit codes: 0 success, 1 usage or validation error, 2 numerical
non-convergence (diagnostics on standard error).
"""

import argparse
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .errors import MembraneLabError, NotAdmissible, ParseError
from .linearized import solve_h
from .profile import (
    ModelParams,
    StopCondition,
    integrate_profile,
    sigma0_stop,
)
from .shooting import BoundaryCircle, family_sweep, shoot_sigma0
from .spectral import certify, eigen_solve
from .surfaces import (
    ArtifactEntry,
    RunRecord,
    branch_linear_mesh,
    export_json,
    export_mesh_obj,
    export_profile_csv,
    family_linear_mesh,
    revolve,
)

_REQUIRED = object()

_TABLE1_ZO = (-0.55, -0.6, -0.7, -0.9, -1.2)


def _parse_bool(text):
    t = str(text).strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ParseError(f"cannot parse boolean value: {text!r}")


def _parse_float_list(text):
    if isinstance(text, (list, tuple)):
        return [float(x) for x in text]
    return [float(x) for x in str(text).split(",") if x.strip()]


_CONVERTERS = {
    "float": float,
    "int": int,
    "str": str,
    "bool": _parse_bool,
    "float_list": _parse_float_list,
}

# per-command parameter specifications: name -> (type name, default, help)
PARAM_SPECS = {
    "trace": {
        "c_o": ("float", _REQUIRED, "spontaneous curvature"),
        "z_o": ("float", _REQUIRED, "axis height (< 0)"),
        "stop": ("str", "phi0", "stop kind: phi0 (tangential) or arc"),
        "arc": ("float", 1.0, "arc length for stop=arc"),
        "samples": ("int", 400, "CSV resample count"),
    },
    "sigma0": {
        "R": ("float", _REQUIRED, "boundary circle radius"),
        "Z": ("float", _REQUIRED, "boundary circle height (< 0)"),
        "samples": ("int", 400, "CSV resample count"),
    },
    "family": {
        "R": ("float", _REQUIRED, "boundary circle radius"),
        "Z": ("float", _REQUIRED, "boundary circle height (< 0)"),
        "c_min": ("float", _REQUIRED, "lower spontaneous curvature"),
        "c_max": ("float", _REQUIRED, "upper spontaneous curvature"),
        "n": ("int", 13, "member count"),
        "samples": ("int", 400, "per-member CSV resample count"),
    },
    "linearize": {
        "c_o": ("float", _REQUIRED, "spontaneous curvature"),
        "z_o": ("float", _REQUIRED, "axis height (< 0)"),
        "samples": ("int", 400, "CSV resample count"),
    },
    "table1": {
        "c_o": ("float", 2.0, "spontaneous curvature"),
        "z_o_list": ("float_list", list(_TABLE1_ZO), "axis heights"),
    },
    "eigen": {
        "c_o": ("float", _REQUIRED, "spontaneous curvature"),
        "z_o": ("float", _REQUIRED, "axis height (< 0)"),
        "m": ("int", 1, "angular mode"),
        "count": ("int", 6, "eigenpair count"),
        "n": ("int", 1536, "mesh cells"),
        "eigenfunctions": ("bool", False, "also export eigenfunction CSV"),
    },
    "certify": {
        "R": ("float", _REQUIRED, "boundary circle radius"),
        "Z": ("float", _REQUIRED, "boundary circle height (< 0)"),
        "n": ("int", 1536, "eigen mesh cells"),
        "count": ("int", 6, "eigenpair count per mode"),
    },
    "mesh": {
        "kind": ("str", "revolve", "revolve | branch | family"),
        "c_o": ("float", None, "spontaneous curvature (kind=revolve)"),
        "z_o": ("float", None, "axis height (kind=revolve)"),
        "R": ("float", None, "circle radius (kind=branch|family)"),
        "Z": ("float", None, "circle height (kind=branch|family)"),
        "amplitude": ("float", 0.1, "perturbation amplitude"),
        "n_theta": ("int", 64, "angular resolution"),
        "n_profile": ("int", 200, "profile resolution"),
    },
}

_GLOBAL_SPECS = {
    "out": ("str", None, "output directory"),
    "rtol": ("float", 1e-10, "integrator relative tolerance"),
    "atol": ("float", 1e-12, "integrator absolute tolerance"),
}

RECIPES = ("fig1", "fig2", "fig3", "table1")


@dataclass(frozen=True)
class CommandConfig:
    """Fully resolved invocation: command name plus typed parameters."""

    command: str
    params: dict


def _spec_for(command):
    if command not in PARAM_SPECS:
        raise ParseError(f"unknown command: {command!r}")
    spec = dict(_GLOBAL_SPECS)
    spec.update(PARAM_SPECS[command])
    return spec


def _read_config_file(path):
    pairs = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ParseError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ParseError(f"{path}:{lineno}: empty key")
        if key in pairs:
            print(
                f"warning: {path}:{lineno}: duplicate key {key!r}, last value wins",
                file=sys.stderr,
            )
        pairs[key] = value
    return pairs


def load_config(path=None, command=None, flag_pairs=None):
    """Resolve a CommandConfig from a config file and/or flag overrides.

    The file is a flat ``key = value`` list (``#`` comments allowed) and may
    carry the ``command`` key; an explicitly given command wins over the
    file's.  Flags override file values.  Unknown keys are rejected.
    """
    file_pairs = _read_config_file(path) if path else {}
    file_command = file_pairs.pop("command", None)
    command = command or file_command
    if command is None:
        raise ParseError("no command given (flag or 'command =' in the config file)")
    spec = _spec_for(command)
    params = {}
    for source in (file_pairs, flag_pairs or {}):
        for key, value in source.items():
            if key not in spec:
                raise ParseError(f"unknown key {key!r} for command {command!r}")
            if value is None:
                continue
            typename = spec[key][0]
            try:
                params[key] = _CONVERTERS[typename](value)
            except (ValueError, TypeError) as exc:
                raise ParseError(f"bad value for {key!r}: {value!r} ({exc})") from exc
    for key, (typename, default, _help) in spec.items():
        if key not in params:
            if default is _REQUIRED:
                raise ParseError(f"missing required parameter {key!r}")
            params[key] = default
    if params["out"] is None:
        base = os.environ.get("MEMBRANELAB_OUT", "runs")
        params["out"] = os.path.join(base, command)
    return CommandConfig(command=command, params=params)


def _record(config, tolerances, derived, artifacts):
    return RunRecord(
        inputs={"command": config.command, **config.params},
        tolerances=tolerances,
        derived=derived,
        artifacts=artifacts,
        version=__version__,
    )


def _finish(config, outdir, tolerances, derived, artifacts):
    entry = export_json(
        _record(config, tolerances, derived, artifacts),
        os.path.join(outdir, "run_record.json"),
    )
    print(f"wrote {len(artifacts)} artifact(s) + {entry.path}")
    return 0


def _params_from(config):
    return ModelParams(config.params["c_o"], config.params["z_o"])


def _tolerances(config):
    return {"rtol": config.params["rtol"], "atol": config.params["atol"]}


def _rel(outdir, name):
    return os.path.join(outdir, name)


def _run_trace(config):
    p = config.params
    params = _params_from(config)
    if p["stop"] == "phi0":
        if not params.sigma0_admissible:
            raise NotAdmissible(
                f"z_o = {params.z_o} is not below -1/c_o = {-1.0 / params.c_o}: "
                "no tangential disc; use stop=arc for a partial trace"
            )
        stop = sigma0_stop()
    elif p["stop"] == "arc":
        stop = StopCondition.at_arc_length(p["arc"])
    else:
        raise ParseError(f"unknown stop kind {p['stop']!r}")
    curve = integrate_profile(params, stop, rtol=p["rtol"], atol=p["atol"])
    outdir = _ensure_out(p["out"])
    artifacts = [
        export_profile_csv(curve, _rel(outdir, "profile.csv"), n=p["samples"])
    ]
    derived = {
        "ell": curve.ell,
        "stop_reason": curve.stop_reason.value,
        "endpoint": list(curve.state_at(curve.ell)),
    }
    print(f"trace: ell = {curve.ell:.12g}, stop = {curve.stop_reason.value}")
    return _finish(config, outdir, _tolerances(config), derived, artifacts)


def _run_sigma0(config):
    p = config.params
    sig = shoot_sigma0(BoundaryCircle(p["R"], p["Z"]))
    outdir = _ensure_out(p["out"])
    artifacts = [
        export_profile_csv(sig.curve, _rel(outdir, "sigma0_profile.csv"), n=p["samples"])
    ]
    derived = {
        "c_o": sig.params.c_o,
        "z_o": sig.params.z_o,
        "ell": sig.curve.ell,
        "boundary_phi": sig.boundary_phi,
        "match_residual": sig.match_residual,
    }
    print(
        f"sigma0: c_o = {sig.params.c_o:.12g}, z_o = {sig.params.z_o:.12g}, "
        f"mismatch = {sig.match_residual:.3e}"
    )
    return _finish(config, outdir, _tolerances(config), derived, artifacts)


def _family_csv(members, path):
    lines = ["c,z_o,contact_angle,ell,match_residual"]
    for m in members:
        lines.append(
            ",".join(
                "%.17g" % v
                for v in (m.c, m.z_o, m.contact_angle, m.curve.ell, m.match_residual)
            )
        )
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return ArtifactEntry(kind="family", format="csv", path=str(path))


def _run_family(config):
    p = config.params
    circle = BoundaryCircle(p["R"], p["Z"])
    sweep = family_sweep(circle, p["c_min"], p["c_max"], p["n"])
    outdir = _ensure_out(p["out"])
    artifacts = [_family_csv(sweep.members, _rel(outdir, "family.csv"))]
    for i, m in enumerate(sweep.members):
        artifacts.append(
            export_profile_csv(
                m.curve, _rel(outdir, f"member_{i:02d}.csv"), n=p["samples"]
            )
        )
    derived = {
        "member_count": len(sweep.members),
        "failures": sweep.failures,
        "contact_angles": [m.contact_angle for m in sweep.members],
    }
    print(f"family: {len(sweep.members)} members, {len(sweep.failures)} failures")
    return _finish(config, outdir, _tolerances(config), derived, artifacts)


def _run_linearize(config):
    p = config.params
    params = _params_from(config)
    if not params.sigma0_admissible:
        raise NotAdmissible("linearize requires z_o < -1/c_o")
    curve = integrate_profile(params, sigma0_stop(), rtol=p["rtol"], atol=p["atol"])
    lin = solve_h(curve)
    outdir = _ensure_out(p["out"])
    taus = np.linspace(0.0, curve.ell, p["samples"])
    psi = lin.kernel.psi_at(taus)
    h = lin.h_at(taus)
    w = lin.w_at(taus)
    lines = ["tau,sigma,psi,h,w"]
    for row in zip(taus, curve.ell - taus, psi, h, w):
        lines.append(",".join("%.17g" % v for v in row))
    path = _rel(outdir, "linearized.csv")
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    artifacts = [ArtifactEntry(kind="linearized", format="csv", path=str(path))]
    derived = {"h_prime_boundary": lin.h_prime_boundary, "alpha": lin.alpha}
    print(f"linearize: h_prime_boundary = {lin.h_prime_boundary:.10g}")
    return _finish(config, outdir, _tolerances(config), derived, artifacts)


def _run_table1(config):
    p = config.params
    rows = []
    for z_o in p["z_o_list"]:
        params = ModelParams(p["c_o"], z_o)
        if not params.sigma0_admissible:
            raise NotAdmissible(f"z_o = {z_o} is not below -1/c_o")
        curve = integrate_profile(params, sigma0_stop(), rtol=p["rtol"], atol=p["atol"])
        lin = solve_h(curve)
        rows.append((p["c_o"], z_o, lin.h_prime_boundary, curve.taus.size))
        print(f"table1: z_o = {z_o:g}  h_prime_boundary = {lin.h_prime_boundary:.6f}")
    outdir = _ensure_out(p["out"])
    lines = ["c_o,z_o,h_prime_boundary"]
    for c_o, z_o, hp, _ns in rows:
        lines.append(",".join("%.17g" % v for v in (c_o, z_o, hp)))
    path = _rel(outdir, "table1.csv")
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    artifacts = [ArtifactEntry(kind="table", format="csv", path=str(path))]
    meta = {
        "tolerances": _tolerances(config),
        "tau0_factor": 1e-6,
        "sample_counts": {str(z): ns for (_c, z, _h, ns) in rows},
    }
    artifacts.append(export_json(meta, _rel(outdir, "table1_meta.json")))
    derived = {"h_prime_boundary": {str(z): h for (_c, z, h, _n) in rows}}
    return _finish(config, outdir, _tolerances(config), derived, artifacts)


def _run_eigen(config):
    p = config.params
    params = _params_from(config)
    if not params.sigma0_admissible:
        raise NotAdmissible("eigen requires z_o < -1/c_o")
    curve = integrate_profile(params, sigma0_stop(), rtol=p["rtol"], atol=p["atol"])
    res = eigen_solve(curve, p["m"], p["count"], n=p["n"])
    outdir = _ensure_out(p["out"])
    payload = {
        "m": res.m,
        "eigenvalues": res.eigenvalues.tolist(),
        "eigenvalues_fine": res.eigenvalues_fine.tolist(),
        "eigenvalues_coarse": res.eigenvalues_coarse.tolist(),
        "discrete_residuals": res.discrete_residuals.tolist(),
    }
    artifacts = [export_json(payload, _rel(outdir, "eigen.json"))]
    if p["eigenfunctions"]:
        lines = ["tau," + ",".join(f"u{k}" for k in range(p["count"]))]
        for i, t in enumerate(res.mesh):
            vals = [t] + [res.eigenfunctions[i, k] for k in range(p["count"])]
            lines.append(",".join("%.17g" % v for v in vals))
        path = _rel(outdir, "eigenfunctions.csv")
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
        artifacts.append(
            ArtifactEntry(kind="eigenfunctions", format="csv", path=str(path))
        )
    print(f"eigen m={res.m}: {np.array2string(res.eigenvalues, precision=8)}")
    return _finish(config, outdir, _tolerances(config), payload, artifacts)


def _run_certify(config):
    p = config.params
    sig = shoot_sigma0(BoundaryCircle(p["R"], p["Z"]))
    lin = solve_h(sig.curve)
    cert = certify(sig, lin, count=p["count"], n=p["n"])
    outdir = _ensure_out(p["out"])
    payload = {
        "verdict": cert.verdict,
        "conditions": cert.conditions,
        "kernel_dim_even": cert.kernel_dim_even,
        "h_prime_boundary": cert.h_prime_boundary,
        "m1_zero_residual": cert.m1_zero_residual,
        "m0_gap": cert.m0_gap,
        "m2_gap": cert.m2_gap,
        "diagnostics": cert.diagnostics,
        "sigma0": {"c_o": sig.params.c_o, "z_o": sig.params.z_o, "ell": sig.curve.ell},
    }
    artifacts = [export_json(payload, _rel(outdir, "certificate.json"))]
    derived = {"verdict": cert.verdict, "h_prime_boundary": cert.h_prime_boundary}
    print(f"certify: verdict = {cert.verdict}, conditions = {cert.conditions}")
    return _finish(config, outdir, _tolerances(config), derived, artifacts)


def _run_mesh(config):
    p = config.params
    outdir = _ensure_out(p["out"])
    if p["kind"] == "revolve":
        if p["c_o"] is None or p["z_o"] is None:
            raise ParseError("mesh kind=revolve needs c_o and z_o")
        params = _params_from(config)
        if not params.sigma0_admissible:
            raise NotAdmissible("mesh requires z_o < -1/c_o")
        curve = integrate_profile(params, sigma0_stop(), rtol=p["rtol"], atol=p["atol"])
        mesh = revolve(curve, p["n_theta"], p["n_profile"])
    elif p["kind"] in ("branch", "family"):
        if p["R"] is None or p["Z"] is None:
            raise ParseError(f"mesh kind={p['kind']} needs R and Z")
        sig = shoot_sigma0(BoundaryCircle(p["R"], p["Z"]))
        if p["kind"] == "branch":
            mesh = branch_linear_mesh(sig, p["amplitude"], p["n_theta"], p["n_profile"])
        else:
            lin = solve_h(sig.curve)
            mesh = family_linear_mesh(
                sig, lin, p["amplitude"], p["n_theta"], p["n_profile"]
            )
    else:
        raise ParseError(f"unknown mesh kind {p['kind']!r}")
    artifacts = [export_mesh_obj(mesh, _rel(outdir, f"{p['kind']}.obj"))]
    derived = {
        "vertices": int(mesh.vertices.shape[0]),
        "faces": int(mesh.faces.shape[0]),
        "euler_characteristic": int(mesh.euler_characteristic()),
        "amplitude": p["amplitude"],
    }
    print(f"mesh: {derived['vertices']} vertices, {derived['faces']} faces")
    return _finish(config, outdir, _tolerances(config), derived, artifacts)


_DISPATCH = {
    "trace": _run_trace,
    "sigma0": _run_sigma0,
    "family": _run_family,
    "linearize": _run_linearize,
    "table1": _run_table1,
    "eigen": _run_eigen,
    "certify": _run_certify,
    "mesh": _run_mesh,
}


def _ensure_out(outdir):
    os.makedirs(outdir, exist_ok=True)
    return outdir


def run(config):
    """Execute a resolved configuration; returns the process exit code."""
    return _DISPATCH[config.command](config)


def _run_recipe(name, out_base):
    if name == "table1":
        cfg = load_config(command="table1", flag_pairs={"out": out_base})
        return run(cfg)
    if name == "fig1":
        outdir = _ensure_out(out_base)
        artifacts = []
        for z_o in _TABLE1_ZO:
            curve = integrate_profile(ModelParams(2.0, z_o), sigma0_stop())
            tag = ("m%.2f" % -z_o).replace(".", "p")
            artifacts.append(
                export_profile_csv(curve, _rel(outdir, f"profile_{tag}.csv"), n=400)
            )
            artifacts.append(
                export_mesh_obj(revolve(curve, 64), _rel(outdir, f"surface_{tag}.obj"))
            )
        cfg = CommandConfig("table1", {"recipe": "fig1"})
        rec = RunRecord(
            inputs={"recipe": "fig1", "c_o": 2.0, "z_o_list": list(_TABLE1_ZO)},
            tolerances={"rtol": 1e-10, "atol": 1e-12},
            derived={"dashed_line": -0.5},
            artifacts=artifacts,
            version=__version__,
        )
        export_json(rec, _rel(outdir, "run_record.json"))
        print(f"fig1: wrote {len(artifacts)} artifacts to {outdir}")
        return 0
    if name == "fig2":
        outdir = _ensure_out(out_base)
        circle = BoundaryCircle(0.5, -3.0)
        sweep = family_sweep(circle, 1.2, 1.8, 13)
        artifacts = [_family_csv(sweep.members, _rel(outdir, "family.csv"))]
        for m in sweep.members:
            tag = ("c%.2f" % m.c).replace(".", "p")
            artifacts.append(
                export_profile_csv(m.curve, _rel(outdir, f"member_{tag}.csv"), n=400)
            )
            if any(abs(m.c - c) < 1e-9 for c in (1.8, 1.5, 1.3, 1.2)):
                artifacts.append(
                    export_mesh_obj(
                        revolve(m.curve, 64), _rel(outdir, f"surface_{tag}.obj")
                    )
                )
        rec = RunRecord(
            inputs={"recipe": "fig2", "R": 0.5, "Z": -3.0, "c_min": 1.2,
                    "c_max": 1.8, "n": 13},
            tolerances={"rtol": 1e-10, "atol": 1e-12},
            derived={"contact_angles": [m.contact_angle for m in sweep.members]},
            artifacts=artifacts,
            version=__version__,
        )
        export_json(rec, _rel(outdir, "run_record.json"))
        print(f"fig2: wrote {len(artifacts)} artifacts to {outdir}")
        return 0
    if name == "fig3":
        outdir = _ensure_out(out_base)
        sig = shoot_sigma0(BoundaryCircle(0.5, -3.0))
        artifacts = [
            export_profile_csv(sig.curve, _rel(outdir, "sigma0_profile.csv"), n=400),
            export_mesh_obj(revolve(sig.curve, 64), _rel(outdir, "sigma0.obj")),
        ]
        amplitudes = (-0.2, -0.1, 0.1, 0.2)
        for s in amplitudes:
            tag = ("s%+.2f" % s).replace(".", "p").replace("+", "p").replace("-", "m")
            artifacts.append(
                export_mesh_obj(
                    branch_linear_mesh(sig, s, 64), _rel(outdir, f"branch_{tag}.obj")
                )
            )
        rec = RunRecord(
            inputs={"recipe": "fig3", "R": 0.5, "Z": -3.0,
                    "amplitudes": list(amplitudes)},
            tolerances={"rtol": 1e-10, "atol": 1e-12},
            derived={"c_o": sig.params.c_o, "z_o": sig.params.z_o},
            artifacts=artifacts,
            version=__version__,
        )
        export_json(rec, _rel(outdir, "run_record.json"))
        print(f"fig3: wrote {len(artifacts)} artifacts to {outdir}")
        return 0
    raise ParseError(f"unknown recipe {name!r}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        sys.exit(1)


def _build_parser():
    parser = _Parser(prog="membranelab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--recipe", choices=RECIPES, help="run a bundled recipe")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--config", help="flat key = value configuration file")
    sub = parser.add_subparsers(dest="command")
    for command, spec in PARAM_SPECS.items():
        p = sub.add_parser(command, add_help=True)
        merged = dict(_GLOBAL_SPECS)
        merged.update(spec)
        for key, (_typename, default, help_text) in merged.items():
            if key == "out":
                continue
            p.add_argument(f"--{key}", help=help_text, default=None)
        p.add_argument("--config", help="flat key = value configuration file")
        p.add_argument("--out", help="output directory")
    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.recipe:
            out = args.out or os.path.join(
                os.environ.get("MEMBRANELAB_OUT", "runs"), args.recipe
            )
            return _run_recipe(args.recipe, out)
        flag_pairs = {}
        if args.command:
            spec = _spec_for(args.command)
            for key in spec:
                val = getattr(args, key, None)
                if val is not None:
                    flag_pairs[key] = val
        elif not args.config:
            print(
                "error: a command, --config with a command, or --recipe is required",
                file=sys.stderr,
            )
            return 1
        config = load_config(
            path=args.config, command=args.command, flag_pairs=flag_pairs
        )
        return run(config)
    except (ParseError, NotAdmissible, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except MembraneLabError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        if getattr(exc, "trace", None):
            for step in exc.trace[-5:]:
                print(f"  trace: {step}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
