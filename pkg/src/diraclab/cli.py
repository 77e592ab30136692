"""Command-line entry point: config-driven, reproducible experiments.

Subcommands: identities, certify, norms, evolve, spectrum.  Every run takes a
JSON config validated against a strict schema (unknown keys rejected), writes
machine-readable outputs under --out, and uses the exit-code contract

    0  all checks passed / certificate affirmative
    2  certificate INCONCLUSIVE
    1  error (schema violation, bad inputs, runtime failure)

so certificates compose in shell pipelines.  Outputs are deterministic for a
fixed config and seed.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import jsonschema
import numpy as np

from .clifford import build_dirac_matrices
from .grid import GridSpec
from .identities import run_identity_suite
from .multipliers import local_smoothing_profile
from .norms import c_delta, norm_report, verify_hardy, verify_weighted_bounds
from .potentials import (
    RadialMesh,
    certify_smoothing,
    certify_stationary,
    extract_constants,
    from_config,
    verify_virial_on_eigenstate,
)
from .evolution import (
    EvolutionConfig,
    eigensolve,
    fit_frequency,
    run_evolution,
    zitterbewegung_trace,
)
from .states import plane_wave_spinor, random_envelope_field

SCHEMA_VERSION = 1

_POTENTIAL_SCHEMA = {
    "type": ["object", "null"],
    "additionalProperties": False,
    "required": ["name"],
    "properties": {
        "name": {"type": "string"},
        "couplings": {"type": "object"},
    },
}

_GRID_PROPS = {
    "d": {"type": "integer", "minimum": 1},
    "n": {"type": "integer", "minimum": 4},
    "half_length": {"type": "number", "exclusiveMinimum": 0},
}

SCHEMAS = {
    "identities": {
        "type": "object",
        "additionalProperties": False,
        "properties": {
            **_GRID_PROPS,
            "mass": {"type": "number", "minimum": 0},
            "pairs": {"type": "integer", "minimum": 3},
            "grid_tol": {"type": "number", "exclusiveMinimum": 0},
            "corrupt_beta": {"type": "boolean"},
        },
    },
    "certify": {
        "type": "object",
        "additionalProperties": False,
        "required": ["d", "mass", "potential", "mode"],
        "properties": {
            "d": {"type": "integer", "minimum": 1},
            "mass": {"type": "number", "minimum": 0},
            "potential": _POTENTIAL_SCHEMA,
            "mode": {"enum": ["stationary", "smoothing"]},
            "epsilon": {"type": "number"},
            "mesh": {
                "type": "object",
                "additionalProperties": False,
                "properties": {
                    "r_min": {"type": "number", "exclusiveMinimum": 0},
                    "r_max": {"type": "number", "exclusiveMinimum": 0},
                    "points": {"type": "integer", "minimum": 100},
                },
            },
        },
    },
    "norms": {
        "type": "object",
        "additionalProperties": False,
        "properties": {
            **_GRID_PROPS,
            "fields": {"type": "integer", "minimum": 1},
            "delta": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 0.5},
            "components": {"type": "integer", "minimum": 1},
        },
    },
    "evolve": {
        "type": "object",
        "additionalProperties": False,
        "required": ["d", "n", "half_length", "mass", "dt", "t_max"],
        "properties": {
            **_GRID_PROPS,
            "mass": {"type": "number", "minimum": 0},
            "dt": {"type": "number", "exclusiveMinimum": 0},
            "t_max": {"type": "number", "exclusiveMinimum": 0},
            "cadence": {"type": "integer", "minimum": 1},
            "potential": _POTENTIAL_SCHEMA,
            "multiplier_radius": {"type": "number", "exclusiveMinimum": 0},
            "initial": {
                "type": "object",
                "additionalProperties": False,
                "required": ["kind"],
                "properties": {
                    "kind": {"enum": ["random_envelope", "zitterbewegung"]},
                    "kfrac": {"type": "number"},
                    "sigma": {"type": "number"},
                    "kvec": {"type": "array", "items": {"type": "integer"}},
                    "branch_mix": {"type": "boolean"},
                },
            },
        },
    },
    "spectrum": {
        "type": "object",
        "additionalProperties": False,
        "required": ["d", "n", "half_length", "mass", "potential"],
        "properties": {
            **_GRID_PROPS,
            "mass": {"type": "number", "minimum": 0},
            "potential": _POTENTIAL_SCHEMA,
            "count": {"type": "integer", "minimum": 1},
            "window": {"type": "array", "items": {"type": "number"}},
            "degree": {"type": "integer", "minimum": 4},
            "tol": {"type": "number", "exclusiveMinimum": 0},
        },
    },
}


def _load_config(command: str, path: str | None, quick: bool) -> dict:
    cfg = {}
    if path is not None:
        with open(path) as fh:
            cfg = json.load(fh)
    jsonschema.validate(cfg, SCHEMAS[command])
    if quick:
        cfg = {**cfg, **_QUICK_OVERRIDES.get(command, {})}
    return cfg


_QUICK_OVERRIDES = {
    "identities": {"d": 1, "n": 64, "pairs": 60},
    "norms": {"fields": 5, "n": 32},
    "evolve": {"n": 16, "t_max": 0.2, "dt": 0.02, "cadence": 2},
    "spectrum": {"n": 16, "degree": 30},
}


def _write_json(out_dir: Path, name: str, payload: dict):
    out_dir.mkdir(parents=True, exist_ok=True)
    payload = {"schema_version": SCHEMA_VERSION, **payload}
    with open(out_dir / name, "w") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")


def _fmt(x: float) -> str:
    return repr(float(x))


@click.group()
def main():
    """Numerical laboratory for perturbed Dirac operators."""


def _common_options(fn):
    fn = click.option("--config", "config_path", type=click.Path(exists=True),
                      default=None, help="JSON config file")(fn)
    fn = click.option("--out", "out_dir", type=click.Path(), default="out",
                      help="output directory")(fn)
    fn = click.option("--seed", type=int, default=0, help="RNG seed")(fn)
    fn = click.option("--quick", is_flag=True, help="small, fast settings")(fn)
    fn = click.option("--dry-run", is_flag=True,
                      help="print the resolved config and exit")(fn)
    return fn


def _resolve_or_exit(command, config_path, quick):
    try:
        return _load_config(command, config_path, quick)
    except (jsonschema.ValidationError, json.JSONDecodeError) as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(1)


@main.command()
@_common_options
def identities(config_path, out_dir, seed, quick, dry_run):
    """Run the operator-identity verification suite."""
    cfg = _resolve_or_exit("identities", config_path, quick)
    params = {
        "d": cfg.get("d", 3),
        "n": cfg.get("n", 64),
        "half_length": cfg.get("half_length", 12.0),
        "m": cfg.get("mass", 1.0),
        "pairs": cfg.get("pairs", 1000),
        "grid_tol": cfg.get("grid_tol", 1e-6),
        "corrupt_beta": cfg.get("corrupt_beta", False),
        "seed": seed,
    }
    if dry_run:
        click.echo(json.dumps(params, sort_keys=True))
        return
    entries = run_identity_suite(**params)
    ok = all(e["pass"] for e in entries)
    _write_json(Path(out_dir), "identities.json",
                {"entries": entries, "all_pass": ok, "params": params})
    for e in entries:
        click.echo(
            f"{'PASS' if e['pass'] else 'FAIL'} {e['name']}: "
            f"residual {e['residual']:.3e} (tol {e['tolerance']:.0e})"
        )
    if not ok:
        failing = [e["name"] for e in entries if not e["pass"]]
        click.echo(f"failing identities: {', '.join(failing)}", err=True)
        sys.exit(1)


@main.command()
@_common_options
def certify(config_path, out_dir, seed, quick, dry_run):
    """Evaluate an eigenvalue-exclusion or smoothing certificate."""
    cfg = _resolve_or_exit("certify", config_path, quick)
    if dry_run:
        click.echo(json.dumps(cfg, sort_keys=True))
        return
    try:
        d = cfg["d"]
        m = cfg["mass"]
        rep = build_dirac_matrices(d)
        pot = from_config(rep, cfg["potential"]["name"],
                          cfg["potential"].get("couplings", {}))
        mesh_cfg = cfg.get("mesh", {})
        mesh = RadialMesh(
            r_min=mesh_cfg.get("r_min", 1e-6),
            r_max=mesh_cfg.get("r_max", 1e6),
            points=mesh_cfg.get("points", 20000),
        )
        if cfg["mode"] == "stationary":
            constants = extract_constants(pot, "stationary", mesh=mesh)
            cert = certify_stationary(d, m, pot, constants)
        else:
            epsilon = cfg.get("epsilon", 0.25)
            family = "evolutionary-3d" if d == 3 else "evolutionary-highd"
            constants = extract_constants(pot, family, epsilon=epsilon, mesh=mesh)
            cert = certify_smoothing(d, m, pot, constants, epsilon)
    except (ValueError, KeyError) as exc:
        click.echo(f"certify error: {exc}", err=True)
        sys.exit(1)
    _write_json(Path(out_dir), "certificate.json", cert.to_dict())
    click.echo(f"{cert.theorem}: {cert.verdict}")
    for q in cert.inequalities:
        click.echo(f"  {q['name']}: lhs {_fmt(q['lhs'])} < rhs {_fmt(q['rhs'])}"
                   f" -> {'ok' if q['holds'] else 'violated'}")
    if cert.verdict == "INCONCLUSIVE":
        sys.exit(2)


@main.command()
@_common_options
def norms(config_path, out_dir, seed, quick, dry_run):
    """Run the norm-comparison suite on a random field corpus."""
    cfg = _resolve_or_exit("norms", config_path, quick)
    params = {
        "d": cfg.get("d", 3),
        "n": cfg.get("n", 48),
        "half_length": cfg.get("half_length", 12.0),
        "fields": cfg.get("fields", 50),
        "delta": cfg.get("delta", 0.25),
        "components": cfg.get("components", 1),
    }
    if dry_run:
        click.echo(json.dumps(params, sort_keys=True))
        return
    grid = GridSpec(d=params["d"], n=params["n"], half_length=params["half_length"])
    rng = np.random.default_rng(seed)
    reports, ok = [], True
    for _ in range(params["fields"]):
        u = random_envelope_field(grid, params["components"], rng,
                                  kfrac=0.25, sigma=params["half_length"] / 6.0)
        rpt = norm_report(u, delta=params["delta"])
        holds = (
            rpt.weighted.lhs_morrey <= rpt.weighted.rhs_morrey * (1 + 1e-6)
            and rpt.weighted.lhs_spherical <= rpt.weighted.rhs_spherical * (1 + 1e-6)
        )
        if params["d"] >= 3:
            holds = holds and rpt.hardy_lhs <= rpt.hardy_rhs * (1 + 1e-6)
        ok = ok and holds
        reports.append({**rpt.to_dict(), "holds": holds})
    series = c_delta(params["delta"])
    _write_json(Path(out_dir), "norms.json", {
        "params": params,
        "c_delta_squared": series.partial_sq,
        "c_delta_tail": series.tail_sq,
        "reports": reports,
        "all_hold": ok,
    })
    click.echo(f"{params['fields']} fields, all bounds hold: {ok}")
    if not ok:
        sys.exit(1)


@main.command()
@_common_options
def evolve(config_path, out_dir, seed, quick, dry_run):
    """Propagate and record conservation and smoothing diagnostics."""
    cfg = _resolve_or_exit("evolve", config_path, quick)
    if dry_run:
        click.echo(json.dumps(cfg, sort_keys=True))
        return
    try:
        d = cfg["d"]
        rep = build_dirac_matrices(d)
        grid = GridSpec(d=d, n=cfg["n"], half_length=cfg["half_length"])
        m = cfg["mass"]
        pot = None
        if cfg.get("potential"):
            pot = from_config(rep, cfg["potential"]["name"],
                              cfg["potential"].get("couplings", {}))
        init = cfg.get("initial", {"kind": "random_envelope"})
        rng = np.random.default_rng(seed)
        if init["kind"] == "zitterbewegung":
            kvec = tuple(init.get("kvec", [1] + [0] * (d - 1)))
            up, lam_p = plane_wave_spinor(grid, rep, kvec, m, branch=+1)
            if init.get("branch_mix", True):
                um, _ = plane_wave_spinor(grid, rep, kvec, m, branch=-1)
                psi0 = (up + um) * (1.0 / np.sqrt(2.0))
            else:
                psi0 = up
            trace = zitterbewegung_trace(psi0, m, rep, cfg["t_max"], cfg["dt"])
            omega, amp = fit_frequency(trace.times, trace.position[:, 0])
            expected = 2.0 * abs(lam_p)
            _write_csv(Path(out_dir) / "zitterbewegung.csv",
                       ["t"] + [f"x{j+1}" for j in range(d)]
                       + [f"v{j+1}" for j in range(d)],
                       np.column_stack([trace.times, trace.position, trace.velocity]))
            _write_json(Path(out_dir), "summary.json", {
                "kind": "zitterbewegung",
                "fitted_omega": omega,
                "expected_omega": expected,
                "relative_error": abs(omega - expected) / expected,
                "amplitude": amp,
            })
            click.echo(f"fitted omega {omega:.6f} vs 2 E_p {expected:.6f}")
            return
        psi0 = random_envelope_field(
            grid, rep.N, rng,
            kfrac=init.get("kfrac", 0.25),
            sigma=init.get("sigma", cfg["half_length"] / 6.0),
        )
        run_cfg = EvolutionConfig(
            grid=grid, rep=rep, m=m, psi0=psi0, dt=cfg["dt"],
            t_max=cfg["t_max"], pot=pot, cadence=cfg.get("cadence", 1),
            profile=local_smoothing_profile(d, cfg.get("multiplier_radius", 1.0)),
        )
        series = run_evolution(run_cfg)
    except (ValueError, KeyError) as exc:
        click.echo(f"evolve error: {exc}", err=True)
        sys.exit(1)
    header = (
        ["t", "mass", "hamiltonian", "hd_norm_sq"]
        + [f"x{j+1}" for j in range(d)]
        + ["sup_ball", "weight_l3", "tangential", "sup_sphere", "tterm", "tterm_bound"]
    )
    table = np.column_stack([
        series.times, series.mass, series.hamiltonian, series.hd_norm_sq,
        series.position,
        series.smooth_ball, series.smooth_weight, series.smooth_tangential,
        series.smooth_sphere, series.tterm, series.tterm_bound,
    ])
    _write_csv(Path(out_dir) / "diagnostics.csv", header, table)
    mass_dev = float(np.max(np.abs(series.mass - series.mass[0])) / series.mass[0])
    ham_dev = float(
        np.max(np.abs(series.hamiltonian - series.hamiltonian[0]))
        / series.hamiltonian[0]
    )
    tterm_ok = bool(np.all(np.abs(series.tterm) <= series.tterm_bound * (1 + 1e-9)))
    summary = {
        "kind": "evolution",
        "aborted": series.aborted,
        "mass_deviation": mass_dev,
        "hamiltonian_deviation": ham_dev,
        "mass_conserved": mass_dev <= 1e-12,
        "hamiltonian_conserved": ham_dev <= 1e-12,
        "pairing_bound_ok": tterm_ok,
        "smoothing_final": {
            "sup_ball": float(series.smooth_ball[-1]),
            "weight_l3": float(series.smooth_weight[-1]),
            "tangential": float(series.smooth_tangential[-1]),
            "sup_sphere": float(series.smooth_sphere[-1]),
        },
        "smoothing_ratio": float(
            series.smoothing_lhs(d)[-1] / series.hamiltonian[0]
        ),
        "finite_horizon_note": (
            "smoothing functionals are finite-horizon values inside the "
            "wraparound-safe window; no infinite-time claim"
        ),
    }
    if pot is not None and pot.kato_a is not None and pot.kato_a < 1:
        bound = series.hamiltonian[0] / (1.0 - pot.kato_a) ** 2
        summary["energy_bound_ok"] = bool(
            np.all(series.hd_norm_sq <= bound * (1 + 1e-9))
        )
    _write_json(Path(out_dir), "summary.json", summary)
    click.echo(json.dumps(summary, sort_keys=True))


@main.command()
@_common_options
def spectrum(config_path, out_dir, seed, quick, dry_run):
    """Search the spectral gap and verify the virial identity on eigenpairs."""
    cfg = _resolve_or_exit("spectrum", config_path, quick)
    if dry_run:
        click.echo(json.dumps(cfg, sort_keys=True))
        return
    try:
        d = cfg["d"]
        rep = build_dirac_matrices(d)
        grid = GridSpec(d=d, n=cfg["n"], half_length=cfg["half_length"])
        m = cfg["mass"]
        pot = None
        if cfg.get("potential"):
            pot = from_config(rep, cfg["potential"]["name"],
                              cfg["potential"].get("couplings", {}))
        window = tuple(cfg.get("window", (-0.99 * m, 0.99 * m)))
        report = eigensolve(
            grid, m, rep, pot,
            count=cfg.get("count", 2),
            window=window,
            degree=cfg.get("degree", 60),
            tol=cfg.get("tol", 1e-8),
            seed=seed,
        )
        manifest = []
        for pair in report.pairs:
            if pot is not None:
                vr = verify_virial_on_eigenstate(pair.state, pair.lam, m, rep, pot)
                manifest.append({
                    "lambda": pair.lam,
                    "residual": pair.residual,
                    "virial_residual": vr.residual,
                    "terms": vr.terms,
                    "chain_holds": vr.chain_holds,
                })
            else:
                manifest.append({"lambda": pair.lam, "residual": pair.residual})
    except (ValueError, KeyError, RuntimeError) as exc:
        click.echo(f"spectrum error: {exc}", err=True)
        sys.exit(1)
    _write_json(Path(out_dir), "spectrum.json", {
        "window": list(report.window),
        "pairs": manifest,
        "converged": report.converged,
        "sweeps": report.sweeps,
    })
    click.echo(f"{len(manifest)} eigenpairs in window {report.window}")


def _write_csv(path: Path, header: list, table: np.ndarray):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in np.atleast_2d(table):
            fh.write(",".join(repr(float(x)) for x in row) + "\n")


if __name__ == "__main__":
    main()
