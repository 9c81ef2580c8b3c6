"""Command-line front end.

Subcommands: uncertainty | gns | weyl | evolve | spectrum | classical.
Each reads a JSON config, writes machine-readable results plus a manifest
into the output directory, and exits 0 only if every contracted check
passed (1 check failure, 2 config error, 3 numerical failure).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .algebra import AlgebraElement, generate_algebra
from .classical import (
    ClassicalObservable,
    PhasePoint,
    config_observable,
    hamilton_flow,
    momentum_observable,
    poisson_bracket,
)
from .dynamics import (
    EvolutionConfig,
    RadialGrid,
    build_hamiltonian,
    eigen_spectrum,
    make_potential,
    radial_hydrogen_spectrum,
    run_trajectory,
)
from .errors import CstarmechError, InvalidInputError, NumericalError
from .gns import AbstractState, gns_construct, is_irreducible
from .sampling import random_density, random_selfadjoint
from .serialization import (
    dump_json,
    gns_result_to_json,
    matrix_from_json,
    trajectory_to_csv,
)
from .states import DensityState, is_pure, uncertainty_check
from .weyl import Grid1D, WaveFunction, clock_shift, grid_weyl_ops

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG_ERROR = 2
EXIT_NUMERICAL = 3


class ConfigError(Exception):
    pass


def _config_hash(cfg: dict) -> str:
    blob = json.dumps(cfg, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def _sidecar(path: Path, tolerances: dict, cfg_hash: str):
    dump_json({"tolerances": tolerances, "config_sha256": cfg_hash},
              path.with_suffix(path.suffix + ".meta.json"))


def _require(cfg: dict, key: str):
    if key not in cfg:
        raise ConfigError(f"config field {key!r} is required")
    return cfg[key]


# ---------------------------------------------------------------------------
# subcommands


def cmd_uncertainty(cfg: dict, out: Path, seed: int, jobs: int) -> int:
    dim = int(cfg.get("dim", 2))
    samples = int(cfg.get("samples", 1000))
    include_commuting = bool(cfg.get("include_commuting", False))
    if dim < 2 or samples < 1:
        raise ConfigError("dim must be >= 2 and samples >= 1")

    def one(i: int):
        rng = np.random.default_rng([seed, i])
        omega = random_density(rng, dim)
        a1 = random_selfadjoint(rng, dim)
        if include_commuting and i == 0:
            a2 = a1 @ a1  # commuting pair: rhs must vanish
        else:
            a2 = random_selfadjoint(rng, dim)
        rep = uncertainty_check(omega, a1, a2)
        return rep.lhs, rep.rhs, rep.lhs - rep.rhs

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(one, range(samples)))
    else:
        rows = [one(i) for i in range(samples)]

    arr = np.array(rows)
    csv_text = trajectory_to_csv(
        {"lhs": arr[:, 0], "rhs": arr[:, 1], "margin": arr[:, 2]}
    )
    (out / "uncertainty.csv").write_text(csv_text)
    violations = int(np.sum(arr[:, 2] < -1e-10))
    summary = {
        "dim": dim,
        "samples": samples,
        "violations": violations,
        "min_margin": float(arr[:, 2].min()),
    }
    dump_json(summary, out / "summary.json")
    cfg_hash = _config_hash(cfg)
    _sidecar(out / "uncertainty.csv", {"violation_tol": 1e-10}, cfg_hash)
    _sidecar(out / "summary.json", {"violation_tol": 1e-10}, cfg_hash)
    return EXIT_OK if violations == 0 else EXIT_CHECK_FAILED


def cmd_gns(cfg: dict, out: Path, seed: int, jobs: int) -> int:
    gens_json = _require(cfg, "generators")
    state_json = _require(cfg, "state")
    tol = float(cfg.get("tol", 1e-10))
    try:
        gens = [AlgebraElement(matrix_from_json(g)) for g in gens_json]
        density = DensityState(matrix_from_json(_require(state_json, "density")))
    except (InvalidInputError, KeyError, TypeError) as exc:
        raise ConfigError(f"bad algebra/state description: {exc}") from exc

    basis = generate_algebra(gens, tol)
    omega = AbstractState.from_density(basis, density)
    result = gns_construct(omega)

    recon = np.array(
        [
            np.vdot(result.cyclic_vector, r @ result.cyclic_vector)
            for r in result.rep
        ]
    )
    recon_err = float(np.abs(recon - omega.values).max())
    irreducible = is_irreducible(result.rep)
    pure = is_pure(density)

    dump_json(gns_result_to_json(result), out / "gns_result.json")
    verdicts = {
        "hilbert_dim": result.hilbert_dim,
        "reconstruction_max_error": recon_err,
        "irreducible": bool(irreducible),
        "pure": bool(pure),
    }
    dump_json(verdicts, out / "verdicts.json")
    cfg_hash = _config_hash(cfg)
    _sidecar(out / "gns_result.json", {"rank_tol": result.gram_rank_tol}, cfg_hash)
    _sidecar(out / "verdicts.json", {"reconstruction_tol": 1e-9}, cfg_hash)

    ok = recon_err <= 1e-9 and irreducible == pure
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_weyl(cfg: dict, out: Path, seed: int, jobs: int) -> int:
    report = {}
    ok = True

    if "n" in cfg:
        n = int(cfg["n"])
        pair = clock_shift(n)
        zeta = pair.zeta
        rel = float(np.linalg.norm(pair.U @ pair.V - zeta * pair.V @ pair.U, 2))
        uni = float(np.linalg.norm(pair.U @ pair.U.conj().T - np.eye(n), 2))
        cyc = float(
            max(
                np.linalg.norm(np.linalg.matrix_power(pair.U, n) - np.eye(n), 2),
                np.linalg.norm(np.linalg.matrix_power(pair.V, n) - np.eye(n), 2),
            )
        )
        report["clock_shift"] = {
            "n": n,
            "relation_residual": rel,
            "unitarity_residual": uni,
            "order_residual": cyc,
        }
        ok = ok and rel <= 1e-12 * n and uni <= 1e-12 and cyc <= 1e-10 * n

    if "grid" in cfg:
        g = cfg["grid"]
        grid = Grid1D(N=int(_require(g, "N")), L=float(_require(g, "L")))
        alpha = float(cfg.get("alpha", 2 * np.pi / grid.L))
        beta = float(cfg.get("beta", grid.dx))
        u, v = grid_weyl_ops(grid, alpha, beta)
        phase = np.exp(-1j * alpha * beta)
        rel = float(np.linalg.norm(u @ v - phase * v @ u, 2))
        report["grid"] = {
            "N": grid.N,
            "L": grid.L,
            "alpha": alpha,
            "beta": beta,
            "relation_residual": rel,
        }
        ok = ok and rel <= 1e-10

    if not report:
        raise ConfigError("weyl config needs 'n' and/or 'grid'")
    dump_json(report, out / "weyl_report.json")
    _sidecar(out / "weyl_report.json",
             {"clock_shift_tol": 1e-12, "grid_tol": 1e-10}, _config_hash(cfg))
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _grid_from_cfg(cfg: dict) -> Grid1D:
    g = _require(cfg, "grid")
    return Grid1D(N=int(_require(g, "N")), L=float(_require(g, "L")))


def _potential_from_cfg(cfg: dict):
    p = _require(cfg, "potential")
    return make_potential(_require(p, "name"), **p.get("params", {}))


def cmd_evolve(cfg: dict, out: Path, seed: int, jobs: int) -> int:
    grid = _grid_from_cfg(cfg)
    potential = _potential_from_cfg(cfg)
    run = EvolutionConfig(
        dt=float(_require(cfg, "dt")),
        t_final=float(_require(cfg, "t_final")),
        potential=potential,
    )
    init = cfg.get("initial", {})
    psi0 = WaveFunction.gaussian(
        grid,
        x0=float(init.get("x0", 0.0)),
        p0=float(init.get("p0", 0.0)),
        sigma=float(init.get("sigma", 1.0)),
    )
    _, traj = run_trajectory(psi0, run)
    csv_text = trajectory_to_csv(
        {
            "t": traj.times,
            "x_mean": traj.x_mean,
            "p_mean": traj.p_mean,
            "energy": traj.energy,
            "norm": traj.norm,
        }
    )
    (out / "trajectory.csv").write_text(csv_text)
    norm_drift = float(np.abs(traj.norm - 1.0).max())
    e0 = traj.energy[0]
    energy_drift = float(np.abs(traj.energy - e0).max() / max(abs(e0), 1e-30))
    summary = {"norm_drift": norm_drift, "energy_drift_rel": energy_drift}
    dump_json(summary, out / "evolve_summary.json")
    cfg_hash = _config_hash(cfg)
    tols = {"norm_drift": 1e-8, "energy_drift_rel": 1e-6}
    _sidecar(out / "trajectory.csv", tols, cfg_hash)
    _sidecar(out / "evolve_summary.json", tols, cfg_hash)
    ok = norm_drift <= 1e-8 and energy_drift <= 1e-6
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_spectrum(cfg: dict, out: Path, seed: int, jobs: int) -> int:
    kind = cfg.get("kind", "grid")
    if kind == "grid":
        grid = _grid_from_cfg(cfg)
        potential = _potential_from_cfg(cfg)
        k = int(cfg.get("k", 5))
        h = build_hamiltonian(grid, potential)
        vals = eigen_spectrum(h, k)
    elif kind == "radial":
        rgrid = RadialGrid(
            r_max=float(_require(cfg, "r_max")), M=int(_require(cfg, "M"))
        )
        k = int(cfg.get("k", 3))
        vals = radial_hydrogen_spectrum(rgrid, k)
    else:
        raise ConfigError(f"unknown spectrum kind {kind!r}")

    dump_json({"kind": kind, "eigenvalues": [float(v) for v in vals]},
              out / "spectrum.json")
    ok = True
    if "expect" in cfg:
        expected = np.asarray(_require(cfg["expect"], "values"), dtype=float)
        tol = float(cfg["expect"].get("tol", 1e-4))
        rel = bool(cfg["expect"].get("relative", False))
        err = np.abs(vals[: expected.size] - expected)
        if rel:
            err = err / np.abs(expected)
        ok = bool(np.all(err <= tol))
        dump_json(
            {"max_error": float(err.max()), "tol": tol, "relative": rel, "ok": ok},
            out / "spectrum_check.json",
        )
        _sidecar(out / "spectrum_check.json", {"tol": tol}, _config_hash(cfg))
    _sidecar(out / "spectrum.json", {}, _config_hash(cfg))
    return EXIT_OK if ok else EXIT_CHECK_FAILED


_BRACKET_TOL = 1e-6


def cmd_classical(cfg: dict, out: Path, seed: int, jobs: int) -> int:
    points = int(cfg.get("points", 100))
    rng = np.random.default_rng(seed)

    x_obs = config_observable(lambda q: q[0], "X")
    px_obs = momentum_observable(lambda q: np.array([1.0, 0.0, 0.0]), "P_X")
    f1 = config_observable(lambda q: q[0] ** 2 + q[1], "Q(f1)")
    f2 = config_observable(lambda q: np.sin(q[2]) + q[0] * q[1], "Q(f2)")
    lx = momentum_observable(lambda q: np.array([0.0, -q[2], q[1]]), "L_X")
    ly = momentum_observable(lambda q: np.array([q[2], 0.0, -q[0]]), "L_Y")
    lz = momentum_observable(lambda q: np.array([-q[1], q[0], 0.0]), "L_Z")

    rows = []
    worst = 0.0
    for i in range(points):
        z = PhasePoint(rng.uniform(-2, 2, 3), rng.uniform(-2, 2, 3))
        for label, lhs_val, rhs_val in (
            ("{X,P_X}=1", poisson_bracket(x_obs, px_obs, z), 1.0),
            ("{Q,Q}=0", poisson_bracket(f1, f2, z), 0.0),
            ("{L_X,L_Y}=L_Z", poisson_bracket(lx, ly, z), lz(z)),
        ):
            err = abs(lhs_val - rhs_val)
            worst = max(worst, err)
            rows.append((label, i, lhs_val, rhs_val, err))

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["relation", "point", "lhs", "rhs", "abs_err"])
    for label, i, lhs_val, rhs_val, err in rows:
        writer.writerow([label, i, repr(lhs_val), repr(rhs_val), repr(err)])
    (out / "bracket_table.csv").write_text(buf.getvalue())

    # harmonic trajectory with analytic gradients
    h_obs = ClassicalObservable(
        lambda z: 0.5 * float(z.p @ z.p + z.q @ z.q),
        "harmonic",
        gradient=lambda z: (z.q, z.p),
    )
    dt = float(cfg.get("dt", 1e-2))
    steps = int(cfg.get("steps", 10000))
    z0 = PhasePoint(np.array([1.0]), np.array([0.0]))
    times, traj = hamilton_flow(h_obs, z0, dt, steps)
    energies = np.array([h_obs(z) for z in traj])
    csv_text = trajectory_to_csv(
        {
            "t": times,
            "q": np.array([z.q[0] for z in traj]),
            "p": np.array([z.p[0] for z in traj]),
            "H": energies,
        }
    )
    (out / "harmonic_trajectory.csv").write_text(csv_text)
    drift = float(np.abs(energies - energies[0]).max())

    dump_json(
        {"max_bracket_error": worst, "energy_drift": drift},
        out / "classical_summary.json",
    )
    cfg_hash = _config_hash(cfg)
    tols = {"bracket_tol": _BRACKET_TOL, "energy_drift_tol": 1e-4}
    for name in ("bracket_table.csv", "harmonic_trajectory.csv", "classical_summary.json"):
        _sidecar(out / name, tols, cfg_hash)
    ok = worst <= _BRACKET_TOL and drift < 1e-4
    return EXIT_OK if ok else EXIT_CHECK_FAILED


COMMANDS = {
    "uncertainty": cmd_uncertainty,
    "gns": cmd_gns,
    "weyl": cmd_weyl,
    "evolve": cmd_evolve,
    "spectrum": cmd_spectrum,
    "classical": cmd_classical,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cstarmech",
        description="Run desk-scale demonstrations and checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="JSON config path")
        p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--seed", type=int, default=None,
                       help="overrides the config seed (default: config, else 0)")
        p.add_argument("--jobs", type=int, default=1)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    start = time.monotonic()
    try:
        with open(args.config) as fh:
            cfg = json.load(fh)
        if not isinstance(cfg, dict):
            raise ConfigError("config root must be a JSON object")
        if args.jobs < 1:
            raise ConfigError("--jobs must be >= 1")
    except (OSError, json.JSONDecodeError, ConfigError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    seed = args.seed if args.seed is not None else int(cfg.get("seed", 0))

    try:
        code = COMMANDS[args.command](cfg, out, seed, args.jobs)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except CstarmechError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR

    manifest = {
        "command": args.command,
        "config_path": str(args.config),
        "config_sha256": _config_hash(cfg),
        "seed": seed,
        "out_dir": str(out),
        "version": __version__,
        "duration_s": round(time.monotonic() - start, 6),
        "exit_code": code,
    }
    dump_json(manifest, out / "manifest.json")
    if code == EXIT_CHECK_FAILED:
        print(f"{args.command}: contracted check failed", file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
