"""Batch front end: `krylovflow run <config.json>` and `krylovflow compare`.

One config file drives one command; sweeps are grids inside the config.
Artifacts are deterministic given config + seed, and every run ends by
writing a manifest listing each emitted file with its hash. On any failure
the partially written artifacts are removed and the exit code states the
failure class: 2 config, 3 domain, 4 resource cap, 1 anything else.
"""
import argparse
import hashlib
import itertools
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import (ConfigError, DomainError, InvalidParameter, KrylovflowError,
                     ResourceLimit, SchemaMismatch)
from .exact import AlgebraSpec, exact_coefficients, exact_complexity
from .krylov import TridiagonalOperator, evolve_grid, stieltjes_lanczos
from .measure import (Deformation, SpectralMeasure, deform, fully_connected_ising,
                      ising_2d_dos)
from .observables import (TimeSeries, krylov_entropy, lee_yang_boundary, rate_function,
                          spread_complexity, survival_amplitude,
                          time_averaged_complexity, time_averaged_complexity_quadrature)
from .rmt import EnsembleSpec, Experiment, ensemble_average
from .serialize import (compare_tables, read_chain_csv, read_measure_csv,
                        write_averaged_csv, write_chain_csv, write_curve_csv,
                        write_json, write_measure_csv, write_paired_csv,
                        write_timeseries_csv, write_trajectory_csv, _write_rows, _fmt)
from .susy import (alternating_susy_complexity, paired_evolution, sector_operators,
                   shape_invariance_check, susy_from_b, zero_mode_count)
from .toda import flow

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_DOMAIN = 3
EXIT_RESOURCE = 4

COMMANDS = ("lanczos", "toda-flow", "complexity", "survival", "time-average",
            "ising", "rmt", "susy", "exact")
ENV_OUT_DIR = "KRYLOVFLOW_OUT"


class _Run:
    """Tracks emitted files so failures can clean up after themselves."""

    def __init__(self, out_dir, base_dir, threads, seed):
        self.out_dir = Path(out_dir)
        self.base_dir = Path(base_dir)
        self.threads = threads
        self.seed = seed
        self.files = []

    def path(self, name):
        p = self.out_dir / name
        self.files.append(p)
        return p

    def resolve(self, relpath):
        p = Path(relpath)
        return p if p.is_absolute() else self.base_dir / p

    def cleanup(self):
        for p in self.files:
            try:
                p.unlink(missing_ok=True)
            except OSError:
                pass


def _fail(msg):
    raise ConfigError(msg)


def _get(cfg, key, types, required=True, default=None, what="config"):
    if key not in cfg:
        if required:
            _fail(f"{what}: missing key '{key}'")
        return default
    val = cfg[key]
    if types is not None and not isinstance(val, types):
        _fail(f"{what}: key '{key}' has wrong type {type(val).__name__}")
    if isinstance(val, bool) and types is not None and bool not in (
            types if isinstance(types, tuple) else (types,)):
        _fail(f"{what}: key '{key}' has wrong type bool")
    return val


def _number(cfg, key, required=True, default=None, what="config"):
    v = _get(cfg, key, (int, float), required, default, what)
    if isinstance(v, bool):
        _fail(f"{what}: key '{key}' must be a number")
    if v is not None and not math.isfinite(float(v)):
        _fail(f"{what}: key '{key}' must be finite")
    return None if v is None else float(v)


def _grid(spec, what):
    """A grid is an explicit list or {start, stop, num[, spacing]}; it must
    be finite, non-empty and strictly increasing."""
    if isinstance(spec, (list, tuple)):
        arr = np.asarray(spec, dtype=np.float64)
    elif isinstance(spec, dict):
        start = _number(spec, "start", what=what)
        stop = _number(spec, "stop", what=what)
        num = _get(spec, "num", int, what=what)
        spacing = _get(spec, "spacing", str, required=False, default="linear", what=what)
        if num < 1:
            _fail(f"{what}: num must be >= 1")
        if spacing == "linear":
            arr = np.linspace(start, stop, num)
        elif spacing == "log":
            if start <= 0 or stop <= 0:
                _fail(f"{what}: log spacing needs positive bounds")
            arr = np.geomspace(start, stop, num)
        else:
            _fail(f"{what}: unknown spacing '{spacing}'")
    else:
        _fail(f"{what}: grid must be a list or a start/stop/num object")
    if arr.ndim != 1 or arr.size == 0:
        _fail(f"{what}: grid must be non-empty and one-dimensional")
    if not np.all(np.isfinite(arr)):
        _fail(f"{what}: grid values must be finite")
    if arr.size > 1 and not np.all(np.diff(arr) > 0):
        _fail(f"{what}: grid must be strictly increasing")
    return arr


def _scalar_or_grid(spec, what):
    if isinstance(spec, (int, float)) and not isinstance(spec, bool):
        if not math.isfinite(float(spec)):
            _fail(f"{what}: value must be finite")
        return np.array([float(spec)])
    return _grid(spec, what)


def _deformation(obj, what="deformation"):
    if obj is None:
        return Deformation(0.0, 0.0)
    if not isinstance(obj, dict):
        _fail(f"{what}: must be an object with tau1/tau2")
    extra = set(obj) - {"tau1", "tau2"}
    if extra:
        _fail(f"{what}: unknown keys {sorted(extra)}")
    return Deformation(_number(obj, "tau1", required=False, default=0.0, what=what),
                       _number(obj, "tau2", required=False, default=0.0, what=what))


def _deformation_grid(obj, what="deformations"):
    if not isinstance(obj, dict):
        _fail(f"{what}: must be an object with tau1/tau2 grids")
    extra = set(obj) - {"tau1", "tau2"}
    if extra:
        _fail(f"{what}: unknown keys {sorted(extra)}")
    t1 = _scalar_or_grid(obj.get("tau1", 0.0), f"{what}.tau1")
    t2 = _scalar_or_grid(obj.get("tau2", 0.0), f"{what}.tau2")
    return tuple(Deformation(a, b) for a, b in itertools.product(t1, t2)), t1, t2


def _config_error_guard(builder, *args, what="config"):
    """Library-level parameter rejections during config interpretation are
    config errors, not runtime domain errors."""
    try:
        return builder(*args)
    except InvalidParameter as exc:
        _fail(f"{what}: {exc}")


def _build_measure(cfg, run, seed_override=None, what="measure"):
    src = _get(cfg, "source", str, what=what)
    if src == "points":
        e = _get(cfg, "energies", list, what=what)
        lw = _get(cfg, "log_weights", list, what=what)
        return _config_error_guard(SpectralMeasure.from_points, e, lw, what=what)
    if src == "eigenvalues":
        return _config_error_guard(SpectralMeasure.from_eigenvalues,
                                   _get(cfg, "values", list, what=what), what=what)
    if src == "file":
        path = run.resolve(_get(cfg, "path", str, what=what))
        if not path.is_file():
            _fail(f"{what}: no such file {path}")
        return read_measure_csv(path)
    if src == "random":
        d = _get(cfg, "d", int, what=what)
        seed = seed_override if seed_override is not None else _get(cfg, "seed", int, what=what)
        lo, hi = _get(cfg, "energy_range", list, required=False, default=[-1.0, 1.0], what=what)
        span = _number(cfg, "log_weight_span", required=False, default=0.0, what=what)
        if d < 1 or not (hi > lo) or span < 0:
            _fail(f"{what}: bad random-measure parameters")
        rng = np.random.default_rng(seed)
        energies = np.sort(rng.uniform(lo, hi, size=d))
        log_w = rng.uniform(-span, 0.0, size=d) if span > 0 else np.zeros(d)
        return _config_error_guard(SpectralMeasure.from_points, energies, log_w, what=what)
    if src == "fully_connected_ising":
        return _config_error_guard(fully_connected_ising,
                                   _get(cfg, "n_sites", int, what=what),
                                   _number(cfg, "coupling", what=what), what=what)
    if src == "ising_2d":
        return ising_2d_dos(_get(cfg, "rows", int, what=what),
                            _get(cfg, "cols", int, what=what),
                            _number(cfg, "coupling", what=what),
                            _get(cfg, "method", str, required=False, default="transfer",
                                 what=what))
    _fail(f"{what}: unknown source '{src}'")


def _algebra_spec(cfg, what="exact"):
    kwargs = {}
    for key in ("family", "gamma0", "theta0", "alpha0", "delta", "h", "d", "cutoff"):
        if key in cfg:
            kwargs[key] = cfg[key]
    extra = set(cfg) - set(kwargs)
    if extra:
        _fail(f"{what}: unknown keys {sorted(extra)}")
    if "family" not in kwargs:
        _fail(f"{what}: missing key 'family'")
    try:
        return AlgebraSpec(**kwargs)
    except (InvalidParameter, ValueError) as exc:
        _fail(f"{what}: {exc}")


def _build_chain(cfg, run):
    """Chain source: explicit coefficients, a chain file, a closed-form
    family, or Lanczos on a (possibly deformed) measure."""
    given = [k for k in ("chain", "exact", "measure") if k in cfg]
    if len(given) != 1:
        _fail("exactly one of 'chain', 'exact', 'measure' must be given")
    if "chain" in cfg:
        sub = cfg["chain"]
        if "file" in sub:
            path = run.resolve(_get(sub, "file", str, what="chain"))
            if not path.is_file():
                _fail(f"chain: no such file {path}")
            return read_chain_csv(path)
        return _config_error_guard(
            TridiagonalOperator,
            np.asarray(_get(sub, "a", list, what="chain"), dtype=np.float64),
            np.asarray(_get(sub, "b", list, what="chain"), dtype=np.float64),
            what="chain")
    if "exact" in cfg:
        spec = _algebra_spec(cfg["exact"])
        tau = _deformation(cfg.get("deformation"))
        return exact_coefficients(spec, tau)
    m = _build_measure(cfg["measure"], run, seed_override=cfg.get("seed"))
    md = deform(m, _deformation(cfg.get("deformation")))
    return stieltjes_lanczos(md)


# ---------------------------------------------------------------- commands


def _cmd_lanczos(cfg, run):
    m = _build_measure(_get(cfg, "measure", dict), run, seed_override=cfg.get("seed"))
    md = deform(m, _deformation(cfg.get("deformation")))
    t_op = stieltjes_lanczos(md)
    write_measure_csv(run.path("measure.csv"), m)
    write_chain_csv(run.path("chain.csv"), t_op)


def _cmd_toda_flow(cfg, run):
    raw_path = _get(cfg, "path", list)
    if len(raw_path) < 2:
        _fail("path: need at least two waypoints")
    try:
        waypoints = [Deformation(float(p[0]), float(p[1])) for p in raw_path]
    except (TypeError, IndexError, ValueError):
        _fail("path: waypoints must be [tau1, tau2] pairs")
    sub = {k: cfg[k] for k in ("chain", "exact", "measure", "seed") if k in cfg}
    sub["deformation"] = {"tau1": waypoints[0].tau1, "tau2": waypoints[0].tau2}
    t0 = _build_chain(sub, run)
    result = flow(t0, waypoints,
                  rtol=_number(cfg, "rtol", required=False, default=1e-9),
                  atol=_number(cfg, "atol", required=False, default=1e-12),
                  method=_get(cfg, "method", str, required=False, default="RK45"),
                  log_b=bool(cfg.get("log_b", False)))
    if not result.success:
        raise DomainError(f"flow failed: {result.message}")
    write_trajectory_csv(run.path("trajectory.csv"), waypoints, result.operators)
    if cfg.get("relanczos_check"):
        if "measure" not in cfg:
            _fail("relanczos_check needs a measure source")
        m = _build_measure(cfg["measure"], run, seed_override=cfg.get("seed"))
        chains = [stieltjes_lanczos(deform(m, wp)) for wp in waypoints]
        write_trajectory_csv(run.path("trajectory_relanczos.csv"), waypoints, chains)
    write_json(run.path("diagnostics.json"), result.diagnostics_dict())


def _cmd_complexity(cfg, run):
    times = _grid(_get(cfg, "times", (list, dict)), "times")
    t_op = _build_chain(cfg, run)
    amps = evolve_grid(t_op, times)
    write_timeseries_csv(run.path("complexity.csv"),
                         TimeSeries(times, spread_complexity(amps), "K"))
    write_timeseries_csv(run.path("entropy.csv"),
                         TimeSeries(times, krylov_entropy(amps), "S"))


def _cmd_survival(cfg, run):
    times = _grid(_get(cfg, "times", (list, dict)), "times")
    m = _build_measure(_get(cfg, "measure", dict), run, seed_override=cfg.get("seed"))
    tau = _deformation(cfg.get("deformation"))
    amp = survival_amplitude(m, tau, times)
    write_timeseries_csv(run.path("survival.csv"), TimeSeries(times, amp, "S"))
    if "rate" in cfg:
        sub = _get(cfg, "rate", dict)
        beta = _number(sub, "beta", what="rate")
        n_sites = _get(sub, "n_sites", int, what="rate")
        if n_sites < 1:
            _fail("rate: n_sites must be positive")
        write_timeseries_csv(run.path("rate.csv"),
                             TimeSeries(times, rate_function(m, beta, times, n_sites),
                                        "lambda"))


def _cmd_time_average(cfg, run):
    t_op = _build_chain(cfg, run)
    avg = time_averaged_complexity(t_op)
    write_averaged_csv(run.path("kbar.csv"), avg)
    summary = {"kbar": avg.kbar, "d": t_op.d}
    if cfg.get("quadrature"):
        sub = cfg["quadrature"] if isinstance(cfg["quadrature"], dict) else {}
        summary["kbar_quadrature"] = time_averaged_complexity_quadrature(
            t_op,
            total_time=_number(sub, "total_time", required=False, what="quadrature"),
            samples_per_period=int(_number(sub, "samples_per_period", required=False,
                                           default=20.0, what="quadrature")))
    write_json(run.path("kbar.json"), summary)


def _cmd_ising(cfg, run):
    model = _get(cfg, "model", str)
    coupling = _number(cfg, "coupling")
    if model == "fully_connected":
        m = _config_error_guard(fully_connected_ising,
                                _get(cfg, "n_sites", int), coupling, what="ising")
    elif model == "2d":
        m = ising_2d_dos(_get(cfg, "rows", int), _get(cfg, "cols", int), coupling,
                         _get(cfg, "method", str, required=False, default="transfer"))
    else:
        _fail(f"ising: unknown model '{model}'")
    write_measure_csv(run.path("measure.csv"), m)
    betas = _grid(_get(cfg, "beta_grid", (list, dict)), "beta_grid")
    rows = []
    for beta in betas:
        t_op = stieltjes_lanczos(deform(m, Deformation(beta, 0.0)))
        b1 = t_op.b[0] if t_op.d > 1 else 0.0
        rows.append((_fmt(beta), _fmt(t_op.a[0]), _fmt(b1)))
    _write_rows(run.path("thermo.csv"), ("beta", "a0", "b1"), rows)
    if "lee_yang" in cfg:
        sub = _get(cfg, "lee_yang", dict)
        ly_betas = _grid(_get(sub, "beta_grid", (list, dict), what="lee_yang"),
                         "lee_yang.beta_grid")
        pts = lee_yang_boundary(coupling, ly_betas)
        write_curve_csv(run.path("leeyang.csv"), pts, ("t", "beta"))


def _cmd_rmt(cfg, run):
    ens = _get(cfg, "ensemble", dict)
    extra = set(ens) - {"family", "dyson", "dim", "samples", "seed", "delta"}
    if extra:
        _fail(f"ensemble: unknown keys {sorted(extra)}")
    seed = run.seed if run.seed is not None else _get(ens, "seed", int, what="ensemble")
    spec = _config_error_guard(
        lambda: EnsembleSpec(family=_get(ens, "family", str, what="ensemble"),
                             dyson=_get(ens, "dyson", int, what="ensemble"),
                             dim=_get(ens, "dim", int, what="ensemble"),
                             samples=_get(ens, "samples", int, what="ensemble"),
                             seed=seed,
                             delta=_number(ens, "delta", required=False, default=1.0,
                                           what="ensemble")),
        what="ensemble")
    observable = _get(cfg, "observable", str)
    defs, t1, t2 = _deformation_grid(_get(cfg, "deformations", dict))
    times = None
    if observable != "kbar":
        times = _grid(_get(cfg, "times", (list, dict)), "times")
        if len(defs) != 1:
            _fail("time-resolved observables need a single deformation point")
    experiment = _config_error_guard(Experiment, observable, defs, times,
                                     what="experiment")
    result = ensemble_average(spec, experiment, threads=run.threads)
    if observable == "kbar":
        if t1.size > 1 and t2.size > 1:
            _fail("kbar sweeps vary one deformation component per run")
        xs = t1 if t1.size > 1 else (t2 if t2.size > 1 else t1)
        rows = ((_fmt(x), _fmt(mu), _fmt(se), str(result.n_samples))
                for x, mu, se in zip(xs, result.mean, result.stderr))
    else:
        rows = ((_fmt(t), _fmt(mu), _fmt(se), str(result.n_samples))
                for t, mu, se in zip(times, result.mean[0], result.stderr[0]))
    _write_rows(run.path("ensemble.csv"), ("x", "mean", "stderr", "nsamples"), rows)
    write_json(run.path("ensemble.json"),
               {"observable": observable, "n_samples": result.n_samples,
                "n_failed": result.n_failed})


def _susy_parent(cfg):
    if "b" in cfg:
        b = np.asarray(_get(cfg, "b", list, what="susy"), dtype=np.float64)
        return _config_error_guard(TridiagonalOperator, np.zeros(b.size + 1), b,
                                   what="susy"), None
    if "alternating" in cfg:
        sub = _get(cfg, "alternating", dict)
        alpha = _number(sub, "alpha", what="alternating")
        gamma = _number(sub, "gamma", what="alternating")
        tau2 = _number(sub, "tau2", required=False, default=0.0, what="alternating")
        cutoff = _get(sub, "cutoff", int, required=False, default=256, what="alternating")
        if alpha <= 0 or gamma <= 0 or cutoff < 2:
            _fail("alternating: need positive couplings and cutoff >= 2")
        from .exact import alternating_couplings
        a2, g2 = alternating_couplings(alpha, gamma, tau2)
        i = np.arange(1, cutoff)
        b = np.sqrt(np.where(i % 2 == 1, g2, a2) * i)
        return (TridiagonalOperator(np.zeros(cutoff), b),
                {"alpha": alpha, "gamma": gamma, "tau2": tau2})
    _fail("susy: need 'b' or 'alternating'")


def _cmd_susy(cfg, run):
    parent, alt = _susy_parent(cfg)
    chain = susy_from_b(parent)
    times = _grid(_get(cfg, "times", (list, dict)), "times")
    plus, minus = sector_operators(chain)
    amps_p = evolve_grid(plus, times)
    amps_m = evolve_grid(minus, times)
    # spot-check the intertwining identity at the grid ends
    paired_evolution(chain, float(times[0]))
    paired_evolution(chain, float(times[-1]))
    write_paired_csv(run.path("paired.csv"), times,
                     spread_complexity(amps_p), spread_complexity(amps_m))
    summary = {"d_plus": chain.d_plus, "d_minus": chain.d_minus,
               "zero_modes": zero_mode_count(chain)}
    if cfg.get("closed_form"):
        if alt is None:
            _fail("closed_form needs the alternating source")
        kp, km = alternating_susy_complexity(alt["alpha"], alt["gamma"], alt["tau2"],
                                             times)
        write_paired_csv(run.path("paired_exact.csv"), times, kp, km)
    if "shape_check" in cfg:
        sub = _get(cfg, "shape_check", dict)
        pb = np.asarray(_get(sub, "partner_b", list, what="shape_check"),
                        dtype=np.float64)
        eps = _number(sub, "eps", what="shape_check")
        partner = susy_from_b(_config_error_guard(
            TridiagonalOperator, np.zeros(pb.size + 1), pb, what="shape_check"))
        report = shape_invariance_check(chain, partner, eps)
        write_json(run.path("shape_report.json"), report.to_dict())
        summary["shape_invariant"] = report.passed
    write_json(run.path("susy.json"), summary)


def _cmd_exact(cfg, run):
    spec = _algebra_spec(_get(cfg, "exact", dict))
    defs, _, _ = _deformation_grid(_get(cfg, "deformations", dict))
    times = _grid(_get(cfg, "times", (list, dict)), "times")

    def rows():
        for tau in defs:
            k = exact_complexity(spec, tau, times)
            for t, kv in zip(times, k):
                yield (_fmt(tau.tau1), _fmt(tau.tau2), _fmt(t), _fmt(kv))

    _write_rows(run.path("exact.csv"), ("tau1", "tau2", "t", "K"), rows())


_HANDLERS = {
    "lanczos": _cmd_lanczos,
    "toda-flow": _cmd_toda_flow,
    "complexity": _cmd_complexity,
    "survival": _cmd_survival,
    "time-average": _cmd_time_average,
    "ising": _cmd_ising,
    "rmt": _cmd_rmt,
    "susy": _cmd_susy,
    "exact": _cmd_exact,
}


def _load_config(path):
    p = Path(path)
    if not p.is_file():
        _fail(f"no such config file: {p}")
    try:
        cfg = json.loads(p.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        _fail(f"cannot parse {p}: {exc}")
    if not isinstance(cfg, dict):
        _fail("config root must be an object")
    return cfg, p.parent


def _manifest(cfg, run, command):
    hashed = {k: v for k, v in cfg.items() if k not in ("out_dir", "threads")}
    blob = json.dumps(hashed, sort_keys=True).encode()
    entries = []
    for p in sorted(run.files):
        data = p.read_bytes()
        entries.append({"path": p.name, "sha256": hashlib.sha256(data).hexdigest(),
                        "bytes": len(data)})
    return {"command": command, "version": __version__,
            "config_sha256": hashlib.sha256(blob).hexdigest(),
            "parameters": hashed, "files": entries}


def run_config(config_path, threads=None, out=None, seed=None):
    """Execute one config; returns the process exit code."""
    run = None
    try:
        cfg, base_dir = _load_config(config_path)
        command = _get(cfg, "command", str)
        if command not in COMMANDS:
            _fail(f"unknown command '{command}' (choose from {', '.join(COMMANDS)})")
        if seed is not None:
            cfg["seed"] = seed
        out_dir = (out or os.environ.get(ENV_OUT_DIR) or cfg.get("out_dir")
                   or "krylovflow-out")
        eff_threads = threads if threads is not None else cfg.get("threads", 1)
        if not isinstance(eff_threads, int) or eff_threads < 1:
            _fail("threads must be a positive integer")
        os.makedirs(out_dir, exist_ok=True)
        run = _Run(out_dir, base_dir, eff_threads, cfg.get("seed"))
        _HANDLERS[command](cfg, run)
        write_json(Path(out_dir) / "manifest.json", _manifest(cfg, run, command))
        return EXIT_OK
    except KrylovflowError as exc:
        if run is not None:
            run.cleanup()
        kind = (EXIT_CONFIG if isinstance(exc, (ConfigError, SchemaMismatch, InvalidParameter))
                else EXIT_RESOURCE if isinstance(exc, ResourceLimit)
                else EXIT_DOMAIN if isinstance(exc, DomainError)
                else EXIT_FAILURE)
        print(f"error: {exc}", file=sys.stderr)
        return kind
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        if run is not None:
            run.cleanup()
        print(f"unexpected error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


def run_compare(path_a, path_b, rtol, atol):
    try:
        report = compare_tables(path_a, path_b, rtol=rtol, atol=atol)
    except SchemaMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    return EXIT_OK if report.passed else EXIT_FAILURE


def main(argv=None):
    parser = argparse.ArgumentParser(prog="krylovflow",
                                     description="Krylov chain / Toda flow laboratory")
    sub = parser.add_subparsers(dest="verb", required=True)
    p_run = sub.add_parser("run", help="execute one experiment config")
    p_run.add_argument("config")
    p_run.add_argument("--threads", type=int, default=None)
    p_run.add_argument("--out", default=None)
    p_run.add_argument("--seed", type=int, default=None)
    p_cmp = sub.add_parser("compare", help="diff two CSV artifacts")
    p_cmp.add_argument("file_a")
    p_cmp.add_argument("file_b")
    p_cmp.add_argument("--rtol", type=float, default=0.0)
    p_cmp.add_argument("--atol", type=float, default=0.0)
    args = parser.parse_args(argv)
    if args.verb == "run":
        return run_config(args.config, threads=args.threads, out=args.out,
                          seed=args.seed)
    return run_compare(args.file_a, args.file_b, args.rtol, args.atol)


if __name__ == "__main__":
    sys.exit(main())
