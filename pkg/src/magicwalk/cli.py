"""Experiment runner.

Each subcommand produces the plot-ready data for one figure-style experiment
plus a `run.json` manifest echoing the fully resolved configuration, so any
output directory can be reproduced byte for byte from its manifest alone.
"""
import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .doublon import default_late_window, doublon_magic_series, doublon_params, shift_fit
from .dynamics import Propagator, WalkState, evolve, magnetization_profile
from .errors import InvalidSpecError, MagicwalkError, ResourceLimitError
from .magic import (
    SPECTRUM_MAX_L,
    filter_spectrum,
    m2_asymptotic,
    m2_bessel,
    m2_coeff,
    m2_from_spectrum,
    pauli_spectrum_full,
    stabilizer_counts,
)
from .model import (
    TWO_MAGNON_MAX_L,
    ChainSpec,
    build_sector_hamiltonian,
    embed_sector_state,
    initial_state_vector,
    single_magnon_basis,
    two_magnon_basis,
)
from .stats import (
    BRIGHT_FRONT_EPS,
    DEFAULT_BINS,
    cumulative_average,
    light_cone_front,
    snapshot_times,
    spacing_ratios,
)

# ChainSpec itself allows L >= 2 so the worked small cases stay constructible;
# actual walk runs need room for a centered excitation away from both edges.
CLI_MIN_L = 4

ENV_PREFIX = "MAGICWALK_"


def _parse_bool(raw) -> bool:
    if isinstance(raw, bool):
        return raw
    s = str(raw).strip().lower()
    if s in ("1", "true", "yes", "on"):
        return True
    if s in ("0", "false", "no", "off", ""):
        return False
    raise ValueError(f"not a boolean: {raw!r}")


_CASTERS = {
    "L": int,
    "J": float,
    "delta": float,
    "jprime": float,
    "particles": int,
    "tmax": float,
    "dt": float,
    "method": str,
    "out": str,
    "threads": int,
    "seed": int,
    "t0_check": _parse_bool,
}

_DEFAULTS = {
    "L": 10,
    "J": 1.0,
    "delta": 0.0,
    "jprime": 0.0,
    "particles": 1,
    "tmax": 20.0,
    "dt": 0.5,
    "method": None,  # per-subcommand default applied in _finalize
    "out": ".",
    "threads": 1,
    "seed": 0,
    "t0_check": False,
}

# first entry is the subcommand default
_METHODS = {
    "sp-magic": ("bessel", "ed", "spectrum", "asymptotic"),
    "magnetization": ("sector",),
    "two-magic": ("spectrum",),
    "pauli-stats": ("spectrum",),
}


def _coerce(name: str, raw):
    try:
        return _CASTERS[name](raw)
    except (ValueError, TypeError) as exc:
        raise InvalidSpecError(f"bad value for {name}: {raw!r}") from exc


def resolve_config(args) -> dict:
    """Merge defaults < config file < environment < command-line flags."""
    cfg = dict(_DEFAULTS)
    path = args.config if args.config is not None else os.environ.get(ENV_PREFIX + "CONFIG")
    if path:
        try:
            with open(path) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise InvalidSpecError(f"cannot read config file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InvalidSpecError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise InvalidSpecError("config file must hold a JSON object")
        for key, raw in data.items():
            if key not in _CASTERS:
                raise InvalidSpecError(f"unknown config key {key!r}")
            cfg[key] = _coerce(key, raw)
    for name in _CASTERS:
        raw = os.environ.get(ENV_PREFIX + name.upper())
        if raw is not None:
            cfg[name] = _coerce(name, raw)
    for name in _CASTERS:
        val = getattr(args, name, None)
        if val is not None:
            cfg[name] = val
    return cfg


def _finalize(cfg: dict, subcommand: str) -> None:
    """Validate the merged config and pin per-subcommand fields."""
    if subcommand == "sp-magic":
        cfg["particles"] = 1
    elif subcommand == "two-magic":
        cfg["particles"] = 2
    if cfg["L"] < CLI_MIN_L:
        raise InvalidSpecError(f"walk runs need L >= {CLI_MIN_L}, got {cfg['L']}")
    if cfg["J"] <= 0:
        raise InvalidSpecError(f"J must be positive, got {cfg['J']}")
    if cfg["delta"] < 0:
        raise InvalidSpecError(f"delta must be >= 0, got {cfg['delta']}")
    if cfg["particles"] not in (1, 2):
        raise InvalidSpecError(f"particles must be 1 or 2, got {cfg['particles']}")
    if cfg["dt"] <= 0:
        raise InvalidSpecError(f"dt must be positive, got {cfg['dt']}")
    if cfg["tmax"] < cfg["dt"]:
        raise InvalidSpecError("tmax must be at least dt")
    if cfg["threads"] < 1:
        raise InvalidSpecError(f"threads must be >= 1, got {cfg['threads']}")
    if cfg["method"] is None:
        cfg["method"] = _METHODS[subcommand][0]
    if cfg["method"] not in _METHODS[subcommand]:
        raise InvalidSpecError(
            f"method {cfg['method']!r} not available for {subcommand} "
            f"(choose from {', '.join(_METHODS[subcommand])})"
        )


def _chain_spec(cfg: dict) -> ChainSpec:
    return ChainSpec(
        L=cfg["L"],
        J=cfg["J"],
        delta=cfg["delta"],
        jprime=cfg["jprime"],
        particles=cfg["particles"],
    )


def time_grid(tmax: float, dt: float) -> np.ndarray:
    n = int(np.floor(tmax / dt + 1e-9))
    return np.arange(n + 1) * dt


def _parallel_map(fn, items, threads: int) -> list:
    """Ordered map; a thread pool helps because the heavy numpy calls
    release the GIL."""
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _fmt(x) -> str:
    return f"{float(x):.17g}"


def _write_csv(path: str, header: str, rows) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _write_json(path: str, obj) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _sector_walk(spec: ChainSpec):
    """Propagator and centered initial state in the relevant magnon sector."""
    basis = single_magnon_basis(spec.L) if spec.particles == 1 else two_magnon_basis(spec.L)
    prop = Propagator.build(build_sector_hamiltonian(spec, basis))
    psi0 = WalkState(basis.kind, spec.L, initial_state_vector(spec, basis), basis=basis)
    return basis, prop, psi0


def cmd_sp_magic(cfg: dict):
    times = time_grid(cfg["tmax"], cfg["dt"])
    J, L, method = cfg["J"], cfg["L"], cfg["method"]
    if method == "bessel":
        m2 = [m2_bessel(float(t), J) for t in times]
    elif method == "asymptotic":
        if cfg["tmax"] * J <= 1.0:
            raise InvalidSpecError("asymptotic form holds for t*J > 1 only; raise tmax")
        times = times[times * J > 1.0]
        m2 = [m2_asymptotic(float(t), J) for t in times]
    elif method == "ed":
        if L > TWO_MAGNON_MAX_L:
            raise ResourceLimitError(f"ed method needs L <= {TWO_MAGNON_MAX_L}, got {L}")
        _, prop, psi0 = _sector_walk(_chain_spec(cfg))
        m2 = _parallel_map(
            lambda t: m2_coeff(evolve(prop, psi0, float(t)).amplitudes),
            times, cfg["threads"],
        )
    else:  # spectrum
        if L > SPECTRUM_MAX_L:
            raise ResourceLimitError(f"spectrum method needs L <= {SPECTRUM_MAX_L}, got {L}")
        basis, prop, psi0 = _sector_walk(_chain_spec(cfg))

        def one(t):
            st = evolve(prop, psi0, float(t))
            full = embed_sector_state(st.amplitudes, basis)
            return m2_from_spectrum(pauli_spectrum_full(full))

        m2 = _parallel_map(one, times, cfg["threads"])
    rows = [(_fmt(t), _fmt(v), method) for t, v in zip(times, m2)]
    _write_csv(os.path.join(cfg["out"], "m2.csv"), "time,m2,method", rows)
    return ["m2.csv"], {}


def _bright_front_velocity(times, profiles, eps=BRIGHT_FRONT_EPS):
    """Right-front slope at the bright threshold, using only the times where
    the pair core is still above it (it disperses once the pair unbinds)."""
    ts, rs = [], []
    for t, row in zip(times, profiles):
        hit = np.nonzero(np.abs(row - 1.0) > eps)[0]
        if hit.size:
            ts.append(float(t))
            rs.append(float(hit[-1]))
    if len(ts) < 2:
        return None
    A = np.vstack([ts, np.ones(len(ts))]).T
    coef, *_ = np.linalg.lstsq(A, np.asarray(rs), rcond=None)
    return float(coef[0])


def cmd_magnetization(cfg: dict):
    spec = _chain_spec(cfg)
    _, prop, psi0 = _sector_walk(spec)
    times = time_grid(cfg["tmax"], cfg["dt"])
    profiles = np.asarray(_parallel_map(
        lambda t: magnetization_profile(evolve(prop, psi0, float(t))),
        times, cfg["threads"],
    ))
    zrows = []
    for t, row in zip(times, profiles):
        for site, z in enumerate(row):
            zrows.append((_fmt(t), str(site), _fmt(z)))
    _write_csv(os.path.join(cfg["out"], "zprofile.csv"), "time,site,z", zrows)
    fit = light_cone_front(times, profiles)
    _write_csv(
        os.path.join(cfg["out"], "front.csv"),
        "time,left,right",
        [(_fmt(t), _fmt(l), _fmt(r)) for t, l, r in zip(fit.times, fit.left, fit.right)],
    )
    results = {"velocity": fit.velocity, "front_residual": fit.residual}
    if spec.particles == 2:
        results["velocity_bright"] = _bright_front_velocity(times, profiles)
    return ["zprofile.csv", "front.csv"], results


def cmd_two_magic(cfg: dict):
    spec = _chain_spec(cfg)
    if spec.L > SPECTRUM_MAX_L:
        raise ResourceLimitError(f"exact spectrum route needs L <= {SPECTRUM_MAX_L}, got {spec.L}")
    params = doublon_params(spec.J, spec.delta)
    basis, prop, psi0 = _sector_walk(spec)
    times = time_grid(cfg["tmax"], cfg["dt"])

    def one(t):
        st = evolve(prop, psi0, float(t))
        full = embed_sector_state(st.amplitudes, basis)
        return m2_from_spectrum(pauli_spectrum_full(full))

    total = np.asarray(_parallel_map(one, times, cfg["threads"]))
    doub = doublon_magic_series(spec, times)
    window = default_late_window(spec.L, params.v_doublon)
    c, residual = shift_fit(times, total, doub, window)
    cum = cumulative_average(times, total)

    out = cfg["out"]
    _write_csv(os.path.join(out, "m2.csv"), "time,m2,method",
               [(_fmt(t), _fmt(v), "spectrum") for t, v in zip(times, total)])
    _write_csv(os.path.join(out, "m2_doublon.csv"), "time,m2,method",
               [(_fmt(t), _fmt(v), "doublon") for t, v in zip(times, doub)])
    _write_csv(os.path.join(out, "m2_cumulative.csv"), "time,m2_cumulative",
               [(_fmt(t), _fmt(v)) for t, v in zip(times, cum)])
    _write_json(os.path.join(out, "shift.json"),
                {"c": c, "residual": residual, "window": list(window)})
    results = {"shift": c, "shift_residual": residual,
               "window": list(window), "v_doublon": params.v_doublon}
    files = ["m2.csv", "m2_doublon.csv", "m2_cumulative.csv", "shift.json"]
    return files, results


def cmd_pauli_stats(cfg: dict):
    spec = _chain_spec(cfg)
    if spec.L > SPECTRUM_MAX_L:
        raise ResourceLimitError(f"Pauli statistics need L <= {SPECTRUM_MAX_L}, got {spec.L}")
    model = "nnn" if spec.jprime != 0.0 else "xxz"
    basis, prop, psi0 = _sector_walk(spec)
    snaps = snapshot_times(spec.L, spec.J)

    def one(t):
        st = evolve(prop, psi0, float(t))
        full = embed_sector_state(st.amplitudes, basis)
        return filter_spectrum(pauli_spectrum_full(full)).values

    value_sets = _parallel_map(one, snaps, cfg["threads"])
    # ratios per snapshot, then pooled
    pooled = np.concatenate([spacing_ratios(v).ratios for v in value_sets])
    edges = np.linspace(0.0, 1.0, DEFAULT_BINS + 1)
    dens, _ = np.histogram(pooled, bins=edges, density=True)
    centers = 0.5 * (edges[1:] + edges[:-1])

    out = cfg["out"]
    _write_csv(os.path.join(out, "ratios.csv"), "rtilde",
               [(_fmt(r),) for r in pooled])
    _write_csv(os.path.join(out, "hist.csv"), "bin_center,density,poisson",
               [(_fmt(x), _fmt(d), _fmt(2.0 / (1.0 + x) ** 2))
                for x, d in zip(centers, dens)])
    summary = {
        "mean_ratio": float(np.mean(pooled)),
        "count": int(pooled.shape[0]),
        "model": model,
        "snapshot_times": [float(t) for t in snaps],
    }
    if cfg["t0_check"]:
        spectrum0 = pauli_spectrum_full(embed_sector_state(psi0.amplitudes, basis))
        summary["t0_counts"] = stabilizer_counts(spectrum0)
    _write_json(os.path.join(out, "summary.json"), summary)
    results = {"mean_ratio": summary["mean_ratio"], "count": summary["count"],
               "model": model}
    return ["ratios.csv", "hist.csv", "summary.json"], results


_COMMANDS = {
    "sp-magic": cmd_sp_magic,
    "magnetization": cmd_magnetization,
    "two-magic": cmd_two_magic,
    "pauli-stats": cmd_pauli_stats,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="magicwalk",
        description="Magic generation and spreading in spin-chain quantum walks.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    helps = {
        "sp-magic": "single-particle M2 curve (bessel | ed | spectrum | asymptotic)",
        "magnetization": "local <Z> profiles and light-cone fronts",
        "two-magic": "two-particle exact M2 vs the bound-pair effective model",
        "pauli-stats": "long-time Pauli-spectrum spacing-ratio statistics",
    }
    for name in _COMMANDS:
        sp = sub.add_parser(name, help=helps[name])
        sp.add_argument("--L", type=int, default=None, help="chain length (sites)")
        sp.add_argument("--J", type=float, default=None, help="hopping energy scale")
        sp.add_argument("--delta", type=float, default=None, help="ZZ anisotropy, units of J")
        sp.add_argument("--jprime", type=float, default=None, help="next-nearest hopping")
        sp.add_argument("--particles", type=int, default=None, help="1 or 2 flipped spins")
        sp.add_argument("--tmax", type=float, default=None, help="last grid time")
        sp.add_argument("--dt", type=float, default=None, help="grid step")
        sp.add_argument("--method", default=None, help="computation route")
        sp.add_argument("--out", default=None, help="output directory")
        sp.add_argument("--threads", type=int, default=None, help="worker threads")
        sp.add_argument("--seed", type=int, default=None, help="seed for synthetic oracles")
        sp.add_argument("--config", default=None, help="JSON file with defaults")
        if name == "pauli-stats":
            sp.add_argument("--t0-check", dest="t0_check", action="store_true", default=None,
                            help="also report exact t=0 stabilizer counts")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        _finalize(cfg, args.subcommand)
        os.makedirs(cfg["out"], exist_ok=True)
        outputs, results = _COMMANDS[args.subcommand](cfg)
        manifest = {
            "command": args.subcommand,
            "config": {k: cfg[k] for k in sorted(cfg)},
            "version": __version__,
            "outputs": sorted(outputs),
            "results": results,
        }
        _write_json(os.path.join(cfg["out"], "run.json"), manifest)
    except MagicwalkError as exc:
        print(f"magicwalk: {exc}", file=sys.stderr)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
