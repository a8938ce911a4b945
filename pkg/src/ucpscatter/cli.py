"""Command-line front end: transmission sweeps, parameter grids, geometry
dumps, and analysis reports as CSV/JSON for external plotting.

Exit codes: 0 success, 2 invalid potential spec, 3 oracle infeasible.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Sequence

import numpy as np

from . import __version__
from .analysis import fit_scaling, saturation_scan
from .geometry import InvalidSpecError, UcpSpec, build_segments
from .oracle import OracleInfeasibleError, transmission_oracle
from .scattering import transmission_ucp

EXIT_OK = 0
EXIT_INVALID_SPEC = 2
EXIT_ORACLE_INFEASIBLE = 3

_FLOAT_FMT = ".17g"


def _fmt(x: float) -> str:
    return format(x, _FLOAT_FMT)


def _spec_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--L", type=float, help="total span")
    parser.add_argument("--V", type=float, help="barrier height")
    parser.add_argument("--rho", type=float, help="scaling parameter (> 1)")
    parser.add_argument("--alpha", type=float, help="removal exponent offset")
    parser.add_argument("--beta", type=float, help="removal exponent slope")
    parser.add_argument("--G", type=int, help="stage (recursion depth)")


def _sweep_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--kmin", type=float, help="lowest wavenumber")
    parser.add_argument("--kmax", type=float, help="highest wavenumber")
    parser.add_argument("--nk", type=int, help="number of k points (>= 2)")
    parser.add_argument("--scale", choices=["linear", "log"], help="k spacing")


def _common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--workers", type=int, help="worker processes (default: all cores)")
    parser.add_argument("--out", help="output path (default: stdout)")
    parser.add_argument("--config", help="config file (JSON or key=value lines)")


def _load_config(path: str) -> dict:
    with open(path) as fh:
        text = fh.read()
    try:
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ValueError("config JSON must be an object")
        return data
    except json.JSONDecodeError:
        pass
    data = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("=")
        data[key.strip()] = value.strip()
    return data


_INT_KEYS = {"G", "nk", "nk_points", "workers", "gmin", "gmax", "n_points"}
_STR_KEYS = {"scale", "engine", "out", "k", "alpha_range", "beta_range", "rho_range"}


def _apply_config(args: argparse.Namespace, config: dict) -> None:
    """Fill in options the command line left unset."""
    for key, value in config.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr):
            raise SystemExit(f"unknown config key: {key}")
        if getattr(args, attr) is None:
            if attr in _INT_KEYS:
                value = int(value)
            elif attr not in _STR_KEYS:
                value = float(value)
            setattr(args, attr, value)


def _require(args: argparse.Namespace, names: Iterable[str]) -> None:
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise SystemExit(f"missing required options: {', '.join('--' + m for m in missing)}")


def _build_spec(args: argparse.Namespace) -> UcpSpec:
    _require(args, ["L", "V", "rho", "alpha", "beta", "G"])
    return UcpSpec(L=args.L, V=args.V, rho=args.rho, alpha=args.alpha, beta=args.beta, G=args.G)


def _k_grid(args: argparse.Namespace) -> np.ndarray:
    _require(args, ["kmin", "kmax", "nk"])
    if not (args.kmin > 0 and args.kmax > args.kmin and args.nk >= 2):
        raise SystemExit("need 0 < kmin < kmax and nk >= 2")
    if (args.scale or "linear") == "log":
        return np.logspace(math.log10(args.kmin), math.log10(args.kmax), args.nk)
    return np.linspace(args.kmin, args.kmax, args.nk)


def _spec_header(spec: UcpSpec) -> list[str]:
    return [
        f"# L={_fmt(spec.L)}",
        f"# V={_fmt(spec.V)}",
        f"# rho={_fmt(spec.rho)}",
        f"# alpha={_fmt(spec.alpha)}",
        f"# beta={_fmt(spec.beta)}",
        f"# G={spec.G}",
    ]


def _emit(lines: Sequence[str], out: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _eval_point(task: tuple) -> tuple:
    spec, k, engine = task
    closed = transmission_ucp(spec, k) if engine in ("closed_form", "both") else None
    orac = transmission_oracle(spec, k) if engine in ("oracle", "both") else None
    return closed, orac


def _map_ordered(func, tasks: list, workers: int):
    if workers <= 1 or len(tasks) < 4:
        return [func(t) for t in tasks]
    chunk = max(1, len(tasks) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, tasks, chunksize=chunk))


def cmd_transmission(args: argparse.Namespace) -> int:
    spec = _build_spec(args)
    ks = _k_grid(args)
    engine = args.engine or "closed_form"
    workers = args.workers if args.workers is not None else os.cpu_count() or 1
    tasks = [(spec, float(k), engine) for k in ks]
    results = _map_ordered(_eval_point, tasks, workers)

    lines = _spec_header(spec)
    lines.append(f"# engine={engine}")
    if engine == "both":
        lines.append("k,T,R,log10_T,T_oracle,abs_diff")
    else:
        lines.append("k,T,R,log10_T")
    max_diff = 0.0
    for (_, k, _), (closed, orac) in zip(tasks, results):
        primary = closed if closed is not None else orac
        row = [
            _fmt(k),
            _fmt(primary.transmission),
            _fmt(primary.reflection),
            _fmt(primary.log10_transmission),
        ]
        if engine == "both":
            diff = abs(closed.transmission - orac.transmission)
            max_diff = max(max_diff, diff)
            row += [_fmt(orac.transmission), _fmt(diff)]
        lines.append(",".join(row))
    if engine == "both":
        lines.append(f"# max_abs_diff={_fmt(max_diff)}")
    _emit(lines, args.out)
    return EXIT_OK


def _parse_range(text: str, name: str) -> np.ndarray:
    parts = text.split(":")
    if len(parts) != 3:
        raise SystemExit(f"--{name}-range must be MIN:MAX:COUNT, got {text!r}")
    lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    if n < 1:
        raise SystemExit(f"--{name}-range count must be >= 1")
    return np.linspace(lo, hi, n) if n > 1 else np.array([lo])


def _grid_axis(args: argparse.Namespace, name: str) -> np.ndarray:
    rng = getattr(args, f"{name}_range")
    fixed = getattr(args, name)
    if rng is not None:
        return _parse_range(rng, name)
    if fixed is not None:
        return np.array([fixed])
    raise SystemExit(f"provide --{name} or --{name}-range")


def _eval_grid_point(task: tuple) -> tuple:
    L, V, G, alpha, beta, rho, k = task
    try:
        spec = UcpSpec(L=L, V=V, rho=rho, alpha=alpha, beta=beta, G=G)
    except InvalidSpecError:
        return (False, None)
    return (True, transmission_ucp(spec, k).transmission)


def cmd_grid(args: argparse.Namespace) -> int:
    _require(args, ["L", "V", "G", "k"])
    alphas = _grid_axis(args, "alpha")
    betas = _grid_axis(args, "beta")
    rhos = _grid_axis(args, "rho")
    ks = [float(t) for t in str(args.k).split(",")]
    workers = args.workers if args.workers is not None else os.cpu_count() or 1

    tasks = [
        (args.L, args.V, args.G, float(a), float(b), float(r), k)
        for a in alphas
        for b in betas
        for r in rhos
        for k in ks
    ]
    results = _map_ordered(_eval_grid_point, tasks, workers)

    lines = [
        f"# L={_fmt(args.L)}",
        f"# V={_fmt(args.V)}",
        f"# G={args.G}",
        "alpha,beta,rho,k,valid,T",
    ]
    for (_, _, _, a, b, r, k), (valid, t) in zip(tasks, results):
        lines.append(
            ",".join(
                [_fmt(a), _fmt(b), _fmt(r), _fmt(k), "1" if valid else "0", _fmt(t) if valid else ""]
            )
        )
    _emit(lines, args.out)
    return EXIT_OK


def cmd_geometry(args: argparse.Namespace) -> int:
    spec = _build_spec(args)
    geometry = build_segments(spec)
    lines = _spec_header(spec)
    lines.append("index,offset,width")
    for i, (off, w) in enumerate(geometry.barriers):
        lines.append(f"{i},{_fmt(off)},{_fmt(w)}")
    _emit(lines, args.out)
    return EXIT_OK


def cmd_scaling(args: argparse.Namespace) -> int:
    _require(args, ["L", "V0", "rho", "alpha", "beta", "G", "kmin", "kmax", "nk"])
    spec = UcpSpec(L=args.L, V=args.V0, rho=args.rho, alpha=args.alpha, beta=args.beta, G=args.G)
    fit = fit_scaling(spec, args.V0, (args.kmin, args.kmax), args.nk)
    report = {
        "spec": {"L": spec.L, "V0": args.V0, "rho": spec.rho, "alpha": spec.alpha,
                 "beta": spec.beta, "G": spec.G},
        "k_window": list(fit.k_window),
        "slope": fit.slope,
        "intercept": fit.intercept,
        "r_squared": fit.r_squared,
        "n_used": fit.n_used,
    }
    _emit([json.dumps(report, indent=2)], args.out)
    return EXIT_OK


def cmd_saturation(args: argparse.Namespace) -> int:
    _require(args, ["L", "V", "rho", "alpha", "beta", "gmin", "gmax", "kmin", "kmax", "nk"])
    if args.gmax <= args.gmin:
        raise SystemExit("need gmax > gmin")
    specs = [
        UcpSpec(L=args.L, V=args.V, rho=args.rho, alpha=args.alpha, beta=args.beta, G=g)
        for g in range(args.gmin, args.gmax + 1)
    ]
    ks = np.linspace(args.kmin, args.kmax, args.nk)
    report = saturation_scan(specs, [float(k) for k in ks])
    payload = {
        "spec": {"L": args.L, "V": args.V, "rho": args.rho, "alpha": args.alpha,
                 "beta": args.beta},
        "k_window": [args.kmin, args.kmax],
        "stage_pairs": [[g, g + 1] for g in report.stages],
        "metrics": list(report.metrics),
    }
    _emit([json.dumps(payload, indent=2)], args.out)
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    spec = _build_spec(args)
    print(f"valid: L={spec.L} V={spec.V} rho={spec.rho} alpha={spec.alpha} "
          f"beta={spec.beta} G={spec.G}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ucpscatter",
        description="Quantum transmission through unified Cantor barrier systems",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transmission", help="T(k) sweep for one spec")
    _spec_arguments(p)
    _sweep_arguments(p)
    p.add_argument("--engine", choices=["closed_form", "oracle", "both"])
    _common_arguments(p)
    p.set_defaults(func=cmd_transmission)

    p = sub.add_parser("grid", help="T over an (alpha, beta, rho) grid at fixed k values")
    _spec_arguments(p)
    for axis in ("alpha", "beta", "rho"):
        p.add_argument(f"--{axis}-range", help=f"{axis} axis as MIN:MAX:COUNT")
    p.add_argument("--k", help="comma-separated wavenumbers")
    _common_arguments(p)
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("geometry", help="explicit barrier intervals as CSV")
    _spec_arguments(p)
    _common_arguments(p)
    p.set_defaults(func=cmd_geometry)

    p = sub.add_parser("scaling", help="log-log reflection scaling fit as JSON")
    _spec_arguments(p)
    p.add_argument("--V0", type=float, help="stage-0 height for constant-area scaling")
    _sweep_arguments(p)
    _common_arguments(p)
    p.set_defaults(func=cmd_scaling)

    p = sub.add_parser("saturation", help="stage-to-stage transmission distances as JSON")
    _spec_arguments(p)
    p.add_argument("--gmin", type=int, help="first stage")
    p.add_argument("--gmax", type=int, help="last stage")
    _sweep_arguments(p)
    _common_arguments(p)
    p.set_defaults(func=cmd_saturation)

    p = sub.add_parser("validate", help="check spec well-formedness")
    _spec_arguments(p)
    _common_arguments(p)
    p.set_defaults(func=cmd_validate)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "config", None):
        _apply_config(args, _load_config(args.config))
    try:
        return args.func(args)
    except InvalidSpecError as exc:
        print(f"invalid spec: {exc}", file=sys.stderr)
        return EXIT_INVALID_SPEC
    except OracleInfeasibleError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_ORACLE_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
