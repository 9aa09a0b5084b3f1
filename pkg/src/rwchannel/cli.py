"""Command-line interface: cosmology sweep -> channel -> regions -> validation.

Subcommands
    eta-sweep   transmissivity vs momentum, CSV export
    region      trade-off region boundary, CSV + JSON metadata
    compare     trade-off boundary vs time-sharing chord
    validate    oracle and analysis suites, JSON report

Exit codes: 0 success, 1 usage error, 2 numerical/validation failure.
Outputs are byte-identical for identical flags and seed.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from . import __version__
from .cosmology import CosmologyParams, eta_sweep, transmissivity
from .errors import DomainError
from .parallel import parallel_map
from .regions import (
    classical_capacity_product,
    cq_boundary,
    cq_boundary_general,
    cqe_corner_sweep,
    ea_classical_anchor,
    entanglement_envelope,
    quantum_capacity,
    rate_envelope,
)
from .validation import run_validation

THREADS_ENV = "RWCHANNEL_THREADS"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2


class UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _default_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def parse_values(text: str) -> list[float]:
    """Parse '10', '1,2,5' or 'start:stop:step' (inclusive) into floats."""
    text = text.strip()
    if "," in text:
        return [float(v) for v in text.split(",") if v.strip()]
    if ":" in text:
        parts = text.split(":")
        if len(parts) == 2:
            lo, hi = float(parts[0]), float(parts[1])
            return [lo, hi]
        if len(parts) == 3:
            lo, hi, step = float(parts[0]), float(parts[1]), float(parts[2])
            if step <= 0:
                raise UsageError(f"step must be positive in {text!r}")
            out = []
            v = lo
            i = 0
            while v <= hi + 1e-12 * max(1.0, abs(hi)):
                out.append(lo + i * step)
                i += 1
                v = lo + i * step
            return out
        raise UsageError(f"cannot parse value list {text!r}")
    return [float(text)]


def parse_range(text: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise UsageError(f"expected 'min:max', got {text!r}")
    return float(parts[0]), float(parts[1])


def read_config(path: str) -> dict[str, str]:
    """Plain key=value lines; '#' starts a comment."""
    out: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value, got {raw.rstrip()!r}")
            key, value = line.split("=", 1)
            out[key.strip().replace("-", "_")] = value.strip()
    return out


def apply_config(args: argparse.Namespace, parser_defaults: dict) -> argparse.Namespace:
    """Resolve flags > config > defaults for every None-valued option."""
    if not getattr(args, "config", None):
        for key, default in parser_defaults.items():
            if getattr(args, key, None) is None:
                setattr(args, key, default)
        return args
    cfg = read_config(args.config)
    unknown = set(cfg) - set(parser_defaults)
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    for key, default in parser_defaults.items():
        if getattr(args, key, None) is not None:
            continue
        if key in cfg:
            raw = cfg[key]
            if isinstance(default, bool):
                setattr(args, key, raw.lower() in ("1", "true", "yes", "on"))
            elif isinstance(default, int):
                setattr(args, key, int(raw))
            elif isinstance(default, float):
                setattr(args, key, float(raw))
            else:
                setattr(args, key, raw)
        else:
            setattr(args, key, default)
    return args


def _open_csv(path: str):
    try:
        fh = open(path, "w", newline="", encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc
    return fh, csv.writer(fh, lineterminator="\r\n")


# ---------------------------------------------------------------------------
# subcommands

ETA_SWEEP_DEFAULTS = {
    "epsilon": "10",
    "rho": 100.0,
    "mass": 1.0,
    "k": "0.001:50",
    "steps": 500,
    "grid": "log",
    "out": "eta_sweep.csv",
    "threads": 0,
}


def cmd_eta_sweep(args) -> int:
    epsilons = sorted(parse_values(args.epsilon))
    k_min, k_max = parse_range(args.k)
    threads = args.threads or _default_threads()

    def sweep_one(eps: float):
        if eps == 0.0:
            params = CosmologyParams(epsilon=0.0, rho=args.rho, mass=args.mass)
        else:
            params = CosmologyParams(epsilon=eps, rho=args.rho, mass=args.mass)
        return eta_sweep(params, k_min, k_max, args.steps, grid=args.grid)

    sweeps = parallel_map(sweep_one, epsilons, threads)
    fh, writer = _open_csv(args.out)
    with fh:
        if len(epsilons) == 1:
            writer.writerow(["k", "eta", "n"])
            for k, t in sweeps[0]:
                writer.writerow([_fmt(k), _fmt(t.eta), _fmt(t.particle_density)])
        else:
            writer.writerow(["epsilon", "k", "eta", "n"])
            for eps, rows in zip(epsilons, sweeps):
                for k, t in rows:
                    writer.writerow([_fmt(eps), _fmt(k), _fmt(t.eta), _fmt(t.particle_density)])
    return EXIT_OK


# grid_p/grid_nu = 0 selects the per-mode default: 513 for the cq Pareto
# sweep, 129 for the cqe corner cloud (three corners per cell)
REGION_DEFAULTS = {
    "eta": None,
    "from_cosmology": False,
    "epsilon": None,
    "rho": None,
    "mass": None,
    "k": None,
    "mode": "cq",
    "general": False,
    "grid_p": 0,
    "grid_nu": 0,
    "grid": 17,
    "out": "region.csv",
    "threads": 0,
}


def _resolve_eta(args) -> tuple[float, dict]:
    if args.from_cosmology:
        missing = [n for n in ("epsilon", "rho", "mass", "k") if getattr(args, n) is None]
        if missing:
            raise UsageError(f"--from-cosmology needs --{', --'.join(missing)}")
        params = CosmologyParams(epsilon=args.epsilon, rho=args.rho, mass=args.mass)
        t = transmissivity(params, args.k)
        source = {
            "epsilon": args.epsilon,
            "rho": args.rho,
            "mass": args.mass,
            "k": args.k,
            "particle_density": t.particle_density,
        }
        return t.eta, source
    if args.eta is None:
        raise UsageError("give --eta or --from-cosmology with (epsilon, rho, mass, k)")
    if not 0.0 <= args.eta <= 1.0:
        raise UsageError(f"--eta must lie in [0, 1], got {args.eta!r}")
    return args.eta, {}


def cmd_region(args) -> int:
    eta, source = _resolve_eta(args)
    if args.mode not in ("cq", "cqe"):
        raise UsageError(f"--mode must be cq or cqe, got {args.mode!r}")
    if args.mode == "cqe" and eta < 0.5:
        raise UsageError(
            f"the triple-region sweep applies to eta >= 0.5, got eta={eta:.6g}"
        )
    if args.mode == "cq" and eta < 0.5 and not args.general:
        raise UsageError(
            f"eta={eta:.6g} < 0.5: the symmetric sweep does not apply; pass --general "
            "for the two-letter ensemble sweep (quantum corners are floored at 0)"
        )
    grid_p = args.grid_p or (513 if args.mode == "cq" else 129)
    grid_nu = args.grid_nu or (513 if args.mode == "cq" else 129)
    if args.mode == "cq":
        if args.general:
            boundary = cq_boundary_general(eta, grid=args.grid)
        else:
            boundary = cq_boundary(eta, grid_p=grid_p, grid_nu=grid_nu)
        header = ["C", "Q", "p", "nu"]
        rows = [
            [_fmt(pt.C), _fmt(pt.Q), _fmt(p), _fmt(v)]
            for pt, (p, v) in zip(boundary.points, boundary.params)
        ]
    else:
        boundary = cqe_corner_sweep(eta, grid_p=grid_p, grid_nu=grid_nu)
        header = ["C", "Q", "E", "p", "nu"]
        rows = [
            [_fmt(pt.C), _fmt(pt.Q), _fmt(pt.E), _fmt(p), _fmt(v)]
            for pt, (p, v) in zip(boundary.points, boundary.params)
        ]
    fh, writer = _open_csv(args.out)
    with fh:
        writer.writerow(header)
        writer.writerows(rows)
    q_cap, _ = quantum_capacity(eta)
    c_prod, _ = classical_capacity_product(eta)
    meta = {
        "tool_version": __version__,
        "mode": boundary.grid.get("mode"),
        "eta": eta,
        "grid": boundary.grid,
        "points": len(boundary.points),
        "quantum_capacity": q_cap,
        "classical_capacity_product": c_prod,
    }
    if source:
        meta["source"] = source
    json_path = os.path.splitext(args.out)[0] + ".json"
    try:
        with open(json_path, "w", encoding="utf-8") as jfh:
            json.dump(meta, jfh, indent=2, sort_keys=True)
            jfh.write("\n")
    except OSError as exc:
        raise UsageError(f"cannot write {json_path}: {exc}") from exc
    return EXIT_OK


COMPARE_DEFAULTS = {
    "eta": 0.75,
    "mode": "cq",
    "samples": 401,
    "out": "compare.csv",
    "threads": 0,
}


def cmd_compare(args) -> int:
    eta = args.eta
    if not 0.5 < eta <= 1.0:
        raise UsageError(f"compare needs eta in (0.5, 1], got {eta!r}")
    if args.samples < 2:
        raise UsageError("--samples must be >= 2")
    import numpy as np

    if args.mode == "cq":
        q_cap, _ = quantum_capacity(eta)
        c_prod, _ = classical_capacity_product(eta)
        c_grid = np.linspace(0.0, c_prod, args.samples)
        tradeoff = rate_envelope(eta, c_grid)
        timeshare = q_cap * (1.0 - c_grid / c_prod)
        fh, writer = _open_csv(args.out)
        with fh:
            writer.writerow(["C", "Q_tradeoff", "Q_timeshare", "gap"])
            for c, qt, qs in zip(c_grid, tradeoff, timeshare):
                writer.writerow([_fmt(c), _fmt(qt), _fmt(qs), _fmt(qt - qs)])
        return EXIT_OK
    if args.mode == "cqe":
        c_prod, _ = classical_capacity_product(eta)
        c_ea, e_ea, _ = ea_classical_anchor(eta)
        e_grid = np.linspace(e_ea, 0.0, args.samples)
        tradeoff = entanglement_envelope(eta, e_grid)
        t = (e_grid - e_ea) / (0.0 - e_ea)
        timeshare = c_ea + t * (c_prod - c_ea)
        fh, writer = _open_csv(args.out)
        with fh:
            writer.writerow(["E", "C_tradeoff", "C_timeshare", "gap"])
            for e, ct, cs in zip(e_grid, tradeoff, timeshare):
                writer.writerow([_fmt(e), _fmt(ct), _fmt(cs), _fmt(ct - cs)])
        return EXIT_OK
    raise UsageError(f"--mode must be cq or cqe, got {args.mode!r}")


VALIDATE_DEFAULTS = {
    "samples": 1000,
    "seed": 7,
    "tol": 1e-9,
    "eta": None,
    "below_half_ordering": False,
    "out": None,
    "threads": 0,
}


def cmd_validate(args) -> int:
    threads = args.threads or _default_threads()
    report = run_validation(
        samples=args.samples,
        seed=args.seed,
        tol=args.tol,
        eta=args.eta,
        below_half_ordering=args.below_half_ordering,
        threads=threads,
    )
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}") from exc
    else:
        sys.stdout.write(text)
    return EXIT_OK if report["ok"] else EXIT_NUMERICAL


# ---------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> _Parser:
    parser = _Parser(
        prog="rwchannel",
        description=(
            "Amplitude damping induced by a smoothly expanding universe and the "
            "classical/quantum information-preservation rate regions of that channel."
        ),
    )
    parser.add_argument("--version", action="version", version=f"rwchannel {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eta-sweep", help="transmissivity vs momentum, CSV export")
    p.add_argument("--epsilon", help="expansion volume(s): '10', '1,2,5' or '10:100:1'")
    p.add_argument("--rho", type=float, help="expansion rapidity")
    p.add_argument("--mass", type=float, help="field mass")
    p.add_argument("--k", help="momentum range 'min:max'")
    p.add_argument("--steps", type=int, help="grid points per sweep")
    p.add_argument("--grid", choices=("log", "linear"), help="momentum grid spacing")
    p.add_argument("--out", help="output CSV path")
    p.add_argument("--threads", type=int, help=f"worker threads (env {THREADS_ENV})")
    p.add_argument("--config", help="key=value config file (flags override)")
    p.set_defaults(func=cmd_eta_sweep, defaults=ETA_SWEEP_DEFAULTS)

    p = sub.add_parser("region", help="rate-region boundary, CSV + JSON metadata")
    p.add_argument("--eta", type=float, help="channel transmissivity")
    p.add_argument("--from-cosmology", action="store_true", default=None,
                   help="derive eta from (--epsilon, --rho, --mass, --k)")
    p.add_argument("--epsilon", type=float, help="expansion volume")
    p.add_argument("--rho", type=float, help="expansion rapidity")
    p.add_argument("--mass", type=float, help="field mass")
    p.add_argument("--k", type=float, help="mode momentum")
    p.add_argument("--mode", choices=("cq", "cqe"), help="two- or three-rate sweep")
    p.add_argument("--general", action="store_true", default=None,
                   help="two-letter ensemble sweep (required below eta = 0.5)")
    p.add_argument("--grid-p", type=int, dest="grid_p", help="p grid points")
    p.add_argument("--grid-nu", type=int, dest="grid_nu", help="nu grid points")
    p.add_argument("--grid", type=int, help="per-axis points of the general sweep")
    p.add_argument("--out", help="output CSV path (JSON written alongside)")
    p.add_argument("--threads", type=int, help=f"worker threads (env {THREADS_ENV})")
    p.add_argument("--config", help="key=value config file (flags override)")
    p.set_defaults(func=cmd_region, defaults=REGION_DEFAULTS)

    p = sub.add_parser("compare", help="trade-off boundary vs time-sharing chord")
    p.add_argument("--eta", type=float, help="channel transmissivity in (0.5, 1]")
    p.add_argument("--mode", choices=("cq", "cqe"), help="comparison plane")
    p.add_argument("--samples", type=int, help="points along the axis")
    p.add_argument("--out", help="output CSV path")
    p.add_argument("--threads", type=int, help=f"worker threads (env {THREADS_ENV})")
    p.add_argument("--config", help="key=value config file (flags override)")
    p.set_defaults(func=cmd_compare, defaults=COMPARE_DEFAULTS)

    p = sub.add_parser("validate", help="oracle and analysis suites, JSON report")
    p.add_argument("--samples", type=int, help="random draws for the oracle suite")
    p.add_argument("--seed", type=int, help="RNG seed")
    p.add_argument("--tol", type=float, help="violation tolerance")
    p.add_argument("--eta", type=float, help="fix the transmissivity (default: random)")
    p.add_argument("--below-half-ordering", action="store_true", default=None,
                   dest="below_half_ordering",
                   help="run the ordering check at --eta even below 0.5 (informational)")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--threads", type=int, help=f"worker threads (env {THREADS_ENV})")
    p.add_argument("--config", help="key=value config file (flags override)")
    p.set_defaults(func=cmd_validate, defaults=VALIDATE_DEFAULTS)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args = apply_config(args, args.defaults)
        return args.func(args)
    except UsageError as exc:
        print(f"rwchannel: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, ArithmeticError) as exc:
        print(f"rwchannel: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
