"""Command-line front end.

Subcommands: run (config-driven time marching), converge (joint space-time
refinement study), example1 (1D relaxation sweep), coarsen (2D coarsening
from seeded noise plus power-law fits), and fit (power-law fit over an
existing diagnostics CSV).  Every run writes into a subdirectory of the
output root derived from a hash of its resolved parameters, so concurrent
runs never share files and identical invocations are byte-reproducible.

Exit codes: 0 success, 2 configuration error, 3 runtime blow-up, 4 I/O error.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from pathlib import Path

from . import harness
from .config import (
    build_initial_condition,
    config_echo,
    config_hash,
    grid_from_config,
    parse_config,
    resolve_config,
    run_config_from_config,
)
from .diagnostics import free_energy_density
from .errors import (
    BlowUpError,
    ConfigurationError,
    FitError,
    GridMismatchError,
    RunawayError,
    SamplingError,
)
from .outputs import (
    read_diagnostics_csv,
    write_diagnostics_csv,
    write_snapshot,
    write_table_csv,
)
from .splitting import MemorySink, evolve

_CONFIG_ERRORS = (ConfigurationError, FitError, SamplingError, GridMismatchError)


def _parse_threads(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("--threads must be a positive integer")
    return n


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", default=None, help="output root directory")
    parser.add_argument(
        "--threads",
        type=_parse_threads,
        default=1,
        metavar="N",
        help="execution hint; kernels are single threaded and bitwise "
        "reproducible at every accepted value",
    )


def _int_list(text: str) -> list[int]:
    return [int(p) for p in text.split(",") if p.strip()]


def _float_list(text: str) -> list[float]:
    return [float(p) for p in text.split(",") if p.strip()]


def _prepare_dir(root: str | Path, label: str, params_text: str) -> Path:
    digest = hashlib.sha256(params_text.encode()).hexdigest()[:12]
    out_dir = Path(root) / f"{label}-{digest}"
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "params.txt").write_bytes(params_text.encode("ascii"))
    return out_dir


def _params_text(pairs) -> str:
    return "".join(f"{k} = {v}\n" for k, v in pairs)


def _cmd_run(args) -> int:
    raw = parse_config(Path(args.config).read_text()) if args.config else {}
    overrides = {}
    for item in args.set or []:
        if "=" not in item:
            raise ConfigurationError(f"--set expects key=value, got {item!r}")
        key, value = item.split("=", 1)
        overrides[key.strip()] = value.strip()
    cfg = resolve_config(raw, overrides)

    out_dir = Path(args.out if args.out else cfg.out_dir) / f"run-{config_hash(cfg)}"
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "config_echo.cfg").write_bytes(config_echo(cfg).encode("ascii"))

    grid = grid_from_config(cfg)
    u0 = build_initial_condition(cfg, grid)

    class _Sink(MemorySink):
        def snapshot(self, field, t):
            write_snapshot(field, out_dir / f"snapshot_t{t:g}.mbef")

    sink = _Sink()
    final = evolve(u0, run_config_from_config(cfg), sink)
    write_diagnostics_csv(sink.records, out_dir / "diagnostics.csv")
    write_snapshot(final, out_dir / "final_state.mbef")
    print(f"wrote {out_dir}")
    return 0


def _cmd_converge(args) -> int:
    problem = harness.accuracy_problem(delta=args.delta, final_time=args.final_time)
    c0 = harness.c0_from_anchor(args.anchor_tau, args.anchor_j, problem.L)
    taus = [c0 * (2.0 * problem.L / J) ** 2 for J in args.j_list]
    tau_ref = args.tau_ref if args.tau_ref is not None else min(taus) / 8.0
    params = _params_text(
        [
            ("study", "converge"),
            ("j_list", ",".join(str(j) for j in args.j_list)),
            ("j_ref", args.j_ref),
            ("tau_ref", format(tau_ref, ".17g")),
            ("anchor_j", args.anchor_j),
            ("anchor_tau", format(args.anchor_tau, ".17g")),
            ("delta", format(args.delta, ".17g")),
            ("T", format(args.final_time, ".17g")),
        ]
    )
    out_dir = _prepare_dir(args.out or "out", "converge", params)
    rows = harness.convergence_study(
        problem, args.j_list, c0, harness.ReferenceSpec(args.j_ref, tau_ref)
    )
    write_table_csv(rows, out_dir / "convergence.csv")
    print("J      tau          error        ratio    order")
    for r in rows:
        ratio = f"{r.ratio:8.4f}" if r.ratio is not None else "       -"
        order = f"{r.order:7.4f}" if r.order is not None else "      -"
        print(f"{r.J:<6d} {r.tau:<12.6g} {r.error:<12.6g} {ratio} {order}")
    print(f"wrote {out_dir}")
    return 0


def _cmd_example1(args) -> int:
    deltas = list(harness.EXAMPLE1_MENU) if args.all else [args.delta]
    params = _params_text(
        [
            ("study", "example1"),
            ("deltas", ",".join(format(d, ".17g") for d in deltas)),
            ("J", args.j if args.j is not None else "menu"),
            ("tau", format(args.tau, ".17g") if args.tau is not None else "delta/10"),
            ("T", format(args.final_time, ".17g") if args.final_time is not None else "menu"),
        ]
    )
    out_dir = _prepare_dir(args.out or "out", "example1", params)
    for delta in deltas:
        final, records = harness.run_example1(
            delta, J=args.j, tau=args.tau, T=args.final_time
        )
        tag = format(delta, "g").replace(".", "p")
        write_diagnostics_csv(records, out_dir / f"diagnostics_delta{tag}.csv")
        write_snapshot(final, out_dir / f"final_state_delta{tag}.mbef")
        print(
            f"delta={delta:g}: energy {records[0].energy:.6g} -> {records[-1].energy:.6g}, "
            f"max|u_x| {records[-1].max_grad:.4f}"
        )
    print(f"wrote {out_dir}")
    return 0


def _cmd_coarsen(args) -> int:
    window = tuple(args.window)
    params = _params_text(
        [
            ("study", "coarsen"),
            ("J", args.j),
            ("L", format(args.length, ".17g")),
            ("delta", format(args.delta, ".17g")),
            ("tau", format(args.tau, ".17g")),
            ("T", format(args.final_time, ".17g")),
            ("seed", args.seed),
            ("window", f"{window[0]:.17g},{window[1]:.17g}"),
            ("snapshot_times", ",".join(format(t, "g") for t in args.snapshot_times)),
            ("t0", format(args.t0, ".17g")),
            ("samples_per_decade", args.samples_per_decade),
        ]
    )
    out_dir = _prepare_dir(args.out or "out", "coarsen", params)
    result = harness.run_example2(
        J=args.j,
        L=args.length,
        delta=args.delta,
        tau=args.tau,
        T=args.final_time,
        seed=args.seed,
        snapshot_times=tuple(args.snapshot_times),
        t0=args.t0,
        samples_per_decade=args.samples_per_decade,
    )
    write_diagnostics_csv(result.records, out_dir / "diagnostics.csv")
    for t, field in result.field_snapshots:
        write_snapshot(field, out_dir / f"snapshot_u_t{t:g}.mbef")
    for t, field in result.density_snapshots:
        write_snapshot(field, out_dir / f"snapshot_fed_t{t:g}.mbef")
    write_snapshot(result.final, out_dir / "final_state.mbef")

    for column in ("energy", "roughness"):
        series = [(r.t, getattr(r, column)) for r in result.records]
        fit = harness.fit_power_law(series, window)
        write_table_csv([fit], out_dir / f"fit_{column}.csv")
        print(f"{column}: slope {fit.slope:+.4f} (residual {fit.residual:.3g})")
    print(f"wrote {out_dir}")
    return 0


def _cmd_fit(args) -> int:
    records = read_diagnostics_csv(args.input)
    valid = {"energy", "roughness", "mean_u", "max_grad"}
    if args.column not in valid:
        raise ConfigurationError(f"unknown column '{args.column}'; choose from {sorted(valid)}")
    series = [(r.t, getattr(r, args.column)) for r in records]
    fit = harness.fit_power_law(series, tuple(args.window))
    print(
        f"slope {fit.slope:+.6f}  intercept {fit.intercept:+.6f}  "
        f"window ({fit.window[0]:g}, {fit.window[1]:g})  residual {fit.residual:.4g}"
    )
    if args.out:
        out_dir = _prepare_dir(
            args.out,
            "fit",
            _params_text(
                [
                    ("study", "fit"),
                    ("input", args.input),
                    ("column", args.column),
                    ("window", f"{args.window[0]:.17g},{args.window[1]:.17g}"),
                ]
            ),
        )
        write_table_csv([fit], out_dir / "fit.csv")
        print(f"wrote {out_dir}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mbeflow",
        description="Operator-splitting solver for slope-selecting thin-film growth",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="march a configured run to its final time")
    p_run.add_argument("--config", default=None, help="path to a key=value config file")
    p_run.add_argument(
        "--set",
        action="append",
        metavar="KEY=VALUE",
        help="override a config key (repeatable; wins over the file)",
    )
    _add_common(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_conv = sub.add_parser("converge", help="joint space-time refinement study")
    p_conv.add_argument("--j-list", type=_int_list, default=[64, 128, 256])
    p_conv.add_argument("--j-ref", type=int, default=512)
    p_conv.add_argument("--anchor-j", type=int, default=128)
    p_conv.add_argument("--anchor-tau", type=float, default=0.005)
    p_conv.add_argument("--tau-ref", type=float, default=None)
    p_conv.add_argument("--delta", type=float, default=0.1)
    p_conv.add_argument("--final-time", type=float, default=1.0)
    _add_common(p_conv)
    p_conv.set_defaults(func=_cmd_converge)

    p_ex1 = sub.add_parser("example1", help="1D relaxation toward unit slopes")
    p_ex1.add_argument("--delta", type=float, default=1.0)
    p_ex1.add_argument("--all", action="store_true", help="run every preset delta")
    p_ex1.add_argument("--j", type=int, default=None)
    p_ex1.add_argument("--tau", type=float, default=None)
    p_ex1.add_argument("--final-time", type=float, default=None)
    _add_common(p_ex1)
    p_ex1.set_defaults(func=_cmd_example1)

    p_coar = sub.add_parser("coarsen", help="2D coarsening from seeded noise")
    p_coar.add_argument("--j", type=int, default=256)
    p_coar.add_argument("--length", type=float, default=50.0, metavar="L")
    p_coar.add_argument("--delta", type=float, default=0.1)
    p_coar.add_argument("--tau", type=float, default=0.01)
    p_coar.add_argument("--final-time", type=float, default=400.0)
    p_coar.add_argument("--seed", type=int, required=True)
    p_coar.add_argument("--window", type=float, nargs=2, default=[20.0, 400.0])
    p_coar.add_argument("--snapshot-times", type=_float_list, default=[])
    p_coar.add_argument("--t0", type=float, default=1.0)
    p_coar.add_argument("--samples-per-decade", type=int, default=31)
    _add_common(p_coar)
    p_coar.set_defaults(func=_cmd_coarsen)

    p_fit = sub.add_parser("fit", help="power-law fit over a diagnostics CSV")
    p_fit.add_argument("--in", dest="input", required=True)
    p_fit.add_argument("--column", default="energy")
    p_fit.add_argument("--window", type=float, nargs=2, required=True)
    _add_common(p_fit)
    p_fit.set_defaults(func=_cmd_fit)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CONFIG_ERRORS as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (BlowUpError, RunawayError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 3
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
