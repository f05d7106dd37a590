"""Command-line interface.

Subcommands: ``simulate`` (scenario config to CSV), ``separate`` (CSV to
estimated sources), ``evaluate`` (estimates against known sources),
``montecarlo`` (RMS-error tables over repeated noisy runs), and
``plotdata`` (phase-plot and sorted-heading diagnostic CSVs).

Reports are written twice: a human-readable text file at the requested
path and a machine-readable JSON document next to it (``.json`` suffix).
The ``SPARSEBSS_WORKERS`` environment variable sets the default process
count for ``montecarlo``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .clustering import sort_component
from .config import PRESET_NAMES, load_config
from .errors import (
    AllRunsFailedError,
    ClusterFormationFailedError,
    SparseBssError,
)
from .evaluation import (
    WORKERS_ENV_VAR,
    associate,
    monte_carlo,
    pointwise_error,
    rms_metrics,
)
from .headings import compute_velocities, normalize_headings
from .io import read_csv, write_csv
from .rng import derive_seed
from .separation import MethodParams, separate
from .signals import normalize_unit_norm
from .simulate import add_noise
from .whitening import gram_schmidt_whiten


def _write_report(path: Path, text: str, payload: dict) -> None:
    """Text report at ``path``; JSON alongside (suffix swapped to .json)."""
    json_path = path.with_suffix(".json")
    text_path = path if path != json_path else path.with_suffix(".txt")
    text_path.parent.mkdir(parents=True, exist_ok=True)
    text_path.write_text(text)
    json_path.write_text(json.dumps(payload, indent=2, default=_jsonify) + "\n")


def _jsonify(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    raise TypeError(f"cannot serialize {type(obj)}")


def cmd_simulate(args) -> int:
    config = load_config(args.config)
    sources, clean = config.generate()
    mixtures = add_noise(clean, config.noise_sd, derive_seed(config.seed, 0))
    outdir = Path(args.output)
    outdir.mkdir(parents=True, exist_ok=True)
    write_csv(outdir / "sources.csv", sources, [f"source_{i+1}" for i in range(sources.shape[0])])
    write_csv(outdir / "mixtures.csv", mixtures, [f"mixture_{i+1}" for i in range(mixtures.shape[0])])
    print(f"wrote {outdir / 'sources.csv'} and {outdir / 'mixtures.csv'}")
    return 0


def cmd_separate(args) -> int:
    _, data = read_csv(args.input)
    if data.shape[0] < 2:
        print("error: separation needs at least 2 channels", file=sys.stderr)
        return 2
    params = MethodParams(method=args.method, v_th=args.vth, alpha=args.alpha)
    result = separate(data, params)
    out = Path(args.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    names = [f"estimate_{i+1}" for i in range(result.estimates.shape[0])]
    write_csv(out, result.estimates, names)
    report_path = out.with_name(out.stem + "_report.txt")
    lines = [f"separation report ({params.method}, v_th={params.v_th}, alpha={params.alpha})"]
    payload = {
        "method": params.method,
        "v_th": params.v_th,
        "alpha": params.alpha,
        "directions": [d.unit_vector for d in result.directions],
        "iterations": [],
    }
    for i, (direction, diag) in enumerate(zip(result.directions, result.iterations)):
        vec = ", ".join(f"{v:+.6f}" for v in direction.unit_vector)
        lines.append(
            f"  iteration {i}: direction ({vec}), accepted {diag.accepted_count}, "
            f"cluster size {diag.cluster_size}, residual energy {diag.residual_energy:.6g}"
        )
        payload["iterations"].append(
            {
                "accepted_count": diag.accepted_count,
                "cluster_size": diag.cluster_size,
                "epsilon": diag.epsilon,
                "member_indices": diag.member_indices,
                "residual_energy": diag.residual_energy,
            }
        )
    _write_report(report_path, "\n".join(lines) + "\n", payload)
    print(f"wrote {out} and {report_path}")
    return 0


def cmd_evaluate(args) -> int:
    _, actual = read_csv(args.actual)
    _, estimates = read_csv(args.estimates)
    actual_n = normalize_unit_norm(actual)
    estimates_n = normalize_unit_norm(estimates)
    assoc = associate(actual_n, estimates_n)
    lines = ["evaluation report"]
    payload = {"association": [], "unit": "per-sample error on unit-norm signals"}
    for r in range(actual_n.shape[0]):
        err = pointwise_error(
            actual_n[r], estimates_n[assoc.permutation[r]], assoc.signs[r]
        )
        _, rms_tot, rms_max = rms_metrics(err[None, :])
        lines.append(
            f"  source {r+1} <- estimate {assoc.permutation[r]+1}"
            f" (corr {assoc.correlations[r]:+.6f}):"
            f" rms_tot {rms_tot:.6g}, rms_max {rms_max:.6g}"
        )
        payload["association"].append(
            {
                "source": r + 1,
                "estimate": int(assoc.permutation[r]) + 1,
                "correlation": float(assoc.correlations[r]),
                "sign": float(assoc.signs[r]),
                "rms_tot": rms_tot,
                "rms_max": rms_max,
            }
        )
    _write_report(Path(args.report), "\n".join(lines) + "\n", payload)
    print(f"wrote {args.report}")
    return 0


def cmd_montecarlo(args) -> int:
    config = load_config(args.config)
    metric = args.metric
    header = (
        f"{'method':8s} {'v_th':>5s}  "
        + "  ".join(f"source_{i+1} (x1e3)" for i in range(len(config.mixing)))
        + "  failures"
    )
    lines = [
        f"monte carlo: {args.sets} sets x {args.runs} runs, "
        f"noise sd {config.noise_sd}, metric rms_{metric}",
        header,
    ]
    payload = {
        "sets": args.sets,
        "runs_per_set": args.runs,
        "noise_sd": config.noise_sd,
        "metric": f"rms_{metric}",
        "rows": [],
    }
    for vth in args.vth:
        params = MethodParams(method=args.method, v_th=vth, alpha=args.alpha)
        try:
            report = monte_carlo(
                config, params, args.sets, args.runs,
                master_seed=args.seed, workers=args.workers,
            )
        except AllRunsFailedError:
            lines.append(
                f"{args.method:8s} {vth:5.2f}  "
                + "  ".join("---".center(16) for _ in range(len(config.mixing)))
                + "  100.0%"
            )
            payload["rows"].append(
                {"method": args.method, "v_th": vth, "failure_rate": 1.0, "values": None}
            )
            continue
        mean = report.mean_rms_max if metric == "max" else report.mean_rms_tot
        sd = report.sd_rms_max if metric == "max" else report.sd_rms_tot
        cells = [f"{1e3*m:.3g} ({1e3*s:.3g})".ljust(16) for m, s in zip(mean, sd)]
        lines.append(
            f"{args.method:8s} {vth:5.2f}  "
            + "  ".join(cells)
            + f"  {100 * report.failure_rate:.1f}%"
        )
        payload["rows"].append(
            {
                "method": args.method,
                "v_th": vth,
                "mean_x1e3": [1e3 * m for m in mean],
                "sd_x1e3": [1e3 * s for s in sd],
                "failures": report.failures,
                "total_runs": report.total_runs,
                "failure_rate": report.failure_rate,
            }
        )
    _write_report(Path(args.report), "\n".join(lines) + "\n", payload)
    print("\n".join(lines))
    return 0


def cmd_plotdata(args) -> int:
    _, data = read_csv(args.input)
    if args.kind == "phase":
        whitened = gram_schmidt_whiten(data)
        names = [f"e_{i+1}" for i in range(whitened.components.shape[0])]
        write_csv(args.output, whitened.components, names)
    else:  # sorted-headings
        velocities = compute_velocities(data)
        headings, zero_mask = normalize_headings(velocities)
        live = np.abs(headings[~zero_mask])
        if live.shape[0] < 2:
            print("error: fewer than 2 nonzero headings", file=sys.stderr)
            return 2
        columns = np.vstack(
            [sort_component(live, i).values for i in range(live.shape[1])]
        )
        names = [f"sorted_heading_{i+1}" for i in range(columns.shape[0])]
        write_csv(args.output, columns, names)
    print(f"wrote {args.output}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sparsebss",
        description="Blind separation of sparse sources by heading clustering.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="generate a scenario's CSV files")
    p.add_argument("config", help=f"config JSON path or preset name {PRESET_NAMES}")
    p.add_argument("output", help="output directory for sources.csv and mixtures.csv")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("separate", help="extract sources from a mixtures CSV")
    p.add_argument("input", help="mixtures CSV (channels as columns)")
    p.add_argument("output", help="estimates CSV path")
    p.add_argument("--method", choices=["global", "mhc"], default="global")
    p.add_argument("--vth", type=float, default=0.4, help="velocity threshold in (0,1)")
    p.add_argument("--alpha", type=float, default=1.0, help="gap-threshold scale in (0,1]")
    p.set_defaults(func=cmd_separate)

    p = sub.add_parser("evaluate", help="compare estimates against known sources")
    p.add_argument("actual", help="actual sources CSV")
    p.add_argument("estimates", help="estimated sources CSV")
    p.add_argument("report", help="report path (text; .json written alongside)")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("montecarlo", help="RMS-error table over repeated noisy runs")
    p.add_argument("config", help=f"config JSON path or preset name {PRESET_NAMES}")
    p.add_argument("report", help="report path (text; .json written alongside)")
    p.add_argument("--method", choices=["global", "mhc"], default="global")
    p.add_argument("--vth", type=float, nargs="+", required=True,
                   help="one table row per threshold value")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--sets", type=int, default=10)
    p.add_argument("--runs", type=int, default=1000)
    p.add_argument("--seed", type=int, default=None,
                   help="master seed (default: the config's seed)")
    p.add_argument("--metric", choices=["max", "tot"], default="max")
    p.add_argument("--workers", type=int, default=None,
                   help=f"process count (default: ${WORKERS_ENV_VAR} or 1)")
    p.set_defaults(func=cmd_montecarlo)

    p = sub.add_parser("plotdata", help="diagnostic plot data as CSV")
    p.add_argument("input", help="signal CSV (channels as columns)")
    p.add_argument("output", help="output CSV path")
    p.add_argument("--kind", choices=["phase", "sorted-headings"], required=True)
    p.set_defaults(func=cmd_plotdata)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ClusterFormationFailedError as err:
        print(f"error: {err}", file=sys.stderr)
        return 3
    except (SparseBssError, ValueError, FileNotFoundError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
