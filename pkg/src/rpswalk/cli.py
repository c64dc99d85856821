"""Command-line interface.

Subcommands: `entropy` (mass-function entropy and max-entropy tables),
`dist` (length-distribution tables), `rvg` (step samples), `rvg-enum`
(exact support and moments), `walk` (path generation), `verify` (named
check suites), and `plot` (CSV to SVG rendering).

Every seeded subcommand is bit-reproducible: the same invocation writes
byte-identical data files regardless of run count or worker count.
Floats are printed in shortest round-trip form; CSV output always has a
header row, comma separators, and newline endings.  Exit codes: 0 for
success (and all checks passing), 1 for verification failure, 2 for
usage or input errors, 3 for capacity limits.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from . import __version__
from .errors import CapacityError
from .length_dist import (
    LengthKind,
    per_length_distribution,
    rps_length_distribution,
)
from .rps_core import PermutationMassFunction, max_rps_entropy, rps_entropy
from .rvg import RngStream, enumerate_support, exact_moments, sample_step
from .stats import SUITE_NAMES, histogram, moment_series, run_suite
from .walk import DEFAULT_RHO, WalkConfig, generate_ensemble

OUT_DIR_ENV = "RPSWALK_OUT_DIR"

__all__ = ["main", "OUT_DIR_ENV", "RunManifest"]


@dataclass(frozen=True)
class RunManifest:
    """Record of one file-writing run, sufficient to reproduce its outputs."""

    command: tuple[str, ...]
    config: dict[str, Any]
    master_seed: int
    version: str
    outputs: tuple[str, ...]
    duration_seconds: float

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "command": list(self.command),
            "config": dict(self.config),
            "master_seed": self.master_seed,
            "version": self.version,
            "outputs": list(self.outputs),
            "duration_seconds": self.duration_seconds,
        }


def _fmt(value: float) -> str:
    """Shortest decimal string that round-trips to the same float."""
    return repr(float(value))


def _cell(value: Any) -> str:
    if isinstance(value, (float, np.floating)):
        return _fmt(float(value))
    return str(int(value))


def _write_csv(path: Path, header: str, rows: Iterable[Iterable[Any]]) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(_cell(v) for v in row) + "\n")


def _read_csv(path: str) -> tuple[list[str], np.ndarray]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = [name.strip() for name in next(reader)]
        except StopIteration:
            raise ValueError(f"{path} is empty") from None
        rows = [row for row in reader if row]
    if not rows:
        raise ValueError(f"{path} has no data rows")
    data = np.array([[float(v) for v in row] for row in rows])
    return header, data


def _out_dir(args: argparse.Namespace) -> Path:
    chosen = args.out_dir or os.environ.get(OUT_DIR_ENV) or "."
    path = Path(chosen)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _length_distribution(kind: str, N: int):
    if kind == LengthKind.RPS.value:
        return rps_length_distribution(N)
    return per_length_distribution(N)


# Defaults are applied after merging an optional --config JSON file; any
# flag given on the command line wins over the file.
_DEFAULTS: dict[str, dict[str, Any]] = {
    "entropy": {"base": 2.0, "max_n": None},
    "dist": {"kind": "rps", "max_len": None, "format": "csv"},
    "rvg": {"n": None, "samples": 1, "seed": 0, "stream": 0, "out": None},
    "rvg-enum": {"n": None, "out_dir": None},
    "walk": {
        "steps": None,
        "max_len": None,
        "dist": "rps",
        "seed": 0,
        "paths": 1,
        "scaled": False,
        "rho": DEFAULT_RHO,
        "out_dir": None,
    },
    "verify": {
        "suite": None,
        "seed": 0,
        "paths": None,
        "steps": None,
        "max_len": None,
        "rho": None,
        "json": None,
    },
    "plot": {"kind": "path", "out": None, "column": None, "bins": 30},
}

_CHOICES: dict[tuple[str, str], tuple[str, ...]] = {
    ("dist", "kind"): ("rps", "per"),
    ("dist", "format"): ("csv", "json"),
    ("walk", "dist"): ("rps", "per"),
    ("verify", "suite"): SUITE_NAMES,
    ("plot", "kind"): ("path", "hist", "series"),
}


def _resolve(args: argparse.Namespace) -> argparse.Namespace:
    """Fill unset options from the --config file, then from defaults."""
    config: dict[str, Any] = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            loaded = json.load(fh)
        if not isinstance(loaded, dict):
            raise ValueError(f"config file {args.config} must hold a JSON object")
        config = loaded
    for dest, default in _DEFAULTS[args.command].items():
        if getattr(args, dest, None) is None:
            setattr(args, dest, config.get(dest, default))
    for (command, dest), allowed in _CHOICES.items():
        if command == args.command and getattr(args, dest) is not None:
            if getattr(args, dest) not in allowed:
                raise ValueError(
                    f"--{dest.replace('_', '-')} must be one of {', '.join(allowed)}"
                )
    return args


def _require(args: argparse.Namespace, dest: str) -> Any:
    value = getattr(args, dest)
    if value is None:
        raise ValueError(f"--{dest.replace('_', '-')} is required")
    return value


def _cmd_entropy(args: argparse.Namespace) -> int:
    base = float(args.base)
    if args.max_n is not None:
        print("N,max_entropy")
        for N in range(1, int(args.max_n) + 1):
            print(f"{N},{_fmt(max_rps_entropy(N, base))}")
        return 0
    if args.pmf_file is None:
        raise ValueError("provide a mass-function JSON file or --max-n")
    try:
        with open(args.pmf_file) as fh:
            document = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{args.pmf_file} is not valid JSON: {exc}") from exc
    pmf = PermutationMassFunction.from_json_dict(document)
    print(_fmt(rps_entropy(pmf, base)))
    return 0


def _cmd_dist(args: argparse.Namespace) -> int:
    N = int(_require(args, "max_len"))
    dist = _length_distribution(args.kind, N)
    if args.format == "csv":
        print("n,p")
        for n in range(1, N + 1):
            print(f"{n},{_fmt(dist.probs[n - 1])}")
        return 0
    document = {
        "N": N,
        "kind": args.kind,
        "probs": [float(p) for p in dist.probs],
        "exact": [
            {
                "n": n,
                "numerator": str(ratio.numerator),
                "denominator": str(ratio.denominator),
            }
            for n, ratio in enumerate(dist.exact, start=1)
        ],
    }
    print(json.dumps(document, indent=2))
    return 0


def _cmd_rvg(args: argparse.Namespace) -> int:
    n = int(_require(args, "n"))
    samples = int(args.samples)
    if samples < 1:
        raise ValueError(f"require --samples >= 1, got {samples}")
    rng = RngStream(int(args.seed), int(args.stream))
    lines = ["vx,vy"]
    for _ in range(samples):
        step = sample_step(n, rng)
        lines.append(f"{_fmt(step.v_x)},{_fmt(step.v_y)}")
    text = "\n".join(lines) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(text)
        print(f"wrote {args.out}")
    return 0


def _cmd_rvg_enum(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    n = int(_require(args, "n"))
    directory = _out_dir(args)
    table = enumerate_support(n)
    moments = exact_moments(n)
    support_name = f"support_n{n}.csv"
    moments_name = f"moments_n{n}.json"
    _write_csv(
        directory / support_name,
        "vx,vy,count",
        ((v.v_x, v.v_y, c) for v, c in table.entries),
    )
    moments_doc = {
        "n": n,
        "mean": [moments.mean.v_x, moments.mean.v_y],
        "var_x": moments.var_x,
        "var_y": moments.var_y,
        "cov_xy": moments.cov_xy,
        "distinct_values": len(table.entries),
        "degenerate": moments.degenerate,
    }
    (directory / moments_name).write_text(json.dumps(moments_doc, indent=2) + "\n")
    _write_manifest(
        directory,
        args,
        config={"n": n},
        master_seed=0,
        outputs=(support_name, moments_name),
        started=started,
    )
    print(f"wrote {support_name}, {moments_name} to {directory}")
    return 0


def _cmd_walk(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    steps = int(_require(args, "steps"))
    max_len = int(_require(args, "max_len"))
    seed = int(args.seed)
    paths = int(args.paths)
    if paths < 1:
        raise ValueError(f"require --paths >= 1, got {paths}")
    config = WalkConfig(
        steps=steps,
        max_length=max_len,
        dist_kind=LengthKind(args.dist),
        seed=seed,
        rho=float(args.rho),
        scaled=bool(args.scaled),
    )
    directory = _out_dir(args)
    ensemble = generate_ensemble(config, paths)
    width = max(3, len(str(paths - 1)))
    outputs: list[str] = []
    for j, path in enumerate(ensemble):
        name = f"path_{j:0{width}d}.csv"
        rows = zip(
            path.times,
            path.positions[:, 0],
            path.positions[:, 1],
            np.concatenate([[0], path.step_lengths]),
        )
        _write_csv(directory / name, "t,x,y,n_step", rows)
        outputs.append(name)
    if paths >= 2:
        summary = moment_series(ensemble)
        _write_csv(
            directory / "summary.csv",
            "t,mean_x,mean_y,var_x,var_y",
            zip(summary.times, summary.mean_x, summary.mean_y, summary.var_x, summary.var_y),
        )
        outputs.append("summary.csv")
    _write_manifest(
        directory,
        args,
        config={
            "steps": steps,
            "max_length": max_len,
            "dist_kind": args.dist,
            "seed": seed,
            "paths": paths,
            "rho": float(args.rho),
            "scaled": bool(args.scaled),
        },
        master_seed=seed,
        outputs=tuple(outputs),
        started=started,
    )
    print(f"wrote {len(outputs)} files to {directory}")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    suite = _require(args, "suite")
    report = run_suite(
        suite,
        seed=int(args.seed),
        paths=None if args.paths is None else int(args.paths),
        steps=None if args.steps is None else int(args.steps),
        max_length=None if args.max_len is None else int(args.max_len),
        rho=None if args.rho is None else float(args.rho),
    )
    print(report.to_text())
    if args.json is not None:
        Path(args.json).parent.mkdir(parents=True, exist_ok=True)
        Path(args.json).write_text(json.dumps(report.to_json_dict(), indent=2) + "\n")
    return 0 if report.passed else 1


def _cmd_plot(args: argparse.Namespace) -> int:
    out = _require(args, "out")
    header, data = _read_csv(args.input)

    import matplotlib

    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt
    from matplotlib.collections import LineCollection

    plt.rcParams["svg.hashsalt"] = "rpswalk"  # deterministic SVG ids
    figure, axis = plt.subplots(figsize=(6.4, 4.8))

    def column(name: str) -> np.ndarray:
        if name not in header:
            raise ValueError(f"{args.input} has no column {name!r}")
        return data[:, header.index(name)]

    if args.kind == "path":
        t, x, y = column("t"), column("x"), column("y")
        points = np.column_stack([x, y]).reshape(-1, 1, 2)
        segments = np.concatenate([points[:-1], points[1:]], axis=1)
        collection = LineCollection(segments, array=t[:-1], cmap="viridis", linewidths=1.0)
        axis.add_collection(collection)
        axis.autoscale()
        axis.set_xlabel("x")
        axis.set_ylabel("y")
        figure.colorbar(collection, ax=axis, label="t")
    elif args.kind == "hist":
        name = args.column if args.column is not None else header[0]
        values = column(name)
        bins = int(args.bins)
        result = histogram(values, bins)
        widths = np.diff(result.edges)
        if float(widths.sum()) == 0.0:
            widths = np.full(bins, 1.0)
        axis.bar(result.edges[:-1], result.counts, width=widths, align="edge", edgecolor="black")
        axis.set_xlabel(name)
        axis.set_ylabel("count")
    else:
        t = column("t")
        for name in header:
            if name != "t":
                axis.plot(t, column(name), label=name)
        axis.set_xlabel("t")
        axis.legend()

    Path(out).parent.mkdir(parents=True, exist_ok=True)
    figure.savefig(out, format="svg", metadata={"Date": None})
    plt.close(figure)
    print(f"wrote {out}")
    return 0


def _write_manifest(
    directory: Path,
    args: argparse.Namespace,
    config: dict[str, Any],
    master_seed: int,
    outputs: tuple[str, ...],
    started: float,
) -> None:
    manifest = RunManifest(
        command=tuple(["rpswalk"] + list(args.argv)),
        config=config,
        master_seed=master_seed,
        version=__version__,
        outputs=outputs,
        duration_seconds=time.perf_counter() - started,
    )
    (directory / "manifest.json").write_text(
        json.dumps(manifest.to_json_dict(), indent=2) + "\n"
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rpswalk",
        description="Random walks over random permutation sets: distributions, "
        "sampling, verification, plotting.",
    )
    parser.add_argument("--version", action="version", version=f"rpswalk {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument("--config", help="JSON file of option defaults; flags override it")
        return sub

    sub = add("entropy", "entropy of a mass-function JSON file, or a max-entropy table")
    sub.add_argument("pmf_file", nargs="?", help="mass-function JSON document")
    sub.add_argument("--base", type=float, help="logarithm base (default 2)")
    sub.add_argument("--max-n", type=int, help="print max entropy for frame sizes 1..N")
    sub.set_defaults(func=_cmd_entropy)

    sub = add("dist", "step-length distribution table")
    sub.add_argument("--kind", choices=["rps", "per"], help="weighting kind (default rps)")
    sub.add_argument("--max-len", type=int, help="frame size N")
    sub.add_argument("--format", choices=["csv", "json"], help="output format (default csv)")
    sub.set_defaults(func=_cmd_dist)

    sub = add("rvg", "sample step vectors as CSV")
    sub.add_argument("--n", type=int, help="step size")
    sub.add_argument("--samples", type=int, help="number of draws (default 1)")
    sub.add_argument("--seed", type=int, help="stream seed (default 0)")
    sub.add_argument("--stream", type=int, help="stream index (default 0)")
    sub.add_argument("--out", help="write CSV here instead of stdout")
    sub.set_defaults(func=_cmd_rvg)

    sub = add("rvg-enum", "exact step support and moments by full enumeration")
    sub.add_argument("--n", type=int, help="step size (at most 8)")
    sub.add_argument("--out-dir", help=f"output directory (default ${OUT_DIR_ENV} or .)")
    sub.set_defaults(func=_cmd_rvg_enum)

    sub = add("walk", "generate walk paths and an ensemble summary")
    sub.add_argument("--steps", type=int, help="steps per path")
    sub.add_argument("--max-len", type=int, help="frame size N (at least 2)")
    sub.add_argument("--dist", choices=["rps", "per"], help="length weighting (default rps)")
    sub.add_argument("--seed", type=int, help="master seed (default 0)")
    sub.add_argument("--paths", type=int, help="number of paths (default 1)")
    sub.add_argument(
        "--scaled",
        action="store_true",
        default=None,
        help="rescale to the unit time interval",
    )
    sub.add_argument("--rho", type=float, help="variance control factor (default 24)")
    sub.add_argument("--out-dir", help=f"output directory (default ${OUT_DIR_ENV} or .)")
    sub.set_defaults(func=_cmd_walk)

    sub = add("verify", "run a named check suite and report pass/fail")
    sub.add_argument("--suite", choices=list(SUITE_NAMES), help="which suite to run")
    sub.add_argument("--seed", type=int, help="master seed (default 0)")
    sub.add_argument("--paths", type=int, help="ensemble size (wiener suite)")
    sub.add_argument("--steps", type=int, help="steps per path (wiener suite)")
    sub.add_argument("--max-len", type=int, help="frame size (wiener suite)")
    sub.add_argument("--rho", type=float, help="variance control factor (wiener suite)")
    sub.add_argument("--json", help="also write the report as JSON here")
    sub.set_defaults(func=_cmd_verify)

    sub = add("plot", "render a CSV file to SVG")
    sub.add_argument("input", help="input CSV file")
    sub.add_argument("--kind", choices=["path", "hist", "series"], help="plot type")
    sub.add_argument("--column", help="column to histogram (default: first column)")
    sub.add_argument("--bins", type=int, help="histogram bin count (default 30)")
    sub.add_argument("--out", help="output SVG path")
    sub.set_defaults(func=_cmd_plot)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    argv = list(argv)
    parser = _build_parser()
    args = parser.parse_args(argv)
    args.argv = argv  # echoed into manifests
    try:
        args = _resolve(args)
        return args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
