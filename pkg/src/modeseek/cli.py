"""Command-line entry point: ``modeseek <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .asymptotics import predict_first_iterate_limit
from .bandwidth import Classification, solve_h0
from .data import Dataset, dump_csv, gen_two_gaussians, load_csv, load_pgm, pca2, write_pgm, zscore
from .density import hessian_rank_diagnostic
from .evaluation import evaluate
from .meanshift import MeanShiftConfig, ms_step, run_all, xmax_norm
from .profiles import parse_kernel
from .segmentation import segment


class CLIError(Exception):
    pass


def _manifest(args, **extra) -> dict:
    m = {"tool": "modeseek", "version": __version__, "subcommand": args.command}
    m.update(extra)
    return m


def _emit(obj: dict, out: str | None) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _kernel(spec: str):
    try:
        return parse_kernel(spec)
    except ValueError as exc:
        raise CLIError(str(exc)) from None


def _dataset(args) -> Dataset:
    path = Path(args.data)
    if not path.exists():
        raise CLIError(f"data file not found: {path}")
    ds = load_csv(path, label_column=args.label_column)
    if args.zscore:
        ds = zscore(ds)
    if args.pca2:
        ds = pca2(ds)
    return ds


def _bandwidth(args, profile, pts) -> tuple[float, dict]:
    r = xmax_norm(pts)
    if args.h_mult is not None:
        return args.h_mult * r, {"rule": "h_mult", "h_mult": args.h_mult, "xmax_norm": r}
    if args.h is None:
        raise CLIError("one of --h or --h-mult is required")
    if args.h == "auto":
        rep = solve_h0(profile, r)
        if rep.classification is not Classification.FINITE_ROOT:
            raise CLIError(
                f"--h auto needs a finite threshold, but {profile} gives {rep.classification.value}"
            )
        # the threshold itself is the infimum; step just above it
        h = rep.h0 * (1 + 1e-9) if rep.h0 > 0 else 1.0
        return h, {"rule": "auto", "h0": rep.h0, "q0": rep.q0, "xmax_norm": r}
    try:
        h = float(args.h)
    except ValueError:
        raise CLIError(f"--h must be a number or 'auto', got {args.h!r}") from None
    return h, {"rule": "fixed", "xmax_norm": r}


def _config(args, h: float) -> MeanShiftConfig:
    return MeanShiftConfig(
        h=h,
        conv_tol=args.tol,
        max_iter=args.max_iter,
        exclude_self=args.exclude_self,
        merge_tol=args.merge_tol,
        knn=args.knn,
    )


def cmd_solve_h0(args) -> dict:
    profile = _kernel(args.kernel)
    if args.xmax < 0:
        raise CLIError("--xmax must be nonnegative")
    rep = solve_h0(profile, args.xmax)
    out = rep.to_dict()
    out["manifest"] = _manifest(args, kernel=str(profile), xmax=args.xmax)
    return out


def cmd_synth(args) -> None:
    ds = gen_two_gaussians(args.n, args.sep, args.sigma, args.seed)
    text = dump_csv(ds)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text)


def cmd_run(args) -> dict:
    profile = _kernel(args.kernel)
    ds = _dataset(args)
    h, h_info = _bandwidth(args, profile, ds.points)
    config = _config(args, h)
    res = run_all(ds.points, profile, config, trajectories=bool(args.traj), threads=args.threads)
    if args.traj:
        lines = ["seed,iter," + ",".join(f"coord_{j}" for j in range(ds.d))]
        for seed, traj in enumerate(res.trajectories):
            for it, y in enumerate(traj):
                lines.append(f"{seed},{it}," + ",".join(format(float(v), ".17g") for v in y))
        Path(args.traj).write_text("\n".join(lines) + "\n")
    out = res.to_dict()
    out["mean_iterations"] = float(np.mean(res.iterations))
    if ds.labels is not None:
        out["eval"] = evaluate(res.assignment, ds.labels).to_dict()
    out["manifest"] = _manifest(
        args,
        kernel=str(profile),
        data=args.data,
        preprocessing={"zscore": args.zscore, "pca2": args.pca2},
        bandwidth=h_info,
        config=config.to_dict(profile),
        outputs={"out": args.out, "traj": args.traj},
    )
    return out


def _read_labels(path: str) -> np.ndarray:
    p = Path(path)
    if not p.exists():
        raise CLIError(f"file not found: {p}")
    if p.suffix.lower() == ".json":
        obj = json.loads(p.read_text())
        if isinstance(obj, dict):
            obj = obj.get("assignment")
        if not isinstance(obj, list):
            raise CLIError(f"{p}: expected a JSON list or an object with 'assignment'")
        return np.asarray(obj, dtype=int)
    ds = load_csv(p, label_column=True) if _csv_width(p) > 1 else None
    if ds is not None:
        return ds.labels
    return load_csv(p).points[:, 0].astype(int)


def _csv_width(p: Path) -> int:
    for line in p.read_text().splitlines():
        if line.strip():
            return len(line.split(","))
    return 0


def cmd_eval(args) -> dict:
    pred = _read_labels(args.pred)
    truth = _read_labels(args.truth)
    if pred.shape != truth.shape:
        raise CLIError(f"length mismatch: {pred.size} predicted vs {truth.size} true labels")
    out = evaluate(pred, truth).to_dict()
    out["manifest"] = _manifest(args, pred=args.pred, truth=args.truth)
    return out


def cmd_limits(args) -> dict:
    profile = _kernel(args.kernel)
    ds = _dataset(args)
    if not 0 <= args.seed < ds.n:
        raise CLIError(f"--seed must lie in [0, {ds.n})")
    pred = predict_first_iterate_limit(ds.points, profile, args.seed)
    h = args.h_mult * xmax_norm(ds.points)
    config = MeanShiftConfig(h=h, eps_q=1e-300, exclude_self=pred.p is not None)
    first = ms_step(ds.points, profile, config, ds.points[args.seed], args.seed)
    out = {
        "prediction": pred.to_dict(),
        "first_iterate": first.tolist(),
        "distance": float(np.linalg.norm(first - pred.point)),
        "h": h,
    }
    out["manifest"] = _manifest(args, kernel=str(profile), data=args.data, seed=args.seed, h_mult=args.h_mult)
    return out


def cmd_diagnose(args) -> dict:
    profile = _kernel(args.kernel)
    ds = _dataset(args)
    h, h_info = _bandwidth(args, profile, ds.points)
    config = _config(args, h)
    res = run_all(ds.points, profile, config, threads=args.threads)
    modes = []
    for j, m in enumerate(res.merged_modes):
        diag = hessian_rank_diagnostic(ds.points, profile, h, m)
        modes.append({"mode": j, "point": m.tolist(), "size": int(res.cluster_sizes[j]), **diag.to_dict()})
    return {
        "modes": modes,
        "manifest": _manifest(args, kernel=str(profile), data=args.data, bandwidth=h_info, config=config.to_dict(profile)),
    }


def cmd_segment(args) -> dict:
    profile = _kernel(args.kernel)
    if not Path(args.image).exists():
        raise CLIError(f"image file not found: {args.image}")
    img = load_pgm(args.image)
    seg = segment(
        img,
        profile,
        h_mult=args.h_mult,
        knn=args.knn,
        dark_quantile=args.dark_quantile,
        merge_nn_mult=args.merge_nn_mult,
        conv_tol=args.tol,
        max_iter=args.max_iter,
        threads=args.threads,
    )
    if args.mask:
        write_pgm(seg.mask, args.mask)
    return {
        "K": seg.result.K,
        "sizes": [int(s) for s in seg.result.cluster_sizes],
        "median_nn": seg.median_nn,
        "merge_tol": seg.config.merge_tol,
        "h": seg.config.h,
        "mode_intensity": seg.mode_intensity.tolist(),
        "threshold": seg.threshold,
        "foreground_pixels": int(seg.mask.sum()),
        "manifest": _manifest(
            args,
            kernel=str(profile),
            image=args.image,
            h_mult=args.h_mult,
            knn=args.knn,
            dark_quantile=args.dark_quantile,
            merge_nn_mult=args.merge_nn_mult,
            outputs={"mask": args.mask, "out": args.out},
        ),
    }


def _data_args(p):
    p.add_argument("--data", required=True, help="CSV file")
    p.add_argument("--label-column", action="store_true", help="last CSV column holds class labels")
    p.add_argument("--zscore", action="store_true")
    p.add_argument("--pca2", action="store_true", help="project onto the first two principal axes")


def _iter_args(p):
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--max-iter", type=int, default=10000)


def _run_args(p):
    p.add_argument("--kernel", required=True)
    bw = p.add_mutually_exclusive_group(required=True)
    bw.add_argument("--h", help="bandwidth value or 'auto'")
    bw.add_argument("--h-mult", type=float, help="h = m * max ||x_i||")
    _iter_args(p)
    p.add_argument("--merge-tol", type=float, default=0.05)
    ex = p.add_mutually_exclusive_group()
    ex.add_argument("--exclude-self", dest="exclude_self", action="store_true", default=None)
    ex.add_argument("--include-self", dest="exclude_self", action="store_false")
    p.add_argument("--knn", type=int)
    p.add_argument("--out", help="JSON output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="modeseek", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--threads", type=int, help="worker threads (env MODESEEK_THREADS)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve-h0", help="classify and solve the bandwidth threshold")
    p.add_argument("--kernel", required=True)
    p.add_argument("--xmax", type=float, required=True)
    p.add_argument("--out")

    p = sub.add_parser("synth", help="two-Gaussian synthetic dataset as CSV")
    p.add_argument("--n", type=int, default=300)
    p.add_argument("--sep", type=float, default=5.0)
    p.add_argument("--sigma", type=float, default=0.35)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default="-")

    p = sub.add_parser("run", help="mean shift from every point, merged into clusters")
    _data_args(p)
    _run_args(p)
    p.add_argument("--traj", help="trajectory CSV output path")

    p = sub.add_parser("eval", help="score predicted labels against ground truth")
    p.add_argument("--pred", required=True, help="run JSON, JSON list, or CSV")
    p.add_argument("--truth", required=True, help="CSV (last column) or JSON")
    p.add_argument("--out")

    p = sub.add_parser("limits", help="large-bandwidth first-iterate prediction")
    _data_args(p)
    p.add_argument("--kernel", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--h-mult", type=float, default=1e6)
    p.add_argument("--out")

    p = sub.add_parser("diagnose", help="Hessian spectra at the merged modes")
    _data_args(p)
    _run_args(p)

    p = sub.add_parser("segment", help="grayscale PGM segmentation")
    p.add_argument("--image", required=True)
    p.add_argument("--kernel", default="cauchy:1.99")
    p.add_argument("--h-mult", type=float, default=10.0)
    p.add_argument("--knn", type=int, default=300)
    p.add_argument("--dark-quantile", type=float, default=0.35)
    p.add_argument("--merge-nn-mult", type=float, default=4.0)
    _iter_args(p)
    p.add_argument("--mask", help="output mask PGM")
    p.add_argument("--out")
    return parser


COMMANDS = {
    "solve-h0": cmd_solve_h0,
    "synth": cmd_synth,
    "run": cmd_run,
    "eval": cmd_eval,
    "limits": cmd_limits,
    "diagnose": cmd_diagnose,
    "segment": cmd_segment,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = COMMANDS[args.command](args)
        if result is not None:
            _emit(result, getattr(args, "out", None))
    except (CLIError, ValueError, OSError, RuntimeError) as exc:
        msg = " ".join(str(exc).split())
        print(f"modeseek {args.command}: error: {msg}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
