"""Command-line harness for the power-comparison experiments.

Writes per-trial records (and optionally a per-exponent summary) as CSV;
with --plot-out it also renders the median-rho-versus-k figure next to the
delimited output.  Flag defaults can be overridden through IVSPEC_*
environment variables for CI runs.

Exit codes: 0 success, 2 bad configuration, 3 I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys

from .experiments import (DEFAULT_EXPONENTS, ConfigError, ExperimentConfig,
                          MATRIX_CLASSES, run_comparison, summarize,
                          write_records_csv, write_summary_csv)

ENV_PREFIX = "IVSPEC_"


def _env_default(name: str, fallback):
    return os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"), fallback)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ivspec",
        description="Compare spectral and binary-exponentiation enclosures "
                    "of interval matrix powers.")
    p.add_argument("--class", dest="matrix_class", choices=MATRIX_CLASSES,
                   default=_env_default("class", "general"))
    p.add_argument("--n", type=int, default=int(_env_default("n", 5)))
    p.add_argument("--center", type=float, default=float(_env_default("center", 10.0)))
    p.add_argument("--radius", type=float, default=float(_env_default("radius", 0.001)))
    p.add_argument("--trials", type=int, default=int(_env_default("trials", 100)))
    p.add_argument("--exponents",
                   default=_env_default("exponents",
                                        ",".join(map(str, DEFAULT_EXPONENTS))),
                   help="comma-separated ascending exponent list")
    p.add_argument("--seed", type=int, default=int(_env_default("seed", 0)))
    p.add_argument("--out", default=_env_default("out", None),
                   help="records CSV path (required)")
    p.add_argument("--summary-out", default=_env_default("summary_out", None))
    p.add_argument("--plot-out", default=_env_default("plot_out", None),
                   help="optional figure path (median rho vs k)")
    p.add_argument("--force-fallback", action="store_true",
                   default=bool(_env_default("force_fallback", "")),
                   help="symmetric class: use the [-1,1] eigenvector box")
    p.add_argument("--threads", type=int, default=int(_env_default("threads", 1)))
    p.add_argument("--timings", action="store_true",
                   default=bool(_env_default("timings", "")),
                   help="append coarse per-method timing columns")
    return p


def render_plot(rows, cfg: ExperimentConfig, path: str) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ks = [row.k for row in rows if row.median_rho is not None]
    med = [row.median_rho for row in rows if row.median_rho is not None]
    mean = [row.mean_rho for row in rows if row.mean_rho is not None]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.axhline(1.0, color="0.7", lw=1)
    ax.plot(ks, med, "o-", label="median rho")
    ax.plot(ks, mean, "s--", label="mean rho", alpha=0.6)
    ax.set_xlabel("exponent k")
    ax.set_ylabel("rho = R(spectral) / R(binary)")
    ax.set_yscale("log")
    ax.set_title(f"{cfg.matrix_class}, n={cfg.n}, c={cfg.c}, r={cfg.r}, "
                 f"trials={cfg.trials}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.out is None:
        parser.error("--out is required")
    try:
        exponents = tuple(int(tok) for tok in str(args.exponents).split(",") if tok)
    except ValueError:
        print("ivspec: invalid --exponents list", file=sys.stderr)
        return 2
    try:
        cfg = ExperimentConfig(
            matrix_class=args.matrix_class, n=args.n, c=args.center,
            r=args.radius, trials=args.trials, exponents=exponents,
            seed=args.seed, out=args.out, summary_out=args.summary_out,
            force_fallback=args.force_fallback, threads=args.threads,
            timings=args.timings)
    except ConfigError as exc:
        print(f"ivspec: {exc}", file=sys.stderr)
        return 2

    records = run_comparison(cfg)
    rows = summarize(records)
    try:
        write_records_csv(cfg, records, cfg.out)
        if cfg.summary_out:
            write_summary_csv(cfg, rows, cfg.summary_out)
        if args.plot_out:
            render_plot(rows, cfg, args.plot_out)
    except OSError as exc:
        print(f"ivspec: I/O error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
