#!/usr/bin/env python3
"""Draw per-lag and per-k boxplot panels from a study output directory.

Usage:
    sobol-rank study --config recipes/sin5_uniform_boxplots.cfg --out-dir out/
    python3 scripts/plot_boxplots.py out/ figure.png
"""

import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def draw_boxes(ax, frame, positions, width, color):
    for pos, (_, row) in zip(positions, frame.iterrows()):
        ax.add_patch(
            plt.Rectangle(
                (pos - width / 2, row.q25),
                width,
                row.q75 - row.q25,
                fill=True,
                facecolor=color,
                alpha=0.45,
                edgecolor=color,
            )
        )
        ax.hlines(row["median"], pos - width / 2, pos + width / 2, color=color, lw=1.2)
        ax.vlines(pos, row.q05, row.q25, color=color, lw=0.8)
        ax.vlines(pos, row.q75, row.q95, color=color, lw=0.8)


def main():
    if len(sys.argv) != 3:
        sys.exit(__doc__)
    out_dir, figure = sys.argv[1], sys.argv[2]

    lags = pd.read_csv(f"{out_dir}/lags.csv")
    avgs = pd.read_csv(f"{out_dir}/avgs.csv")
    theory = pd.read_csv(f"{out_dir}/theory.csv")
    eta = theory.eta.iloc[0]

    sizes = sorted(lags.n.unique())
    fig, axes = plt.subplots(2, 2, figsize=(13, 8), sharey=False)
    for ax, n in zip(axes.flat, sizes):
        per_lag = lags[lags.n == n]
        per_k = avgs[avgs.n == n]
        draw_boxes(ax, per_lag, per_lag.lag, 0.8, "tab:blue")
        # averaged estimators drawn to the right of the lag sweep
        offset = per_lag.lag.max() + 5
        draw_boxes(ax, per_k, offset + per_k.k, 3.0, "tab:green")
        ax.axhline(eta, color="red", lw=1.0, ls=":")
        ax.set_title(f"n = {n}")
        ax.set_xlabel("lag (blue) / averaging window shifted right (green)")
        ax.set_ylabel("estimate")
        ax.relim()
        ax.autoscale_view()
    fig.tight_layout()
    fig.savefig(figure, dpi=150)
    print(f"wrote {figure}")


if __name__ == "__main__":
    main()
