#!/usr/bin/env python3
"""Plot the n*MSE convergence table against its theoretical levels.

Usage:
    sobol-rank mse-curve --config recipes/mse_convergence_uniform.cfg --out mse.csv
    sobol-rank theory --model sin5 --law uniform:0,1 --out theory.csv
    python3 scripts/plot_mse_curve.py mse.csv theory.csv figure.png
"""

import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def main():
    if len(sys.argv) != 4:
        sys.exit(__doc__)
    mse_csv, theory_csv, figure = sys.argv[1], sys.argv[2], sys.argv[3]

    curve = pd.read_csv(mse_csv)
    theory = pd.read_csv(theory_csv)

    fig, ax = plt.subplots(figsize=(7, 5))
    styles = {"lag1": ("tab:blue", "o"), "lagk": ("tab:orange", "s"), "avg": ("tab:green", "^")}
    for name, (color, marker) in styles.items():
        rows = curve[curve.estimator == name]
        ax.plot(rows.n, rows.n_mse, marker=marker, color=color, label=name)

    avg_rows = curve[curve.estimator == "avg"]
    ax.plot(avg_rows.n, avg_rows.reference, ls="--", color="tab:green",
            label="sigma2_opt + E[v^2]/k")
    ax.axhline(theory.sigma2_rank.iloc[0], ls=":", color="tab:blue", label="sigma2_rank")
    ax.axhline(theory.sigma2_opt.iloc[0], ls=":", color="black", label="sigma2_opt")

    ax.set_xlabel("n")
    ax.set_ylabel("n * MSE")
    ax.legend()
    fig.tight_layout()
    fig.savefig(figure, dpi=150)
    print(f"wrote {figure}")


if __name__ == "__main__":
    main()
