#!/usr/bin/env python3
"""Plot populations (and optionally the base angles) from `unitint evolve` CSV output."""
import argparse
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv", nargs="+", help="evolve output files")
    ap.add_argument("-o", "--out", default="populations.png")
    ap.add_argument("--angles", action="store_true", help="add a panel with theta1, theta2, eps1, eps2")
    args = ap.parse_args(argv)

    rows = 2 if args.angles else 1
    fig, axes = plt.subplots(rows, len(args.csv), figsize=(4.5 * len(args.csv), 3.2 * rows),
                             squeeze=False, sharex="col")
    for col, path in enumerate(args.csv):
        df = pd.read_csv(path)
        ax = axes[0][col]
        for k in (1, 2, 3):
            ax.plot(df["t"], df[f"P{k}"], label=f"P{k}")
        ax.set_ylim(-0.02, 1.02)
        ax.set_title(path, fontsize=8)
        ax.legend(fontsize=7)
        if args.angles:
            ax = axes[1][col]
            for name in ("theta1", "theta2", "eps1", "eps2"):
                ax.plot(df["t"], df[name], label=name)
            ax.legend(fontsize=7)
        axes[-1][col].set_xlabel("t")
    fig.tight_layout()
    fig.savefig(args.out, dpi=130)
    return 0


if __name__ == "__main__":
    sys.exit(main())
