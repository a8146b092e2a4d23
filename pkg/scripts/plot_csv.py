"""Render a result CSV as BER curves, one panel per user.

    python scripts/plot_csv.py fig2.csv -o fig2.png [--engine analytic mc]
"""

import argparse
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from risnoma.experiments.output import read_csv  # noqa: E402


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("csv")
    ap.add_argument("-o", "--out", default="ber.png")
    ap.add_argument("--engine", nargs="*", help="engines to draw (default: all)")
    args = ap.parse_args(argv)

    series = defaultdict(list)
    for row in read_csv(args.csv):
        if args.engine and row.engine not in args.engine:
            continue
        if row.ber > 0:
            series[(row.user, row.experiment, row.engine)].append((row.sweep_value, row.ber, row.sweep_var))

    users = sorted({k[0] for k in series})
    fig, axes = plt.subplots(1, len(users), figsize=(5 * len(users), 4), squeeze=False)
    for ax, user in zip(axes[0], users):
        for (u, exp, engine), pts in sorted(series.items()):
            if u != user:
                continue
            pts.sort()
            style = "o" if engine.endswith("mc") else "-"
            ax.semilogy([p[0] for p in pts], [p[1] for p in pts], style, ms=3, label=f"{exp} {engine}")
            ax.set_xlabel(pts[0][2])
        ax.set_title(user)
        ax.set_ylabel("BER")
        ax.grid(True, which="both", alpha=0.3)
        ax.legend(fontsize=6)
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)


if __name__ == "__main__":
    main()
