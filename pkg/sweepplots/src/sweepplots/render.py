"""Render scheduler sweep CSVs as load-vs-backlog comparison charts.

The input is the sweep CSV produced by the scheduling package's CLI: one row
per (policy, rho, seed) with at least the columns policy, rho, seed and
avg_sum_q.  Seeds are aggregated into a mean curve with a min-to-max band.
Rendering is a pure function of the CSV contents, so the same file always
yields the same figure.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

REQUIRED_COLUMNS = ("policy", "rho", "seed", "avg_sum_q")


@dataclass(frozen=True)
class SweepRow:
    policy: str
    rho: float
    seed: int
    avg_sum_q: float


@dataclass(frozen=True)
class SweepTable:
    rows: tuple[SweepRow, ...]

    @classmethod
    def from_csv(cls, path: str) -> "SweepTable":
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            header = reader.fieldnames or []
            for column in REQUIRED_COLUMNS:
                if column not in header:
                    raise ValueError(f"sweep CSV is missing required column {column!r}")
            rows = []
            for i, raw in enumerate(reader, start=2):
                try:
                    rows.append(
                        SweepRow(
                            policy=raw["policy"],
                            rho=float(raw["rho"]),
                            seed=int(raw["seed"]),
                            avg_sum_q=float(raw["avg_sum_q"]),
                        )
                    )
                except (TypeError, ValueError) as exc:
                    raise ValueError(f"line {i}: bad row ({exc})") from exc
        if not rows:
            raise ValueError("sweep CSV has no data rows")
        return cls(rows=tuple(rows))

    def policies(self) -> tuple[str, ...]:
        return tuple(sorted({row.policy for row in self.rows}))


def curve_spec(table: SweepTable) -> dict:
    """Aggregate seeds into per-policy curves: mean with min/max envelope."""
    buckets: dict = {}
    for row in table.rows:
        buckets.setdefault(row.policy, {}).setdefault(row.rho, []).append(row.avg_sum_q)
    spec = {}
    for policy in table.policies():
        loads = sorted(buckets[policy])
        values = [buckets[policy][rho] for rho in loads]
        spec[policy] = {
            "rho": loads,
            "mean": [sum(v) / len(v) for v in values],
            "lo": [min(v) for v in values],
            "hi": [max(v) for v in values],
        }
    return spec


def render(csv_path: str, out_path: str, log_y: bool = False) -> dict:
    """Draw the comparison chart and return the plotted curve spec."""
    table = SweepTable.from_csv(csv_path)
    spec = curve_spec(table)

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for policy, curve in spec.items():
        line, = ax.plot(curve["rho"], curve["mean"], marker="o", label=policy)
        ax.fill_between(
            curve["rho"], curve["lo"], curve["hi"],
            alpha=0.2, color=line.get_color(), linewidth=0,
        )
    ax.set_xlabel("offered load fraction")
    ax.set_ylabel("mean total backlog")
    if log_y:
        ax.set_yscale("log")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    # keep the output a pure function of the data: SVG would otherwise
    # embed a creation date
    metadata = {"Date": None} if out_path.endswith(".svg") else None
    fig.savefig(out_path, metadata=metadata)
    plt.close(fig)
    return spec


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="sweepplot", description="Chart scheduler sweep results."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("render", help="render one chart from a sweep CSV")
    p.add_argument("csv")
    p.add_argument("-o", "--out", required=True, help="output image path (.png or .svg)")
    p.add_argument("--log-y", action="store_true", help="log-scale the backlog axis")
    args = parser.parse_args(argv)
    try:
        render(args.csv, args.out, log_y=args.log_y)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
