"""Report rendering: delimited files plus matplotlib figures.

Each writer takes an output directory and drops a CSV next to a PNG,
so command output survives the terminal.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from circnim.core import GameSpec, Position, format_position
from circnim.coverage import CoverageReport
from circnim.strategy import MAIN_LEMMAS


def write_coverage_report(report: CoverageReport, out_dir: Path) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "coverage.csv"
    with csv_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["kind", "name", "count"])
        writer.writerow(["total", "arrangements", report.total])
        for tag in MAIN_LEMMAS:
            writer.writerow(["lemma", tag.name, report.count(tag)])
        for key in sorted(report.region_counts):
            writer.writerow(["region", key, report.region_counts[key]])
        writer.writerow(["uncovered", "count", len(report.uncovered)])

    fig, ax = plt.subplots(figsize=(7, 4))
    names = [tag.name for tag in MAIN_LEMMAS]
    counts = [report.count(tag) for tag in MAIN_LEMMAS]
    bars = ax.bar(names, counts, color="#4878a8")
    ax.bar_label(bars)
    ax.set_ylabel("arrangements covered")
    ax.set_title(f"Lemma coverage of the {report.total} size arrangements")
    fig.tight_layout()
    png_path = out_dir / "coverage.png"
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]


def write_circuit_table(
    cells: dict[tuple[int, int], set[int]], out_dir: Path
) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "circuit_sizes.csv"
    ns = sorted({n for n, _ in cells})
    ks = sorted({k for _, k in cells})
    with csv_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n"] + [f"k={k}" for k in ks])
        for n in ns:
            row: list[str] = [str(n)]
            for k in ks:
                sizes = cells.get((n, k))
                row.append("" if sizes is None else _sizes_text(sizes))
            writer.writerow(row)

    fig, ax = plt.subplots(figsize=(1.0 + 0.9 * len(ks), 0.6 + 0.4 * len(ns)))
    ax.axis("off")
    table_rows = []
    for n in ns:
        table_rows.append(
            [_sizes_text(cells[(n, k)]) if (n, k) in cells else "" for k in ks]
        )
    table = ax.table(
        cellText=table_rows,
        rowLabels=[f"n={n}" for n in ns],
        colLabels=[f"k={k}" for k in ks],
        loc="center",
        cellLoc="center",
    )
    table.scale(1, 1.3)
    ax.set_title("Circuit sizes by n and k")
    fig.tight_layout()
    png_path = out_dir / "circuit_sizes.png"
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]


def _sizes_text(sizes: set[int]) -> str:
    ordered = sorted(sizes)
    if len(ordered) == 1:
        return str(ordered[0])
    return "{" + ",".join(str(x) for x in ordered) + "}"


def write_losing_positions(
    spec: GameSpec, H: int, positions: Sequence[Position], out_dir: Path
) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = f"losing_cn{spec.n}-{spec.k}_h{H}"
    csv_path = out_dir / f"{stem}.csv"
    with csv_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["tokens", "position"])
        for pos in positions:
            writer.writerow([sum(pos), format_position(pos)])

    by_tokens: dict[int, int] = {}
    for pos in positions:
        by_tokens[sum(pos)] = by_tokens.get(sum(pos), 0) + 1
    fig, ax = plt.subplots(figsize=(7, 4))
    if by_tokens:
        xs = sorted(by_tokens)
        ax.bar(xs, [by_tokens[x] for x in xs], color="#a85548")
    ax.set_xlabel("total tokens")
    ax.set_ylabel("canonical losing positions")
    ax.set_title(f"{spec}: losing positions up to height {H}")
    fig.tight_layout()
    png_path = out_dir / f"{stem}.png"
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]
