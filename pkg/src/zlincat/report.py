"""Run-report assembly and rendering: JSON, delimited tables, figures.

Reports are deterministic for fixed inputs and seed: keys are sorted, no
timestamps are embedded, and every input file is identified by its content
digest.  When a report directory is requested the same payload is rendered
as report.json, a CSV table, and a PNG figure.
"""

from __future__ import annotations

import csv
import io
import os
import sys
from typing import Callable, List, Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .specfile import digest_file, dump_json  # noqa: E402


def make_report(command: str, inputs: dict, payload: dict, exit_code: int) -> dict:
    doc = {
        "command": command,
        "inputs": {path: digest_file(path) for path in sorted(inputs)},
        "exit_code": exit_code,
    }
    doc.update(payload)
    return doc


def emit_report(report: dict, text_lines: Sequence[str],
                out_path: Optional[str] = None,
                report_dir: Optional[str] = None,
                table: Optional[tuple] = None,
                figure: Optional[Callable[[str], None]] = None) -> None:
    """Text to stderr, JSON to stdout, and optional file artifacts."""
    for line in text_lines:
        print(line, file=sys.stderr)
    sys.stdout.write(dump_json(report))
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(dump_json(report))
    if report_dir:
        os.makedirs(report_dir, exist_ok=True)
        with open(os.path.join(report_dir, "report.json"), "w", encoding="utf-8") as fh:
            fh.write(dump_json(report))
        if table is not None:
            header, rows = table
            with open(os.path.join(report_dir, "table.csv"), "w", encoding="utf-8",
                      newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(header)
                writer.writerows(rows)
        if figure is not None:
            figure(os.path.join(report_dir, "figure.png"))


def _finish(fig, path: str) -> None:
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def fig_splitting_depths(entries: Sequence[dict], depth_bound: int) -> Callable[[str], None]:
    """Bar chart of least witness depth per morphism; inconclusive bars are
    drawn hollow at the bound."""

    def render(path: str) -> None:
        names = [e["name"] for e in entries]
        fig, ax = plt.subplots(figsize=(max(4, 0.6 * len(names) + 2), 3.2))
        for i, e in enumerate(entries):
            d = e["least_splitting_depth"]
            if d is None:
                ax.bar(i, depth_bound, color="none", edgecolor="tab:red", hatch="//")
            else:
                ax.bar(i, d, color="tab:blue")
        ax.set_xticks(range(len(names)))
        ax.set_xticklabels(names, rotation=45, ha="right", fontsize=7)
        ax.set_ylabel("least witness depth")
        ax.set_ylim(0, depth_bound + 0.5)
        ax.set_title("splitting certificates (hollow = inconclusive)")
        _finish(fig, path)

    return render


def fig_hom_ranks(objects: Sequence[str], ranks: dict) -> Callable[[str], None]:
    """Heatmap of hom-group ranks per ordered object pair."""

    def render(path: str) -> None:
        n = len(objects)
        grid = [[ranks.get((a, b), 0) for b in objects] for a in objects]
        fig, ax = plt.subplots(figsize=(max(3, 0.7 * n + 2), max(3, 0.7 * n + 2)))
        im = ax.imshow(grid, cmap="Blues")
        ax.set_xticks(range(n))
        ax.set_yticks(range(n))
        ax.set_xticklabels(objects, rotation=45, ha="right", fontsize=7)
        ax.set_yticklabels(objects, fontsize=7)
        for i in range(n):
            for j in range(n):
                ax.text(j, i, str(grid[i][j]), ha="center", va="center", fontsize=8)
        ax.set_title("hom-group generator counts")
        fig.colorbar(im, ax=ax, shrink=0.8)
        _finish(fig, path)

    return render


def fig_classes(labels: Sequence[str], classes: Sequence[Sequence[int]],
                block_names: Sequence[str]) -> Callable[[str], None]:
    """Stacked bars of block ranks for each sampled projective."""

    def render(path: str) -> None:
        fig, ax = plt.subplots(figsize=(max(4, 0.6 * len(labels) + 2), 3.2))
        bottoms = [0] * len(labels)
        for b, bname in enumerate(block_names):
            heights = [c[b] for c in classes]
            ax.bar(range(len(labels)), heights, bottom=bottoms, label=bname)
            bottoms = [x + y for x, y in zip(bottoms, heights)]
        ax.set_xticks(range(len(labels)))
        ax.set_xticklabels(labels, rotation=45, ha="right", fontsize=7)
        ax.set_ylabel("block rank")
        ax.set_title("classes of sampled projectives")
        ax.legend(fontsize=7)
        _finish(fig, path)

    return render


def fig_trials(trials: Sequence[dict]) -> Callable[[str], None]:
    """Pass/fail raster over the equivalence-suite trials."""

    def render(path: str) -> None:
        keys = ["roundtrip", "transport_to_ring", "transport_restrict", "direct_sums"]
        grid = [[1 if t[k] else 0 for t in trials] for k in keys]
        fig, ax = plt.subplots(figsize=(max(4, 0.3 * len(trials) + 2), 2.6))
        ax.imshow(grid, cmap="RdYlGn", vmin=0, vmax=1, aspect="auto")
        ax.set_yticks(range(len(keys)))
        ax.set_yticklabels(keys, fontsize=7)
        ax.set_xlabel("trial")
        ax.set_title("equivalence suite verdicts")
        _finish(fig, path)

    return render
