"""Run summaries and per-phase intensity histograms.

The histogram CSV carries one row per intensity bin (256 bins over [0, 1])
with a count column and a cumulative-distribution column per phase; the CDF
of every nonempty phase is non-decreasing and ends at 1. Run reports are
emitted both as human-readable text and as a single CSV row.
"""

import os
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .images import atomic_write_bytes
from .metrics import MetricReport
from .solver import SolverConfig

__all__ = ["HIST_BINS", "RunReport", "emit_phase_histograms", "report_text",
           "report_csv", "append_csv_row"]

HIST_BINS = 256


@dataclass
class RunReport:
    """Everything a batch run records about one segmentation."""

    source: str
    config: SolverConfig
    iterations: int
    wall_time_s: float
    final_energy: float
    phase_pixel_counts: tuple
    metrics: Optional[MetricReport] = None


def _fmt(x):
    return f"{float(x):.12g}"


def emit_phase_histograms(image, labels, path):
    """Write per-phase intensity histograms and CDFs as CSV.

    Columns: bin_center, then count_k and cdf_k for each phase k in 0..3.
    Empty phases report all-zero counts and CDF.
    """
    image = np.asarray(image, dtype=np.float64)
    labels = np.asarray(labels)
    edges = np.linspace(0.0, 1.0, HIST_BINS + 1)
    centers = 0.5 * (edges[:-1] + edges[1:])
    columns = [centers]
    header = ["bin_center"]
    for k in range(4):
        counts, _ = np.histogram(image[labels == k], bins=edges)
        total = counts.sum()
        cdf = np.cumsum(counts) / total if total > 0 else np.zeros(HIST_BINS)
        columns.extend([counts, cdf])
        header.extend([f"count_{k}", f"cdf_{k}"])
    lines = [",".join(header)]
    for row in zip(*columns):
        cells = [_fmt(row[0])]
        for k in range(4):
            cells.append(str(int(row[1 + 2 * k])))
            cells.append(_fmt(row[2 + 2 * k]))
        lines.append(",".join(cells))
    atomic_write_bytes(path, ("\n".join(lines) + "\n").encode("ascii"))


def _config_items(cfg):
    w = cfg.weights
    return [
        ("theta1", cfg.theta1), ("theta2", cfg.theta2), ("dt", cfg.dt),
        ("inner_dual_iters", cfg.inner_dual_iters), ("outer_iters", cfg.outer_iters),
        ("mean_update_period", cfg.mean_update_period), ("tol", cfg.tol),
        ("threshold_tau", cfg.threshold_tau),
        ("lambda11", w.lambda11), ("lambda10", w.lambda10),
        ("lambda01", w.lambda01), ("lambda00", w.lambda00),
        ("mu1", w.mu1), ("mu2", w.mu2),
    ]


def report_text(report):
    """Human-readable run summary."""
    lines = [f"source: {report.source}"]
    for key, val in _config_items(report.config):
        lines.append(f"{key}: {val}")
    lines.append(f"iterations: {report.iterations}")
    lines.append(f"wall_time_s: {report.wall_time_s:.6f}")
    lines.append(f"final_energy: {_fmt(report.final_energy)}")
    for k, count in enumerate(report.phase_pixel_counts):
        lines.append(f"pixels_phase_{k}: {count}")
    if report.metrics is not None:
        m = report.metrics
        for k, d in enumerate(m.dice_per_phase):
            lines.append(f"dice_{k}: {_fmt(d)}")
        lines.append(f"rand_index: {_fmt(m.rand_index)}")
        lines.append(f"gce: {_fmt(m.gce)}")
        lines.append(f"variation_of_information: {_fmt(m.variation_of_information)}")
    return "\n".join(lines) + "\n"


def report_csv(report):
    """The run report as (header, row) string lists, one CSV record."""
    header = ["source"]
    row = [report.source]
    for key, val in _config_items(report.config):
        header.append(key)
        row.append(_fmt(val) if isinstance(val, float) else str(val))
    header += ["iterations", "wall_time_s", "final_energy"]
    row += [str(report.iterations), f"{report.wall_time_s:.6f}", _fmt(report.final_energy)]
    for k, count in enumerate(report.phase_pixel_counts):
        header.append(f"pixels_phase_{k}")
        row.append(str(count))
    metric_cols = ["dice_0", "dice_1", "dice_2", "dice_3", "rand_index", "gce",
                   "variation_of_information"]
    if report.metrics is not None:
        m = report.metrics
        values = list(m.dice_per_phase) + [m.rand_index, m.gce,
                                           m.variation_of_information]
        header += metric_cols
        row += [_fmt(v) for v in values]
    else:
        header += metric_cols
        row += [""] * len(metric_cols)
    return header, row


def append_csv_row(path, header, row):
    """Append one record to a CSV file, writing the header first when new."""
    new_file = not os.path.exists(path) or os.path.getsize(path) == 0
    with open(path, "a", encoding="ascii") as f:
        if new_file:
            f.write(",".join(header) + "\n")
        f.write(",".join(row) + "\n")
