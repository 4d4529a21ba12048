"""Report artifacts: delimited text/CSV files plus rendered figures.

Every writer takes an output directory and drops a small set of files with
fixed names, so downstream tooling can glob for them. Figures use the Agg
backend and never require a display.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .dtw import BenchmarkReport
from .evaluate import EvalReport
from .lstm import EpochStats


def _outdir(path) -> Path:
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    return out


def write_training_report(history: list[EpochStats], out_dir) -> list[Path]:
    """history.csv plus a loss/accuracy curve figure."""
    out = _outdir(out_dir)
    csv_path = out / "history.csv"
    with open(csv_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["epoch", "loss", "accuracy", "val_loss", "val_accuracy"])
        for st in history:
            w.writerow([
                st.epoch,
                f"{st.loss:.6f}",
                f"{st.accuracy:.6f}",
                "" if st.val_loss is None else f"{st.val_loss:.6f}",
                "" if st.val_accuracy is None else f"{st.val_accuracy:.6f}",
            ])

    epochs = [st.epoch for st in history]
    fig, (ax_loss, ax_acc) = plt.subplots(1, 2, figsize=(10, 4))
    ax_loss.plot(epochs, [st.loss for st in history], label="train")
    if history and history[0].val_loss is not None:
        ax_loss.plot(epochs, [st.val_loss for st in history], label="validation")
    ax_loss.set_xlabel("epoch")
    ax_loss.set_ylabel("cross-entropy")
    ax_loss.legend()
    ax_acc.plot(epochs, [st.accuracy for st in history], label="train")
    if history and history[0].val_accuracy is not None:
        ax_acc.plot(epochs, [st.val_accuracy for st in history], label="validation")
    ax_acc.set_xlabel("epoch")
    ax_acc.set_ylabel("accuracy")
    ax_acc.set_ylim(0.0, 1.05)
    ax_acc.legend()
    fig.tight_layout()
    fig_path = out / "training_curves.png"
    fig.savefig(fig_path, dpi=120)
    plt.close(fig)
    return [csv_path, fig_path]


def write_eval_report(report: EvalReport, out_dir) -> list[Path]:
    """Per-class table (text and CSV) plus a confusion-matrix figure."""
    out = _outdir(out_dir)
    txt_path = out / "eval.txt"
    txt_path.write_text(report.to_text())
    csv_path = out / "eval.csv"
    csv_path.write_text(report.to_csv())

    labels = list(report.vocabulary.labels)
    matrix = np.asarray(report.confusion, dtype=float)
    n = len(labels)
    fig, ax = plt.subplots(figsize=(1.0 + 0.7 * n, 1.0 + 0.7 * n))
    im = ax.imshow(matrix, cmap="Blues")
    ax.set_xticks(range(n), labels, rotation=45, ha="right")
    ax.set_yticks(range(n), labels)
    ax.set_xlabel("predicted")
    ax.set_ylabel("actual")
    for i in range(n):
        for j in range(n):
            count = int(matrix[i, j])
            if count:
                color = "white" if matrix[i, j] > matrix.max() / 2 else "black"
                ax.text(j, i, str(count), ha="center", va="center", color=color)
    fig.colorbar(im, ax=ax, shrink=0.8)
    fig.tight_layout()
    fig_path = out / "confusion_matrix.png"
    fig.savefig(fig_path, dpi=120)
    plt.close(fig)
    return [txt_path, csv_path, fig_path]


def write_benchmark_report(report: BenchmarkReport, out_dir) -> list[Path]:
    """Latency/accuracy table (text and CSV) plus a latency comparison figure."""
    out = _outdir(out_dir)
    txt_path = out / "benchmark.txt"
    txt_path.write_text(report.to_text())
    csv_path = out / "benchmark.csv"
    with open(csv_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["classifier", "accuracy", "mean_latency_ms", "median_latency_ms", "n"])
        for st in report.rows:
            w.writerow([
                st.name,
                f"{st.accuracy:.6f}",
                f"{st.mean_latency_ms:.4f}",
                f"{st.median_latency_ms:.4f}",
                st.n,
            ])

    fig, ax = plt.subplots(figsize=(6, 4))
    names = [st.name for st in report.rows]
    means = [st.mean_latency_ms for st in report.rows]
    medians = [st.median_latency_ms for st in report.rows]
    x = np.arange(len(names))
    ax.bar(x - 0.2, means, width=0.4, label="mean")
    ax.bar(x + 0.2, medians, width=0.4, label="median")
    ax.set_xticks(x, names)
    ax.set_ylabel("latency per query (ms)")
    ax.set_yscale("log")
    ax.legend()
    fig.tight_layout()
    fig_path = out / "latency.png"
    fig.savefig(fig_path, dpi=120)
    plt.close(fig)
    return [txt_path, csv_path, fig_path]
