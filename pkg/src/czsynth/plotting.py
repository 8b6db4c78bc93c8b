"""Figures for enumeration sweeps, written to image files."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .bench import REFERENCE_AVERAGES, SweepResult  # noqa: E402


def improvement_histograms(res: SweepResult, path: str | Path) -> Path:
    """Per-gate improvement distributions for CZ and single-qubit counts."""
    path = Path(path)
    fig, axes = plt.subplots(1, 2, figsize=(10, 4), constrained_layout=True)
    reference = REFERENCE_AVERAGES.get(res.n)
    for k, (ax, label) in enumerate(zip(axes, ("CZ", "single-qubit"))):
        attr = "imp_cz_pct" if k == 0 else "imp_1q_pct"
        vals = np.array([getattr(r, attr) for r in res.rows if getattr(r, attr) is not None])
        ax.hist(vals, bins=40, color="tab:blue", alpha=0.8)
        mean = res.mean_cz if k == 0 else res.mean_1q
        ax.axvline(mean, color="black", ls="-", label=f"mean {mean:.1f}%")
        if reference:
            ax.axvline(reference[k], color="tab:red", ls="--",
                       label=f"reference {reference[k]:.1f}%")
        ax.set_xlabel(f"{label} improvement (%)")
        ax.set_ylabel("gates")
        ax.legend()
    fig.suptitle(f"Improvement over the multiplexed baseline, n={res.n}, {len(res.rows)} gates")
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def cost_scatter(res: SweepResult, path: str | Path) -> Path:
    """Proposed vs baseline counts; points below the diagonal are wins."""
    path = Path(path)
    fig, axes = plt.subplots(1, 2, figsize=(10, 4.5), constrained_layout=True)
    pairs = [("base_cz", "prop_cz", "CZ"), ("base_1q", "prop_1q", "single-qubit")]
    for ax, (b, p, label) in zip(axes, pairs):
        xs = np.array([getattr(r, b) for r in res.rows])
        ys = np.array([getattr(r, p) for r in res.rows])
        pts, counts = np.unique(np.stack([xs, ys], axis=1), axis=0, return_counts=True)
        ax.scatter(pts[:, 0], pts[:, 1], s=10 + 60 * np.log1p(counts), alpha=0.6)
        top = max(xs.max(), ys.max(), 1)
        ax.plot([0, top], [0, top], color="grey", lw=1)
        ax.set_xlabel(f"baseline {label} gates")
        ax.set_ylabel(f"proposed {label} gates")
    fig.suptitle(f"Gate counts per diagonal gate, n={res.n}")
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def write_figures(res: SweepResult, stem: str | Path) -> list[Path]:
    """Write ``<stem>_hist.png`` and ``<stem>_scatter.png``."""
    stem = Path(stem)
    stem.parent.mkdir(parents=True, exist_ok=True)
    return [improvement_histograms(res, stem.with_name(stem.name + "_hist.png")),
            cost_scatter(res, stem.with_name(stem.name + "_scatter.png"))]
