"""Figure rendering for scan reports. Files only; no interactive backend."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def render_jump_scan(reports, baseline: int, path: str | Path, title: str = "") -> Path:
    """Geometric Picard number per prime, jump primes highlighted."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(9, 4.5))
    ps = [r.p for r in reports]
    geom = [r.picard_geom for r in reports]
    jumped = [r.jumped for r in reports]
    ax.scatter(
        [p for p, j in zip(ps, jumped) if not j],
        [g for g, j in zip(geom, jumped) if not j],
        s=14, color="tab:blue", label="no jump",
    )
    ax.scatter(
        [p for p, j in zip(ps, jumped) if j],
        [g for g, j in zip(geom, jumped) if j],
        s=14, color="tab:red", label="jump",
    )
    ax.axhline(baseline, color="gray", linestyle="--", linewidth=1, label=f"baseline {baseline}")
    ax.set_xlabel("prime p")
    ax.set_ylabel("geometric Picard number of C x C mod p")
    if title:
        ax.set_title(title)
    ax.legend(loc="best", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_density(reports, predicted, path: str | Path, title: str = "") -> Path:
    """Running empirical jump density against the predicted lower bound."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(9, 4.5))
    ps, running = [], []
    jumped = 0
    for i, r in enumerate(reports, start=1):
        jumped += 1 if r.jumped else 0
        ps.append(r.p)
        running.append(jumped / i)
    ax.plot(ps, running, color="tab:blue", linewidth=1.2, label="empirical jump density")
    if predicted is not None:
        ax.axhline(float(predicted), color="tab:red", linestyle="--", linewidth=1,
                   label=f"predicted lower bound {predicted}")
    ax.set_xlabel("prime p")
    ax.set_ylabel("density of jump primes up to p")
    ax.set_ylim(0, 1)
    if title:
        ax.set_title(title)
    ax.legend(loc="best", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_trace_histogram(moments, path: str | Path) -> Path:
    """Histogram of normalized Frobenius traces with the genus-1 reference."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(9, 4.5))
    lmost = [b[0] for b in moments.histogram]
    widths = [b[1] - b[0] for b in moments.histogram]
    counts = [b[2] for b in moments.histogram]
    ax.bar(lmost, counts, width=widths, align="edge", color="tab:blue", alpha=0.7,
           label=f"{moments.n_primes} primes <= {moments.bound}")
    if moments.genus == 1 and moments.n_primes:
        # semicircle density of the trace of a random SU(2) matrix
        t = np.linspace(-2, 2, 200)
        dens = np.sqrt(np.maximum(4 - t * t, 0.0)) / (2 * math.pi)
        scale = moments.n_primes * widths[0]
        ax.plot(t, dens * scale, color="tab:red", linewidth=1.4, label="generic reference")
    ax.set_xlabel("F1 / sqrt(p)")
    ax.set_ylabel("primes per bucket")
    flag = "non-generic" if moments.non_generic else "generic-compatible"
    ax.set_title(
        f"{moments.label}: mean {moments.mean:.4f}, "
        f"second moment {moments.second_moment:.4f} ({flag})"
    )
    ax.legend(loc="best", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
