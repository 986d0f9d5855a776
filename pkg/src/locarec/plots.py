"""Figure rendering for sweep reports."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .evaluate import EvalReport


def render_locality_figure(reports: list[EvalReport], path: str | Path) -> None:
    """Plot both locality rates against alpha and save to `path` (PNG)."""
    alphas = [r.alpha for r in reports]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(alphas, [r.peers_locality_rate for r in reports],
            marker="o", label="peer locality")
    ax.plot(alphas, [r.item_locality_rate for r in reports],
            marker="s", label="item locality")
    ax.set_xlabel(r"location boost $\alpha$")
    ax.set_ylabel("locality rate")
    ax.set_title("Locality vs. location boost")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    # Fixed metadata keeps the PNG bytes independent of the toolchain version.
    fig.savefig(path, dpi=150, metadata={"Software": "locarec"})
    plt.close(fig)
