"""Error-versus-parameter figures for the limit sweeps."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .convergence import LimitReport  # noqa: E402


def plot_limits(reports: list[LimitReport], path, title: str | None = None) -> str:
    """Log-log plot of error against the limit parameter, one line per report."""
    fig, ax = plt.subplots(figsize=(6, 4))
    for rep in reports:
        pts = [(r.parameter, r.error) for r in rep.rows if r.error > 0]
        if not pts:
            continue
        xs, ys = zip(*pts)
        ax.loglog(xs, ys, marker="o", markersize=3, label=rep.name)
    ax.set_xlabel(reports[0].parameter_name if reports else "parameter")
    ax.set_ylabel("relative error")
    ax.invert_xaxis()
    ax.grid(True, which="both", alpha=0.3)
    if title:
        ax.set_title(title)
    if any(r.rows for r in reports):
        ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return str(path)
