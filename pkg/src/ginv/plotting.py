"""Figure for a CLI report: one heatmap per produced matrix plus the identity checks."""

from __future__ import annotations

import math
from fractions import Fraction

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

MAX_PANELS = 12


def _values(mat_json):
    rows, cols = mat_json["rows"], mat_json["cols"]
    vals = [float(Fraction(v)) if isinstance(v, str) else float(v) for v in mat_json["data"]]
    return [vals[i * cols : (i + 1) * cols] for i in range(rows)]


def render_report(payload, path, dpi=120):
    """Write a PNG summarising ``payload`` (a report dict) to ``path``."""
    mats = [(k, v) for k, v in payload["matrices"].items() if v["rows"] and v["cols"]][:MAX_PANELS]
    checks = payload["checks"]
    ncols = min(4, max(1, len(mats)))
    nrows = math.ceil(len(mats) / ncols) if mats else 0
    has_checks = bool(checks)
    fig_h = 2.6 * nrows + (0.25 * len(checks) + 0.8 if has_checks else 0) + 0.6
    fig = plt.figure(figsize=(3.0 * ncols + 0.5, max(fig_h, 2.0)), facecolor="w")
    total_rows = nrows + (1 if has_checks else 0)
    heights = [2.6] * nrows + ([0.25 * len(checks) + 0.8] if has_checks else [])
    grid = fig.add_gridspec(max(total_rows, 1), ncols, height_ratios=heights or [1])

    for idx, (name, mj) in enumerate(mats):
        ax = fig.add_subplot(grid[idx // ncols, idx % ncols])
        vals = _values(mj)
        vmax = max((abs(v) for r in vals for v in r), default=1.0) or 1.0
        im = ax.imshow(vals, cmap="RdBu_r", vmin=-vmax, vmax=vmax, interpolation="nearest")
        ax.set_title(f"{name} ({mj['rows']}×{mj['cols']})", fontsize=9)
        ax.set_xticks([])
        ax.set_yticks([])
        fig.colorbar(im, ax=ax, fraction=0.046, pad=0.04).ax.tick_params(labelsize=7)

    if has_checks:
        ax = fig.add_subplot(grid[nrows, :])
        ax.axis("off")
        for i, chk in enumerate(checks):
            mark = "pass" if chk["passed"] else "FAIL"
            color = "tab:green" if chk["passed"] else "tab:red"
            y = 1.0 - (i + 0.5) / len(checks)
            ax.text(0.0, y, mark, color=color, fontsize=8, family="monospace", va="center")
            ax.text(0.08, y, chk["identity"], fontsize=8, va="center")

    fig.suptitle(f"{payload['command']}: {payload['verdict']}", fontsize=11)
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    return path
