"""Render a sweep table as a payoff-curve figure.

The plot shows the two payoff curves over the commitment probability (the
no-observation curve u-hat and the noisy-observation curve v-hat), the
single-valued selection omega as a dashed line when present, interval-valued
cells as vertical segments, the flagged breakpoints as annotated markers, and
the u-hat minimizer (the commitment-only optimum) as a reference marker.
Output dimensions, styling, and legend are deterministic for identical input.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .table import SweepRow, SweepTable

__all__ = ["DPI", "FIGSIZE", "render"]

FIGSIZE = (7.5, 5.0)
DPI = 150

_CURVE_U = dict(color="tab:blue", linewidth=1.6)
_CURVE_V = dict(color="tab:orange", linewidth=1.8)
_CURVE_OMEGA = dict(color="tab:green", linewidth=1.4, linestyle="--")
_SEGMENT = dict(color="tab:red", linewidth=2.4)


def _sorted_xy(rows, y) -> tuple[list[float], list[float]]:
    pts = sorted(((r.p_a1, y(r)) for r in rows), key=lambda q: q[0])
    return [q[0] for q in pts], [q[1] for q in pts]


def _annotate_flag(ax, row: SweepRow, y: float) -> None:
    ax.annotate(
        row.flag,
        (row.p_a1, y),
        textcoords="offset points",
        xytext=(4, 6),
        fontsize=8,
        color="dimgray",
    )


def render(table: SweepTable, out_path: str, fmt: str) -> None:
    """Write the figure for ``table`` to ``out_path`` in ``fmt`` (png or svg)."""
    fig, ax = plt.subplots(figsize=FIGSIZE, dpi=DPI)
    try:
        xs, us = _sorted_xy(table.rows, lambda r: r.u_hat)
        ax.plot(xs, us, label="u-hat (commitment only)", **_CURVE_U)
        xs, vs = _sorted_xy(table.rows, lambda r: r.v_hat)
        ax.plot(xs, vs, label="v-hat (noisy observation)", **_CURVE_V)

        omega_rows = [r for r in table.rows if r.omega is not None]
        if omega_rows:
            xs, os_ = _sorted_xy(omega_rows, lambda r: r.omega)
            ax.plot(xs, os_, label="omega (selection)", **_CURVE_OMEGA)

        interval_rows = [
            r for r in table.rows if r.has_interval and r.v_tilde_hi > r.v_tilde_lo
        ]
        for k, row in enumerate(sorted(interval_rows, key=lambda r: r.p_a1)):
            ax.vlines(
                row.p_a1,
                row.v_tilde_lo,
                row.v_tilde_hi,
                label="v-tilde interval" if k == 0 else None,
                **_SEGMENT,
            )

        indiff = [r for r in table.breakpoint_rows if r.flag in ("p1", "p2")]
        for k, row in enumerate(sorted(indiff, key=lambda r: r.flag)):
            ax.plot(
                [row.p_a1], [row.v_hat], "o", color="tab:orange", markersize=6,
                markeredgecolor="black",
                label="indifference breakpoints" if k == 0 else None,
            )
            _annotate_flag(ax, row, row.v_hat)
        pre_images = [r for r in table.breakpoint_rows if r.flag in ("pt1", "pt2")]
        for k, row in enumerate(sorted(pre_images, key=lambda r: r.flag)):
            y = row.omega if row.omega is not None else row.v_hat
            ax.plot(
                [row.p_a1], [y], "s", color="tab:red", markersize=6,
                markeredgecolor="black",
                label="distorted-belief pre-images" if k == 0 else None,
            )
            _annotate_flag(ax, row, y)

        ne = min(table.rows, key=lambda r: (r.u_hat, r.p_a1))
        ax.plot(
            [ne.p_a1], [ne.u_hat], "*", color="tab:purple", markersize=12,
            markeredgecolor="black", label="u-hat minimum (NE commitment)",
        )

        ax.set_xlim(0.0, 1.0)
        ax.set_xlabel("leader commitment p(a1)")
        ax.set_ylabel("expected payoff")
        ax.grid(alpha=0.3)
        ax.legend(loc="best", framealpha=0.9, fontsize=9)
        fig.tight_layout()
        # SVG output embeds a creation date unless suppressed; strip it so
        # identical input yields identical bytes in both formats.
        # Strip the timestamp and pin the element-id salt so repeated renders
        # of the same table are byte-identical.
        metadata = {"Date": None} if fmt == "svg" else None
        with matplotlib.rc_context({"svg.hashsalt": "figrender"}):
            fig.savefig(out_path, format=fmt, dpi=DPI, metadata=metadata)
    finally:
        plt.close(fig)
