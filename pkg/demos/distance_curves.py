"""Marginal trace-distance curves of the four stock scenarios.

Runs each scenario on its full grid, plots the system-side and
environment-side distances on top of their closed-form reference curves,
and writes the complete measure CSVs (including the oracle columns) next
to the figure.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from qinfoflow import builtin, emit_csv, run

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

fig, axes = plt.subplots(2, 2, figsize=(11, 7), sharex="col")
for ax, name in zip(axes.flat, ("fig1", "fig2", "fig3", "fig4")):
    series = run(builtin(name))
    ts = series.times
    ax.plot(ts, series.columns["D_E"], label="system distance", lw=1.8)
    ax.plot(ts, series.columns["D_S"], label="environment distance", lw=1.8)
    ax.plot(ts, series.oracle["oracle_D_E"], "k--", lw=0.9, label="closed form")
    ax.plot(ts, series.oracle["oracle_D_S"], "k--", lw=0.9)
    worst = max(
        series.oracle["err_D_E"].max(), series.oracle["err_D_S"].max()
    )
    ax.set_title(f"{name}: max oracle error {worst:.1e}")
    ax.grid(alpha=0.3)
    ax.set_xlabel("t")

    target = OUT / f"{name}.csv"
    emit_csv(series, target)
    print(f"wrote {target}")

axes[0, 0].set_ylabel("trace distance")
axes[1, 0].set_ylabel("trace distance")
axes[0, 0].legend(loc="upper right", fontsize=8)
fig.tight_layout()
target = OUT / "distance_curves.png"
fig.savefig(target, dpi=150)
print(f"wrote {target}")
