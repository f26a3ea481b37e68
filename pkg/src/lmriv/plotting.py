"""Figures written next to the JSON / JSONL output."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _style(ax):
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    ax.tick_params(direction="out")


def plot_sweep_summary(report, path):
    """Bar chart per order: graphs, (G, F) pairs and integral hits."""
    orders = sorted(report.per_order)
    graphs = [report.per_order[n]["graphs"] for n in orders]
    pairs = [report.per_order[n]["pairs"] for n in orders]
    hits = [report.per_order[n]["integral_hits"] for n in orders]

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
    w = 0.4
    xs = range(len(orders))
    ax1.bar([x - w / 2 for x in xs], graphs, w, label="connected graphs", color="0.35")
    ax1.bar([x + w / 2 for x in xs], pairs, w, label="(G, F) pairs", color="tab:blue")
    ax1.set_yscale("symlog")
    ax1.set_xticks(list(xs), [str(n) for n in orders])
    ax1.set_xlabel("order n")
    ax1.set_ylabel("count")
    ax1.legend(frameon=False, fontsize=8)
    _style(ax1)

    ax2.bar(list(xs), hits, 0.6, color="tab:red")
    ax2.set_xticks(list(xs), [str(n) for n in orders])
    ax2.set_xlabel("order n")
    ax2.set_ylabel("integral variations")
    ax2.set_ylim(0, max(1, max(hits, default=0)) * 1.2)
    _style(ax2)

    fig.suptitle(f"sweep max_f={report.config['max_f']}: "
                 f"{report.violations} violations, {report.failures} failures", fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_root_strip(g_roots, h_roots, path, labels=("G", "G+F")):
    """Two rows of root markers, with lines joining the interlaced pairs."""
    g = g_roots.approx()
    h = h_roots.approx() if h_roots is not None else None
    fig, ax = plt.subplots(figsize=(7, 2.2 if h is None else 2.8))
    ax.scatter(g, [0] * len(g), marker="o", color="tab:blue", zorder=3, label=labels[0])
    if h is not None:
        ax.scatter(h, [1] * len(h), marker="s", color="tab:red", zorder=3, label=labels[1])
        for a, b in zip(g, h):
            ax.plot([a, b], [0, 1], color="0.7", lw=0.8, zorder=1)
        ax.set_yticks([0, 1], list(labels))
    else:
        ax.set_yticks([0], [labels[0]])
    ax.set_xlabel("Laplacian matching root")
    ax.set_ylim(-0.5, 1.5 if h is not None else 0.5)
    _style(ax)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
