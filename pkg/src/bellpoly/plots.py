"""Report figures rendered to files alongside the text/JSON outputs."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def _new_axes(width=6.0, height=3.7):
    fig, ax = plt.subplots(figsize=(width, height))
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    return fig, ax


def render_class_sizes(classes, path) -> str:
    """Bar chart of orbit size and members seen per inequality class."""
    fig, ax = _new_axes()
    index = range(len(classes))
    orbit = [c.orbit_size for c in classes]
    seen = [c.members_seen for c in classes]
    width = 0.4
    ax.bar([i - width / 2 for i in index], orbit, width=width,
           label="orbit size", color="#4878a8")
    ax.bar([i + width / 2 for i in index], seen, width=width,
           label="members seen", color="#e1812c")
    ax.set_xticks(list(index))
    ax.set_xlabel("inequality class")
    ax.set_ylabel("count")
    ax.legend(frameon=False)
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)
    return str(path)


def render_seesaw_trace(bell_value, path) -> str:
    """Per-restart convergence of the see-saw, with the classical bound."""
    fig, ax = _new_axes()
    for k, history in enumerate(bell_value.trace):
        ax.plot(range(1, len(history) + 1), history, linewidth=0.9, alpha=0.75,
                label=f"restart {k}" if len(bell_value.trace) <= 6 else None)
    bound = float(bell_value.inequality.bound)
    ax.axhline(bound, color="black", linestyle="--", linewidth=1.0,
               label="classical bound")
    ax.axhline(bell_value.value, color="#2ca02c", linestyle=":", linewidth=1.0,
               label="best value")
    ax.set_xlabel("sweep")
    ax.set_ylabel("Bell value")
    ax.legend(frameon=False, fontsize=8)
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)
    return str(path)


def render_violation_ratios(labels, ratios, path) -> str:
    """Violation ratio per inequality (1.0 marks the classical boundary)."""
    fig, ax = _new_axes()
    ax.bar(range(len(ratios)), ratios, color="#4878a8")
    ax.axhline(1.0, color="black", linestyle="--", linewidth=1.0)
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=45, ha="right", fontsize=7)
    ax.set_ylabel("quantum / classical")
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)
    return str(path)
