"""Matplotlib renderings of orders and check summaries.

Figures are written straight to files with the Agg backend; nothing here
opens a window.
"""

from __future__ import annotations

from typing import Callable, Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .preorder import PartialPreorder, sort_key  # noqa: E402


def layer_classes(order: PartialPreorder) -> list[int]:
    """Height of each class: length of the longest covering chain below it."""
    covers = order.covering_pairs()
    height = [0] * len(order.classes)
    changed = True
    while changed:
        changed = False
        for i, j in covers:
            if height[j] < height[i] + 1:
                height[j] = height[i] + 1
                changed = True
    return height


def draw_order(order: PartialPreorder, path, labeler: Optional[Callable] = None,
               title: Optional[str] = None) -> None:
    """Hasse diagram with the most preferred classes at the bottom."""
    labeler = labeler or str
    height = layer_classes(order)
    layers: dict[int, list[int]] = {}
    for i, h in enumerate(height):
        layers.setdefault(h, []).append(i)
    pos = {}
    for h, members in layers.items():
        k = len(members)
        for slot, i in enumerate(members):
            pos[i] = (slot - (k - 1) / 2.0, float(h))

    texts = [" = ".join(labeler(x) for x in sorted(c, key=sort_key)) for c in order.classes]
    width = max(4.0, 2.6 * max((len(v) for v in layers.values()), default=1))
    fig, ax = plt.subplots(figsize=(width, 1.3 * (max(height, default=0) + 2)))
    for i, j in order.covering_pairs():
        (x0, y0), (x1, y1) = pos[i], pos[j]
        ax.annotate("", xy=(x0, y0 + 0.18), xytext=(x1, y1 - 0.18),
                    arrowprops=dict(arrowstyle="->", color="0.3", lw=1.0))
    for i, (x, y) in pos.items():
        ax.text(x, y, texts[i], ha="center", va="center", fontsize=8,
                bbox=dict(boxstyle="round,pad=0.3", fc="white", ec="0.4"))
    xs = [p[0] for p in pos.values()] or [0.0]
    ys = [p[1] for p in pos.values()] or [0.0]
    ax.set_xlim(min(xs) - 1.2, max(xs) + 1.2)
    ax.set_ylim(min(ys) - 0.6, max(ys) + 0.6)
    ax.axis("off")
    if title:
        ax.set_title(title, fontsize=10)
    fig.text(0.5, 0.01, "lower is preferred; arrow x <- y means x < y",
             ha="center", fontsize=7, color="0.4")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_check_summary(summaries, path, title: str = "randomized checks") -> None:
    names = [s.name for s in summaries]
    passed = [s.trials - len(s.failures) for s in summaries]
    failed = [len(s.failures) for s in summaries]
    fig, ax = plt.subplots(figsize=(7, 0.35 * len(names) + 1.2))
    y = range(len(names))
    ax.barh(y, passed, color="tab:green", label="pass")
    ax.barh(y, failed, left=passed, color="tab:red", label="fail")
    ax.set_yticks(list(y))
    ax.set_yticklabels(names, fontsize=7)
    ax.invert_yaxis()
    ax.set_xlabel("instances")
    ax.set_title(title, fontsize=10)
    ax.legend(fontsize=7, loc="lower right")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
