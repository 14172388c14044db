"""Figure rendering for the CLI report paths.

matplotlib is imported lazily so sampling runs that skip plotting never pay
the import cost.
"""

from __future__ import annotations

import math


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    return plt


def plot_counts(counts: dict[str, int], path: str, title: str = "measurement counts",
                max_bars: int = 64) -> None:
    """Histogram of sampled bitstrings, most frequent first when crowded."""
    plt = _pyplot()
    items = sorted(counts.items())
    if len(items) > max_bars:
        items = sorted(items, key=lambda kv: -kv[1])[:max_bars]
        items.sort()
    labels = [k for k, _ in items]
    values = [v for _, v in items]
    fig, ax = plt.subplots(figsize=(max(4.0, 0.22 * len(items) + 1.5), 3.2))
    ax.bar(range(len(items)), values, color="tab:blue")
    ax.set_xticks(range(len(items)))
    ax.set_xticklabels(labels, rotation=90, fontsize=7)
    ax.set_ylabel("count")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_bench(values: list[int], records, axis: str, path: str) -> None:
    """Runtime vs the swept axis, one line per (backend, sampler) pair."""
    plt = _pyplot()
    series: dict[tuple[str, str], dict[int, list[float]]] = {}
    per_point = max(1, len(records) // len(values))
    for i, record in enumerate(records):
        if record.seconds is None:
            continue
        key = (record.backend, record.sampler)
        value = values[i // per_point]
        series.setdefault(key, {}).setdefault(value, []).append(record.seconds)
    fig, ax = plt.subplots(figsize=(4.5, 3.2))
    for (backend, sampler), points in sorted(series.items()):
        xs = sorted(points)
        ys = [sum(points[x]) / len(points[x]) for x in xs]
        ax.plot(xs, ys, marker="o", label=f"{backend}/{sampler}")
    ax.set_xlabel(axis)
    ax.set_ylabel("seconds")
    ax.set_yscale("log")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_qaoa(report: dict, path: str) -> None:
    """Heatmap of mean cut over the (gamma, beta) sweep grid."""
    plt = _pyplot()
    sweep = report["sweep_mean_cuts"]
    grid = len(sweep)
    fig, ax = plt.subplots(figsize=(4.2, 3.4))
    im = ax.imshow(sweep, origin="lower", aspect="auto",
                   extent=(0.0, math.pi / 2.0, 0.0, math.pi), cmap="viridis")
    ax.set_xlabel("beta")
    ax.set_ylabel("gamma")
    best = report["best_params"]
    ax.plot(best["beta"] + math.pi / 4.0 / grid, best["gamma"] + math.pi / 2.0 / grid,
            "r*", markersize=10)
    fig.colorbar(im, ax=ax, label="mean cut")
    ax.set_title(f"best cut {report['best_cut']}"
                 + (f" / max {report['max_cut_brute_force']}"
                    if report["max_cut_brute_force"] is not None else ""))
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
