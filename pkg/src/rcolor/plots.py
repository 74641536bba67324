"""Figures for suite reports.  Uses the Agg backend; nothing is shown on screen."""

import math
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .partitions import a_r  # noqa: E402


def new_figure(width=8, height=None):
    golden = (math.sqrt(5) - 1.0) / 2.0
    if not height:
        height = width * golden
    fig, ax = plt.subplots(figsize=(width, height))
    return fig, ax


def save(fig, path):
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def zero_fraction_grid(r, modulus, step, n_terms):
    """Fraction of n <= n_terms with a_r(step*n + b) = 0 (mod m), for each b < step."""
    s = a_r(r, step * n_terms + step - 1, modulus).coeffs
    grid = np.empty(step)
    for b in range(step):
        vals = s[b :: step][: n_terms + 1]
        grid[b] = np.mean(vals == 0)
    return grid


def plot_zero_fractions(cases, path, n_terms=300):
    """One bar panel per (r, m, step): how often each residue class vanishes mod m.

    A class with every coefficient divisible by m shows as a full bar.
    """
    fig, axes = plt.subplots(1, len(cases), figsize=(4 * len(cases), 3.2), squeeze=False)
    for ax, (r, m, step) in zip(axes[0], cases):
        grid = zero_fraction_grid(r, m, step, n_terms)
        colors = ["tab:red" if g == 1.0 else "tab:gray" for g in grid]
        ax.bar(range(step), grid, color=colors)
        ax.axhline(1.0 / m, ls=":", color="k", lw=0.8)
        ax.set_xticks(range(0, step, 1 if step <= 10 else 3))
        ax.set_ylim(0, 1.05)
        ax.set_title(f"a_{r}({step}n+b) mod {m}")
        ax.set_xlabel("b")
    axes[0][0].set_ylabel("fraction = 0")
    return save(fig, path)


def plot_check_times(report, path):
    checks = report["checks"]
    names = [c["check"] for c in checks]
    times = [c["wall_time"] for c in checks]
    colors = {"pass": "tab:green", "fail": "tab:red", "vacuous": "tab:gray"}
    fig, ax = new_figure(8, max(3, 0.22 * len(names)))
    ax.barh(range(len(names)), times, color=[colors[c["result"]] for c in checks])
    ax.set_yticks(range(len(names)))
    ax.set_yticklabels(names, fontsize=7)
    ax.invert_yaxis()
    ax.set_xlabel("wall time (s)")
    return save(fig, path)


def plot_hecke_images(images, path):
    """Residues of T_p-images through the Sturm bound; a congruent-to-zero image is flat."""
    fig, ax = new_figure(8)
    for label, coeffs in images.items():
        ax.plot(range(len(coeffs)), coeffs, marker=".", lw=0.6, label=label)
    ax.set_xlabel("n")
    ax.set_ylabel("coefficient residue")
    ax.legend(fontsize=8)
    return save(fig, path)


def render_suite_figures(report, outdir):
    paths = [
        plot_check_times(report, os.path.join(outdir, "check_times.png")),
        plot_zero_fractions([(3, 7, 7), (5, 5, 5), (5, 3, 27)],
                            os.path.join(outdir, "zero_classes.png")),
    ]
    return paths
