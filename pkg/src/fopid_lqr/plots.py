"""SVG line charts of closed-loop runs. CSV is the canonical output; these are for eyeballing."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

# deterministic element ids and no timestamp in the SVG
matplotlib.rcParams["svg.hashsalt"] = "fopid-lqr"
_META = {"Date": None}


def plot_response(path, runs: dict) -> None:
    """``runs`` maps a label to a SimResult; draws y (with r) and u against t."""
    fig, (ax_y, ax_u) = plt.subplots(2, 1, sharex=True, figsize=(7, 6))
    for label, res in runs.items():
        ax_y.plot(res.t, res.y, label=label)
        ax_u.plot(res.t, res.u, label=label)
    first = next(iter(runs.values()))
    ax_y.plot(first.t, first.r, "k--", lw=0.8, label="set-point")
    ax_y.set_ylabel("y(t)")
    ax_u.set_ylabel("u(t)")
    ax_u.set_xlabel("t [s]")
    ax_y.legend(loc="best")
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata=_META)
    plt.close(fig)


def plot_states(path, t, states: dict) -> None:
    """``states`` maps a label to the ``(x1, x2, x3)`` triple."""
    fig, axes = plt.subplots(3, 1, sharex=True, figsize=(7, 7))
    names = ("x1 = D^-lam e", "x2 = e", "x3 = D^mu e")
    for label, xs in states.items():
        for ax, x in zip(axes, xs):
            ax.plot(t[: len(x)], x, label=label)
    for ax, name in zip(axes, names):
        ax.set_ylabel(name)
    axes[-1].set_xlabel("t [s]")
    axes[0].legend(loc="best")
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata=_META)
    plt.close(fig)
