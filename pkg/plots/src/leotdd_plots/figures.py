"""Figure builders. Deterministic: fixed size and DPI, no timestamps."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.figure import Figure

FIGSIZE = (6.0, 4.0)
DPI = 150

# FDD-relative CDF figures follow one palette: extended frame in green,
# UE-specific guard in blue, partial overlap in reds darkening with SIC.
_POU_REDS = ["#ff9896", "#ff6361", "#d62728", "#8b0000"]


@dataclass
class PlotSpec:
    input_path: str
    output_path: str
    x_range: tuple[float, float] = (0.5, 1.5)
    y_range: tuple[float, float] = (0.0, 1.0)
    styles: dict[str, dict] = field(default_factory=dict)


def display_label(scheme: str) -> str:
    """Map a scheme id like ``tdd_pou130`` to a legend label."""
    m = re.fullmatch(r"tdd_pou(\d+)?", scheme)
    if m:
        return f"TDD-POU({m.group(1)} dB)" if m.group(1) else "TDD-POU"
    known = {"tdd_efs": "TDD-EFS", "tdd_usg": "TDD-USG", "fdd": "FDD"}
    return known.get(scheme, scheme)


def default_styles(schemes: list[str]) -> dict[str, dict]:
    styles = {}
    pou_index = 0
    n_pou = sum(1 for s in schemes if s.startswith("tdd_pou"))
    for scheme in schemes:
        if scheme == "tdd_efs":
            styles[scheme] = {"color": "tab:green"}
        elif scheme == "tdd_usg":
            styles[scheme] = {"color": "tab:blue"}
        elif scheme.startswith("tdd_pou"):
            reds = _POU_REDS[-n_pou:] if n_pou <= len(_POU_REDS) else _POU_REDS
            styles[scheme] = {"color": reds[pou_index % len(reds)]}
            pou_index += 1
        else:
            styles[scheme] = {"color": "tab:gray"}
    return styles


def build_cdf_figure(spec: PlotSpec, series: dict[str, tuple[list[float], list[float]]]) -> Figure:
    fig, ax = plt.subplots(figsize=FIGSIZE, dpi=DPI)
    styles = default_styles(list(series))
    styles.update(spec.styles)
    for scheme, (xs, ys) in series.items():
        ax.plot(xs, ys, drawstyle="steps-post", label=display_label(scheme),
                **styles.get(scheme, {}))
    ax.axvline(1.0, color="black", linewidth=0.8, linestyle="--")
    ax.set_xlim(*spec.x_range)
    ax.set_ylim(*spec.y_range)
    ax.set_xlabel("DL resource efficiency ratio over FDD")
    ax.set_ylabel("empirical CDF")
    ax.grid(alpha=0.3)
    ax.legend(loc="lower right")
    fig.tight_layout()
    return fig


def build_sweep_figure(spec: PlotSpec,
                       series: dict[str, tuple[list[float], list[float]]],
                       swept_key: str) -> Figure:
    fig, ax = plt.subplots(figsize=FIGSIZE, dpi=DPI)
    for scheme, (xs, ys) in series.items():
        ax.plot(xs, ys, marker="o", label=display_label(scheme))
    ax.set_ylim(0.0, 1.0)
    ax.set_xlabel(swept_key)
    ax.set_ylabel("fraction of UEs with ratio > 1")
    ax.grid(alpha=0.3)
    ax.legend(loc="lower right")
    fig.tight_layout()
    return fig


def save_figure(fig: Figure, output_path: str | Path):
    """Write the figure; format follows the extension, timestamps stripped."""
    path = Path(output_path)
    suffix = path.suffix.lower()
    metadata = None
    if suffix == ".svg":
        metadata = {"Date": None}
    elif suffix == ".pdf":
        metadata = {"CreationDate": None}
    fig.savefig(path, dpi=DPI, metadata=metadata)
    plt.close(fig)
