# BrightStego 🚀 AGPL-3.0 License
"""Plotting utils."""

from pathlib import Path

import matplotlib
import matplotlib.pyplot as plt
import numpy as np

from utils import TryExcept
from utils.bmp import RawImage
from utils.general import LOGGER
from utils.stego import Channel, channels_of_mode, data_mask

# Settings
matplotlib.rc("font", **{"size": 11})
matplotlib.use("Agg")  # for writing to files only

CHANNEL_COLORS = {Channel.R: "#FF3838", Channel.G: "#1A9334", Channel.B: "#0018EC"}


@TryExcept("WARNING ⚠️ intensity histogram plotting failure")
def plot_intensity_histogram(image: RawImage, params=None, file=Path("histogram.png")):
    """
    Plots a 256-bin histogram per data channel; with `params`, shades the carrier band [0, lowerbound) and the band
    [lowerbound + level, upperbound + level) that is empty in a stego image.
    """
    channels = params.channels if params is not None else channels_of_mode(7)
    mask = data_mask(image, channels)
    fig, ax = plt.subplots(1, 1, figsize=(9, 6), tight_layout=True)
    x = np.arange(256)
    for c in channels.indices:
        v = image.data[..., c][mask[..., c]]
        ax.step(x, np.bincount(v, minlength=256), where="mid", linewidth=1, color=CHANNEL_COLORS[c], label=c.name)

    if params is not None:
        lo, level, hi = params.lowerbound_intensity, params.brightness_level, params.upperbound_intensity
        ax.axvspan(-0.5, lo - 0.5, color="grey", alpha=0.15, label=f"carriers < {lo}")
        ax.axvspan(lo + level - 0.5, hi + level - 0.5, color="red", alpha=0.15, label=f"gap [{lo + level}, {hi + level})")
    ax.set_xlabel("Intensity")
    ax.set_ylabel("Bytes")
    ax.set_xlim(-0.5, 255.5)
    ax.legend(bbox_to_anchor=(1.04, 1), loc="upper left")
    ax.set_title("Data-Channel Intensity Histogram")
    fig.savefig(file, dpi=250)
    plt.close(fig)
    LOGGER.info(f"Histogram saved to {file}")
    return file
