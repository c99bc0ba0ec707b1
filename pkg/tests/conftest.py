# BrightStego 🚀 AGPL-3.0 License
"""Shared fixtures: synthetic carriers and BMP files, nothing binary is committed."""

import numpy as np
import pytest

from utils.bmp import RawImage, save_bmp

EILEAN_DONAN = (
    "Eilean Donan (Scottish Gaelic: Eilean Donnain) is a small island in Loch Duich in the western Highlands of "
    "Scotland. It is connected to the mainland by a footbridge and lies about half a mile from the village of Dornie. "
    "Eilean Donan (which means simply island of Donnain) is named after Donnain of Eigg, a Celtic saint martyred in "
    "617. Donnain is said to have established a church on the island, though no trace of this remains. The island is "
    "dominated by a picturesque castle which is familiar from many photographs and appearances in film and "
    "television. The castle was founded in the thirteenth century, but was destroyed in the eighteenth century. The "
    "present buildings are the result of twentieth-century reconstruction. Eilean Donan Castle is the home of the "
    "Clan Macrae. Eilean Donan is part of the Kintail National Scenic Area, one of 40 in Scotland. In 2001, the "
    "island had a population of just one person."
)


def random_image(width, height, seed=0, low=0, high=256):
    """Uniform random RGB image with bytes in [low, high)."""
    rng = np.random.default_rng(seed)
    return RawImage(width, height, rng.integers(low, high, size=(height, width, 3), dtype=np.uint8))


def landscape(width=1024, height=768, seed=0):
    """Smooth gradient plus noise, closer to a photograph than uniform noise."""
    rng = np.random.default_rng(seed)
    y, x = np.mgrid[0:height, 0:width]
    base = np.stack((x * 255 / width, y * 255 / height, (x + y) * 127 / (width + height)), axis=-1)
    noise = rng.normal(0, 12, size=base.shape)
    return RawImage(width, height, np.clip(base + noise, 0, 255).astype(np.uint8))


@pytest.fixture
def zeros4():
    """All-zero 4x4 image."""
    return RawImage.filled(4, 4, 0)


@pytest.fixture
def lake():
    """1024x768 synthetic carrier."""
    return landscape()


@pytest.fixture
def write_bmp(tmp_path):
    """Returns a helper that saves a RawImage under tmp_path and returns the path."""

    def write(image, name="image.bmp"):
        path = tmp_path / name
        save_bmp(image, path)
        return path

    return write
