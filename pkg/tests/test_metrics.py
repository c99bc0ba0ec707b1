# BrightStego 🚀 AGPL-3.0 License
import math

import numpy as np
import pytest
import yaml
from hypothesis import given, settings
from hypothesis import strategies as st

from tests.conftest import random_image
from utils.bmp import RawImage
from utils.metrics import (
    DimensionMismatch,
    analyze,
    capacity,
    format_report,
    intensity_census,
    mse,
    partition_gap_count,
    psnr,
)
from utils.payload import frame
from utils.plots import plot_intensity_histogram
from utils.stego import StegoParams, brighten, cover

P = StegoParams(40, 7, 100)


def test_capacity(zeros4):
    assert capacity(zeros4, P) == 126
    assert capacity(RawImage.filled(4, 4, 255), P) == 0
    assert capacity(zeros4, StegoParams(40, 1, 100)) == 42


def test_census():
    assert intensity_census(RawImage.filled(2, 2, 255), 244) == 12
    assert intensity_census(random_image(8, 8), 255) == 0
    assert intensity_census(RawImage.filled(3, 3, 0), 0) == 0
    assert intensity_census(RawImage.filled(1, 1, (245, 244, 250)), 244) == 2


@settings(max_examples=100)
@given(st.integers(1, 16), st.integers(1, 16), st.integers(0, 2**32 - 1), st.integers(0, 254))
def test_census_monotone_in_threshold(w, h, seed, t):
    im = random_image(w, h, seed=seed)
    assert intensity_census(im, t) >= intensity_census(im, t + 1)


def test_psnr():
    a = random_image(4, 4, seed=1, high=255)
    assert psnr(a, a) == math.inf
    b = RawImage(4, 4, a.data + 1)
    assert psnr(a, b) == pytest.approx(48.13, abs=0.01)
    assert psnr(a, b) == psnr(b, a)
    assert mse(a, b) == 1.0
    with pytest.raises(DimensionMismatch):
        psnr(RawImage.filled(2, 2), RawImage.filled(3, 3))


@settings(max_examples=50)
@given(st.integers(0, 2**32 - 1), st.integers(1, 100))
def test_darker_images_have_no_less_capacity(seed, level):
    im = random_image(16, 16, seed=seed)
    brighter = brighten(im, StegoParams(level, 7, 0))
    assert capacity(im, P) >= capacity(brighter, P)


def test_partition_gap_on_stego():
    stego = cover(random_image(32, 32, seed=5), frame(b"gap"), P)
    assert partition_gap_count(stego, P) == 0
    assert partition_gap_count(RawImage.filled(4, 4, 137), P) == 42  # [136, 140)


def test_report_text(zeros4):
    text = format_report(analyze(zeros4, P, threshold=244, reference=zeros4))
    assert "capacity: 126 bits" in text
    assert "census(>244): 0" in text
    assert "PSNR: inf" in text


def test_report_yaml():
    im = RawImage.filled(2, 2, 255)
    d = yaml.safe_load(format_report(analyze(im, P, reference=RawImage.filled(2, 2, 254)), "yaml"))
    assert d["census_above_threshold"] == 12
    assert d["capacity_bits"] == 0 and d["capacity_bytes"] == 0
    assert d["psnr_db"] == pytest.approx(48.13, abs=0.01)
    assert "partition_gap" not in d
    assert yaml.safe_load(format_report(analyze(im, reference=im), "yaml"))["psnr_db"] == math.inf


def test_report_capacity_bytes(zeros4):
    report = analyze(zeros4, P)
    assert report.capacity_bits == 3 * report.carrier_byte_count == 126
    assert report.total_data_channel_bytes == 42
    assert report.capacity_bytes == 11
    with pytest.raises(ValueError):
        format_report(report, "csv")


def test_plot_histogram(tmp_path):
    f = tmp_path / "histogram.png"
    stego = cover(random_image(32, 32, seed=2), frame(b"plot"), P)
    assert plot_intensity_histogram(stego, P, f) == f
    assert f.exists() and f.stat().st_size > 0
    assert plot_intensity_histogram(stego, None, tmp_path / "plain.png").exists()
