# BrightStego 🚀 AGPL-3.0 License
"""Capacity, distortion and intensity statistics for carrier and stego images."""

import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np
import yaml

from utils import StegoError
from utils.bmp import RawImage
from utils.payload import HEADER_BITS
from utils.stego import N_LSBS, StegoParams, carrier_indices, data_mask, preprocess

PEAK = 255.0


class DimensionMismatch(StegoError):
    """Two images that must be compared pixel by pixel differ in size."""


def capacity(image: RawImage, params: StegoParams):
    """
    Returns the number of payload bits `image` can carry under `params`, header bits included.

    Example:
        >>> capacity(RawImage.filled(4, 4, 0), StegoParams(40, 7, 100))
        126
    """
    return N_LSBS * len(carrier_indices(preprocess(image, params), params))


def intensity_census(image: RawImage, threshold):
    """
    Counts bytes strictly above `threshold` over the whole pixel buffer (all channels, header excluded).

    Example:
        >>> intensity_census(RawImage.filled(2, 2, 255), 244)
        12
    """
    return int(np.count_nonzero(image.data > threshold))


def _check_same_size(a: RawImage, b: RawImage):
    if (a.width, a.height) != (b.width, b.height):
        raise DimensionMismatch(f"cannot compare a {a.width}x{a.height} image with a {b.width}x{b.height} image")


def mse(a: RawImage, b: RawImage):
    """Mean squared error over all data bytes."""
    _check_same_size(a, b)
    d = a.data.astype(np.float64) - b.data.astype(np.float64)
    return float(np.mean(d * d))


def psnr(a: RawImage, b: RawImage):
    """Peak signal-to-noise ratio in dB with peak 255; math.inf for identical images."""
    e = mse(a, b)
    return math.inf if e == 0 else 10 * math.log10(PEAK**2 / e)


def partition_gap_count(stego: RawImage, params: StegoParams):
    """Number of data-channel bytes inside [lowerbound + level, upperbound + level); zero on every cover output."""
    lo = params.lowerbound_intensity + params.brightness_level
    hi = params.upperbound_intensity + params.brightness_level
    a = stego.data
    return int(np.count_nonzero(data_mask(stego, params.channels) & (a >= lo) & (a < hi)))


@dataclass
class AnalysisReport:
    """Figures reported by `inspect` for one image/params pair."""

    width: int
    height: int
    capacity_bits: int
    carrier_byte_count: int
    total_data_channel_bytes: int
    census_threshold: int
    census_above_threshold: int
    lowerbound_intensity: Optional[int] = None
    psnr_db: Optional[float] = None
    mse: Optional[float] = None
    partition_gap: Optional[int] = None

    @property
    def capacity_bytes(self):
        """Message bytes that fit after the 32-bit length header."""
        return max(0, (self.capacity_bits - HEADER_BITS) // 8)


def analyze(image: RawImage, params: Optional[StegoParams] = None, threshold=244, reference=None, stego=False):
    """
    Builds an AnalysisReport. Capacity figures need `params`; PSNR/MSE need a `reference` image; with `stego=True`
    the partition gap of `image` under `params` is counted as well.
    """
    report = AnalysisReport(
        width=image.width,
        height=image.height,
        capacity_bits=0,
        carrier_byte_count=0,
        total_data_channel_bytes=0,
        census_threshold=int(threshold),
        census_above_threshold=intensity_census(image, threshold),
    )
    if params is not None:
        report.capacity_bits = capacity(image, params)
        report.carrier_byte_count = report.capacity_bits // N_LSBS
        report.total_data_channel_bytes = int(np.count_nonzero(data_mask(image, params.channels)))
        report.lowerbound_intensity = params.lowerbound_intensity
        if stego:
            report.partition_gap = partition_gap_count(image, params)
    if reference is not None:
        report.mse = mse(image, reference)
        report.psnr_db = psnr(image, reference)
    return report


def format_report(report: AnalysisReport, fmt="text"):
    """Renders `report` as `key: value` text lines or as a YAML mapping."""
    if fmt == "yaml":
        d = asdict(report)
        d["capacity_bytes"] = report.capacity_bytes
        return yaml.safe_dump({k: v for k, v in d.items() if v is not None}, sort_keys=False)
    if fmt != "text":
        raise ValueError(f"unknown report format '{fmt}', expected 'text' or 'yaml'")

    lines = [f"image: {report.width}x{report.height}"]
    if report.lowerbound_intensity is not None:
        lines += [
            f"capacity: {report.capacity_bits} bits ({report.capacity_bytes} message bytes)",
            f"carrier bytes: {report.carrier_byte_count} of {report.total_data_channel_bytes} data-channel bytes",
            f"lowerbound: {report.lowerbound_intensity}",
        ]
    if report.partition_gap is not None:
        lines.append(f"partition gap: {report.partition_gap}")
    lines.append(f"census(>{report.census_threshold}): {report.census_above_threshold}")
    if report.psnr_db is not None:
        lines.append("PSNR: inf" if math.isinf(report.psnr_db) else f"PSNR: {report.psnr_db:.2f} dB")
        lines.append(f"MSE: {report.mse:.4f}")
    return "\n".join(lines) + "\n"
