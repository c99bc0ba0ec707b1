# BrightStego 🚀 AGPL-3.0 License
"""
Intensity-partition 3-LSB steganography with a brightness shift.

Covering collapses every data-channel byte in [lowerbound, upperbound] to upperbound, writes 3 payload bits into the
low bits of every byte below lowerbound, then brightens the data channels by `brightness_level`. Afterwards carriers sit
below lowerbound + level and every other data byte at or above upperbound + level, so the receiver re-identifies the
carriers with `byte - level < upperbound` after reading the parameters back from the last two pixels of the last row.
"""

from dataclasses import dataclass
from enum import IntEnum
from typing import ClassVar

import numpy as np

from utils import StegoError
from utils.bmp import RawImage
from utils.payload import BitStream

N_LSBS = 3
MARKER = (0x47, 0x42, 0x31)  # last pixel of the last row


class InvalidParams(StegoError):
    """The parameter triple violates a validity constraint."""


class InvalidMode(InvalidParams):
    """brightness_mode is outside 1..7."""


class ImageTooSmall(StegoError):
    """The last row has no room for the two parameter pixels."""


class NotAStegoImage(StegoError):
    """The marker pixel is absent."""


class CapacityExceeded(StegoError):
    """The payload needs more bits than the carrier bytes provide."""

    def __init__(self, required, available):
        """Stores the required and available bit counts."""
        self.required = required
        self.available = available
        super().__init__(f"payload too large: required {required} bits, available {available}")


class Channel(IntEnum):
    """Colour channel index within an R,G,B pixel."""

    R = 0
    G = 1
    B = 2


MODE_CHANNELS = {
    1: (Channel.R,),
    2: (Channel.G,),
    3: (Channel.B,),
    4: (Channel.R, Channel.G),
    5: (Channel.R, Channel.B),
    6: (Channel.G, Channel.B),
    7: (Channel.R, Channel.G, Channel.B),
}


@dataclass(frozen=True)
class ChannelSet:
    """Channels that are brightened and carry payload bits."""

    includes_red: bool
    includes_green: bool
    includes_blue: bool

    def __post_init__(self):
        """Requires at least one channel."""
        if not (self.includes_red or self.includes_green or self.includes_blue):
            raise ValueError("a ChannelSet needs at least one channel")

    @property
    def indices(self):
        """Included channels in R,G,B order."""
        flags = self.includes_red, self.includes_green, self.includes_blue
        return tuple(c for c, f in zip(Channel, flags) if f)

    def __contains__(self, channel):
        """Membership by Channel or channel index."""
        return Channel(channel) in self.indices

    def __str__(self):
        """E.g. 'RGB' or 'GB'."""
        return "".join(c.name for c in self.indices)


def channels_of_mode(mode):
    """
    Maps brightness_mode 1..7 to its ChannelSet: 1 R, 2 G, 3 B, 4 RG, 5 RB, 6 GB, 7 RGB.

    Example:
        >>> str(channels_of_mode(7)), str(channels_of_mode(5))
        ('RGB', 'RB')
    """
    if isinstance(mode, bool) or mode not in MODE_CHANNELS:
        raise InvalidMode(f"brightness_mode must be in 1..7, got {mode}")
    c = MODE_CHANNELS[mode]
    return ChannelSet(Channel.R in c, Channel.G in c, Channel.B in c)


def set_n_lsbs(value, n, bits):
    """
    Replaces the `n` least significant bits of `value` with `bits`, keeping the top 8-n bits. Works element-wise on
    uint8 arrays.

    Example:
        >>> set_n_lsbs(0b11011000, 2, 0b01) == 0b11011001
        True
        >>> set_n_lsbs(100, 3, 0)
        96
    """
    if not 1 <= n <= 8:
        raise ValueError(f"n must be in 1..8, got {n}")
    mask = (1 << n) - 1
    b = np.asarray(bits)
    if np.any((b < 0) | (b > mask)):
        raise ValueError(f"bits {bits} do not fit in {n} bits")
    return (value & (0xFF ^ mask)) | bits


def lowerbound_of(upperbound):
    """
    Returns `upperbound` with its 3 low bits cleared, the carrier-eligibility threshold.

    Example:
        >>> lowerbound_of(100), lowerbound_of(255), lowerbound_of(0)
        (96, 248, 0)
    """
    return set_n_lsbs(upperbound, N_LSBS, 0)


@dataclass(frozen=True)
class StegoParams:
    """The three shared parameters; validated on construction."""

    brightness_level: int
    brightness_mode: int
    upperbound_intensity: int
    n_lsbs: ClassVar[int] = N_LSBS

    def __post_init__(self):
        """Enforces mode in 1..7, level in 1..254, upperbound in 0..255 and upperbound + level < 255."""
        for k in "brightness_level", "brightness_mode", "upperbound_intensity":
            v = getattr(self, k)
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
                raise InvalidParams(f"{k} must be an integer, got {v!r}")
            object.__setattr__(self, k, int(v))
        channels_of_mode(self.brightness_mode)  # raises InvalidMode
        if not 1 <= self.brightness_level <= 254:
            raise InvalidParams(f"brightness_level must be in 1..254, got {self.brightness_level}")
        if not 0 <= self.upperbound_intensity <= 255:
            raise InvalidParams(f"upperbound_intensity must be in 0..255, got {self.upperbound_intensity}")
        if self.upperbound_intensity + self.brightness_level >= 255:
            raise InvalidParams(
                f"upperbound_intensity + brightness_level must be < 255, got "
                f"{self.upperbound_intensity} + {self.brightness_level} = "
                f"{self.upperbound_intensity + self.brightness_level}"
            )

    @property
    def lowerbound_intensity(self):
        """Derived carrier threshold."""
        return lowerbound_of(self.upperbound_intensity)

    @property
    def channels(self):
        """ChannelSet selected by brightness_mode."""
        return channels_of_mode(self.brightness_mode)

    def tobytes(self):
        """Parameter pixel bytes: level, mode, upperbound."""
        return bytes((self.brightness_level, self.brightness_mode, self.upperbound_intensity))

    def to_dict(self):
        """Plain mapping for YAML config files."""
        return {
            "brightness_level": self.brightness_level,
            "brightness_mode": self.brightness_mode,
            "upperbound_intensity": self.upperbound_intensity,
        }


@dataclass(frozen=True)
class CarrierPosition:
    """One carrier byte: zero-based pixel coordinates (x rightward, y downward) and channel."""

    pixel_x: int
    pixel_y: int
    channel: Channel


def param_pixels(image: RawImage):
    """Returns the (x, y) coordinates of the parameter pixel and the marker pixel."""
    if image.width < 2:
        raise ImageTooSmall(f"image is {image.width} pixel(s) wide, the last row needs 2 parameter pixels")
    y = image.height - 1
    return (image.width - 2, y), (image.width - 1, y)


def data_mask(image: RawImage, channels: ChannelSet):
    """Boolean (height, width, 3) mask of the bytes that take part in covering: selected channels, minus the last
    two pixels of the last row.
    """
    m = np.zeros(image.data.shape, dtype=bool)
    m[..., list(channels.indices)] = True
    m[-1, -2:, :] = False  # parameter pixels
    return m


def adjust_brightness(image: RawImage, amount, channels: ChannelSet):
    """Adds `amount` (may be negative) to the data-channel bytes, clamped to [0, 255], via a 256-entry LUT."""
    lut = np.clip(np.arange(256) + amount, 0, 255).astype(np.uint8)
    a = np.array(image.data)
    m = data_mask(image, channels)
    a[m] = lut[a[m]]
    return image.with_data(a)


def preprocess(image: RawImage, params: StegoParams):
    """Collapses every data-channel byte in [lowerbound, upperbound] to upperbound."""
    a = np.array(image.data)
    band = data_mask(image, params.channels) & (a >= params.lowerbound_intensity) & (a <= params.upperbound_intensity)
    a[band] = params.upperbound_intensity
    return image.with_data(a)


def carrier_indices(image: RawImage, params: StegoParams):
    """Flat indices into `image.data` of the data-channel bytes below lowerbound, in scan order."""
    m = data_mask(image, params.channels) & (image.data < params.lowerbound_intensity)
    return np.flatnonzero(m)


def uncover_indices(stego: RawImage, params: StegoParams):
    """Flat indices of the data-channel bytes with byte - brightness_level < upperbound, in scan order."""
    restored = stego.data.astype(np.int16) - params.brightness_level
    m = data_mask(stego, params.channels) & (restored < params.upperbound_intensity)
    return np.flatnonzero(m)


def to_positions(indices, width):
    """Converts flat (height, width, 3) indices of a `width`-wide image into CarrierPositions."""
    return [CarrierPosition(int(i // 3 % width), int(i // 3 // width), Channel(int(i % 3))) for i in indices]


def carrier_positions(image: RawImage, params: StegoParams):
    """Carrier bytes of a preprocessed image: rows top-to-bottom, pixels left-to-right, channels R,G,B."""
    return to_positions(carrier_indices(image, params), image.width)


def uncover_positions(stego: RawImage, params: StegoParams):
    """Bytes the receiver selects as carriers, in the same scan order as carrier_positions."""
    return to_positions(uncover_indices(stego, params), stego.width)


def embed_chunk(carrier, chunk):
    """
    Writes a 3-bit chunk into the low bits of a carrier byte.

    Example:
        >>> embed_chunk(85, 0b110), embed_chunk(95, 0b111)
        (86, 95)
    """
    return set_n_lsbs(carrier, N_LSBS, chunk)


def extract_chunk(carrier):
    """Returns the low 3 bits of a carrier byte."""
    return carrier & ((1 << N_LSBS) - 1)


def brighten(image: RawImage, params: StegoParams):
    """Raises data-channel bytes by brightness_level, clamped at 255."""
    return adjust_brightness(image, params.brightness_level, params.channels)


def restore_brightness(image: RawImage, params: StegoParams):
    """Lowers data-channel bytes by brightness_level, clamped at 0."""
    return adjust_brightness(image, -params.brightness_level, params.channels)


def embed_params(image: RawImage, params: StegoParams):
    """Stores level, mode, upperbound verbatim in pixel (w-2, h-1) and the marker in pixel (w-1, h-1)."""
    (px, py), (mx, my) = param_pixels(image)
    a = np.array(image.data)
    a[py, px] = tuple(params.tobytes())
    a[my, mx] = MARKER
    return image.with_data(a)


def extract_params(image: RawImage):
    """Reads and validates the parameter pixels of a stego image."""
    try:
        (px, py), (mx, my) = param_pixels(image)
    except ImageTooSmall as e:
        raise NotAStegoImage(f"{e}, so it holds no parameters") from e
    if image.pixel(mx, my) != MARKER:
        raise NotAStegoImage(f"pixel ({mx},{my}) holds {image.pixel(mx, my)}, not the marker {MARKER}")
    return StegoParams(*image.pixel(px, py))


def cover(image: RawImage, payload_bits: BitStream, params: StegoParams):
    """Hides `payload_bits` in `image` and returns the stego image (same dimensions)."""
    param_pixels(image)  # raises ImageTooSmall
    pre = preprocess(image, params)
    idx = carrier_indices(pre, params)
    chunks = payload_bits.chunks(N_LSBS)
    if len(chunks) > len(idx):
        raise CapacityExceeded(payload_bits.length, N_LSBS * len(idx))

    a = np.array(pre.data)
    flat = a.reshape(-1)  # view
    idx = idx[: len(chunks)]
    flat[idx] = embed_chunk(flat[idx], chunks)
    return embed_params(brighten(pre.with_data(a), params), params)


def uncover(stego: RawImage):
    """Returns (payload_bits, params): the low 3 bits of every re-identified carrier, in scan order."""
    params = extract_params(stego)
    restored = stego.data.reshape(-1)[uncover_indices(stego, params)].astype(np.int16) - params.brightness_level
    return BitStream.from_chunks(extract_chunk(restored).astype(np.uint8), N_LSBS), params


def lsb_embed(carriers, bits: BitStream, n):
    """
    Sequential n-LSB substitution: the k-th n-bit chunk of `bits` replaces the low `n` bits of the k-th carrier byte.

    Example:
        >>> h = BitStream.from_bytes(b"H")
        >>> [f"{b:08b}" for b in lsb_embed([0b11011000, 0b00110110, 0b11001111, 0b10100011], h, 2)]
        ['11011001', '00110100', '11001110', '10100000']
    """
    a = np.frombuffer(bytes(carriers), dtype=np.uint8).copy()
    chunks = bits.chunks(n)
    if len(chunks) > len(a):
        raise CapacityExceeded(bits.length, n * len(a))
    a[: len(chunks)] = set_n_lsbs(a[: len(chunks)], n, chunks)
    return bytes(a)


def lsb_extract(carriers, n, count=None):
    """Concatenates the low `n` bits of every carrier byte MSB-first, truncated to `count` bits."""
    a = np.frombuffer(bytes(carriers), dtype=np.uint8).copy()
    bits = BitStream.from_chunks(a & ((1 << n) - 1), n)
    return bits if count is None else bits[:count]
